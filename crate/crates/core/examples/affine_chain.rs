// Works inside the loop algebra `sl_2n[t, t^-1] + Qc`: the fixed-point
// generators, their relations, and the bracket chain that produces
// `Xi = H_n t^-1 + (H_1 + ... + H_{2n-1}) t`.

use gimlab::eval_maps::SignVariant;
use gimlab::loop_quotients::{
    check_fixed_point_relations, displayed_xi_chain, fixed_point_generators, loop_bracket, xi_chain,
};

pub fn run_example() -> gimlab::Result<()> {
    let n = 3;
    let gens = fixed_point_generators(n, SignVariant::Plus)?;
    let h_n = loop_bracket(&gens[n - 1].0, &gens[n - 1].1)?;
    println!("[e_{n}, f_{n}] = {}", serde_json::to_string(&h_n)?);

    let (checked, failures) = check_fixed_point_relations(n, SignVariant::Plus)?;
    println!("{checked} relations checked, {} failures", failures.len());

    let chain = xi_chain(n)?;
    assert_eq!(chain, displayed_xi_chain(n)?);
    for (k, step) in chain.intermediates.iter().enumerate() {
        println!("step {}: {}", k + 1, serde_json::to_string(step)?);
    }
    println!("Xi = {}", serde_json::to_string(&chain.xi)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
