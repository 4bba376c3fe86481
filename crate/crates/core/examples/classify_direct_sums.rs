// Classifies images of direct sums of evaluation maps as
// `a sl_2n + c sp_2n + d so_2n` and prints the per-block table.

use gimlab::classifier::classify_image;
use gimlab::eval_maps::{psi_tuple, EvalParams};
use gimlab::exact_linalg::parse_rational;
use gimlab::lie_engine::lie_closure;

pub fn run_example() -> gimlab::Result<()> {
    let n = 3;
    for tuple in [
        &["2", "3"][..],
        &["1", "2"],
        &["-1", "1", "2"],
        &["-1", "2"],
        &["2", "1/2"],
    ] {
        let a = tuple
            .iter()
            .map(|s| parse_rational(s))
            .collect::<gimlab::Result<Vec<_>>>()?;
        let params = EvalParams::new(n, a);
        let closure = lie_closure(&psi_tuple(&params)?.generators())?;
        let report = classify_image(&closure, &params)?;
        println!("a = ({})\n{}", tuple.join(", "), report.to_markdown());
        assert!(report.is_consistent() && report.semisimple);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
