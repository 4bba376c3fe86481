// Lie closures of single evaluation images: generic `a` gives all of
// `sl_2n`, `a = 1` gives `sp_2n` and `a = -1` gives `so_2n`. The Killing
// form certifies each image is semisimple.

use gimlab::eval_maps::psi_a;
use gimlab::exact_linalg::{format_rational, int};
use gimlab::lie_engine::{center, killing_rank, lie_closure};

pub fn run_example() -> gimlab::Result<()> {
    let n = 3;
    for a in [int(2), int(1), int(-1)] {
        let closure = lie_closure(&psi_a(n, &a)?.generators())?;
        println!(
            "a = {:>2}: dim {:>2}, killing rank {:>2}, center {}",
            format_rational(&a),
            closure.dim(),
            killing_rank(&closure),
            center(&closure).len()
        );
        assert!(closure.is_bracket_closed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
