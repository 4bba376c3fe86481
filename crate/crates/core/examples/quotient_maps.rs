// Quotients of the loop algebra by `prod (t - a_i)`: the partial-fraction
// constants, the induced map to `sl_2n^K`, and the involution `t -> 1/t`
// that identifies the images at `a` and `1/a`.

use gimlab::eval_maps::{psi_tuple, EvalParams, SignVariant};
use gimlab::exact_linalg::{format_rational, int, rat, RatMatrix};
use gimlab::loop_quotients::{
    eval_at, eval_quotient_map, fixed_point_generators, make_quotient, sigma, LoopElement,
};

pub fn run_example() -> gimlab::Result<()> {
    let roots = vec![int(2), int(3), rat(1, 3), rat(1, 2)];
    let q = make_quotient(&roots)?;
    for ((a, c), d) in q.roots.iter().zip(&q.c).zip(&q.d) {
        println!(
            "a = {:>3}  c = {:>7}  d = {:>7}",
            format_rational(a),
            format_rational(c),
            format_rational(d)
        );
    }

    let n = 3;
    let psi = psi_tuple(&EvalParams::new(n, roots))?;
    for (i, (e, _)) in fixed_point_generators(n, SignVariant::Plus)?
        .iter()
        .enumerate()
    {
        let blocks = eval_quotient_map(e, &q)?;
        assert_eq!(&RatMatrix::block_diag(&blocks), psi.x(i + 1));
    }
    println!("quotient map agrees with the evaluation images");

    let x = LoopElement::with_poly(
        &RatMatrix::from_i64(&[&[1, 2], &[3, -1]]),
        &[(-2, int(1)), (1, rat(5, 2))],
    )?;
    let a = int(2);
    assert_eq!(eval_at(&sigma(&x)?, &a)?, eval_at(&x, &a.recip())?);
    assert_eq!(sigma(&sigma(&x)?)?, x);
    println!("eval at 2 after t -> 1/t:\n{}", eval_at(&sigma(&x)?, &a)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
