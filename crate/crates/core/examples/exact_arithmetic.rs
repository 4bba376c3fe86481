// Exact rational row reduction: rank, kernel, linear solve and inverse,
// with the canonical `p/q` strings used in every report.

use gimlab::exact_linalg::{
    format_rational, inverse, kernel_basis, parse_rational, rat, rref, solve, RatMatrix,
};

pub fn run_example() -> gimlab::Result<()> {
    let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    let (r, rank, pivots) = rref(&m);
    println!("rref of {m}\nis {r}\nrank {rank}, pivots {pivots:?}");
    assert_eq!(rank, 2);

    for v in kernel_basis(&m) {
        let shown: Vec<String> = v.iter().map(format_rational).collect();
        println!("kernel vector {shown:?}");
    }

    let a = RatMatrix::from_i64(&[&[2, 1], &[1, 3]]);
    let x = solve(&a, &[rat(1, 2), parse_rational("0.25")?])?.expect("a is invertible");
    println!(
        "solution {} {}",
        format_rational(&x[0]),
        format_rational(&x[1])
    );
    let inv = inverse(&a)?.expect("a is invertible");
    assert_eq!(&a * &inv, RatMatrix::identity(2));
    println!("inverse\n{inv}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
