// The matrix realizations of `A_{2n-1}`, `C_n` and `D_n` used throughout:
// Chevalley generators, their Cartan matrices and defining forms.

use gimlab::classical::{chevalley_a, chevalley_c, chevalley_d, defining_form, Family};

pub fn run_example() -> gimlab::Result<()> {
    let n = 3;
    for sys in [chevalley_a(n)?, chevalley_c(n)?, chevalley_d(n)?] {
        println!(
            "{}_{} in gl_{}:",
            sys.family.letter(),
            sys.rank(),
            sys.ambient_size
        );
        for row in sys.cartan_matrix() {
            println!("  {row:?}");
        }
        if let Some(j) = defining_form(sys.family, n) {
            for x in sys.generators() {
                assert!((&(&x.transpose() * &j) + &(&j * &x)).is_zero());
            }
            println!("  preserves the form\n{j}");
        }
    }
    assert!(defining_form(Family::A, n).is_none());
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
