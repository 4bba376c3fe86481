// Builds `M_n` and checks every defining relation of `gim(M_n)` on several
// families of matrix images, reporting the number of identities tested.

use gimlab::eval_maps::{psi_a, psi_big, type_a_images, type_c_images, type_d_images, CaseConfig};
use gimlab::exact_linalg::{int, rat};
use gimlab::gim::{check_gim_relations, gim_matrix_mn, GeneratorImages};

pub fn run_example() -> gimlab::Result<()> {
    let n = 3;
    let m = gim_matrix_mn(n)?;
    println!("M_{n} = {:?}", m.entries());

    let families: Vec<(String, GeneratorImages)> = vec![
        ("evaluation at 2".into(), psi_a(n, &int(2))?),
        ("evaluation at 1/2".into(), psi_a(n, &rat(1, 2))?),
        ("type A, a = 2".into(), type_a_images(n, &int(2))?),
        ("type C".into(), type_c_images(n)?),
        ("type D".into(), type_d_images(n)?),
        (
            "case 4, a = (-1, 1, 2)".into(),
            psi_big(&CaseConfig::new(n, 4, vec![int(-1), int(1), int(2)]))?,
        ),
    ];
    for (name, images) in &families {
        let report = check_gim_relations(&m, images)?;
        println!(
            "{name:<24} {} identities, passed: {}",
            report.checked, report.passed
        );
        assert!(report.passed);
    }

    // Swapping two generators breaks the relations, and the report says where.
    let g = psi_a(n, &int(2))?;
    let mut x = g.xs().to_vec();
    x.swap(0, 1);
    let broken = GeneratorImages::new(x, g.ys().to_vec())?;
    let report = check_gim_relations(&m, &broken)?;
    println!(
        "swapped: {} failures, first {} at {:?}",
        report.failures.len(),
        report.failures[0].relation,
        report.failures[0].pair
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
