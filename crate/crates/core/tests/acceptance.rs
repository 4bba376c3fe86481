// Acceptance suite: one PASS/FAIL line per criterion, all comparisons exact.
// Runs as a plain binary so the lines always appear in `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gimlab::classifier::{
    classify_block, classify_image, invariant_forms, FormSymmetry, Signature, Verdict,
};
use gimlab::eval_maps::{
    affine_node_identity, psi_a, psi_a_with, psi_big, psi_tuple, tuple_admissible, type_a_images,
    type_c_images, type_d_images, CaseConfig, EvalParams, SignVariant, TupleMode,
};
use gimlab::exact_linalg::rational::separator;
use gimlab::exact_linalg::{int, inverse, rat, RatMatrix, Rational};
use gimlab::gim::{check_gim_relations, gim_matrix_mn, GeneratorImages};
use gimlab::lie_engine::{center, killing_rank, lie_closure, SubalgebraBasis};
use gimlab::loop_quotients::{
    check_fixed_point_relations, displayed_xi_chain, eval_at, eval_quotient_map,
    fixed_point_generators, loop_bracket, make_quotient, sigma, xi_chain, xi_shift_identities,
    LoopElement, Polynomial,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g<T>(r: gimlab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn closure(images: &GeneratorImages) -> Result<SubalgebraBasis, String> {
    g(lie_closure(&images.generators()))
}

fn certify_semisimple(s: &SubalgebraBasis, what: &str) -> Result<(), String> {
    let rank = killing_rank(s);
    let centre = center(s).len();
    ensure(rank == s.dim() && centre == 0, || {
        format!(
            "{what}: killing rank {rank} of dim {}, center {centre}",
            s.dim()
        )
    })
}

fn trichotomy(n: usize, variant: SignVariant) -> Result<Vec<(usize, usize, FormSymmetry)>, String> {
    [int(2), int(1), int(-1)]
        .iter()
        .map(|a| {
            let s = closure(&g(psi_a_with(n, a, variant))?)?;
            let f = g(invariant_forms(&s))?;
            Ok((s.dim(), f.dim(), f.symmetry()))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let mut dims = Vec::new();
    for (n, limit) in [(3, Duration::from_secs(10)), (4, Duration::from_secs(120))] {
        let t = Instant::now();
        let got = trichotomy(n, SignVariant::Plus)?;
        let nn = n * n;
        let want = vec![
            (4 * nn - 1, 0, FormSymmetry::None),
            (2 * nn + n, 1, FormSymmetry::Antisymmetric),
            (2 * nn - n, 1, FormSymmetry::Symmetric),
        ];
        ensure(got == want, || format!("n={n}: got {got:?}"))?;
        ensure(t.elapsed() < limit, || {
            format!("n={n} took {:?}", t.elapsed())
        })?;
        dims.push(format!(
            "n={n}: {}/{}/{} in {:.1?}",
            got[0].0,
            got[1].0,
            got[2].0,
            t.elapsed()
        ));
    }
    Ok(dims.join(", "))
}

fn criterion_2() -> Outcome {
    let mut families: Vec<(String, GeneratorImages)> = Vec::new();
    for n in [3, 4] {
        for a in [int(2), int(3), rat(1, 2), int(1), int(-1)] {
            families.push((format!("psi n={n} a={a}"), g(psi_a(n, &a))?));
        }
        families.push((format!("type A n={n}"), g(type_a_images(n, &int(2)))?));
        families.push((format!("type C n={n}"), g(type_c_images(n))?));
    }
    families.push(("type D n=4".into(), g(type_d_images(4))?));
    let cases: [(usize, u8, Vec<Rational>); 5] = [
        (3, 1, vec![int(2), int(3)]),
        (3, 2, vec![int(1), int(2)]),
        (3, 3, vec![int(-1), int(2)]),
        (3, 4, vec![int(-1), int(1), int(2)]),
        (4, 4, vec![int(-1), int(1), int(2)]),
    ];
    for (n, k, a) in cases {
        families.push((
            format!("case {k} n={n}"),
            g(psi_big(&CaseConfig::new(n, k, a)))?,
        ));
    }
    let mut checked = 0;
    for (name, images) in &families {
        let report = g(check_gim_relations(&g(gim_matrix_mn(images.n()))?, images))?;
        ensure(report.passed && report.failures.is_empty(), || {
            format!("{name}: {} failures", report.failures.len())
        })?;
        checked += report.checked;
    }
    Ok(format!(
        "{} image families, {checked} identities, zero residuals",
        families.len()
    ))
}

fn criterion_3() -> Outcome {
    for n in [3, 4] {
        for a in [int(2), rat(-1, 3), int(1)] {
            let (lhs, rhs) = g(affine_node_identity(n, &a))?;
            let s = 2 * n;
            let mut corner = RatMatrix::zeros(s, s);
            corner.set(0, 0, int(1));
            corner.set(s - 1, s - 1, int(-1));
            ensure(lhs == rhs && lhs == corner, || format!("n={n} a={a}"))?;
        }
    }
    Ok("[f, e] on the affine node equals h_1 + ... + h_(2n-1) for n = 3, 4".into())
}

fn direct_sum_cases() -> Vec<(Vec<Rational>, usize, Signature)> {
    vec![
        (vec![int(2), int(3)], 70, Signature { a: 2, c: 0, d: 0 }),
        (vec![int(1), int(2)], 56, Signature { a: 1, c: 1, d: 0 }),
        (
            vec![int(-1), int(1), int(2)],
            71,
            Signature { a: 1, c: 1, d: 1 },
        ),
        (vec![int(-1), int(2)], 50, Signature { a: 1, c: 0, d: 1 }),
    ]
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (a, dim, sig) in direct_sum_cases() {
        let t = Instant::now();
        let params = EvalParams::new(3, a);
        let s = closure(&g(psi_tuple(&params))?)?;
        let report = g(classify_image(&s, &params))?;
        ensure(
            report.total_dimension == dim && report.signature == sig && report.is_consistent(),
            || {
                format!(
                    "{:?}: dim {} signature {:?}",
                    report.a_tuple, report.total_dimension, report.signature
                )
            },
        )?;
        ensure(t.elapsed() < Duration::from_secs(60), || {
            format!("{:?} took {:?}", report.a_tuple, t.elapsed())
        })?;
        parts.push(format!("{} ({},{},{})", dim, sig.a, sig.c, sig.d));
    }
    Ok(parts.join(", "))
}

fn random_entry(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rat(rng.gen_range(-5..=5), rng.gen_range(1..=5));
        if !r.is_zero() {
            return r;
        }
    }
}

/// The mode whose ±1 pattern fits `a`, with `a` reordered to match it.
fn fitting_mode(mut a: Vec<Rational>) -> (Vec<Rational>, TupleMode) {
    let has = |a: &[Rational], v: i64| a.contains(&int(v));
    let front = |a: &mut Vec<Rational>, v: i64| {
        let i = a.iter().position(|x| *x == int(v)).expect("present");
        let x = a.remove(i);
        a.insert(0, x);
    };
    match (has(&a, 1), has(&a, -1)) {
        (false, false) => (a, TupleMode::AllGeneric),
        (true, false) => {
            front(&mut a, 1);
            (a, TupleMode::WithSymplectic)
        }
        (false, true) => {
            front(&mut a, -1);
            (a, TupleMode::WithOrthogonal)
        }
        (true, true) => {
            front(&mut a, 1);
            front(&mut a, -1);
            (a, TupleMode::WithBoth)
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9a_7a7e);
    let mut admissible = 0;
    let mut pairs = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(2..=4);
        let a: Vec<Rational> = (0..k).map(|_| random_entry(&mut rng)).collect();
        let (a, mode) = fitting_mode(a);
        let mu: Vec<Rational> = a.iter().map(separator).collect();
        let distinct = (0..k).all(|i| (i + 1..k).all(|j| mu[i] != mu[j]));
        let verdict = tuple_admissible(&EvalParams::new(3, a.clone()), mode);
        ensure(verdict == distinct, || {
            format!("{a:?} under {mode}: admissible {verdict}, distinct {distinct}")
        })?;
        admissible += usize::from(verdict);
        for i in 0..k {
            for j in i + 1..k {
                pairs += 1;
                let poly = (&a[i] * &a[j] - int(1)) * (&a[i] - &a[j]);
                ensure((mu[i] == mu[j]) == poly.is_zero(), || {
                    format!("identity fails at {:?}, {:?}", a[i], a[j])
                })?;
            }
        }
    }
    Ok(format!(
        "1000 tuples ({admissible} admissible), identity on {pairs} pairs"
    ))
}

fn criterion_6() -> Outcome {
    for n in [3, 4] {
        let chain = g(xi_chain(n))?;
        let shown = g(displayed_xi_chain(n))?;
        ensure(chain == shown, || {
            format!("n={n}: chain differs from closed forms")
        })?;
        let c = shown.intermediates[3].central_coefficient().clone();
        ensure(c == int(-1), || format!("n={n}: central term {c}"))?;
        for m in 1..=2 {
            for (got, want) in g(xi_shift_identities(n, m))? {
                ensure(got == want, || format!("n={n}: shift identity at m={m}"))?;
            }
        }
        let (_, failures) = g(check_fixed_point_relations(n, SignVariant::Plus))?;
        ensure(failures.is_empty(), || {
            format!("n={n}: fixed-point relations")
        })?;
    }
    Ok("four intermediates, Xi and the -c term match for n = 3, 4".into())
}

fn criterion_7() -> Outcome {
    let n = 3;
    for roots in [
        vec![int(2), rat(1, 2)],
        vec![int(2), int(3), rat(1, 3), rat(1, 2)],
    ] {
        let q = g(make_quotient(&roots))?;
        ensure(q.partial_fraction_sum() == Polynomial(vec![int(1)]), || {
            "partial fractions".into()
        })?;
        ensure(q.c.iter().zip(&q.d).all(|(c, d)| (c * d).is_one()), || {
            "c_i d_i".into()
        })?;
        let psi = g(psi_tuple(&EvalParams::new(n, roots.clone())))?;
        for (i, (e, f)) in g(fixed_point_generators(n, SignVariant::Plus))?
            .iter()
            .enumerate()
        {
            let ex = RatMatrix::block_diag(&g(eval_quotient_map(e, &q))?);
            let fx = RatMatrix::block_diag(&g(eval_quotient_map(f, &q))?);
            ensure(&ex == psi.x(i + 1) && &fx == psi.y(i + 1), || {
                format!("generator {} for {roots:?}", i + 1)
            })?;
        }
    }
    Ok("sum c_i theta/(t - a_i) = 1, c_i d_i = 1, all 2n generator images agree".into())
}

fn random_loop(rng: &mut ChaCha8Rng, n: usize, central: bool) -> LoopElement {
    let mut x = LoopElement::central(n, if central { random_entry(rng) } else { int(0) });
    for _ in 0..rng.gen_range(0..4) {
        let mut m = RatMatrix::zeros(n, n);
        for _ in 0..rng.gen_range(1..4) {
            m.set(rng.gen_range(0..n), rng.gen_range(0..n), random_entry(rng));
        }
        let last = m.get(n - 1, n - 1) - m.trace();
        m.set(n - 1, n - 1, last);
        x = x
            .add(&LoopElement::term(m, rng.gen_range(-3..=3)).unwrap())
            .unwrap();
    }
    x
}

fn criterion_8() -> Outcome {
    let n = 3;
    let params = EvalParams::new(n, vec![int(2), rat(1, 2)]);
    let s = closure(&g(psi_tuple(&params))?)?;
    let first = g(s.project_block(0, 2 * n))?;
    ensure(s.dim() == 35 && first.dim() == 35, || {
        format!("paired {} first block {}", s.dim(), first.dim())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(65);
    let a = int(2);
    for _ in 0..100 {
        let x = random_loop(&mut rng, 2 * n, false);
        let sx = g(sigma(&x))?;
        ensure(g(sigma(&sx))? == x, || "sigma is not an involution".into())?;
        ensure(g(eval_at(&sx, &a))? == g(eval_at(&x, &a.recip()))?, || {
            "eval_a after sigma".into()
        })?;
    }
    Ok("paired dim 35, first-block projection injective, 100 random elements".into())
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for n in [3, 4] {
        let plus = trichotomy(n, SignVariant::Plus)?;
        let minus = trichotomy(n, SignVariant::Minus)?;
        ensure(minus == vec![plus[0], plus[2], plus[1]], || {
            format!("n={n}: {plus:?} vs {minus:?}")
        })?;
        let verdicts = [int(1), int(-1)]
            .iter()
            .map(|a| {
                let s = closure(&g(psi_a_with(n, a, SignVariant::Minus))?)?;
                Ok(g(classify_block(&s, n))?.verdict)
            })
            .collect::<Result<Vec<_>, String>>()?;
        ensure(verdicts == [Verdict::SO, Verdict::SP], || {
            format!("n={n}: {verdicts:?}")
        })?;
        parts.push(format!("n={n}"));
    }
    Ok(format!(
        "a = 1 and a = -1 verdicts swap, a = 2 unchanged ({})",
        parts.join(", ")
    ))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for n in [3, 4] {
        for a in [int(2), int(1), int(-1)] {
            certify_semisimple(&closure(&g(psi_a(n, &a))?)?, &format!("n={n} a={a}"))?;
            count += 1;
        }
    }
    for (a, _, _) in direct_sum_cases() {
        let params = EvalParams::new(3, a.clone());
        certify_semisimple(&closure(&g(psi_tuple(&params))?)?, &format!("{a:?}"))?;
        count += 1;
    }
    Ok(format!(
        "{count} images: killing form nondegenerate, center zero"
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let v = (0..n * n)
        .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect();
    RatMatrix::from_flat(n, n, v).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut p = RatMatrix::identity(n);
    for _ in 0..rng.gen_range(1..10) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let mut e = RatMatrix::identity(n);
            e.set(i, j, int(rng.gen_range(-2..=2)));
            p = &p * &e;
        }
    }
    p
}

fn criterion_11() -> Outcome {
    const INSTANCES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..INSTANCES {
        let (x, y, z) = (
            random_matrix(&mut rng, 4),
            random_matrix(&mut rng, 4),
            random_matrix(&mut rng, 4),
        );
        ensure((&x.commutator(&y) + &y.commutator(&x)).is_zero(), || {
            "antisymmetry".into()
        })?;
        let jacobi = &(&x.commutator(&y.commutator(&z)) + &y.commutator(&z.commutator(&x)))
            + &z.commutator(&x.commutator(&y));
        ensure(jacobi.is_zero(), || "jacobi".into())?;
    }
    for _ in 0..INSTANCES {
        let (x, y, z) = (
            random_loop(&mut rng, 3, true),
            random_loop(&mut rng, 3, true),
            random_loop(&mut rng, 3, true),
        );
        let b = |u: &LoopElement, v: &LoopElement| loop_bracket(u, v).unwrap();
        ensure(b(&x, &y).add(&b(&y, &x)).unwrap().is_zero(), || {
            "loop antisymmetry".into()
        })?;
        let j = b(&x, &b(&y, &z))
            .add(&b(&y, &b(&z, &x)))
            .unwrap()
            .add(&b(&z, &b(&x, &y)))
            .unwrap();
        ensure(j.is_zero(), || "cocycle jacobi".into())?;
    }
    for _ in 0..INSTANCES {
        let k = rng.gen_range(1..4);
        let mut gens: Vec<RatMatrix> = (0..k)
            .map(|_| {
                let mut m = RatMatrix::zeros(3, 3);
                for _ in 0..rng.gen_range(1..3) {
                    m.set(
                        rng.gen_range(0..3),
                        rng.gen_range(0..3),
                        random_entry(&mut rng),
                    );
                }
                m
            })
            .collect();
        let s = g(lie_closure(&gens))?;
        let again = g(lie_closure(&s.basis_matrices()))?;
        ensure(s.dim() == 0 || again.echelon() == s.echelon(), || {
            "idempotence".into()
        })?;
        gens.reverse();
        gens.rotate_left(rng.gen_range(0..k));
        ensure(g(lie_closure(&gens))?.echelon() == s.echelon(), || {
            "order invariance".into()
        })?;
    }
    let blocks: Vec<SubalgebraBasis> = [int(2), int(1), int(-1)]
        .iter()
        .map(|a| closure(&g(psi_a(3, a))?))
        .collect::<Result<_, String>>()?;
    for i in 0..INSTANCES {
        let s = &blocks[i % 3];
        let p = random_unimodular(&mut rng, 6);
        let p_inv = g(inverse(&p))?.ok_or("singular conjugator")?;
        let before = g(classify_block(s, 3))?;
        let after = g(classify_block(&g(s.conjugate(&p, &p_inv))?, 3))?;
        ensure(before == after, || {
            format!("conjugation changed {before:?} to {after:?}")
        })?;
    }
    Ok(format!(
        "{INSTANCES} instances each: bracket, cocycle, closure, conjugation"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("evaluation image trichotomy", criterion_1),
        ("relation suite", criterion_2),
        ("affine node identity", criterion_3),
        ("direct sums at n = 3", criterion_4),
        ("separation sweep", criterion_5),
        ("bracket chain and Xi", criterion_6),
        ("partial-fraction quotients", criterion_7),
        ("inverse pair and t -> 1/t", criterion_8),
        ("sign variant swap", criterion_9),
        ("semisimplicity certificates", criterion_10),
        ("randomized identities", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        failed += usize::from(outcome.is_err());
        println!(
            "criterion {:>2} {tag}  {name}: {detail} [{:.1?}]",
            i + 1,
            t.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
