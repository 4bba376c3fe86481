mod exact_arithmetic {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/exact_arithmetic.rs"
    ));
}

mod chevalley_bases {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/chevalley_bases.rs"
    ));
}

mod gim_relations {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/gim_relations.rs"
    ));
}

mod lie_closure {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/lie_closure.rs"
    ));
}

mod classify_direct_sums {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/classify_direct_sums.rs"
    ));
}

mod affine_chain {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/affine_chain.rs"
    ));
}

mod quotient_maps {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quotient_maps.rs"
    ));
}

mod batch_jobs {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/batch_jobs.rs"
    ));
}

#[test]
fn exact_arithmetic_example_runs() {
    exact_arithmetic::run_example().expect("exact_arithmetic example should run");
}

#[test]
fn chevalley_bases_example_runs() {
    chevalley_bases::run_example().expect("chevalley_bases example should run");
}

#[test]
fn gim_relations_example_runs() {
    gim_relations::run_example().expect("gim_relations example should run");
}

#[test]
fn lie_closure_example_runs() {
    lie_closure::run_example().expect("lie_closure example should run");
}

#[test]
fn classify_direct_sums_example_runs() {
    classify_direct_sums::run_example().expect("classify_direct_sums example should run");
}

#[test]
fn affine_chain_example_runs() {
    affine_chain::run_example().expect("affine_chain example should run");
}

#[test]
fn quotient_maps_example_runs() {
    quotient_maps::run_example().expect("quotient_maps example should run");
}

#[test]
fn batch_jobs_example_runs() {
    batch_jobs::run_example().expect("batch_jobs example should run");
}
