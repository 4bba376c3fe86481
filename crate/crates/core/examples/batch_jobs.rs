// Runs verification jobs through the same path as the `gimlab` binary,
// with closures cached on disk.

use gimlab::runner::{run_job, ClosureCache, Command, JobSpec};

pub fn run_example() -> gimlab::Result<()> {
    let cache_dir = std::env::temp_dir().join(format!("gimlab-example-{}", std::process::id()));
    let cache = ClosureCache::new(&cache_dir);

    let job: JobSpec =
        serde_json::from_str(r#"{"command": "classify", "n": 3, "a": ["-1", "1", "2"]}"#)?;
    let first = run_job(&job, Some(&cache))?;
    let again = run_job(&job, Some(&cache))?;
    assert_eq!(first.to_json(), again.to_json());
    println!("signature {}", first.report["classification"]["signature"]);

    for spec in [
        JobSpec::new(Command::CheckHom, 3).with_target("C"),
        JobSpec::new(Command::LoopIdentities, 4),
        JobSpec::new(Command::Quotient, 3).with_a(&["2", "1/2"]),
    ] {
        let out = run_job(&spec, Some(&cache))?;
        println!("{:<16} passed: {}", spec.command.name(), out.passed);
    }
    let _ = std::fs::remove_dir_all(cache_dir);
    Ok(())
}

#[allow(dead_code)]
fn main() -> gimlab::Result<()> {
    run_example()
}
