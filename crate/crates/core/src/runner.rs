//! Batch front-end: JSON job specifications, their execution into JSON
//! reports, an on-disk closure cache, the full reproduction table, and the
//! `gimlab` command line.
//!
//! Every report is built from `serde_json::Value` maps with sorted keys and
//! canonical rational strings, so identical jobs give byte-identical files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::classifier::{classify_image, Signature};
use crate::error::{GimError, Result};
use crate::eval_maps::{
    affine_node_identity, psi_big, psi_tuple, tuple_admissible, type_a_images, type_c_images,
    type_d_images, CaseConfig, EvalParams, SignVariant, TupleMode,
};
use crate::exact_linalg::rational::separator;
use crate::exact_linalg::{format_rational, int, parse_rational, rat, RatMatrix, Rational};
use crate::gim::{check_gim_relations, gim_matrix_mn, is_gim, GeneratorImages};
use crate::lie_engine::{lie_closure, SubalgebraBasis};
use crate::loop_quotients::{
    check_fixed_point_relations, displayed_xi_chain, eval_quotient_map, fixed_point_generators,
    loop_bracket, make_quotient, xi_chain, xi_shift_identities, LoopElement, Polynomial,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Mn,
    CheckHom,
    Image,
    Classify,
    LoopIdentities,
    Quotient,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Mn => "mn",
            Command::CheckHom => "check-hom",
            Command::Image => "image",
            Command::Classify => "classify",
            Command::LoopIdentities => "loop-identities",
            Command::Quotient => "quotient",
        }
    }
}

/// Image family for `check-hom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Direct sum of evaluation maps.
    Psi,
    A,
    C,
    D,
    Case(u8),
}

impl FromStr for Target {
    type Err = GimError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(Target::Psi),
            "A" | "a" => Ok(Target::A),
            "C" | "c" => Ok(Target::C),
            "D" | "d" => Ok(Target::D),
            _ => match s.strip_prefix("case").map(str::parse::<u8>) {
                Some(Ok(k @ 1..=4)) => Ok(Target::Case(k)),
                _ => Err(GimError::InvalidJob(format!(
                    "unknown target {s:?} (expected psi, A, C, D, case1..case4)"
                ))),
            },
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Psi => f.write_str("psi"),
            Target::A => f.write_str("A"),
            Target::C => f.write_str("C"),
            Target::D => f.write_str("D"),
            Target::Case(k) => write!(f, "case{k}"),
        }
    }
}

/// A job as read from JSON; parameters sit next to `command`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_id: Option<u8>,
    #[serde(default)]
    pub sign_variant: SignVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<TupleMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl JobSpec {
    pub fn new(command: Command, n: usize) -> Self {
        Self {
            command,
            n,
            a: Vec::new(),
            target: None,
            case_id: None,
            sign_variant: SignVariant::Plus,
            mode: None,
            output_path: None,
        }
    }

    pub fn with_a<S: ToString>(mut self, a: &[S]) -> Self {
        self.a = a.iter().map(ToString::to_string).collect();
        self
    }

    pub fn with_target(mut self, t: &str) -> Self {
        self.target = Some(t.to_string());
        self
    }

    pub fn with_case(mut self, k: u8) -> Self {
        self.case_id = Some(k);
        self
    }

    pub fn with_variant(mut self, v: SignVariant) -> Self {
        self.sign_variant = v;
        self
    }

    pub fn with_mode(mut self, m: TupleMode) -> Self {
        self.mode = Some(m);
        self
    }

    /// Checks parameter completeness without doing any algebra.
    pub fn validate(&self) -> Result<ValidJob> {
        let bad = |msg: String| Err(GimError::InvalidJob(msg));
        if self.n < 3 {
            return bad(format!("n = {} but every command needs n >= 3", self.n));
        }
        let a = self
            .a
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| GimError::InvalidJob(e.to_string()))?;
        let target = self.target.as_deref().map(Target::from_str).transpose()?;
        let case = match (target, self.case_id) {
            (Some(Target::Case(k)), Some(c)) if k != c => {
                return bad(format!("target case{k} conflicts with case {c}"))
            }
            (Some(Target::Case(k)), _) => Some(k),
            (_, c) => c,
        };
        match self.command {
            Command::Mn | Command::LoopIdentities => {}
            Command::CheckHom => match target {
                None => return bad("check-hom needs a target".into()),
                Some(Target::A) if a.len() != 1 => {
                    return bad("target A needs exactly one value of a".into())
                }
                Some(Target::C | Target::D) if !a.is_empty() => {
                    return bad("targets C and D take no parameters".into())
                }
                Some(Target::Psi) if a.is_empty() => return bad("target psi needs a tuple".into()),
                _ => {}
            },
            Command::Image | Command::Classify | Command::Quotient if a.is_empty() => {
                return bad(format!("{} needs a tuple", self.command.name()))
            }
            _ => {}
        }
        if let Some(k) = case {
            if !(1..=4).contains(&k) {
                return bad(format!("case {k} not in 1..=4"));
            }
            if a.is_empty() {
                return bad(format!("case{k} needs a tuple"));
            }
            CaseConfig::new(self.n, k, a.clone())
                .validate()
                .map_err(|e| GimError::InvalidJob(e.to_string()))?;
        }
        Ok(ValidJob {
            spec: self.clone(),
            a,
            target,
            case,
        })
    }
}

/// A job whose parameters have been parsed.
#[derive(Clone, Debug)]
pub struct ValidJob {
    pub spec: JobSpec,
    pub a: Vec<Rational>,
    pub target: Option<Target>,
    pub case: Option<u8>,
}

impl ValidJob {
    fn params(&self) -> EvalParams {
        EvalParams::new(self.spec.n, self.a.clone()).with_variant(self.spec.sign_variant)
    }

    fn images(&self) -> Result<GeneratorImages> {
        let n = self.spec.n;
        match (self.target, self.case) {
            (_, Some(k)) => psi_big(&CaseConfig::new(n, k, self.a.clone())),
            (Some(Target::A), _) => type_a_images(n, &self.a[0]),
            (Some(Target::C), _) => type_c_images(n),
            (Some(Target::D), _) => type_d_images(n),
            _ => psi_tuple(&self.params()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobOutcome {
    pub passed: bool,
    pub report: Value,
}

impl JobOutcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Runs a job. `Err` means the job could not be run as specified; a job
/// that runs but fails an assertion returns `passed: false`.
pub fn run_job(spec: &JobSpec, cache: Option<&ClosureCache>) -> Result<JobOutcome> {
    let job = spec.validate()?;
    let n = spec.n;
    let (passed, body) = match spec.command {
        Command::Mn => {
            let m = gim_matrix_mn(n)?;
            (is_gim(m.entries())?, json!({ "matrix": m }))
        }
        Command::CheckHom => {
            let g = job.images()?;
            let report = check_gim_relations(&gim_matrix_mn(n)?, &g)?;
            let mut body = json!({
                "target": job.target.map(|t| t.to_string()).unwrap_or_default(),
                "warnings": g.warnings,
                "relations": report,
            });
            let mut passed = report.passed;
            if job.target == Some(Target::A) {
                let (lhs, rhs) = affine_node_identity(n, &job.a[0])?;
                body["affine_node_identity"] = json!(lhs == rhs);
                passed &= lhs == rhs;
            }
            (passed, body)
        }
        Command::Image => {
            let g = job.images()?;
            let closure = closure_with(&g.generators(), cache)?;
            (
                closure.is_bracket_closed(),
                json!({
                    "ambient_size": closure.ambient_size(),
                    "generators": g.generators().len(),
                    "dimension": closure.dim(),
                    "basis_size": closure.basis_matrices().len(),
                    "warnings": g.warnings,
                }),
            )
        }
        Command::Classify => classify_job(&job, cache)?,
        Command::LoopIdentities => loop_identities(n, spec.sign_variant)?,
        Command::Quotient => quotient_job(n, &job.a, spec.sign_variant)?,
    };
    let mut report = json!({
        "command": spec.command.name(),
        "n": n,
        "passed": passed,
    });
    if !job.a.is_empty() {
        report["a"] = json!(strings(&job.a));
    }
    if spec.sign_variant != SignVariant::Plus {
        report["sign_variant"] = json!(spec.sign_variant);
    }
    if let Value::Object(extra) = body {
        report.as_object_mut().expect("object").extend(extra);
    }
    Ok(JobOutcome { passed, report })
}

/// The signature a direct-sum statement predicts for a tuple of length `k`.
pub fn predicted_signature(mode: TupleMode, k: usize, variant: SignVariant) -> Signature {
    let (a, c, d) = match mode {
        TupleMode::AllGeneric => (k, 0, 0),
        TupleMode::WithSymplectic => (k.saturating_sub(1), 1, 0),
        TupleMode::WithBoth => (k.saturating_sub(2), 1, 1),
        TupleMode::WithOrthogonal => (k.saturating_sub(1), 0, 1),
    };
    match variant {
        SignVariant::Plus => Signature { a, c, d },
        SignVariant::Minus => Signature { a, c: d, d: c },
    }
}

fn classify_job(job: &ValidJob, cache: Option<&ClosureCache>) -> Result<(bool, Value)> {
    let params = job.params();
    let g = job.images()?;
    let closure = closure_with(&g.generators(), cache)?;
    let report = classify_image(&closure, &params)?;
    let mut passed = report.is_consistent() && report.semisimple;
    let mut body = json!({ "classification": report, "warnings": g.warnings });
    if let Some(mode) = job.spec.mode {
        let admissible = tuple_admissible(&params, mode);
        let predicted = predicted_signature(mode, params.a_tuple.len(), params.sign_variant);
        body["mode"] = json!(mode);
        body["admissible"] = json!(admissible);
        body["predicted_signature"] = to_value(&predicted);
        passed &= admissible && predicted == report.signature;
    }
    Ok((passed, body))
}

fn named_check(name: &str, got: &LoopElement, want: &LoopElement) -> Value {
    let ok = got == want;
    let mut v = json!({ "name": name, "passed": ok });
    if !ok {
        v["residual"] = to_value(&got.sub(want).expect("same size"));
    }
    v
}

fn loop_identities(n: usize, variant: SignVariant) -> Result<(bool, Value)> {
    let (checked, failures) = check_fixed_point_relations(n, variant)?;
    let mut checks = vec![json!({
        "name": "relations",
        "passed": failures.is_empty(),
        "checked": checked,
        "failures": failures,
    })];

    let gens = fixed_point_generators(n, variant)?;
    let s = 2 * n;
    let h_n = loop_bracket(&gens[n - 1].0, &gens[n - 1].1)?;
    let mut h_want = RatMatrix::zeros(s, s);
    for (i, v) in [(n, 1), (n + 1, -1), (1, 1), (s, -1)] {
        h_want.set(i - 1, i - 1, h_want.get(i - 1, i - 1) + int(v));
    }
    let h_want = LoopElement::term(h_want, 0)?.add(&LoopElement::central(s, int(-1)))?;
    checks.push(named_check("h_n", &h_n, &h_want));

    let chain = xi_chain(n)?;
    let shown = displayed_xi_chain(n)?;
    for (k, (got, want)) in chain
        .intermediates
        .iter()
        .zip(&shown.intermediates)
        .enumerate()
    {
        checks.push(named_check(&format!("chain_{}", k + 1), got, want));
    }
    checks.push(named_check("xi", &chain.xi, &shown.xi));
    for m in 1..=2 {
        let [top, bottom] = xi_shift_identities(n, m)?;
        checks.push(named_check(&format!("shift_e{n}_m{m}"), &top.0, &top.1));
        checks.push(named_check(&format!("shift_e1_m{m}"), &bottom.0, &bottom.1));
    }
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    Ok((passed, json!({ "checks": checks, "xi": chain.xi })))
}

fn quotient_job(n: usize, roots: &[Rational], variant: SignVariant) -> Result<(bool, Value)> {
    let q = make_quotient(roots)?;
    let identity = q.partial_fraction_sum() == Polynomial(vec![int(1)]);
    let products = q.c.iter().zip(&q.d).all(|(c, d)| (c * d).is_one());
    let psi = psi_tuple(&EvalParams::new(n, roots.to_vec()).with_variant(variant))?;
    let mut mismatches = Vec::new();
    for (i, (e, f)) in fixed_point_generators(n, variant)?.iter().enumerate() {
        for (label, elem, target) in [("e", e, psi.x(i + 1)), ("f", f, psi.y(i + 1))] {
            let blocks = eval_quotient_map(elem, &q)?;
            if RatMatrix::block_diag(&blocks) != *target {
                mismatches.push(format!("{label}_{}", i + 1));
            }
        }
    }
    let passed = identity && products && mismatches.is_empty();
    Ok((
        passed,
        json!({
            "quotient": q,
            "theta": strings(&q.theta().0),
            "partial_fraction_identity": identity,
            "c_times_d_is_one": products,
            "generator_mismatches": mismatches,
        }),
    ))
}

/// Closure results stored on disk, keyed by a hash of the generators.
#[derive(Clone, Debug)]
pub struct ClosureCache {
    dir: PathBuf,
}

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: u32,
    key: String,
    closure: SubalgebraBasis,
}

impl ClosureCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `GIMLAB_CACHE` if set, else `dir`.
    pub fn from_env_or(dir: Option<PathBuf>) -> Option<Self> {
        std::env::var_os("GIMLAB_CACHE")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or(dir)
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// SHA-256 over the format version, ambient size and canonical JSON of
    /// the generators.
    pub fn key(generators: &[RatMatrix]) -> String {
        let mut h = Sha256::new();
        h.update(CACHE_VERSION.to_le_bytes());
        let size = generators.first().map_or(0, RatMatrix::rows) as u64;
        h.update(size.to_le_bytes());
        h.update(serde_json::to_vec(generators).expect("matrices serialize"));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("closure-{key}.json"))
    }

    pub fn load(&self, generators: &[RatMatrix]) -> Option<SubalgebraBasis> {
        let key = Self::key(generators);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.version == CACHE_VERSION
            && entry.key == key
            && entry.closure.generators() == generators)
            .then_some(entry.closure)
    }

    pub fn store(&self, closure: &SubalgebraBasis) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = Self::key(closure.generators());
        let entry = CacheEntry {
            version: CACHE_VERSION,
            key: key.clone(),
            closure: closure.clone(),
        };
        let tmp = self.dir.join(format!(".closure-{key}.tmp"));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, self.path(&key))?;
        Ok(())
    }

    pub fn closure(&self, generators: &[RatMatrix]) -> Result<SubalgebraBasis> {
        if let Some(hit) = self.load(generators) {
            return Ok(hit);
        }
        let closure = lie_closure(generators)?;
        self.store(&closure)?;
        Ok(closure)
    }
}

fn closure_with(generators: &[RatMatrix], cache: Option<&ClosureCache>) -> Result<SubalgebraBasis> {
    match cache {
        Some(c) => c.closure(generators),
        None => lie_closure(generators),
    }
}

/// One line of the reproduction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub id: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub sections: Vec<(usize, Vec<SummaryRow>)>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.sections
            .iter()
            .all(|(_, rows)| rows.iter().all(|r| r.passed))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# gimlab reproduction summary\n");
        for (n, rows) in &self.sections {
            let _ = write!(
                out,
                "\n## n = {n}\n\n| id | instance | expected | computed | result |\n|---|---|---|---|---|\n"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    r.id,
                    r.instance,
                    r.expected,
                    r.computed,
                    if r.passed { "pass" } else { "FAIL" }
                );
            }
        }
        out
    }
}

struct RowBuilder<'a> {
    n: usize,
    out_dir: &'a Path,
    cache: Option<&'a ClosureCache>,
    rows: Vec<SummaryRow>,
}

impl RowBuilder<'_> {
    fn run(&self, spec: JobSpec) -> Result<JobOutcome> {
        run_job(&spec, self.cache)
    }

    fn push(
        &mut self,
        id: &str,
        instance: String,
        expected: String,
        computed: String,
        passed: bool,
        jobs: Vec<Value>,
    ) -> Result<()> {
        let file = self.out_dir.join(format!("n{}-{id}.json", self.n));
        let mut text =
            serde_json::to_string_pretty(&json!({ "id": id, "passed": passed, "jobs": jobs }))?;
        text.push('\n');
        fs::write(file, text)?;
        self.rows.push(SummaryRow {
            id: id.into(),
            instance,
            expected,
            computed,
            passed,
        });
        Ok(())
    }

    fn block_verdicts(&self, a: &str, variant: SignVariant) -> Result<(String, bool, Value)> {
        let out = self.run(
            JobSpec::new(Command::Classify, self.n)
                .with_a(&[a])
                .with_variant(variant),
        )?;
        let block = &out.report["classification"]["blocks"][0];
        let text = format!(
            "{} {}, forms {}",
            block["verdict"].as_str().unwrap_or("?"),
            block["dimension"],
            block["form_symmetry"].as_str().unwrap_or("?")
        );
        Ok((text, out.passed, out.report))
    }

    fn relation_rows(&mut self, id: &str, instance: &str, specs: Vec<JobSpec>) -> Result<()> {
        let mut reports = Vec::new();
        let mut checked = 0;
        let mut failures = 0;
        let mut passed = true;
        for spec in specs {
            let out = self.run(spec)?;
            checked += out.report["relations"]["checked"].as_u64().unwrap_or(0);
            failures += out.report["relations"]["failures"]
                .as_array()
                .map_or(0, Vec::len);
            passed &= out.passed;
            reports.push(out.report);
        }
        self.push(
            id,
            instance.into(),
            "all relations hold".into(),
            format!("{checked} identities, {failures} failures"),
            passed,
            reports,
        )
    }

    fn direct_sum_row(&mut self, id: &str, a: &[&str], mode: TupleMode) -> Result<()> {
        let out = self.run(
            JobSpec::new(Command::Classify, self.n)
                .with_a(a)
                .with_mode(mode),
        )?;
        let c = &out.report["classification"];
        let sig = predicted_signature(mode, a.len(), SignVariant::Plus);
        self.push(
            id,
            format!("a = ({})", a.join(", ")),
            format!(
                "M({}, {}, {}, {}), dim {}",
                self.n,
                sig.a,
                sig.c,
                sig.d,
                sig.dimension(self.n)
            ),
            format!(
                "M({}, {}, {}, {}), dim {}, killing rank {}",
                self.n,
                c["signature"]["a"],
                c["signature"]["c"],
                c["signature"]["d"],
                c["total_dimension"],
                c["killing_rank"]
            ),
            out.passed,
            vec![out.report],
        )
    }
}

/// Whether admissibility of `a` in the generic mode (no entry ±1) matches
/// pairwise distinctness of `2 + a_k + 1/a_k`.
pub fn separation_agrees(a: &[Rational]) -> bool {
    let mu: Vec<Rational> = a.iter().map(separator).collect();
    let distinct = (0..mu.len()).all(|k| (k + 1..mu.len()).all(|j| mu[k] != mu[j]));
    tuple_admissible(&EvalParams::new(3, a.to_vec()), TupleMode::AllGeneric) == distinct
}

fn separation_grid() -> Vec<Rational> {
    let mut out = Vec::new();
    for p in -4..=4i64 {
        for q in 1..=4i64 {
            let r = rat(p, q);
            if !r.is_zero()
                && !crate::exact_linalg::rational::is_plus_minus_one(&r)
                && !out.contains(&r)
            {
                out.push(r);
            }
        }
    }
    out
}

fn reproduce_n(n: usize, out_dir: &Path, cache: Option<&ClosureCache>) -> Result<Vec<SummaryRow>> {
    let mut b = RowBuilder {
        n,
        out_dir,
        cache,
        rows: Vec::new(),
    };
    let nn = n * n;

    let out = b.run(JobSpec::new(Command::Mn, n))?;
    b.push(
        "gim-matrix",
        format!("M_{n}"),
        "generalized intersection matrix".into(),
        if out.passed {
            "valid".into()
        } else {
            "invalid".into()
        },
        out.passed,
        vec![out.report],
    )?;

    for (id, variant, expected) in [
        (
            "evaluation-trichotomy",
            SignVariant::Plus,
            ["SL", "SP", "SO"],
        ),
        ("sign-variant-swap", SignVariant::Minus, ["SL", "SO", "SP"]),
    ] {
        let mut computed = Vec::new();
        let mut reports = Vec::new();
        let mut passed = true;
        for (a, want) in ["2", "1", "-1"].iter().zip(expected) {
            let (text, ok, report) = b.block_verdicts(a, variant)?;
            passed &= ok && text.starts_with(want);
            computed.push(text);
            reports.push(report);
        }
        let dims = [4 * nn - 1, 2 * nn + n, 2 * nn - n];
        let dims = match variant {
            SignVariant::Plus => dims,
            SignVariant::Minus => [dims[0], dims[2], dims[1]],
        };
        b.push(
            id,
            format!("a = 2, 1, -1 ({variant})"),
            format!(
                "{} {} / {} {} / {} {}",
                expected[0], dims[0], expected[1], dims[1], expected[2], dims[2]
            ),
            computed.join(" / "),
            passed,
            reports,
        )?;
    }

    let psi_specs = ["2", "3", "1/2", "1", "-1"]
        .iter()
        .map(|a| {
            JobSpec::new(Command::CheckHom, n)
                .with_target("psi")
                .with_a(&[a])
        })
        .collect();
    b.relation_rows("relations-evaluation", "a = 2, 3, 1/2, 1, -1", psi_specs)?;
    b.relation_rows(
        "relations-classical",
        "A (a = 2), C, D",
        vec![
            JobSpec::new(Command::CheckHom, n)
                .with_target("A")
                .with_a(&["2"]),
            JobSpec::new(Command::CheckHom, n).with_target("C"),
            JobSpec::new(Command::CheckHom, n).with_target("D"),
        ],
    )?;
    let cases: [(u8, &[&str]); 4] = [
        (1, &["2", "3"]),
        (2, &["1", "2"]),
        (3, &["-1", "2"]),
        (4, &["-1", "1", "2"]),
    ];
    b.relation_rows(
        "relations-cases",
        "cases 1-4",
        cases
            .iter()
            .map(|(k, a)| {
                JobSpec::new(Command::CheckHom, n)
                    .with_target(&format!("case{k}"))
                    .with_a(a)
            })
            .collect(),
    )?;

    let (lhs, rhs) = affine_node_identity(n, &int(2))?;
    b.push(
        "affine-node-identity",
        "a = 2".into(),
        "[f, e] on the affine node = h_1 + ... + h_(2n-1)".into(),
        if lhs == rhs {
            "equal".into()
        } else {
            "differs".into()
        },
        lhs == rhs,
        vec![json!({ "lhs": lhs, "rhs": rhs })],
    )?;

    let grid = separation_grid();
    let mut pairs = 0usize;
    let mut agree = true;
    for x in &grid {
        for y in &grid {
            pairs += 1;
            agree &= separation_agrees(&[x.clone(), y.clone()]);
            let mu_eq = separator(x) == separator(y);
            let poly_zero = ((x * y - int(1)) * (x - y)).is_zero();
            agree &= mu_eq == poly_zero;
        }
    }
    b.push(
        "separation",
        format!("{pairs} pairs from a grid of {} rationals", grid.len()),
        "admissible iff 2 + a + 1/a distinct".into(),
        if agree {
            "agrees on all pairs".into()
        } else {
            "disagreement".into()
        },
        agree,
        vec![json!({ "pairs": pairs, "agree": agree })],
    )?;

    b.direct_sum_row("direct-sum-generic", &["2", "3"], TupleMode::AllGeneric)?;
    b.direct_sum_row(
        "direct-sum-symplectic",
        &["1", "2"],
        TupleMode::WithSymplectic,
    )?;
    b.direct_sum_row("direct-sum-both", &["-1", "1", "2"], TupleMode::WithBoth)?;
    b.direct_sum_row(
        "direct-sum-orthogonal",
        &["-1", "2"],
        TupleMode::WithOrthogonal,
    )?;

    let out = b.run(JobSpec::new(Command::LoopIdentities, n))?;
    let total = out.report["checks"].as_array().map_or(0, Vec::len);
    let ok = out.report["checks"].as_array().map_or(0, |c| {
        c.iter().filter(|c| c["passed"] == json!(true)).count()
    });
    b.push(
        "bracket-chain",
        "fixed-point generators".into(),
        "relations, chain and Xi match closed forms".into(),
        format!("{ok}/{total} checks"),
        out.passed,
        vec![out.report],
    )?;

    let mut reports = Vec::new();
    let mut passed = true;
    for roots in [&["2", "1/2"][..], &["2", "3", "1/3", "1/2"]] {
        let out = b.run(JobSpec::new(Command::Quotient, n).with_a(roots))?;
        passed &= out.passed;
        reports.push(out.report);
    }
    let paired = b.run(JobSpec::new(Command::Classify, n).with_a(&["2", "1/2"]))?;
    let dim = paired.report["classification"]["total_dimension"]
        .as_u64()
        .unwrap_or(0);
    passed &= paired.passed && dim as usize == 4 * nn - 1;
    reports.push(paired.report);
    b.push(
        "quotient-and-pairing",
        "roots (2, 1/2), (2, 3, 1/3, 1/2)".into(),
        format!("c_i d_i = 1, images agree, paired dim {}", 4 * nn - 1),
        format!("paired dim {dim}"),
        passed,
        reports,
    )?;
    Ok(b.rows)
}

/// Runs the whole table for each `n`, writing `summary.md` and one JSON file
/// per row into `out_dir`.
pub fn reproduce_all(
    n_values: &[usize],
    out_dir: &Path,
    cache: Option<&ClosureCache>,
) -> Result<Summary> {
    fs::create_dir_all(out_dir)?;
    let mut sections = Vec::new();
    for &n in n_values {
        if n < 3 {
            return Err(GimError::InvalidJob(format!(
                "n = {n} but the table needs n >= 3"
            )));
        }
        sections.push((n, reproduce_n(n, out_dir, cache)?));
    }
    let summary = Summary { sections };
    fs::write(out_dir.join("summary.md"), summary.to_markdown())?;
    Ok(summary)
}

#[derive(Debug, Parser)]
#[command(
    name = "gimlab",
    version,
    about = "Exact verification jobs for gim(M_n) and its images"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Tuple entries as integers, p/q or decimals; repeat or comma-separate.
    #[arg(long = "a", value_delimiter = ',', allow_hyphen_values = true, action = clap::ArgAction::Append)]
    pub a: Vec<String>,
    /// psi, A, C, D or case1..case4 (check-hom).
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long = "case")]
    pub case_id: Option<u8>,
    #[arg(long, default_value = "plus")]
    pub variant: SignVariant,
    /// generic, symplectic, both or orthogonal: also check the tuple pattern
    /// and the predicted signature.
    #[arg(long)]
    pub mode: Option<TupleMode>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Print the matrix M_n.
    Mn(JobArgs),
    /// Check the defining relations on a family of images.
    CheckHom(JobArgs),
    /// Dimension of the Lie closure of the images.
    Image(JobArgs),
    /// Classify the image of a direct sum of evaluation maps.
    Classify(JobArgs),
    /// Fixed-point generators and the bracket-chain identities.
    LoopIdentities(JobArgs),
    /// Quotient by prod (t - a_i) against the evaluation maps.
    Quotient(JobArgs),
    /// Run a JSON job file.
    Run {
        #[arg(long)]
        job: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the reproduction table for each n.
    Reproduce {
        #[arg(long = "n", value_delimiter = ',', num_args = 0..)]
        n: Vec<usize>,
        #[arg(long, default_value = "gimlab-report")]
        out: PathBuf,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

impl JobArgs {
    fn into_spec(self, command: Command) -> (JobSpec, Option<PathBuf>) {
        let spec = JobSpec {
            command,
            n: self.n,
            a: self.a,
            target: self.target,
            case_id: self.case_id,
            sign_variant: self.variant,
            mode: self.mode,
            output_path: self.out.map(|p| p.to_string_lossy().into_owned()),
        };
        (spec, self.cache)
    }
}

fn execute(spec: &JobSpec, cache: Option<PathBuf>) -> Result<bool> {
    let cache = ClosureCache::from_env_or(cache);
    let out = run_job(spec, cache.as_ref())?;
    let text = out.to_json();
    match &spec.output_path {
        Some(p) => fs::write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(out.passed)
}

/// Exit status: 0 when every assertion passes, 1 on an assertion failure,
/// 2 for an invalid invocation or job.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        CliCommand::Mn(a) => {
            let (spec, cache) = a.into_spec(Command::Mn);
            execute(&spec, cache)
        }
        CliCommand::CheckHom(a) => {
            let (spec, cache) = a.into_spec(Command::CheckHom);
            execute(&spec, cache)
        }
        CliCommand::Image(a) => {
            let (spec, cache) = a.into_spec(Command::Image);
            execute(&spec, cache)
        }
        CliCommand::Classify(a) => {
            let (spec, cache) = a.into_spec(Command::Classify);
            execute(&spec, cache)
        }
        CliCommand::LoopIdentities(a) => {
            let (spec, cache) = a.into_spec(Command::LoopIdentities);
            execute(&spec, cache)
        }
        CliCommand::Quotient(a) => {
            let (spec, cache) = a.into_spec(Command::Quotient);
            execute(&spec, cache)
        }
        CliCommand::Run { job, out, cache } => fs::read_to_string(&job)
            .map_err(GimError::from)
            .and_then(|text| {
                serde_json::from_str::<JobSpec>(&text)
                    .map_err(|e| GimError::InvalidJob(format!("{}: {e}", job.display())))
            })
            .and_then(|mut spec| {
                if let Some(out) = out {
                    spec.output_path = Some(out.to_string_lossy().into_owned());
                }
                execute(&spec, cache)
            }),
        CliCommand::Reproduce { n, out, cache } => {
            let cache = ClosureCache::from_env_or(cache);
            reproduce_all(&n, &out, cache.as_ref()).map(|s| {
                print!("{}", s.to_markdown());
                s.passed()
            })
        }
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("gimlab: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_parse() {
        assert_eq!("case3".parse::<Target>().unwrap(), Target::Case(3));
        assert_eq!("C".parse::<Target>().unwrap(), Target::C);
        assert!("case5".parse::<Target>().is_err());
        assert!("B".parse::<Target>().is_err());
    }

    #[test]
    fn validation_rejects_incomplete_jobs() {
        let invalid = |s: JobSpec| matches!(s.validate(), Err(GimError::InvalidJob(_)));
        assert!(invalid(JobSpec::new(Command::CheckHom, 3)));
        assert!(invalid(JobSpec::new(Command::Classify, 3)));
        assert!(invalid(JobSpec::new(Command::Mn, 2)));
        assert!(invalid(JobSpec::new(Command::CheckHom, 3).with_target("A")));
        assert!(invalid(
            JobSpec::new(Command::CheckHom, 3)
                .with_target("case2")
                .with_a(&["2"])
        ));
        assert!(invalid(JobSpec::new(Command::Image, 3).with_a(&["x"])));
        assert!(JobSpec::new(Command::CheckHom, 3)
            .with_target("C")
            .validate()
            .is_ok());
    }

    #[test]
    fn job_json_shape() {
        let spec: JobSpec =
            serde_json::from_str(r#"{"command":"classify","n":3,"a":["-1","1","2"]}"#).unwrap();
        assert_eq!(
            spec,
            JobSpec::new(Command::Classify, 3).with_a(&["-1", "1", "2"])
        );
        let spec: JobSpec =
            serde_json::from_str(r#"{"command":"check-hom","target":"C","n":3}"#).unwrap();
        assert_eq!(spec.target.as_deref(), Some("C"));
    }

    #[test]
    fn mn_job() {
        let out = run_job(&JobSpec::new(Command::Mn, 4), None).unwrap();
        assert!(out.passed);
        assert_eq!(out.report["matrix"]["entries"][0], json!([2, -1, 0, 1]));
    }

    #[test]
    fn predicted_signatures() {
        assert_eq!(
            predicted_signature(TupleMode::WithBoth, 3, SignVariant::Plus),
            Signature { a: 1, c: 1, d: 1 }
        );
        assert_eq!(
            predicted_signature(TupleMode::WithSymplectic, 2, SignVariant::Minus),
            Signature { a: 1, c: 0, d: 1 }
        );
    }

    #[test]
    fn separation_on_small_tuples() {
        assert!(separation_agrees(&[int(2), rat(1, 2)]));
        assert!(separation_agrees(&[int(2), int(3)]));
        assert!(separation_agrees(&[int(2), int(2)]));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("gimlab-cache-test-{}", std::process::id()));
        let cache = ClosureCache::new(&dir);
        let g = psi_tuple(&EvalParams::new(3, vec![int(2)]))
            .unwrap()
            .generators();
        let first = cache.closure(&g).unwrap();
        assert_eq!(cache.load(&g), Some(first.clone()));
        assert_eq!(first, lie_closure(&g).unwrap());
        let _ = fs::remove_dir_all(dir);
    }
}
