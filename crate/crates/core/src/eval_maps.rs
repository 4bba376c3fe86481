//! Concrete homomorphisms out of `gim(M_n)`: the evaluation maps `psi_a` into
//! `sl_2n`, their block-diagonal direct sums, the Chevalley-built maps into
//! `A_{2n-1}`, `C_n` and `D_n`, and the four-case map onto a direct sum of
//! classical algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{
    chevalley_a, chevalley_c, chevalley_d, composite_ef_c, composite_ef_d, eu,
    lowest_root_vectors_a, ChevalleySystem,
};
use crate::error::{GimError, Result};
use crate::exact_linalg::{format_rational, int, rational::serde_vec, RatMatrix, Rational};
use crate::gim::GeneratorImages;

/// Sign of the `t^{-1}` term in the affine generator `e_n`, which becomes the
/// sign in front of `a^{-1} E_{1,2n}` after evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignVariant {
    #[default]
    Plus,
    Minus,
}

impl SignVariant {
    pub fn sign(self) -> Rational {
        match self {
            SignVariant::Plus => int(1),
            SignVariant::Minus => int(-1),
        }
    }
}

impl FromStr for SignVariant {
    type Err = GimError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(SignVariant::Plus),
            "minus" | "-" => Ok(SignVariant::Minus),
            _ => Err(GimError::InvalidJob(format!("unknown sign variant {s:?}"))),
        }
    }
}

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignVariant::Plus => "plus",
            SignVariant::Minus => "minus",
        })
    }
}

/// Parameters of a direct sum of evaluation maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalParams {
    pub n: usize,
    #[serde(with = "serde_vec")]
    pub a_tuple: Vec<Rational>,
    #[serde(default)]
    pub sign_variant: SignVariant,
}

impl EvalParams {
    pub fn new(n: usize, a_tuple: Vec<Rational>) -> Self {
        Self {
            n,
            a_tuple,
            sign_variant: SignVariant::Plus,
        }
    }

    pub fn with_variant(mut self, v: SignVariant) -> Self {
        self.sign_variant = v;
        self
    }
}

fn require_rank(n: usize) -> Result<()> {
    if n < 3 {
        return Err(GimError::RankOutOfRange { n, min: 3 });
    }
    Ok(())
}

/// The evaluation map at `a`:
///
/// `e_i -> E_{i,i+1} - E_{n+i+1,n+i}`, `f_i -> E_{i+1,i} - E_{n+i,n+i+1}` for
/// `i < n`, and `e_n -> E_{n,n+1} + a^{-1} E_{1,2n}`,
/// `f_n -> E_{n+1,n} + a E_{2n,1}`.
pub fn psi_a(n: usize, a: &Rational) -> Result<GeneratorImages> {
    psi_a_with(n, a, SignVariant::Plus)
}

/// [`psi_a`] with the sign of the corner terms selected by `variant`.
pub fn psi_a_with(n: usize, a: &Rational, variant: SignVariant) -> Result<GeneratorImages> {
    require_rank(n)?;
    if a.is_zero() {
        return Err(GimError::ZeroParameter);
    }
    let s = 2 * n;
    let sign = variant.sign();
    let (mut x, mut y) = crate::classical::diagonal_sl_n(n);
    x.push(&eu(s, n, n + 1) + &eu(s, 1, s).scale(&(&sign * a.recip())));
    y.push(&eu(s, n + 1, n) + &eu(s, s, 1).scale(&(&sign * a)));
    GeneratorImages::new(x, y)
}

/// Pairs `(k, j)`, `k < j` (1-based), violating `a_k != a_j^{±1}`.
pub fn inverse_or_equal_pairs(a: &[Rational]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..a.len() {
        for j in k + 1..a.len() {
            if a[k] == a[j] || (&a[k] * &a[j]).is_one() {
                out.push((k + 1, j + 1));
            }
        }
    }
    out
}

/// Block-diagonal sum of `psi_{a_k}`, one `2n x 2n` block per entry.
///
/// A zero entry is an error. Coinciding or mutually inverse entries are
/// allowed but recorded in `warnings`: the map is then not onto the direct
/// sum.
pub fn psi_tuple(params: &EvalParams) -> Result<GeneratorImages> {
    if params.a_tuple.is_empty() {
        return Err(GimError::TupleConstraint("empty tuple".into()));
    }
    let blocks = params
        .a_tuple
        .iter()
        .map(|a| psi_a_with(params.n, a, params.sign_variant))
        .collect::<Result<Vec<_>>>()?;
    let warnings = inverse_or_equal_pairs(&params.a_tuple)
        .into_iter()
        .map(|(k, j)| {
            format!(
                "a_{k} = {} and a_{j} = {} are equal or mutually inverse",
                format_rational(&params.a_tuple[k - 1]),
                format_rational(&params.a_tuple[j - 1])
            )
        })
        .collect();
    Ok(GeneratorImages::direct_sum(&blocks)?.with_warnings(warnings))
}

/// Root vectors `e_{alpha_1}, ..., e_{alpha_2n}` and the matching `f`s of one
/// summand, arranged so that `e_i -> e_{alpha_i} - f_{alpha_{n+i}}` and
/// `f_i -> f_{alpha_i} - e_{alpha_{n+i}}`.
#[derive(Clone, Debug)]
struct ExtendedRoots {
    e: Vec<RatMatrix>,
    f: Vec<RatMatrix>,
}

impl ExtendedRoots {
    fn images(&self, n: usize) -> Result<GeneratorImages> {
        let x = (0..n).map(|i| &self.e[i] - &self.f[n + i]).collect();
        let y = (0..n).map(|i| &self.f[i] - &self.e[n + i]).collect();
        GeneratorImages::new(x, y)
    }

    /// Type `A_{2n-1}` with the lowest and highest roots scaled by `a^{±1}`.
    fn type_a(n: usize, a: &Rational) -> Result<Self> {
        let sys = chevalley_a(n)?;
        let (low, high) = lowest_root_vectors_a(&sys, a)?;
        let mut e = sys.e.clone();
        let mut f = sys.f.clone();
        e.push(low);
        f.push(high);
        Ok(Self { e, f })
    }

    /// Types `C_n`/`D_n`: nodes `n+1..2n-1` are zero and
    /// `e_{alpha_2n} = f_n - F`, `f_{alpha_2n} = e_n - E`.
    fn from_rank_n(sys: &ChevalleySystem, composite: (RatMatrix, RatMatrix)) -> Self {
        let n = sys.n;
        let s = 2 * n;
        let (big_e, big_f) = composite;
        let mut e = sys.e.clone();
        let mut f = sys.f.clone();
        for _ in n + 1..2 * n {
            e.push(RatMatrix::zeros(s, s));
            f.push(RatMatrix::zeros(s, s));
        }
        e.push(sys.f(n) - &big_f);
        f.push(sys.e(n) - &big_e);
        Self { e, f }
    }
}

/// Images into `sl_2n`: `e_i -> e_{alpha_i} - f_{alpha_{n+i}}`,
/// `f_i -> f_{alpha_i} - e_{alpha_{n+i}}`, with the affine node
/// `e_{alpha_2n} = a [f_{alpha_{2n-1}}, ... [f_{alpha_2}, f_{alpha_1}] ...]`.
pub fn type_a_images(n: usize, a: &Rational) -> Result<GeneratorImages> {
    require_rank(n)?;
    if a.is_zero() {
        return Err(GimError::ZeroParameter);
    }
    if crate::exact_linalg::rational::is_plus_minus_one(a) {
        return Err(GimError::ForbiddenParameter {
            value: format_rational(a),
            reason: "the type A map needs a != ±1".into(),
        });
    }
    ExtendedRoots::type_a(n, a)?.images(n)
}

/// Both sides of `[f_{alpha_2n}, e_{alpha_2n}] = h_{alpha_1} + ... + h_{alpha_{2n-1}}`
/// in type `A_{2n-1}`, with the affine node scaled by `a`.
pub fn affine_node_identity(n: usize, a: &Rational) -> Result<(RatMatrix, RatMatrix)> {
    require_rank(n)?;
    if a.is_zero() {
        return Err(GimError::ZeroParameter);
    }
    let roots = ExtendedRoots::type_a(n, a)?;
    let m = 2 * n;
    let lhs = roots.f[m - 1].commutator(&roots.e[m - 1]);
    let mut rhs = RatMatrix::zeros(m, m);
    for i in 0..m - 1 {
        rhs.add_scaled(&int(1), &roots.e[i].commutator(&roots.f[i]));
    }
    Ok((lhs, rhs))
}

/// Images into `C_n`: `e_i -> e_{alpha_i}` for `i < n`, `e_n -> E`,
/// `f_n -> F`.
pub fn type_c_images(n: usize) -> Result<GeneratorImages> {
    let sys = chevalley_c(n)?;
    rank_n_images(&sys, composite_ef_c(&sys)?)
}

/// Images into `D_n`, built like [`type_c_images`] from the `D_n` composites.
pub fn type_d_images(n: usize) -> Result<GeneratorImages> {
    let sys = chevalley_d(n)?;
    rank_n_images(&sys, composite_ef_d(&sys)?)
}

fn rank_n_images(sys: &ChevalleySystem, (e, f): (RatMatrix, RatMatrix)) -> Result<GeneratorImages> {
    let n = sys.n;
    let mut x: Vec<RatMatrix> = sys.e[..n - 1].to_vec();
    let mut y: Vec<RatMatrix> = sys.f[..n - 1].to_vec();
    x.push(e);
    y.push(f);
    GeneratorImages::new(x, y)
}

/// One of the four shapes of target algebra: all `sl`, `sp` first, `so`
/// first, or `so` then `sp`, each followed by `sl` summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseConfig {
    pub n: usize,
    pub case_id: u8,
    #[serde(with = "serde_vec")]
    pub a_tuple: Vec<Rational>,
}

impl CaseConfig {
    pub fn new(n: usize, case_id: u8, a_tuple: Vec<Rational>) -> Self {
        Self {
            n,
            case_id,
            a_tuple,
        }
    }

    pub fn k(&self) -> usize {
        self.a_tuple.len()
    }

    /// Number of leading entries the case pins (`1`, `-1`, or `-1, 1`).
    fn forced(&self) -> Result<Vec<Rational>> {
        Ok(match self.case_id {
            1 => vec![],
            2 => vec![int(1)],
            3 => vec![int(-1)],
            4 => vec![int(-1), int(1)],
            c => {
                return Err(GimError::TupleConstraint(format!(
                    "case id {c} not in 1..=4"
                )))
            }
        })
    }

    /// Checks the case's tuple constraints, naming the first violation.
    pub fn validate(&self) -> Result<()> {
        require_rank(self.n)?;
        let forced = self.forced()?;
        if self.a_tuple.len() < forced.len().max(1) {
            return Err(GimError::TupleConstraint(format!(
                "case {} needs at least {} entries",
                self.case_id,
                forced.len().max(1)
            )));
        }
        for (k, (want, got)) in forced.iter().zip(&self.a_tuple).enumerate() {
            if want != got {
                return Err(GimError::TupleConstraint(format!(
                    "case {} requires a_{} = {}, got {}",
                    self.case_id,
                    k + 1,
                    format_rational(want),
                    format_rational(got)
                )));
            }
        }
        for (k, a) in self.a_tuple.iter().enumerate().skip(forced.len()) {
            if a.is_zero() {
                return Err(GimError::TupleConstraint(format!("a_{} = 0", k + 1)));
            }
            if crate::exact_linalg::rational::is_plus_minus_one(a) {
                return Err(GimError::TupleConstraint(format!(
                    "a_{} = {} must not be ±1",
                    k + 1,
                    format_rational(a)
                )));
            }
        }
        if let Some((k, j)) = inverse_or_equal_pairs(&self.a_tuple).first() {
            return Err(GimError::TupleConstraint(format!(
                "a_{k} and a_{j} are equal or mutually inverse"
            )));
        }
        Ok(())
    }
}

/// The map onto `L = L_1 + ... + L_K`,
/// `e_i -> sum_k (e^{[k]}_{alpha_i} - f^{[k]}_{alpha_{n+i}})`, with the
/// summand types fixed by `config.case_id` and block `k` of type `A` using
/// `a_k`.
pub fn psi_big(config: &CaseConfig) -> Result<GeneratorImages> {
    config.validate()?;
    let n = config.n;
    let mut blocks = Vec::with_capacity(config.k());
    for (k, a) in config.a_tuple.iter().enumerate() {
        let roots = match (config.case_id, k) {
            (2, 0) | (4, 1) => {
                let sys = chevalley_c(n)?;
                let comp = composite_ef_c(&sys)?;
                ExtendedRoots::from_rank_n(&sys, comp)
            }
            (3, 0) | (4, 0) => {
                let sys = chevalley_d(n)?;
                let comp = composite_ef_d(&sys)?;
                ExtendedRoots::from_rank_n(&sys, comp)
            }
            _ => ExtendedRoots::type_a(n, a)?,
        };
        blocks.push(roots.images(n)?);
    }
    GeneratorImages::direct_sum(&blocks)
}

/// Which pattern of ±1 entries a tuple is expected to follow. The numbered
/// names `lemma51` to `lemma54` are accepted as aliases, in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TupleMode {
    /// No entry is ±1: image is all of `sl_2n^K`.
    #[serde(rename = "generic", alias = "lemma51")]
    AllGeneric,
    /// `a_1 = 1`, no `-1`: one `sp_2n` plus `sl_2n`s.
    #[serde(rename = "symplectic", alias = "lemma52")]
    WithSymplectic,
    /// `a_1 = -1`, `a_2 = 1`: one `so_2n`, one `sp_2n`, plus `sl_2n`s.
    #[serde(rename = "both", alias = "lemma53")]
    WithBoth,
    /// `a_1 = -1`, no `1`: one `so_2n` plus `sl_2n`s.
    #[serde(rename = "orthogonal", alias = "lemma54")]
    WithOrthogonal,
}

impl FromStr for TupleMode {
    type Err = GimError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" | "lemma51" => Ok(TupleMode::AllGeneric),
            "symplectic" | "lemma52" => Ok(TupleMode::WithSymplectic),
            "both" | "lemma53" => Ok(TupleMode::WithBoth),
            "orthogonal" | "lemma54" => Ok(TupleMode::WithOrthogonal),
            _ => Err(GimError::InvalidJob(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for TupleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleMode::AllGeneric => "generic",
            TupleMode::WithSymplectic => "symplectic",
            TupleMode::WithBoth => "both",
            TupleMode::WithOrthogonal => "orthogonal",
        })
    }
}

/// Whether `params.a_tuple` satisfies the hypotheses of `mode`: nonzero
/// entries, `a_k != a_j^{±1}` for `k != j`, and the mode's pattern of ±1.
pub fn tuple_admissible(params: &EvalParams, mode: TupleMode) -> bool {
    let a = &params.a_tuple;
    if a.is_empty() || a.iter().any(Zero::is_zero) || !inverse_or_equal_pairs(a).is_empty() {
        return false;
    }
    let one = int(1);
    let minus = int(-1);
    match mode {
        TupleMode::AllGeneric => a.iter().all(|x| *x != one && *x != minus),
        TupleMode::WithSymplectic => a[0] == one && a[1..].iter().all(|x| *x != minus),
        TupleMode::WithBoth => a.len() >= 2 && a[0] == minus && a[1] == one,
        TupleMode::WithOrthogonal => a[0] == minus && a[1..].iter().all(|x| *x != one),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    fn e(n: usize, i: usize, j: usize) -> RatMatrix {
        eu(2 * n, i, j)
    }

    #[test]
    fn affine_node_identity_holds() {
        for n in [3, 4] {
            for a in [int(2), rat(-3, 5), int(1)] {
                let (lhs, rhs) = affine_node_identity(n, &a).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs, &e(n, 1, 1) - &e(n, 2 * n, 2 * n));
            }
        }
    }

    #[test]
    fn psi_a_images() {
        let g = psi_a(3, &int(2)).unwrap();
        assert_eq!(g.x(1), &(&e(3, 1, 2) - &e(3, 5, 4)));
        assert_eq!(g.x(3), &(&e(3, 3, 4) + &e(3, 1, 6).scale(&rat(1, 2))));
        assert_eq!(g.y(3), &(&e(3, 4, 3) + &e(3, 6, 1).scale(&int(2))));
        assert_eq!(psi_a(3, &int(0)), Err(GimError::ZeroParameter));
        assert!(psi_a(2, &int(2)).is_err());
    }

    #[test]
    fn minus_variant_is_evaluation_at_negative_a() {
        let a = rat(3, 2);
        assert_eq!(
            psi_a_with(4, &a, SignVariant::Minus).unwrap(),
            psi_a(4, &-a).unwrap()
        );
    }

    #[test]
    fn tuple_blocks() {
        let p = EvalParams::new(3, vec![int(2), int(3)]);
        let g = psi_tuple(&p).unwrap();
        assert_eq!(g.ambient_size(), 12);
        assert!(g.warnings.is_empty());
        assert_eq!(g.x(3).diag_block(1, 6), *psi_a(3, &int(3)).unwrap().x(3));
        let bad = psi_tuple(&EvalParams::new(3, vec![int(2), rat(1, 2)])).unwrap();
        assert_eq!(bad.warnings.len(), 1);
        assert!(psi_tuple(&EvalParams::new(3, vec![int(2), int(0)])).is_err());
        assert!(psi_tuple(&EvalParams::new(3, vec![])).is_err());
    }

    #[test]
    fn type_a_map_matches_negated_evaluation() {
        let g = type_a_images(3, &int(2)).unwrap();
        assert_eq!(g, psi_a(3, &int(-2)).unwrap());
        assert!(type_a_images(3, &int(1)).is_err());
        assert!(type_a_images(3, &int(-1)).is_err());
        assert_eq!(type_a_images(3, &int(0)), Err(GimError::ZeroParameter));
    }

    #[test]
    fn case_validation() {
        assert!(CaseConfig::new(3, 1, vec![int(2), int(3)])
            .validate()
            .is_ok());
        assert!(CaseConfig::new(3, 2, vec![int(1), int(2)])
            .validate()
            .is_ok());
        assert!(CaseConfig::new(3, 2, vec![int(2), int(1)])
            .validate()
            .is_err());
        assert!(CaseConfig::new(3, 1, vec![int(2), rat(1, 2)])
            .validate()
            .is_err());
        assert!(CaseConfig::new(3, 1, vec![int(1)]).validate().is_err());
        assert!(CaseConfig::new(3, 4, vec![int(-1)]).validate().is_err());
        assert!(CaseConfig::new(3, 5, vec![int(2)]).validate().is_err());
        let err = CaseConfig::new(3, 3, vec![int(1), int(2)])
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("a_1 = -1"));
    }

    #[test]
    fn rank_n_blocks_reduce_to_composites() {
        // In a C_n or D_n summand the generic formula collapses to
        // e_n -> E, f_n -> F.
        let c = psi_big(&CaseConfig::new(3, 2, vec![int(1)])).unwrap();
        assert_eq!(c, type_c_images(3).unwrap());
        let d = psi_big(&CaseConfig::new(4, 3, vec![int(-1)])).unwrap();
        assert_eq!(d, type_d_images(4).unwrap());
    }

    #[test]
    fn admissibility_examples() {
        let p = |v: Vec<Rational>| EvalParams::new(3, v);
        assert!(tuple_admissible(
            &p(vec![int(2), int(3)]),
            TupleMode::AllGeneric
        ));
        assert!(!tuple_admissible(
            &p(vec![int(2), rat(1, 2)]),
            TupleMode::AllGeneric
        ));
        assert!(!tuple_admissible(
            &p(vec![int(1), int(2)]),
            TupleMode::AllGeneric
        ));
        assert!(tuple_admissible(
            &p(vec![int(1), int(2)]),
            TupleMode::WithSymplectic
        ));
        assert!(tuple_admissible(
            &p(vec![int(-1), int(1), int(2)]),
            TupleMode::WithBoth
        ));
        assert!(!tuple_admissible(
            &p(vec![int(-1), int(1), int(2)]),
            TupleMode::WithOrthogonal
        ));
        assert!(tuple_admissible(
            &p(vec![int(-1), int(2)]),
            TupleMode::WithOrthogonal
        ));
        assert!(!tuple_admissible(
            &p(vec![int(1), int(-1)]),
            TupleMode::WithSymplectic
        ));
    }

    #[test]
    fn params_json() {
        let p = EvalParams::new(3, vec![rat(-1, 2), int(3)]).with_variant(SignVariant::Minus);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"a_tuple":["-1/2","3"],"sign_variant":"minus"}"#
        );
        assert_eq!(serde_json::from_str::<EvalParams>(&s).unwrap(), p);
        let c = CaseConfig::new(4, 4, vec![int(-1), int(1), int(2)]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CaseConfig>(&s).unwrap(), c);
        assert_eq!(
            serde_json::to_string(&TupleMode::WithBoth).unwrap(),
            "\"both\""
        );
    }
}
