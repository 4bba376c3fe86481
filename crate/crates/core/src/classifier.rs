//! Identifies block images as `sl_2n`, `sp_2n` or `so_2n` by their dimension
//! and the bilinear forms they preserve on the natural representation, and
//! assembles the `M(n, a, c, d)` signature of a direct-sum image.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::eval_maps::{EvalParams, SignVariant};
use crate::exact_linalg::{format_rational, kernel_basis, EchelonBasis, RatMatrix, Rational};
use crate::lie_engine::{semisimplicity_data, SubalgebraBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormSymmetry {
    Symmetric,
    Antisymmetric,
    /// Both kinds occur; never matches a classical type.
    Mixed,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SL,
    SP,
    SO,
    UNKNOWN,
}

/// Solution space of `X^T B + B X = 0` for all `X` in `s`, returned as a
/// basis in which every form is either symmetric or antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForms {
    pub symmetric: Vec<RatMatrix>,
    pub antisymmetric: Vec<RatMatrix>,
}

impl InvariantForms {
    pub fn dim(&self) -> usize {
        self.symmetric.len() + self.antisymmetric.len()
    }

    pub fn basis(&self) -> Vec<RatMatrix> {
        self.symmetric
            .iter()
            .chain(&self.antisymmetric)
            .cloned()
            .collect()
    }

    pub fn symmetry(&self) -> FormSymmetry {
        match (self.symmetric.is_empty(), self.antisymmetric.is_empty()) {
            (true, true) => FormSymmetry::None,
            (false, true) => FormSymmetry::Symmetric,
            (true, false) => FormSymmetry::Antisymmetric,
            (false, false) => FormSymmetry::Mixed,
        }
    }
}

pub fn invariant_forms(s: &SubalgebraBasis) -> Result<InvariantForms> {
    let n = s.ambient_size();
    let unknowns = n * n;
    // Equations are accumulated in echelon form so the system never exceeds
    // n^2 rows however large the subalgebra is.
    let mut equations = EchelonBasis::new(unknowns);
    for x in s.basis_matrices() {
        for p in 0..n {
            for q in 0..n {
                // (X^T B + B X)_{pq} = sum_r X_{rp} B_{rq} + sum_r B_{pr} X_{rq}
                let mut row = vec![Rational::zero(); unknowns];
                for r in 0..n {
                    let a = x.get(r, p);
                    if !a.is_zero() {
                        row[r * n + q] += a;
                    }
                    let b = x.get(r, q);
                    if !b.is_zero() {
                        row[p * n + r] += b;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    equations.insert(row)?;
                }
            }
        }
    }
    let system = if equations.is_empty() {
        RatMatrix::zeros(1, unknowns)
    } else {
        RatMatrix::from_rows(equations.rows().to_vec())?
    };
    // The system is stable under B -> B^T, so symmetric and antisymmetric
    // parts of each solution are solutions.
    let mut sym = EchelonBasis::new(unknowns);
    let mut anti = EchelonBasis::new(unknowns);
    for v in kernel_basis(&system) {
        let b = RatMatrix::from_flat(n, n, v)?;
        let bt = b.transpose();
        let plus = &b + &bt;
        let minus = &b - &bt;
        if !plus.is_zero() {
            sym.insert(plus.into_flat())?;
        }
        if !minus.is_zero() {
            anti.insert(minus.into_flat())?;
        }
    }
    let unpack = |e: &EchelonBasis| {
        e.rows()
            .iter()
            .map(|r| RatMatrix::from_flat(n, n, r.clone()))
            .collect::<Result<Vec<_>>>()
    };
    Ok(InvariantForms {
        symmetric: unpack(&sym)?,
        antisymmetric: unpack(&anti)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockVerdict {
    pub block_index: usize,
    pub dimension: usize,
    pub invariant_form_space_dim: usize,
    pub form_symmetry: FormSymmetry,
    pub verdict: Verdict,
}

/// The verdict table for a subalgebra of `gl_2n`.
pub fn verdict_for(n: usize, dim: usize, form_dim: usize, sym: FormSymmetry) -> Verdict {
    let nn = n * n;
    match (form_dim, sym) {
        (0, _) if dim == 4 * nn - 1 => Verdict::SL,
        (1, FormSymmetry::Antisymmetric) if dim == 2 * nn + n => Verdict::SP,
        (1, FormSymmetry::Symmetric) if dim == 2 * nn - n => Verdict::SO,
        _ => Verdict::UNKNOWN,
    }
}

pub fn classify_block(s: &SubalgebraBasis, n: usize) -> Result<BlockVerdict> {
    let forms = invariant_forms(s)?;
    let verdict = if s.ambient_size() == 2 * n {
        verdict_for(n, s.dim(), forms.dim(), forms.symmetry())
    } else {
        Verdict::UNKNOWN
    };
    Ok(BlockVerdict {
        block_index: 0,
        dimension: s.dim(),
        invariant_form_space_dim: forms.dim(),
        form_symmetry: forms.symmetry(),
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub a: usize,
    pub c: usize,
    pub d: usize,
}

impl Signature {
    /// `a (4n^2 - 1) + c (2n^2 + n) + d (2n^2 - n)`.
    pub fn dimension(&self, n: usize) -> usize {
        let nn = n * n;
        self.a * (4 * nn - 1) + self.c * (2 * nn + n) + self.d * (2 * nn - n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub a_tuple: Vec<String>,
    pub sign_variant: SignVariant,
    pub total_dimension: usize,
    pub expected_dimension: usize,
    pub blocks: Vec<BlockVerdict>,
    /// 0-based block pairs `(k, j)` with `a_k a_j = 1`, `a_k != ±1`.
    pub pairings: Vec<(usize, usize)>,
    pub signature: Signature,
    pub killing_rank: usize,
    pub center_dim: usize,
    pub semisimple: bool,
    pub inconsistencies: Vec<String>,
}

impl ClassificationReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }

    /// GitHub table with one row per block, then the signature line.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| block | a_k | dim | forms | symmetry | verdict |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for (b, a) in self.blocks.iter().zip(&self.a_tuple) {
            let sym = serde_json::to_value(b.form_symmetry).expect("enum serializes");
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {:?} |",
                b.block_index,
                a,
                b.dimension,
                b.invariant_form_space_dim,
                sym.as_str().unwrap_or_default(),
                b.verdict
            );
        }
        let s = self.signature;
        let _ = writeln!(
            out,
            "\nM({}, {}, {}, {}): dim {} (expected {}), killing rank {}, semisimple {}",
            self.n,
            s.a,
            s.c,
            s.d,
            self.total_dimension,
            self.expected_dimension,
            self.killing_rank,
            self.semisimple
        );
        for issue in &self.inconsistencies {
            let _ = writeln!(out, "- inconsistency: {issue}");
        }
        out
    }
}

/// Pairs `(k, j)`, `k < j`, with `a_k a_j = 1` and `a_k != ±1`.
pub fn inverse_pairings(a: &[Rational]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..a.len() {
        for j in k + 1..a.len() {
            if (&a[k] * &a[j]).is_one() && !crate::exact_linalg::rational::is_plus_minus_one(&a[k])
            {
                out.push((k, j));
            }
        }
    }
    out
}

/// Classifies the closure of a direct-sum image whose `k`-th diagonal block
/// of size `2n` is the evaluation at `a_k`.
pub fn classify_image(
    closure: &SubalgebraBasis,
    params: &EvalParams,
) -> Result<ClassificationReport> {
    let n = params.n;
    let size = 2 * n;
    let mut blocks = Vec::with_capacity(params.a_tuple.len());
    for k in 0..params.a_tuple.len() {
        let mut b = classify_block(&closure.project_block(k, size)?, n)?;
        b.block_index = k;
        blocks.push(b);
    }
    let count = |v: Verdict| blocks.iter().filter(|b| b.verdict == v).count();
    let pairings = inverse_pairings(&params.a_tuple);
    let mut inconsistencies = Vec::new();
    let sl = count(Verdict::SL);
    if pairings.len() > sl {
        inconsistencies.push(format!(
            "{} inverse pairs but only {sl} sl blocks",
            pairings.len()
        ));
    }
    let signature = Signature {
        a: sl.saturating_sub(pairings.len()),
        c: count(Verdict::SP),
        d: count(Verdict::SO),
    };
    for b in blocks.iter().filter(|b| b.verdict == Verdict::UNKNOWN) {
        inconsistencies.push(format!("block {} matches no classical type", b.block_index));
    }
    if signature.c > 1 {
        inconsistencies.push(format!("{} copies of sp", signature.c));
    }
    if signature.d > 1 {
        inconsistencies.push(format!("{} copies of so", signature.d));
    }
    if signature == (Signature { a: 0, c: 0, d: 0 }) {
        inconsistencies.push("all-zero signature describes no algebra".into());
    }
    let expected_dimension = signature.dimension(n);
    if expected_dimension != closure.dim() {
        inconsistencies.push(format!(
            "closure has dimension {} but the signature predicts {expected_dimension}",
            closure.dim()
        ));
    }
    let (killing_rank, center_dim) = semisimplicity_data(closure);
    Ok(ClassificationReport {
        n,
        a_tuple: params.a_tuple.iter().map(format_rational).collect(),
        sign_variant: params.sign_variant,
        total_dimension: closure.dim(),
        expected_dimension,
        blocks,
        pairings,
        signature,
        killing_rank,
        center_dim,
        semisimple: killing_rank == closure.dim() && center_dim == 0,
        inconsistencies,
    })
}
