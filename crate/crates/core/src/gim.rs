//! Generalized intersection matrices and a checker for the defining
//! relations of `gim(M)` on concrete matrix images of its generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GimError, Result};
use crate::exact_linalg::{int, RatMatrix, Rational};

/// An integer matrix with `m_ii = 2` whose off-diagonal entries have matching
/// signs across the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GimMatrixRaw")]
pub struct GimMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct GimMatrixRaw {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<GimMatrixRaw> for GimMatrix {
    type Error = GimError;
    fn try_from(raw: GimMatrixRaw) -> Result<Self> {
        if raw.entries.len() != raw.n {
            return Err(GimError::DimensionMismatch {
                expected: raw.n,
                found: raw.entries.len(),
            });
        }
        GimMatrix::new(raw.entries)
    }
}

impl GimMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        if !is_gim(&entries)? {
            return Err(GimError::InvalidJob(
                "matrix violates the generalized intersection matrix conditions".into(),
            ));
        }
        Ok(Self {
            n: entries.len(),
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry `m_{i,j}`.
    pub fn m(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// Whether a square integer matrix is a generalized intersection matrix.
pub fn is_gim(m: &[Vec<i64>]) -> Result<bool> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(GimError::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    for i in 0..n {
        if m[i][i] != 2 {
            return Ok(false);
        }
        for j in 0..n {
            if i != j && m[i][j].signum() != m[j][i].signum() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `M_n`: tridiagonal `-1`, corners `m_{1,n} = m_{n,1} = 1`.
pub fn gim_matrix_mn(n: usize) -> Result<GimMatrix> {
    if n < 3 {
        return Err(GimError::RankOutOfRange { n, min: 3 });
    }
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m[0][n - 1] = 1;
    m[n - 1][0] = 1;
    GimMatrix::new(m)
}

/// Candidate images `X_i` of `e_i` and `Y_i` of `f_i`; `H_i = [X_i, Y_i]` is
/// always derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GeneratorImagesRaw")]
pub struct GeneratorImages {
    n: usize,
    ambient_size: usize,
    x: Vec<RatMatrix>,
    y: Vec<RatMatrix>,
    #[serde(skip)]
    h: Vec<RatMatrix>,
    /// Hypotheses of the construction that the parameters violate. The
    /// images are still well defined; they may just fail to be surjective.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Deserialize)]
struct GeneratorImagesRaw {
    x: Vec<RatMatrix>,
    y: Vec<RatMatrix>,
    #[serde(default)]
    warnings: Vec<String>,
}

impl TryFrom<GeneratorImagesRaw> for GeneratorImages {
    type Error = GimError;
    fn try_from(raw: GeneratorImagesRaw) -> Result<Self> {
        Ok(GeneratorImages::new(raw.x, raw.y)?.with_warnings(raw.warnings))
    }
}

impl GeneratorImages {
    pub fn new(x: Vec<RatMatrix>, y: Vec<RatMatrix>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(GimError::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        let size = x.first().map_or(0, RatMatrix::rows);
        for m in x.iter().chain(&y) {
            if m.shape() != (size, size) {
                return Err(GimError::SizeMismatch {
                    left: (size, size),
                    right: m.shape(),
                });
            }
        }
        let h = x.iter().zip(&y).map(|(a, b)| a.commutator(b)).collect();
        Ok(Self {
            n: x.len(),
            ambient_size: size,
            x,
            y,
            h,
            warnings: Vec::new(),
        })
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    /// 1-based `X_i`.
    pub fn x(&self, i: usize) -> &RatMatrix {
        &self.x[i - 1]
    }

    pub fn y(&self, i: usize) -> &RatMatrix {
        &self.y[i - 1]
    }

    pub fn h(&self, i: usize) -> &RatMatrix {
        &self.h[i - 1]
    }

    pub fn xs(&self) -> &[RatMatrix] {
        &self.x
    }

    pub fn ys(&self) -> &[RatMatrix] {
        &self.y
    }

    /// All `X_i` followed by all `Y_i`.
    pub fn generators(&self) -> Vec<RatMatrix> {
        self.x.iter().chain(&self.y).cloned().collect()
    }

    /// Direct sum: block-diagonal images.
    pub fn direct_sum(parts: &[GeneratorImages]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(GimError::InvalidJob("empty direct sum".into()));
        };
        let n = first.n;
        if let Some(p) = parts.iter().find(|p| p.n != n) {
            return Err(GimError::DimensionMismatch {
                expected: n,
                found: p.n,
            });
        }
        let pick = |f: &dyn Fn(&GeneratorImages) -> &Vec<RatMatrix>, i: usize| {
            let blocks: Vec<RatMatrix> = parts.iter().map(|p| f(p)[i].clone()).collect();
            RatMatrix::block_diag(&blocks)
        };
        let x = (0..n).map(|i| pick(&|p| &p.x, i)).collect();
        let y = (0..n).map(|i| pick(&|p| &p.y, i)).collect();
        let warnings = parts.iter().flat_map(|p| p.warnings.clone()).collect();
        Ok(Self::new(x, y)?.with_warnings(warnings))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationId {
    /// `[H_i, X_j] = m_ij X_j`
    R1HX,
    /// `[H_i, Y_j] = -m_ij Y_j`
    R1HY,
    /// `[X_i, Y_j] = 0` for `m_ij <= 0`
    R2XY,
    /// `[Y_i, X_j] = 0` for `m_ij <= 0`
    R2YX,
    /// `(ad X_i)^{1 - m_ij} X_j = 0`
    R2SerreX,
    /// `(ad Y_i)^{1 - m_ij} Y_j = 0`
    R2SerreY,
    /// `[X_i, X_j] = 0` for `m_ij > 0`
    R3XX,
    /// `[Y_i, Y_j] = 0` for `m_ij > 0`
    R3YY,
    /// `(ad X_i)^{1 + m_ij} Y_j = 0`
    R3SerreXY,
    /// `(ad Y_i)^{1 + m_ij} X_j = 0`
    R3SerreYX,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationId::R1HX => "R1:[H_i,X_j]=m_ij X_j",
            RelationId::R1HY => "R1:[H_i,Y_j]=-m_ij Y_j",
            RelationId::R2XY => "R2:[X_i,Y_j]=0",
            RelationId::R2YX => "R2:[Y_i,X_j]=0",
            RelationId::R2SerreX => "R2:(ad X_i)^(1-m_ij) X_j=0",
            RelationId::R2SerreY => "R2:(ad Y_i)^(1-m_ij) Y_j=0",
            RelationId::R3XX => "R3:[X_i,X_j]=0",
            RelationId::R3YY => "R3:[Y_i,Y_j]=0",
            RelationId::R3SerreXY => "R3:(ad X_i)^(1+m_ij) Y_j=0",
            RelationId::R3SerreYX => "R3:(ad Y_i)^(1+m_ij) X_j=0",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: RelationId,
    /// 1-based `(i, j)`.
    pub pair: (usize, usize),
    pub residual: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub passed: bool,
    /// Number of identities evaluated.
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

/// Walks the defining relations of `gim(M)` for any Lie algebra presented by
/// a bracket and `a + c b`, reporting each left-hand side minus right-hand
/// side to `sink` with its 1-based pair.
pub(crate) fn relation_residuals<T, B, L, S>(
    m: &GimMatrix,
    x: &[T],
    y: &[T],
    h: &[T],
    bracket: B,
    lin: L,
    mut sink: S,
) where
    B: Fn(&T, &T) -> T,
    L: Fn(&T, &Rational, &T) -> T,
    S: FnMut(RelationId, (usize, usize), T),
{
    let ad_pow = |a: &T, k: usize, b: &T| {
        let mut acc = bracket(a, b);
        for _ in 1..k {
            acc = bracket(a, &acc);
        }
        acc
    };
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            let pair = (i + 1, j + 1);
            let mij = m.m(i + 1, j + 1);
            let c = int(mij);
            sink(
                RelationId::R1HX,
                pair,
                lin(&bracket(&h[i], &x[j]), &-&c, &x[j]),
            );
            sink(
                RelationId::R1HY,
                pair,
                lin(&bracket(&h[i], &y[j]), &c, &y[j]),
            );
            if i == j {
                continue;
            }
            if mij <= 0 {
                let k = (1 - mij) as usize;
                sink(RelationId::R2XY, pair, bracket(&x[i], &y[j]));
                sink(RelationId::R2YX, pair, bracket(&y[i], &x[j]));
                sink(RelationId::R2SerreX, pair, ad_pow(&x[i], k, &x[j]));
                sink(RelationId::R2SerreY, pair, ad_pow(&y[i], k, &y[j]));
            } else {
                let k = (1 + mij) as usize;
                sink(RelationId::R3XX, pair, bracket(&x[i], &x[j]));
                sink(RelationId::R3YY, pair, bracket(&y[i], &y[j]));
                sink(RelationId::R3SerreXY, pair, ad_pow(&x[i], k, &y[j]));
                sink(RelationId::R3SerreYX, pair, ad_pow(&y[i], k, &x[j]));
            }
        }
    }
}

/// Evaluates every relation of `gim(M)` on the images, exactly. Failures
/// carry the residual (left side minus right side) and are ordered by
/// relation, then `(i, j)`.
pub fn check_gim_relations(m: &GimMatrix, g: &GeneratorImages) -> Result<RelationReport> {
    if m.n() != g.n() {
        return Err(GimError::DimensionMismatch {
            expected: m.n(),
            found: g.n(),
        });
    }
    let h: Vec<RatMatrix> = (1..=g.n()).map(|i| g.h(i).clone()).collect();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    relation_residuals(
        m,
        g.xs(),
        g.ys(),
        &h,
        |a, b| a.commutator(b),
        |a, c, b| {
            let mut out = a.clone();
            out.add_scaled(c, b);
            out
        },
        |rel, pair, residual: RatMatrix| {
            checked += 1;
            if !residual.is_zero() {
                failures.push(RelationFailure {
                    relation: rel,
                    pair,
                    residual,
                });
            }
        },
    );
    failures.sort_by_key(|f| (f.relation, f.pair));
    Ok(RelationReport {
        passed: failures.is_empty(),
        checked,
        failures,
    })
}
