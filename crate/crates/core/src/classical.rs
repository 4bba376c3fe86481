//! Split realizations of `sl_2n`, `sp_2n` and `so_2n` inside `gl_2n`, with
//! Chevalley generators labeled to match the diagrams used by the
//! homomorphisms out of `gim(M_n)`:
//!
//! * `A_{2n-1}`: nodes `1..2n-1` in a line, `e_i = E_{i,i+1}`.
//! * `C_n`: nodes `1..n-1` in a line, long node `n` double-bonded to node 1.
//! * `D_n`: nodes `1..n-1` in a line, node `n` attached to node 2.
//!
//! The symplectic and orthogonal algebras are the images of the evaluation
//! maps at `a = 1` and `a = -1`. Their generators `x_i, y_i` (`i < n`) are the
//! images of `e_i, f_i`; the extra node is `E_{n+1,1}` for `C_n` and
//! `E_{n+1,2} - E_{n+2,1}` for `D_n`.

use serde::{Deserialize, Serialize};

use crate::error::{GimError, Result};
use crate::exact_linalg::{RatMatrix, Rational};

/// Matrix unit `E_{i,j}` in `gl_size`, 1-based.
pub fn elementary(size: usize, i: usize, j: usize) -> Result<RatMatrix> {
    if i == 0 || j == 0 || i > size || j > size {
        return Err(GimError::IndexOutOfRange { size, i, j });
    }
    Ok(RatMatrix::unit(size, i - 1, j - 1))
}

/// Infallible `E_{i,j}` for indices computed from a valid rank.
pub(crate) fn eu(size: usize, i: usize, j: usize) -> RatMatrix {
    RatMatrix::unit(size, i - 1, j - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

/// Chevalley generators `e_i, f_i, h_i = [e_i, f_i]` of a classical algebra.
/// Vectors are 0-based; the accessors take the 1-based node label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleySystem {
    pub family: Family,
    pub n: usize,
    pub ambient_size: usize,
    pub e: Vec<RatMatrix>,
    pub f: Vec<RatMatrix>,
    pub h: Vec<RatMatrix>,
}

impl ChevalleySystem {
    fn new(family: Family, n: usize, e: Vec<RatMatrix>, f: Vec<RatMatrix>) -> Self {
        let h = e.iter().zip(&f).map(|(x, y)| x.commutator(y)).collect();
        Self {
            family,
            n,
            ambient_size: 2 * n,
            e,
            f,
            h,
        }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn e(&self, i: usize) -> &RatMatrix {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &RatMatrix {
        &self.f[i - 1]
    }

    pub fn h(&self, i: usize) -> &RatMatrix {
        &self.h[i - 1]
    }

    /// All `e_i` followed by all `f_i`.
    pub fn generators(&self) -> Vec<RatMatrix> {
        self.e.iter().chain(&self.f).cloned().collect()
    }

    /// Cartan matrix with `[h_i, e_j] = A_ij e_j`, rows and columns in node
    /// order.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let line = match self.family {
            Family::A => r,
            Family::C | Family::D => self.n - 1,
        };
        for i in 1..line {
            a[i - 1][i] = -1;
            a[i][i - 1] = -1;
        }
        let n = self.n;
        match self.family {
            Family::A => {}
            Family::C => {
                a[n - 1][0] = -1;
                a[0][n - 1] = -2;
            }
            Family::D => {
                a[n - 1][1] = -1;
                a[1][n - 1] = -1;
            }
        }
        a
    }

    fn require(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(GimError::WrongFamily {
                expected: family.letter(),
                found: self.family.letter(),
            });
        }
        Ok(())
    }
}

fn require_rank(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(GimError::RankOutOfRange { n, min });
    }
    Ok(())
}

/// `x_i = E_{i,i+1} - E_{n+i+1,n+i}` and `y_i = E_{i+1,i} - E_{n+i,n+i+1}`
/// for `1 <= i < n`: the diagonal `sl_n` shared by all evaluation images.
pub(crate) fn diagonal_sl_n(n: usize) -> (Vec<RatMatrix>, Vec<RatMatrix>) {
    let s = 2 * n;
    let x = (1..n)
        .map(|i| &eu(s, i, i + 1) - &eu(s, n + i + 1, n + i))
        .collect();
    let y = (1..n)
        .map(|i| &eu(s, i + 1, i) - &eu(s, n + i, n + i + 1))
        .collect();
    (x, y)
}

/// `sl_2n` with `e_i = E_{i,i+1}`, `f_i = E_{i+1,i}`, `i = 1..2n-1`.
pub fn chevalley_a(n: usize) -> Result<ChevalleySystem> {
    require_rank(n, 3)?;
    let s = 2 * n;
    let e = (1..s).map(|i| eu(s, i, i + 1)).collect();
    let f = (1..s).map(|i| eu(s, i + 1, i)).collect();
    Ok(ChevalleySystem::new(Family::A, n, e, f))
}

/// `sp_2n` preserving `J = [[0, I], [-I, 0]]`; node `n` is the long root
/// `E_{n+1,1}`.
pub fn chevalley_c(n: usize) -> Result<ChevalleySystem> {
    require_rank(n, 3)?;
    let s = 2 * n;
    let (mut e, mut f) = diagonal_sl_n(n);
    e.push(eu(s, n + 1, 1));
    f.push(eu(s, 1, n + 1));
    Ok(ChevalleySystem::new(Family::C, n, e, f))
}

/// `so_2n` preserving `J = [[0, I], [I, 0]]`; node `n` is
/// `E_{n+1,2} - E_{n+2,1}`, attached to node 2.
///
/// Accepts `n = 3`, where the diagram `1 - 2 - 3` is `D_3 = A_3`.
pub fn chevalley_d(n: usize) -> Result<ChevalleySystem> {
    require_rank(n, 3)?;
    let s = 2 * n;
    let (mut e, mut f) = diagonal_sl_n(n);
    e.push(&eu(s, n + 1, 2) - &eu(s, n + 2, 1));
    f.push(&eu(s, 2, n + 1) - &eu(s, 1, n + 2));
    Ok(ChevalleySystem::new(Family::D, n, e, f))
}

/// The bilinear form preserved by the `C` and `D` realizations.
pub fn defining_form(family: Family, n: usize) -> Option<RatMatrix> {
    let s = 2 * n;
    let sign = match family {
        Family::A => return None,
        Family::C => -1,
        Family::D => 1,
    };
    let mut j = RatMatrix::zeros(s, s);
    for i in 0..n {
        j.set(i, n + i, crate::exact_linalg::int(1));
        j.set(n + i, i, crate::exact_linalg::int(sign));
    }
    Some(j)
}

/// Root vectors for the lowest and highest roots of `A_{2n-1}`:
///
/// `e_{2n} = a [f_{2n-1}, ... [f_2, f_1] ...]` and
/// `f_{2n} = a^{-1} [... [e_1, e_2] ..., e_{2n-1}]`.
pub fn lowest_root_vectors_a(
    sys: &ChevalleySystem,
    a: &Rational,
) -> Result<(RatMatrix, RatMatrix)> {
    sys.require(Family::A)?;
    if num_traits::Zero::is_zero(a) {
        return Err(GimError::ZeroParameter);
    }
    let r = sys.rank();
    let mut low = sys.f(1).clone();
    for i in 2..=r {
        low = sys.f(i).commutator(&low);
    }
    let mut high = sys.e(1).clone();
    for i in 2..=r {
        high = high.commutator(sys.e(i));
    }
    Ok((low.scale(a), high.scale(&a.recip())))
}

/// `E = [f_{n-1}, ... [f_1, f_n] ...]`, `F = [... [e_n, e_1] ..., e_{n-1}]`:
/// root vectors of the lowest and highest short roots of `C_n`.
pub fn composite_ef_c(sys: &ChevalleySystem) -> Result<(RatMatrix, RatMatrix)> {
    sys.require(Family::C)?;
    Ok(nested_ef(sys, 1))
}

/// `E = [f_{n-1}, ... [f_2, f_n] ...]`, `F = [... [e_n, e_2] ..., e_{n-1}]`:
/// the lowest and highest roots of the `A_{n-1}` spanned by nodes `2..n`.
pub fn composite_ef_d(sys: &ChevalleySystem) -> Result<(RatMatrix, RatMatrix)> {
    sys.require(Family::D)?;
    Ok(nested_ef(sys, 2))
}

fn nested_ef(sys: &ChevalleySystem, start: usize) -> (RatMatrix, RatMatrix) {
    let n = sys.n;
    let mut e = sys.f(n).clone();
    let mut f = sys.e(n).clone();
    for i in start..n {
        e = sys.f(i).commutator(&e);
        f = f.commutator(sys.e(i));
    }
    (e, f)
}
