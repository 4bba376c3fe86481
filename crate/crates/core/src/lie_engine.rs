//! Matrix Lie algebra primitives over the rationals: the commutator bracket,
//! iterated adjoint action, Lie closure of a generating set, and the
//! intrinsic Killing form and center of a closed subalgebra.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{GimError, Result};
use crate::exact_linalg::{kernel_basis, rref, EchelonBasis, RatMatrix, Rational};

fn check_pair(x: &RatMatrix, y: &RatMatrix) -> Result<()> {
    if !x.is_square() {
        return Err(GimError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if x.shape() != y.shape() {
        return Err(GimError::SizeMismatch {
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(())
}

/// `[x, y] = xy - yx`.
pub fn bracket(x: &RatMatrix, y: &RatMatrix) -> Result<RatMatrix> {
    check_pair(x, y)?;
    Ok(x.commutator(y))
}

/// `(ad x)^k (y)`; `k = 0` returns `y`.
pub fn ad_power(x: &RatMatrix, k: usize, y: &RatMatrix) -> Result<RatMatrix> {
    check_pair(x, y)?;
    let mut acc = y.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = x.commutator(&acc);
    }
    Ok(acc)
}

/// A bracket-closed subspace of `gl_N`, stored as an echelon basis of
/// flattened `N x N` matrices together with the generators it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraBasis {
    ambient_size: usize,
    basis: EchelonBasis,
    generators: Vec<RatMatrix>,
}

impl SubalgebraBasis {
    pub fn zero(ambient_size: usize) -> Self {
        Self {
            ambient_size,
            basis: EchelonBasis::new(ambient_size * ambient_size),
            generators: Vec::new(),
        }
    }

    /// Wraps an echelon basis that the caller knows to be bracket-closed.
    pub(crate) fn from_parts(
        ambient_size: usize,
        basis: EchelonBasis,
        generators: Vec<RatMatrix>,
    ) -> Self {
        debug_assert_eq!(basis.ambient_dim(), ambient_size * ambient_size);
        Self {
            ambient_size,
            basis,
            generators,
        }
    }

    pub fn ambient_size(&self) -> usize {
        self.ambient_size
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn echelon(&self) -> &EchelonBasis {
        &self.basis
    }

    pub fn generators(&self) -> &[RatMatrix] {
        &self.generators
    }

    /// The basis as `N x N` matrices.
    pub fn basis_matrices(&self) -> Vec<RatMatrix> {
        let n = self.ambient_size;
        self.basis
            .rows()
            .iter()
            .map(|r| RatMatrix::from_flat(n, n, r.clone()).expect("row length is N^2"))
            .collect()
    }

    pub fn contains(&self, x: &RatMatrix) -> Result<bool> {
        self.basis.contains(x.as_slice())
    }

    pub fn coordinates(&self, x: &RatMatrix) -> Result<Option<Vec<Rational>>> {
        self.basis.coordinates(x.as_slice())
    }

    /// Checks closure directly: every pairwise bracket of basis elements
    /// reduces to zero against the basis.
    pub fn is_bracket_closed(&self) -> bool {
        let mats = self.basis_matrices();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let b = mats[i].commutator(&mats[j]);
                if !self.basis.contains(b.as_slice()).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// Image of the projection onto the `k`-th diagonal block of size `size`.
    ///
    /// The projection is a homomorphism on block-diagonal subalgebras, so the
    /// image of a closed subalgebra is again closed.
    pub fn project_block(&self, k: usize, size: usize) -> Result<SubalgebraBasis> {
        if (k + 1) * size > self.ambient_size {
            return Err(GimError::IndexOutOfRange {
                size: self.ambient_size,
                i: k,
                j: size,
            });
        }
        let mut basis = EchelonBasis::new(size * size);
        for m in self.basis_matrices() {
            basis.insert(m.diag_block(k, size).into_flat())?;
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.diag_block(k, size))
            .collect();
        Ok(SubalgebraBasis::from_parts(size, basis, generators))
    }

    /// Conjugates every element by `p` (`x -> p x p^{-1}`).
    pub fn conjugate(&self, p: &RatMatrix, p_inv: &RatMatrix) -> Result<SubalgebraBasis> {
        let n = self.ambient_size;
        let mut basis = EchelonBasis::new(n * n);
        for m in self.basis_matrices() {
            basis.insert((&(p * &m) * p_inv).into_flat())?;
        }
        let generators = self.generators.iter().map(|g| &(p * g) * p_inv).collect();
        Ok(SubalgebraBasis::from_parts(n, basis, generators))
    }
}

/// Smallest bracket-closed subspace containing `generators`.
///
/// Right-normed brackets `[g_1, [g_2, ... g_k]]` span the generated
/// subalgebra, so it suffices to apply `ad g` for each generator `g` to every
/// newly found direction until nothing new appears. The final basis is the
/// canonical reduced echelon form, independent of generator order.
pub fn lie_closure(generators: &[RatMatrix]) -> Result<SubalgebraBasis> {
    let Some(first) = generators.first() else {
        return Ok(SubalgebraBasis::zero(0));
    };
    let n = first.rows();
    for g in generators {
        check_pair(first, g)?;
    }
    let bound = n * n;
    let mut basis = EchelonBasis::new(bound);
    let mut worklist: Vec<RatMatrix> = Vec::new();
    for g in generators {
        if basis.insert(g.as_slice().to_vec())? {
            worklist.push(g.clone());
        }
    }
    while let Some(v) = worklist.pop() {
        for g in generators {
            let b = g.commutator(&v);
            if b.is_zero() {
                continue;
            }
            if basis.insert(b.as_slice().to_vec())? {
                worklist.push(b);
            }
        }
        assert!(
            basis.dim() <= bound,
            "closure dimension exceeded N^2: arithmetic bug"
        );
    }
    Ok(SubalgebraBasis::from_parts(n, basis, generators.to_vec()))
}

/// Matrices of `ad b_i` in the basis of `s`: column `j` holds the coordinates
/// of `[b_i, b_j]`.
pub fn ad_matrices(s: &SubalgebraBasis) -> Vec<RatMatrix> {
    let mats = s.basis_matrices();
    let d = mats.len();
    let mut ads = vec![RatMatrix::zeros(d, d); d];
    for i in 0..d {
        for j in i + 1..d {
            let b = mats[i].commutator(&mats[j]);
            if b.is_zero() {
                continue;
            }
            let coords = s.basis.coordinates_unchecked(b.as_slice());
            for (k, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                ads[j].set(k, i, -c.clone());
                ads[i].set(k, j, c);
            }
        }
    }
    ads
}

/// Gram matrix `K(b_i, b_j) = tr(ad b_i ad b_j)` with `ad` taken inside `s`.
pub fn killing_form(s: &SubalgebraBasis) -> RatMatrix {
    let ads = ad_matrices(s);
    killing_from_ads(&ads)
}

pub(crate) fn killing_from_ads(ads: &[RatMatrix]) -> RatMatrix {
    let d = ads.len();
    // (k, l, value) triples of each ad matrix.
    let sparse: Vec<Vec<(usize, usize, &Rational)>> = ads
        .iter()
        .map(|a| {
            (0..d)
                .flat_map(|k| (0..d).map(move |l| (k, l)))
                .filter_map(|(k, l)| {
                    let v = a.get(k, l);
                    (!v.is_zero()).then_some((k, l, v))
                })
                .collect()
        })
        .collect();
    let mut gram = RatMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut acc = Rational::zero();
            for &(k, l, v) in &sparse[i] {
                let w = ads[j].get(l, k);
                if !w.is_zero() {
                    acc += v * w;
                }
            }
            gram.set(j, i, acc.clone());
            gram.set(i, j, acc);
        }
    }
    gram
}

/// Rank of the Killing form; equal to `dim s` iff `s` is semisimple.
pub fn killing_rank(s: &SubalgebraBasis) -> usize {
    rref(&killing_form(s)).1
}

/// Basis of the center `{x in s : [x, b] = 0 for all b}`.
pub fn center(s: &SubalgebraBasis) -> Vec<RatMatrix> {
    center_from_ads(s, &ad_matrices(s))
}

/// Killing rank and center dimension from one structure-constant pass.
pub fn semisimplicity_data(s: &SubalgebraBasis) -> (usize, usize) {
    let ads = ad_matrices(s);
    (
        rref(&killing_from_ads(&ads)).1,
        center_from_ads(s, &ads).len(),
    )
}

fn center_from_ads(s: &SubalgebraBasis, ads: &[RatMatrix]) -> Vec<RatMatrix> {
    let d = s.dim();
    if d == 0 {
        return Vec::new();
    }
    // x = sum c_i b_i is central iff sum_i c_i [b_i, b_j] = 0 for every j.
    // Equations are kept in echelon form, so at most d rows survive.
    let mut equations = EchelonBasis::new(d);
    'outer: for j in 0..d {
        for k in 0..d {
            let row: Vec<Rational> = ads.iter().map(|ad| ad.get(k, j).clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                equations.insert(row).expect("row has length d");
                if equations.dim() == d {
                    break 'outer;
                }
            }
        }
    }
    let system = if equations.is_empty() {
        RatMatrix::zeros(1, d)
    } else {
        RatMatrix::from_rows(equations.rows().to_vec()).expect("rows share a length")
    };
    let mats = s.basis_matrices();
    kernel_basis(&system)
        .into_iter()
        .map(|c| {
            let mut x = RatMatrix::zeros(s.ambient_size(), s.ambient_size());
            for (ci, b) in c.iter().zip(&mats) {
                x.add_scaled(ci, b);
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    fn e(n: usize, i: usize, j: usize) -> RatMatrix {
        RatMatrix::unit(n, i - 1, j - 1)
    }

    #[test]
    fn bracket_examples() {
        let h = &e(2, 1, 1) - &e(2, 2, 2);
        assert_eq!(bracket(&e(2, 1, 2), &e(2, 2, 1)).unwrap(), h);
        let x = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert!(bracket(&x, &x).unwrap().is_zero());
        assert!(bracket(&e(6, 3, 4), &e(6, 6, 1)).unwrap().is_zero());
        assert!(bracket(&e(2, 1, 2), &e(3, 1, 2)).is_err());
    }

    #[test]
    fn ad_power_examples() {
        // [E12, [E12, E21]] = [E12, E11 - E22] = -2 E12
        let r = ad_power(&e(2, 1, 2), 2, &e(2, 2, 1)).unwrap();
        assert_eq!(r, e(2, 1, 2).scale(&int(-2)));
        let y = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(ad_power(&e(2, 1, 2), 0, &y).unwrap(), y);
        assert!(ad_power(&e(4, 1, 2), 2, &e(4, 3, 4)).unwrap().is_zero());
    }

    #[test]
    fn closure_examples() {
        let sl2 = lie_closure(&[e(2, 1, 2), e(2, 2, 1)]).unwrap();
        assert_eq!(sl2.dim(), 3);
        assert!(sl2.is_bracket_closed());
        assert_eq!(lie_closure(&[e(2, 1, 1)]).unwrap().dim(), 1);
        assert_eq!(lie_closure(&[]).unwrap().dim(), 0);
        assert!(lie_closure(&[e(2, 1, 1), e(3, 1, 1)]).is_err());
    }

    #[test]
    fn killing_form_of_sl2() {
        let sl2 = lie_closure(&[e(2, 1, 2), e(2, 2, 1)]).unwrap();
        let k = killing_form(&sl2);
        assert_eq!(rref(&k).1, 3);
        // h = E11 - E22 has coordinates read off the pivot columns.
        let h = &e(2, 1, 1) - &e(2, 2, 2);
        let c = sl2.coordinates(&h).unwrap().unwrap();
        let mut khh = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                khh += &c[i] * &c[j] * k.get(i, j);
            }
        }
        assert_eq!(khh, int(8));
        assert!(center(&sl2).is_empty());
    }

    #[test]
    fn abelian_line() {
        let a = lie_closure(&[e(2, 1, 1)]).unwrap();
        assert_eq!(killing_form(&a), RatMatrix::zeros(1, 1));
        assert_eq!(center(&a).len(), 1);
    }

    #[test]
    fn gl2_center_is_scalars() {
        let gl2 = lie_closure(&[e(2, 1, 2), e(2, 2, 1), e(2, 1, 1)]).unwrap();
        assert_eq!(gl2.dim(), 4);
        let z = center(&gl2);
        assert_eq!(z.len(), 1);
        assert!(z[0].get(0, 1).is_zero() && z[0].get(0, 0) == z[0].get(1, 1));
    }
}
