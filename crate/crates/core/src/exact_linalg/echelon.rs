use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{GimError, Result};

/// Reduced row-echelon form of `m`, its rank, and the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, usize, Vec<usize>) {
    let mut rows = m.to_rows();
    let pivots = rref_in_place(&mut rows, m.cols());
    let rank = pivots.len();
    let reduced = if rows.is_empty() {
        m.clone()
    } else {
        RatMatrix::from_rows(rows).expect("rows keep their length")
    };
    (reduced, rank, pivots)
}

fn rref_in_place(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space `{v : m v = 0}`; empty iff `rank == cols`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, rank, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            v[p] = -red.get(r, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(GimError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let cols = a.cols();
    let mut rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][cols].clone();
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &RatMatrix) -> Result<Option<RatMatrix>> {
    if !m.is_square() {
        return Err(GimError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    let inv = rows.into_iter().map(|r| r[n..].to_vec()).collect();
    Ok(Some(RatMatrix::from_rows(inv)?))
}

/// A subspace of `Q^ambient_dim` held in reduced row-echelon form.
///
/// Every row has a leading one at its pivot column and every pivot column is
/// zero in all other rows, so the coordinates of a member vector are read off
/// its pivot entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EchelonBasis {
    ambient_dim: usize,
    #[serde(with = "rows_serde")]
    rows: Vec<Vec<Rational>>,
    pivot_cols: Vec<usize>,
}

mod rows_serde {
    use super::Rational;
    use crate::exact_linalg::rational::serde_vec;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "serde_vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(rows.iter().map(|r| Row(r.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?
            .into_iter()
            .map(|r| r.0)
            .collect())
    }
}

impl EchelonBasis {
    pub fn new(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    /// Span of the given vectors.
    pub fn spanned_by<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut b = Self::new(ambient_dim);
        for v in vectors {
            b.insert(v)?;
        }
        Ok(b)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(GimError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w)
    }

    fn reduce_in_place(&self, w: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of `v` with respect to `rows()`, or `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.pivot_cols.iter().map(|&p| v[p].clone()).collect(),
        ))
    }

    /// Coordinates of a vector already known to lie in the span.
    pub fn coordinates_unchecked(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivot_cols.iter().map(|&p| v[p].clone()).collect()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> Result<bool> {
        self.check_len(&v)?;
        let mut w = v;
        self.reduce_in_place(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivot_cols.partition_point(|&q| q < p);
        self.pivot_cols.insert(at, p);
        self.rows.insert(at, w);
        Ok(true)
    }
}

/// Functional form of [`EchelonBasis::insert`].
pub fn insert_into_span(basis: &EchelonBasis, v: Vec<Rational>) -> Result<(EchelonBasis, bool)> {
    let mut b = basis.clone();
    let grew = b.insert(v)?;
    Ok((b, grew))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let (_, rank, piv) = rref(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!((rank, piv), (1, vec![0]));

        let (red, rank, piv) = rref(&RatMatrix::identity(3));
        assert_eq!((rank, piv), (3, vec![0, 1, 2]));
        assert_eq!(red, RatMatrix::identity(3));

        let (red, rank, _) = rref(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(rank, 2);
        assert_eq!(red, RatMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![v(&[-2, 1])]);
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn insert_examples() {
        let empty = EchelonBasis::new(2);
        let (b1, new) = insert_into_span(&empty, v(&[1, 0])).unwrap();
        assert!(new);
        assert_eq!(b1.dim(), 1);
        let (b2, new) = insert_into_span(&b1, v(&[2, 0])).unwrap();
        assert!(!new);
        assert_eq!(b2, b1);
        let (b3, new) = insert_into_span(&b1, v(&[1, 1])).unwrap();
        assert!(new);
        assert_eq!(b3.dim(), 2);
        assert!(matches!(
            b3.clone().insert(v(&[1, 2, 3])),
            Err(GimError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_is_fully_reduced() {
        let b = EchelonBasis::spanned_by(3, [v(&[0, 1, 1]), v(&[1, 1, 0]), v(&[1, 2, 1])]).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.pivot_cols(), &[0, 1]);
        assert_eq!(b.rows()[0], v(&[1, 0, -1]));
        assert_eq!(b.rows()[1], v(&[0, 1, 1]));
        assert_eq!(b.coordinates(&v(&[2, 3, 1])).unwrap(), Some(v(&[2, 3])));
        assert_eq!(b.coordinates(&v(&[0, 0, 1])).unwrap(), None);
    }

    #[test]
    fn solve_and_inverse() {
        let a = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = solve(&a, &v(&[3, 2])).unwrap().unwrap();
        assert_eq!(x, v(&[1, 1]));
        let inv = inverse(&a).unwrap().unwrap();
        assert_eq!(&a * &inv, RatMatrix::identity(2));
        assert!(inverse(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]))
            .unwrap()
            .is_none());
        assert!(
            solve(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]]), &v(&[1, 0]))
                .unwrap()
                .is_none()
        );
    }
}
