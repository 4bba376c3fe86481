//! The loop realization `sl_2n ⊗ Q[t, t^{-1}] ⊕ Q c` of the affine algebra,
//! the fixed-point generators that realize `gim(M_n)` inside it, and the
//! finite quotients by `prod (t - a_i)` with distinct nonzero roots.
//!
//! The invariant form in the cocycle is `(x, y) = tr(xy)`.

use std::collections::BTreeMap;

use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classical::eu;
use crate::error::{GimError, Result};
use crate::eval_maps::SignVariant;
use crate::exact_linalg::{
    format_rational, int, parse_rational, rat, rational::serde_vec, solve, RatMatrix, Rational,
};
use crate::gim::{gim_matrix_mn, relation_residuals, RelationId};

/// A finitely supported Laurent polynomial with `sl_N` coefficients plus a
/// multiple of the central element `c`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopElement {
    size: usize,
    terms: BTreeMap<i64, RatMatrix>,
    central: Rational,
}

impl LoopElement {
    pub fn zero(size: usize) -> Self {
        Self {
            size,
            terms: BTreeMap::new(),
            central: Rational::zero(),
        }
    }

    /// `x ⊗ t^m`; `x` must be square with trace zero.
    pub fn term(x: RatMatrix, m: i64) -> Result<Self> {
        if !x.is_square() {
            return Err(GimError::NotSquare {
                rows: x.rows(),
                cols: x.cols(),
            });
        }
        if !x.trace().is_zero() {
            return Err(GimError::NonzeroTrace);
        }
        let mut out = Self::zero(x.rows());
        if !x.is_zero() {
            out.terms.insert(m, x);
        }
        Ok(out)
    }

    /// `x ⊗ (sum_m p_m t^m)` for a Laurent polynomial given as `(m, p_m)`.
    pub fn with_poly(x: &RatMatrix, poly: &[(i64, Rational)]) -> Result<Self> {
        let mut out = Self::zero(x.rows());
        for (m, p) in poly {
            out = out.add(&Self::term(x.scale(p), *m)?)?;
        }
        Ok(out)
    }

    /// `r c` in the algebra over `sl_size`.
    pub fn central(size: usize, r: Rational) -> Self {
        Self {
            size,
            terms: BTreeMap::new(),
            central: r,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> &BTreeMap<i64, RatMatrix> {
        &self.terms
    }

    pub fn central_coefficient(&self) -> &Rational {
        &self.central
    }

    pub fn coefficient(&self, m: i64) -> RatMatrix {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.size, self.size))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(GimError::SizeMismatch {
                left: (self.size, self.size),
                right: (other.size, other.size),
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, m: i64, x: &RatMatrix, c: &Rational) {
        if x.is_zero() || c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(|| RatMatrix::zeros(x.rows(), x.cols()));
        entry.add_scaled(c, x);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.accumulate(*m, x, &int(1));
        }
        out.central += &other.central;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.size);
        }
        Self {
            size: self.size,
            terms: self.terms.iter().map(|(m, x)| (*m, x.scale(c))).collect(),
            central: &self.central * c,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: i64,
    matrix: RatMatrix,
}

#[derive(Serialize, Deserialize)]
struct LoopJson {
    terms: Vec<TermJson>,
    central: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
}

impl Serialize for LoopElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LoopJson {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| TermJson {
                    exp: *m,
                    matrix: x.clone(),
                })
                .collect(),
            central: format_rational(&self.central),
            size: self.terms.is_empty().then_some(self.size),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LoopElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = LoopJson::deserialize(d)?;
        let size = raw
            .terms
            .first()
            .map(|t| t.matrix.rows())
            .or(raw.size)
            .unwrap_or(0);
        let mut out =
            LoopElement::central(size, parse_rational(&raw.central).map_err(Error::custom)?);
        for t in raw.terms {
            let term = LoopElement::term(t.matrix, t.exp).map_err(Error::custom)?;
            out = out.add(&term).map_err(Error::custom)?;
        }
        Ok(out)
    }
}

/// `[x ⊗ t^m, y ⊗ t^k] = [x, y] ⊗ t^{m+k} + m δ_{m,-k} tr(xy) c`, extended
/// bilinearly; `c` is central.
pub fn loop_bracket(x: &LoopElement, y: &LoopElement) -> Result<LoopElement> {
    x.check(y)?;
    let mut out = LoopElement::zero(x.size);
    for (m, a) in &x.terms {
        for (k, b) in &y.terms {
            out.accumulate(m + k, &a.commutator(b), &int(1));
            if *m == -*k && *m != 0 {
                out.central += int(*m) * a.trace_product(b);
            }
        }
    }
    Ok(out)
}

/// Generators `(e_i, f_i)`, `i = 1..n`, of the fixed-point subalgebra:
///
/// `e_i = E_{alpha_i} ⊗ 1 - E_{-alpha_{n+i}} ⊗ 1` for `i < n` and
/// `e_n = E_{alpha_n} ⊗ 1 ± E_{alpha♭} ⊗ t^{-1}`, with
/// `alpha♭ = alpha_1 + ... + alpha_{2n-1}` and the sign from `variant`.
pub fn fixed_point_generators(
    n: usize,
    variant: SignVariant,
) -> Result<Vec<(LoopElement, LoopElement)>> {
    if n < 3 {
        return Err(GimError::RankOutOfRange { n, min: 3 });
    }
    let s = 2 * n;
    let sign = variant.sign();
    let mut out = Vec::with_capacity(n);
    for i in 1..n {
        let e = LoopElement::term(&eu(s, i, i + 1) - &eu(s, n + i + 1, n + i), 0)?;
        let f = LoopElement::term(&eu(s, i + 1, i) - &eu(s, n + i, n + i + 1), 0)?;
        out.push((e, f));
    }
    let e = LoopElement::term(eu(s, n, n + 1), 0)?
        .add(&LoopElement::term(eu(s, 1, s).scale(&sign), -1)?)?;
    let f = LoopElement::term(eu(s, n + 1, n), 0)?
        .add(&LoopElement::term(eu(s, s, 1).scale(&sign), 1)?)?;
    out.push((e, f));
    Ok(out)
}

/// A relation of `gim(M_n)` that fails on the fixed-point generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopRelationFailure {
    pub relation: RelationId,
    pub pair: (usize, usize),
    pub residual: LoopElement,
}

/// Evaluates every relation of `gim(M_n)` on the fixed-point generators,
/// with `h_i = [e_i, f_i]`. Returns the number of identities checked and
/// the failures.
pub fn check_fixed_point_relations(
    n: usize,
    variant: SignVariant,
) -> Result<(usize, Vec<LoopRelationFailure>)> {
    let m = gim_matrix_mn(n)?;
    let gens = fixed_point_generators(n, variant)?;
    let (x, y): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
    let h = x
        .iter()
        .zip(&y)
        .map(|(e, f)| loop_bracket(e, f))
        .collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    let mut failures = Vec::new();
    relation_residuals(
        &m,
        &x,
        &y,
        &h,
        |a, b| loop_bracket(a, b).expect("generators share a size"),
        |a, c, b| a.add(&b.scale(c)).expect("generators share a size"),
        |relation, pair, residual: LoopElement| {
            checked += 1;
            if !residual.is_zero() {
                failures.push(LoopRelationFailure {
                    relation,
                    pair,
                    residual,
                });
            }
        },
    );
    Ok((checked, failures))
}

/// The four bracket chains that isolate `Xi`, in order:
///
/// 1. `[e_1, [e_2, ... [e_{n-1}, e_n] ...]]`
/// 2. `[... [f_{n-1}, f_{n-2}], ... f_1]`
/// 3. `[(2), (1)]`
/// 4. `[(3), f_n]`
///
/// and `Xi = (4) - [e_n, f_n] = H_n ⊗ t^{-1} + (H_1 + ... + H_{2n-1}) ⊗ t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiChain {
    pub intermediates: Vec<LoopElement>,
    pub xi: LoopElement,
}

pub fn xi_chain(n: usize) -> Result<XiChain> {
    let gens = fixed_point_generators(n, SignVariant::Plus)?;
    let e = |i: usize| &gens[i - 1].0;
    let f = |i: usize| &gens[i - 1].1;

    let mut first = e(n).clone();
    for i in (1..n).rev() {
        first = loop_bracket(e(i), &first)?;
    }
    let mut second = f(n - 1).clone();
    for i in (1..n - 1).rev() {
        second = loop_bracket(&second, f(i))?;
    }
    let third = loop_bracket(&second, &first)?;
    let fourth = loop_bracket(&third, f(n))?;
    let h_n = loop_bracket(e(n), f(n))?;
    let xi = fourth.sub(&h_n)?;
    Ok(XiChain {
        intermediates: vec![first, second, third, fourth],
        xi,
    })
}

fn unit_poly(x: RatMatrix, poly: &[(i64, i64)]) -> Result<LoopElement> {
    let poly: Vec<(i64, Rational)> = poly.iter().map(|(m, c)| (*m, int(*c))).collect();
    LoopElement::with_poly(&x, &poly)
}

fn cartan_unit(s: usize, i: usize) -> RatMatrix {
    &eu(s, i, i) - &eu(s, i + 1, i + 1)
}

/// The closed forms the bracket chain is expected to produce, written
/// directly in matrix units (`H_1 + ... + H_{2n-1} = E_{11} - E_{2n,2n}`):
///
/// 1. `E_{1,n+1} ⊗ (1 + t^{-1})`
/// 2. `(E_{n,1} - E_{n+1,2n}) ⊗ 1`
/// 3. `(E_{n,n+1} + E_{1,2n}) ⊗ (1 + t^{-1})`
/// 4. `H_n ⊗ (1 + t^{-1}) + (E_{11} - E_{2n,2n}) ⊗ (1 + t) - c`
pub fn displayed_xi_chain(n: usize) -> Result<XiChain> {
    if n < 3 {
        return Err(GimError::RankOutOfRange { n, min: 3 });
    }
    let s = 2 * n;
    let sum_h = &eu(s, 1, 1) - &eu(s, s, s);
    let first = unit_poly(eu(s, 1, n + 1), &[(0, 1), (-1, 1)])?;
    let second = unit_poly(&eu(s, n, 1) - &eu(s, n + 1, s), &[(0, 1)])?;
    let third = unit_poly(&eu(s, n, n + 1) + &eu(s, 1, s), &[(0, 1), (-1, 1)])?;
    let fourth = unit_poly(cartan_unit(s, n), &[(0, 1), (-1, 1)])?
        .add(&unit_poly(sum_h.clone(), &[(0, 1), (1, 1)])?)?
        .add(&LoopElement::central(s, int(-1)))?;
    let xi = unit_poly(cartan_unit(s, n), &[(-1, 1)])?.add(&unit_poly(sum_h, &[(1, 1)])?)?;
    Ok(XiChain {
        intermediates: vec![first, second, third, fourth],
        xi,
    })
}

/// Computed and closed-form sides of the two degree-shifting identities
///
/// `[(ad Xi / 2)^m e_n, f_n] = H_n ⊗ t^{-m} + (H_1 + ... + H_{2n-1}) ⊗ t^m`,
/// `[(ad Xi)^m e_1, f_1] = H_1 ⊗ t^m - H_{n+1} ⊗ t^{-m}`.
pub fn xi_shift_identities(n: usize, m: usize) -> Result<[(LoopElement, LoopElement); 2]> {
    let s = 2 * n;
    let gens = fixed_point_generators(n, SignVariant::Plus)?;
    let xi = xi_chain(n)?.xi;
    let mi = m as i64;
    let sum_h = &eu(s, 1, 1) - &eu(s, s, s);

    let lifted = loop_ad_power(&xi.scale(&rat(1, 2)), m, &gens[n - 1].0)?;
    let top = loop_bracket(&lifted, &gens[n - 1].1)?;
    let top_want =
        unit_poly(cartan_unit(s, n), &[(-mi, 1)])?.add(&unit_poly(sum_h, &[(mi, 1)])?)?;

    let lifted = loop_ad_power(&xi, m, &gens[0].0)?;
    let bottom = loop_bracket(&lifted, &gens[0].1)?;
    let bottom_want = unit_poly(cartan_unit(s, 1), &[(mi, 1)])?
        .add(&unit_poly(cartan_unit(s, n + 1), &[(-mi, -1)])?)?;
    Ok([(top, top_want), (bottom, bottom_want)])
}

/// `(ad x)^m (y)` in the loop algebra.
pub fn loop_ad_power(x: &LoopElement, m: usize, y: &LoopElement) -> Result<LoopElement> {
    let mut acc = y.clone();
    for _ in 0..m {
        acc = loop_bracket(x, &acc)?;
    }
    Ok(acc)
}

/// `t -> t^{-1}` on the centerless loop algebra.
pub fn sigma(x: &LoopElement) -> Result<LoopElement> {
    if !x.central.is_zero() {
        return Err(GimError::NonzeroCentral(format_rational(&x.central)));
    }
    Ok(LoopElement {
        size: x.size,
        terms: x.terms.iter().map(|(m, v)| (-m, v.clone())).collect(),
        central: Rational::zero(),
    })
}

fn power(a: &Rational, m: i64) -> Rational {
    if m >= 0 {
        Pow::pow(a, m as u64)
    } else {
        Pow::pow(&a.recip(), m.unsigned_abs())
    }
}

/// Evaluation `x ⊗ t^m -> a^m x`, `c -> 0`.
pub fn eval_at(x: &LoopElement, a: &Rational) -> Result<RatMatrix> {
    if a.is_zero() {
        return Err(GimError::ZeroParameter);
    }
    let mut out = RatMatrix::zeros(x.size, x.size);
    for (m, v) in &x.terms {
        out.add_scaled(&power(a, *m), v);
    }
    Ok(out)
}

/// Dense polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial(pub Vec<Rational>);

impl Polynomial {
    pub fn from_roots(roots: &[Rational]) -> Self {
        let mut p = vec![int(1)];
        for r in roots {
            let mut next = vec![Rational::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            p = next;
        }
        Polynomial(p)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Quotient by `t - r`, asserting zero remainder.
    pub fn div_linear(&self, r: &Rational) -> Polynomial {
        let deg = self.0.len() - 1;
        let mut q = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for i in (0..=deg).rev() {
            let c = &self.0[i] + &carry * r;
            if i == 0 {
                assert!(c.is_zero(), "div_linear: nonzero remainder");
            } else {
                q[i - 1] = c.clone();
            }
            carry = c;
        }
        Polynomial(q)
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}

/// The quotient by `theta*(t) = prod (t - a_i)`, distinct nonzero roots, with
/// the partial-fraction constants `sum_i c_i theta*(t) / (t - a_i) = 1` and
/// `d_i = theta*(t) / (t - a_i)` evaluated at `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSpec {
    #[serde(with = "serde_vec")]
    pub roots: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "serde_vec")]
    pub d: Vec<Rational>,
}

impl QuotientSpec {
    pub fn theta(&self) -> Polynomial {
        Polynomial::from_roots(&self.roots)
    }

    /// `sum_i c_i theta*(t) / (t - a_i)` as a polynomial.
    pub fn partial_fraction_sum(&self) -> Polynomial {
        let theta = self.theta();
        let k = self.roots.len();
        let mut acc = vec![Rational::zero(); k.max(1)];
        for (ci, ai) in self.c.iter().zip(&self.roots) {
            for (slot, q) in acc.iter_mut().zip(theta.div_linear(ai).0) {
                *slot += ci * q;
            }
        }
        Polynomial(acc).trimmed()
    }
}

/// Builds the quotient data. The `c_i` are solved from the polynomial
/// identity itself; `c_i d_i = 1` is then checked rather than assumed.
pub fn make_quotient(roots: &[Rational]) -> Result<QuotientSpec> {
    if roots.is_empty() {
        return Err(GimError::TupleConstraint("no roots".into()));
    }
    for (i, r) in roots.iter().enumerate() {
        if r.is_zero() {
            return Err(GimError::ZeroParameter);
        }
        if roots[..i].contains(r) {
            return Err(GimError::RepeatedRoot(format_rational(r)));
        }
    }
    let theta = Polynomial::from_roots(roots);
    let k = roots.len();
    let cofactors: Vec<Polynomial> = roots.iter().map(|a| theta.div_linear(a)).collect();
    let d: Vec<Rational> = roots
        .iter()
        .zip(&cofactors)
        .map(|(a, q)| q.eval(a))
        .collect();
    // Column i holds the coefficients of theta*(t)/(t - a_i).
    let mut system = RatMatrix::zeros(k, k);
    for (i, q) in cofactors.iter().enumerate() {
        for (row, coef) in q.0.iter().enumerate() {
            system.set(row, i, coef.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); k];
    rhs[0] = int(1);
    let c = solve(&system, &rhs)?
        .ok_or_else(|| GimError::TupleConstraint("partial fractions do not exist".into()))?;
    let spec = QuotientSpec {
        roots: roots.to_vec(),
        c,
        d,
    };
    debug_assert_eq!(spec.partial_fraction_sum(), Polynomial(vec![int(1)]));
    debug_assert!(spec.c.iter().zip(&spec.d).all(|(c, d)| (c * d).is_one()));
    Ok(spec)
}

/// The canonical map to `sl_N^K`: block `k` is
/// `sum_m c_k d_k a_k^m x_m`, with `c` sent to zero.
pub fn eval_quotient_map(x: &LoopElement, q: &QuotientSpec) -> Result<Vec<RatMatrix>> {
    q.roots
        .iter()
        .zip(q.c.iter().zip(&q.d))
        .map(|(a, (c, d))| Ok(eval_at(x, a)?.scale(&(c * d))))
        .collect()
}
