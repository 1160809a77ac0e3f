//! Sparse Laurent polynomials `f[X] = Σ_{i=-d}^{d} a_i X^i` over a prime field.
//!
//! Coefficients live in a `BTreeMap` keyed by exponent and zero entries are
//! never stored, so two polynomials are equal iff their maps are equal. The
//! degree bound `d` travels with the value and is enforced by `shift`, `mul`
//! and the commitment layer.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use ark_ff::Field;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent {exp} exceeds degree bound {bound}")]
    DegreeOverflow { exp: i64, bound: u64 },
    #[error("evaluation at zero of a polynomial with negative exponents")]
    EvalAtZero,
    #[error("duplicate abscissa in interpolation set")]
    DuplicateAbscissa,
    #[error("vanishing polynomial of an empty set")]
    EmptySet,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
}

#[derive(Clone)]
pub struct LaurentPoly<F> {
    coeffs: BTreeMap<i64, F>,
    bound: u64,
}

impl<F: Field> PartialEq for LaurentPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for LaurentPoly<F> {}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})X^{e}")?;
        }
        Ok(())
    }
}

impl<F: Field> Default for LaurentPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new(), bound: 0 }
    }

    pub fn zero_with_bound(bound: u64) -> Self {
        Self { coeffs: BTreeMap::new(), bound }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, c)
    }

    /// `c·X^exp`, with the bound set to `|exp|`.
    pub fn monomial(exp: i64, c: F) -> Self {
        let mut p = Self::zero_with_bound(exp.unsigned_abs());
        p.add_term(exp, c);
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    /// The bound is the smallest one admitting every exponent.
    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.bound = p.bound.max(e.unsigned_abs());
            p.add_term(e, c);
        }
        p
    }

    /// Ordinary polynomial from ascending coefficients `c_0 + c_1 X + ...`.
    pub fn from_coeffs(coeffs: &[F]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i64, *c)))
    }

    /// Same as [`from_terms`](Self::from_terms) but rejects exponents outside `[-bound, bound]`.
    pub fn from_terms_bounded<I: IntoIterator<Item = (i64, F)>>(
        bound: u64,
        terms: I,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero_with_bound(bound);
        for (e, c) in terms {
            p.check_exp(e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn check_exp(&self, e: i64) -> Result<(), PolyError> {
        if e.unsigned_abs() > self.bound {
            return Err(PolyError::DegreeOverflow { exp: e, bound: self.bound });
        }
        Ok(())
    }

    /// Accumulate `c·X^e` without a bound check; drops the entry if it cancels.
    pub fn add_term(&mut self, e: i64, c: F) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert(F::zero());
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Re-bound the polynomial, failing if some exponent no longer fits.
    pub fn with_bound(mut self, bound: u64) -> Result<Self, PolyError> {
        self.bound = bound;
        if let Some(e) = self.coeffs.keys().find(|e| e.unsigned_abs() > bound) {
            return Err(PolyError::DegreeOverflow { exp: *e, bound });
        }
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: i64) -> F {
        self.coeffs.get(&e).copied().unwrap_or(F::zero())
    }

    pub fn constant_term(&self) -> F {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, F)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn has_negative_terms(&self) -> bool {
        self.min_exp().map_or(false, |e| e < 0)
    }

    /// Drop the `X^0` coefficient.
    pub fn without_constant_term(&self) -> Self {
        let mut p = self.clone();
        p.coeffs.remove(&0);
        p
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero_with_bound(self.bound);
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, *v * c)).collect(),
            bound: self.bound,
        }
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: i64) -> Result<Self, PolyError> {
        let mut out = Self::zero_with_bound(self.bound);
        for (e, c) in &self.coeffs {
            out.check_exp(e + k)?;
            out.coeffs.insert(e + k, *c);
        }
        Ok(out)
    }

    /// Product, required to fit in `[-bound, bound]`.
    pub fn mul(&self, other: &Self, bound: u64) -> Result<Self, PolyError> {
        let (Some(lo_a), Some(hi_a), Some(lo_b), Some(hi_b)) =
            (self.min_exp(), self.max_exp(), other.min_exp(), other.max_exp())
        else {
            return Ok(Self::zero_with_bound(bound));
        };
        let lo = lo_a + lo_b;
        let hi = hi_a + hi_b;
        let mut dense = vec![F::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                dense[(ea + eb - lo) as usize] += *ca * cb;
            }
        }
        let mut out = Self::zero_with_bound(bound);
        for (i, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                let e = lo + i as i64;
                out.check_exp(e)?;
                out.coeffs.insert(e, c);
            }
        }
        Ok(out)
    }

    /// `f(z) = Σ a_i z^i`; negative powers use `z^{-1}`.
    pub fn eval(&self, z: F) -> Result<F, PolyError> {
        if self.is_zero() {
            return Ok(F::zero());
        }
        let zinv = if self.has_negative_terms() {
            Some(z.inverse().ok_or(PolyError::EvalAtZero)?)
        } else {
            None
        };
        let mut acc = F::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                z.pow([*e as u64])
            } else {
                zinv.unwrap().pow([e.unsigned_abs()])
            };
            acc += *c * p;
        }
        Ok(acc)
    }

    /// Returns `(q, f(z))` with `(X − z)·q = f − f(z)`.
    ///
    /// The negative part is cleared by the shift `g = X^m f`; synthetic
    /// division gives `g = (X − z)h + g(z)`, and the leftover
    /// `f(z)(X^{-m} z^m − 1)` factors as `−(X − z) f(z) Σ_{j=1}^{m} z^{j−1} X^{−j}`.
    pub fn div_rem_linear(&self, z: F) -> Result<(Self, F), PolyError> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok((Self::zero_with_bound(self.bound), F::zero()));
        };
        let m = if lo < 0 { -lo } else { 0 };
        if m > 0 && z.is_zero() {
            return Err(PolyError::EvalAtZero);
        }
        // g has exponents [0, hi + m]; ascending dense coefficients.
        let deg = (hi + m).max(0) as usize;
        let mut g = vec![F::zero(); deg + 1];
        for (e, c) in &self.coeffs {
            g[(e + m) as usize] = *c;
        }
        // Synthetic division, top-down: h_{i-1} = g_i + z·h_i.
        let mut h = vec![F::zero(); deg];
        let mut carry = F::zero();
        for i in (1..=deg).rev() {
            carry = g[i] + z * carry;
            h[i - 1] = carry;
        }
        let g_at_z = g[0] + z * carry;
        let f_at_z = if m > 0 { g_at_z * z.inverse().unwrap().pow([m as u64]) } else { g_at_z };

        let mut q = Self::zero_with_bound(self.bound);
        for (i, c) in h.into_iter().enumerate() {
            q.add_term(i as i64 - m, c);
        }
        let mut zp = F::one();
        for j in 1..=m {
            q.add_term(-j, -(f_at_z * zp));
            zp *= z;
        }
        Ok((q, f_at_z))
    }

    /// Quotient `q` of `f − f(z) = (X − z)·q`.
    pub fn divide_by_linear(&self, z: F) -> Result<Self, PolyError> {
        Ok(self.div_rem_linear(z)?.0)
    }

    /// Exact division by `Z_S[X] = Π_{s∈S}(X − s)`.
    pub fn divide_by_vanishing(&self, set: &[F]) -> Result<Self, PolyError> {
        let mut q = self.clone();
        for s in set {
            let (next, rem) = q.div_rem_linear(*s)?;
            if !rem.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            q = next;
        }
        Ok(q)
    }

    fn combine(&self, other: &Self, sign: F) -> Self {
        let mut out = self.clone();
        out.bound = self.bound.max(other.bound);
        for (e, c) in &other.coeffs {
            out.add_term(*e, *c * sign);
        }
        out
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        self.combine(rhs, F::one())
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        self.combine(rhs, -F::one())
    }
}

impl<F: Field> Add for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        &self - &rhs
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        self.scale(-F::one())
    }
}

/// `Z_S[X] = Π_{s∈S} (X − s)`: monic, degree `|S|`.
pub fn vanishing_poly<F: Field>(set: &[F]) -> Result<LaurentPoly<F>, PolyError> {
    if set.is_empty() {
        return Err(PolyError::EmptySet);
    }
    for (i, a) in set.iter().enumerate() {
        if set[..i].contains(a) {
            return Err(PolyError::DuplicateAbscissa);
        }
    }
    Ok(LaurentPoly::from_coeffs(&vanishing_coeffs(set)))
}

/// Ascending coefficients of `Π (X − s)`.
fn vanishing_coeffs<F: Field>(set: &[F]) -> Vec<F> {
    let mut acc = vec![F::one()];
    for s in set {
        let mut next = vec![F::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= *c * s;
        }
        acc = next;
    }
    acc
}

/// Unique polynomial of degree `< |points|` through every `(x, y)`.
pub fn lagrange_interpolate<F: Field>(points: &[(F, F)]) -> Result<LaurentPoly<F>, PolyError> {
    let xs: Vec<F> = points.iter().map(|p| p.0).collect();
    for (i, a) in xs.iter().enumerate() {
        if xs[..i].contains(a) {
            return Err(PolyError::DuplicateAbscissa);
        }
    }
    let n = points.len();
    if n == 0 {
        return Ok(LaurentPoly::zero());
    }
    let z = vanishing_coeffs(&xs);
    let mut out = vec![F::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Z(X)/(X − x_i) by synthetic division (remainder is zero).
        let mut quot = vec![F::zero(); n];
        let mut carry = F::zero();
        for k in (1..=n).rev() {
            carry = z[k] + *xi * carry;
            quot[k - 1] = carry;
        }
        let denom: F = xs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, xj)| *xi - xj)
            .product();
        let w = *yi * denom.inverse().expect("distinct abscissae");
        for (o, q) in out.iter_mut().zip(quot) {
            *o += w * q;
        }
    }
    let mut p = LaurentPoly::from_coeffs(&out);
    p.bound = (n - 1) as u64;
    Ok(p)
}
