//! The Sonic constraint system.
//!
//! A system has `N` multiplication gates `a_i·b_i = c_i` and `Q` linear
//! constraints `a·u_q + b·v_q + c·w_q = k_q`. Indices are 1-based. The
//! witness is encoded as
//!
//! ```text
//! R(Z) = Σ a_i Z^i + Σ b_i Z^{-i} + Σ c_i Z^{-i-N},   r[X,Y] = R(XY)
//! ```
//!
//! and the public side as `s[X,Y]` and `k̂[Y]`, chosen so the constant
//! term in `X` of `t[X,Y] = r[X,1](r[X,Y] + s[X,Y]) − k̂[Y]` vanishes for
//! every `Y` exactly when the witness satisfies the system.

mod json;
pub mod examples;

use ark_ff::{Field, PrimeField};
use thiserror::Error;
use zkclaim_poly::{LaurentPoly, PolyError};

pub use json::ConstraintSystemJson;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScsError {
    #[error("constraint index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("witness length {got}, system has {expected} gates")]
    LengthMismatch { expected: usize, got: usize },
    #[error("t[X,y] has a nonzero constant term; the witness does not satisfy the system")]
    NonZeroConstantTerm,
    #[error("evaluation at zero")]
    ZeroChallenge,
    #[error("malformed constraint system: {0}")]
    Format(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Sparse `(index, coefficient)` pairs; repeated indices add up.
pub type SparseVec<F> = Vec<(usize, F)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint<F> {
    pub u: SparseVec<F>,
    pub v: SparseVec<F>,
    pub w: SparseVec<F>,
    pub k: F,
}

impl<F: Field> LinearConstraint<F> {
    fn lhs(&self, wit: &Witness<F>) -> F {
        let dot = |vec: &SparseVec<F>, xs: &[F]| vec.iter().map(|(i, c)| xs[i - 1] * c).sum::<F>();
        dot(&self.u, &wit.a) + dot(&self.v, &wit.b) + dot(&self.w, &wit.c)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem<F> {
    n: usize,
    linear: Vec<LinearConstraint<F>>,
}

/// Smallest SRS degree that admits every polynomial the prover commits to:
/// `t` reaches `X^{-4N}`, `s[1,Y]` and `k̂` reach `Y^{N+Q}`.
pub fn required_degree(n: usize, q: usize) -> usize {
    (4 * n).max(n + q)
}

impl<F: Field> ConstraintSystem<F> {
    pub fn new() -> Self {
        Self { n: 0, linear: Vec::new() }
    }

    /// Number of multiplication gates.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of linear constraints.
    pub fn q(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[LinearConstraint<F>] {
        &self.linear
    }

    pub fn required_degree(&self) -> usize {
        required_degree(self.n, self.q())
    }

    /// Returns the 1-based index of the new gate.
    pub fn add_multiplication(&mut self) -> usize {
        self.n += 1;
        self.n
    }

    /// Appends `count` gates, returning the index of the first.
    pub fn add_multiplications(&mut self, count: usize) -> usize {
        let first = self.n + 1;
        self.n += count;
        first
    }

    pub fn add_linear(
        &mut self,
        u: SparseVec<F>,
        v: SparseVec<F>,
        w: SparseVec<F>,
        k: F,
    ) -> Result<(), ScsError> {
        for (i, _) in u.iter().chain(&v).chain(&w) {
            if *i == 0 || *i > self.n {
                return Err(ScsError::IndexOutOfRange { index: *i, n: self.n });
            }
        }
        self.linear.push(LinearConstraint { u, v, w, k });
        Ok(())
    }

    fn check_len(&self, wit: &Witness<F>) -> Result<(), ScsError> {
        for len in [wit.a.len(), wit.b.len(), wit.c.len()] {
            if len != self.n {
                return Err(ScsError::LengthMismatch { expected: self.n, got: len });
            }
        }
        Ok(())
    }

    pub fn is_satisfied(&self, wit: &Witness<F>) -> Result<bool, ScsError> {
        Ok(self.first_violation(wit)?.is_none())
    }

    /// The first failing constraint, if any.
    pub fn first_violation(&self, wit: &Witness<F>) -> Result<Option<Violation>, ScsError> {
        self.check_len(wit)?;
        for i in 0..self.n {
            if wit.a[i] * wit.b[i] != wit.c[i] {
                return Ok(Some(Violation::Multiplication(i + 1)));
            }
        }
        for (q, lc) in self.linear.iter().enumerate() {
            if lc.lhs(wit) != lc.k {
                return Ok(Some(Violation::Linear(q + 1)));
            }
        }
        Ok(None)
    }

    pub fn sk_polys(&self) -> SkPolys<F> {
        SkPolys::new(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Multiplication(usize),
    Linear(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<F> {
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
}

impl<F: Field> Witness<F> {
    pub fn zeros(n: usize) -> Self {
        Self { a: vec![F::zero(); n], b: vec![F::zero(); n], c: vec![F::zero(); n] }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Set gate `i` (1-based).
    pub fn set(&mut self, i: usize, a: F, b: F, c: F) {
        self.a[i - 1] = a;
        self.b[i - 1] = b;
        self.c[i - 1] = c;
    }

    /// Set gate `i` to `(a, b, a·b)`.
    pub fn set_product(&mut self, i: usize, a: F, b: F) {
        self.set(i, a, b, a * b);
    }
}

/// `R(Z)`; `r[X,Y]` is `R(XY)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPoly<F: Field> {
    n: usize,
    poly: LaurentPoly<F>,
}

impl<F: Field> RPoly<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &LaurentPoly<F> {
        &self.poly
    }

    pub fn into_poly(self) -> LaurentPoly<F> {
        self.poly
    }

    /// `r[z, y] = R(z·y)`.
    pub fn eval(&self, z: F, y: F) -> Result<F, ScsError> {
        Ok(self.poly.eval(z * y)?)
    }

    /// `r[X, y]` as a polynomial in `X`.
    pub fn at_y(&self, y: F) -> Result<LaurentPoly<F>, ScsError> {
        let yinv = y.inverse().ok_or(ScsError::ZeroChallenge)?;
        let mut out = LaurentPoly::zero_with_bound(self.poly.bound());
        for (e, c) in self.poly.terms() {
            let ye = if e >= 0 { y.pow([e as u64]) } else { yinv.pow([e.unsigned_abs()]) };
            out.add_term(e, c * ye);
        }
        Ok(out)
    }
}

pub fn build_r_poly<F: Field>(wit: &Witness<F>) -> RPoly<F> {
    let n = wit.n();
    let mut poly = LaurentPoly::zero_with_bound(2 * n as u64);
    for i in 1..=n {
        let e = i as i64;
        poly.add_term(e, wit.a[i - 1]);
        poly.add_term(-e, wit.b[i - 1]);
        poly.add_term(-e - n as i64, wit.c[i - 1]);
    }
    RPoly { n, poly }
}

/// Public polynomials `s[X,Y]` and `k̂[Y]` of a constraint system.
///
/// ```text
/// s[X,Y] = Σ_i û_i(Y) X^{-i} + v̂_i(Y) X^i + ŵ_i(Y) X^{i+N}
/// û_i(Y) = Σ_q u_{q,i} Y^{q+N}
/// ŵ_i(Y) = −Y^i − Y^{-i} + Σ_q w_{q,i} Y^{q+N}
/// k̂(Y)  = Σ_q k_q Y^{q+N}
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkPolys<F> {
    n: usize,
    q: usize,
    /// `(i, q, coefficient)`, both 1-based.
    u: Vec<(usize, usize, F)>,
    v: Vec<(usize, usize, F)>,
    w: Vec<(usize, usize, F)>,
    k: Vec<F>,
}

impl<F: Field> SkPolys<F> {
    fn new(cs: &ConstraintSystem<F>) -> Self {
        let mut u = Vec::new();
        let mut v = Vec::new();
        let mut w = Vec::new();
        for (q, lc) in cs.linear.iter().enumerate() {
            u.extend(lc.u.iter().map(|(i, c)| (*i, q + 1, *c)));
            v.extend(lc.v.iter().map(|(i, c)| (*i, q + 1, *c)));
            w.extend(lc.w.iter().map(|(i, c)| (*i, q + 1, *c)));
        }
        let k = cs.linear.iter().map(|lc| lc.k).collect();
        Self { n: cs.n, q: cs.q(), u, v, w, k }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn degree_bound(&self) -> u64 {
        required_degree(self.n, self.q) as u64
    }

    /// `[y^{N+1}, …, y^{N+Q}]`.
    fn linear_powers(&self, y: F) -> Vec<F> {
        let mut out = Vec::with_capacity(self.q);
        let mut p = y.pow([self.n as u64 + 1]);
        for _ in 0..self.q {
            out.push(p);
            p *= y;
        }
        out
    }

    /// `s[X, y]` as a polynomial in `X`.
    pub fn s_x(&self, y: F) -> Result<LaurentPoly<F>, ScsError> {
        let yinv = y.inverse().ok_or(ScsError::ZeroChallenge)?;
        let yq = self.linear_powers(y);
        let n = self.n as i64;
        let mut out = LaurentPoly::zero_with_bound(self.degree_bound());
        for (i, q, c) in &self.u {
            out.add_term(-(*i as i64), *c * yq[q - 1]);
        }
        for (i, q, c) in &self.v {
            out.add_term(*i as i64, *c * yq[q - 1]);
        }
        for (i, q, c) in &self.w {
            out.add_term(*i as i64 + n, *c * yq[q - 1]);
        }
        let (mut yi, mut yni) = (F::one(), F::one());
        for i in 1..=n {
            yi *= y;
            yni *= yinv;
            out.add_term(i + n, -(yi + yni));
        }
        Ok(out)
    }

    /// `s[x, Y]` as a polynomial in `Y`.
    pub fn s_y(&self, x: F) -> Result<LaurentPoly<F>, ScsError> {
        let xinv = x.inverse().ok_or(ScsError::ZeroChallenge)?;
        let n = self.n as i64;
        let mut xp = Vec::with_capacity(2 * self.n + 1);
        let mut xm = Vec::with_capacity(self.n + 1);
        let (mut p, mut m) = (F::one(), F::one());
        for _ in 0..=2 * self.n {
            xp.push(p);
            p *= x;
        }
        for _ in 0..=self.n {
            xm.push(m);
            m *= xinv;
        }
        let mut out = LaurentPoly::zero_with_bound(self.degree_bound());
        for (i, q, c) in &self.u {
            out.add_term(*q as i64 + n, *c * xm[*i]);
        }
        for (i, q, c) in &self.v {
            out.add_term(*q as i64 + n, *c * xp[*i]);
        }
        for (i, q, c) in &self.w {
            out.add_term(*q as i64 + n, *c * xp[i + self.n]);
        }
        for i in 1..=self.n {
            let c = -xp[i + self.n];
            out.add_term(i as i64, c);
            out.add_term(-(i as i64), c);
        }
        Ok(out)
    }

    pub fn eval(&self, x: F, y: F) -> Result<F, ScsError> {
        Ok(self.s_x(y)?.eval(x)?)
    }

    pub fn k_hat(&self) -> LaurentPoly<F> {
        let mut out = LaurentPoly::zero_with_bound(self.degree_bound());
        for (q, k) in self.k.iter().enumerate() {
            out.add_term((q + 1 + self.n) as i64, *k);
        }
        out
    }
}

/// `t[X, y]` including its constant term, which equals `𝒞[y]`.
pub fn t_poly<F: Field>(r: &RPoly<F>, sk: &SkPolys<F>, y: F) -> Result<LaurentPoly<F>, ScsError> {
    let bound = sk.degree_bound();
    let right = &r.at_y(y)? + &sk.s_x(y)?;
    let mut t = r.poly.mul(&right, bound)?;
    t.add_term(0, -sk.k_hat().eval(y)?);
    Ok(t)
}

/// `t[X, y]` with the (necessarily zero) constant term removed, ready for a
/// restricted commitment.
pub fn compute_t<F: Field>(r: &RPoly<F>, sk: &SkPolys<F>, y: F) -> Result<LaurentPoly<F>, ScsError> {
    let t = t_poly(r, sk, y)?;
    if !t.constant_term().is_zero() {
        return Err(ScsError::NonZeroConstantTerm);
    }
    Ok(t)
}

/// Embed a signed integer; shorthand used by the circuit builders.
pub fn int<F: PrimeField>(v: i64) -> F {
    zkclaim_algebra::scalar_from_i64(v)
}
