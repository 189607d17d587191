//! Truncated Laurent series in `1/λ` and the roots of the quartic at the
//! infinite place.
//!
//! A series `Σ_{n ≥ lead} aₙ λ^(−n)` is stored with its leading exponent,
//! the coefficients from that exponent on, and an absolute truncation
//! order: every coefficient of exponent `≥ order` is unknown. Arithmetic
//! propagates orders pessimistically so that every stored coefficient is
//! exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::rational::is_unit_magnitude;
use crate::arith::{int, Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::family::Modulus;

/// Working order used when a caller has no better estimate.
pub const DEFAULT_ORDER: i64 = 8;
/// Largest order the adaptive routines will double up to.
pub const DEFAULT_PRECISION_CAP: i64 = 1024;

/// Starting order and cap for routines that raise precision until a
/// leading term is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start: i64,
    pub cap: i64,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: DEFAULT_ORDER,
            cap: DEFAULT_PRECISION_CAP,
        }
    }
}

impl Precision {
    /// Orders `start, 2·start, …` up to and including `cap`.
    pub fn schedule(&self) -> impl Iterator<Item = i64> {
        let cap = self.cap.max(self.start);
        std::iter::successors(Some(self.start.max(1)), move |&o| {
            (o < cap).then(|| (o * 2).min(cap))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    lead: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Inv,
}

impl LaurentSeries {
    /// Coefficients start at exponent `lead`; exponents in `[lead, order)`
    /// not covered by `coeffs` are zero, those at or past `order` dropped.
    pub fn new(lead: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        if lead >= order {
            return LaurentSeries::zero(order);
        }
        let len = (order - lead) as usize;
        coeffs.resize(len, Rational::zero());
        Self::normalized(lead, coeffs, order)
    }

    fn normalized(lead: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => LaurentSeries::zero(order),
            Some(0) => LaurentSeries {
                lead,
                coeffs,
                order,
            },
            Some(k) => LaurentSeries {
                lead: lead + k as i64,
                coeffs: coeffs[k..].to_vec(),
                order,
            },
        }
    }

    /// The series that is zero through exponent `order − 1`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            lead: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        LaurentSeries::new(0, vec![c], order)
    }

    /// `c·λ^(−exponent)`.
    pub fn monomial(c: Rational, exponent: i64, order: i64) -> Self {
        LaurentSeries::new(exponent, vec![c], order)
    }

    pub fn from_poly(p: &Poly, order: i64) -> Self {
        match p.degree() {
            None => LaurentSeries::zero(order),
            Some(d) => {
                let coeffs = p.coeffs().iter().rev().cloned().collect();
                LaurentSeries::new(-(d as i64), coeffs, order)
            }
        }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `v_∞`, or `None` when the series is zero to its order.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lead)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `λ^(−exponent)`.
    pub fn coeff(&self, exponent: i64) -> Result<Rational> {
        if exponent >= self.order {
            return Err(Error::PrecisionUnderflow(format!(
                "coefficient of exponent {exponent} requested from a series known to order {}",
                self.order
            )));
        }
        if exponent < self.lead {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(exponent - self.lead) as usize].clone())
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if order <= self.lead {
            return LaurentSeries::zero(order);
        }
        LaurentSeries::normalized(
            self.lead,
            self.coeffs[..(order - self.lead) as usize].to_vec(),
            order,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentSeries::zero(self.order);
        }
        LaurentSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
    }

    /// Multiplies by `λ^(−k)`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let rel = (self.order - self.lead) as usize;
        let coeffs = ps_inv(&self.coeffs, rel);
        Ok(LaurentSeries {
            lead: -self.lead,
            coeffs,
            order: -self.lead + rel as i64,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentSeries::constant(Rational::one(), i64::MAX / 4);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn known_range_disjoint(&self, other: &LaurentSeries) -> bool {
        !self.is_zero()
            && !other.is_zero()
            && (self.order <= other.lead || other.order <= self.lead)
    }
}

/// Power-series product truncated to `n` terms.
fn ps_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Power-series inverse to `n` terms; requires `a[0] != 0`.
fn ps_inv(a: &[Rational], n: usize) -> Vec<Rational> {
    let a0_inv = a[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(a0_inv.clone());
            continue;
        }
        let mut acc = Rational::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc += &a[i] * &out[k - i];
            }
        }
        out.push(-(acc * &a0_inv));
    }
    out
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(&-Rational::one())
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(rhs.order);
        let lead = self.lead.min(rhs.lead);
        if lead >= order {
            return LaurentSeries::zero(order);
        }
        let mut coeffs = vec![Rational::zero(); (order - lead) as usize];
        for s in [self, rhs] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.lead + i as i64;
                if e >= order {
                    break;
                }
                coeffs[(e - lead) as usize] += c;
            }
        }
        LaurentSeries::normalized(lead, coeffs, order)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        // Unknown tails start at order_a + lead_b and order_b + lead_a.
        // A zero series has lead == order, which makes the rule uniform.
        let order = self
            .order
            .saturating_add(rhs.lead)
            .min(rhs.order.saturating_add(self.lead));
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(order);
        }
        let lead = self.lead + rhs.lead;
        let n = (order - lead) as usize;
        LaurentSeries::normalized(lead, ps_mul(&self.coeffs, &rhs.coeffs, n), order)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

/// Checked series arithmetic. `b` is ignored for `Inv`.
pub fn series_arith(
    op: SeriesOp,
    a: &LaurentSeries,
    b: Option<&LaurentSeries>,
) -> Result<LaurentSeries> {
    fn binary<'b>(a: &LaurentSeries, b: Option<&'b LaurentSeries>) -> Result<&'b LaurentSeries> {
        let b =
            b.ok_or_else(|| Error::Parse("binary series operation needs two operands".into()))?;
        if a.known_range_disjoint(b) {
            return Err(Error::PrecisionUnderflow(format!(
                "known ranges [{}, {}) and [{}, {}) do not overlap",
                a.lead, a.order, b.lead, b.order
            )));
        }
        Ok(b)
    }
    match op {
        SeriesOp::Add => Ok(a + binary(a, b)?),
        SeriesOp::Mul => Ok(a * binary(a, b)?),
        SeriesOp::Inv => a.inv(),
    }
}

/// Expansion of `f` at the infinite place, known through exponent `order − 1`.
pub fn expand_ratfunc(f: &RatFunc, order: i64) -> LaurentSeries {
    let (Some(dn), Some(dd)) = (f.num().degree(), f.den().degree()) else {
        return LaurentSeries::zero(order);
    };
    let lead = dd as i64 - dn as i64;
    if lead >= order {
        return LaurentSeries::zero(order);
    }
    let rel = (order - lead) as usize;
    // f = λ^(dn−dd) · N(1/λ) / D(1/λ) with N, D the reversed coefficient lists.
    let num_rev: Vec<Rational> = f.num().coeffs().iter().rev().cloned().collect();
    let den_rev: Vec<Rational> = f.den().coeffs().iter().rev().cloned().collect();
    let coeffs = ps_mul(&num_rev, &ps_inv(&den_rev, rel), rel);
    LaurentSeries::normalized(lead, coeffs, order)
}

/// Coefficients of `λ^D·f(X)` as power series in `t = 1/λ`, indexed by the
/// power of X.
fn reduced_equation(modulus: &Modulus) -> Vec<Vec<Rational>> {
    let d = modulus.lambda_degree();
    (0..=4)
        .map(|k| {
            let c = modulus.coeff(k);
            (0..=d).map(|j| c.coeff(d - j)).collect()
        })
        .collect()
}

fn eval_at_zero(g: &[Vec<Rational>], x: &Rational) -> Rational {
    g.iter()
        .rev()
        .fold(Rational::zero(), |acc, gk| acc * x + &gk[0])
}

/// Evaluates `Σ gₖ(t)·X^k` modulo `t^n`, by Horner.
fn eval_bivariate(g: &[Vec<Rational>], x: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); n];
    for gk in g.iter().rev() {
        acc = ps_mul(&acc, x, n);
        for (a, c) in acc.iter_mut().zip(gk) {
            *a += c;
        }
    }
    acc
}

fn derivative_in_x(g: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(k, gk)| gk.iter().map(|c| c * int(k as i64)).collect())
        .collect()
}

/// Unique power-series root `X(1/λ)` of `f_λ` with `X(0) = seed`.
pub fn hensel_lift(seed: &Rational, order: i64) -> Result<LaurentSeries> {
    hensel_lift_with(&Modulus::simplest_quartic(), seed, order)
}

/// Newton iteration with precision doubling on `λ^(−D)·f(X)`, where `D` is
/// the largest λ-degree among the coefficients of `f`.
pub fn hensel_lift_with(modulus: &Modulus, seed: &Rational, order: i64) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(Error::InvalidOrder(order));
    }
    let g = reduced_equation(modulus);
    let dg = derivative_in_x(&g);
    if !eval_at_zero(&g, seed).is_zero() || eval_at_zero(&dg, seed).is_zero() {
        return Err(Error::NotASimpleRoot(seed.to_string()));
    }
    let target = order as usize;
    let mut x = vec![seed.clone()];
    let mut prec = 1usize;
    while prec < target {
        prec = (2 * prec).min(target);
        x.resize(prec, Rational::zero());
        let value = eval_bivariate(&g, &x, prec);
        let slope = eval_bivariate(&dg, &x, prec);
        let step = ps_mul(&value, &ps_inv(&slope, prec), prec);
        for (xi, s) in x.iter_mut().zip(step) {
            *xi -= s;
        }
    }
    Ok(LaurentSeries::new(0, x, order))
}

/// `λ^(−D)·f(X)` for a series `X`, with `D` as in [`hensel_lift_with`].
pub fn residual(modulus: &Modulus, x: &LaurentSeries) -> LaurentSeries {
    let exact = x.order() + 8 + 4 * x.lead().unsigned_abs() as i64;
    let mut acc = LaurentSeries::constant(Rational::one(), exact);
    for k in (0..4).rev() {
        acc = &(&acc * x) + &LaurentSeries::from_poly(&modulus.coeff(k), exact);
    }
    acc.shift(modulus.lambda_degree() as i64)
}

/// The four roots `(α₁, α₂, α₃, α₄)` of `f_λ` in `Q((1/λ))`.
pub fn quartic_roots(order: i64) -> Result<[LaurentSeries; 4]> {
    quartic_roots_with(&Modulus::simplest_quartic(), order)
}

/// Roots lifted from the seeds `1, 0, −1`, with the pole root `α₄ = −1/α₂`
/// obtained through the Möbius relation `φ²(z) = −1/z`.
///
/// Every root is known through exponent `order − 1`; `α₂` is additionally
/// kept far enough to expose its leading term.
pub fn quartic_roots_with(modulus: &Modulus, order: i64) -> Result<[LaurentSeries; 4]> {
    if order < 1 {
        return Err(Error::InvalidOrder(order));
    }
    let a1 = hensel_lift_with(modulus, &int(1), order)?;
    let a3 = hensel_lift_with(modulus, &int(-1), order)?;
    let mut extra = 2;
    let a2 = loop {
        let a2 = hensel_lift_with(modulus, &int(0), order + extra)?;
        let v = a2.valuation().ok_or(Error::ZeroDivisor)?;
        if 2 * v <= extra {
            break a2;
        }
        extra = 2 * v;
    };
    let a4 = -a2.inv()?.truncate(order);
    let keep = order.max(a2.lead() + 1);
    Ok([a1, a2.truncate(keep), a3, a4])
}

fn write_coeff_term(f: &mut fmt::Formatter<'_>, mag: &Rational, exponent: i64) -> fmt::Result {
    let unit = is_unit_magnitude(mag);
    match exponent {
        0 => write!(f, "{mag}"),
        e if e > 0 => {
            let power = if e == 1 {
                "λ".to_string()
            } else {
                format!("λ^{e}")
            };
            if mag.is_integer() {
                write!(f, "{}/{power}", mag.numer())
            } else {
                write!(f, "{}/({}{power})", mag.numer(), mag.denom())
            }
        }
        e => {
            let power = if e == -1 {
                "λ".to_string()
            } else {
                format!("λ^{}", -e)
            };
            if unit {
                write!(f, "{power}")
            } else if mag.is_integer() {
                write!(f, "{mag}{power}")
            } else {
                write!(f, "({mag}){power}")
            }
        }
    }
}

impl fmt::Display for LaurentSeries {
    /// e.g. `1 - 2/λ + 2/λ^2 + 8/λ^3 + O(1/λ^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            write_coeff_term(f, &c.abs(), self.lead + i as i64)?;
        }
        if !first {
            write!(f, " + ")?;
        }
        match self.order {
            0 => write!(f, "O(1)"),
            1 => write!(f, "O(1/λ)"),
            o if o > 0 => write!(f, "O(1/λ^{o})"),
            -1 => write!(f, "O(λ)"),
            o => write!(f, "O(λ^{})", -o),
        }
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        let mut st = serializer.serialize_struct("LaurentSeries", 3)?;
        st.serialize_field("lead", &self.lead)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}
