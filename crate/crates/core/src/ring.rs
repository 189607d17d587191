//! Arithmetic in `K = Q(λ)[α]/(f)` for a monic quartic `f`.
//!
//! Elements are coordinate vectors in the basis `1, α, α², α³`. A
//! [`QuarticRing`] carries the modulus together with the table of
//! conjugates `αᵢ = φ^(i−1)(α)` for the Möbius map `φ(z) = (z − 1)/(z + 1)`.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::linalg;
use crate::arith::{Poly, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::family::Modulus;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    c: [RatFunc; 4],
}

impl RingElem {
    pub fn new(c: [RatFunc; 4]) -> Self {
        RingElem { c }
    }

    pub fn from_polys(c: [Poly; 4]) -> Self {
        RingElem::new(c.map(RatFunc::from))
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        RingElem::new(c.map(RatFunc::from_int))
    }

    pub fn zero() -> Self {
        RingElem::new(std::array::from_fn(|_| RatFunc::zero()))
    }

    pub fn one() -> Self {
        RingElem::scalar(RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        let mut e = RingElem::zero();
        e.c[0] = c;
        e
    }

    /// The generator α.
    pub fn alpha() -> Self {
        RingElem::from_ints([0, 1, 0, 0])
    }

    /// `x − α·y`.
    pub fn from_xy(x: &Poly, y: &Poly) -> Self {
        RingElem::new([
            RatFunc::from(x.clone()),
            RatFunc::from(-y),
            RatFunc::zero(),
            RatFunc::zero(),
        ])
    }

    /// `(c0, c1, c2, c3)` for `c0 + c1·α + c2·α² + c3·α³`.
    pub fn coefficients(&self) -> &[RatFunc; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(RatFunc::is_zero)
    }

    /// Lies in the base field Q(λ).
    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(RatFunc::is_zero)
    }

    /// Of the shape `x − α·y` (no α², α³ terms).
    pub fn is_linear(&self) -> bool {
        self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn add(&self, rhs: &RingElem) -> RingElem {
        RingElem::new(std::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }

    pub fn sub(&self, rhs: &RingElem) -> RingElem {
        RingElem::new(std::array::from_fn(|i| &self.c[i] - &rhs.c[i]))
    }

    pub fn neg(&self) -> RingElem {
        RingElem::new(std::array::from_fn(|i| -&self.c[i]))
    }

    pub fn scale(&self, s: &RatFunc) -> RingElem {
        RingElem::new(std::array::from_fn(|i| &self.c[i] * s))
    }

    pub fn scale_rational(&self, s: &Rational) -> RingElem {
        RingElem::new(std::array::from_fn(|i| self.c[i].scale(s)))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis = match k {
                0 => "",
                1 => "·α",
                2 => "·α^2",
                _ => "·α^3",
            };
            write!(f, "({c}){basis}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RingElem", 4)?;
        st.serialize_field("c0", &self.c[0])?;
        st.serialize_field("c1", &self.c[1])?;
        st.serialize_field("c2", &self.c[2])?;
        st.serialize_field("c3", &self.c[3])?;
        st.end()
    }
}

#[derive(Debug)]
pub struct QuarticRing {
    modulus: Modulus,
    /// `α⁴ = Σ rewrite[k]·α^k`.
    rewrite: [RatFunc; 4],
    conjugates: [RingElem; 4],
}

impl QuarticRing {
    /// Builds the ring and its conjugate table. Fails with `SingularSystem`
    /// when `α + 1` is not invertible modulo `f`.
    pub fn new(modulus: Modulus) -> Result<Self> {
        let rewrite = std::array::from_fn(|k| -RatFunc::from(modulus.coeff(k)));
        let mut ring = QuarticRing {
            modulus,
            rewrite,
            conjugates: std::array::from_fn(|_| RingElem::zero()),
        };
        let mut conj = RingElem::alpha();
        for i in 0..4 {
            ring.conjugates[i] = conj.clone();
            conj = ring.mobius(&conj)?;
        }
        Ok(ring)
    }

    /// The ring for the simplest quartic family, built once.
    pub fn standard() -> &'static QuarticRing {
        static RING: OnceLock<QuarticRing> = OnceLock::new();
        RING.get_or_init(|| {
            QuarticRing::new(Modulus::simplest_quartic()).expect("f_λ is irreducible")
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// `φ(z) = (z − 1)/(z + 1)`.
    pub fn mobius(&self, z: &RingElem) -> Result<RingElem> {
        let one = RingElem::one();
        Ok(self.mul(&z.sub(&one), &self.inv(&z.add(&one))?))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let mut prod: [RatFunc; 7] = std::array::from_fn(|_| RatFunc::zero());
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        for k in (4..7).rev() {
            let top = std::mem::replace(&mut prod[k], RatFunc::zero());
            if top.is_zero() {
                continue;
            }
            for (j, r) in self.rewrite.iter().enumerate() {
                if !r.is_zero() {
                    prod[k - 4 + j] = &prod[k - 4 + j] + &(&top * r);
                }
            }
        }
        let [c0, c1, c2, c3, ..] = prod;
        RingElem::new([c0, c1, c2, c3])
    }

    /// Matrix of multiplication by `a` in the basis `1, α, α², α³`.
    fn mul_matrix(&self, a: &RingElem) -> linalg::Matrix {
        let mut basis = RingElem::one();
        let alpha = RingElem::alpha();
        let mut cols = Vec::with_capacity(4);
        for _ in 0..4 {
            cols.push(self.mul(a, &basis));
            basis = self.mul(&basis, &alpha);
        }
        (0..4)
            .map(|row| (0..4).map(|col| cols[col].c[row].clone()).collect())
            .collect()
    }

    /// Inverse by solving `M_a·x = e₀` over Q(λ).
    pub fn inv(&self, a: &RingElem) -> Result<RingElem> {
        if a.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if a.is_scalar() {
            return Ok(RingElem::scalar(a.c[0].inv()?));
        }
        let mut rhs = vec![RatFunc::zero(); 4];
        rhs[0] = RatFunc::one();
        let x = linalg::solve(self.mul_matrix(a), rhs)?;
        let [c0, c1, c2, c3]: [RatFunc; 4] = x.try_into().expect("four coordinates");
        Ok(RingElem::new([c0, c1, c2, c3]))
    }

    /// Binary exponentiation; negative exponents invert once up front.
    pub fn pow(&self, a: &RingElem, e: i64) -> Result<RingElem> {
        let mut base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = RingElem::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(acc)
    }

    /// `αᵢ` as an element of the ring, `i ∈ 1..=4`.
    pub fn conjugate_of_alpha(&self, i: usize) -> &RingElem {
        assert!((1..=4).contains(&i), "conjugate index {i} out of range");
        &self.conjugates[i - 1]
    }

    /// Evaluates the coordinate polynomial of `a` at `z`.
    pub fn substitute(&self, a: &RingElem, z: &RingElem) -> RingElem {
        a.c.iter().rev().fold(RingElem::zero(), |acc, c| {
            self.mul(&acc, z).add(&RingElem::scalar(c.clone()))
        })
    }

    /// `σᵢ(a)`: substitutes `αᵢ` for α.
    pub fn galois(&self, a: &RingElem, i: usize) -> RingElem {
        if i == 1 {
            return a.clone();
        }
        self.substitute(a, self.conjugate_of_alpha(i))
    }

    /// Product of the four conjugates; must land in Q(λ).
    pub fn norm(&self, a: &RingElem) -> Result<RatFunc> {
        let n = (2..=4).fold(a.clone(), |acc, i| self.mul(&acc, &self.galois(a, i)));
        if !n.is_scalar() {
            return Err(Error::NormNotInBaseField);
        }
        Ok(n.c[0].clone())
    }

    /// `f(a)` evaluated in the ring.
    pub fn eval_modulus(&self, a: &RingElem) -> RingElem {
        (0..=4).rev().fold(RingElem::zero(), |acc, k| {
            self.mul(&acc, a)
                .add(&RingElem::scalar(RatFunc::from(self.modulus.coeff(k))))
        })
    }

    /// Binary form `Y⁴·f(X/Y)` at `(x, y)`.
    pub fn form_eval(&self, x: &Poly, y: &Poly) -> RatFunc {
        RatFunc::from(self.modulus.form_eval(x, y))
    }

    /// `β₁(α₂ − α₃) + β₂(α₃ − α₁) + β₃(α₁ − α₂)` with `βᵢ = σᵢ(x − αy)`.
    pub fn siegel_residual(&self, x: &Poly, y: &Poly) -> RingElem {
        let beta = RingElem::from_xy(x, y);
        let b: Vec<RingElem> = (1..=3).map(|i| self.galois(&beta, i)).collect();
        let a: Vec<&RingElem> = (1..=3).map(|i| self.conjugate_of_alpha(i)).collect();
        let t1 = self.mul(&b[0], &a[1].sub(a[2]));
        let t2 = self.mul(&b[1], &a[2].sub(a[0]));
        let t3 = self.mul(&b[2], &a[0].sub(a[1]));
        t1.add(&t2).add(&t3)
    }
}

/// Index of `σᵢ ∘ σⱼ`, i.e. `((i−1) + (j−1) mod 4) + 1`.
pub fn compose_index(i: usize, j: usize) -> usize {
    (i - 1 + j - 1) % 4 + 1
}

/// Constant norm test used for units of `Q[λ][α]`.
pub fn is_nonzero_constant(r: &RatFunc) -> bool {
    r.as_constant().is_some_and(|c| !c.is_zero())
}

/// The closed form `(α³ − (λ+1)α² + (λ−5)α + 5)/4` of `1/(α+1)`.
pub fn inverse_of_alpha_plus_one() -> RingElem {
    let quarter = crate::arith::rat(1, 4);
    RingElem::from_polys([
        Poly::from_ints(&[5]),
        Poly::from_ints(&[-5, 1]),
        Poly::from_ints(&[-1, -1]),
        Poly::from_ints(&[1]),
    ])
    .scale_rational(&quarter)
}

impl Default for RingElem {
    fn default() -> Self {
        RingElem::zero()
    }
}

impl RingElem {
    /// True for the multiplicative identity.
    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(RatFunc::is_zero)
    }

    /// Every coordinate a polynomial in λ.
    pub fn is_integral_coords(&self) -> bool {
        self.c.iter().all(RatFunc::is_poly)
    }

    pub fn coefficient_constant(&self, k: usize) -> Option<Rational> {
        self.c[k].as_constant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> &'static QuarticRing {
        QuarticRing::standard()
    }

    fn p(c: &[i64]) -> RatFunc {
        RatFunc::from(Poly::from_ints(c))
    }

    #[test]
    fn alpha_times_alpha_cubed_rewrites() {
        let a = RingElem::alpha();
        let a3 = RingElem::from_ints([0, 0, 0, 1]);
        let expect = RingElem::new([p(&[-1]), p(&[0, -1]), p(&[6]), p(&[0, 1])]);
        assert_eq!(ring().mul(&a, &a3), expect);
        let b = RingElem::new([p(&[1, 2]), p(&[3]), p(&[0, 0, 1]), p(&[-4])]);
        assert_eq!(ring().mul(&RingElem::one(), &b), b);
    }

    #[test]
    fn inverse_of_alpha_plus_one_matches_closed_form() {
        let ap1 = RingElem::from_ints([1, 1, 0, 0]);
        let inv = ring().inv(&ap1).unwrap();
        assert_eq!(inv, inverse_of_alpha_plus_one());
        assert!(ring().mul(&ap1, &inv).is_one());
        let c = inv.coefficients();
        assert_eq!(c[0], RatFunc::constant(crate::arith::rat(5, 4)));
        assert_eq!(c[1], p(&[-5, 1]).scale(&crate::arith::rat(1, 4)));
        assert_eq!(c[2], p(&[-1, -1]).scale(&crate::arith::rat(1, 4)));
        assert_eq!(c[3], RatFunc::constant(crate::arith::rat(1, 4)));
    }

    #[test]
    fn inverse_of_alpha() {
        // From f(α) = 0: α·(α³ − λα² − 6α + λ) = −1.
        let cubic = RingElem::new([p(&[0, 1]), p(&[-6]), p(&[0, -1]), p(&[1])]);
        assert_eq!(
            ring().mul(&RingElem::alpha(), &cubic),
            RingElem::from_ints([-1, 0, 0, 0])
        );
        assert_eq!(ring().inv(&RingElem::alpha()).unwrap(), cubic.neg());
        assert_eq!(ring().inv(&RingElem::one()).unwrap(), RingElem::one());
        assert_eq!(ring().inv(&RingElem::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn galois_images_of_alpha() {
        let r = ring();
        let a = RingElem::alpha();
        assert_eq!(r.galois(&a, 1), a);
        let expect2 = r.mul(
            &RingElem::from_ints([-1, 1, 0, 0]),
            &r.inv(&RingElem::from_ints([1, 1, 0, 0])).unwrap(),
        );
        assert_eq!(r.galois(&a, 2), expect2);
        assert!(r.eval_modulus(&expect2).is_zero());
        let expect3 = RingElem::new([p(&[0, 1]), p(&[-6]), p(&[0, -1]), p(&[1])]);
        assert_eq!(r.galois(&a, 3), expect3);
        for i in 1..=4 {
            assert!(r.eval_modulus(r.conjugate_of_alpha(i)).is_zero());
        }
    }

    #[test]
    fn xy_elements() {
        let one = Poly::one();
        let zero = Poly::zero();
        assert_eq!(RingElem::from_xy(&one, &zero), RingElem::one());
        assert_eq!(RingElem::from_xy(&zero, &-&one), RingElem::alpha());
        let e = RingElem::from_xy(&Poly::lambda(), &one);
        assert_eq!(e, RingElem::new([p(&[0, 1]), p(&[-1]), p(&[]), p(&[])]));
    }

    #[test]
    fn norms() {
        let r = ring();
        assert_eq!(r.norm(&RingElem::alpha()).unwrap(), RatFunc::one());
        let e = RingElem::from_xy(&Poly::one(), &Poly::one());
        assert_eq!(r.norm(&e).unwrap(), RatFunc::from_int(-4));
        assert_eq!(r.norm(&RingElem::one()).unwrap(), RatFunc::one());
    }

    #[test]
    fn coefficient_views() {
        let r = ring();
        let am1 = RingElem::from_ints([-1, 1, 0, 0]);
        assert_eq!(am1.coefficients(), &[p(&[-1]), p(&[1]), p(&[]), p(&[])]);
        let sq = r.mul(&am1, &am1);
        assert_eq!(sq, RingElem::from_ints([1, -2, 1, 0]));
    }

    #[test]
    fn pow_negative_matches_inverse() {
        let r = ring();
        let ap1 = RingElem::from_ints([1, 1, 0, 0]);
        let inv2 = r.pow(&ap1, -2).unwrap();
        assert!(r.mul(&inv2, &r.pow(&ap1, 2).unwrap()).is_one());
        assert!(r.pow(&ap1, 0).unwrap().is_one());
    }

    #[test]
    fn siegel_residual_vanishes() {
        let x = Poly::from_ints(&[1, 2, -1]);
        let y = Poly::from_ints(&[0, 3]);
        assert!(ring().siegel_residual(&x, &y).is_zero());
    }
}
