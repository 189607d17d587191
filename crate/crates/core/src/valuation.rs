//! Valuations at the four infinite places and infinite heights.
//!
//! The place `wᵢ` is realized by the embedding `α ↦ αᵢ` into `Q((1/λ))`,
//! so `wᵢ(z)` is the leading exponent of the series obtained by substituting
//! the i-th root into `z`. Every value is reported in units of `𝔞 = deg λ`.

use std::collections::HashMap;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::laurent::{expand_ratfunc, quartic_roots_with, LaurentSeries, Precision};
use crate::ring::{QuarticRing, RingElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ValuationVector(pub [i64; 4]);

impl ValuationVector {
    pub fn w(&self) -> [i64; 4] {
        self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `−Σ min(0, wᵢ)`.
    pub fn height(&self) -> i64 {
        -self.0.iter().map(|&w| w.min(0)).sum::<i64>()
    }

    pub fn scale(&self, k: i64) -> Self {
        ValuationVector(self.0.map(|w| k * w))
    }

    /// Entries in ascending order.
    pub fn sorted(&self) -> [i64; 4] {
        let mut w = self.0;
        w.sort_unstable();
        w
    }
}

impl Add for ValuationVector {
    type Output = ValuationVector;
    fn add(self, rhs: Self) -> Self {
        ValuationVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for ValuationVector {
    type Output = ValuationVector;
    fn sub(self, rhs: Self) -> Self {
        ValuationVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for ValuationVector {
    type Output = ValuationVector;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Serialize for ValuationVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ValuationVector", 2)?;
        st.serialize_field("w", &self.0)?;
        st.serialize_field("unit", "a")?;
        st.end()
    }
}

/// `(α−1)_∞`, `(α)_∞`, `(α+1)_∞`.
pub const FUNDAMENTAL_VALUATIONS: [ValuationVector; 3] = [
    ValuationVector([1, 0, 0, -1]),
    ValuationVector([0, 1, 0, -1]),
    ValuationVector([0, 0, 1, -1]),
];

/// Valuation vector of `(α−1)^r α^s (α+1)^t` by linearity.
pub fn unit_valuation_identity(r: i64, s: i64, t: i64) -> ValuationVector {
    let [u, v, w] = FUNDAMENTAL_VALUATIONS;
    u.scale(r) + v.scale(s) + w.scale(t)
}

/// Powers `αᵢ^k`, `k = 0..4`, of the four roots at one truncation order.
struct RootTable {
    powers: [[LaurentSeries; 4]; 4],
}

/// Computes valuations for elements of one [`QuarticRing`], caching root
/// expansions per truncation order.
pub struct Valuator<'r> {
    ring: &'r QuarticRing,
    precision: Precision,
    tables: RwLock<HashMap<i64, Arc<RootTable>>>,
}

impl<'r> Valuator<'r> {
    pub fn new(ring: &'r QuarticRing) -> Self {
        Valuator::with_precision(ring, Precision::default())
    }

    pub fn with_precision(ring: &'r QuarticRing, precision: Precision) -> Self {
        Valuator {
            ring,
            precision,
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &'r QuarticRing {
        self.ring
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    fn table(&self, order: i64) -> Result<Arc<RootTable>> {
        if let Some(t) = self.tables.read().expect("table lock").get(&order) {
            return Ok(Arc::clone(t));
        }
        let roots = quartic_roots_with(self.ring.modulus(), order)?;
        let powers = roots.map(|root| {
            let mut acc = LaurentSeries::constant(Rational::from_integer(1.into()), order);
            std::array::from_fn(|k| {
                if k > 0 {
                    acc = &acc * &root;
                }
                acc.clone()
            })
        });
        let table = Arc::new(RootTable { powers });
        self.tables
            .write()
            .expect("table lock")
            .insert(order, Arc::clone(&table));
        Ok(table)
    }

    /// `ιᵢ(a)` with roots and coefficients expanded to `order`.
    pub fn embed(&self, a: &RingElem, i: usize, order: i64) -> Result<LaurentSeries> {
        assert!((1..=4).contains(&i), "embedding index {i} out of range");
        let table = self.table(order)?;
        let powers = &table.powers[i - 1];
        let mut acc: Option<LaurentSeries> = None;
        for (c, pw) in a.coefficients().iter().zip(powers) {
            if c.is_zero() {
                continue;
            }
            let term = &expand_ratfunc(c, order) * pw;
            acc = Some(match acc {
                None => term,
                Some(s) => &s + &term,
            });
        }
        Ok(acc.unwrap_or_else(|| LaurentSeries::zero(order)))
    }

    /// Smallest scheduled order at which `ιᵢ(a)` has a known leading term.
    pub fn resolved_embedding(&self, a: &RingElem, i: usize) -> Result<LaurentSeries> {
        self.resolved_embedding_from(a, i, self.precision.start)
    }

    fn resolved_embedding_from(&self, a: &RingElem, i: usize, start: i64) -> Result<LaurentSeries> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let schedule = Precision {
            start,
            cap: self.precision.cap,
        };
        for order in schedule.schedule() {
            let s = self.embed(a, i, order)?;
            if !s.is_zero() {
                return Ok(s);
            }
        }
        Err(Error::PrecisionUnderflow(format!(
            "leading term at embedding {i} unresolved at order {}",
            self.precision.cap
        )))
    }

    pub fn valuation_vector(&self, a: &RingElem) -> Result<ValuationVector> {
        self.valuation_vector_from(a, self.precision.start)
    }

    /// Valuation vector starting at `order` and doubling as needed.
    pub fn valuation_vector_from(&self, a: &RingElem, order: i64) -> Result<ValuationVector> {
        let mut w = [0i64; 4];
        for (i, wi) in w.iter_mut().enumerate() {
            let s = self.resolved_embedding_from(a, i + 1, order)?;
            *wi = s.lead();
        }
        Ok(ValuationVector(w))
    }

    /// `H_∞(a) = −Σ min(0, wᵢ(a))`.
    pub fn height_infinity(&self, a: &RingElem) -> Result<i64> {
        Ok(self.valuation_vector(a)?.height())
    }

    /// Valuation vector of `a/b` as `w(a) − w(b)`.
    pub fn ratio_valuation(&self, a: &RingElem, b: &RingElem) -> Result<ValuationVector> {
        Ok(self.valuation_vector(a)? - self.valuation_vector(b)?)
    }

    pub fn height_of_ratio(&self, a: &RingElem, b: &RingElem) -> Result<i64> {
        Ok(self.ratio_valuation(a, b)?.height())
    }
}

/// `valuation_vector` in the standard ring with default precision.
pub fn valuation_vector(a: &RingElem, order: i64) -> Result<ValuationVector> {
    Valuator::new(QuarticRing::standard()).valuation_vector_from(a, order)
}

pub fn height_infinity(a: &RingElem) -> Result<i64> {
    Valuator::new(QuarticRing::standard()).height_infinity(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VandermondeValuation {
    pub vector: ValuationVector,
    /// Leading coefficient of `det A` at each embedding.
    pub leading: Vec<String>,
    #[serde(skip)]
    pub leading_exact: [Rational; 4],
}

/// Valuation of `det A = Π_{i<j}(αⱼ − αᵢ)` at each embedding, computed
/// directly on the root series. Under `ιₖ`, `αᵢ` maps to the root with
/// index `i + k − 1 (mod 4)`.
pub fn vandermonde_valuation(order: i64) -> Result<VandermondeValuation> {
    vandermonde_valuation_with(
        QuarticRing::standard(),
        Precision {
            start: order,
            ..Precision::default()
        },
    )
}

pub fn vandermonde_valuation_with(
    ring: &QuarticRing,
    precision: Precision,
) -> Result<VandermondeValuation> {
    let mut w = [0i64; 4];
    let mut leading: [Rational; 4] = std::array::from_fn(|_| Rational::from_integer(0.into()));
    for k in 0..4 {
        let mut resolved = None;
        for order in precision.schedule() {
            let roots = quartic_roots_with(ring.modulus(), order)?;
            let image = |i: usize| &roots[(i + k) % 4];
            let mut det = LaurentSeries::constant(Rational::from_integer(1.into()), order);
            for i in 0..4 {
                for j in i + 1..4 {
                    det = &det * &(image(j) - image(i));
                }
            }
            if !det.is_zero() {
                resolved = Some(det);
                break;
            }
        }
        let det = resolved.ok_or_else(|| {
            Error::PrecisionUnderflow("Vandermonde determinant unresolved".into())
        })?;
        w[k] = det.lead();
        leading[k] = det.leading_coeff().expect("non-zero series").clone();
    }
    Ok(VandermondeValuation {
        vector: ValuationVector(w),
        leading: leading.iter().map(ToString::to_string).collect(),
        leading_exact: leading,
    })
}

/// `det A = Π_{i<j}(σⱼ(α) − σᵢ(α))` as a ring element.
pub fn vandermonde_element(ring: &QuarticRing) -> RingElem {
    let mut det = RingElem::one();
    for i in 1..=4 {
        for j in i + 1..=4 {
            let diff = ring.conjugate_of_alpha(j).sub(ring.conjugate_of_alpha(i));
            det = ring.mul(&det, &diff);
        }
    }
    det
}
