//! Search over units `(α−1)^r α^s (α+1)^t` for those of the shape `x − αy`.
//!
//! A unit `η·(α−1)^r α^s (α+1)^t` has the required shape iff the unit with
//! `η = 1` does, since the scalar acts diagonally on coordinates. The search
//! therefore runs with `η = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{Poly, RatFunc, Rational};
use crate::bounds::EXPONENT_BUDGET;
use crate::error::Result;
use crate::family::Modulus;
use crate::ring::{QuarticRing, RingElem};
use crate::valuation::{unit_valuation_identity, ValuationVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentTriple {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

impl ExponentTriple {
    pub const fn new(r: i64, s: i64, t: i64) -> Self {
        ExponentTriple { r, s, t }
    }

    /// `max(0,−r) + max(0,−s) + max(0,−t) + max(0,r+s+t)`, which equals
    /// `H_∞` of the unit in units of `𝔞`.
    pub fn budget_value(&self) -> i64 {
        (-self.r).max(0) + (-self.s).max(0) + (-self.t).max(0) + (self.r + self.s + self.t).max(0)
    }

    pub fn is_admissible(&self, budget: i64) -> bool {
        self.budget_value() <= budget
    }

    pub fn valuation(&self) -> ValuationVector {
        unit_valuation_identity(self.r, self.s, self.t)
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.r, self.s, self.t)
    }
}

/// The four exponents whose units have the shape `x − αy`, in
/// lexicographic order.
pub const TRIVIAL_TRIPLES: [ExponentTriple; 4] = [
    ExponentTriple::new(0, 0, 0),
    ExponentTriple::new(0, 0, 1),
    ExponentTriple::new(0, 1, 0),
    ExponentTriple::new(1, 0, 0),
];

/// All triples with budget value `≤ budget`, in lexicographic order.
///
/// Each of `|r|, |s|, |t|` is bounded by the budget value, so the box
/// `[−budget, budget]³` is exhaustive.
pub fn admissible_exponents(budget: i64) -> Vec<ExponentTriple> {
    let b = budget.max(0);
    let mut out = Vec::new();
    for r in -b..=b {
        for s in -b..=b {
            for t in -b..=b {
                let e = ExponentTriple::new(r, s, t);
                if e.is_admissible(budget) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// `(α−1)^r α^s (α+1)^t` by binary exponentiation.
pub fn fundamental_unit(ring: &QuarticRing, e: ExponentTriple) -> Result<RingElem> {
    let [m, a, p] = fundamental_units();
    let x = ring.pow(&m, e.r)?;
    let y = ring.pow(&a, e.s)?;
    let z = ring.pow(&p, e.t)?;
    Ok(ring.mul(&ring.mul(&x, &y), &z))
}

/// `α − 1`, `α`, `α + 1`.
pub fn fundamental_units() -> [RingElem; 3] {
    [
        RingElem::from_ints([-1, 1, 0, 0]),
        RingElem::alpha(),
        RingElem::from_ints([1, 1, 0, 0]),
    ]
}

/// Powers `u^k` for `k ∈ [−bound, bound]` of each fundamental unit.
pub struct PowerTables {
    bound: i64,
    tables: [Vec<RingElem>; 3],
}

impl PowerTables {
    pub fn new(ring: &QuarticRing, bound: i64) -> Result<Self> {
        let bound = bound.max(0);
        let units = fundamental_units();
        let mut tables: [Vec<RingElem>; 3] = Default::default();
        for (table, u) in tables.iter_mut().zip(&units) {
            let inv = ring.inv(u)?;
            let mut neg = vec![RingElem::one()];
            let mut pos = vec![RingElem::one()];
            for k in 1..=bound as usize {
                neg.push(ring.mul(&neg[k - 1], &inv));
                pos.push(ring.mul(&pos[k - 1], u));
            }
            table.extend(neg.into_iter().skip(1).rev());
            table.extend(pos);
        }
        Ok(PowerTables { bound, tables })
    }

    pub fn power(&self, unit: usize, k: i64) -> &RingElem {
        assert!(k.abs() <= self.bound, "exponent {k} outside table");
        &self.tables[unit][(k + self.bound) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundUnit {
    pub triple: ExponentTriple,
    pub beta: RingElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub budget: i64,
    pub triples_searched: usize,
    pub found: Vec<FoundUnit>,
}

impl SearchOutcome {
    pub fn triples(&self) -> Vec<ExponentTriple> {
        self.found.iter().map(|f| f.triple).collect()
    }
}

/// Tests every triple in `space` and returns the ones whose unit has
/// `c2 = c3 = 0`, sorted lexicographically.
///
/// Triples are grouped by `(r, s)` so each group shares one product; groups
/// run on a pool of `jobs` threads (`0` lets rayon choose).
pub fn search_space(
    ring: &QuarticRing,
    space: &[ExponentTriple],
    jobs: usize,
) -> Result<Vec<FoundUnit>> {
    let bound = space
        .iter()
        .map(|e| e.r.abs().max(e.s.abs()).max(e.t.abs()))
        .max()
        .unwrap_or(0);
    let tables = PowerTables::new(ring, bound)?;
    let mut groups: BTreeMap<(i64, i64), Vec<i64>> = BTreeMap::new();
    for e in space {
        groups.entry((e.r, e.s)).or_default().push(e.t);
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let run = || -> Vec<FoundUnit> {
        groups
            .par_iter()
            .flat_map_iter(|((r, s), ts)| {
                let rs = ring.mul(tables.power(0, *r), tables.power(1, *s));
                ts.iter()
                    .filter_map(|&t| {
                        let beta = ring.mul(&rs, tables.power(2, t));
                        beta.is_linear().then(|| FoundUnit {
                            triple: ExponentTriple::new(*r, *s, t),
                            beta,
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let mut found = if jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(run)
    };
    found.sort_by_key(|f| f.triple);
    found.dedup_by_key(|f| f.triple);
    Ok(found)
}

pub fn search_units(ring: &QuarticRing, budget: i64, jobs: usize) -> Result<SearchOutcome> {
    let space = admissible_exponents(budget);
    let found = search_space(ring, &space, jobs)?;
    Ok(SearchOutcome {
        budget,
        triples_searched: space.len(),
        found,
    })
}

/// Admissible triples whose unit has the shape `x − αy`, for the simplest
/// quartic at the full budget.
pub fn search_trivial_units() -> Result<Vec<ExponentTriple>> {
    Ok(search_units(QuarticRing::standard(), EXPONENT_BUDGET, 0)?.triples())
}

/// Whether the single unit of `e` has the shape `x − αy`.
pub fn yields_linear_unit(ring: &QuarticRing, e: ExponentTriple) -> Result<bool> {
    Ok(fundamental_unit(ring, e)?.is_linear())
}

/// A parametric solution family `(x·η, y·η)` together with the constraint
/// `k·η⁴ = ξ` it imposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionClass {
    pub source: ExponentTriple,
    pub x: Poly,
    pub y: Poly,
    pub xi_coefficient: RatFunc,
}

fn eta_form(c: &Poly) -> String {
    if c.is_zero() {
        "0".into()
    } else if c.is_one() {
        "η".into()
    } else if (-c).is_one() {
        "-η".into()
    } else {
        format!("({c})·η")
    }
}

impl SolutionClass {
    pub fn x_form(&self) -> String {
        eta_form(&self.x)
    }

    pub fn y_form(&self) -> String {
        eta_form(&self.y)
    }

    pub fn constraint(&self) -> String {
        if self.xi_coefficient.is_one() {
            "η^4 = ξ".into()
        } else if self.xi_coefficient.is_poly() && self.xi_coefficient.num().is_constant() {
            format!("{}η^4 = ξ", self.xi_coefficient)
        } else {
            format!("({})η^4 = ξ", self.xi_coefficient)
        }
    }

    /// Expands the binary form at `(x·η, y·η)` as a polynomial in `η` and
    /// compares it with `k·η⁴`.
    pub fn verify(&self, modulus: &Modulus) -> bool {
        let expanded = eta_form_eval(modulus, &self.x, &self.y);
        expanded.len() == 5
            && expanded[..4].iter().all(RatFunc::is_zero)
            && expanded[4] == self.xi_coefficient
    }
}

impl Serialize for SolutionClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SolutionClass", 5)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("x_form", &self.x_form())?;
        st.serialize_field("y_form", &self.y_form())?;
        st.serialize_field("xi_constraint", &self.constraint())?;
        st.serialize_field("xi_coefficient", &self.xi_coefficient)?;
        st.end()
    }
}

impl fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) with {}",
            self.x_form(),
            self.y_form(),
            self.constraint()
        )
    }
}

type EtaPoly = Vec<RatFunc>;

fn eta_mul(a: &EtaPoly, b: &EtaPoly) -> EtaPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn eta_pow(a: &EtaPoly, e: usize) -> EtaPoly {
    (0..e).fold(vec![RatFunc::one()], |acc, _| eta_mul(&acc, a))
}

/// `Σ c_k (xη)^k (yη)^(4−k)` as coefficients in η.
pub fn eta_form_eval(modulus: &Modulus, x: &Poly, y: &Poly) -> Vec<RatFunc> {
    let xe = vec![RatFunc::zero(), RatFunc::from(x.clone())];
    let ye = vec![RatFunc::zero(), RatFunc::from(y.clone())];
    let mut total = vec![RatFunc::zero(); 5];
    for k in 0..=4 {
        let term = eta_mul(&eta_pow(&xe, k), &eta_pow(&ye, 4 - k));
        let c = RatFunc::from(modulus.coeff(k));
        for (i, v) in term.iter().enumerate() {
            total[i] = &total[i] + &(v * &c);
        }
    }
    total
}

/// Reads `β = x − αy` off each unit and normalizes the pair so its first
/// non-zero entry has leading coefficient one (absorbed into `η`).
pub fn solution_classes(modulus: &Modulus, found: &[FoundUnit]) -> Vec<SolutionClass> {
    found
        .iter()
        .filter(|f| f.beta.is_linear() && f.beta.is_integral_coords())
        .map(|f| {
            let c = f.beta.coefficients();
            let x = c[0].num().clone();
            let y = -c[1].num();
            let pivot = if x.is_zero() { &y } else { &x };
            let scale: Rational = pivot
                .leading()
                .cloned()
                .unwrap_or_else(Rational::one)
                .recip();
            let (x, y) = (x.scale(&scale), y.scale(&scale));
            let xi_coefficient = eta_form_eval(modulus, &x, &y).swap_remove(4);
            SolutionClass {
                source: f.triple,
                x,
                y,
                xi_coefficient,
            }
        })
        .collect()
}
