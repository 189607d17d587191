//! Discriminant, genus and height bounds, as closed forms in `𝔞 = deg λ`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::linalg;
use crate::arith::{int, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::family::Modulus;
use crate::laurent::{expand_ratfunc, quartic_roots_with, LaurentSeries};

/// Discriminant of a monic polynomial over Q(λ), coefficients ascending in X.
///
/// Computed as `(−1)^(n(n−1)/2)·Res(f, f′)` with the resultant taken as the
/// Sylvester determinant.
pub fn discriminant(f: &[RatFunc]) -> Result<RatFunc> {
    let Some(lc) = f.last() else {
        return Err(Error::NotMonic);
    };
    if !lc.is_one() {
        return Err(Error::NotMonic);
    }
    let n = f.len() - 1;
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let df: Vec<RatFunc> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&int(k as i64)))
        .collect();
    let res = resultant(f, &df);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(res.scale(&int(sign)))
}

/// Sylvester resultant of `f` and `g` (ascending coefficients, non-zero
/// leading terms).
fn resultant(f: &[RatFunc], g: &[RatFunc]) -> RatFunc {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let mut rows: linalg::Matrix = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![RatFunc::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![RatFunc::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    linalg::determinant(rows)
}

pub fn modulus_discriminant(modulus: &Modulus) -> Result<RatFunc> {
    discriminant(&modulus.ratfunc_coeffs())
}

/// `Π_{i<j}(αᵢ − αⱼ)²` at the first embedding.
pub fn root_difference_square(modulus: &Modulus, order: i64) -> Result<LaurentSeries> {
    let roots = quartic_roots_with(modulus, order)?;
    let mut acc = LaurentSeries::constant(Rational::one(), order);
    for i in 0..4 {
        for j in i + 1..4 {
            let d = &roots[i] - &roots[j];
            acc = &acc * &(&d * &d);
        }
    }
    Ok(acc)
}

/// Difference between the expanded discriminant and the root-difference
/// square; zero to its order when both routes agree.
pub fn discriminant_cross_check(modulus: &Modulus, order: i64) -> Result<LaurentSeries> {
    let prod = root_difference_square(modulus, order)?;
    let disc = expand_ratfunc(&modulus_discriminant(modulus)?, prod.order());
    Ok(&disc - &prod)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub a: i64,
    #[serde(rename = "rK_bound")]
    pub rk_bound: i64,
    pub genus_bound: i64,
    /// `4 + 8𝔞 − 2·r_K` at `r_K = 2𝔞`.
    #[serde(rename = "W_bound")]
    pub w_bound: i64,
    /// `4 + 8𝔞`, the same count when nothing ramifies.
    #[serde(rename = "W_bound_unramified")]
    pub w_bound_unramified: i64,
    pub siegel_height_bound: i64,
    pub beta_ratio_bound: i64,
    /// Uniform bound on `max(0,−r)+max(0,−s)+max(0,−t)+max(0,r+s+t)`.
    pub exponent_budget: i64,
    /// `⌊11 − 4/𝔞⌋`, the budget for this particular `𝔞`.
    pub exponent_budget_at_a: i64,
}

/// Upper bound `11` (exclusive) on the exponent budget, over all `𝔞 ≥ 1`.
pub const EXPONENT_BUDGET: i64 = 10;

impl BoundReport {
    /// `|W| ≤ 4 + 8𝔞 − 2·r_K`.
    pub fn w_bound_at(&self, r_k: i64) -> i64 {
        4 + 8 * self.a - 2 * r_k
    }

    /// `g_K ≤ 3r_K/2 − 3`.
    pub fn genus_bound_at(&self, r_k: i64) -> Rational {
        Rational::new((3 * r_k).into(), 2.into()) - int(3)
    }

    /// `2(3r_K/2 − 3) − 2 + 4 + 8𝔞 − 2r_K = −4 + 8𝔞 + r_K`.
    pub fn height_chain_at(&self, r_k: i64) -> i64 {
        -4 + 8 * self.a + r_k
    }
}

pub fn bound_report(a: i64) -> Result<BoundReport> {
    if a < 1 {
        return Err(Error::InvalidDegree(a));
    }
    let rk_bound = 2 * a;
    Ok(BoundReport {
        a,
        rk_bound,
        genus_bound: 3 * a - 3,
        w_bound: 4 + 8 * a - 2 * rk_bound,
        w_bound_unramified: 4 + 8 * a,
        siegel_height_bound: 10 * a - 4,
        beta_ratio_bound: 11 * a - 4,
        exponent_budget: EXPONENT_BUDGET,
        exponent_budget_at_a: (11 * a - 4).div_euclid(a),
    })
}

/// `max(0, 2g − 2 + |W|)`.
pub fn mason_abc_bound(genus: i64, w_size: i64) -> i64 {
    (2 * genus - 2 + w_size).max(0)
}

/// Genus from `2g − 2 = n·(−2) + Σ(e − 1)`.
pub fn riemann_hurwitz_genus(degree: i64, ramification_indices: &[i64]) -> Result<Rational> {
    if degree < 1 {
        return Err(Error::InvalidDegree(degree));
    }
    if let Some(&e) = ramification_indices.iter().find(|&&e| e < 1) {
        return Err(Error::InconsistentRamification(format!(
            "ramification index {e}"
        )));
    }
    let excess: i64 = ramification_indices.iter().map(|e| e - 1).sum();
    let g = Rational::new((-2 * degree + excess + 2).into(), 2.into());
    if g < Rational::zero() || !g.is_integer() {
        return Err(Error::InconsistentRamification(g.to_string()));
    }
    Ok(g)
}
