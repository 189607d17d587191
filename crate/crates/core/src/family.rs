//! The defining quartic and its binary form.

use serde::Serialize;

use crate::arith::{Poly, RatFunc};

/// Monic quartic `X^4 + c3·X^3 + c2·X^2 + c1·X + c0` with `cᵢ ∈ Q[λ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Modulus {
    coeffs: [Poly; 4],
}

impl Modulus {
    /// `c[k]` is the coefficient of `X^k`, `k < 4`.
    pub fn new(coeffs: [Poly; 4]) -> Self {
        Modulus { coeffs }
    }

    /// `f_λ(X) = X^4 − λX^3 − 6X^2 + λX + 1`.
    pub fn simplest_quartic() -> Self {
        Modulus::new([
            Poly::from_ints(&[1]),
            Poly::from_ints(&[0, 1]),
            Poly::from_ints(&[-6]),
            Poly::from_ints(&[0, -1]),
        ])
    }

    /// Coefficient of `X^k` for `k ≤ 4`.
    pub fn coeff(&self, k: usize) -> Poly {
        if k == 4 {
            Poly::one()
        } else {
            self.coeffs[k].clone()
        }
    }

    pub fn low_coeffs(&self) -> &[Poly; 4] {
        &self.coeffs
    }

    /// All five coefficients as elements of Q(λ), ascending in X.
    pub fn ratfunc_coeffs(&self) -> Vec<RatFunc> {
        (0..=4).map(|k| RatFunc::from(self.coeff(k))).collect()
    }

    /// Largest λ-degree among the coefficients.
    pub fn lambda_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Homogenized form `Y^4·f(X/Y) = Σ c_k x^k y^(4−k)`.
    pub fn form_eval(&self, x: &Poly, y: &Poly) -> Poly {
        let xp: Vec<Poly> = (0..=4).map(|k| x.pow(k)).collect();
        let yp: Vec<Poly> = (0..=4).map(|k| y.pow(k)).collect();
        (0..=4usize).fold(Poly::zero(), |acc, k| {
            acc + &self.coeff(k) * &(&xp[k] * &yp[4 - k])
        })
    }
}

/// `F_λ(x, y) = x^4 − λx^3y − 6x^2y^2 + λxy^3 + y^4`.
pub fn f_lambda_eval(x: &Poly, y: &Poly) -> RatFunc {
    let l = Poly::lambda();
    let x2 = x * x;
    let y2 = y * y;
    let terms = [
        &x2 * &x2,
        -(&l * &(&(&x2 * x) * y)),
        (&x2 * &y2).scale(&crate::arith::int(-6)),
        &l * &(x * &(&y2 * y)),
        &y2 * &y2,
    ];
    RatFunc::from(terms.iter().fold(Poly::zero(), |acc, t| acc + t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_lambda_examples() {
        let one = Poly::one();
        let zero = Poly::zero();
        assert_eq!(f_lambda_eval(&one, &zero), RatFunc::one());
        assert_eq!(f_lambda_eval(&one, &-&one), RatFunc::from_int(-4));
        assert_eq!(f_lambda_eval(&zero, &one), RatFunc::one());
        assert_eq!(f_lambda_eval(&one, &one), RatFunc::from_int(-4));
    }

    #[test]
    fn form_matches_direct_evaluation() {
        let m = Modulus::simplest_quartic();
        let x = Poly::from_ints(&[2, -1, 3]);
        let y = Poly::from_ints(&[0, 5]);
        assert_eq!(RatFunc::from(m.form_eval(&x, &y)), f_lambda_eval(&x, &y));
        assert_eq!(m.lambda_degree(), 1);
    }
}
