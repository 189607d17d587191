//! Dense Gaussian elimination over Q(λ).
//!
//! Pivots are chosen by smallest `RatFunc::size` in the active column,
//! which keeps degree growth of intermediate entries low.

use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<RatFunc>>;

fn pick_pivot(m: &Matrix, col: usize) -> Option<usize> {
    (col..m.len())
        .filter(|&r| !m[r][col].is_zero())
        .min_by_key(|&r| m[r][col].size())
}

/// Solves `m·x = rhs` for square, non-singular `m`.
pub fn solve(mut m: Matrix, mut rhs: Vec<RatFunc>) -> Result<Vec<RatFunc>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n) && rhs.len() == n);
    for col in 0..n {
        let p = pick_pivot(&m, col).ok_or(Error::SingularSystem)?;
        m.swap(col, p);
        rhs.swap(col, p);
        let inv = m[col][col].inv()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&factor * p);
            }
            let sub = &factor * &rhs[col];
            rhs[r] = &rhs[r] - &sub;
        }
    }
    let mut x = vec![RatFunc::zero(); n];
    for r in (0..n).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..n {
            acc = &acc - &(&m[r][c] * &x[c]);
        }
        x[r] = acc.checked_div(&m[r][r])?;
    }
    Ok(x)
}

pub fn determinant(mut m: Matrix) -> RatFunc {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n));
    let mut det = RatFunc::one();
    for col in 0..n {
        let Some(p) = pick_pivot(&m, col) else {
            return RatFunc::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let inv = m[col][col].inv().expect("pivot is non-zero");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&factor * p);
            }
        }
        det = &det * &m[col][col];
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn solves_small_system() {
        let l = RatFunc::lambda();
        // [[λ, 1], [1, 1]] x = [1, 0]  =>  x = [1/(λ-1), -1/(λ-1)]
        let m = vec![vec![l.clone(), c(1)], vec![c(1), c(1)]];
        let x = solve(m, vec![c(1), c(0)]).unwrap();
        let expect = RatFunc::new(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(x, vec![expect.clone(), -expect]);
    }

    #[test]
    fn singular_system_is_reported() {
        let m = vec![vec![c(1), c(2)], vec![c(2), c(4)]];
        assert_eq!(
            solve(m.clone(), vec![c(1), c(1)]),
            Err(Error::SingularSystem)
        );
        assert!(determinant(m).is_zero());
    }

    #[test]
    fn determinant_tracks_row_swaps() {
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(determinant(m), c(-1));
    }
}
