//! Exact arithmetic over Q, Q[λ] and Q(λ).

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use poly::{poly_divmod, poly_gcd, Poly};
pub use ratfunc::{ratfunc_arith, FieldOp, RatFunc};
pub use rational::{int, parse_rational, rat, Rational};
