//! Exact solver for the simple quartic family of Thue equations
//! `F_λ(X, Y) = X⁴ − λX³Y − 6X²Y² + λXY³ + Y⁴ = ξ` over `C(T)`.
//!
//! All arithmetic is exact over `Q(λ)`; the places at infinity are handled
//! through truncated Laurent series in `1/λ`.

pub mod arith;
pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod family;
pub mod laurent;
pub mod ring;
pub mod search;
pub mod valuation;

pub use arith::{Poly, RatFunc, Rational};
pub use certificate::{verify_theorem, Certificate, VerifyOptions};
pub use error::{Error, Result};
pub use laurent::LaurentSeries;
pub use ring::{QuarticRing, RingElem};
