use thueff::arith::Poly;
use thueff::certificate::{verify_theorem, Status, VerifyOptions};
use thueff::error::Error;
use thueff::family::Modulus;

fn with_modulus(modulus: Modulus) -> VerifyOptions {
    VerifyOptions {
        modulus,
        budget: 2,
        ..VerifyOptions::default()
    }
}

#[test]
fn reference_family_passes() {
    let cert = verify_theorem(&VerifyOptions {
        budget: 3,
        ..VerifyOptions::default()
    });
    assert!(cert.passed(), "{:#?}", cert.first_failure());
    assert_eq!(cert.triples_searched, 147);
    assert!(cert.into_result().is_ok());
}

#[test]
fn tampered_constant_term_is_caught() {
    // X⁴ − λX³ − 6X² + λX + 2
    let m = Modulus::new([
        Poly::from_ints(&[2]),
        Poly::from_ints(&[0, 1]),
        Poly::from_ints(&[-6]),
        Poly::from_ints(&[0, -1]),
    ]);
    let cert = verify_theorem(&with_modulus(m));
    assert_eq!(cert.status, Status::Fail);
    let failure = cert.into_result().unwrap_err();
    assert!(matches!(failure, Error::ReproductionFailure { .. }));
}

#[test]
fn tampered_quadratic_term_is_caught() {
    // X⁴ − λX³ − 5X² + λX + 1
    let m = Modulus::new([
        Poly::from_ints(&[1]),
        Poly::from_ints(&[0, 1]),
        Poly::from_ints(&[-5]),
        Poly::from_ints(&[0, -1]),
    ]);
    let cert = verify_theorem(&with_modulus(m));
    assert!(!cert.passed());
    let failed: Vec<&str> = cert
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    assert!(!failed.is_empty());
    assert!(!failed.contains(&"siegel_identity"));
}
