//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the summary is printed verbatim.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thueff::arith::{int, Poly, RatFunc};
use thueff::bounds::{
    bound_report, discriminant_cross_check, mason_abc_bound, modulus_discriminant,
};
use thueff::certificate::{matches_prefix, verify_theorem, VerifyOptions, ROOT_PREFIXES};
use thueff::family::{f_lambda_eval, Modulus};
use thueff::laurent::{quartic_roots, LaurentSeries};
use thueff::ring::{compose_index, inverse_of_alpha_plus_one, QuarticRing, RingElem};
use thueff::search::{fundamental_unit, search_units, ExponentTriple, TRIVIAL_TRIPLES};
use thueff::valuation::{
    unit_valuation_identity, vandermonde_valuation, Valuator, FUNDAMENTAL_VALUATIONS,
};

const CASES: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn theorem_reproduction() -> Outcome {
    let start = Instant::now();
    let cert = verify_theorem(&VerifyOptions::default());
    let elapsed = start.elapsed();
    if let Some(c) = cert.first_failure() {
        return Err(format!("check {} failed: {}", c.name, c.detail));
    }
    ensure(
        cert.triples_found == TRIVIAL_TRIPLES,
        format!("found {:?}", cert.triples_found),
    )?;
    let forms: Vec<String> = cert.classes.iter().map(ToString::to_string).collect();
    let expected = [
        "(η, 0) with η^4 = ξ",
        "(η, -η) with -4η^4 = ξ",
        "(0, η) with η^4 = ξ",
        "(η, η) with -4η^4 = ξ",
    ];
    ensure(forms == expected, format!("classes {forms:?}"))?;
    ensure(
        elapsed < Duration::from_secs(300),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{} triples searched, 4 units, 4 classes in {:.1}s",
        cert.triples_searched,
        elapsed.as_secs_f64()
    ))
}

fn laurent_roots() -> Outcome {
    let roots = quartic_roots(4).map_err(|e| e.to_string())?;
    for (i, (r, (lead, c))) in roots.iter().zip(ROOT_PREFIXES).enumerate() {
        ensure(matches_prefix(r, lead, c), format!("α{} = {r}", i + 1))?;
    }
    Ok(format!("α1 = {}", roots[0]))
}

fn inversion_identity() -> Outcome {
    let ring = QuarticRing::standard();
    let inv = ring
        .inv(&RingElem::from_ints([1, 1, 0, 0]))
        .map_err(|e| e.to_string())?;
    ensure(inv == inverse_of_alpha_plus_one(), format!("got {inv}"))?;
    ensure(
        ring.mul(&inv, &RingElem::from_ints([1, 1, 0, 0])).is_one(),
        "product is not 1",
    )?;
    Ok(format!("1/(α+1) = {inv}"))
}

fn discriminant() -> Outcome {
    let m = Modulus::simplest_quartic();
    let d = modulus_discriminant(&m).map_err(|e| e.to_string())?;
    let expect = RatFunc::from(Poly::from_ints(&[16384, 0, 3072, 0, 192, 0, 4]));
    ensure(d == expect, format!("disc = {d}"))?;
    let cross = discriminant_cross_check(&m, 16).map_err(|e| e.to_string())?;
    ensure(
        cross.is_zero(),
        format!("root-difference square differs: {cross}"),
    )?;
    Ok(format!(
        "disc = {d}; cross-check zero through 1/λ^{}",
        cross.order() - 1
    ))
}

fn valuation_vectors() -> Outcome {
    let ring = QuarticRing::standard();
    let v = Valuator::new(ring);
    for (e, w) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        .into_iter()
        .zip(FUNDAMENTAL_VALUATIONS)
    {
        let got = v
            .valuation_vector(&fundamental_unit(ring, ExponentTriple::new(e.0, e.1, e.2)).unwrap())
            .map_err(|e| e.to_string())?;
        ensure(got == w, format!("{e:?}: {:?}", got.w()))?;
    }
    let vd = vandermonde_valuation(8).map_err(|e| e.to_string())?;
    ensure(
        vd.vector.w() == [-3; 4],
        format!("vandermonde {:?}", vd.vector.w()),
    )?;
    ensure(vd.leading[0] == "-2", format!("leading {}", vd.leading[0]))?;
    Ok("(1,0,0,−1) (0,1,0,−1) (0,0,1,−1); vandermonde (−3,−3,−3,−3), leading −2".into())
}

fn bound_chain() -> Outcome {
    let r1 = bound_report(1).map_err(|e| e.to_string())?;
    let r2 = bound_report(2).map_err(|e| e.to_string())?;
    let t = |r: &thueff::bounds::BoundReport| {
        (
            r.rk_bound,
            r.genus_bound,
            r.siegel_height_bound,
            r.beta_ratio_bound,
            r.exponent_budget,
        )
    };
    ensure(t(&r1) == (2, 0, 6, 7, 10), format!("a=1: {:?}", t(&r1)))?;
    ensure(t(&r2) == (4, 3, 16, 18, 10), format!("a=2: {:?}", t(&r2)))?;
    for a in 1..=64 {
        let r = bound_report(a).unwrap();
        let abc = mason_abc_bound(r.genus_bound, r.w_bound);
        ensure(abc == r.siegel_height_bound, format!("a={a}: ABC {abc}"))?;
        // With no ramification subtracted the same bound only gets weaker.
        let unramified = mason_abc_bound(r.genus_bound, r.w_bound_unramified);
        ensure(
            unramified >= r.siegel_height_bound,
            format!("a={a}: unramified {unramified}"),
        )?;
        for rk in 0..=2 * a {
            let chain = r.height_chain_at(rk);
            let direct = r.genus_bound_at(rk) * int(2) - int(2) + int(r.w_bound_at(rk));
            ensure(
                direct == int(chain),
                format!("a={a}, r_K={rk}: chain {chain}"),
            )?;
            ensure(chain <= r.siegel_height_bound, format!("a={a}, r_K={rk}"))?;
        }
        // Any triple whose unit satisfies the height bound has budget value
        // at most ⌊(11a − 4)/a⌋ ≤ 10.
        ensure(
            r.exponent_budget_at_a <= r.exponent_budget,
            format!("a={a}: budget"),
        )?;
        ensure(
            r.exponent_budget_at_a * a <= r.beta_ratio_bound,
            format!("a={a}: floor"),
        )?;
    }
    Ok("a=1 {2,0,6,7,10}; a=2 {4,3,16,18,10}; audit over a ≤ 64".into())
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_ints(&(0..=deg).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>())
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    let num = random_poly(rng, 4);
    let mut den = random_poly(rng, 4);
    while den.is_zero() {
        den = random_poly(rng, 4);
    }
    RatFunc::new(num, den).unwrap()
}

fn random_elem(rng: &mut ChaCha8Rng, max_deg: usize) -> RingElem {
    RingElem::from_polys(std::array::from_fn(|_| random_poly(rng, max_deg)))
}

fn random_triple(rng: &mut ChaCha8Rng) -> ExponentTriple {
    ExponentTriple::new(
        rng.gen_range(-4..=4),
        rng.gen_range(-4..=4),
        rng.gen_range(-4..=4),
    )
}

fn random_series(rng: &mut ChaCha8Rng) -> LaurentSeries {
    let lead = rng.gen_range(-3..=3);
    let len = rng.gen_range(1..6);
    let c = (0..len).map(|_| int(rng.gen_range(-9..=9))).collect();
    LaurentSeries::new(lead, c, lead + 6)
}

fn property_suites() -> Outcome {
    let ring = QuarticRing::standard();
    let v = Valuator::new(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7475_6566);
    let mut run = |name: &str, f: &mut dyn FnMut(&mut ChaCha8Rng) -> bool| -> Result<(), String> {
        for case in 0..CASES {
            if !f(&mut rng) {
                return Err(format!("{name}: case {case}"));
            }
        }
        Ok(())
    };

    run("field axioms", &mut |rng| {
        let (a, b, c) = (
            random_ratfunc(rng),
            random_ratfunc(rng),
            random_ratfunc(rng),
        );
        &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (a.is_zero() || (&a * &a.inv().unwrap()).is_one())
    })?;
    run("ring axioms", &mut |rng| {
        let (a, b, c) = (
            random_elem(rng, 2),
            random_elem(rng, 2),
            random_elem(rng, 2),
        );
        ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c))
            && ring.mul(&a, &b) == ring.mul(&b, &a)
            && ring.mul(&a, &b.add(&c)) == ring.mul(&a, &b).add(&ring.mul(&a, &c))
    })?;
    run("norm multiplicativity", &mut |rng| {
        let (a, b) = (random_elem(rng, 1), random_elem(rng, 1));
        ring.norm(&ring.mul(&a, &b)).unwrap() == &ring.norm(&a).unwrap() * &ring.norm(&b).unwrap()
    })?;
    run("norm factorization", &mut |rng| {
        let (x, y) = (random_poly(rng, 3), random_poly(rng, 3));
        ring.norm(&RingElem::from_xy(&x, &y)).unwrap() == f_lambda_eval(&x, &y)
    })?;
    run("Siegel residual", &mut |rng| {
        let (x, y) = (random_poly(rng, 3), random_poly(rng, 3));
        ring.siegel_residual(&x, &y).is_zero()
    })?;
    run("unit product formula", &mut |rng| {
        let e = random_triple(rng);
        let w = v
            .valuation_vector(&fundamental_unit(ring, e).unwrap())
            .unwrap();
        w.sum() == 0 && w == unit_valuation_identity(e.r, e.s, e.t)
    })?;
    run("Galois composition", &mut |rng| {
        let a = random_elem(rng, 2);
        let (i, j) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        ring.galois(&ring.galois(&a, j), i) == ring.galois(&a, compose_index(i, j))
    })?;
    run("series valuation axioms", &mut |rng| {
        let (a, b) = (random_series(rng), random_series(rng));
        let (Some(x), Some(y)) = (a.valuation(), b.valuation()) else {
            return true;
        };
        let sum = &a + &b;
        let sum_ok = match sum.valuation() {
            Some(s) => s >= x.min(y) && (x == y || s == x.min(y)),
            None => x == y || sum.order() <= x.min(y),
        };
        (&a * &b).valuation() == Some(x + y) && sum_ok
    })?;
    run("height of inverse", &mut |rng| {
        let beta = fundamental_unit(ring, random_triple(rng)).unwrap();
        let inv = ring.inv(&beta).unwrap();
        v.height_infinity(&beta).unwrap() == v.height_infinity(&inv).unwrap()
    })?;
    Ok(format!("9 suites × {CASES} seeded cases"))
}

fn oracle_equivalence() -> Outcome {
    let ring = QuarticRing::standard();
    let v = Valuator::new(ring);
    let mut checked = 0;
    for r in -3..=3 {
        for s in -3..=3 {
            for t in -3..=3 {
                let beta = fundamental_unit(ring, ExponentTriple::new(r, s, t)).unwrap();
                let w = v.valuation_vector(&beta).map_err(|e| e.to_string())?;
                ensure(
                    w == unit_valuation_identity(r, s, t),
                    format!("({r},{s},{t}): {:?}", w.w()),
                )?;
                checked += 1;
            }
        }
    }
    let outcome = search_units(ring, 10, 0).map_err(|e| e.to_string())?;
    for f in &outcome.found {
        let h = v.height_infinity(&f.beta).map_err(|e| e.to_string())?;
        ensure(h <= 7, format!("{}: height {h}", f.triple))?;
    }
    Ok(format!(
        "{checked} triples match; {} found units within height 7",
        outcome.found.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 theorem reproduction", theorem_reproduction),
        ("2 Laurent roots", laurent_roots),
        ("3 inversion identity", inversion_identity),
        ("4 discriminant", discriminant),
        ("5 valuation vectors", valuation_vectors),
        ("6 bound chain", bound_chain),
        ("7 property suites", property_suites),
        ("8 oracle equivalence", oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
