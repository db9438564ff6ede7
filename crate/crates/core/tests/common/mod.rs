#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use tauideal::fp_algebra::{parse_ideal, parse_ring, Ideal, Monomial, MonomialOrder, Poly, Ring};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn ring(p: u64, n: usize) -> Ring {
    Ring::grevlex(p, &VARS[..n]).unwrap()
}

pub fn ideal(p: u64, vars: &str, text: &str) -> Ideal {
    let r = parse_ring(&format!("F{p}[{vars}]"), MonomialOrder::Grevlex).unwrap();
    parse_ideal(&r, text).unwrap()
}

fn random_monomial<R: Rng>(rng: &mut R, n: usize, deg: u64) -> Monomial {
    let mut exps = vec![0u64; n];
    for _ in 0..deg {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exps(&exps).unwrap()
}

/// A polynomial without constant term; homogeneous half of the time.
pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_deg: u64, max_terms: usize) -> Poly {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let homogeneous = rng.gen_bool(0.5);
        let d0 = rng.gen_range(1..=max_deg);
        let terms: Vec<_> = (0..k)
            .map(|_| {
                let d = if homogeneous {
                    d0
                } else {
                    rng.gen_range(1..=max_deg)
                };
                (
                    random_monomial(rng, ring.n(), d),
                    rng.gen_range(1..ring.p()),
                )
            })
            .collect();
        let f = Poly::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A nonzero ideal with at most `max_gens` generators of degree at most `max_deg`.
pub fn random_ideal<R: Rng>(rng: &mut R, ring: &Ring, max_gens: usize, max_deg: u64) -> Ideal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k).map(|_| random_poly(rng, ring, max_deg, 4)).collect();
    Ideal::new(ring, gens).unwrap()
}

/// A proper monomial ideal with exponents at most `max_exp`.
pub fn random_monomial_ideal<R: Rng>(
    rng: &mut R,
    ring: &Ring,
    max_gens: usize,
    max_exp: u64,
) -> Ideal {
    let n = ring.n();
    let k = rng.gen_range(1..=max_gens);
    let monos = (0..k).map(|_| loop {
        let exps: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if exps.iter().any(|&e| e > 0) {
            break Monomial::from_exps(&exps).unwrap();
        }
    });
    Ideal::from_monomials(ring, monos.collect::<Vec<_>>())
}

/// Fixed ideals used by the Skoda and structure suites.
pub fn corpus() -> Vec<Ideal> {
    vec![
        ideal(3, "x", "x"),
        ideal(3, "x,y", "x"),
        ideal(5, "x,y", "x,y"),
        ideal(5, "x,y", "x^2,y^3"),
        ideal(7, "x,y", "x^2,y^3"),
        ideal(2, "x,y", "x^3,y^2"),
        ideal(3, "x,y", "x^2,x*y,y^3"),
        ideal(2, "x,y,z", "x,y,z"),
        ideal(3, "x,y,z", "x*y,z^2"),
        ideal(5, "x,y", "x^2 + y^3"),
        ideal(7, "x,y", "x^2 + y^3"),
        ideal(2, "x,y", "x^2 + y^3"),
        ideal(3, "x,y", "x*y*(x + y)"),
        ideal(5, "x,y", "x^2 + y^2, x*y"),
        ideal(3, "x,y", "x^2 - y^3, x*y^2"),
    ]
}

pub fn arb_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

/// `(p, n, generator term lists)`; each term is `(exponents, coefficient)`.
pub type IdealShape = (u64, usize, Vec<Vec<(Vec<u64>, u64)>>);

pub fn arb_ideal_shape(
    max_vars: usize,
    max_gens: usize,
    max_exp: u64,
) -> impl Strategy<Value = IdealShape> {
    (arb_prime(), 1..=max_vars).prop_flat_map(move |(p, n)| {
        let term = (prop::collection::vec(0..=max_exp, n), 1..p);
        let gen = prop::collection::vec(term, 1..=3);
        (Just(p), Just(n), prop::collection::vec(gen, 1..=max_gens))
    })
}

pub fn build(shape: &IdealShape) -> Option<Ideal> {
    let (p, n, gens) = shape;
    let r = ring(*p, *n);
    let polys: Vec<Poly> = gens
        .iter()
        .map(|g| {
            Poly::from_terms(
                &r,
                g.iter().map(|(e, c)| (Monomial::from_exps(e).unwrap(), *c)),
            )
        })
        .collect();
    let i = Ideal::new(&r, polys).unwrap();
    (!i.is_zero()).then_some(i)
}

/// Checks the structural properties of a jump report and returns every
/// violation found.
pub fn structure_violations(
    i: &Ideal,
    report: &tauideal::jumping::JumpReport,
    opts: &tauideal::test_ideal::TauOptions,
) -> Vec<String> {
    use tauideal::test_ideal::{tau, Rational, TRational};
    let p = i.ring().p();
    let r = Rational::from_integer(i.num_generators() as i64);
    let t_end = report.interval_end;
    let exact: Vec<Rational> = report.jumps.iter().filter_map(|j| j.exact()).collect();
    let delta = Rational::new(1, (p as i64).pow(report.grid_depth + 2));
    let eval = |t: Rational| {
        tau(i, &TRational::from_rational(t, p).unwrap(), opts)
            .unwrap()
            .tau
    };
    let mut bad = Vec::new();
    for w in report.jumps.windows(2) {
        if w[0].position() >= w[1].position() {
            bad.push(format!("entries not increasing at {}", w[1].position()));
        }
    }
    for j in &report.jumps {
        if !(j.tau_before().contains(j.tau_at()).unwrap() && j.tau_before() != j.tau_at()) {
            bad.push(format!("no strict drop at {}", j.position()));
        }
    }
    for entry in &report.jumps {
        let Some(xi) = entry.exact() else { continue };
        let px = xi * Rational::from_integer(p as i64);
        if px <= t_end && !exact.contains(&px) {
            bad.push(format!("{px} = p*{xi} missing"));
        }
        let next = xi + Rational::from_integer(1);
        if xi >= r && next <= t_end && !exact.contains(&next) {
            bad.push(format!("{next} = {xi}+1 missing"));
        }
        for s in [xi, xi + delta / Rational::from_integer(2), xi + delta] {
            if eval(s) != *entry.tau_at() {
                bad.push(format!("right constancy fails at {s} for {xi}"));
            }
        }
        let form = TRational::from_rational(xi, p).unwrap().pform();
        if form.b == 0 && form.c >= 1 {
            for k in 1..=3 {
                let s = xi - delta * Rational::new(k, 4);
                if eval(s) != *entry.tau_before() {
                    bad.push(format!("left constancy fails at {s} for {xi}"));
                }
            }
        }
    }
    bad
}
