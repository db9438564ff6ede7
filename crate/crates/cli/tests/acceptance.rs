//! One line per acceptance criterion. Runs without the libtest harness so the
//! verdicts are always printed.

#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tauideal::fp_algebra::Ideal;
use tauideal::frobenius::frobenius_root;
use tauideal::jumping::{default_grid_depth, fpt, jumping_numbers, nu_threshold};
use tauideal::newton_toric::{blowup_tau_stabilized, lp_jumping_numbers, monomial_tau_oracle};
use tauideal::test_ideal::{skoda_verify, tau_from_chain, Rational, TRational, TauOptions};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict, Duration);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn frobenius_algebra() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let count = 500;
    let mut multi = 0;
    for k in 0..count {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let r = common::ring(p, n);
        let i = common::random_ideal(&mut rng, &r, 4, 6);
        let j = common::random_ideal(&mut rng, &r, 2, 3);
        let e = rng.gen_range(1..=2);
        multi += usize::from(i.groebner().len() > 1);
        let err = |what: &str| format!("{what} fails on ideal #{k} {i} (p={p}, e={e})");
        let root = frobenius_root(&i, e).map_err(|x| x.to_string())?;
        let q_i = i.bracket_power(e).map_err(|x| x.to_string())?;
        check(frobenius_root(&q_i, e).unwrap() == i, || {
            err("left inverse")
        })?;
        check(root.bracket_power(e).unwrap().contains(&i).unwrap(), || {
            err("expansion")
        })?;
        let twice = frobenius_root(&frobenius_root(&i, 1).unwrap(), 1).unwrap();
        check(frobenius_root(&i, 2).unwrap() == twice, || {
            err("composition")
        })?;
        let lhs = frobenius_root(&i.product(&j.bracket_power(e).unwrap()).unwrap(), e).unwrap();
        check(lhs == root.product(&j).unwrap(), || {
            err("projection formula")
        })?;
        let bigger = frobenius_root(&i.sum(&j).unwrap(), e).unwrap();
        check(bigger.contains(&root).unwrap(), || err("monotonicity"))?;
    }
    Ok(format!(
        "{count} ideals ({multi} with several basis elements), 5 invariants each"
    ))
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let ts = [(1u64, 2u64), (5, 6), (1, 1), (3, 2), (2, 1)];
    let opts = TauOptions::default();
    let (count, mut comparisons) = (200, 0);
    for k in 0..count {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=3);
        let i = common::random_monomial_ideal(&mut rng, &common::ring(p, n), 4, 8);
        let r = i.num_generators() as i64;
        for (a, b) in ts {
            let t = TRational::new(a, b, p).unwrap();
            if t.value() >= Rational::from_integer(r + 1) {
                continue;
            }
            let chain = tau_from_chain(&i, &t, &opts)
                .map_err(|x| format!("ideal #{k} {i} at t={t}, p={p}: {x}"))?;
            let oracle = monomial_tau_oracle(&i, &t.value()).unwrap();
            check(chain.tau == oracle, || {
                format!(
                    "ideal #{k} {i} at t={t}, p={p}: chain {} vs oracle {oracle}",
                    chain.tau
                )
            })?;
            comparisons += 1;
        }
    }
    Ok(format!("{count} ideals, {comparisons} exact comparisons"))
}

fn blowup_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let ts = [(1u64, 2u64), (5, 6), (1, 1), (3, 2), (2, 1)];
    let count = 50;
    let mut steps = 0;
    for k in 0..count {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=3);
        let i = common::random_monomial_ideal(&mut rng, &common::ring(p, n), 3, 6);
        let (a, b) = ts[k % ts.len()];
        let t = TRational::new(a, b, p).unwrap();
        let slack = (n as u64 + 1) * t.value().ceil().to_integer() as u64;
        let path = blowup_tau_stabilized(&i, &t, slack, 2, 24)
            .map_err(|x| format!("ideal #{k} {i} at t={t}, p={p}: {x}"))?;
        for w in path.images.windows(2) {
            check(w[1].ideal_part.contains(&w[0].ideal_part).unwrap(), || {
                format!("images not ascending for {i} at t={t}, p={p}")
            })?;
            steps += 1;
        }
        let oracle = monomial_tau_oracle(&i, &t.value()).unwrap();
        check(path.module.ideal_part == oracle, || {
            format!(
                "{i} at t={t}, p={p}: blowup {} vs oracle {oracle}",
                path.module
            )
        })?;
    }
    Ok(format!("{count} ideals, {steps} ascending steps checked"))
}

/// `J_e` from a materialized power, independent of the digit-wise root.
fn naive_chain(i: &Ideal, t: Rational, e: u32) -> Ideal {
    let q = i.ring().p_pow(e).unwrap() as i64;
    let n = (t * Rational::from_integer(q)).ceil().to_integer() as u64;
    frobenius_root(&i.power(n).unwrap(), e).unwrap()
}

fn cusp_fixture() -> Verdict {
    let want: Vec<Rational> = [(5, 6), (7, 6), (4, 3), (3, 2), (5, 3), (11, 6), (2, 1)]
        .iter()
        .map(|&(a, b)| Rational::new(a, b))
        .collect();
    for p in [7u64, 5] {
        let i = common::ideal(p, "x,y", "x^2,y^3");
        let two = Rational::from_integer(2);
        check(lp_jumping_numbers(&i, &two).unwrap() == want, || {
            format!("lattice jumps differ at p={p}")
        })?;
        let rep = jumping_numbers(&i, &two, default_grid_depth(p), &TauOptions::default())
            .map_err(|x| x.to_string())?;
        let got: Vec<Rational> = rep.jumps.iter().filter_map(|j| j.exact()).collect();
        check(got == want, || format!("p={p}: jumps {got:?}"))?;
        let at_first = common::ideal(p, "x,y", "x,y");
        let at_two = common::ideal(p, "x,y", "x^3, x^2*y, x*y^3, y^4");
        check(*rep.jumps[0].tau_at() == at_first, || {
            format!("p={p}: tau at 5/6")
        })?;
        check(*rep.jumps[6].tau_at() == at_two, || {
            format!("p={p}: tau at 2")
        })?;
        check(naive_chain(&i, want[0], 2) == at_first, || {
            format!("p={p}: naive chain at 5/6")
        })?;
        check(naive_chain(&i, two, 2) == at_two, || {
            format!("p={p}: naive chain at 2")
        })?;
    }
    Ok("F7 and F5 jump sets and values match".into())
}

fn skoda_suite() -> Verdict {
    let corpus = common::corpus();
    for i in &corpus {
        let r = i.num_generators() as u64;
        for m in [r, r + 1] {
            let rep = skoda_verify(i, m, None, &TauOptions::default())
                .map_err(|x| format!("{i} m={m}: {x}"))?;
            check(rep.holds(), || {
                format!(
                    "{i} m={m}: lhs {} rhs {} (lhs in rhs: {}, rhs in lhs: {})",
                    rep.lhs, rep.rhs, rep.lhs_in_rhs, rep.rhs_in_lhs
                )
            })?;
        }
    }
    Ok(format!("{} corpus ideals at m = r, r+1", corpus.len()))
}

fn structure_suite() -> Verdict {
    let fixtures = [
        (3u64, "x,y", "x", Rational::from_integer(3)),
        (5, "x,y", "x,y", Rational::from_integer(3)),
        (7, "x,y", "x^2,y^3", Rational::from_integer(2)),
        (5, "x,y", "x^2,y^3", Rational::from_integer(2)),
        (3, "x,y", "x^2,x*y,y^3", Rational::new(5, 2)),
        (2, "x,y", "x^3,y^2", Rational::new(5, 2)),
    ];
    let opts = TauOptions::default();
    let mut jumps = 0;
    for (p, vars, text, t_end) in fixtures {
        let i = common::ideal(p, vars, text);
        let rep =
            jumping_numbers(&i, &t_end, default_grid_depth(p), &opts).map_err(|x| x.to_string())?;
        jumps += rep.jumps.len();
        let bad = common::structure_violations(&i, &rep, &opts);
        check(bad.is_empty(), || format!("({text}) over F{p}: {bad:?}"))?;
    }
    Ok(format!(
        "{jumps} exact jumps across {} fixtures",
        fixtures.len()
    ))
}

fn fpt_brackets() -> Verdict {
    let mut detail = Vec::new();
    for p in [5u64, 7] {
        let f = common::ideal(p, "x,y", "x^2 + y^3");
        let b = fpt(&f, 2, &TauOptions::default()).map_err(|x| x.to_string())?;
        check(
            b.upper - b.lower <= Rational::new(1, (p * p) as i64),
            || format!("p={p}: width"),
        )?;
        check(b.exact.is_none(), || format!("p={p}: exact value claimed"))?;
        let q3 = (p * p * p) as i64;
        let nu3 = nu_threshold(&f, 3).unwrap() as i64;
        let (lo3, hi3) = (Rational::new(nu3, q3), Rational::new(nu3 + 1, q3));
        check(b.lower <= lo3 && hi3 <= b.upper, || {
            format!(
                "p={p}: depth-3 bracket ({lo3}, {hi3}] outside ({}, {}]",
                b.lower, b.upper
            )
        })?;
        detail.push(format!("F{p}: ({}, {}]", b.lower, b.upper));
    }
    Ok(detail.join(", "))
}

fn golden_replay() -> Verdict {
    let cases = support::cases();
    check(cases.len() == support::GOLDEN_CASES, || {
        format!("{} golden files", cases.len())
    })?;
    let cache = tempfile::tempdir().map_err(|x| x.to_string())?;
    for (name, args) in &cases {
        let want = std::fs::read_to_string(support::golden_dir().join(format!("{name}.out")))
            .map_err(|x| x.to_string())?;
        check(support::invoke(args, None) == want, || {
            format!("{name} without cache")
        })?;
        check(support::invoke(args, Some(cache.path())) == want, || {
            format!("{name} cold cache")
        })?;
        check(support::invoke(args, Some(cache.path())) == want, || {
            format!("{name} warm cache")
        })?;
    }
    Ok(format!(
        "{} files, uncached, cold and warm cache",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "frobenius root algebra",
            frobenius_algebra,
            Duration::from_secs(120),
        ),
        (
            "oracle equivalence",
            oracle_equivalence,
            Duration::from_secs(600),
        ),
        ("blowup path equivalence", blowup_equivalence, Duration::MAX),
        ("cusp jump fixture", cusp_fixture, Duration::MAX),
        ("skoda suite", skoda_suite, Duration::MAX),
        ("jump structure suite", structure_suite, Duration::MAX),
        ("fpt brackets", fpt_brackets, Duration::MAX),
        ("golden determinism", golden_replay, Duration::MAX),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(d) if elapsed > *budget => {
                Err(format!("{d}; over the {}s budget", budget.as_secs()))
            }
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {} {tag} {name}: {detail} [{:.2}s]",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
