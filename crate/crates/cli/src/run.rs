use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use tauideal::fp_algebra::{parse_ideal, parse_ring, Ideal, MonomialOrder, Ring};
use tauideal::jumping::{default_grid_depth, fpt, jumping_numbers, JumpEntry, REFINE_LEVELS};
use tauideal::newton_toric::{blowup_tau_path, blowup_tau_stabilized, monomial_tau_oracle};
use tauideal::test_ideal::{
    format_rational, parse_rational, skoda_verify, tau, tau_from_chain, Rational, TRational,
    TauOptions,
};

use crate::args::{ChainArgs, Cli, Command, Format, Order};
use crate::cache::{digest, Cache, Lookup, Outcome};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(#[from] tauideal::Error),
    /// A rendered JSON report describing the unstabilized chain.
    #[error("chain did not stabilize")]
    Unstabilized(String),
}

#[derive(Serialize)]
struct RequestEcho {
    command: &'static str,
    ring: String,
    order: &'static str,
    ideal: String,
    params: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    request: RequestEcho,
    result: Value,
    certification: Option<String>,
    e_stable: Option<u32>,
    warnings: Vec<String>,
    timing: Timing,
}

#[derive(Serialize)]
struct ErrorReport {
    schema_version: u32,
    request: RequestEcho,
    error: Value,
}

fn gens(i: &Ideal) -> Value {
    json!(i.canonical_strings())
}

fn rat(r: &Rational) -> Value {
    json!(format_rational(r))
}

fn opts(c: &ChainArgs) -> TauOptions {
    TauOptions {
        k: c.k,
        b: c.b,
        e_max: c.e_max,
    }
}

fn chain_params(params: &mut BTreeMap<&'static str, Value>, c: &ChainArgs) {
    params.insert("K", json!(c.k));
    params.insert("B", json!(c.b));
    params.insert("e_max", json!(c.e_max));
}

fn exponent(text: &str, p: u64) -> Result<TRational, RunError> {
    let r = parse_rational(text)?;
    Ok(TRational::from_rational(r, p)?)
}

/// Resolved parameters, echoed in the report and hashed into the cache key.
fn params(
    cmd: &Command,
    ring: &Ring,
    ideal: &Ideal,
) -> Result<BTreeMap<&'static str, Value>, RunError> {
    let p = ring.p();
    let mut m = BTreeMap::new();
    match cmd {
        Command::Tau { t, chain } | Command::OracleCompare { t, chain } => {
            m.insert("t", json!(exponent(t, p)?.to_string()));
            chain_params(&mut m, chain);
        }
        Command::Fpt { depth, chain } => {
            m.insert("depth", json!(depth.unwrap_or(default_grid_depth(p))));
            chain_params(&mut m, chain);
        }
        Command::Jumps {
            t_end,
            depth,
            chain,
        } => {
            m.insert("T", json!(exponent(t_end, p)?.to_string()));
            m.insert("depth", json!(depth.unwrap_or(default_grid_depth(p))));
            chain_params(&mut m, chain);
        }
        Command::Skoda {
            m: mm,
            t_base,
            chain,
        } => {
            m.insert("m", json!(mm.unwrap_or(ideal.num_generators() as u64)));
            let s = match t_base {
                Some(s) => parse_rational(s)?,
                None => Rational::from_integer(0),
            };
            m.insert("t_base", rat(&s));
            chain_params(&mut m, chain);
        }
        Command::BlowupPath {
            t,
            slack,
            e,
            k,
            e_max,
        } => {
            let t = exponent(t, p)?;
            let ceil = t.value().ceil().to_integer() as u64;
            m.insert("t", json!(t.to_string()));
            m.insert(
                "slack",
                json!(slack.unwrap_or((ring.n() as u64 + 1) * ceil)),
            );
            match e {
                Some(e) => {
                    m.insert("e", json!(e));
                }
                None => {
                    m.insert("K", json!(k));
                    m.insert("e_max", json!(e_max));
                }
            }
        }
    }
    Ok(m)
}

fn compute(
    cmd: &Command,
    ideal: &Ideal,
    params: &BTreeMap<&'static str, Value>,
) -> Result<Outcome, tauideal::Error> {
    let p = ideal.ring().p();
    let get_u = |k: &str| params[k].as_u64().expect("resolved parameter");
    let get_t = |k: &str| {
        let r = parse_rational(params[k].as_str().expect("resolved parameter"))?;
        TRational::from_rational(r, p)
    };
    let mut warnings = Vec::new();
    let outcome = match cmd {
        Command::Tau { chain, .. } => {
            let t = get_t("t")?;
            let res = tau(ideal, &t, &opts(chain))?;
            let pf = t.pform();
            Outcome {
                result: json!({
                    "t": t.to_string(),
                    "pform": {"a": pf.a.to_string(), "b": pf.b, "c": pf.c},
                    "generators": gens(&res.tau),
                    "skoda_shift": res.skoda_shift,
                    "chain": res.chain.iter().map(Ideal::to_string).collect::<Vec<_>>(),
                }),
                certification: Some(res.certification.to_string()),
                e_stable: Some(res.e_stable),
                warnings,
            }
        }
        Command::Fpt { chain, .. } => {
            let b = fpt(ideal, get_u("depth") as u32, &opts(chain))?;
            if b.exact.is_none() {
                warnings.push("no exact value: the ideal is not monomial".to_string());
            }
            Outcome {
                result: json!({
                    "lower": rat(&b.lower),
                    "upper": rat(&b.upper),
                    "exact": b.exact.as_ref().map(rat),
                    "depth": b.depth,
                    "nu": b.nu,
                }),
                certification: b.exact.map(|_| "oracle_exact".to_string()),
                e_stable: None,
                warnings,
            }
        }
        Command::Jumps { chain, .. } => {
            let t_end = get_t("T")?.value();
            let depth = get_u("depth") as u32;
            let rep = jumping_numbers(ideal, &t_end, depth, &opts(chain))?;
            let mut values = Vec::new();
            let mut entries = Vec::new();
            for j in &rep.jumps {
                match j {
                    JumpEntry::Exact {
                        value,
                        tau_before,
                        tau_at,
                    } => {
                        values.push(format_rational(value));
                        entries.push(json!({
                            "kind": "exact",
                            "value": rat(value),
                            "tau_before": gens(tau_before),
                            "tau_at": gens(tau_at),
                        }));
                    }
                    JumpEntry::Bracket {
                        lo,
                        hi,
                        tau_before,
                        tau_at,
                    } => {
                        values.push(format!(
                            "({}, {}]",
                            format_rational(lo),
                            format_rational(hi)
                        ));
                        entries.push(json!({
                            "kind": "bracket",
                            "lo": rat(lo),
                            "hi": rat(hi),
                            "tau_before": gens(tau_before),
                            "tau_at": gens(tau_at),
                        }));
                    }
                }
            }
            let all_exact = rep.jumps.iter().all(|j| j.exact().is_some());
            if !all_exact {
                warnings.push(format!(
                    "jumps are bracketed to width 1/p^{}; exact values need a monomial ideal",
                    depth + REFINE_LEVELS
                ));
            }
            Outcome {
                result: json!({
                    "interval_end": rat(&rep.interval_end),
                    "grid_depth": rep.grid_depth,
                    "refine_depth": rep.grid_depth + REFINE_LEVELS,
                    "jumps": values,
                    "entries": entries,
                }),
                certification: all_exact.then(|| "oracle_exact".to_string()),
                e_stable: None,
                warnings,
            }
        }
        Command::Skoda { chain, .. } => {
            let m = get_u("m");
            let s = parse_rational(params["t_base"].as_str().unwrap())?;
            let rep = skoda_verify(ideal, m, Some(s), &opts(chain))?;
            Outcome {
                result: json!({
                    "m": m,
                    "t_base": rat(&s),
                    "holds": rep.holds(),
                    "lhs_in_rhs": rep.lhs_in_rhs,
                    "rhs_in_lhs": rep.rhs_in_lhs,
                    "lhs": gens(&rep.lhs),
                    "rhs": gens(&rep.rhs),
                }),
                certification: None,
                e_stable: None,
                warnings,
            }
        }
        Command::OracleCompare { chain, .. } => {
            let t = get_t("t")?;
            let oracle = monomial_tau_oracle(ideal, &t.value())?;
            let res = tau_from_chain(ideal, &t, &opts(chain))?;
            let equal = res.tau == oracle;
            if !equal {
                warnings.push("chain value differs from the lattice-point formula".to_string());
            }
            Outcome {
                result: json!({
                    "t": t.to_string(),
                    "chain": gens(&res.tau),
                    "oracle": gens(&oracle),
                    "equal": equal,
                }),
                certification: Some(res.certification.to_string()),
                e_stable: Some(res.e_stable),
                warnings,
            }
        }
        Command::BlowupPath { k, e_max, .. } => {
            let t = get_t("t")?;
            let slack = get_u("slack");
            match params.get("e") {
                Some(e) => {
                    let e = e.as_u64().unwrap() as u32;
                    let img = blowup_tau_path(ideal, &t, e, slack)?;
                    Outcome {
                        result: json!({
                            "t": t.to_string(),
                            "slack": slack,
                            "e": e,
                            "generators": gens(&img.ideal_part),
                            "module": img.to_string(),
                        }),
                        certification: None,
                        e_stable: None,
                        warnings,
                    }
                }
                None => {
                    let path = blowup_tau_stabilized(ideal, &t, slack, *k, *e_max)?;
                    Outcome {
                        result: json!({
                            "t": t.to_string(),
                            "slack": slack,
                            "e_settled": path.e_settled,
                            "generators": gens(&path.module.ideal_part),
                            "module": path.module.to_string(),
                            "images": path.images.iter().map(|m| m.ideal_part.to_string()).collect::<Vec<_>>(),
                        }),
                        certification: Some(format!("blowup_settled(K={k})")),
                        e_stable: Some(path.e_stable),
                        warnings,
                    }
                }
            }
        }
    };
    Ok(outcome)
}

fn order_name(o: Order) -> (&'static str, MonomialOrder) {
    match o {
        Order::Grevlex => ("grevlex", MonomialOrder::Grevlex),
        Order::Lex => ("lex", MonomialOrder::Lex),
    }
}

pub fn run(cli: &Cli) -> Result<String, RunError> {
    let start = Instant::now();
    let c = &cli.common;
    let ring_text = c
        .ring
        .as_deref()
        .ok_or_else(|| RunError::Usage("--ring is required".into()))?;
    let ideal_text = c
        .ideal
        .as_deref()
        .ok_or_else(|| RunError::Usage("--ideal is required".into()))?;
    let (order, mono_order) = order_name(c.order);
    let ring =
        parse_ring(ring_text, mono_order).map_err(|e| RunError::Usage(format!("--ring: {e}")))?;
    let ideal =
        parse_ideal(&ring, ideal_text).map_err(|e| RunError::Usage(format!("--ideal: {e}")))?;
    if ideal.is_zero() {
        return Err(RunError::Usage("--ideal: zero ideal".into()));
    }
    let params = params(&cli.command, &ring, &ideal)?;
    let echo = RequestEcho {
        command: cli.command.name(),
        ring: ring.to_string(),
        order,
        ideal: ideal_text.to_string(),
        params,
        seed: c.seed,
    };

    let key = digest(
        &json!({
            "schema_version": SCHEMA_VERSION,
            "p": ring.p(),
            "order": order,
            "vars": ring.var_names(),
            "basis": ideal.canonical_strings(),
            "command": echo.command,
            "params": echo.params,
        })
        .to_string(),
    );
    let cache = c.cache_dir.as_deref().map(Cache::new);
    let mut extra = Vec::new();
    let cached = match &cache {
        Some(cache) => match cache.load(&key) {
            Lookup::Hit(o) => Some(o),
            Lookup::Miss => None,
            Lookup::Corrupt(why) => {
                extra.push(format!("cache entry {key} unreadable ({why}); recomputed"));
                None
            }
        },
        None => None,
    };
    let outcome = match cached {
        Some(o) => o,
        None => {
            let o = match compute(&cli.command, &ideal, &echo.params) {
                Ok(o) => o,
                Err(tauideal::Error::Unstabilized {
                    t,
                    e_max,
                    partial_chain,
                }) => {
                    let rep = ErrorReport {
                        schema_version: SCHEMA_VERSION,
                        request: echo,
                        error: json!({
                            "kind": "unstabilized",
                            "t": t,
                            "e_max": e_max,
                            "partial_chain": partial_chain.iter().map(Ideal::to_string).collect::<Vec<_>>(),
                        }),
                    };
                    let mut s = serde_json::to_string_pretty(&rep).expect("serializable");
                    s.push('\n');
                    return Err(RunError::Unstabilized(s));
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(cache) = &cache {
                if let Err(e) = cache.store(&key, &o) {
                    extra.push(format!("cache write failed: {e}"));
                }
            }
            o
        }
    };

    let mut warnings = outcome.warnings.clone();
    warnings.extend(extra);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        request: echo,
        result: outcome.result,
        certification: outcome.certification,
        e_stable: outcome.e_stable,
        warnings,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis(),
        },
    };
    Ok(match c.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&report),
        Format::Text => render_text(&report),
    })
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(plain).collect())
        .unwrap_or_default()
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(r: &Report) -> String {
    let res = &r.result;
    let mut rows: Vec<Vec<String>> = Vec::new();
    match r.request.command {
        "tau" | "blowup-path" => {
            rows.push(vec!["generator".into()]);
            rows.extend(strings(&res["generators"]).into_iter().map(|g| vec![g]));
        }
        "fpt" => {
            rows.push(
                ["lower", "upper", "exact", "depth", "nu"]
                    .map(String::from)
                    .to_vec(),
            );
            rows.push(
                ["lower", "upper", "exact", "depth", "nu"]
                    .map(|k| plain(&res[k]))
                    .to_vec(),
            );
        }
        "jumps" => {
            rows.push(["kind", "value", "lo", "hi"].map(String::from).to_vec());
            for e in res["entries"].as_array().into_iter().flatten() {
                rows.push(["kind", "value", "lo", "hi"].map(|k| plain(&e[k])).to_vec());
            }
        }
        "skoda" => {
            rows.push(vec!["side".into(), "generator".into()]);
            for side in ["lhs", "rhs"] {
                for g in strings(&res[side]) {
                    rows.push(vec![side.into(), g]);
                }
            }
        }
        _ => {
            rows.push(vec!["source".into(), "generator".into()]);
            for side in ["chain", "oracle"] {
                for g in strings(&res[side]) {
                    rows.push(vec![side.into(), g]);
                }
            }
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|f| csv_field(f))
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        })
        .collect()
}

fn ideal_text(v: &Value) -> String {
    format!("({})", strings(v).join(", "))
}

fn render_text(r: &Report) -> String {
    let res = &r.result;
    let mut out = format!(
        "{} over {} ideal {}\n",
        r.request.command, r.request.ring, r.request.ideal
    );
    match r.request.command {
        "tau" => {
            out += &format!(
                "tau at t={}: {}\n",
                plain(&res["t"]),
                ideal_text(&res["generators"])
            )
        }
        "blowup-path" => {
            out += &format!(
                "image at t={}: {}\n",
                plain(&res["t"]),
                plain(&res["module"])
            )
        }
        "fpt" => {
            out += &format!(
                "fpt in ({}, {}]\n",
                plain(&res["lower"]),
                plain(&res["upper"])
            );
            if !res["exact"].is_null() {
                out += &format!("exact: {}\n", plain(&res["exact"]));
            }
        }
        "jumps" => {
            for e in res["entries"].as_array().into_iter().flatten() {
                let at = match plain(&e["kind"]).as_str() {
                    "exact" => plain(&e["value"]),
                    _ => format!("({}, {}]", plain(&e["lo"]), plain(&e["hi"])),
                };
                out += &format!(
                    "jump {at}: {} -> {}\n",
                    ideal_text(&e["tau_before"]),
                    ideal_text(&e["tau_at"])
                );
            }
        }
        "skoda" => {
            out += &format!(
                "lhs: {}\nrhs: {}\nholds: {}\n",
                ideal_text(&res["lhs"]),
                ideal_text(&res["rhs"]),
                res["holds"]
            );
        }
        _ => {
            out += &format!(
                "chain: {}\noracle: {}\nequal: {}\n",
                ideal_text(&res["chain"]),
                ideal_text(&res["oracle"]),
                res["equal"]
            );
        }
    }
    if let Some(c) = &r.certification {
        out += &format!("certification: {c}\n");
    }
    for w in &r.warnings {
        out += &format!("warning: {w}\n");
    }
    out
}
