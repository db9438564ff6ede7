//! Test ideals `τ(𝔞^t)` from the ascending chain
//! `J_e = (𝔞^⌈t p^e⌉)^[1/p^e]`.
//!
//! Every `J_e` lies inside `τ(𝔞^t)`, and `τ(𝔞^t)` lies inside
//! `U_e = (𝔞^max(0, ⌊t p^e⌋ - r + 1))^[1/p^e]` for `r` generators, because
//! `τ(𝔞^t)` is the root of `τ(𝔞^(t p^e))` and the latter sits in
//! `𝔞^(⌊t p^e⌋ - r + 1)` by Skoda. When `J_e = U_e` the value is exact. This
//! happens for every `t` that is not a jumping number. At jumping numbers the
//! chain runs to `e_max` and the value is certified by plateau length and
//! compatibility.

mod exponent;

use std::fmt;

pub use exponent::{
    ceil_times, ceil_times_pe, floor_times_pe, format_rational, parse_rational, rational_pform,
    PForm, Rational, TRational,
};

use crate::error::{Error, Result};
use crate::fp_algebra::Ideal;
use crate::frobenius::{root_of_power, root_of_power_product};
use crate::newton_toric::monomial_tau_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauOptions {
    /// Consecutive equalities required when the bounds do not meet.
    pub k: u32,
    /// Compatibility depth.
    pub b: u32,
    pub e_max: u32,
}

impl Default for TauOptions {
    fn default() -> Self {
        TauOptions {
            k: 2,
            b: 3,
            e_max: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    /// Equal to the Newton-polyhedron value.
    OracleExact,
    /// Lower and upper chains met.
    BoundsMeet,
    ChainStable {
        k: u32,
    },
    ChainStableAndCompatible {
        k: u32,
        b: u32,
    },
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::OracleExact => write!(f, "oracle_exact"),
            Certification::BoundsMeet => write!(f, "bounds_meet"),
            Certification::ChainStable { k } => write!(f, "chain_stable(K={k})"),
            Certification::ChainStableAndCompatible { k, b } => {
                write!(f, "chain_stable_and_compatible(K={k},B={b})")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct TauResult {
    pub tau: Ideal,
    pub t: TRational,
    /// First exponent of the final plateau of the chain.
    pub e_stable: u32,
    pub certification: Certification,
    /// Number of Skoda steps `τ(𝔞^t) = 𝔞·τ(𝔞^(t-1))` applied.
    pub skoda_shift: u64,
    /// The lower chain `J_1, J_2, …` for the reduced exponent.
    pub chain: Vec<Ideal>,
}

struct Evaluation {
    tau: Ideal,
    e_stable: u32,
    certification: Certification,
    skoda_shift: u64,
    chain: Vec<Ideal>,
}

/// `τ(𝔞^t)` with Skoda reduction and, for monomial ideals, an oracle check.
pub fn tau(i: &Ideal, t: &TRational, opts: &TauOptions) -> Result<TauResult> {
    check_prime(i, t)?;
    let ev = evaluate(i, &t.value(), opts, true, true)?;
    Ok(TauResult {
        tau: ev.tau,
        t: *t,
        e_stable: ev.e_stable,
        certification: ev.certification,
        skoda_shift: ev.skoda_shift,
        chain: ev.chain,
    })
}

/// `τ(𝔞^t)` straight from the chain, without Skoda reduction.
pub fn tau_without_skoda(i: &Ideal, t: &TRational, opts: &TauOptions) -> Result<TauResult> {
    check_prime(i, t)?;
    let ev = evaluate(i, &t.value(), opts, false, true)?;
    Ok(TauResult {
        tau: ev.tau,
        t: *t,
        e_stable: ev.e_stable,
        certification: ev.certification,
        skoda_shift: 0,
        chain: ev.chain,
    })
}

/// `τ(𝔞^t)` from Skoda reduction and the chain alone, never consulting the
/// lattice-point formula.
pub fn tau_from_chain(i: &Ideal, t: &TRational, opts: &TauOptions) -> Result<TauResult> {
    check_prime(i, t)?;
    let ev = evaluate(i, &t.value(), opts, true, false)?;
    Ok(TauResult {
        tau: ev.tau,
        t: *t,
        e_stable: ev.e_stable,
        certification: ev.certification,
        skoda_shift: ev.skoda_shift,
        chain: ev.chain,
    })
}

fn check_prime(i: &Ideal, t: &TRational) -> Result<()> {
    if i.ring().p() != t.p() {
        return Err(Error::InvalidArgument(format!(
            "exponent built for p={} used in a ring of characteristic {}",
            t.p(),
            i.ring().p()
        )));
    }
    Ok(())
}

fn evaluate(
    i: &Ideal,
    t: &Rational,
    opts: &TauOptions,
    skoda: bool,
    check_oracle: bool,
) -> Result<Evaluation> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if *t.numer() < 0 {
        return Err(Error::InvalidArgument("t must be nonnegative".into()));
    }
    let r = i.num_generators() as i64;
    let shift = if skoda && *t >= Rational::from_integer(r) {
        (t.to_integer() - r + 1) as u64
    } else {
        0
    };
    let reduced = t - Rational::from_integer(shift as i64);
    let mut ev = chain(i, &reduced, opts)?;
    if shift > 0 {
        ev.tau = i.power(shift)?.product(&ev.tau)?.minimalized();
        ev.skoda_shift = shift;
    }
    if check_oracle && i.is_monomial() {
        let oracle = monomial_tau_oracle(i, t)?;
        if oracle != ev.tau {
            return Err(Error::OracleMismatch {
                t: format_rational(t),
                computed: ev.tau.to_string(),
                oracle: oracle.to_string(),
            });
        }
        ev.certification = Certification::OracleExact;
    }
    Ok(ev)
}

fn chain(i: &Ideal, t: &Rational, opts: &TauOptions) -> Result<Evaluation> {
    let p = i.ring().p();
    let r = i.num_generators() as u64;
    let mut lower: Vec<Ideal> = Vec::new();
    let mut plateau_start = 1u32;
    for e in 1..=opts.e_max {
        let j = root_of_power(i, ceil_times_pe(t, p, e)?, e)?;
        if let Some(prev) = lower.last() {
            if !j.contains(prev)? {
                return Err(Error::ChainNotAscending { e: e - 1, next: e });
            }
            if *prev != j {
                plateau_start = e;
            }
        }
        lower.push(j.clone());
        let upper_exp = (floor_times_pe(t, p, e)? + 1).saturating_sub(r);
        let u = root_of_power(i, upper_exp, e)?;
        if !u.contains(&j)? {
            return Err(Error::Inconsistent(format!(
                "lower bound {j} not inside upper bound {u} at e={e}"
            )));
        }
        if u == j {
            return Ok(Evaluation {
                tau: j,
                e_stable: plateau_start,
                certification: Certification::BoundsMeet,
                skoda_shift: 0,
                chain: lower,
            });
        }
    }
    let unstable = |lower: Vec<Ideal>| Error::Unstabilized {
        t: format_rational(t),
        e_max: opts.e_max,
        partial_chain: lower,
    };
    if opts.e_max + 1 - plateau_start <= opts.k {
        return Err(unstable(lower));
    }
    let candidate = lower.last().unwrap().clone();
    for b in 1..=opts.b {
        if !compatible(&candidate, i, t, b)? {
            return Err(unstable(lower));
        }
    }
    let certification = if opts.b > 0 {
        Certification::ChainStableAndCompatible {
            k: opts.k,
            b: opts.b,
        }
    } else {
        Certification::ChainStable { k: opts.k }
    };
    Ok(Evaluation {
        tau: candidate,
        e_stable: plateau_start,
        certification,
        skoda_shift: 0,
        chain: lower,
    })
}

fn compatible(j: &Ideal, i: &Ideal, t: &Rational, b: u32) -> Result<bool> {
    let pb = i.ring().p_pow(b)?;
    let n = ceil_times(t, pb - 1)?;
    let image = root_of_power_product(j, i, n, b)?;
    j.contains(&image)
}

/// Whether `(𝔞^⌈t(p^b-1)⌉ · J)^[1/p^b] ⊆ J`.
pub fn certify_compatible(j: &Ideal, i: &Ideal, t: &TRational, b: u32) -> Result<bool> {
    check_prime(i, t)?;
    if j.is_zero() || i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    compatible(j, i, &t.value(), b)
}

#[derive(Clone, Debug)]
pub struct SkodaReport {
    /// `τ(𝔞^(m+s))`.
    pub lhs: Ideal,
    /// `𝔞·τ(𝔞^(m-1+s))`.
    pub rhs: Ideal,
    pub lhs_in_rhs: bool,
    pub rhs_in_lhs: bool,
}

impl SkodaReport {
    pub fn holds(&self) -> bool {
        self.lhs_in_rhs && self.rhs_in_lhs
    }
}

/// Compares `τ(𝔞^(m+s))` with `𝔞·τ(𝔞^(m-1+s))`, both computed from the chain
/// without Skoda reduction. `s` defaults to zero.
pub fn skoda_verify(
    i: &Ideal,
    m: u64,
    offset: Option<Rational>,
    opts: &TauOptions,
) -> Result<SkodaReport> {
    let r = i.num_generators() as u64;
    if m < r {
        return Err(Error::InvalidArgument(format!(
            "m = {m} is below the generator count {r}"
        )));
    }
    let s = offset.unwrap_or_else(|| Rational::from_integer(0));
    if *s.numer() < 0 {
        return Err(Error::InvalidArgument("offset must be nonnegative".into()));
    }
    let lhs = evaluate(
        i,
        &(s + Rational::from_integer(m as i64)),
        opts,
        false,
        true,
    )?
    .tau;
    let inner = evaluate(
        i,
        &(s + Rational::from_integer(m as i64 - 1)),
        opts,
        false,
        true,
    )?
    .tau;
    let rhs = i.product(&inner)?.minimalized();
    Ok(SkodaReport {
        lhs_in_rhs: rhs.contains(&lhs)?,
        rhs_in_lhs: lhs.contains(&rhs)?,
        lhs,
        rhs,
    })
}
