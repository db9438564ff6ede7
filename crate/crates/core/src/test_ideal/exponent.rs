use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

/// `t = a / (p^b (p^c - 1))` with `b ≥ 0` and `c ≥ 1` minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PForm {
    pub a: u128,
    pub b: u32,
    pub c: u32,
}

/// A positive rational exponent together with its decomposition for a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TRational {
    value: Rational,
    p: u64,
    pform: PForm,
}

pub fn rational_pform(num: u64, den: u64, p: u64) -> Result<PForm> {
    if num == 0 || den == 0 {
        return Err(Error::InvalidArgument("t must be positive".to_string()));
    }
    if num.gcd(&den) != 1 {
        return Err(Error::InvalidArgument(format!(
            "{num}/{den} is not in lowest terms"
        )));
    }
    let mut m = den;
    let mut b = 0u32;
    while m.is_multiple_of(p) {
        m /= p;
        b += 1;
    }
    let mut c = 1u32;
    let mut pc = p as u128 % m as u128;
    if m > 1 {
        while pc != 1 {
            pc = pc * p as u128 % m as u128;
            c += 1;
        }
    }
    let overflow = || Error::Overflow(format!("p-form of {num}/{den} at p={p}"));
    let full = (p as u128).checked_pow(c).ok_or_else(overflow)? - 1;
    let a = (num as u128)
        .checked_mul(full / m as u128)
        .ok_or_else(overflow)?;
    Ok(PForm { a, b, c })
}

impl TRational {
    pub fn new(num: u64, den: u64, p: u64) -> Result<TRational> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument("t must be positive".to_string()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        if num > i64::MAX as u64 || den > i64::MAX as u64 {
            return Err(Error::Overflow("exponent too large".to_string()));
        }
        Ok(TRational {
            value: Rational::new(num as i64, den as i64),
            p,
            pform: rational_pform(num, den, p)?,
        })
    }

    pub fn from_rational(value: Rational, p: u64) -> Result<TRational> {
        if !value.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "t = {value} must be positive"
            )));
        }
        TRational::new(*value.numer() as u64, *value.denom() as u64, p)
    }

    pub fn integer(k: u64, p: u64) -> Result<TRational> {
        TRational::new(k, 1, p)
    }

    pub fn value(&self) -> Rational {
        self.value
    }

    pub fn num(&self) -> u64 {
        *self.value.numer() as u64
    }

    pub fn den(&self) -> u64 {
        *self.value.denom() as u64
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn pform(&self) -> PForm {
        self.pform
    }
}

impl fmt::Display for TRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

/// `a/b`, or `a` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b` or an integer; rejects decimals and other syntax.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || {
        Error::InvalidArgument(format!(
            "`{s}` is not an exact rational `a/b` or integer (irrational or decimal exponents must be replaced by a rational approximation)"
        ))
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn p_pow_i128(p: u64, e: u32) -> Result<i128> {
    (p as i128)
        .checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

/// `⌈r · p^e⌉` for `r ≥ 0`.
pub fn ceil_times_pe(r: &Rational, p: u64, e: u32) -> Result<u64> {
    scaled(r, p_pow_i128(p, e)?, true)
}

/// `⌊r · p^e⌋` for `r ≥ 0`.
pub fn floor_times_pe(r: &Rational, p: u64, e: u32) -> Result<u64> {
    scaled(r, p_pow_i128(p, e)?, false)
}

/// `⌈r · k⌉` for `r ≥ 0`.
pub fn ceil_times(r: &Rational, k: u64) -> Result<u64> {
    scaled(r, k as i128, true)
}

fn scaled(r: &Rational, k: i128, ceil: bool) -> Result<u64> {
    let num = (*r.numer() as i128)
        .checked_mul(k)
        .ok_or_else(|| Error::Overflow(format!("{r} times {k}")))?;
    let den = *r.denom() as i128;
    let q = if ceil {
        Integer::div_ceil(&num, &den)
    } else {
        Integer::div_floor(&num, &den)
    };
    u64::try_from(q).map_err(|_| Error::Overflow(format!("{r} times {k}")))
}
