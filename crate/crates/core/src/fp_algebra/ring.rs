use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Coefficients are stored as residues in `[0, p)`.
pub type Coeff = u64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::Grevlex),
            _ => None,
        }
    }

    /// Compares two monomials; `Greater` means `a` is the larger monomial.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps_raw().cmp(b.exps_raw()),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    let (x, y) = (a.exps_raw()[i], b.exps_raw()[i]);
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    p: u64,
    var_names: Vec<String>,
    order: MonomialOrder,
}

/// The polynomial ring F_p[x_1, ..., x_n] with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingData>);

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, var_names: &[S], order: MonomialOrder) -> Result<Ring> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidRing(format!(
                "{p} is not a prime in [2, {MAX_PRIME}]"
            )));
        }
        if var_names.is_empty() || var_names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "number of variables must be between 1 and {MAX_VARS}, got {}",
                var_names.len()
            )));
        }
        let names: Vec<String> = var_names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidRing(format!(
                    "invalid variable name `{name}`"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!(
                    "duplicate variable name `{name}`"
                )));
            }
        }
        Ok(Ring(Arc::new(RingData {
            p,
            var_names: names,
            order,
        })))
    }

    /// Convenience constructor with grevlex order.
    pub fn grevlex<S: AsRef<str>>(p: u64, var_names: &[S]) -> Result<Ring> {
        Ring::new(p, var_names, MonomialOrder::Grevlex)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> usize {
        self.0.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    pub fn reduce_i128(&self, c: i128) -> Coeff {
        c.rem_euclid(self.0.p as i128) as Coeff
    }

    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a + b;
        if s >= self.0.p {
            s - self.0.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.0.p - b
        }
    }

    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.0.p - a
        }
    }

    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        a * b % self.0.p
    }

    pub fn pow(&self, mut a: Coeff, mut k: u64) -> Coeff {
        let mut acc = 1 % self.0.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.0.p - 2)
    }

    /// Checked `p^e`.
    pub fn p_pow(&self, e: u32) -> Result<u64> {
        self.0
            .p
            .checked_pow(e)
            .ok_or_else(|| Error::Overflow(format!("{}^{e} exceeds 64 bits", self.0.p)))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[{}]", self.0.p, self.0.var_names.join(","))
    }
}
