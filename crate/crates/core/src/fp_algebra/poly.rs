use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};

/// Sparse polynomial over F_p. Terms are kept sorted in strictly descending
/// monomial order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i128) -> Poly {
        Poly::term(ring, Monomial::one(), c)
    }

    pub fn term(ring: &Ring, m: Monomial, c: i128) -> Poly {
        let c = ring.reduce_i128(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(i, 1), 1)
    }

    pub fn monomial(ring: &Ring, exps: &[u64]) -> Result<Poly> {
        Ok(Poly::term(ring, Monomial::from_exps(exps)?, 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut v: Vec<(Monomial, Coeff)> = terms.into_iter().collect();
        Poly::normalize(ring, &mut v);
        Poly {
            ring: ring.clone(),
            terms: v,
        }
    }

    fn normalize(ring: &Ring, v: &mut Vec<(Monomial, Coeff)>) {
        v.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(v.len());
        for (m, c) in v.drain(..) {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = ring.add(last.1, c % ring.p()),
                _ => out.push((m, c % ring.p())),
            }
        }
        out.retain(|t| t.1 != 0);
        *v = out;
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<Coeff> {
        self.terms.first().map(|t| t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|t| &t.0 == m)
            .map(|t| t.1)
            .unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.inv(c)),
        }
    }

    pub fn scale(&self, c: Coeff) -> Poly {
        let c = c % self.ring.p();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m, self.ring.mul(a, c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m, self.ring.neg(a)))
                .collect(),
        }
    }

    /// Multiplies by `c * m`; the term order is preserved by multiplication.
    pub fn checked_mul_term(&self, m: &Monomial, c: Coeff) -> Result<Poly> {
        let c = c % self.ring.p();
        if c == 0 {
            return Ok(Poly::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(t, a) in &self.terms {
            terms.push((t.checked_mul(m)?, self.ring.mul(a, c)));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul_term(&self, m: &Monomial, c: Coeff) -> Poly {
        self.checked_mul_term(m, c)
            .expect("monomial exponent overflow")
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Poly, m: &Monomial, c: Coeff) -> Poly {
        let ring = &self.ring;
        let c = c % ring.p();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|&(t, x)| (t.mul(m), ring.mul(x, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ma, ca)), Some(&(mb, cb))) => match ring.cmp_monomials(&ma, &mb) {
                    Ordering::Greater => {
                        out.push((ma, ca));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((mb, cb));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = ring.add(ca, cb);
                        if s != 0 {
                            out.push((ma, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&t)) => {
                    out.push(t);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Monomial::one(), 1)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Monomial::one(), self.ring.p() - 1)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms[0];
            return big.checked_mul_term(&m, c);
        }
        let mut v = Vec::with_capacity(small.len() * big.len());
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &big.terms {
                v.push((ma.checked_mul(&mb)?, self.ring.mul(ca, cb)));
            }
        }
        Ok(Poly::from_terms(&self.ring, v))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, k: u64) -> Result<Poly> {
        if k == 0 {
            return Ok(Poly::one(&self.ring));
        }
        if self.is_monomial() {
            let (m, c) = self.terms[0];
            return Ok(Poly {
                ring: self.ring.clone(),
                terms: vec![(m.checked_pow(k)?, self.ring.pow(c, k))],
            });
        }
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Frobenius power `f^(p^e)`: exponents scale by `p^e`, coefficients are fixed.
    pub fn frobenius_power(&self, e: u32) -> Result<Poly> {
        let q = self.ring.p_pow(e)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            terms.push((m.checked_pow(q)?, c));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Same polynomial viewed in a ring with identical `p` and variables but
    /// possibly a different order.
    pub fn to_ring(&self, ring: &Ring) -> Poly {
        Poly::from_terms(ring, self.terms.iter().copied())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (*c, m.is_one()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", m.render(names))?,
                (c, false) => write!(f, "{c}*{}", m.render(names))?,
            }
        }
        Ok(())
    }
}
