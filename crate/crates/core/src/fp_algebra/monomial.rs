use super::ring::MAX_VARS;
use crate::error::{Error, Result};

/// Exponent vector; unused trailing slots are zero.
///
/// The derived `Ord` is the raw lexicographic order on exponent arrays and is
/// only meant for container keys. Use `MonomialOrder::cmp` for term orders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u64; MAX_VARS],
    degree: u64,
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("monomial {what}"))
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn from_exps(exps: &[u64]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_VARS} exponents allowed"
            )));
        }
        let mut m = Monomial::default();
        let mut degree = 0u64;
        for (slot, &x) in m.exps.iter_mut().zip(exps) {
            *slot = x;
            degree = degree.checked_add(x).ok_or_else(|| overflow("degree"))?;
        }
        m.degree = degree;
        Ok(m)
    }

    pub fn var(i: usize, power: u64) -> Monomial {
        let mut m = Monomial::default();
        m.exps[i] = power;
        m.degree = power;
        m
    }

    pub fn exps_raw(&self) -> &[u64; MAX_VARS] {
        &self.exps
    }

    pub fn exps(&self, n: usize) -> &[u64] {
        &self.exps[..n]
    }

    pub fn get(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .ok_or_else(|| overflow("product"))?;
        }
        m.degree = self
            .degree
            .checked_add(other.degree)
            .ok_or_else(|| overflow("degree"))?;
        Ok(m)
    }

    /// Product for callers that already bounded the exponents.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i]
                .checked_mul(k)
                .ok_or_else(|| overflow("power"))?;
        }
        m.degree = self
            .degree
            .checked_mul(k)
            .ok_or_else(|| overflow("degree"))?;
        Ok(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        m.degree = other.degree - self.degree;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
        }
        m.degree = m.exps.iter().sum();
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Splits exponents as `q * self_div + r` componentwise with `0 <= r < q`.
    pub fn div_rem(&self, q: u64) -> (Monomial, Monomial) {
        let mut quo = Monomial::default();
        let mut rem = Monomial::default();
        for i in 0..MAX_VARS {
            quo.exps[i] = self.exps[i] / q;
            rem.exps[i] = self.exps[i] % q;
        }
        quo.degree = quo.exps.iter().sum();
        rem.degree = rem.exps.iter().sum();
        (quo, rem)
    }

    /// Writes the monomial as `x^2*y`; the empty product is `1`.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| self.exps[*i] > 0)
            .map(|(i, name)| match self.exps[i] {
                1 => name.clone(),
                k => format!("{name}^{k}"),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exps(&[2, 1]).unwrap();
        let b = Monomial::from_exps(&[3, 1, 4]).unwrap();
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_exps(&[1, 0, 4]).unwrap());
        assert_eq!(a.lcm(&Monomial::var(2, 1)).degree(), 4);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Monomial::var(0, u64::MAX / 2 + 1);
        assert!(a.checked_mul(&a).is_err());
        assert!(a.checked_pow(2).is_err());
    }

    #[test]
    fn div_rem_splits() {
        let (q, r) = Monomial::from_exps(&[7, 2]).unwrap().div_rem(3);
        assert_eq!(q.exps(2), &[2, 0]);
        assert_eq!(r.exps(2), &[1, 2]);
    }
}
