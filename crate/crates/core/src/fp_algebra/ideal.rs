use std::fmt;
use std::sync::OnceLock;

use super::groebner::{minimal_monomials, normal_form, reduced_groebner_basis};
use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// An ideal given by generators, with a lazily computed reduced Gröbner basis.
///
/// Equality is equality of reduced Gröbner bases.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Product,
    Power(u64),
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        if gens.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal::from_checked(ring, gens))
    }

    fn from_checked(ring: &Ring, gens: Vec<Poly>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    /// An ideal whose generators are already its reduced Gröbner basis.
    fn from_basis(ring: &Ring, basis: Vec<Poly>) -> Ideal {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        Ideal {
            ring: ring.clone(),
            gens: basis,
            gb,
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_basis(ring, vec![Poly::one(ring)])
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_basis(ring, Vec::new())
    }

    pub fn from_monomials(ring: &Ring, monos: impl IntoIterator<Item = Monomial>) -> Ideal {
        let gens = monos.into_iter().map(|m| Poly::term(ring, m, 1)).collect();
        Ideal::from_checked(ring, gens)
    }

    /// Monomial ideal from exponent vectors.
    pub fn from_exponents(ring: &Ring, exps: &[Vec<u64>]) -> Result<Ideal> {
        let monos = exps
            .iter()
            .map(|e| Monomial::from_exps(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_monomials(ring, monos))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn groebner(&self) -> &[Poly] {
        self.gb
            .get_or_init(|| reduced_groebner_basis(&self.ring, &self.gens))
    }

    /// Same ideal, with the reduced Gröbner basis as its generators.
    pub fn minimalized(&self) -> Ideal {
        Ideal::from_basis(&self.ring, self.groebner().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner();
        gb.len() == 1 && gb[0].is_constant()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Poly::is_monomial)
    }

    /// Exponents of the generators when every generator is a monomial.
    pub fn monomial_generators(&self) -> Result<Vec<Monomial>> {
        self.gens
            .iter()
            .map(|g| {
                if g.is_monomial() {
                    Ok(g.terms()[0].0)
                } else {
                    Err(Error::NotMonomial(g.to_string()))
                }
            })
            .collect()
    }

    pub fn contains_poly(&self, f: &Poly) -> bool {
        normal_form(f, self.groebner()).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        if self.is_unit() {
            return Ok(true);
        }
        Ok(other.gens.iter().all(|g| self.contains_poly(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner() == other.groebner())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::from_checked(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.checked_mul(g)?);
            }
        }
        dedup(&mut gens);
        Ok(Ideal::from_checked(&self.ring, gens))
    }

    /// All products `f_1^a_1 ⋯ f_r^a_r` with `a_1 + ⋯ + a_r = k`.
    pub fn power(&self, k: u64) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let mut gens = Vec::new();
        power_products(&self.gens, k, Poly::one(&self.ring), &mut gens)?;
        dedup(&mut gens);
        Ok(Ideal::from_checked(&self.ring, gens))
    }

    pub fn combine(&self, kind: Combine, other: Option<&Ideal>) -> Result<Ideal> {
        let need =
            || other.ok_or_else(|| Error::InvalidArgument("second ideal required".to_string()));
        match kind {
            Combine::Sum => self.sum(need()?),
            Combine::Product => self.product(need()?),
            Combine::Power(k) => self.power(k),
        }
    }

    /// The ideal generated by `g^(p^e)` for every generator `g`.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::from_checked(&self.ring, gens))
    }

    /// Canonical generator strings (the reduced Gröbner basis).
    pub fn canonical_strings(&self) -> Vec<String> {
        self.groebner().iter().map(Poly::to_string).collect()
    }

    /// Minimal monomial generators of a monomial ideal.
    pub fn minimal_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(minimal_monomials(self.monomial_generators()?))
    }
}

fn dedup(gens: &mut Vec<Poly>) {
    let mut seen = std::collections::HashSet::new();
    gens.retain(|g| seen.insert(g.clone()));
}

fn power_products(gens: &[Poly], k: u64, acc: Poly, out: &mut Vec<Poly>) -> Result<()> {
    if k == 0 {
        out.push(acc);
        return Ok(());
    }
    if gens.len() == 1 {
        out.push(acc.checked_mul(&gens[0].checked_pow(k)?)?);
        return Ok(());
    }
    let mut cur = acc;
    for a in 0..=k {
        power_products(&gens[1..], k - a, cur.clone(), out)?;
        if a < k {
            cur = cur.checked_mul(&gens[0])?;
        }
    }
    Ok(())
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(Poly::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn ideal_contains(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.contains(j)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn ideal_combine(kind: Combine, i: &Ideal, j: Option<&Ideal>) -> Result<Ideal> {
    i.combine(kind, j)
}

pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal> {
    i.bracket_power(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::grevlex(5, &["x", "y"]).unwrap()
    }

    fn mono(r: &Ring, e: &[u64]) -> Poly {
        Poly::monomial(r, e).unwrap()
    }

    #[test]
    fn power_examples() {
        let r = ring();
        let m = Ideal::new(&r, vec![mono(&r, &[1, 0]), mono(&r, &[0, 1])]).unwrap();
        let sq = m.power(2).unwrap();
        let expect = Ideal::from_exponents(&r, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.num_generators(), 3);
        let cusp = Ideal::from_exponents(&r, &[vec![2, 0], vec![0, 3]]).unwrap();
        let expect = Ideal::from_exponents(&r, &[vec![4, 0], vec![2, 3], vec![0, 6]]).unwrap();
        assert_eq!(cusp.power(2).unwrap(), expect);
        assert!(cusp.power(0).unwrap().is_unit());
    }

    #[test]
    fn containment_examples() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let i = Ideal::new(&r, vec![x.mul(&x).add(&y), y.clone()]).unwrap();
        let j = Ideal::new(&r, vec![x.mul(&x)]).unwrap();
        assert!(i.contains(&j).unwrap());
        assert!(!j
            .contains(&Ideal::new(&r, vec![x.clone()]).unwrap())
            .unwrap());
        let m = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        assert!(m
            .contains(&Ideal::new(&r, vec![x.add(&y)]).unwrap())
            .unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let a = Ideal::unit(&ring());
        let b = Ideal::unit(&Ring::grevlex(7, &["x", "y"]).unwrap());
        assert!(matches!(a.contains(&b), Err(Error::RingMismatch)));
    }

    #[test]
    fn bracket_examples() {
        let r2 = Ring::grevlex(2, &["x", "y"]).unwrap();
        let f = Poly::var(&r2, 0).add(&Poly::var(&r2, 1));
        let b = Ideal::new(&r2, vec![f]).unwrap().bracket_power(1).unwrap();
        assert_eq!(b.generators()[0].to_string(), "x^2 + y^2");
        let r3 = Ring::grevlex(3, &["x", "y"]).unwrap();
        let m = Ideal::new(&r3, vec![Poly::var(&r3, 0), Poly::var(&r3, 1)]).unwrap();
        let expect = Ideal::from_exponents(&r3, &[vec![3, 0], vec![0, 3]]).unwrap();
        assert_eq!(m.bracket_power(1).unwrap(), expect);
    }
}
