//! Frobenius roots `I^[1/p^e]` and the trace map on the canonical module
//! `ω = R·dx_1∧⋯∧dx_n` of affine space.
//!
//! Roots of large powers `(b·𝔞^N)^[1/p^e]` are computed without expanding
//! `𝔞^N`: writing every monomial `f^α` in the generators as
//! `f^s·(f^q)^p` with `s = α mod p` gives
//! `(b·𝔞^k)^[1/p] = Σ_s (b·f^s)^[1/p] · 𝔞^((k-|s|)/p)`,
//! the sum running over `s ∈ [0,p-1]^r` with `|s| ≤ k` and `|s| ≡ k (mod p)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::{Ideal, Monomial, Poly, Ring};

/// `f = Σ_v g_v^(p^e)·x^v` with residues `v` in `[0, p^e-1]^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeDecomposition {
    pub e: u32,
    pub components: BTreeMap<Monomial, Poly>,
}

impl PeDecomposition {
    pub fn reassemble(&self, ring: &Ring) -> Result<Poly> {
        let mut acc = Poly::zero(ring);
        for (v, g) in &self.components {
            acc = acc.add(&g.frobenius_power(self.e)?.checked_mul_term(v, 1)?);
        }
        Ok(acc)
    }
}

pub fn pe_adic_components(f: &Poly, e: u32) -> Result<PeDecomposition> {
    let ring = f.ring();
    let q = ring.p_pow(e)?;
    let mut buckets: BTreeMap<Monomial, Vec<(Monomial, u64)>> = BTreeMap::new();
    for &(m, c) in f.terms() {
        let (quo, rem) = m.div_rem(q);
        buckets.entry(rem).or_default().push((quo, c));
    }
    let components = buckets
        .into_iter()
        .map(|(v, terms)| (v, Poly::from_terms(ring, terms)))
        .collect();
    Ok(PeDecomposition { e, components })
}

fn root_generators(gens: &[Poly], e: u32, out: &mut Vec<Poly>) -> Result<()> {
    for g in gens {
        for comp in pe_adic_components(g, e)?.components.into_values() {
            out.push(comp.monic());
        }
    }
    Ok(())
}

/// The smallest ideal `J` with `I ⊆ J^[p^e]`.
pub fn frobenius_root(i: &Ideal, e: u32) -> Result<Ideal> {
    let mut gens = Vec::new();
    root_generators(i.generators(), e, &mut gens)?;
    gens.sort_by(|a, b| crate::fp_algebra::cmp_polys(i.ring(), a, b));
    gens.dedup();
    Ideal::new(i.ring(), gens)
}

/// The submodule `ideal_part · ω` of the canonical module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaModule {
    pub ideal_part: Ideal,
}

impl OmegaModule {
    pub fn new(ideal_part: Ideal) -> OmegaModule {
        OmegaModule { ideal_part }
    }
}

impl fmt::Display for OmegaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·ω", self.ideal_part)
    }
}

/// `Tr^e(F^e_*(I·ω)) = I^[1/p^e]·ω`.
pub fn trace_image_omega(m: &OmegaModule, e: u32) -> Result<OmegaModule> {
    Ok(OmegaModule::new(frobenius_root(&m.ideal_part, e)?))
}

/// One trace step on a top form `x^i dx` in `n` variables: nonzero only when
/// every `i_j ≡ -1 (mod p)`, in which case it is `x^((i-p+1)/p) dx`.
pub fn trace_monomial_form(m: &Monomial, n: usize, p: u64) -> Option<Monomial> {
    let live = m.exps(n);
    if live.iter().all(|&x| x % p == p - 1) {
        let down: Vec<u64> = live.iter().map(|x| x / p).collect();
        Some(Monomial::from_exps(&down).expect("within bounds"))
    } else {
        None
    }
}

fn trace_form(f: &Poly, n: usize, e: u32) -> Poly {
    let ring = f.ring();
    let mut cur = f.clone();
    for _ in 0..e {
        let terms: Vec<_> = cur
            .terms()
            .iter()
            .filter_map(|(m, c)| trace_monomial_form(m, n, ring.p()).map(|t| (t, *c)))
            .collect();
        cur = Poly::from_terms(ring, terms);
    }
    cur
}

/// Trace image computed from the monomial trace formula applied to every
/// translate `x^u·g` (`u < p^e`) that has a surviving term; the remaining
/// translates have zero image.
pub fn trace_image_omega_by_formula(m: &OmegaModule, e: u32) -> Result<OmegaModule> {
    let ring = m.ideal_part.ring();
    let n = ring.n();
    let q = ring.p_pow(e)?;
    let mut gens = Vec::new();
    for g in m.ideal_part.generators() {
        let mut shifts: Vec<Monomial> = g
            .terms()
            .iter()
            .map(|(t, _)| {
                let u: Vec<u64> = t.exps(n).iter().map(|&x| q - 1 - x % q).collect();
                Monomial::from_exps(&u).expect("within bounds")
            })
            .collect();
        shifts.sort();
        shifts.dedup();
        for u in shifts {
            let image = trace_form(&g.checked_mul_term(&u, 1)?, n, e);
            if !image.is_zero() {
                gens.push(image);
            }
        }
    }
    Ok(OmegaModule::new(Ideal::new(ring, gens)?))
}

/// `(base · I^n)^[1/p^e]`, without expanding `I^n`.
pub fn root_of_power_product(base: &Ideal, i: &Ideal, n: u64, e: u32) -> Result<Ideal> {
    let ring = i.ring();
    if base.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if i.is_zero() && n > 0 || base.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let gens = i.generators();
    let p = ring.p();
    let mut powers = PowerTable::new(gens);
    let mut state: BTreeMap<u64, Ideal> = BTreeMap::new();
    state.insert(n, base.minimalized());
    for _ in 0..e {
        if state.get(&0).is_some_and(Ideal::is_unit) {
            return Ok(Ideal::unit(ring));
        }
        let mut next: BTreeMap<u64, Vec<Poly>> = BTreeMap::new();
        for (&k, b) in &state {
            for s in exponent_vectors(gens.len(), p - 1, k, p) {
                let total: u64 = s.iter().sum();
                let fs = powers.get(&s)?;
                let target = next.entry((k - total) / p).or_default();
                for g in b.generators() {
                    root_generators(&[g.checked_mul(fs)?], 1, target)?;
                }
            }
        }
        state = next
            .into_iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, v)| Ideal::new(ring, v).map(|j| (k, j.minimalized())))
            .collect::<Result<_>>()?;
    }
    let mut acc = Ideal::zero(ring);
    for (&k, b) in &state {
        if b.is_unit() && k == 0 {
            return Ok(Ideal::unit(ring));
        }
        acc = acc.sum(&b.product(&i.power(k)?)?)?;
    }
    Ok(acc.minimalized())
}

/// `(I^n)^[1/p^e]`.
pub fn root_of_power(i: &Ideal, n: u64, e: u32) -> Result<Ideal> {
    root_of_power_product(&Ideal::unit(i.ring()), i, n, e)
}

/// Vectors `s ∈ [0, cap]^r` with `|s| ≤ k` and `|s| ≡ k (mod p)`.
fn exponent_vectors(r: usize, cap: u64, k: u64, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; r];
    fn rec(
        idx: usize,
        sum: u64,
        cap: u64,
        k: u64,
        p: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if idx == cur.len() {
            if sum <= k && (k - sum).is_multiple_of(p) {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=cap {
            if sum + a > k {
                break;
            }
            cur[idx] = a;
            rec(idx + 1, sum + a, cap, k, p, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, 0, cap, k, p, &mut cur, &mut out);
    out
}

struct PowerTable<'a> {
    gens: &'a [Poly],
    single: HashMap<(usize, u64), Poly>,
    products: HashMap<Vec<u64>, Poly>,
}

impl<'a> PowerTable<'a> {
    fn new(gens: &'a [Poly]) -> PowerTable<'a> {
        PowerTable {
            gens,
            single: HashMap::new(),
            products: HashMap::new(),
        }
    }

    fn get(&mut self, s: &[u64]) -> Result<&Poly> {
        if !self.products.contains_key(s) {
            let mut acc = Poly::one(self.gens[0].ring());
            for (idx, &a) in s.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !self.single.contains_key(&(idx, a)) {
                    let pw = self.gens[idx].checked_pow(a)?;
                    self.single.insert((idx, a), pw);
                }
                acc = acc.checked_mul(&self.single[&(idx, a)])?;
            }
            self.products.insert(s.to_vec(), acc);
        }
        Ok(&self.products[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_algebra::{parse_ideal, parse_poly, parse_ring, MonomialOrder};

    fn ring(p: u64, vars: &str) -> Ring {
        parse_ring(&format!("F{p}[{vars}]"), MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn components_example() {
        let r = ring(2, "x,y");
        let f = parse_poly(&r, "x^3*y^2 + x").unwrap();
        let d = pe_adic_components(&f, 1).unwrap();
        assert_eq!(d.components.len(), 1);
        let (v, g) = d.components.iter().next().unwrap();
        assert_eq!(v.exps(2), &[1, 0]);
        assert_eq!(g.to_string(), "x*y + 1");
        assert_eq!(d.reassemble(&r).unwrap(), f);
    }

    #[test]
    fn root_examples() {
        let r = ring(3, "x");
        let i = parse_ideal(&r, "x^20").unwrap();
        assert_eq!(
            frobenius_root(&i, 2).unwrap(),
            parse_ideal(&r, "x^2").unwrap()
        );
        assert!(frobenius_root(&parse_ideal(&r, "x^2").unwrap(), 1)
            .unwrap()
            .is_unit());
        let r2 = ring(2, "x,y");
        let i = parse_ideal(&r2, "x^3*y^2 + x").unwrap();
        assert_eq!(
            frobenius_root(&i, 1).unwrap(),
            parse_ideal(&r2, "x*y + 1").unwrap()
        );
    }

    #[test]
    fn trace_examples_both_paths() {
        let r = ring(2, "x,y");
        let cases = [("x*y", "1"), ("x^2*y^2", "x*y")];
        for (src, dst) in cases {
            let m = OmegaModule::new(parse_ideal(&r, src).unwrap());
            let want = OmegaModule::new(parse_ideal(&r, dst).unwrap());
            assert_eq!(trace_image_omega(&m, 1).unwrap(), want);
            assert_eq!(trace_image_omega_by_formula(&m, 1).unwrap(), want);
        }
        let r1 = ring(2, "x");
        let m = OmegaModule::new(parse_ideal(&r1, "x^3").unwrap());
        assert_eq!(
            trace_image_omega_by_formula(&m, 1).unwrap().ideal_part,
            parse_ideal(&r1, "x").unwrap()
        );
    }

    #[test]
    fn monomial_trace_formula() {
        let m = Monomial::from_exps(&[1, 3]).unwrap();
        assert_eq!(
            trace_monomial_form(&m, 2, 2),
            Some(Monomial::from_exps(&[0, 1]).unwrap())
        );
        assert_eq!(
            trace_monomial_form(&Monomial::from_exps(&[2, 1]).unwrap(), 2, 2),
            None
        );
    }

    #[test]
    fn root_of_power_matches_naive() {
        let r = ring(3, "x,y");
        let i = parse_ideal(&r, "x^2 + y, x*y^2").unwrap();
        for n in 0..9 {
            for e in 1..3 {
                let naive = frobenius_root(&i.power(n).unwrap(), e).unwrap();
                assert_eq!(root_of_power(&i, n, e).unwrap(), naive, "n={n} e={e}");
            }
        }
        let base = parse_ideal(&r, "x + y^2").unwrap();
        let naive = frobenius_root(&base.product(&i.power(5).unwrap()).unwrap(), 2).unwrap();
        assert_eq!(root_of_power_product(&base, &i, 5, 2).unwrap(), naive);
    }
}
