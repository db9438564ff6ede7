//! Buchberger's algorithm with the sugar strategy and the Gebauer–Möller
//! pair update (product and chain criteria).

use std::cmp::Ordering;

use super::monomial::Monomial;
use super::poly::Poly;
use super::ring::Ring;

/// Full normal form of `f` modulo `basis` (every term is reduced).
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    let mut rest = f.clone();
    let mut remainder: Vec<(Monomial, u64)> = Vec::new();
    while let Some(&(lm, lc)) = rest.terms().first() {
        match basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm)))
        {
            Some(g) => {
                let gm = g.leading_monomial().unwrap();
                let c = ring.mul(lc, ring.inv(g.leading_coeff().unwrap()));
                rest = rest.add_scaled(g, &gm.quotient_of(&lm), ring.neg(c));
            }
            None => {
                remainder.push((lm, lc));
                rest = Poly::from_terms(ring, rest.terms()[1..].iter().copied());
            }
        }
    }
    Poly::from_terms(ring, remainder)
}

/// Minimal generators of a monomial ideal, in ascending raw order.
pub fn minimal_monomials(monos: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = monos.into_iter().collect();
    v.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    v.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in v {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort();
    kept
}

/// Deterministic order on polynomials: by leading monomial, then by the full
/// term sequence.
pub fn cmp_polys(ring: &Ring, a: &Poly, b: &Poly) -> Ordering {
    for (ta, tb) in a.terms().iter().zip(b.terms()) {
        let c = ring
            .cmp_monomials(&ta.0, &tb.0)
            .then_with(|| ta.1.cmp(&tb.1));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct State<'r> {
    ring: &'r Ring,
    polys: Vec<Poly>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn lm(&self, i: usize) -> Monomial {
        *self.polys[i].leading_monomial().unwrap()
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.lm(i), self.lm(j));
        let lcm = a.lcm(&b);
        let sugar = (self.sugar[i] + lcm.degree() - a.degree())
            .max(self.sugar[j] + lcm.degree() - b.degree());
        Pair { i, j, lcm, sugar }
    }

    fn insert(&mut self, h: Poly, sugar: u64) {
        let hi = self.polys.len();
        let hm = *h.leading_monomial().unwrap();
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);

        let mut cands: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| self.make_pair(g, hi))
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(c) = cands.pop() {
            let coprime = self.lm(c.i).is_coprime(&hm);
            let dominated = cands
                .iter()
                .chain(kept.iter())
                .any(|o| o.lcm.divides(&c.lcm));
            if coprime || !dominated {
                kept.push(c);
            }
        }
        kept.retain(|c| !self.lm(c.i).is_coprime(&hm));

        let old = std::mem::take(&mut self.pairs);
        for pr in old {
            let lcm_ih = self.lm(pr.i).lcm(&hm);
            let lcm_jh = self.lm(pr.j).lcm(&hm);
            if !hm.divides(&pr.lcm) || lcm_ih == pr.lcm || lcm_jh == pr.lcm {
                self.pairs.push(pr);
            }
        }
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hm.divides(&self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (x, y) = (&self.pairs[a], &self.pairs[b]);
            x.sugar
                .cmp(&y.sugar)
                .then_with(|| ring.cmp_monomials(&x.lcm, &y.lcm))
                .then_with(|| (x.i, x.j).cmp(&(y.i, y.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_poly(&self, pr: &Pair) -> Poly {
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let ring = self.ring;
        let fm = f.leading_monomial().unwrap().quotient_of(&pr.lcm);
        let gm = g.leading_monomial().unwrap().quotient_of(&pr.lcm);
        let cf = ring.inv(f.leading_coeff().unwrap());
        let cg = ring.inv(g.leading_coeff().unwrap());
        f.mul_term(&fm, cf).add_scaled(g, &gm, ring.neg(cg))
    }

    fn active_polys(&self) -> Vec<Poly> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| self.polys[i].clone())
            .collect()
    }
}

/// The reduced Gröbner basis of the ideal generated by `gens`: monic,
/// autoreduced, sorted by descending leading monomial.
pub fn reduced_groebner_basis(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let mut input: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(Poly::monic)
        .collect();
    if input.is_empty() {
        return Vec::new();
    }
    if input.iter().any(Poly::is_constant) {
        return vec![Poly::one(ring)];
    }
    if input.iter().all(Poly::is_monomial) {
        let monos = minimal_monomials(input.iter().map(|g| *g.leading_monomial().unwrap()));
        return finish(
            ring,
            monos.into_iter().map(|m| Poly::term(ring, m, 1)).collect(),
        );
    }
    input.sort_by(|a, b| cmp_polys(ring, a, b));
    input.dedup();

    let mut st = State {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in input {
        let s = f.total_degree();
        st.insert(f, s);
    }
    while let Some(pr) = st.select() {
        let s = st.s_poly(&pr);
        let h = normal_form(&s, &st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Poly::one(ring)];
        }
        st.insert(h.monic(), pr.sugar);
    }
    let basis = st.active_polys();
    finish(ring, autoreduce(ring, basis))
}

fn autoreduce(ring: &Ring, mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by(|a, b| cmp_polys(ring, a, b));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let gm = *g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|k| k.leading_monomial().unwrap().divides(&gm))
        {
            minimal.push(g);
        }
    }
    (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &minimal[i];
            let (lm, lc) = g.terms()[0];
            let tail = Poly::from_terms(ring, g.terms()[1..].iter().copied());
            let lead = Poly::from_terms(ring, [(lm, lc)]);
            lead.add(&normal_form(&tail, &others)).monic()
        })
        .collect()
}

fn finish(ring: &Ring, mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by(|a, b| cmp_polys(ring, b, a));
    basis
}
