//! Newton polyhedra of monomial ideals, the lattice-point formula for their
//! test ideals and jumping numbers, and the toric model of the normalized
//! blowup.

mod hull;
mod toric;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fp_algebra::{Ideal, Monomial, Ring};
use crate::test_ideal::Rational;

pub use toric::{
    blowup_tau_path, blowup_tau_path_explicit, blowup_tau_stabilized, blowup_weights,
    pushforward_monomial_sections, toric_blowup_model, BlowupPath, ToricBlowupModel,
};

/// A facet inequality `⟨u, normal⟩ ≥ level`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub level: u64,
}

impl Facet {
    fn pairing(&self, u: &[u64]) -> u128 {
        u.iter()
            .zip(&self.normal)
            .map(|(&a, &b)| a as u128 * b as u128)
            .sum()
    }

    /// `⟨u + 𝟙, normal⟩`.
    fn shifted_pairing(&self, u: &[u64]) -> u128 {
        self.pairing(u) + self.normal.iter().map(|&b| b as u128).sum::<u128>()
    }

    fn is_coordinate(&self) -> bool {
        self.normal.iter().filter(|&&x| x != 0).count() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub n: usize,
    pub exponents: Vec<Vec<u64>>,
    /// Facets in lexicographic order of normals, without the `u_j ≥ 0` ones.
    pub facets: Vec<Facet>,
    pub vertices: Vec<Vec<u64>>,
    all_facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn contains(&self, u: &[u64]) -> bool {
        self.all_facets
            .iter()
            .all(|f| f.pairing(u) >= f.level as u128)
    }

    /// Facets with positive level; these cut out `t·P` for every `t > 0`.
    pub fn bounded_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.level > 0)
    }

    pub fn all_facets(&self) -> &[Facet] {
        &self.all_facets
    }

    fn max_degrees(&self) -> Vec<u64> {
        (0..self.n)
            .map(|j| self.exponents.iter().map(|g| g[j]).max().unwrap_or(0))
            .collect()
    }
}

fn monomial_exponents(i: &Ideal) -> Result<Vec<Vec<u64>>> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = i.ring().n();
    Ok(i.monomial_generators()?
        .into_iter()
        .map(|m| m.exps(n).to_vec())
        .collect())
}

pub fn newton_polyhedron(i: &Ideal) -> Result<NewtonPolyhedron> {
    let n = i.ring().n();
    let exponents = monomial_exponents(i)?;
    let points: Vec<Vec<i64>> = exponents
        .iter()
        .map(|g| {
            g.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("exponent".into())))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut all_facets: Vec<Facet> = hull::facets(&points, n)
        .into_iter()
        .map(|(v, c)| Facet {
            normal: v.into_iter().map(|x| x as u64).collect(),
            level: c as u64,
        })
        .collect();
    all_facets.sort();
    let facets: Vec<Facet> = all_facets
        .iter()
        .filter(|f| !(f.is_coordinate() && f.level == 0))
        .cloned()
        .collect();
    let mut vertices: Vec<Vec<u64>> = exponents
        .iter()
        .filter(|g| {
            let tight: Vec<Vec<i64>> = all_facets
                .iter()
                .filter(|f| f.pairing(g) == f.level as u128)
                .map(|f| f.normal.iter().map(|&x| x as i64).collect())
                .collect();
            hull::rank(&tight) == n
        })
        .cloned()
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(NewtonPolyhedron {
        n,
        exponents,
        facets,
        vertices,
        all_facets,
    })
}

const MAX_BOX: u128 = 50_000_000;

/// Minimal lattice points of an upward-closed region, searched inside the box
/// `0 ≤ u ≤ bounds`.
pub(crate) fn minimal_points(
    bounds: &[u64],
    member: impl Fn(&[u64]) -> bool,
) -> Result<Vec<Vec<u64>>> {
    let size = bounds
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
        .unwrap_or(u128::MAX);
    if size > MAX_BOX {
        return Err(Error::InvalidArgument(format!(
            "lattice enumeration box of {size} points is too large"
        )));
    }
    let n = bounds.len();
    let mut out = Vec::new();
    let mut u = vec![0u64; n];
    loop {
        if member(&u) {
            let minimal = (0..n).all(|j| {
                if u[j] == 0 {
                    return true;
                }
                u[j] -= 1;
                let inside = member(&u);
                u[j] += 1;
                !inside
            });
            if minimal {
                out.push(u.clone());
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok(out);
            }
            if u[j] < bounds[j] {
                u[j] += 1;
                break;
            }
            u[j] = 0;
            j += 1;
        }
    }
}

pub(crate) fn ideal_from_points(ring: &Ring, points: &[Vec<u64>]) -> Result<Ideal> {
    let monos = points
        .iter()
        .map(|u| Monomial::from_exps(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::from_monomials(ring, monos).minimalized())
}

fn scaled_bounds(maxdeg: &[u64], t: &Rational) -> Result<Vec<u64>> {
    maxdeg
        .iter()
        .map(|&m| crate::test_ideal::ceil_times(t, m))
        .collect()
}

/// `⟨x^u : ⟨u+𝟙, v⟩ > t·c for every facet with c > 0⟩`.
pub fn monomial_tau_oracle(i: &Ideal, t: &Rational) -> Result<Ideal> {
    if *t.numer() < 0 {
        return Err(Error::InvalidArgument("t must be nonnegative".into()));
    }
    let poly = newton_polyhedron(i)?;
    let (num, den) = (*t.numer() as u128, *t.denom() as u128);
    let facets: Vec<&Facet> = poly.bounded_facets().collect();
    let bounds = scaled_bounds(&poly.max_degrees(), t)?;
    let pts = minimal_points(&bounds, |u| {
        facets
            .iter()
            .all(|f| f.shifted_pairing(u) * den > num * f.level as u128)
    })?;
    ideal_from_points(i.ring(), &pts)
}

/// `min_{c > 0} ⟨u+𝟙, v⟩ / c`, or `None` for the unit ideal.
pub fn jump_of_point(poly: &NewtonPolyhedron, u: &[u64]) -> Option<Rational> {
    poly.bounded_facets()
        .map(|f| Rational::new(f.shifted_pairing(u) as i64, f.level as i64))
        .min()
}

/// All jumping numbers in `(0, T]`.
pub fn lp_jumping_numbers(i: &Ideal, t_end: &Rational) -> Result<Vec<Rational>> {
    let poly = newton_polyhedron(i)?;
    let bounds = scaled_bounds(&poly.max_degrees(), t_end)?;
    let mut out = BTreeSet::new();
    let mut u = vec![0u64; poly.n];
    loop {
        if let Some(xi) = jump_of_point(&poly, &u) {
            if xi <= *t_end {
                out.insert(xi);
            }
        }
        let mut j = 0;
        loop {
            if j == poly.n {
                return Ok(out.into_iter().collect());
            }
            if u[j] < bounds[j] {
                u[j] += 1;
                break;
            }
            u[j] = 0;
            j += 1;
        }
    }
}

/// Integral closure of `I^k`: monomials in `k·Newt(I)`.
pub fn integral_closure_of_power(i: &Ideal, k: u64) -> Result<Ideal> {
    let poly = newton_polyhedron(i)?;
    let bounds: Vec<u64> = poly.max_degrees().iter().map(|&m| m * k).collect();
    let pts = minimal_points(&bounds, |u| {
        poly.all_facets
            .iter()
            .all(|f| f.pairing(u) >= f.level as u128 * k as u128)
    })?;
    ideal_from_points(i.ring(), &pts)
}
