//! F-pure thresholds and F-jumping numbers.
//!
//! `τ(𝔞^t)` is non-increasing in `t`, so a jump lies between two sample points
//! exactly when their test ideals differ. The scan evaluates a `p`-adic grid,
//! subdivides every cell whose ends differ, and for monomial ideals matches
//! each surviving bracket against the lattice-point jumping numbers.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fp_algebra::{Ideal, Monomial, Poly};
use crate::newton_toric::lp_jumping_numbers;
use crate::test_ideal::{format_rational, tau, Rational, TRational, TauOptions};

/// Levels of subdivision below the grid.
pub const REFINE_LEVELS: u32 = 4;

pub fn default_grid_depth(p: u64) -> u32 {
    if p <= 3 {
        6
    } else {
        4
    }
}

fn origin(i: &Ideal) -> Ideal {
    let ring = i.ring();
    let gens = (0..ring.n()).map(|j| Poly::var(ring, j)).collect();
    Ideal::new(ring, gens).expect("variables are nonzero")
}

/// `max{ν : 𝔞^ν ⊄ 𝔪^[p^e]}` at the origin.
pub fn nu_threshold(i: &Ideal, e: u32) -> Result<u64> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if !origin(i).contains(i)? {
        return Err(Error::NotInMaximalIdeal);
    }
    let ring = i.ring();
    let q = ring.p_pow(e)?;
    let bracket = Ideal::from_monomials(ring, (0..ring.n()).map(|j| Monomial::var(j, q)));
    let mut acc = Ideal::unit(ring);
    let mut nu = 0u64;
    loop {
        acc = acc.product(i)?.sum(&bracket)?.minimalized();
        if bracket.contains(&acc)? {
            return Ok(nu);
        }
        nu += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptBounds {
    /// `τ = (1)` here.
    pub lower: Rational,
    /// `τ ≠ (1)` here.
    pub upper: Rational,
    pub exact: Option<Rational>,
    pub depth: u32,
    pub nu: u64,
}

pub fn fpt(i: &Ideal, depth: u32, opts: &TauOptions) -> Result<FptBounds> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let p = i.ring().p();
    let nu = nu_threshold(i, depth)?;
    let q = i.ring().p_pow(depth)?;
    let qi = i64::try_from(q).map_err(|_| Error::Overflow("p^depth".into()))?;
    // τ at (ν + r)/q lies in the root of 𝔞^(ν+1) ⊆ 𝔪^[q], hence in 𝔪
    let r = i.num_generators() as i64;
    let mut k = nu as i64 + 1;
    loop {
        let t = Rational::new(k, qi);
        if !tau(i, &TRational::from_rational(t, p)?, opts)?
            .tau
            .is_unit()
        {
            break;
        }
        if k == nu as i64 + r {
            return Err(Error::Inconsistent(format!(
                "test ideal at {} is the unit ideal",
                format_rational(&t)
            )));
        }
        k += 1;
    }
    let lower = Rational::new(k - 1, qi);
    let upper = Rational::new(k, qi);
    if k - 1 == nu as i64
        && nu > 0
        && !tau(i, &TRational::from_rational(lower, p)?, opts)?
            .tau
            .is_unit()
    {
        return Err(Error::Inconsistent(format!(
            "test ideal at {} is not the unit ideal",
            format_rational(&lower)
        )));
    }
    let exact = if i.is_monomial() {
        let first = lp_jumping_numbers(i, &upper)?.into_iter().next();
        match first {
            Some(x) if x > lower => Some(x),
            _ => {
                return Err(Error::Inconsistent(
                    "lattice-point threshold outside the bracket".into(),
                ))
            }
        }
    } else {
        None
    };
    Ok(FptBounds {
        lower,
        upper,
        exact,
        depth,
        nu,
    })
}

#[derive(Clone, Debug)]
pub enum JumpEntry {
    Exact {
        value: Rational,
        tau_before: Ideal,
        tau_at: Ideal,
    },
    /// A jump in `(lo, hi]`.
    Bracket {
        lo: Rational,
        hi: Rational,
        tau_before: Ideal,
        tau_at: Ideal,
    },
}

impl JumpEntry {
    /// The exact value, or the right end of the bracket.
    pub fn position(&self) -> Rational {
        match self {
            JumpEntry::Exact { value, .. } => *value,
            JumpEntry::Bracket { hi, .. } => *hi,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            JumpEntry::Exact { value, .. } => Some(*value),
            JumpEntry::Bracket { .. } => None,
        }
    }

    pub fn tau_before(&self) -> &Ideal {
        match self {
            JumpEntry::Exact { tau_before, .. } | JumpEntry::Bracket { tau_before, .. } => {
                tau_before
            }
        }
    }

    pub fn tau_at(&self) -> &Ideal {
        match self {
            JumpEntry::Exact { tau_at, .. } | JumpEntry::Bracket { tau_at, .. } => tau_at,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JumpReport {
    pub interval_end: Rational,
    pub jumps: Vec<JumpEntry>,
    pub grid_depth: u32,
}

/// Memoized parallel evaluation of `t ↦ τ(𝔞^t)` with `τ(𝔞^0) = (1)`.
pub struct TauTable<'a> {
    ideal: &'a Ideal,
    opts: TauOptions,
    memo: Mutex<HashMap<Rational, Ideal>>,
}

impl<'a> TauTable<'a> {
    pub fn new(ideal: &'a Ideal, opts: TauOptions) -> Self {
        TauTable {
            ideal,
            opts,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, t: Rational) -> Result<Ideal> {
        if let Some(v) = self.memo.lock().unwrap().get(&t) {
            return Ok(v.clone());
        }
        let value = if *t.numer() == 0 {
            Ideal::unit(self.ideal.ring())
        } else {
            let tr = TRational::from_rational(t, self.ideal.ring().p())?;
            tau(self.ideal, &tr, &self.opts)?.tau
        };
        self.memo.lock().unwrap().insert(t, value.clone());
        Ok(value)
    }

    pub fn get_many(&self, ts: &[Rational]) -> Result<Vec<Ideal>> {
        ts.par_iter().map(|&t| self.get(t)).collect()
    }
}

fn refine(
    table: &TauTable,
    lo: Rational,
    hi: Rational,
    levels: u32,
    out: &mut Vec<(Rational, Rational)>,
) -> Result<()> {
    if levels == 0 {
        out.push((lo, hi));
        return Ok(());
    }
    let p = table.ideal.ring().p() as i64;
    let step = (hi - lo) / Rational::from_integer(p);
    let pts: Vec<Rational> = (0..=p)
        .map(|j| lo + step * Rational::from_integer(j))
        .collect();
    let vals = table.get_many(&pts)?;
    for j in 0..p as usize {
        if vals[j] != vals[j + 1] {
            refine(table, pts[j], pts[j + 1], levels - 1, out)?;
        }
    }
    Ok(())
}

/// Jumps of `τ(𝔞^t)` on `(0, T]`, sampled on the grid `k/p^depth` and refined
/// to width `1/p^(depth+4)`.
pub fn jumping_numbers(
    i: &Ideal,
    t_end: &Rational,
    depth: u32,
    opts: &TauOptions,
) -> Result<JumpReport> {
    if *t_end.numer() <= 0 {
        return Err(Error::InvalidArgument("T must be positive".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let q = i64::try_from(i.ring().p_pow(depth)?).map_err(|_| Error::Overflow("p^depth".into()))?;
    let last = (t_end * Rational::from_integer(q)).floor().to_integer();
    let mut grid: Vec<Rational> = (0..=last).map(|k| Rational::new(k, q)).collect();
    if *grid.last().unwrap() != *t_end {
        grid.push(*t_end);
    }
    let table = TauTable::new(i, *opts);
    let vals = table.get_many(&grid)?;
    let mut brackets = Vec::new();
    for k in 0..grid.len() - 1 {
        if vals[k] != vals[k + 1] {
            refine(&table, grid[k], grid[k + 1], REFINE_LEVELS, &mut brackets)?;
        }
    }

    let mut jumps = Vec::with_capacity(brackets.len());
    if i.is_monomial() {
        let exact = lp_jumping_numbers(i, t_end)?;
        if exact.len() != brackets.len() {
            return Err(Error::Inconsistent(format!(
                "{} brackets found but {} lattice-point jumps",
                brackets.len(),
                exact.len()
            )));
        }
        for (&(lo, hi), &xi) in brackets.iter().zip(&exact) {
            if !(lo < xi && xi <= hi) {
                return Err(Error::Inconsistent(format!(
                    "lattice-point jump {} outside bracket ({}, {}]",
                    format_rational(&xi),
                    format_rational(&lo),
                    format_rational(&hi)
                )));
            }
            let tau_before = table.get(lo)?;
            let tau_at = table.get(xi)?;
            let strict = tau_before.contains(&tau_at)? && tau_at != tau_before;
            if tau_at != table.get(hi)? || !strict {
                return Err(Error::Inconsistent(format!(
                    "no jump of the test ideal at {}",
                    format_rational(&xi)
                )));
            }
            jumps.push(JumpEntry::Exact {
                value: xi,
                tau_before,
                tau_at,
            });
        }
    } else {
        for (lo, hi) in brackets {
            jumps.push(JumpEntry::Bracket {
                lo,
                hi,
                tau_before: table.get(lo)?,
                tau_at: table.get(hi)?,
            });
        }
    }
    Ok(JumpReport {
        interval_end: *t_end,
        jumps,
        grid_depth: depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_algebra::{parse_ideal, parse_ring, MonomialOrder};

    fn ideal(p: u64, text: &str) -> Ideal {
        let r = parse_ring(&format!("F{p}[x,y]"), MonomialOrder::Grevlex).unwrap();
        parse_ideal(&r, text).unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_threshold(&ideal(3, "x"), 2).unwrap(), 8);
        assert_eq!(nu_threshold(&ideal(3, "x,y"), 1).unwrap(), 4);
        assert_eq!(nu_threshold(&ideal(5, "x^2 + y^3"), 1).unwrap(), 3);
        assert_eq!(nu_threshold(&ideal(7, "x^2 + y^3"), 2).unwrap(), 40);
        assert!(matches!(
            nu_threshold(&ideal(5, "x + 1"), 1),
            Err(Error::NotInMaximalIdeal)
        ));
    }

    #[test]
    fn fpt_examples() {
        let o = TauOptions::default();
        let b = fpt(&ideal(3, "x"), 2, &o).unwrap();
        assert_eq!(b.exact, Some(Rational::from_integer(1)));
        let b = fpt(&ideal(5, "x,y"), 2, &o).unwrap();
        assert_eq!(b.exact, Some(Rational::from_integer(2)));
        let b = fpt(&ideal(7, "x^2 + y^3"), 2, &o).unwrap();
        assert_eq!(
            (b.lower, b.upper),
            (Rational::new(40, 49), Rational::new(41, 49))
        );
        assert!(b.exact.is_none());
    }

    #[test]
    fn principal_jumps() {
        let rep = jumping_numbers(
            &ideal(3, "x"),
            &Rational::from_integer(3),
            2,
            &TauOptions::default(),
        )
        .unwrap();
        let vals: Vec<_> = rep.jumps.iter().map(|j| j.exact().unwrap()).collect();
        assert_eq!(
            vals,
            (1..=3).map(Rational::from_integer).collect::<Vec<_>>()
        );
    }

    #[test]
    fn non_monomial_brackets() {
        let rep = jumping_numbers(
            &ideal(5, "x^2 + y^3"),
            &Rational::new(9, 10),
            2,
            &TauOptions::default(),
        )
        .unwrap();
        assert_eq!(rep.jumps.len(), 1);
        match &rep.jumps[0] {
            JumpEntry::Bracket { lo, hi, tau_at, .. } => {
                assert!(*lo < Rational::new(4, 5) && Rational::new(4, 5) <= *hi);
                assert_eq!(*tau_at, ideal(5, "x,y"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
