use crate::error::{Error, Result};
use crate::fp_algebra::{Ideal, Ring};
use crate::frobenius::{trace_image_omega, OmegaModule};
use crate::test_ideal::{ceil_times_pe, TRational};

use super::{ideal_from_points, minimal_points, newton_polyhedron};

/// Rays of the normal fan of `Newt(𝔞)` inside the positive orthant, with the
/// order of vanishing of `𝔞` and the discrepancy along each ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricBlowupModel {
    pub ring: Ring,
    pub rays: Vec<Vec<u64>>,
    pub ord_g: Vec<u64>,
    pub kdisc: Vec<u64>,
}

/// Coordinate rays first, then the remaining facet normals in lexicographic
/// order.
pub fn toric_blowup_model(i: &Ideal) -> Result<ToricBlowupModel> {
    let poly = newton_polyhedron(i)?;
    let n = poly.n;
    let mut rays: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|k| u64::from(j == k)).collect())
        .collect();
    for f in poly.bounded_facets() {
        if !rays.contains(&f.normal) {
            rays.push(f.normal.clone());
        }
    }
    let ord_g = rays
        .iter()
        .map(|v| {
            poly.exponents
                .iter()
                .map(|g| g.iter().zip(v).map(|(a, b)| a * b).sum::<u64>())
                .min()
                .unwrap_or(0)
        })
        .collect();
    let kdisc = rays.iter().map(|v| v.iter().sum::<u64>() - 1).collect();
    Ok(ToricBlowupModel {
        ring: i.ring().clone(),
        rays,
        ord_g,
        kdisc,
    })
}

fn pairing(u: &[u64], v: &[u64]) -> i128 {
    u.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum()
}

/// The monomial module of forms `x^u dx` with `⟨u, v_ρ⟩ + w_ρ ≥ 0` on every ray.
pub fn pushforward_monomial_sections(
    model: &ToricBlowupModel,
    weights: &[i64],
) -> Result<OmegaModule> {
    if weights.len() != model.rays.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} weights, got {}",
            model.rays.len(),
            weights.len()
        )));
    }
    let n = model.ring.n();
    let bounds: Vec<u64> = (0..n)
        .map(|j| {
            model
                .rays
                .iter()
                .zip(weights)
                .filter(|(v, _)| v[j] > 0)
                .map(|(v, &w)| ((-w).max(0) as u64).div_ceil(v[j]))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pts = minimal_points(&bounds, |u| {
        model
            .rays
            .iter()
            .zip(weights)
            .all(|(v, &w)| pairing(u, v) + w as i128 >= 0)
    })?;
    Ok(OmegaModule::new(ideal_from_points(&model.ring, &pts)?))
}

/// Per-ray weights of `K_Y - ⌈p^e t G⌉ - D` relative to `π^*(dx)`, where
/// `D = K_{Y/X} + slack·G`.
pub fn blowup_weights(
    model: &ToricBlowupModel,
    t: &TRational,
    e: u32,
    slack: u64,
) -> Result<Vec<i64>> {
    model
        .ord_g
        .iter()
        .zip(&model.kdisc)
        .map(|(&ord, &kd)| {
            let big = ceil_times_pe(&(t.value() * ord as i64), t.p(), e)?;
            let d = kd + slack * ord;
            let w = kd as i128 - big as i128 - d as i128;
            i64::try_from(w).map_err(|_| Error::Overflow("blowup weight".into()))
        })
        .collect()
}

fn check_slack(ring: &Ring, slack: u64) -> Result<()> {
    if slack < ring.n() as u64 + 1 {
        return Err(Error::InvalidArgument(format!(
            "slack must be at least {} (dimension + 1)",
            ring.n() + 1
        )));
    }
    Ok(())
}

/// Trace image of the explicit section module; only practical for small `p^e`.
pub fn blowup_tau_path_explicit(
    i: &Ideal,
    t: &TRational,
    e: u32,
    slack: u64,
) -> Result<OmegaModule> {
    check_slack(i.ring(), slack)?;
    let model = toric_blowup_model(i)?;
    let w = blowup_weights(&model, t, e, slack)?;
    trace_image_omega(&pushforward_monomial_sections(&model, &w)?, e)
}

/// `Tr^e` of the pushed-forward sections. A form `x^w dx` lies in the image
/// iff `x^(p^e(w+𝟙)-𝟙) dx` is a section, which is again a section module with
/// weights `⟨𝟙,v⟩ - ⌈(⟨𝟙,v⟩ - w_ρ)/p^e⌉`.
pub fn blowup_tau_path(i: &Ideal, t: &TRational, e: u32, slack: u64) -> Result<OmegaModule> {
    check_slack(i.ring(), slack)?;
    let model = toric_blowup_model(i)?;
    let w = blowup_weights(&model, t, e, slack)?;
    let q = i.ring().p_pow(e)? as i128;
    let image: Vec<i64> = model
        .rays
        .iter()
        .zip(&w)
        .map(|(v, &wr)| {
            let ones = v.iter().sum::<u64>() as i128;
            let shifted = ones - wr as i128;
            (ones - shifted.div_euclid(q) - i128::from(shifted.rem_euclid(q) != 0)) as i64
        })
        .collect();
    pushforward_monomial_sections(&model, &image)
}

#[derive(Clone, Debug)]
pub struct BlowupPath {
    pub module: OmegaModule,
    pub e_stable: u32,
    /// Smallest `e` past which the image provably no longer moves.
    pub e_settled: u32,
    pub images: Vec<OmegaModule>,
}

/// Ascends `e` until the image has been constant `k` consecutive times and
/// `p^e ≥ den(t)·(max_ρ d_ρ + 2)`, after which the image cannot change.
pub fn blowup_tau_stabilized(
    i: &Ideal,
    t: &TRational,
    slack: u64,
    k: u32,
    e_max: u32,
) -> Result<BlowupPath> {
    check_slack(i.ring(), slack)?;
    let model = toric_blowup_model(i)?;
    let p = i.ring().p() as u128;
    let d_max = model
        .ord_g
        .iter()
        .zip(&model.kdisc)
        .map(|(&o, &kd)| (kd + slack * o) as u128)
        .max()
        .unwrap_or(0);
    let need = t.den() as u128 * (d_max + 2);
    let mut e_settled = 1u32;
    let mut pe = p;
    while pe < need {
        pe *= p;
        e_settled += 1;
    }
    let mut images: Vec<OmegaModule> = Vec::new();
    let mut plateau_start = 1u32;
    for e in 1..=e_max {
        let img = blowup_tau_path(i, t, e, slack)?;
        if let Some(prev) = images.last() {
            if !img.ideal_part.contains(&prev.ideal_part)? {
                return Err(Error::ChainNotAscending { e: e - 1, next: e });
            }
            if *prev != img {
                plateau_start = e;
            }
        }
        images.push(img);
        if e >= e_settled && e + 1 - plateau_start > k {
            return Ok(BlowupPath {
                module: images.last().unwrap().clone(),
                e_stable: plateau_start,
                e_settled,
                images,
            });
        }
    }
    Err(Error::Unstabilized {
        t: t.to_string(),
        e_max,
        partial_chain: images.into_iter().map(|m| m.ideal_part).collect(),
    })
}
