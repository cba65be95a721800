use super::class::{CohomClass, RationalClass};
use super::variety::ChernData;
use crate::arith::{PuiseuxSeries, SlotSeries};
use crate::error::{Error, Result};

/// ∏_i f(x_i) over the Chern roots, as f(0)^rank · exp(Σ_k g_k p_k) with g = log(f/f(0)).
pub fn genus_class_from_root_function(f: &SlotSeries, chern: &ChernData) -> Result<CohomClass> {
    let ring = chern.total.ring();
    let dim = ring.dimension();
    let profile = f.profile();
    if (f.degree() as u32) < dim {
        return Err(Error::validation(format!(
            "root function known to x-degree {} but the ring has dimension {dim}",
            f.degree()
        )));
    }
    let f0 = f.coeff(0);
    let f0_inv = f0.inverse().map_err(|_| Error::DegenerateRootFunction)?;
    let scale = f0.pow(chern.rank as i64)?;
    if dim == 0 {
        return Ok(CohomClass::scalar(ring, scale));
    }
    let d = dim as usize;
    let mut coeffs = vec![PuiseuxSeries::one(profile)];
    for i in 1..=d {
        coeffs.push(f.coeff(i).try_mul(&f0_inv)?);
    }
    let g = SlotSeries::from_coeffs(coeffs).log()?;
    let p = chern.power_sums(dim);
    let mut s = CohomClass::zero(ring, profile);
    for (k, pk) in p.iter().enumerate().skip(1) {
        if pk.is_zero() {
            continue;
        }
        s = s.add(&pk.to_series_class(profile).scale_series(g.coeff(k))?)?;
    }
    s.exp_nilpotent()?.scale_series(&scale)
}

/// Σ_i f_i c^i.
pub fn substitute_nilpotent(f: &SlotSeries, c: &RationalClass) -> Result<CohomClass> {
    let ring = c.ring();
    let profile = f.profile();
    let mut out = CohomClass::zero(ring, profile);
    let mut power = RationalClass::one(ring);
    for i in 0..=f.degree() {
        if power.is_zero() {
            break;
        }
        out = out.add(&power.to_series_class(profile).scale_series(f.coeff(i))?)?;
        power = power.mul(c);
    }
    Ok(out)
}

/// ∏ f(r_i) for explicitly split roots.
pub fn product_over_roots(f: &SlotSeries, roots: &[RationalClass]) -> Result<CohomClass> {
    let ring = roots
        .first()
        .map(|r| r.ring().clone())
        .ok_or_else(|| Error::validation("no roots"))?;
    let mut out = CohomClass::one(&ring, f.profile());
    for r in roots {
        out = out.mul(&substitute_nilpotent(f, r)?)?;
    }
    Ok(out)
}
