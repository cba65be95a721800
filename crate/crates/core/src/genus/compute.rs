use rayon::prelude::*;

use super::roots::GenusContext;
use super::sector::{Component, TorsionTable};
use super::{Convention, GenusResult};
use crate::arith::{PuiseuxSeries, Rational, EXACT};
use crate::cohom::{
    genus_class_from_root_function, integrate_with, substitute_nilpotent, CohomClass, PullbackClass,
    Variety,
};
use crate::error::{Error, Result};

/// ∏ over Chern roots of the root function of `conv`.
pub fn elliptic_class(ctx: &GenusContext, x: &Variety, conv: Convention) -> Result<CohomClass> {
    let f = ctx.standard_root(conv)?;
    genus_class_from_root_function(&f, &x.tangent)
}

/// Elliptic class times the divisor factors of the pair (X, D = −Σδ_k D_k).
pub fn elliptic_class_pair(ctx: &GenusContext, x: &Variety, conv: Convention) -> Result<CohomClass> {
    for d in &x.divisors {
        crate::cohom::check_klt(&d.name, &d.delta)?;
    }
    let mut cls = elliptic_class(ctx, x, conv)?;
    for d in &x.divisors {
        let f = ctx.divisor_factor(&d.delta, &Rational::zero(), &Rational::zero())?;
        cls = cls.mul(&substitute_nilpotent(&f, &d.class)?)?;
    }
    Ok(cls)
}

fn alpha_weight(alpha: Option<&PullbackClass>) -> i64 {
    alpha.map(|a| -(a.half_degree as i64)).unwrap_or(0)
}

fn cup_alpha(cls: CohomClass, alpha: Option<&PullbackClass>) -> Result<CohomClass> {
    match alpha {
        Some(a) => cls.mul_rational(&a.class),
        None => Ok(cls),
    }
}

fn lookup_alpha<'a>(x: &'a Variety, alpha: Option<&str>) -> Result<Option<&'a PullbackClass>> {
    match alpha {
        None => Ok(None),
        Some(name) => x
            .pullback(name)
            .map(Some)
            .ok_or_else(|| Error::validation(format!("unknown pullback class {name:?}"))),
    }
}

/// (class ∪ α)[X] with weight −k.
pub fn higher_genus(
    ctx: &GenusContext,
    x: &Variety,
    cls: &CohomClass,
    alpha: Option<&str>,
    conv: Convention,
) -> Result<GenusResult> {
    let a = lookup_alpha(x, alpha)?;
    let series = x.integrate(&cup_alpha(cls.clone(), a)?);
    Ok(GenusResult::new(
        series.truncate(ctx.truncation()),
        alpha_weight(a),
        x.dimension,
        conv,
    ))
}

/// Genus of the pair, or of the plain variety when it has no divisors.
pub fn genus(
    ctx: &GenusContext,
    x: &Variety,
    alpha: Option<&str>,
    conv: Convention,
) -> Result<GenusResult> {
    let cls = elliptic_class_pair(ctx, x, conv)?;
    higher_genus(ctx, x, &cls, alpha, conv)
}

/// Genus of a singular target through a resolution whose divisors carry the discrepancies.
pub fn singular_genus(
    ctx: &GenusContext,
    resolution: &Variety,
    alpha: Option<&str>,
    conv: Convention,
) -> Result<GenusResult> {
    let mut r = genus(ctx, resolution, alpha, conv)?;
    r.label = Some(format!("singular target resolved by {}", resolution.name));
    Ok(r)
}

fn component_class(
    ctx: &GenusContext,
    c: &Component,
    conv: Convention,
) -> Result<CohomClass> {
    let f = ctx.standard_root(conv)?;
    let mut cls = genus_class_from_root_function(&f, &c.zero_part)?;
    for t in &c.twisted_parts {
        let f = ctx.twisted_root(&t.lambda_g, &t.lambda_h, conv)?;
        cls = cls.mul(&genus_class_from_root_function(&f, &t.chern)?)?;
    }
    for d in &c.divisor_restrictions {
        let f = ctx.divisor_factor(&d.delta, &d.eps_g, &d.eps_h)?;
        cls = cls.mul(&substitute_nilpotent(&f, &d.e_class)?)?;
    }
    Ok(cls)
}

/// (1/|G|) Σ_{sectors, components} δ(g,h)·(component class ∪ α)[component].
pub fn orbifold_elliptic_genus(
    ctx: &GenusContext,
    x: &Variety,
    alpha: Option<&str>,
    torsion: Option<&TorsionTable>,
    conv: Convention,
) -> Result<GenusResult> {
    let orb = x
        .orbifold
        .as_ref()
        .ok_or_else(|| Error::validation(format!("{} has no orbifold sectors", x.name)))?;
    orb.validate(x.dimension)?;
    let weight = alpha_weight(lookup_alpha(x, alpha)?);
    let profile = ctx.profile();
    let field = profile.field();

    let jobs: Vec<(&str, &str, &Component)> = orb
        .sectors
        .iter()
        .flat_map(|s| s.components.iter().map(move |c| (s.g.as_str(), s.h.as_str(), c)))
        .collect();
    let parts: Vec<Result<PuiseuxSeries>> = jobs
        .par_iter()
        .map(|(g, h, c)| {
            let a = match alpha {
                None => None,
                Some(name) => match c.restricted_pullbacks.iter().find(|p| p.name == name) {
                    Some(p) => Some(p),
                    // the class restricts to zero on this component
                    None => return Ok(PuiseuxSeries::zero(profile, EXACT)),
                },
            };
            let cls = cup_alpha(component_class(ctx, c, conv)?, a)?;
            let mut s = integrate_with(&c.integral, &cls);
            if let Some(t) = torsion {
                s = s.scale(&t.delta(field, g, h)?);
            }
            Ok(s)
        })
        .collect();
    let mut total = PuiseuxSeries::zero(profile, EXACT);
    for p in parts {
        total = total.try_add(&p?)?;
    }
    let total = total
        .scale_rational(&Rational::new(1, orb.group_order as i64))
        .truncate(ctx.truncation());
    Ok(GenusResult::new(total, weight, x.dimension, conv))
}
