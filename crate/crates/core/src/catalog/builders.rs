use std::sync::Arc;

use crate::arith::Rational;
use crate::cohom::{
    ChernData, Divisor, Generator, Monomial, PullbackClass, RationalClass, Relation, Ring, RingKind,
    Variety,
};
use crate::error::{Error, Result};
use crate::genus::{Component, OrbifoldData, Sector, TwistedPart};

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn hyperplane_ring(name: &str, cap: u32, dim: u32) -> Result<Arc<Ring>> {
    Ok(Arc::new(Ring::truncated(
        vec![Generator {
            name: name.into(),
            degree: 1,
            cap: Some(cap),
        }],
        dim,
    )?))
}

/// P^n: Q[h]/(h^{n+1}), c = (1+h)^{n+1}, ∫h^n = 1.
pub fn proj_space(n: u32) -> Result<Variety> {
    proj_space_with(n, "h")
}

/// P^n with hyperplane generator named `gen`.
pub fn proj_space_with(n: u32, gen: &str) -> Result<Variety> {
    if n == 0 {
        return Err(Error::validation("projective space needs n >= 1"));
    }
    let ring = hyperplane_ring(gen, n + 1, n)?;
    let h = RationalClass::generator(&ring, gen)?;
    let c = RationalClass::one(&ring).add(&h).pow(n + 1);
    let integral = Variety::integral_from(&ring, &[(&format!("{gen}^{n}"), int(1))])?;
    Variety::new(format!("P{n}"), ring.clone(), ChernData::new(c, n)?, integral)
}

/// Degree-a hypersurface in P^n on Q[h]/(h^n): ∫h^{n−1} = a, c = (1+h)^{n+1}/(1+ah).
pub fn hypersurface(n: u32, a: u32) -> Result<Variety> {
    if n < 2 || a == 0 {
        return Err(Error::validation("hypersurface needs n >= 2 and a >= 1"));
    }
    let dim = n - 1;
    let ring = hyperplane_ring("h", n, dim)?;
    let h = RationalClass::generator(&ring, "h")?;
    let one = RationalClass::one(&ring);
    let mut inv = RationalClass::zero(&ring);
    let mut power = one.clone();
    let minus_ah = h.scale(&int(-(a as i64)));
    for _ in 0..=dim {
        inv = inv.add(&power);
        power = power.mul(&minus_ah);
    }
    let c = one.add(&h).pow(n + 1).mul(&inv);
    let integral = Variety::integral_from(&ring, &[(&format!("h^{dim}"), int(a as i64))])?;
    Variety::new(
        format!("hypersurface({n},{a})"),
        ring,
        ChernData::new(c, dim)?,
        integral,
    )
}

fn lift(class: &RationalClass, target: &Arc<Ring>, offset: usize) -> Result<RationalClass> {
    let src = class.ring();
    let n = target.generators().len();
    let terms: Vec<(Monomial, Rational)> = class
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut v = vec![0; n];
            v[offset..offset + src.generators().len()].copy_from_slice(&src.basis()[i].0);
            (Monomial(v), c.clone())
        })
        .collect();
    RationalClass::from_terms(target, &terms)
}

/// X × Y with the product Chern class and integration.
pub fn product(x: &Variety, y: &Variety) -> Result<Variety> {
    let ring = Arc::new(Ring::product(&x.ring, &y.ring)?);
    let na = x.ring.generators().len();
    let c = lift(&x.tangent.total, &ring, 0)?.mul(&lift(&y.tangent.total, &ring, na)?);
    let mut integral = vec![Rational::zero(); ring.rank()];
    for (i, mx) in x.ring.basis().iter().enumerate() {
        for (j, my) in y.ring.basis().iter().enumerate() {
            let v = &x.integral[i] * &y.integral[j];
            if v.is_zero() {
                continue;
            }
            let mut m = mx.0.clone();
            m.extend_from_slice(&my.0);
            let k = ring
                .index_of(&Monomial(m))
                .ok_or_else(|| Error::validation("product monomial missing from basis"))?;
            integral[k] = v;
        }
    }
    let dim = x.dimension + y.dimension;
    Variety::new(
        format!("{}x{}", x.name, y.name),
        ring,
        ChernData::new(c, dim)?,
        integral,
    )
}

/// Blow-up of a surface at a point, with exceptional curve E carrying weight δ_E = 1
/// so that K + D on the blow-up is the pullback of K.
pub fn blowup_point(s: &Variety) -> Result<Variety> {
    if s.dimension != 2 {
        return Err(Error::validation("point blow-up is implemented for surfaces"));
    }
    let ngen = s.ring.generators().len();
    // a top-degree basis monomial with nonzero integral represents a multiple of the point class
    let (pt_idx, pt_val) = s
        .integral
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_zero())
        .ok_or_else(|| Error::validation("surface has degenerate integration"))?;
    let pt_mono = s.ring.basis()[pt_idx].clone();
    let pt_scale = pt_val.recip();

    let mut gens = s.ring.generators().to_vec();
    gens.push(Generator {
        name: "e".into(),
        degree: 1,
        cap: None,
    });
    let widen = |m: &Monomial, e: u32| {
        let mut v = m.0.clone();
        v.push(e);
        Monomial(v)
    };
    let mut rels: Vec<Relation> = s
        .ring
        .relations()
        .iter()
        .map(|r| Relation {
            lhs: widen(&r.lhs, 0),
            rhs: r.rhs.iter().map(|(m, c)| (widen(m, 0), c.clone())).collect(),
        })
        .collect();
    for i in 0..ngen {
        let mut v = vec![0; ngen + 1];
        v[i] = 1;
        v[ngen] = 1;
        rels.push(Relation {
            lhs: Monomial(v),
            rhs: Vec::new(),
        });
    }
    let mut e2 = vec![0; ngen + 1];
    e2[ngen] = 2;
    rels.push(Relation {
        lhs: Monomial(e2),
        rhs: vec![(widen(&pt_mono, 0), -&pt_scale)],
    });
    let ring = Arc::new(Ring::new(RingKind::TruncatedPolynomial, gens, rels, 2)?);

    let lift_class = |c: &RationalClass| -> Result<RationalClass> {
        let terms: Vec<(Monomial, Rational)> = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (widen(&c.ring().basis()[i], 0), v.clone()))
            .collect();
        RationalClass::from_terms(&ring, &terms)
    };
    let e = RationalClass::generator(&ring, "e")?;
    let pt = RationalClass::from_terms(&ring, &[(widen(&pt_mono, 0), pt_scale.clone())])?;
    let c = lift_class(&s.tangent.total)?.sub(&e).add(&pt);
    let mut integral = vec![Rational::zero(); ring.rank()];
    for (i, v) in s.integral.iter().enumerate() {
        if !v.is_zero() {
            let k = ring
                .index_of(&widen(&s.ring.basis()[i], 0))
                .ok_or_else(|| Error::validation("lost a top-degree monomial"))?;
            integral[k] = v.clone();
        }
    }
    let mut v = Variety::new(
        format!("blowup({})", s.name),
        ring,
        ChernData::new(c, 2)?,
        integral,
    )?;
    v.divisors.push(Divisor {
        name: "E".into(),
        class: e,
        delta: Rational::one(),
    });
    Ok(v)
}

/// Formal torus of complex dimension d: Q[ω]/(ω²), trivial tangent bundle, ∫ω = 1,
/// with ω as the pullback of the fundamental class.
pub fn formal_torus(d: u32) -> Result<Variety> {
    if d == 0 {
        return Err(Error::validation("torus dimension must be >= 1"));
    }
    let ring = Arc::new(Ring::formal_top(d));
    let integral = Variety::integral_from(&ring, &[("omega", int(1))])?;
    let mut v = Variety::new(
        format!("T{}", 2 * d),
        ring.clone(),
        ChernData::trivial(&ring, d),
        integral,
    )?;
    v.pullbacks
        .push(PullbackClass::new("omega", RationalClass::generator(&ring, "omega")?)?);
    Ok(v)
}

/// T⁴ with the involution −1: trivial sector on the torus and three twisted
/// sectors supported on the 16 fixed points.
pub fn kummer_datum() -> Result<Variety> {
    let mut v = formal_torus(2)?;
    v.name = "kummer".into();
    v.pullbacks.clear();
    let point = Arc::new(Ring::point());
    let point_component = |lg: Rational, lh: Rational| Component {
        ring: point.clone(),
        integral: vec![int(1)],
        zero_part: ChernData::trivial(&point, 0),
        twisted_parts: vec![TwistedPart {
            chern: ChernData::trivial(&point, 2),
            lambda_g: lg,
            lambda_h: lh,
        }],
        divisor_restrictions: Vec::new(),
        restricted_pullbacks: Vec::new(),
    };
    let half = Rational::new(1, 2);
    let zero = Rational::zero();
    let torus = Component {
        ring: v.ring.clone(),
        integral: v.integral.clone(),
        zero_part: v.tangent.clone(),
        twisted_parts: Vec::new(),
        divisor_restrictions: Vec::new(),
        restricted_pullbacks: Vec::new(),
    };
    let mut sectors = vec![Sector {
        g: "1".into(),
        h: "1".into(),
        components: vec![torus],
    }];
    for (g, h, lg, lh) in [
        ("1", "s", zero.clone(), half.clone()),
        ("s", "1", half.clone(), zero.clone()),
        ("s", "s", half.clone(), half.clone()),
    ] {
        sectors.push(Sector {
            g: g.into(),
            h: h.into(),
            components: (0..16).map(|_| point_component(lg.clone(), lh.clone())).collect(),
        });
    }
    v.orbifold = Some(OrbifoldData {
        group_order: 2,
        sectors,
    });
    v.validate()?;
    Ok(v)
}

pub const CATALOG_KEYS: &[&str] = &[
    "p1",
    "p2",
    "p3",
    "p1xp1",
    "cubic-curve",
    "k3-quartic",
    "quintic",
    "blowup-p2",
    "blowup-k3",
    "torus2",
    "torus4",
    "kummer",
];

/// Builds a catalog entry by key.
pub fn build(key: &str) -> Result<Variety> {
    let mut v = match key {
        "p1" => proj_space(1)?,
        "p2" => proj_space(2)?,
        "p3" => proj_space(3)?,
        "p1xp1" => product(&proj_space_with(1, "a")?, &proj_space_with(1, "b")?)?,
        "cubic-curve" => hypersurface(2, 3)?,
        "k3-quartic" => hypersurface(3, 4)?,
        "quintic" => hypersurface(4, 5)?,
        "blowup-p2" => blowup_point(&proj_space(2)?)?,
        "blowup-k3" => blowup_point(&hypersurface(3, 4)?)?,
        "torus2" => formal_torus(1)?,
        "torus4" => formal_torus(2)?,
        "kummer" => kummer_datum()?,
        _ => return Err(Error::validation(format!("unknown catalog key {key:?}"))),
    };
    v.name = key.to_string();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn top_chern(v: &Variety) -> Rational {
        v.integrate_rational(&v.tangent.c(v.dimension))
    }

    #[test]
    fn projective_plane_data() {
        let v = proj_space(2).unwrap();
        assert_eq!(
            v.tangent.total.terms(),
            vec![
                ("1".to_string(), int(1)),
                ("h".to_string(), int(3)),
                ("h^2".to_string(), int(3)),
            ]
        );
    }

    #[test]
    fn quartic_surface_chern_class() {
        let v = hypersurface(3, 4).unwrap();
        assert!(v.tangent.c(1).is_zero());
        assert_eq!(v.tangent.c(2).terms(), vec![("h^2".to_string(), int(6))]);
        assert_eq!(top_chern(&v), int(24));
    }

    #[test]
    fn euler_numbers() {
        for (key, e) in [
            ("p1", 2),
            ("p2", 3),
            ("p3", 4),
            ("p1xp1", 4),
            ("cubic-curve", 0),
            ("quintic", -200),
            ("blowup-p2", 4),
            ("blowup-k3", 25),
            ("torus2", 0),
        ] {
            assert_eq!(top_chern(&build(key).unwrap()), int(e), "{key}");
        }
    }

    #[test]
    fn blowup_relations() {
        let v = build("blowup-p2").unwrap();
        let e = RationalClass::generator(&v.ring, "e").unwrap();
        let h = RationalClass::generator(&v.ring, "h").unwrap();
        assert!(h.mul(&e).is_zero());
        assert_eq!(v.integrate_rational(&e.mul(&e)), int(-1));
        let c1 = v.tangent.c(1);
        assert_eq!(v.integrate_rational(&c1.mul(&c1)), int(8));
    }

    #[test]
    fn unknown_key() {
        assert!(build("nope").is_err());
    }
}
