use std::collections::HashMap;
use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Exponent vector over the ring generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn quotient(&self, by: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&by.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Smallest vanishing power, if any.
    pub cap: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    TruncatedPolynomial,
    FormalPoint,
    FormalTop,
}

impl RingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingKind::TruncatedPolynomial => "truncatedPolynomial",
            RingKind::FormalPoint => "formalPoint",
            RingKind::FormalTop => "formalTop",
        }
    }
}

/// A relation `monomial = Σ c_i m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Monomial,
    pub rhs: Vec<(Monomial, Rational)>,
}

type Combination = Vec<(usize, Rational)>;

/// Finite graded commutative ring with an explicit monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    kind: RingKind,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
    dimension: u32,
    basis: Vec<Monomial>,
    degrees: Vec<u32>,
    index: HashMap<Monomial, usize>,
    table: Vec<Vec<Combination>>,
}

impl Ring {
    pub fn new(
        kind: RingKind,
        generators: Vec<Generator>,
        relations: Vec<Relation>,
        dimension: u32,
    ) -> Result<Ring> {
        let n = generators.len();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::validation(format!("generator {} has degree 0", g.name)));
            }
        }
        for r in &relations {
            if r.lhs.0.len() != n || r.rhs.iter().any(|(m, _)| m.0.len() != n) {
                return Err(Error::validation("relation monomial has wrong arity"));
            }
            let d = mono_degree(&generators, &r.lhs);
            if let Some((m, _)) = r.rhs.iter().find(|(m, _)| mono_degree(&generators, m) != d) {
                return Err(Error::validation(format!(
                    "relation {} = ... {} is not homogeneous",
                    fmt_mono(&generators, &r.lhs),
                    fmt_mono(&generators, m)
                )));
            }
        }
        // basis: monomials within caps and degree bound, not divisible by a relation
        let mut basis = vec![Monomial::one(n)];
        for (gi, g) in generators.iter().enumerate() {
            let mut next = Vec::new();
            for m in &basis {
                let mut e = 0u32;
                loop {
                    let mut mm = m.clone();
                    mm.0[gi] = e;
                    if g.cap.is_some_and(|c| e >= c) || mono_degree(&generators, &mm) > dimension {
                        break;
                    }
                    next.push(mm);
                    e += 1;
                }
            }
            basis = next;
        }
        basis.retain(|m| !relations.iter().any(|r| r.lhs.divides(m)));
        basis.sort_by_key(|m| (mono_degree(&generators, m), std::cmp::Reverse(m.clone())));
        let degrees = basis.iter().map(|m| mono_degree(&generators, m)).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ring = Ring {
            kind,
            generators,
            relations,
            dimension,
            basis,
            degrees,
            index,
            table: Vec::new(),
        };
        let b = ring.basis.len();
        let mut table = vec![vec![Vec::new(); b]; b];
        for i in 0..b {
            for j in i..b {
                let m = ring.basis[i].times(&ring.basis[j]);
                let c = ring.reduce_monomial(&m)?;
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        ring.table = table;
        Ok(ring)
    }

    /// Q[g_1..g_n]/(g_i^{cap_i}) truncated above `dimension`.
    pub fn truncated(generators: Vec<Generator>, dimension: u32) -> Result<Ring> {
        Self::new(RingKind::TruncatedPolynomial, generators, Vec::new(), dimension)
    }

    /// The ring Q of a point.
    pub fn point() -> Ring {
        Self::new(RingKind::FormalPoint, Vec::new(), Vec::new(), 0).expect("point ring")
    }

    /// Q[ω]/(ω²) with ω of complex degree d.
    pub fn formal_top(d: u32) -> Ring {
        let g = Generator {
            name: "omega".into(),
            degree: d,
            cap: Some(2),
        };
        Self::new(RingKind::FormalTop, vec![g], Vec::new(), d).expect("formal top ring")
    }

    /// Tensor product; generator names must be distinct.
    pub fn product(a: &Ring, b: &Ring) -> Result<Ring> {
        let na = a.generators.len();
        let nb = b.generators.len();
        let mut gens = a.generators.clone();
        gens.extend(b.generators.iter().cloned());
        let lift = |m: &Monomial, left: bool| {
            let mut v = vec![0; na + nb];
            if left {
                v[..na].copy_from_slice(&m.0);
            } else {
                v[na..].copy_from_slice(&m.0);
            }
            Monomial(v)
        };
        let mut rels = Vec::new();
        for (r, left) in a
            .relations
            .iter()
            .map(|r| (r, true))
            .chain(b.relations.iter().map(|r| (r, false)))
        {
            rels.push(Relation {
                lhs: lift(&r.lhs, left),
                rhs: r.rhs.iter().map(|(m, c)| (lift(m, left), c.clone())).collect(),
            });
        }
        Self::new(
            RingKind::TruncatedPolynomial,
            gens,
            rels,
            a.dimension + b.dimension,
        )
    }

    fn reduce_monomial(&self, m: &Monomial) -> Result<Combination> {
        self.reduce_rec(m, 0)
    }

    fn reduce_rec(&self, m: &Monomial, depth: usize) -> Result<Combination> {
        if depth > 64 {
            return Err(Error::IncompleteRing(self.format_monomial(m)));
        }
        if self.monomial_degree(m) > self.dimension {
            return Ok(Vec::new());
        }
        if self
            .generators
            .iter()
            .zip(&m.0)
            .any(|(g, &e)| g.cap.is_some_and(|c| e >= c))
        {
            return Ok(Vec::new());
        }
        if let Some(&i) = self.index.get(m) {
            return Ok(vec![(i, Rational::one())]);
        }
        let rel = self
            .relations
            .iter()
            .find(|r| r.lhs.divides(m))
            .ok_or_else(|| Error::IncompleteRing(self.format_monomial(m)))?;
        let rest = m.quotient(&rel.lhs);
        let mut acc: Vec<Rational> = vec![Rational::zero(); self.basis.len()];
        for (rm, c) in &rel.rhs {
            for (i, ci) in self.reduce_rec(&rm.times(&rest), depth + 1)? {
                acc[i] += &(c * &ci);
            }
        }
        Ok(acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    /// Expresses an arbitrary monomial in the basis.
    pub fn reduce(&self, m: &Monomial) -> Result<Vec<(usize, Rational)>> {
        if m.0.len() != self.generators.len() {
            return Err(Error::validation("monomial arity mismatch"));
        }
        self.reduce_monomial(m)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn product_of(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        mono_degree(&self.generators, m)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        fmt_mono(&self.generators, m)
    }

    /// Parses `1`, `h`, `h^2*e`.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        parse_monomial(&self.generators, s)
    }
}

/// Parses a monomial over an explicit generator list.
pub fn parse_monomial(generators: &[Generator], s: &str) -> Result<Monomial> {
    let mut m = Monomial::one(generators.len());
    let s = s.trim();
    if s == "1" {
        return Ok(m);
    }
    for part in s.split('*') {
        let part = part.trim();
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::validation(format!("bad exponent in {s:?}")))?,
            ),
            None => (part, 1),
        };
        let i = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::validation(format!("unknown generator {name:?} in {s:?}")))?;
        m.0[i] += exp;
    }
    Ok(m)
}

fn mono_degree(gens: &[Generator], m: &Monomial) -> u32 {
    gens.iter().zip(&m.0).map(|(g, e)| g.degree * e).sum()
}

fn fmt_mono(gens: &[Generator], m: &Monomial) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(&m.0)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.basis.iter().map(|m| self.format_monomial(m)).collect();
        write!(f, "{} ring, basis [{}]", self.kind.as_str(), b.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, degree: u32, cap: Option<u32>) -> Generator {
        Generator {
            name: name.into(),
            degree,
            cap,
        }
    }

    #[test]
    fn projective_plane_basis() {
        let r = Ring::truncated(vec![gen("h", 1, Some(3))], 2).unwrap();
        assert_eq!(r.rank(), 3);
        let h3 = r.parse_monomial("h^3").unwrap();
        assert!(r.reduce(&h3).unwrap().is_empty());
    }

    #[test]
    fn blowup_relations() {
        let gens = vec![gen("h", 1, Some(3)), gen("e", 1, None)];
        let m = |a, b| Monomial(vec![a, b]);
        let rels = vec![
            Relation {
                lhs: m(1, 1),
                rhs: vec![],
            },
            Relation {
                lhs: m(0, 2),
                rhs: vec![(m(2, 0), Rational::from_integer(-1))],
            },
        ];
        let r = Ring::new(RingKind::TruncatedPolynomial, gens, rels, 2).unwrap();
        assert_eq!(r.rank(), 4);
        assert!(r.reduce(&m(1, 1)).unwrap().is_empty());
        let e2 = r.reduce(&m(0, 2)).unwrap();
        assert_eq!(e2, vec![(r.index_of(&m(2, 0)).unwrap(), Rational::from_integer(-1))]);
    }

    #[test]
    fn product_ring() {
        let p1a = Ring::truncated(vec![gen("a", 1, Some(2))], 1).unwrap();
        let p1b = Ring::truncated(vec![gen("b", 1, Some(2))], 1).unwrap();
        let r = Ring::product(&p1a, &p1b).unwrap();
        assert_eq!(r.rank(), 4);
        assert_eq!(r.format_monomial(r.basis().last().unwrap()), "a*b");
    }

    #[test]
    fn looping_relations_are_incomplete() {
        let gens = vec![gen("a", 1, None), gen("b", 1, None)];
        let m = |a, b| Monomial(vec![a, b]);
        let rels = vec![
            Relation {
                lhs: m(2, 0),
                rhs: vec![(m(0, 2), Rational::one())],
            },
            Relation {
                lhs: m(0, 2),
                rhs: vec![(m(2, 0), Rational::one())],
            },
        ];
        let err = Ring::new(RingKind::TruncatedPolynomial, gens, rels, 2).unwrap_err();
        assert!(matches!(err, Error::IncompleteRing(_)));
    }
}
