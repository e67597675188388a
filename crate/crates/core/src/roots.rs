//! Root systems of types B and C in the orthonormal e-basis, with exact
//! rational coordinates.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Rational};

/// A nonzero vector of the weight space, usually a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(
    #[serde(
        serialize_with = "rational::serialize_rationals",
        deserialize_with = "rational::deserialize_rationals"
    )]
    Vec<Rational>,
);

impl Root {
    pub fn new(coords: Vec<Rational>) -> Result<Root> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::NotARoot("zero vector".into()));
        }
        Ok(Root(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Root {
        Root::new(rational::qv(coords)).expect("nonzero integer root")
    }

    /// `c * e_i`, zero-based `i`.
    fn unit(dim: usize, i: usize, c: i64) -> Root {
        let mut v = vec![Rational::zero(); dim];
        v[i] = q(c);
        Root(v)
    }

    fn pair(dim: usize, i: usize, si: i64, j: usize, sj: i64) -> Root {
        let mut v = vec![Rational::zero(); dim];
        v[i] = q(si);
        v[j] = q(sj);
        Root(v)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|x| -x).collect())
    }

    pub fn norm_sq(&self) -> Rational {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// The vector sum, `None` when it vanishes.
    pub fn checked_add(&self, other: &Root) -> Option<Root> {
        Root::new(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()).ok()
    }

    pub fn checked_sub(&self, other: &Root) -> Option<Root> {
        Root::new(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()).ok()
    }

    /// Parse expressions like `2e1`, `e1+e2`, `-e1+e2`, `e1-e2`, `-2e2`.
    pub fn parse(s: &str, dim: usize) -> Result<Root> {
        let bad = |why: &str| Error::Parse(format!("root {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut coords = vec![Rational::zero(); dim];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let end = body[1..]
                .find(['+', '-'])
                .map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (coef, idx) = term.split_once('e').ok_or_else(|| bad("missing e"))?;
            let coef = if coef.is_empty() {
                Rational::one()
            } else {
                rational::parse_rational(coef)?
            };
            let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
            if idx == 0 || idx > dim {
                return Err(bad("index out of range"));
            }
            coords[idx - 1] += coef * q(sign);
        }
        Root::new(coords)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coef = if mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            write!(f, "{sign}{coef}e{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Full root system with its standard positive system, simple roots and a
/// dominant central element `z`. Roots pair with `z` by the dot product.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    #[serde(serialize_with = "rational::serialize_rationals")]
    central: Vec<Rational>,
    roots: Vec<Root>,
    positive: Vec<Root>,
    simple: Vec<Root>,
    #[serde(skip)]
    lookup: HashSet<Root>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SubsetTag {
    NoncompactPositive,
    Theta,
    Delta1,
    Delta2,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSubset {
    pub tag: SubsetTag,
    pub members: Vec<Root>,
}

impl RootSubset {
    pub fn contains(&self, r: &Root) -> bool {
        self.members.contains(r)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn build_root_system(family: Family, rank: usize, central: Vec<Rational>) -> Result<RootSystem> {
    if rank == 0 {
        return Err(Error::InvalidRootSystem("rank must be at least 1".into()));
    }
    if central.len() != rank {
        return Err(Error::DimensionMismatch {
            left: rank,
            right: central.len(),
        });
    }
    let short_or_long = match family {
        Family::B => 1,
        Family::C => 2,
    };
    let mut positive = Vec::new();
    for r in 0..rank {
        for s in r + 1..rank {
            positive.push(Root::pair(rank, r, 1, s, -1));
            positive.push(Root::pair(rank, r, 1, s, 1));
        }
        positive.push(Root::unit(rank, r, short_or_long));
    }
    let mut simple: Vec<Root> = (0..rank - 1)
        .map(|i| Root::pair(rank, i, 1, i + 1, -1))
        .collect();
    simple.push(Root::unit(rank, rank - 1, short_or_long));

    for alpha in &simple {
        let pairing = alpha.dot(&central);
        if pairing.is_negative() {
            return Err(Error::NonDominant {
                root: alpha.to_string(),
                pairing: rational::format_rational(&pairing),
            });
        }
    }

    positive.sort_by(|a, b| b.cmp(a));
    let mut roots: Vec<Root> = positive.iter().cloned().chain(positive.iter().map(Root::neg)).collect();
    roots.sort_by(|a, b| b.cmp(a));
    let lookup = roots.iter().cloned().collect();
    Ok(RootSystem {
        family,
        rank,
        central,
        roots,
        positive,
        simple,
        lookup,
    })
}

/// `Z = (1,...,1)` for type C and `Z = (1,0,...,0)` for type B: the central
/// elements of the Hermitian forms sp(l,R) and so(2,2p-1).
pub fn hermitian_central_element(family: Family, rank: usize) -> Vec<Rational> {
    match family {
        Family::C => vec![Rational::one(); rank],
        Family::B => (0..rank).map(|i| if i == 0 { q(1) } else { q(0) }).collect(),
    }
}

impl RootSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn central(&self) -> &[Rational] {
        &self.central
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple(&self) -> &[Root] {
        &self.simple
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.lookup.contains(r)
    }

    pub fn contains_vec(&self, v: &[Rational]) -> bool {
        v.len() == self.rank && self.roots.iter().any(|r| r.coords() == v)
    }

    pub fn is_positive(&self, r: &Root) -> bool {
        self.positive.contains(r)
    }

    pub fn require(&self, r: &Root) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::NotARoot(r.to_string()))
        }
    }

    pub fn long_norm_sq(&self) -> Rational {
        self.roots.iter().map(Root::norm_sq).max().expect("nonempty")
    }

    pub fn is_long(&self, r: &Root) -> bool {
        r.norm_sq() == self.long_norm_sq()
    }

    /// Coordinates of `r` in the basis of simple roots.
    pub fn simple_coordinates(&self, r: &Root) -> Vec<Rational> {
        let basis: Vec<Vec<Rational>> = self.simple.iter().map(|s| s.coords().to_vec()).collect();
        rational::coordinates(&basis, r.coords()).expect("simple roots form a basis")
    }
}

pub fn noncompact_positive_roots(rs: &RootSystem) -> RootSubset {
    let members = rs
        .roots
        .iter()
        .filter(|r| r.dot(&rs.central).is_positive())
        .cloned()
        .collect();
    RootSubset {
        tag: SubsetTag::NoncompactPositive,
        members,
    }
}

/// `b ≠ ±a` and neither `a + b` nor `a - b` is a root.
pub fn is_strongly_orthogonal(rs: &RootSystem, a: &Root, b: &Root) -> bool {
    if a == b || *a == b.neg() {
        return false;
    }
    let sum_is_root = a.checked_add(b).is_some_and(|s| rs.contains(&s));
    let diff_is_root = a.checked_sub(b).is_some_and(|d| rs.contains(&d));
    !sum_is_root && !diff_is_root
}

/// Roots that are integer combinations of `theta`, which must be simple.
pub fn delta_theta(rs: &RootSystem, theta: &[Root]) -> Result<RootSubset> {
    for t in theta {
        if !rs.simple.contains(t) {
            return Err(Error::InvalidRootSystem(format!("{t} is not a simple root")));
        }
    }
    let support: Vec<usize> = theta
        .iter()
        .map(|t| rs.simple.iter().position(|s| s == t).expect("checked"))
        .collect();
    let members = rs
        .roots
        .iter()
        .filter(|r| {
            rs.simple_coordinates(r)
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || support.contains(&i))
        })
        .cloned()
        .collect();
    Ok(RootSubset {
        tag: SubsetTag::Theta,
        members,
    })
}

/// Indecomposable members of a positive system `pplus` of the subsystem it
/// spans.
pub fn simple_roots_of_positive_system(rs: &RootSystem, pplus: &[Root]) -> Result<Vec<Root>> {
    let set: HashSet<&Root> = pplus.iter().collect();
    for r in pplus {
        rs.require(r)?;
        if set.contains(&r.neg()) {
            return Err(Error::NotPositiveSystem(format!("contains both {r} and its negative")));
        }
    }
    let span: Vec<Vec<Rational>> = pplus.iter().map(|r| r.coords().to_vec()).collect();
    let spanned = rs
        .roots
        .iter()
        .filter(|r| rational::in_span(&span, r.coords()))
        .count();
    if spanned != 2 * pplus.len() {
        return Err(Error::NotPositiveSystem(format!(
            "{} roots given but the spanned subsystem has {spanned}",
            pplus.len()
        )));
    }
    for a in pplus {
        for b in pplus {
            if let Some(s) = a.checked_add(b) {
                if rs.contains(&s) && !set.contains(&s) {
                    return Err(Error::NotPositiveSystem(format!("not closed: {a} + {b} = {s}")));
                }
            }
        }
    }
    let decomposable = |r: &Root| {
        pplus
            .iter()
            .any(|a| r.checked_sub(a).is_some_and(|d| set.contains(&d)))
    };
    Ok(pplus.iter().filter(|r| !decomposable(r)).cloned().collect())
}

pub fn root_inner_product(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    rational::dot(a, b)
}
