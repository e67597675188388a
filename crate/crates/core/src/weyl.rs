//! Weyl groups of types B and C as signed permutations of the e-basis.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Rational};
use crate::roots::{Root, RootSystem};

/// `e_i ↦ signs[i] · e_{perm[i]}` (zero-based internally; one-based on the
/// wire and in text).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WeylWire", into = "WeylWire")]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct WeylWire {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl TryFrom<WeylWire> for WeylElement {
    type Error = Error;
    fn try_from(w: WeylWire) -> Result<WeylElement> {
        if w.perm.contains(&0) {
            return Err(Error::InvalidWeylElement("perm is one-based".into()));
        }
        WeylElement::new(w.perm.iter().map(|p| p - 1).collect(), w.signs)
    }
}

impl From<WeylElement> for WeylWire {
    fn from(w: WeylElement) -> WeylWire {
        WeylWire {
            perm: w.perm.iter().map(|p| p + 1).collect(),
            signs: w.signs,
        }
    }
}

impl WeylElement {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<WeylElement> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::InvalidWeylElement(format!(
                "{n} images but {} signs",
                signs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidWeylElement(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidWeylElement("signs must be +1 or -1".into()));
        }
        Ok(WeylElement { perm, signs })
    }

    pub fn identity(n: usize) -> WeylElement {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// `-1`, the longest element of types B and C.
    pub fn longest(n: usize) -> WeylElement {
        WeylElement {
            perm: (0..n).collect(),
            signs: vec![-1; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.dim())
    }

    /// The orthogonal reflection in `v`, provided it is a signed permutation.
    pub fn reflection_in(v: &[Rational]) -> Result<WeylElement> {
        let n = v.len();
        let nsq: Rational = v.iter().map(|x| x * x).sum();
        if nsq.is_zero() {
            return Err(Error::InvalidWeylElement("reflection in zero vector".into()));
        }
        let mut perm = vec![0; n];
        let mut signs = vec![0i8; n];
        for i in 0..n {
            let c = q(2) * v[i] / nsq;
            let img: Vec<Rational> = (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() } - c * v[j])
                .collect();
            let nz: Vec<usize> = (0..n).filter(|&j| !img[j].is_zero()).collect();
            match nz.as_slice() {
                [j] if img[*j] == Rational::one() || img[*j] == -Rational::one() => {
                    perm[i] = *j;
                    signs[i] = if img[*j] == Rational::one() { 1 } else { -1 };
                }
                _ => {
                    return Err(Error::InvalidWeylElement(
                        "reflection is not a signed permutation".into(),
                    ))
                }
            }
        }
        WeylElement::new(perm, signs)
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = v[i] * q(self.signs[i] as i64);
        }
        out
    }

    pub fn apply_root(&self, r: &Root) -> Root {
        Root::new(self.apply(r.coords())).expect("orthogonal maps preserve nonzero")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.dim();
        let perm = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let signs = (0..n)
            .map(|i| other.signs[i] * self.signs[other.perm[i]])
            .collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        WeylElement { perm, signs }
    }

    pub fn permutes_roots(&self, rs: &RootSystem) -> bool {
        self.dim() == rs.rank() && rs.roots().iter().all(|r| rs.contains(&self.apply_root(r)))
    }

    /// Parse `e`/`id`, or comma-separated signed one-based images such as
    /// `-2,1` (meaning e1 ↦ -e2, e2 ↦ e1). Brackets are optional.
    pub fn parse(s: &str, n: usize) -> Result<WeylElement> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t == "e" || t == "id" {
            return Ok(WeylElement::identity(n));
        }
        let mut perm = Vec::new();
        let mut signs = Vec::new();
        for tok in t.split(',') {
            let v: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad signed image {tok:?} in {s:?}")))?;
            if v == 0 {
                return Err(Error::Parse("images are one-based".into()));
            }
            perm.push(v.unsigned_abs() as usize - 1);
            signs.push(if v < 0 { -1 } else { 1 });
        }
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: perm.len(),
            });
        }
        WeylElement::new(perm, signs)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(p, s)| format!("{}{}", if *s < 0 { "-" } else { "" }, p + 1))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn reflection(rs: &RootSystem, gamma: &Root) -> Result<WeylElement> {
    rs.require(gamma)?;
    WeylElement::reflection_in(gamma.coords())
}

/// The subgroup `W_Θ` with its elements listed in breadth-first order.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicSubgroup {
    pub theta: Vec<Root>,
    pub elements: Vec<WeylElement>,
}

impl ParabolicSubgroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.elements.contains(w)
    }
}

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

pub fn enumerate_parabolic(rs: &RootSystem, theta: &[Root], cap: usize) -> Result<ParabolicSubgroup> {
    for t in theta {
        if !rs.simple().contains(t) {
            return Err(Error::InvalidRootSystem(format!("{t} is not a simple root")));
        }
    }
    let gens: Vec<WeylElement> = theta
        .iter()
        .map(|t| reflection(rs, t))
        .collect::<Result<_>>()?;
    let id = WeylElement::identity(rs.rank());
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(u) = queue.pop_front() {
        for g in &gens {
            let v = g.compose(&u);
            if seen.insert(v.clone()) {
                if elements.len() == cap {
                    return Err(Error::EnumerationCap { cap });
                }
                elements.push(v.clone());
                queue.push_back(v);
            }
        }
    }
    Ok(ParabolicSubgroup {
        theta: theta.to_vec(),
        elements,
    })
}

/// `{ w(α) | α ∈ Δ⁺ }`.
pub fn act_on_positive_system(w: &WeylElement, rs: &RootSystem) -> Vec<Root> {
    rs.positive().iter().map(|a| w.apply_root(a)).collect()
}

/// Every element of `W`, i.e. `W_Ψ`.
pub fn whole_group(rs: &RootSystem) -> Result<ParabolicSubgroup> {
    enumerate_parabolic(rs, rs.simple(), DEFAULT_ENUMERATION_CAP)
}
