//! Multisets of positive roots, the names of components in Dynkin type.
//!
//! Text form: bracketed root vectors joined by `+`, with an optional `^k`
//! multiplicity, e.g. `[1,1]+[1,0]^2`. Roots are emitted in descending
//! lexicographic order; the empty multiset is written `0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RootMultiset {
    parts: BTreeMap<DimVector, usize>,
}

impl RootMultiset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(root: DimVector) -> Self {
        Self::from_parts([(root, 1)])
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (DimVector, usize)>) -> Self {
        let mut m = Self::empty();
        for (r, k) in parts {
            m.insert(r, k);
        }
        m
    }

    pub fn insert(&mut self, root: DimVector, k: usize) {
        if k > 0 {
            *self.parts.entry(root).or_default() += k;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, root: &DimVector) -> usize {
        self.parts.get(root).copied().unwrap_or(0)
    }

    /// Roots with multiplicities, in canonical (descending) order.
    pub fn parts(&self) -> impl Iterator<Item = (&DimVector, usize)> {
        self.parts.iter().rev().map(|(r, &k)| (r, k))
    }

    /// Roots repeated by multiplicity, canonical order.
    pub fn expanded(&self) -> Vec<DimVector> {
        self.parts()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), k))
            .collect()
    }

    /// Number of roots counted with multiplicity.
    pub fn size(&self) -> usize {
        self.parts.values().sum()
    }

    /// Multiset sum (the name of the direct-sum component).
    pub fn sum(&self, other: &RootMultiset) -> RootMultiset {
        let mut out = self.clone();
        for (r, k) in other.parts() {
            out.insert(r.clone(), k);
        }
        out
    }

    pub fn grdim(&self, vertices: usize) -> DimVector {
        self.parts()
            .fold(DimVector::zero(vertices), |acc, (r, k)| acc.add(&r.scaled(k)))
    }

    pub fn check_roots(&self, roots: &RootSystem) -> Result<()> {
        match self.parts.keys().find(|r| !roots.contains(r)) {
            Some(r) => Err(Error::NotARoot(r.to_string())),
            None => Ok(()),
        }
    }

    /// True when every root is simple.
    pub fn is_semisimple(&self) -> bool {
        self.parts.keys().all(|r| r.total() == 1)
    }

    fn sort_key(&self) -> Vec<DimVector> {
        self.expanded()
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (n, (r, k)) in self.parts().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            write!(f, "{r}")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RootMultiset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "0" {
            return Ok(Self::empty());
        }
        let mut out = Self::empty();
        for term in t.split('+') {
            let (root, mult) = match term.split_once('^') {
                Some((r, k)) => (
                    r,
                    k.parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad multiplicity in {term:?}: {e}")))?,
                ),
                None => (term, 1),
            };
            if !(root.starts_with('[') && root.ends_with(']')) {
                return Err(Error::Parse(format!("root literal must be bracketed: {term:?}")));
            }
            let v: DimVector = root.parse()?;
            if v.is_zero() {
                return Err(Error::Parse(format!("zero vector is not a root: {term:?}")));
            }
            out.insert(v, mult);
        }
        Ok(out)
    }
}

impl Serialize for RootMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All multisets of positive roots with graded dimension `d`, largest roots first.
pub fn kostant_partitions(roots: &RootSystem, d: &DimVector) -> Vec<RootMultiset> {
    fn go(
        roots: &[DimVector],
        k: usize,
        rest: &DimVector,
        cur: &mut Vec<(DimVector, usize)>,
        out: &mut Vec<RootMultiset>,
    ) {
        if rest.is_zero() {
            out.push(RootMultiset::from_parts(cur.iter().cloned()));
            return;
        }
        if k == roots.len() {
            return;
        }
        let r = &roots[k];
        let mut left = rest.clone();
        let mut mult = 0;
        loop {
            if mult > 0 {
                cur.push((r.clone(), mult));
            }
            go(roots, k + 1, &left, cur, out);
            if mult > 0 {
                cur.pop();
            }
            match left.checked_sub(r) {
                Some(next) => {
                    left = next;
                    mult += 1;
                }
                None => break,
            }
        }
    }
    let mut out = Vec::new();
    go(roots.roots(), 0, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|m| std::cmp::Reverse(m.sort_key()));
    out
}
