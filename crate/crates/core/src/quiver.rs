//! Quivers, dimension vectors, the Euler and symmetric forms, Dynkin
//! recognition and positive roots.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded dimension: one nonnegative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        assert_eq!(self.len(), other.len());
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// `self - other` when every coordinate stays nonnegative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All vectors `v` with `0 <= v <= self` componentwise, in lexicographic order.
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = vec![DimVector(Vec::new())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=bound).map(move |x| {
                        let mut w = v.0.clone();
                        w.push(x);
                        DimVector(w)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Accepts `1,0,2` or `[1,0,2]`.
impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t);
        if t.trim().is_empty() {
            return Ok(DimVector(Vec::new()));
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad coordinate {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(names: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = names.len();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidQuiver("duplicate vertex names".into()));
        }
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow endpoint out of range: {}->{}",
                    a.source, a.target
                )));
            }
            if a.source == a.target {
                return Err(Error::InvalidQuiver(format!(
                    "loop at vertex {}",
                    names[a.source]
                )));
            }
        }
        Ok(Self { names, arrows })
    }

    /// Vertices named `1..=n`; arrows given as 0-based index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .map(|&(source, target)| Arrow { source, target })
            .collect();
        Self::new(names, arrows)
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn a_n(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid A_n")
    }

    /// Three outer vertices pointing to the center, which is vertex 4.
    pub fn d4() -> Self {
        Self::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).expect("valid D4")
    }

    /// `A<n>` for `n >= 1` or `D4`.
    pub fn builtin(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        if upper == "D4" {
            return Ok(Self::d4());
        }
        if let Some(rest) = upper.strip_prefix('A') {
            if let Ok(n) = rest.parse::<usize>() {
                if n >= 1 {
                    return Ok(Self::a_n(n));
                }
            }
        }
        Err(Error::InvalidQuiver(format!("unknown builtin quiver {name:?}")))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            names: self.names.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    fn check_len(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `Σ d(i)e(i) − Σ_h d(h')e(h'')`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| (a * b) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| (d.0[a.source] * e.0[a.target]) as i64)
            .sum();
        Ok(diag - off)
    }

    pub fn sym_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        Ok(self.euler_form(d, e)? + self.euler_form(e, d)?)
    }

    /// `dim R_Q(V) = Σ_h d(h')d(h'')`.
    pub fn rep_space_dim(&self, d: &DimVector) -> usize {
        self.arrows
            .iter()
            .map(|a| d.0[a.source] * d.0[a.target])
            .sum()
    }

    /// `dim G_V = Σ d(i)^2`.
    pub fn group_dim(&self, d: &DimVector) -> usize {
        d.0.iter().map(|x| x * x).sum()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Sources first; `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// ADE label (components joined by `+`) when the underlying graph is a
    /// simply laced Dynkin diagram, `None` otherwise.
    pub fn dynkin_type(&self) -> Option<String> {
        let n = self.vertex_count();
        let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            let key = (a.source.min(a.target), a.source.max(a.target));
            *edge_count.entry(key).or_default() += 1;
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        if edge_count.values().any(|&c| c > 1) {
            return None;
        }
        let mut seen = vec![false; n];
        let mut labels = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            labels.push(component_type(&comp, &adj)?);
        }
        Some(labels.join("+"))
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin_type().is_some()
    }

    pub fn positive_roots(&self) -> Result<RootSystem> {
        if !self.is_dynkin() {
            return Err(Error::NotDynkin);
        }
        let n = self.vertex_count();
        let mut found: BTreeSet<DimVector> = BTreeSet::new();
        let mut queue: VecDeque<DimVector> = (0..n).map(|i| DimVector::unit(n, i)).collect();
        found.extend(queue.iter().cloned());
        // every positive root is reachable from a simple root by adding simple roots
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let cand = r.add(&DimVector::unit(n, i));
                if !found.contains(&cand) && self.euler_form(&cand, &cand)? == 1 {
                    found.insert(cand.clone());
                    queue.push_back(cand);
                }
            }
        }
        Ok(RootSystem::new(found.into_iter().rev().collect()))
    }
}

fn component_type(comp: &[usize], adj: &[Vec<usize>]) -> Option<String> {
    let size = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != size {
        return None;
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Some(format!("A{size}")),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(format!("D{size}")),
                [1, 2, 2] => Some("E6".into()),
                [1, 2, 3] => Some("E7".into()),
                [1, 2, 4] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Positive roots in canonical (descending lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    roots: Vec<DimVector>,
    index: HashMap<DimVector, usize>,
}

impl RootSystem {
    fn new(roots: Vec<DimVector>) -> Self {
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        Self { roots, index }
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn id(&self, root: &DimVector) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn root(&self, id: usize) -> &DimVector {
        &self.roots[id]
    }

    pub fn contains(&self, v: &DimVector) -> bool {
        self.index.contains_key(v)
    }

    pub fn simple(&self, i: usize) -> usize {
        let n = self.roots.first().map_or(0, DimVector::len);
        self.id(&DimVector::unit(n, i)).expect("simple roots are roots")
    }
}
