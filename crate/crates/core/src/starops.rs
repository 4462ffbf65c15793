//! Irreducible components of `Λ(V)` in Dynkin type, named by root
//! multisets, and the `*` product with its crystal operators.
//!
//! Every randomized answer is decided over [`TrialConfig::trials`] seeded
//! trials. "Generic" means: among trials attaining the minimal observed
//! `dim Ext¹_Π`, the candidate with strictly the most votes. Ties are
//! reported as [`Error::NoMajority`].

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactalg::FieldCtx;
use crate::multiset::{kostant_partitions, RootMultiset};
use crate::par::{map_slice, TrialConfig};
use crate::pimod::{
    build_extension, dual_pimod, ext1_pi_dim_cb, ext_space, hom_pi_dim, hom_pi_space,
    is_rigid_component, kernel_of_surjection, sample_conormal, PiMod,
};
use crate::qrep::{combine, GradedMap};
use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigidity {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub name: RootMultiset,
    pub grdim: DimVector,
    pub rigid: Rigidity,
}

impl Component {
    pub fn new(name: RootMultiset, vertices: usize) -> Self {
        let grdim = name.grdim(vertices);
        Self {
            name,
            grdim,
            rigid: Rigidity::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarResult {
    pub result: RootMultiset,
    pub trials: usize,
    /// Trials (out of all) whose outcome was `result`.
    pub agreement: usize,
    pub min_ext1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocRecord {
    pub left: RootMultiset,
    pub right: RootMultiset,
    pub equal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Commutation {
    pub strong: bool,
    pub weak: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Crystal graph reached from the empty multiset by left `f̃ᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalGraph {
    pub nodes: Vec<RootMultiset>,
    /// `(from, to, i)` node indices and vertex.
    pub edges: Vec<(usize, usize, usize)>,
}

impl CrystalGraph {
    pub fn to_dot(&self, q: &Quiver) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (k, m) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{k} [label=\"{m}\"];");
        }
        for &(a, b, i) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b} [label=\"f{}\"];", q.name(i));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub components: Vec<RootMultiset>,
    /// `values[a][b]` = generic `dim Ext¹_Π` over `components[a] × components[b]`.
    pub values: Vec<Vec<usize>>,
}

/// Unique plurality winner, or the full tally.
fn plurality(votes: &[RootMultiset], trials: usize) -> Result<(RootMultiset, usize)> {
    let mut tally: BTreeMap<&RootMultiset, usize> = BTreeMap::new();
    for v in votes {
        *tally.entry(v).or_default() += 1;
    }
    let best = tally.values().copied().max().unwrap_or(0);
    let mut top = tally.iter().filter(|(_, &c)| c == best);
    match (top.next(), top.next()) {
        (Some((m, &c)), None) => Ok(((*m).clone(), c)),
        _ => Err(Error::NoMajority {
            trials,
            candidates: tally.iter().map(|(m, &c)| (m.to_string(), c)).collect(),
        }),
    }
}

/// Component calculus over one Dynkin quiver.
#[derive(Debug, Clone)]
pub struct StarEngine {
    catalog: Catalog,
    cfg: TrialConfig,
}

impl StarEngine {
    pub fn new(q: &Quiver, cfg: TrialConfig) -> Result<Self> {
        let catalog = Catalog::build(q, cfg.field, cfg.seed)?;
        Ok(Self { catalog, cfg })
    }

    pub fn quiver(&self) -> &Quiver {
        self.catalog.quiver()
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn config(&self) -> &TrialConfig {
        &self.cfg
    }

    fn vertices(&self) -> usize {
        self.quiver().vertex_count()
    }

    fn check(&self, m: &RootMultiset) -> Result<()> {
        m.check_roots(self.catalog.roots())
    }

    fn simple(&self, i: usize) -> Result<RootMultiset> {
        if i >= self.vertices() {
            return Err(Error::Precondition(format!("no vertex {i}")));
        }
        Ok(RootMultiset::singleton(DimVector::unit(self.vertices(), i)))
    }

    pub fn enumerate_components(&self, d: &DimVector) -> Result<Vec<RootMultiset>> {
        if d.len() != self.vertices() {
            return Err(Error::LengthMismatch {
                expected: self.vertices(),
                got: d.len(),
            });
        }
        Ok(kostant_partitions(self.catalog.roots(), d))
    }

    /// Component record with the rigidity flag filled in.
    pub fn component(&self, m: &RootMultiset) -> Result<Component> {
        let mut c = Component::new(m.clone(), self.vertices());
        c.rigid = if self.is_rigid(m)? {
            Rigidity::Yes
        } else {
            Rigidity::No
        };
        Ok(c)
    }

    pub fn is_rigid(&self, m: &RootMultiset) -> Result<bool> {
        Ok(is_rigid_component(&self.catalog, m, &self.cfg)?.rigid)
    }

    pub fn sample(&self, m: &RootMultiset, ctx: &mut FieldCtx) -> Result<PiMod> {
        sample_conormal(&self.catalog, m, ctx)
    }

    pub fn star_product(&self, m: &RootMultiset, n: &RootMultiset) -> Result<StarResult> {
        self.check(m)?;
        self.check(n)?;
        let q = self.quiver();
        let outcomes = self.cfg.run(|ctx| -> Result<(usize, RootMultiset)> {
            let x1 = self.sample(m, ctx)?;
            let x2 = self.sample(n, ctx)?;
            let space = ext_space(q, &x1, &x2)?;
            let class = space.random_class(ctx);
            let x = build_extension(q, &x1, &x2, &class)?;
            Ok((space.dim(), self.catalog.decompose(&x.forward_rep(q))?))
        });
        let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
        let min_ext1 = outcomes.iter().map(|o| o.0).min().unwrap_or(0);
        let kept: Vec<RootMultiset> = outcomes
            .iter()
            .filter(|o| o.0 == min_ext1)
            .map(|o| o.1.clone())
            .collect();
        let (result, _) = plurality(&kept, self.cfg.trials)?;
        let expected = m.grdim(self.vertices()).add(&n.grdim(self.vertices()));
        if result.grdim(self.vertices()) != expected {
            return Err(Error::Assertion(format!("grdim of {result} is not {expected}")));
        }
        let agreement = outcomes.iter().filter(|o| o.1 == result).count();
        Ok(StarResult {
            result,
            trials: self.cfg.trials,
            agreement,
            min_ext1,
        })
    }

    pub fn star(&self, m: &RootMultiset, n: &RootMultiset) -> Result<RootMultiset> {
        Ok(self.star_product(m, n)?.result)
    }

    /// Name of the direct-sum component `C₁ ⊕ C₂`.
    pub fn oplus_component(&self, m: &RootMultiset, n: &RootMultiset) -> Result<RootMultiset> {
        self.check(m)?;
        self.check(n)?;
        Ok(m.sum(n))
    }

    /// Minimum over trials of `dim Ext¹_Π(x₁, x₂)` on sampled conormal points.
    pub fn generic_ext(&self, m: &RootMultiset, n: &RootMultiset) -> Result<usize> {
        let q = self.quiver();
        let v = self.cfg.run(|ctx| -> Result<usize> {
            let x1 = self.sample(m, ctx)?;
            let x2 = self.sample(n, ctx)?;
            ext1_pi_dim_cb(q, &x1, &x2)
        });
        Ok(v.into_iter().collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0))
    }

    /// Minimum over trials of `dim Hom_Π(x₁, x₂)`.
    pub fn generic_hom(&self, m: &RootMultiset, n: &RootMultiset) -> Result<usize> {
        let q = self.quiver();
        let v = self.cfg.run(|ctx| -> Result<usize> {
            let x1 = self.sample(m, ctx)?;
            let x2 = self.sample(n, ctx)?;
            Ok(hom_pi_dim(q, &x1, &x2))
        });
        Ok(v.into_iter().collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0))
    }

    pub fn strongly_commute(&self, m: &RootMultiset, n: &RootMultiset) -> Result<bool> {
        self.check(m)?;
        self.check(n)?;
        Ok(self.generic_ext(m, n)? == 0)
    }

    pub fn weakly_commute(&self, m: &RootMultiset, n: &RootMultiset) -> Result<bool> {
        Ok(self.star(m, n)? == self.star(n, m)?)
    }

    pub fn commute(&self, m: &RootMultiset, n: &RootMultiset) -> Result<Commutation> {
        Ok(Commutation {
            strong: self.strongly_commute(m, n)?,
            weak: self.weakly_commute(m, n)?,
        })
    }

    pub fn crystal_f(&self, i: usize, m: &RootMultiset, side: Side) -> Result<RootMultiset> {
        let s = self.simple(i)?;
        match side {
            Side::Left => self.star(&s, m),
            Side::Right => self.star(m, &s),
        }
    }

    /// Kernel of a generic surjection onto `S(i)`; `None` when no sampled
    /// point has `S(i)` as a quotient.
    pub fn crystal_e(&self, i: usize, m: &RootMultiset) -> Result<Option<RootMultiset>> {
        self.check(m)?;
        self.simple(i)?;
        let q = self.quiver();
        let field = self.cfg.field;
        let s = PiMod::simple(q, field, i);
        let outcomes = self.cfg.run(|ctx| -> Result<Option<RootMultiset>> {
            let x = self.sample(m, ctx)?;
            let basis = hom_pi_space(q, &x, &s);
            let coeffs = ctx.random_vec(basis.len());
            let phi: GradedMap = combine(field, &basis, &coeffs, x.dim(), s.dim());
            if phi.0[i].is_zero() {
                return Ok(None);
            }
            let k = kernel_of_surjection(q, &x, i, &phi)?;
            Ok(Some(self.catalog.decompose(&k.forward_rep(q))?))
        });
        let hits: Vec<RootMultiset> = outcomes
            .into_iter()
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if hits.is_empty() {
            return Ok(None);
        }
        Ok(Some(plurality(&hits, self.cfg.trials)?.0))
    }

    pub fn dual_component(&self, m: &RootMultiset) -> Result<RootMultiset> {
        self.check(m)?;
        let q = self.quiver();
        let votes = self.cfg.run(|ctx| -> Result<RootMultiset> {
            let x = self.sample(m, ctx)?;
            self.catalog.decompose(&dual_pimod(q, &x).forward_rep(q))
        });
        let votes = votes.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(plurality(&votes, self.cfg.trials)?.0)
    }

    pub fn associativity_probe(&self, m: &RootMultiset, n: &RootMultiset, k: &RootMultiset) -> Result<AssocRecord> {
        let left = self.star(&self.star(m, n)?, k)?;
        let right = self.star(m, &self.star(n, k)?)?;
        let equal = left == right;
        Ok(AssocRecord { left, right, equal })
    }

    /// Whether `n ↦ m_rigid * n` separates the given components.
    pub fn cancellation_probe(&self, m_rigid: &RootMultiset, ns: &[RootMultiset]) -> Result<bool> {
        if !self.is_rigid(m_rigid)? {
            return Err(Error::Precondition(format!("{m_rigid} is not rigid")));
        }
        let images = map_slice(ns, self.cfg.mode, |n| self.star(m_rigid, n))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        for (a, x) in images.iter().enumerate() {
            for (b, y) in images.iter().enumerate().skip(a + 1) {
                if x == y && ns[a] != ns[b] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Breadth-first closure of `{0}` under left `f̃ᵢ`, `depth` steps deep.
    pub fn crystal_graph(&self, depth: usize) -> Result<CrystalGraph> {
        let n = self.vertices();
        let mut nodes = vec![RootMultiset::empty()];
        let mut index: BTreeMap<RootMultiset, usize> = BTreeMap::new();
        index.insert(RootMultiset::empty(), 0);
        let mut edges = Vec::new();
        let mut frontier = VecDeque::from([0usize]);
        for _ in 0..depth {
            let layer: Vec<usize> = frontier.drain(..).collect();
            let jobs: Vec<(usize, usize)> = layer
                .iter()
                .flat_map(|&a| (0..n).map(move |i| (a, i)))
                .collect();
            let images = map_slice(&jobs, self.cfg.mode, |&(a, i)| {
                self.crystal_f(i, &nodes[a], Side::Left)
            });
            for (&(a, i), img) in jobs.iter().zip(images) {
                let img = img?;
                let b = match index.get(&img) {
                    Some(&b) => b,
                    None => {
                        nodes.push(img.clone());
                        index.insert(img, nodes.len() - 1);
                        frontier.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.push((a, b, i));
            }
        }
        Ok(CrystalGraph { nodes, edges })
    }

    pub fn ext_table(&self, d: &DimVector) -> Result<ExtTable> {
        let components = self.enumerate_components(d)?;
        let pairs: Vec<(usize, usize)> = (0..components.len())
            .flat_map(|a| (0..components.len()).map(move |b| (a, b)))
            .collect();
        let flat = map_slice(&pairs, self.cfg.mode, |&(a, b)| {
            self.generic_ext(&components[a], &components[b])
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let values = flat
            .chunks(components.len().max(1))
            .map(<[usize]>::to_vec)
            .collect();
        Ok(ExtTable { components, values })
    }
}
