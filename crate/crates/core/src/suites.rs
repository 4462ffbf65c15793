//! Named invariant suites, runnable from the command line.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::tau;
use crate::error::{Error, Result};
use crate::exactalg::FieldCtx;
use crate::multiset::RootMultiset;
use crate::par::map_slice;
use crate::pimod::{build_extension, ext_space, hom_pi_dim};
use crate::qrep::{ext1_q_dim, hom_q_dim};
use crate::quiver::DimVector;
use crate::starops::{Side, StarEngine};
use crate::taudata::{ext1_pi_via_t, TauMod};

pub const SUITES: &[&str] = &[
    "cb", "routes", "ar", "purity", "rigid", "duality", "commute", "crystal", "census",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases", self.name, self.cases)?;
        if !self.passed() {
            write!(f, ", {} failed", self.failures.len())?;
        }
        write!(f, ")")?;
        for x in &self.failures {
            write!(f, "\n  {x}")?;
        }
        Ok(())
    }
}

/// All components whose dimension vector has total at most `max_total`.
pub fn small_components(e: &StarEngine, max_total: usize) -> Result<Vec<RootMultiset>> {
    let n = e.quiver().vertex_count();
    let top = DimVector(vec![max_total; n]);
    let mut out = Vec::new();
    for d in top.box_below() {
        if d.total() <= max_total {
            out.extend(e.enumerate_components(&d)?);
        }
    }
    Ok(out)
}

/// Number of multisets of `roots` summing to `d`, by dynamic programming over roots.
pub fn kostant_count(roots: &[DimVector], d: &DimVector) -> u64 {
    let cells = d.box_below();
    let mut ways: BTreeMap<DimVector, u64> = cells.iter().map(|c| (c.clone(), 0)).collect();
    ways.insert(DimVector::zero(d.len()), 1);
    for r in roots {
        // unbounded knapsack: visit cells in increasing order
        let mut sorted = cells.clone();
        sorted.sort_by_key(DimVector::total);
        for c in &sorted {
            if let Some(prev) = c.checked_sub(r) {
                let add = ways.get(&prev).copied().unwrap_or(0);
                *ways.get_mut(c).expect("cell") += add;
            }
        }
    }
    ways[d]
}

fn pairs<T: Clone>(xs: &[T]) -> Vec<(T, T)> {
    xs.iter()
        .flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

struct Collector {
    name: String,
    cases: usize,
    failures: Vec<String>,
}

impl Collector {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) -> Result<()> {
        self.cases += 1;
        match ok {
            Ok(true) => Ok(()),
            Ok(false) => {
                self.failures.push(what());
                Ok(())
            }
            Err(e @ Error::NoMajority { .. }) => {
                self.failures.push(format!("{}: {e}", what()));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

/// Run one suite over components of total dimension at most `max_total`.
pub fn run_suite(e: &StarEngine, name: &str, max_total: usize) -> Result<SuiteReport> {
    let q = e.quiver().clone();
    let cat = e.catalog();
    let cfg = *e.config();
    let comps = small_components(e, max_total)?;
    let mut c = Collector::new(name);
    match name {
        "cb" => {
            let field = cfg.field;
            let results = map_slice(&pairs(&comps), cfg.mode, |(m, n)| -> Result<bool> {
                let mut ctx = FieldCtx::new(field, cfg.seed);
                let x1 = e.sample(m, &mut ctx)?;
                let x2 = e.sample(n, &mut ctx)?;
                let s = ext_space(&q, &x1, &x2)?;
                let x = build_extension(&q, &x1, &x2, &s.random_class(&mut ctx))?;
                let y = e.sample(m, &mut ctx)?;
                let ext = ext_space(&q, &x, &y)?.dim() as i64;
                let lhs = hom_pi_dim(&q, &x, &y) as i64 - ext + hom_pi_dim(&q, &y, &x) as i64;
                Ok(lhs == q.sym_form(x.dim(), y.dim())?)
            });
            for ((m, n), r) in pairs(&comps).iter().zip(results) {
                c.check(r, || format!("Hom/Ext identity fails on an extension of {m} by {n}"))?;
            }
        }
        "routes" => {
            let results = map_slice(&pairs(&comps), cfg.mode, |(m, n)| -> Result<bool> {
                let cb = e.generic_ext(m, n)?;
                let mq = cat.rep_of_multiset(m)?;
                let nq = cat.rep_of_multiset(n)?;
                let t = cfg
                    .run(|ctx| -> Result<usize> {
                        let x = TauMod::random(&q, mq.clone(), ctx)?;
                        let y = TauMod::random(&q, nq.clone(), ctx)?;
                        ext1_pi_via_t(&q, &x, &y)
                    })
                    .into_iter()
                    .collect::<Result<Vec<_>>>()?;
                Ok(t.into_iter().min() == Some(cb))
            });
            for ((m, n), r) in pairs(&comps).iter().zip(results) {
                c.check(r, || format!("ext routes disagree on ({m}, {n})"))?;
            }
        }
        "ar" => {
            let roots = cat.roots().roots().to_vec();
            for (a, b) in pairs(&roots) {
                let m = cat.indecomposable(&a)?;
                let n = cat.indecomposable(&b)?;
                let tm = tau(&q, m)?;
                let ok = ext1_q_dim(&q, m, n)? == hom_q_dim(&q, n, tm.rep());
                c.check(Ok(ok), || format!("AR formula fails for ({a}, {b})"))?;
            }
        }
        "purity" => {
            for m in &comps {
                let x = cat.rep_of_multiset(m)?;
                let orbit = q.group_dim(x.dim()) - hom_q_dim(&q, &x, &x);
                let t = tau(&q, &x)?;
                let ok = orbit + hom_q_dim(&q, &x, t.rep()) == q.rep_space_dim(x.dim());
                c.check(Ok(ok), || format!("dimension count fails for {m}"))?;
            }
        }
        "rigid" => {
            let mut cases: Vec<RootMultiset> = cat
                .roots()
                .roots()
                .iter()
                .map(|r| RootMultiset::singleton(r.clone()))
                .collect();
            cases.extend(comps.iter().filter(|m| m.is_semisimple()).cloned());
            for m in cases {
                let ok = e.is_rigid(&m);
                c.check(ok, || format!("{m} is not rigid"))?;
            }
        }
        "duality" => {
            for (m, n) in pairs(&comps) {
                let ok = (|| -> Result<bool> {
                    let lhs = e.dual_component(&e.star(&m, &n)?)?;
                    let rhs = e.star(&e.dual_component(&n)?, &e.dual_component(&m)?)?;
                    Ok(lhs == rhs)
                })();
                c.check(ok, || format!("(m*n)* != n* * m* for ({m}, {n})"))?;
            }
        }
        "commute" => {
            for (m, n) in pairs(&comps) {
                let ok = (|| -> Result<bool> {
                    let strong = e.strongly_commute(&m, &n)?;
                    let mn = e.star(&m, &n)?;
                    let nm = e.star(&n, &m)?;
                    let sum = m.sum(&n);
                    let mut ok = strong == (mn == sum && nm == sum);
                    if e.is_rigid(&m)? || e.is_rigid(&n)? {
                        ok &= strong == (mn == nm);
                    }
                    Ok(ok)
                })();
                c.check(ok, || format!("commutativity dichotomy fails for ({m}, {n})"))?;
            }
        }
        "crystal" => {
            for m in &comps {
                for i in 0..q.vertex_count() {
                    let ok = (|| -> Result<bool> {
                        let up = e.crystal_f(i, m, Side::Left)?;
                        Ok(e.crystal_e(i, &up)?.as_ref() == Some(m))
                    })();
                    c.check(ok, || format!("e{0} f{0} {m} != {m}", q.name(i)))?;
                }
            }
        }
        "census" => {
            let n = q.vertex_count();
            for d in DimVector(vec![max_total; n]).box_below() {
                if d.total() > max_total {
                    continue;
                }
                let got = e.enumerate_components(&d)?.len() as u64;
                let want = kostant_count(cat.roots().roots(), &d);
                c.check(Ok(got == want), || format!("|Irrcomp({d})| = {got}, expected {want}"))?;
            }
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown suite {other:?}; known: {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::TrialConfig;
    use crate::quiver::Quiver;

    #[test]
    fn kostant_counts() {
        let q = Quiver::a_n(3);
        let roots = q.positive_roots().unwrap();
        assert_eq!(kostant_count(roots.roots(), &DimVector(vec![1, 1, 1])), 4);
        assert_eq!(kostant_count(roots.roots(), &DimVector(vec![0, 0, 0])), 1);
        let a2 = Quiver::a_n(2).positive_roots().unwrap();
        assert_eq!(kostant_count(a2.roots(), &DimVector(vec![2, 2])), 3);
    }

    #[test]
    fn every_suite_passes_on_a2() {
        let e = StarEngine::new(&Quiver::a_n(2), TrialConfig::default()).unwrap();
        for s in SUITES {
            let r = run_suite(&e, s, 2).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0, "{s}");
        }
        assert!(run_suite(&e, "nope", 2).is_err());
    }
}
