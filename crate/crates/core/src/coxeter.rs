//! BGP reflection functors, the Coxeter functors and the
//! Auslander–Reiten translation `τ = ε Φ⁺` with its action on morphisms.
//!
//! Each reflection keeps the inclusion of the new space at the reflected
//! vertex (kernel at a sink, cokernel projection at a source) so that
//! morphisms can be pushed through the same sequence of steps.

use crate::error::{Error, Result};
use crate::exactalg::{Mat, PrimeField};
use crate::qrep::{GradedMap, QRep};
use crate::quiver::{Arrow, DimVector, Quiver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectKind {
    /// At a sink: new space is the kernel of the summed incoming maps.
    Plus,
    /// At a source: new space is the cokernel of the stacked outgoing maps.
    Minus,
}

/// Data recorded by one reflection, enough to transport morphisms.
#[derive(Debug, Clone)]
pub struct ReflectStep {
    pub kind: ReflectKind,
    pub vertex: usize,
    /// Incident arrows in index order, with the far endpoint of each.
    pub incident: Vec<(usize, usize)>,
    /// `Plus`: kernel inclusion `K` (columns). `Minus`: cokernel projection `P`.
    pub basis: Mat,
    /// `Plus`: left inverse of `K`. `Minus`: right inverse of `P`.
    pub inverse: Mat,
}

#[derive(Debug, Clone)]
pub struct Reflected {
    pub quiver: Quiver,
    pub rep: QRep,
    pub step: ReflectStep,
}

fn reverse_at(q: &Quiver, i: usize) -> Quiver {
    let arrows = q
        .arrows()
        .iter()
        .map(|a| {
            if a.source == i || a.target == i {
                Arrow {
                    source: a.target,
                    target: a.source,
                }
            } else {
                *a
            }
        })
        .collect();
    Quiver::new(q.names().to_vec(), arrows).expect("reversal keeps a valid quiver")
}

fn block_offsets(dims: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for d in dims {
        offs.push(total);
        total += d;
    }
    (offs, total)
}

pub fn reflect_plus(q: &Quiver, i: usize, m: &QRep) -> Result<Reflected> {
    if !q.is_sink(i) {
        return Err(Error::NotSink(i));
    }
    let f = m.field();
    let d = m.dim();
    let incident: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.target == i)
        .map(|(k, a)| (k, a.source))
        .collect();
    let (offs, total) = block_offsets(incident.iter().map(|&(_, s)| d.0[s]));
    let mut sum_map = Mat::zeros(f, d.0[i], total);
    for (&(k, _), &o) in incident.iter().zip(&offs) {
        sum_map.paste(0, o, m.map(k));
    }
    let kernel = sum_map.kernel_basis();
    let inverse = kernel.left_inverse()?;
    let new_q = reverse_at(q, i);
    let mut new_dim = d.clone();
    new_dim.0[i] = kernel.cols();
    let mut maps = m.maps().to_vec();
    for (&(k, s), &o) in incident.iter().zip(&offs) {
        maps[k] = kernel.submatrix(o, 0, d.0[s], kernel.cols());
    }
    let rep = QRep::new(&new_q, f, new_dim, maps)?;
    Ok(Reflected {
        quiver: new_q,
        rep,
        step: ReflectStep {
            kind: ReflectKind::Plus,
            vertex: i,
            incident,
            basis: kernel,
            inverse,
        },
    })
}

pub fn reflect_minus(q: &Quiver, i: usize, m: &QRep) -> Result<Reflected> {
    if !q.is_source(i) {
        return Err(Error::NotSource(i));
    }
    let f = m.field();
    let d = m.dim();
    let incident: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.source == i)
        .map(|(k, a)| (k, a.target))
        .collect();
    let (offs, total) = block_offsets(incident.iter().map(|&(_, t)| d.0[t]));
    let mut stacked = Mat::zeros(f, total, d.0[i]);
    for (&(k, _), &o) in incident.iter().zip(&offs) {
        stacked.paste(o, 0, m.map(k));
    }
    let proj = stacked.transpose().kernel_basis().transpose();
    let inverse = proj.right_inverse()?;
    let new_q = reverse_at(q, i);
    let mut new_dim = d.clone();
    new_dim.0[i] = proj.rows();
    let mut maps = m.maps().to_vec();
    for (&(k, t), &o) in incident.iter().zip(&offs) {
        maps[k] = proj.submatrix(0, o, proj.rows(), d.0[t]);
    }
    let rep = QRep::new(&new_q, f, new_dim, maps)?;
    Ok(Reflected {
        quiver: new_q,
        rep,
        step: ReflectStep {
            kind: ReflectKind::Minus,
            vertex: i,
            incident,
            basis: proj,
            inverse,
        },
    })
}

/// Push `f: M → N` through one reflection, given the steps recorded for `M` and `N`.
pub fn transport_step(
    field: PrimeField,
    from: &ReflectStep,
    to: &ReflectStep,
    f: &GradedMap,
) -> GradedMap {
    assert_eq!(from.vertex, to.vertex);
    let blocks = from
        .incident
        .iter()
        .map(|&(_, v)| &f.0[v])
        .fold(Mat::zeros(field, 0, 0), |acc, b| acc.block_diag(b));
    let mut out = f.clone();
    out.0[from.vertex] = match from.kind {
        ReflectKind::Plus => to.inverse.mul(&blocks).mul(&from.basis),
        ReflectKind::Minus => to.basis.mul(&blocks).mul(&from.inverse),
    };
    out
}

/// Lexicographically first sequence where each vertex is a sink after the
/// previous reflections.
pub fn admissible_sinks(q: &Quiver) -> Result<Vec<usize>> {
    admissible(q, true)
}

pub fn admissible_sources(q: &Quiver) -> Result<Vec<usize>> {
    admissible(q, false)
}

fn admissible(q: &Quiver, sinks: bool) -> Result<Vec<usize>> {
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let n = q.vertex_count();
    let mut cur = q.clone();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .find(|&v| !used[v] && if sinks { cur.is_sink(v) } else { cur.is_source(v) })
            .ok_or(Error::CyclicQuiver)?;
        used[v] = true;
        order.push(v);
        cur = reverse_at(&cur, v);
    }
    Ok(order)
}

/// `τM` together with the reflection transcript used to build it.
#[derive(Debug, Clone)]
pub struct TauImage {
    rep: QRep,
    steps: Vec<ReflectStep>,
}

impl TauImage {
    pub fn rep(&self) -> &QRep {
        &self.rep
    }

    pub fn steps(&self) -> &[ReflectStep] {
        &self.steps
    }

    /// `τ(f) : τM → τN` for `f : M → N`, where `self` is the image of `M`.
    /// The sign twist acts trivially on morphisms.
    pub fn transport(&self, target: &TauImage, f: &GradedMap) -> GradedMap {
        let field = self.rep.field();
        self.steps
            .iter()
            .zip(&target.steps)
            .fold(f.clone(), |g, (a, b)| transport_step(field, a, b, &g))
    }
}

/// Φ⁺ followed by the sign twist.
pub fn tau(q: &Quiver, m: &QRep) -> Result<TauImage> {
    let order = admissible_sinks(q)?;
    let mut cur_q = q.clone();
    let mut cur = m.clone();
    let mut steps = Vec::with_capacity(order.len());
    for v in order {
        let r = reflect_plus(&cur_q, v, &cur)?;
        cur_q = r.quiver;
        cur = r.rep;
        steps.push(r.step);
    }
    debug_assert_eq!(&cur_q, q);
    Ok(TauImage {
        rep: cur.sign_twist(),
        steps,
    })
}

/// Sign twist followed by Φ⁻.
pub fn tau_minus(q: &Quiver, m: &QRep) -> Result<QRep> {
    let order = admissible_sources(q)?;
    let mut cur_q = q.clone();
    let mut cur = m.sign_twist();
    for v in order {
        let r = reflect_minus(&cur_q, v, &cur)?;
        cur_q = r.quiver;
        cur = r.rep;
    }
    Ok(cur)
}

/// Coxeter transformation on dimension vectors, same reflection order as [`tau`].
pub fn coxeter_on_dims(q: &Quiver, d: &[i64]) -> Result<Vec<i64>> {
    let mut v = d.to_vec();
    for i in admissible_sinks(q)? {
        let nb: i64 = q
            .arrows()
            .iter()
            .filter_map(|a| {
                if a.source == i {
                    Some(v[a.target])
                } else if a.target == i {
                    Some(v[a.source])
                } else {
                    None
                }
            })
            .sum();
        v[i] = nb - v[i];
    }
    Ok(v)
}

/// The indecomposable projective `KQe_i`: paths starting at `i`.
pub fn path_projective(q: &Quiver, i: usize, field: PrimeField) -> Result<QRep> {
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let n = q.vertex_count();
    // paths as arrow sequences; basis of vertex j = paths ending at j
    let mut paths: Vec<(usize, Vec<usize>)> = vec![(i, Vec::new())];
    let mut k = 0;
    while k < paths.len() {
        let (end, ref p) = paths[k];
        let p = p.clone();
        for (h, a) in q.arrows().iter().enumerate() {
            if a.source == end {
                let mut ext = p.clone();
                ext.push(h);
                paths.push((a.target, ext));
            }
        }
        k += 1;
    }
    let mut local = vec![Vec::new(); n];
    for (idx, (end, _)) in paths.iter().enumerate() {
        local[*end].push(idx);
    }
    let pos = |idx: usize| -> usize {
        let end = paths[idx].0;
        local[end].iter().position(|&x| x == idx).unwrap()
    };
    let dim = DimVector(local.iter().map(Vec::len).collect());
    let mut maps: Vec<Mat> = q
        .arrows()
        .iter()
        .map(|a| Mat::zeros(field, dim.0[a.target], dim.0[a.source]))
        .collect();
    for (idx, (end, p)) in paths.iter().enumerate() {
        for (h, a) in q.arrows().iter().enumerate() {
            if a.source == *end {
                let mut ext = p.clone();
                ext.push(h);
                let tgt = paths
                    .iter()
                    .position(|(e, path)| *e == a.target && *path == ext)
                    .expect("extended path enumerated");
                maps[h].set(pos(tgt), pos(idx), 1);
            }
        }
    }
    QRep::new(q, field, dim, maps)
}

/// Underlying `Q`-representation of the projective Π-module `Πe_i`,
/// assembled as `⊕_{m≥0} (τ⁻)^m (KQe_i)`.
pub fn projective_pi_module(q: &Quiver, i: usize, field: PrimeField) -> Result<QRep> {
    if !q.is_dynkin() {
        return Err(Error::NotDynkin);
    }
    let mut term = path_projective(q, i, field)?;
    let mut acc = QRep::zero(q, field, DimVector::zero(q.vertex_count()));
    let cap = 4 * q.vertex_count() * q.vertex_count() + 8;
    for _ in 0..cap {
        if term.is_zero_rep() {
            return Ok(acc);
        }
        acc = acc.direct_sum(&term);
        term = tau_minus(q, &term)?;
    }
    Err(Error::Precondition("τ⁻-orbit did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::qrep::hom_q_dim;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn a2() -> Quiver {
        Quiver::a_n(2)
    }

    fn beta_a2() -> QRep {
        QRep::new(&a2(), f(), DimVector(vec![1, 1]), vec![Mat::from_i64_rows(f(), &[vec![2]])])
            .unwrap()
    }

    #[test]
    fn reflect_plus_examples() {
        let q = a2();
        let r = reflect_plus(&q, 1, &beta_a2()).unwrap();
        assert_eq!(r.rep.dim(), &DimVector(vec![1, 0]));
        assert_eq!(r.quiver.arrows()[0], Arrow { source: 1, target: 0 });
        let s2 = QRep::simple(&q, f(), 1);
        assert!(reflect_plus(&q, 1, &s2).unwrap().rep.is_zero_rep());
        assert_eq!(reflect_plus(&q, 0, &s2).unwrap_err(), Error::NotSink(0));
    }

    #[test]
    fn reflect_minus_examples() {
        let q = a2();
        let r = reflect_minus(&q, 0, &beta_a2()).unwrap();
        assert_eq!(r.rep.dim(), &DimVector(vec![0, 1]));
        let s1 = QRep::simple(&q, f(), 0);
        assert!(reflect_minus(&q, 0, &s1).unwrap().rep.is_zero_rep());
        assert_eq!(reflect_minus(&q, 1, &s1).unwrap_err(), Error::NotSource(1));
    }

    #[test]
    fn reflections_undo_each_other() {
        let q = Quiver::a_n(3);
        let cat = Catalog::build(&q, f(), 3).unwrap();
        let sink = 2;
        for r in cat.roots().roots() {
            if r == &DimVector::unit(3, sink) {
                continue;
            }
            let m = cat.indecomposable(r).unwrap();
            let up = reflect_plus(&q, sink, m).unwrap();
            let back = reflect_minus(&up.quiver, sink, &up.rep).unwrap();
            assert_eq!(back.quiver, q);
            assert_eq!(cat.decompose(&back.rep).unwrap(), cat.decompose(m).unwrap());
        }
    }

    #[test]
    fn tau_a2() {
        let q = a2();
        let s1 = QRep::simple(&q, f(), 0);
        let s2 = QRep::simple(&q, f(), 1);
        let t = tau(&q, &s1).unwrap();
        assert_eq!(t.rep().dim(), &DimVector(vec![0, 1]));
        assert!(tau(&q, &s2).unwrap().rep().is_zero_rep());
        assert!(tau(&q, &beta_a2()).unwrap().rep().is_zero_rep());
        assert!(tau_minus(&q, &s1).unwrap().is_zero_rep());
        assert_eq!(tau_minus(&q, &s2).unwrap().dim(), &DimVector(vec![1, 0]));
        let cyclic = Quiver::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        let z = QRep::zero(&cyclic, f(), DimVector(vec![1, 1]));
        assert_eq!(tau(&cyclic, &z).unwrap_err(), Error::CyclicQuiver);
    }

    #[test]
    fn transport_preserves_identity() {
        let q = Quiver::a_n(3);
        let cat = Catalog::build(&q, f(), 3).unwrap();
        let m = cat.rep_of_multiset(&"[1,1,0]+[0,1,0]".parse().unwrap()).unwrap();
        let t = tau(&q, &m).unwrap();
        let id = GradedMap::identity(f(), m.dim());
        assert_eq!(t.transport(&t, &id), GradedMap::identity(f(), t.rep().dim()));
    }

    #[test]
    fn projective_modules_a2() {
        let q = a2();
        let cat = Catalog::build(&q, f(), 1).unwrap();
        let p1 = projective_pi_module(&q, 0, f()).unwrap();
        assert_eq!(cat.decompose(&p1).unwrap().to_string(), "[1,1]");
        let p2 = projective_pi_module(&q, 1, f()).unwrap();
        assert_eq!(cat.decompose(&p2).unwrap().to_string(), "[1,0]+[0,1]");
        let cyclic = Quiver::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(projective_pi_module(&cyclic, 0, f()).unwrap_err(), Error::NotDynkin);
    }

    #[test]
    fn path_projective_dims() {
        let q = Quiver::d4();
        let p = path_projective(&q, 0, f()).unwrap();
        assert_eq!(p.dim(), &DimVector(vec![1, 0, 0, 1]));
        assert_eq!(hom_q_dim(&q, &p, &p), 1);
    }

    #[test]
    fn coxeter_dims_a2() {
        // c = s_1 s_2 (sink 2 first): (1,0) -> (0,1)
        assert_eq!(coxeter_on_dims(&a2(), &[1, 0]).unwrap(), vec![0, 1]);
    }
}
