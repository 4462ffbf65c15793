//! Modules over the preprojective algebra as matrix representations of the
//! double quiver.
//!
//! Arrow `a` of the double quiver is indexed `0..|Ω|` for the original
//! arrows `h` and `|Ω|..2|Ω|` for the reversed arrows `h^op`, in the same
//! order. Extensions `0 → x₂ → x → x₁ → 0` are realized on `V¹ ⊕ V²` by
//! block lower-triangular matrices `[[X1_a, 0], [C_a, X2_a]]`.

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactalg::{BlockLayout, FieldCtx, LinearSystem, Mat, PrimeField};
use crate::multiset::RootMultiset;
use crate::par::TrialConfig;
use crate::qrep::{vertex_layout, GradedMap, QRep};
use crate::quiver::{Arrow, DimVector, Quiver};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMod {
    field: PrimeField,
    dim: DimVector,
    maps: Vec<Mat>,
}

/// Arrows of the double quiver: `Ω` followed by `Ω^op`.
pub fn double_arrows(q: &Quiver) -> Vec<Arrow> {
    q.arrows()
        .iter()
        .copied()
        .chain(q.arrows().iter().map(|a| Arrow {
            source: a.target,
            target: a.source,
        }))
        .collect()
}

/// Index of `a^op` in the double quiver.
pub fn opposite_arrow(q: &Quiver, a: usize) -> usize {
    let n = q.arrow_count();
    if a < n {
        a + n
    } else {
        a - n
    }
}

impl PiMod {
    /// Structure from forward maps `X_h` and reverse maps `X_{h^op}`; shapes are checked,
    /// the preprojective relation is not (see [`check_pi`]).
    pub fn new(
        q: &Quiver,
        field: PrimeField,
        dim: DimVector,
        forward: Vec<Mat>,
        reverse: Vec<Mat>,
    ) -> Result<Self> {
        if dim.len() != q.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: q.vertex_count(),
                got: dim.len(),
            });
        }
        if forward.len() != q.arrow_count() || reverse.len() != q.arrow_count() {
            return Err(Error::LengthMismatch {
                expected: q.arrow_count(),
                got: forward.len().min(reverse.len()),
            });
        }
        let maps: Vec<Mat> = forward.into_iter().chain(reverse).collect();
        for (a, m) in double_arrows(q).iter().zip(&maps) {
            if m.shape() != (dim.0[a.target], dim.0[a.source]) {
                return Err(Error::Precondition(format!(
                    "arrow {}->{} has shape {:?}",
                    a.source,
                    a.target,
                    m.shape()
                )));
            }
        }
        Ok(Self { field, dim, maps })
    }

    pub fn zero(q: &Quiver, field: PrimeField, dim: DimVector) -> Self {
        let maps = double_arrows(q)
            .iter()
            .map(|a| Mat::zeros(field, dim.0[a.target], dim.0[a.source]))
            .collect();
        Self { field, dim, maps }
    }

    pub fn simple(q: &Quiver, field: PrimeField, i: usize) -> Self {
        Self::zero(q, field, DimVector::unit(q.vertex_count(), i))
    }

    /// Lift a `Q`-representation with all reverse maps zero.
    pub fn from_forward(q: &Quiver, m: &QRep) -> Self {
        let mut x = Self::zero(q, m.field(), m.dim().clone());
        x.maps[..q.arrow_count()].clone_from_slice(m.maps());
        x
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn forward_maps(&self) -> &[Mat] {
        &self.maps[..self.maps.len() / 2]
    }

    pub fn reverse_maps(&self) -> &[Mat] {
        &self.maps[self.maps.len() / 2..]
    }

    /// `π_Q(x)`: forget the reverse arrows.
    pub fn forward_rep(&self, q: &Quiver) -> QRep {
        QRep::new(q, self.field, self.dim.clone(), self.forward_maps().to_vec())
            .expect("forward maps have valid shapes")
    }

    pub fn direct_sum(&self, other: &PiMod) -> PiMod {
        PiMod {
            field: self.field,
            dim: self.dim.add(&other.dim),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim.is_zero()
    }
}

/// Left-hand side of the preprojective relation at each vertex.
pub fn relation_defects(q: &Quiver, x: &PiMod) -> Vec<Mat> {
    let n = q.arrow_count();
    let mut out: Vec<Mat> = x
        .dim
        .0
        .iter()
        .map(|&d| Mat::zeros(x.field, d, d))
        .collect();
    for (k, a) in q.arrows().iter().enumerate() {
        let h = x.map(k);
        let hop = x.map(k + n);
        out[a.target] = out[a.target].add(&h.mul(hop));
        out[a.source] = out[a.source].sub(&hop.mul(h));
    }
    out
}

pub fn check_pi(q: &Quiver, x: &PiMod) -> bool {
    relation_defects(q, x).iter().all(Mat::is_zero)
}

/// Total arrow operator `Σ_a X_a` on `⊕ V_i`.
pub fn total_operator(q: &Quiver, x: &PiMod) -> Mat {
    let offs: Vec<usize> = x
        .dim
        .0
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total = x.dim.total();
    let mut t = Mat::zeros(x.field, total, total);
    for (a, arrow) in double_arrows(q).iter().enumerate() {
        let m = x.map(a);
        let (r0, c0) = (offs[arrow.target], offs[arrow.source]);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let cur = t.get(r0 + i, c0 + j);
                t.set(r0 + i, c0 + j, x.field.add(cur, m.get(i, j)));
            }
        }
    }
    t
}

pub fn check_nilpotent(q: &Quiver, x: &PiMod) -> bool {
    let n = x.dim.total();
    n == 0 || total_operator(q, x).pow(n as u32).is_zero()
}

/// `(f_i) ↦ (Y_a f_{a'} − f_{a''} X_a)_{a ∈ H}`.
pub fn hom_pi_system(q: &Quiver, x: &PiMod, y: &PiMod) -> LinearSystem {
    let arrows = double_arrows(q);
    let vars = vertex_layout(&x.dim, &y.dim);
    let eqs = BlockLayout::new(
        arrows
            .iter()
            .map(|a| (y.dim.0[a.target], x.dim.0[a.source]))
            .collect(),
    );
    let mut sys = LinearSystem::new(x.field, vars, eqs);
    for (k, a) in arrows.iter().enumerate() {
        sys.add_term(k, a.source, Some(y.map(k)), None, false);
        sys.add_term(k, a.target, None, Some(x.map(k)), true);
    }
    sys
}

pub fn hom_pi_space(q: &Quiver, x: &PiMod, y: &PiMod) -> Vec<GradedMap> {
    hom_pi_system(q, x, y)
        .kernel()
        .into_iter()
        .map(GradedMap)
        .collect()
}

pub fn hom_pi_dim(q: &Quiver, x: &PiMod, y: &PiMod) -> usize {
    hom_pi_system(q, x, y).kernel_dim()
}

pub fn is_pi_morphism(q: &Quiver, x: &PiMod, y: &PiMod, f: &GradedMap) -> bool {
    double_arrows(q)
        .iter()
        .enumerate()
        .all(|(k, a)| y.map(k).mul(&f.0[a.source]) == f.0[a.target].mul(x.map(k)))
}

/// `dim Hom_Π(x,y) + dim Hom_Π(y,x) − (dim x, dim y)`.
pub fn ext1_pi_dim_cb(q: &Quiver, x: &PiMod, y: &PiMod) -> Result<usize> {
    let v = hom_pi_dim(q, x, y) as i64 + hom_pi_dim(q, y, x) as i64 - q.sym_form(&x.dim, &y.dim)?;
    if v < 0 {
        return Err(Error::NegativeExt(v));
    }
    Ok(v as usize)
}

/// Cocycles and coboundaries for extensions of `x1` by `x2`.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    layout: BlockLayout,
    cocycles: Mat,
    coboundaries: Mat,
    boundary_rank: usize,
    field: PrimeField,
}

impl ExtSpace {
    /// Layout of a class: one block `C_a : V¹_{a'} → V²_{a''}` per double-quiver arrow.
    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn z_dim(&self) -> usize {
        self.cocycles.cols()
    }

    pub fn b_dim(&self) -> usize {
        self.boundary_rank
    }

    pub fn dim(&self) -> usize {
        self.z_dim() - self.b_dim()
    }

    pub fn cocycle_basis(&self) -> Vec<Vec<Mat>> {
        (0..self.z_dim())
            .map(|j| self.layout.unflatten(self.field, &self.cocycles.column(j)))
            .collect()
    }

    /// Columns span the coboundaries (not necessarily independent).
    pub fn coboundary_columns(&self) -> &Mat {
        &self.coboundaries
    }

    pub fn zero_class(&self) -> Vec<Mat> {
        self.layout
            .unflatten(self.field, &vec![0; self.layout.len()])
    }

    /// Uniformly random cocycle.
    pub fn random_class(&self, ctx: &mut FieldCtx) -> Vec<Mat> {
        let coeffs = ctx.random_vec(self.z_dim());
        self.layout
            .unflatten(self.field, &self.cocycles.mul_vec(&coeffs))
    }

    pub fn is_cocycle(&self, class: &[Mat]) -> bool {
        if class.len() != self.layout.blocks()
            || class
                .iter()
                .enumerate()
                .any(|(k, c)| c.shape() != self.layout.shape(k))
        {
            return false;
        }
        let v = self.layout.flatten(class);
        let col = Mat::from_data(self.field, v.len(), 1, v);
        self.cocycles.hstack(&col).rank() == self.z_dim()
    }

    /// Dimension of the span of `vectors` inside `Z/B`.
    fn quotient_rank(&self, vectors: &Mat) -> usize {
        self.coboundaries.hstack(vectors).rank() - self.boundary_rank
    }
}

fn class_layout(q: &Quiver, x1: &PiMod, x2: &PiMod) -> BlockLayout {
    BlockLayout::new(
        double_arrows(q)
            .iter()
            .map(|a| (x2.dim.0[a.target], x1.dim.0[a.source]))
            .collect(),
    )
}

/// Linearized relation on lower-left blocks.
fn cocycle_system(q: &Quiver, x1: &PiMod, x2: &PiMod) -> LinearSystem {
    let n = q.arrow_count();
    let layout = class_layout(q, x1, x2);
    let eqs = vertex_layout(&x1.dim, &x2.dim);
    let mut sys = LinearSystem::new(x1.field, layout, eqs);
    for (k, a) in q.arrows().iter().enumerate() {
        let (h, hop) = (k, k + n);
        // vertex h'': C_h X1_hop + X2_h C_hop
        sys.add_term(a.target, h, None, Some(x1.map(hop)), false);
        sys.add_term(a.target, hop, Some(x2.map(h)), None, false);
        // vertex h': −(C_hop X1_h + X2_hop C_h)
        sys.add_term(a.source, hop, None, Some(x1.map(h)), true);
        sys.add_term(a.source, h, Some(x2.map(hop)), None, true);
    }
    sys
}

/// `g ↦ (g_{a''} X1_a − X2_a g_{a'})_a`.
fn coboundary_system(q: &Quiver, x1: &PiMod, x2: &PiMod) -> LinearSystem {
    let vars = vertex_layout(&x1.dim, &x2.dim);
    let mut sys = LinearSystem::new(x1.field, vars, class_layout(q, x1, x2));
    for (k, a) in double_arrows(q).iter().enumerate() {
        sys.add_term(k, a.target, None, Some(x1.map(k)), false);
        sys.add_term(k, a.source, Some(x2.map(k)), None, true);
    }
    sys
}

/// `Z/B` without the cross-check against the Hom count.
pub fn ext_space_unchecked(q: &Quiver, x1: &PiMod, x2: &PiMod) -> Result<ExtSpace> {
    let z = cocycle_system(q, x1, x2);
    let cocycles = z.matrix().kernel_basis();
    let coboundaries = coboundary_system(q, x1, x2).matrix().clone();
    let boundary_rank = coboundaries.rank();
    if cocycles.hstack(&coboundaries).rank() != cocycles.cols() {
        return Err(Error::RouteDisagreement(
            "coboundaries are not cocycles".into(),
        ));
    }
    Ok(ExtSpace {
        layout: class_layout(q, x1, x2),
        cocycles,
        coboundaries,
        boundary_rank,
        field: x1.field,
    })
}

/// Cocycles modulo coboundaries, checked against `hom + hom − (d,e)`.
pub fn ext_space(q: &Quiver, x1: &PiMod, x2: &PiMod) -> Result<ExtSpace> {
    let space = ext_space_unchecked(q, x1, x2)?;
    let cb = ext1_pi_dim_cb(q, x1, x2)?;
    if space.dim() != cb {
        return Err(Error::RouteDisagreement(format!(
            "Z/B gives {} but the Hom count gives {cb}",
            space.dim()
        )));
    }
    Ok(space)
}

/// Block lower-triangular module on `V¹ ⊕ V²` with submodule `x2` and quotient `x1`.
pub fn build_extension(q: &Quiver, x1: &PiMod, x2: &PiMod, class: &[Mat]) -> Result<PiMod> {
    let layout = class_layout(q, x1, x2);
    if class.len() != layout.blocks()
        || class
            .iter()
            .enumerate()
            .any(|(k, c)| c.shape() != layout.shape(k))
    {
        return Err(Error::NotCocycle);
    }
    let maps: Vec<Mat> = (0..layout.blocks())
        .map(|k| {
            let (a, b, c) = (x1.map(k), x2.map(k), &class[k]);
            let mut m = Mat::zeros(x1.field, a.rows() + b.rows(), a.cols() + b.cols());
            m.paste(0, 0, a);
            m.paste(a.rows(), a.cols(), b);
            m.paste(a.rows(), 0, c);
            m
        })
        .collect();
    let x = PiMod {
        field: x1.field,
        dim: x1.dim.add(&x2.dim),
        maps,
    };
    if !check_pi(q, &x) {
        return Err(Error::NotCocycle);
    }
    Ok(x)
}

/// Basis of reverse-map tuples `(X_{h^op})_h` making `(M, X_{h^op})` a Π-module.
pub fn conormal_fiber(q: &Quiver, m: &QRep) -> Vec<Vec<Mat>> {
    let d = m.dim();
    let vars = BlockLayout::new(
        q.arrows()
            .iter()
            .map(|a| (d.0[a.source], d.0[a.target]))
            .collect(),
    );
    let eqs = BlockLayout::new(d.0.iter().map(|&k| (k, k)).collect());
    let mut sys = LinearSystem::new(m.field(), vars, eqs);
    for (k, a) in q.arrows().iter().enumerate() {
        sys.add_term(a.target, k, Some(m.map(k)), None, false);
        sys.add_term(a.source, k, None, Some(m.map(k)), true);
    }
    sys.kernel()
}

/// Random point of the conormal stratum over `M_Q(m)`.
pub fn sample_conormal(cat: &Catalog, m: &RootMultiset, ctx: &mut FieldCtx) -> Result<PiMod> {
    let q = cat.quiver();
    let base = cat.rep_of_multiset(m)?;
    Ok(random_fiber_point(q, &base, ctx))
}

/// Random Π-module with forward part exactly `base`.
pub fn random_fiber_point(q: &Quiver, base: &QRep, ctx: &mut FieldCtx) -> PiMod {
    let field = base.field();
    let fiber = conormal_fiber(q, base);
    let d = base.dim();
    let mut reverse: Vec<Mat> = q
        .arrows()
        .iter()
        .map(|a| Mat::zeros(field, d.0[a.source], d.0[a.target]))
        .collect();
    for b in &fiber {
        let c = ctx.random_elem();
        for (r, m) in reverse.iter_mut().zip(b) {
            *r = r.add(&m.scale(c));
        }
    }
    PiMod::new(q, field, d.clone(), base.maps().to_vec(), reverse).expect("fiber shapes")
}

/// `dim End_Π(x) = dim G_V − dim R_Q(V)`.
pub fn is_rigid_module(q: &Quiver, x: &PiMod) -> Result<bool> {
    if !check_pi(q, x) {
        return Err(Error::Precondition("not a Π-module".into()));
    }
    if !q.is_dynkin() && !check_nilpotent(q, x) {
        return Err(Error::Precondition("module is not nilpotent".into()));
    }
    let target = q.group_dim(&x.dim) - q.rep_space_dim(&x.dim);
    Ok(hom_pi_dim(q, x, x) == target)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub trials: usize,
    /// Trials whose sample was rigid.
    pub agreement: usize,
}

/// Rigid iff some sampled conormal point is rigid.
pub fn is_rigid_component(cat: &Catalog, m: &RootMultiset, cfg: &TrialConfig) -> Result<RigidityVerdict> {
    let q = cat.quiver();
    let votes = cfg.run(|ctx| -> Result<bool> {
        let x = sample_conormal(cat, m, ctx)?;
        is_rigid_module(q, &x)
    });
    let votes = votes.into_iter().collect::<Result<Vec<_>>>()?;
    let agreement = votes.iter().filter(|&&v| v).count();
    Ok(RigidityVerdict {
        rigid: agreement > 0,
        trials: cfg.trials,
        agreement,
    })
}

/// `X*_a = (X_{a^op})ᵀ` on the dual graded space.
pub fn dual_pimod(q: &Quiver, x: &PiMod) -> PiMod {
    let maps = (0..x.maps.len())
        .map(|a| x.map(opposite_arrow(q, a)).transpose())
        .collect();
    PiMod {
        field: x.field,
        dim: x.dim.clone(),
        maps,
    }
}

/// Codimension in `Ext¹_Π(x1,x2)` of the tangent image of the
/// `Aut(x1) × Aut(x2)` orbit through `class`.
///
/// Also checks `ext(x,x) = ext(x1,x1) + ext(x2,x2) + 2·coker` for the
/// extension `x` defined by `class`.
pub fn orbitmap_coker_dim(q: &Quiver, x1: &PiMod, x2: &PiMod, class: &[Mat]) -> Result<usize> {
    if hom_pi_dim(q, x2, x1) != 0 {
        return Err(Error::HypothesisFailed("Hom_Π(x2, x1) is nonzero".into()));
    }
    let space = ext_space(q, x1, x2)?;
    if !space.is_cocycle(class) {
        return Err(Error::NotCocycle);
    }
    let layout = space.layout().clone();
    let arrows = double_arrows(q);
    let mut image = Vec::new();
    for g in hom_pi_space(q, x2, x2) {
        let v: Vec<Mat> = arrows
            .iter()
            .enumerate()
            .map(|(k, a)| g.0[a.target].mul(&class[k]))
            .collect();
        image.push(layout.flatten(&v));
    }
    for f in hom_pi_space(q, x1, x1) {
        let v: Vec<Mat> = arrows
            .iter()
            .enumerate()
            .map(|(k, a)| class[k].mul(&f.0[a.source]))
            .collect();
        image.push(layout.flatten(&v));
    }
    let image = Mat::from_columns(x1.field, layout.len(), &image);
    let coker = space.dim() - space.quotient_rank(&image);

    let x = build_extension(q, x1, x2, class)?;
    let lhs = ext1_pi_dim_cb(q, &x, &x)?;
    let rhs = ext1_pi_dim_cb(q, x1, x1)? + ext1_pi_dim_cb(q, x2, x2)? + 2 * coker;
    if lhs != rhs {
        return Err(Error::RouteDisagreement(format!(
            "self-extension count {lhs} differs from orbit-map count {rhs}"
        )));
    }
    Ok(coker)
}

/// Submodule `Ker φ` for a surjection `φ : x ↠ S(i)`, in a basis completing
/// the kernel at vertex `i`.
pub fn kernel_of_surjection(q: &Quiver, x: &PiMod, i: usize, phi: &GradedMap) -> Result<PiMod> {
    let s = PiMod::simple(q, x.field, i);
    if phi.0.len() != x.dim.len()
        || phi
            .0
            .iter()
            .zip(x.dim.0.iter().zip(&s.dim.0))
            .any(|(m, (&c, &r))| m.shape() != (r, c))
    {
        return Err(Error::Precondition("φ has the wrong shape".into()));
    }
    if !is_pi_morphism(q, x, &s, phi) {
        return Err(Error::Precondition("φ is not a Π-morphism".into()));
    }
    if phi.0[i].is_zero() {
        return Err(Error::NotSurjective);
    }
    let kernels: Vec<Mat> = phi.0.iter().map(Mat::kernel_basis).collect();
    let lefts: Vec<Mat> = kernels
        .iter()
        .map(Mat::left_inverse)
        .collect::<Result<_>>()?;
    let maps = double_arrows(q)
        .iter()
        .enumerate()
        .map(|(k, a)| lefts[a.target].mul(x.map(k)).mul(&kernels[a.source]))
        .collect();
    let dim = DimVector(kernels.iter().map(Mat::cols).collect());
    let y = PiMod {
        field: x.field,
        dim,
        maps,
    };
    debug_assert!(check_pi(q, &y));
    Ok(y)
}
