//! Π-modules as pairs `(M, θ)` with `θ ∈ Hom_Q(M, τM)`, and the maps
//! `T_{M;N}(f) = τ(f)∘θ_M − θ_N∘f` computing Hom and Ext over Π.

use crate::catalog::Catalog;
use crate::coxeter::{tau, TauImage};
use crate::error::{Error, Result};
use crate::exactalg::{FieldCtx, Mat};
use crate::multiset::RootMultiset;
use crate::par::TrialConfig;
use crate::qrep::{combine, hom_q_space, vertex_layout, GradedMap, QRep};
use crate::quiver::{DimVector, Quiver};

#[derive(Debug, Clone)]
pub struct TauMod {
    rep: QRep,
    tau: TauImage,
    theta: GradedMap,
    coords: Vec<u64>,
}

impl TauMod {
    pub fn new(q: &Quiver, rep: QRep, theta: GradedMap) -> Result<Self> {
        let tau = tau(q, &rep)?;
        let shapes_ok = theta.0.len() == rep.dim().len()
            && theta.0.iter().enumerate().all(|(i, t)| {
                t.shape() == (tau.rep().dim().0[i], rep.dim().0[i])
            });
        if !shapes_ok || !theta.is_q_morphism(q, &rep, tau.rep()) {
            return Err(Error::Precondition("θ is not a morphism M → τM".into()));
        }
        let basis = hom_q_space(q, &rep, tau.rep());
        let coords = coordinates(&basis, rep.dim(), tau.rep().dim(), std::slice::from_ref(&theta))?
            .column(0);
        Ok(Self {
            rep,
            tau,
            theta,
            coords,
        })
    }

    pub fn zero(q: &Quiver, rep: QRep) -> Result<Self> {
        let tau = tau(q, &rep)?;
        let theta = GradedMap::zero(rep.field(), rep.dim(), tau.rep().dim());
        let n = hom_q_space(q, &rep, tau.rep()).len();
        Ok(Self {
            rep,
            tau,
            theta,
            coords: vec![0; n],
        })
    }

    /// Uniformly random τ-datum in the `Hom_Q(M, τM)` basis.
    pub fn random(q: &Quiver, rep: QRep, ctx: &mut FieldCtx) -> Result<Self> {
        let tau = tau(q, &rep)?;
        let basis = hom_q_space(q, &rep, tau.rep());
        let coords = ctx.random_vec(basis.len());
        let theta = combine(rep.field(), &basis, &coords, rep.dim(), tau.rep().dim());
        Ok(Self {
            rep,
            tau,
            theta,
            coords,
        })
    }

    pub fn rep(&self) -> &QRep {
        &self.rep
    }

    pub fn tau_image(&self) -> &TauImage {
        &self.tau
    }

    pub fn theta(&self) -> &GradedMap {
        &self.theta
    }

    /// `θ` in the `Hom_Q(M, τM)` kernel basis.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn dim(&self) -> &DimVector {
        self.rep.dim()
    }
}

/// Coordinates of `maps` (as columns) in a basis of graded maps `from → to`.
fn coordinates(basis: &[GradedMap], from: &DimVector, to: &DimVector, maps: &[GradedMap]) -> Result<Mat> {
    let layout = vertex_layout(from, to);
    let field = basis
        .first()
        .or(maps.first())
        .and_then(|g| g.0.first())
        .map(Mat::field)
        .unwrap_or_default();
    let k = Mat::from_columns(
        field,
        layout.len(),
        &basis.iter().map(|b| layout.flatten(&b.0)).collect::<Vec<_>>(),
    );
    let b = Mat::from_columns(
        field,
        layout.len(),
        &maps.iter().map(|g| layout.flatten(&g.0)).collect::<Vec<_>>(),
    );
    k.solve_unique(&b)
}

/// Matrix of `T_{M;N}` from the `Hom_Q(M,N)` basis to the `Hom_Q(M,τN)` basis.
#[derive(Debug, Clone)]
pub struct TMap {
    pub matrix: Mat,
}

impl TMap {
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn nullity(&self) -> usize {
        self.domain_dim() - self.rank()
    }

    pub fn coker_dim(&self) -> usize {
        self.target_dim() - self.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.coker_dim() == 0
    }
}

pub fn t_map(q: &Quiver, m: &TauMod, n: &TauMod) -> Result<TMap> {
    let domain = hom_q_space(q, &m.rep, &n.rep);
    let target = hom_q_space(q, &m.rep, n.tau.rep());
    let images: Vec<GradedMap> = domain
        .iter()
        .map(|f| {
            let tf = m.tau.transport(&n.tau, f);
            tf.after(&m.theta).sub(&n.theta.after(f))
        })
        .collect();
    let matrix = if images.is_empty() {
        Mat::zeros(m.rep.field(), target.len(), 0)
    } else {
        coordinates(&target, m.dim(), n.tau.rep().dim(), &images)?
    };
    Ok(TMap { matrix })
}

pub fn hom_pi_via_t(q: &Quiver, m: &TauMod, n: &TauMod) -> Result<usize> {
    Ok(t_map(q, m, n)?.nullity())
}

/// `dim Coker T_{M;N} + dim Coker T_{N;M}`.
pub fn ext1_pi_via_t(q: &Quiver, m: &TauMod, n: &TauMod) -> Result<usize> {
    Ok(t_map(q, m, n)?.coker_dim() + t_map(q, n, m)?.coker_dim())
}

/// Whether `T_{N;M}` is surjective for some sampled pair `(M, N)` over
/// `M_Q(m) × M_Q(n)`.
pub fn star_criterion(cat: &Catalog, m: &RootMultiset, n: &RootMultiset, cfg: &TrialConfig) -> Result<bool> {
    let q = cat.quiver();
    let mq = cat.rep_of_multiset(m)?;
    let nq = cat.rep_of_multiset(n)?;
    let votes = cfg.run(|ctx| -> Result<bool> {
        let x = TauMod::random(q, mq.clone(), ctx)?;
        let y = TauMod::random(q, nq.clone(), ctx)?;
        Ok(t_map(q, &y, &x)?.is_surjective())
    });
    let votes = votes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(votes.into_iter().any(|v| v))
}

/// Split `x = (M₁ ⊕ M₂, θ)` into `(M_i, τ(p_i)∘θ∘ι_i)`; requires `Hom_Q(M₂, τM₁) = 0`.
///
/// `x.rep()` must equal `m1.direct_sum(m2)` exactly. The off-diagonal block
/// `M₂ → τM₁` of `θ` is checked to vanish, so `(M₂, θ₂)` is a submodule with
/// quotient `(M₁, θ₁)`.
pub fn split_by_tau_vanishing(q: &Quiver, x: &TauMod, m1: &QRep, m2: &QRep) -> Result<(TauMod, TauMod)> {
    if x.rep != m1.direct_sum(m2) {
        return Err(Error::Precondition("M is not M₁ ⊕ M₂ in block form".into()));
    }
    let tau1 = tau(q, m1)?;
    if !hom_q_space(q, m2, tau1.rep()).is_empty() {
        return Err(Error::HypothesisFailed("Hom_Q(M₂, τM₁) is nonzero".into()));
    }
    let field = x.rep.field();
    let (d1, d2) = (m1.dim(), m2.dim());
    let inclusion = |first: bool| {
        GradedMap(
            d1.0.iter()
                .zip(&d2.0)
                .map(|(&a, &b)| {
                    let (k, off) = if first { (a, 0) } else { (b, a) };
                    let mut m = Mat::zeros(field, a + b, k);
                    m.paste(off, 0, &Mat::identity(field, k));
                    m
                })
                .collect(),
        )
    };
    let projection = |first: bool| GradedMap(inclusion(first).0.iter().map(Mat::transpose).collect());
    let tau2 = tau(q, m2)?;
    let theta_of = |p: &GradedMap, image: &TauImage, i: &GradedMap| {
        x.tau.transport(image, p).after(&x.theta).after(i)
    };
    let theta1 = theta_of(&projection(true), &tau1, &inclusion(true));
    let theta2 = theta_of(&projection(false), &tau2, &inclusion(false));
    let cross = theta_of(&projection(true), &tau1, &inclusion(false));
    if !cross.is_zero() {
        return Err(Error::Assertion("θ maps M₂ into τM₁".into()));
    }
    let x1 = TauMod::new(q, m1.clone(), theta1)?;
    let x2 = TauMod::new(q, m2.clone(), theta2)?;
    if x1.dim().add(x2.dim()) != *x.dim() {
        return Err(Error::Assertion("dimension vectors do not add up".into()));
    }
    Ok((x1, x2))
}
