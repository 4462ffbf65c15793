//! Representations of a quiver over `F_p`, graded morphisms, and the
//! Hom / Ext¹ computations of the hereditary path algebra.

use crate::error::{Error, Result};
use crate::exactalg::{BlockLayout, FieldCtx, LinearSystem, Mat, PrimeField};
use crate::quiver::{DimVector, Quiver, RootSystem};

/// One matrix per arrow; the map for `h` has shape `d(h'') × d(h')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRep {
    field: PrimeField,
    dim: DimVector,
    maps: Vec<Mat>,
}

impl QRep {
    pub fn new(q: &Quiver, field: PrimeField, dim: DimVector, maps: Vec<Mat>) -> Result<Self> {
        if dim.len() != q.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: q.vertex_count(),
                got: dim.len(),
            });
        }
        if maps.len() != q.arrow_count() {
            return Err(Error::LengthMismatch {
                expected: q.arrow_count(),
                got: maps.len(),
            });
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let want = (dim.0[a.target], dim.0[a.source]);
            if m.shape() != want {
                return Err(Error::Precondition(format!(
                    "arrow map has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        Ok(Self { field, dim, maps })
    }

    pub fn zero(q: &Quiver, field: PrimeField, dim: DimVector) -> Self {
        let maps = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(field, dim.0[a.target], dim.0[a.source]))
            .collect();
        Self { field, dim, maps }
    }

    pub fn simple(q: &Quiver, field: PrimeField, i: usize) -> Self {
        Self::zero(q, field, DimVector::unit(q.vertex_count(), i))
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

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    pub fn is_zero_rep(&self) -> bool {
        self.dim.is_zero()
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &QRep) -> QRep {
        QRep {
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

    /// Every arrow map negated (the sign twist).
    pub fn sign_twist(&self) -> QRep {
        QRep {
            field: self.field,
            dim: self.dim.clone(),
            maps: self.maps.iter().map(Mat::neg).collect(),
        }
    }

    /// Transport the structure along a graded change of basis `g` (new = g · old · g⁻¹).
    pub fn conjugate(&self, q: &Quiver, g: &GradedMap) -> Result<QRep> {
        let inv: Vec<Mat> = g.0.iter().map(Mat::inverse).collect::<Result<_>>()?;
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g.0[a.target].mul(m).mul(&inv[a.source]))
            .collect();
        Ok(QRep {
            field: self.field,
            dim: self.dim.clone(),
            maps,
        })
    }
}

/// A grade-preserving linear map: one matrix `f_i : M_i → N_i` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap(pub Vec<Mat>);

impl GradedMap {
    pub fn zero(field: PrimeField, from: &DimVector, to: &DimVector) -> Self {
        GradedMap(
            from.0
                .iter()
                .zip(&to.0)
                .map(|(&c, &r)| Mat::zeros(field, r, c))
                .collect(),
        )
    }

    pub fn identity(field: PrimeField, d: &DimVector) -> Self {
        GradedMap(d.0.iter().map(|&n| Mat::identity(field, n)).collect())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&first.0).map(|(g, f)| g.mul(f)).collect())
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        GradedMap(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: u64) -> GradedMap {
        GradedMap(self.0.iter().map(|a| a.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Mat::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.0
            .iter()
            .all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// `ν_h f_{h'} = f_{h''} μ_h` for every arrow.
    pub fn is_q_morphism(&self, q: &Quiver, from: &QRep, to: &QRep) -> bool {
        q.arrows().iter().enumerate().all(|(k, a)| {
            to.map(k).mul(&self.0[a.source]) == self.0[a.target].mul(from.map(k))
        })
    }
}

/// Linear combination `Σ c_k basis_k`.
pub fn combine(field: PrimeField, basis: &[GradedMap], coeffs: &[u64], from: &DimVector, to: &DimVector) -> GradedMap {
    let mut acc = GradedMap::zero(field, from, to);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

pub(crate) fn vertex_layout(from: &DimVector, to: &DimVector) -> BlockLayout {
    BlockLayout::new(from.0.iter().zip(&to.0).map(|(&c, &r)| (r, c)).collect())
}

/// The middle map `(f_i) ↦ (ν_h f_{h'} − f_{h''} μ_h)_h` of the standard resolution.
pub fn hom_system(q: &Quiver, m: &QRep, n: &QRep) -> LinearSystem {
    let vars = vertex_layout(&m.dim, &n.dim);
    let eqs = BlockLayout::new(
        q.arrows()
            .iter()
            .map(|a| (n.dim.0[a.target], m.dim.0[a.source]))
            .collect(),
    );
    let mut sys = LinearSystem::new(m.field, vars, eqs);
    for (k, a) in q.arrows().iter().enumerate() {
        sys.add_term(k, a.source, Some(n.map(k)), None, false);
        sys.add_term(k, a.target, None, Some(m.map(k)), true);
    }
    sys
}

pub fn hom_q_space(q: &Quiver, m: &QRep, n: &QRep) -> Vec<GradedMap> {
    hom_system(q, m, n).kernel().into_iter().map(GradedMap).collect()
}

pub fn hom_q_dim(q: &Quiver, m: &QRep, n: &QRep) -> usize {
    hom_system(q, m, n).kernel_dim()
}

/// `dim Hom_Q(M,N) − ⟨dim M, dim N⟩_Q`.
pub fn ext1_q_dim(q: &Quiver, m: &QRep, n: &QRep) -> Result<usize> {
    let hom = hom_q_dim(q, m, n) as i64;
    let euler = q.euler_form(m.dim(), n.dim())?;
    let ext = hom - euler;
    if ext < 0 {
        return Err(Error::NegativeExt(ext));
    }
    Ok(ext as usize)
}

/// Uniformly random structure of graded dimension `d`.
pub fn generic_rep(q: &Quiver, d: &DimVector, ctx: &mut FieldCtx) -> QRep {
    let maps = q
        .arrows()
        .iter()
        .map(|a| ctx.random_mat(d.0[a.target], d.0[a.source]))
        .collect();
    QRep {
        field: ctx.field(),
        dim: d.clone(),
        maps,
    }
}

/// A brick of graded dimension `beta`, certified by `dim End_Q = 1`.
pub fn indecomposable(
    q: &Quiver,
    roots: &RootSystem,
    beta: &DimVector,
    ctx: &mut FieldCtx,
    attempts: usize,
) -> Result<QRep> {
    if !roots.contains(beta) {
        return Err(Error::NotARoot(beta.to_string()));
    }
    for _ in 0..attempts.max(1) {
        let m = generic_rep(q, beta, ctx);
        if hom_q_dim(q, &m, &m) == 1 {
            return Ok(m);
        }
    }
    Err(Error::VerificationFailed(
        attempts,
        format!("no brick of dimension {beta} found"),
    ))
}

/// `M ↦ M*` as a representation of the opposite quiver.
pub fn dual_rep(m: &QRep) -> QRep {
    QRep {
        field: m.field,
        dim: m.dim.clone(),
        maps: m.maps.iter().map(Mat::transpose).collect(),
    }
}
