//! Certified indecomposables of a Dynkin quiver and isomorphism-class
//! identification by Hom counting.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exactalg::{FieldCtx, PrimeField};
use crate::multiset::RootMultiset;
use crate::qrep::{hom_q_dim, indecomposable, QRep};
use crate::quiver::{DimVector, Quiver, RootSystem};

const BUILD_ATTEMPTS: usize = 16;

/// One brick `M_Q(β)` per positive root together with the inverse of the
/// square matrix `A[β,γ] = dim Hom_Q(M_Q(β), M_Q(γ))`.
#[derive(Debug, Clone)]
pub struct Catalog {
    quiver: Quiver,
    field: PrimeField,
    roots: RootSystem,
    indecs: Vec<QRep>,
    hom_matrix: Vec<Vec<i64>>,
    hom_inverse: Vec<Vec<Ratio<i64>>>,
}

impl Catalog {
    pub fn build(q: &Quiver, field: PrimeField, seed: u64) -> Result<Self> {
        let roots = q.positive_roots()?;
        let mut ctx = FieldCtx::new(field, seed);
        let indecs = roots
            .roots()
            .iter()
            .map(|beta| indecomposable(q, &roots, beta, &mut ctx, BUILD_ATTEMPTS))
            .collect::<Result<Vec<_>>>()?;
        let hom_matrix: Vec<Vec<i64>> = indecs
            .iter()
            .map(|b| indecs.iter().map(|g| hom_q_dim(q, b, g) as i64).collect())
            .collect();
        let hom_inverse = rational_inverse(&hom_matrix).ok_or(Error::HomMatrixSingular)?;
        Ok(Self {
            quiver: q.clone(),
            field,
            roots,
            indecs,
            hom_matrix,
            hom_inverse,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn indecomposable(&self, root: &DimVector) -> Result<&QRep> {
        let id = self
            .roots
            .id(root)
            .ok_or_else(|| Error::NotARoot(root.to_string()))?;
        Ok(&self.indecs[id])
    }

    pub fn hom_matrix(&self) -> &[Vec<i64>] {
        &self.hom_matrix
    }

    pub fn vertices(&self) -> usize {
        self.quiver.vertex_count()
    }

    /// `M_Q(m)`: block-diagonal sum of the catalog bricks, canonical root order.
    pub fn rep_of_multiset(&self, m: &RootMultiset) -> Result<QRep> {
        m.check_roots(&self.roots)?;
        let n = self.vertices();
        let mut acc = QRep::zero(&self.quiver, self.field, DimVector::zero(n));
        for r in m.expanded() {
            acc = acc.direct_sum(self.indecomposable(&r)?);
        }
        Ok(acc)
    }

    /// The unique `m` with `X ≅ M_Q(m)`.
    pub fn decompose(&self, x: &QRep) -> Result<RootMultiset> {
        let h: Vec<i64> = self
            .indecs
            .iter()
            .map(|b| hom_q_dim(&self.quiver, b, x) as i64)
            .collect();
        let mut out = RootMultiset::empty();
        for (k, row) in self.hom_inverse.iter().enumerate() {
            let v: Ratio<i64> = row
                .iter()
                .zip(&h)
                .map(|(a, &b)| *a * Ratio::from_integer(b))
                .sum();
            if !v.is_integer() || v < Ratio::from_integer(0) {
                return Err(Error::NoNonnegativeSolution);
            }
            out.insert(self.roots.root(k).clone(), v.to_integer() as usize);
        }
        if &out.grdim(self.vertices()) != x.dim() {
            return Err(Error::NoNonnegativeSolution);
        }
        Ok(out)
    }
}

/// Gauss–Jordan over the rationals; `None` when singular.
pub(crate) fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = a.len();
    let zero = Ratio::from_integer(0);
    let one = Ratio::from_integer(1);
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { one } else { zero }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| m[r][c] != zero)?;
        m.swap(c, piv);
        let inv = one / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && m[r][c] != zero {
                let factor = m[r][c];
                let pivot_row = m[c].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= factor * *p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}
