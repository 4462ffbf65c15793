use super::{Mat, PrimeField};

/// A list of matrix blocks flattened row-major into one coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        Self {
            shapes,
            offsets,
            total,
        }
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn blocks(&self) -> usize {
        self.shapes.len()
    }

    pub fn shape(&self, block: usize) -> (usize, usize) {
        self.shapes[block]
    }

    #[inline]
    pub fn index(&self, block: usize, i: usize, j: usize) -> usize {
        self.offsets[block] + i * self.shapes[block].1 + j
    }

    pub fn flatten(&self, blocks: &[Mat]) -> Vec<u64> {
        assert_eq!(blocks.len(), self.shapes.len());
        let mut out = Vec::with_capacity(self.total);
        for (b, &s) in blocks.iter().zip(&self.shapes) {
            assert_eq!(b.shape(), s, "block shape mismatch");
            out.extend_from_slice(b.data());
        }
        out
    }

    pub fn unflatten(&self, field: PrimeField, v: &[u64]) -> Vec<Mat> {
        assert_eq!(v.len(), self.total);
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| Mat::from_data(field, r, c, v[o..o + r * c].to_vec()))
            .collect()
    }
}

/// Linear map between block spaces assembled from terms `± L · X_v · R`,
/// each contributing to one equation block.
///
/// `L = None` / `R = None` stand for identities.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    field: PrimeField,
    vars: BlockLayout,
    eqs: BlockLayout,
    matrix: Mat,
}

impl LinearSystem {
    pub fn new(field: PrimeField, vars: BlockLayout, eqs: BlockLayout) -> Self {
        let matrix = Mat::zeros(field, eqs.len(), vars.len());
        Self {
            field,
            vars,
            eqs,
            matrix,
        }
    }

    pub fn vars(&self) -> &BlockLayout {
        &self.vars
    }

    pub fn eqs(&self) -> &BlockLayout {
        &self.eqs
    }

    /// Add `sign * L * X[var] * R` to equation block `eq`.
    pub fn add_term(
        &mut self,
        eq: usize,
        var: usize,
        left: Option<&Mat>,
        right: Option<&Mat>,
        negate: bool,
    ) {
        let f = self.field;
        let (er, ec) = self.eqs.shape(eq);
        let (vr, vc) = self.vars.shape(var);
        if let Some(l) = left {
            assert_eq!(l.shape(), (er, vr), "left factor shape");
        } else {
            assert_eq!(er, vr, "identity left factor needs square fit");
        }
        if let Some(r) = right {
            assert_eq!(r.shape(), (vc, ec), "right factor shape");
        } else {
            assert_eq!(vc, ec, "identity right factor needs square fit");
        }
        let lget = |r: usize, a: usize| match left {
            Some(l) => l.get(r, a),
            None => u64::from(r == a),
        };
        let rget = |b: usize, s: usize| match right {
            Some(m) => m.get(b, s),
            None => u64::from(b == s),
        };
        for r in 0..er {
            for s in 0..ec {
                let row = self.eqs.index(eq, r, s);
                for a in 0..vr {
                    let la = lget(r, a);
                    if la == 0 {
                        continue;
                    }
                    for b in 0..vc {
                        let rb = rget(b, s);
                        if rb == 0 {
                            continue;
                        }
                        let mut c = f.mul(la, rb);
                        if negate {
                            c = f.neg(c);
                        }
                        let col = self.vars.index(var, a, b);
                        let cur = self.matrix.get(row, col);
                        self.matrix.set(row, col, f.add(cur, c));
                    }
                }
            }
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// Basis of the solution space of the homogeneous system, as block tuples.
    pub fn kernel(&self) -> Vec<Vec<Mat>> {
        let k = self.matrix.kernel_basis();
        (0..k.cols())
            .map(|j| self.vars.unflatten(self.field, &k.column(j)))
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.nullity()
    }

    pub fn apply(&self, x: &[Mat]) -> Vec<Mat> {
        let v = self.matrix.mul_vec(&self.vars.flatten(x));
        self.eqs.unflatten(self.field, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_commutator() {
        // X ↦ A X - X A for A = diag(1, 2): kernel is the diagonal matrices
        let f = PrimeField::default();
        let a = Mat::from_i64_rows(f, &[vec![1, 0], vec![0, 2]]);
        let mut sys = LinearSystem::new(
            f,
            BlockLayout::new(vec![(2, 2)]),
            BlockLayout::new(vec![(2, 2)]),
        );
        sys.add_term(0, 0, Some(&a), None, false);
        sys.add_term(0, 0, None, Some(&a), true);
        assert_eq!(sys.kernel_dim(), 2);
        for k in sys.kernel() {
            assert_eq!(a.mul(&k[0]), k[0].mul(&a));
        }
        let x = Mat::from_i64_rows(f, &[vec![0, 1], vec![0, 0]]);
        let out = sys.apply(std::slice::from_ref(&x));
        assert_eq!(out[0], a.mul(&x).sub(&x.mul(&a)));
    }

    #[test]
    fn layout_roundtrip() {
        let f = PrimeField::default();
        let l = BlockLayout::new(vec![(1, 2), (0, 3), (2, 1)]);
        assert_eq!(l.len(), 4);
        let v = vec![1, 2, 3, 4];
        assert_eq!(l.flatten(&l.unflatten(f, &v)), v);
    }
}
