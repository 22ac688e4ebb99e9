//! Division-free determinants over [`RingElement`]s.
//!
//! The ring has zero divisors, so elimination with pivot division is out.
//! [`det`] first strips every row or column whose only nonzero entry sits on
//! the diagonal (Laplace expansion along it), then runs Bird's iteration
//! `X <- mu(X) * A` on what remains. That costs `O(r)` matrix products for
//! the `r x r` remainder and only ring additions and multiplications.

use crate::error::RingError;
use crate::ring::{mask_and_trim, poly_mul_acc_sparse, RingElement, RingParams};

/// Largest dimension accepted by [`det_reference`].
pub const REFERENCE_MAX_DIM: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    dim: usize,
    params: RingParams,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(dim: usize, params: RingParams) -> Self {
        RingMatrix {
            dim,
            params,
            entries: vec![RingElement::zero(params); dim * dim],
        }
    }

    pub fn identity(dim: usize, params: RingParams) -> Self {
        let mut m = Self::zeros(dim, params);
        for i in 0..dim {
            m.set(i, i, RingElement::one(params));
        }
        m
    }

    /// Builds a matrix from rows, checking shape and uniform ring parameters.
    pub fn from_rows(rows: Vec<Vec<RingElement>>) -> Result<Self, RingError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(RingError::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(RingError::NotSquare);
        }
        let params = rows[0][0].params();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|e| e.params() != params) {
            let other = bad.params();
            return Err(RingError::ParamMismatch(
                params.k(),
                params.m(),
                other.k(),
                other.m(),
            ));
        }
        Ok(RingMatrix {
            dim,
            params,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut RingElement {
        &mut self.entries[i * self.dim + j]
    }

    /// Panics if `value` belongs to a different ring.
    pub fn set(&mut self, i: usize, j: usize, value: RingElement) {
        assert_eq!(value.params(), self.params, "ring parameter mismatch");
        self.entries[i * self.dim + j] = value;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.dim {
            self.entries.swap(a * self.dim + j, b * self.dim + j);
        }
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    /// True when every coefficient of every entry in row `i` is even.
    pub fn row_is_even(&self, i: usize) -> bool {
        self.row(i).iter().all(RingElement::is_even)
    }

    fn check(&self) -> Result<(), RingError> {
        if self.dim == 0 {
            return Err(RingError::EmptyMatrix);
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(RingError::NotSquare);
        }
        if let Some(bad) = self.entries.iter().find(|e| e.params() != self.params) {
            let (p, o) = (self.params, bad.params());
            return Err(RingError::ParamMismatch(p.k(), p.m(), o.k(), o.m()));
        }
        Ok(())
    }
}

/// Determinant without divisions.
pub fn det(mat: &RingMatrix) -> Result<RingElement, RingError> {
    mat.check()?;
    let params = mat.params;
    let n = mat.dim;
    let nz = |i: usize, j: usize| !mat.get(i, j).is_zero();

    let mut active = vec![true; n];
    let mut remaining = n;
    let mut factor = RingElement::one(params);

    // Peel rows/columns whose single nonzero is on the diagonal.
    let mut progress = true;
    while progress && remaining > 0 {
        progress = false;
        for i in 0..n {
            if !active[i] {
                continue;
            }
            let mut row_off = false;
            let mut col_off = false;
            for (j, &on) in active.iter().enumerate() {
                if j != i && on {
                    row_off |= nz(i, j);
                    col_off |= nz(j, i);
                }
                if row_off && col_off {
                    break;
                }
            }
            if row_off && col_off {
                continue;
            }
            let diag = mat.get(i, i);
            if diag.is_zero() {
                if !row_off || !col_off {
                    return Ok(RingElement::zero(params));
                }
                continue;
            }
            factor = &factor * diag;
            if factor.is_zero() {
                return Ok(factor);
            }
            active[i] = false;
            remaining -= 1;
            progress = true;
        }
    }
    if remaining == 0 {
        return Ok(factor);
    }

    let idx: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
    let core = bird(mat, &idx);
    Ok(&factor * &core)
}

/// Column index and `(degree, coefficient)` terms of a nonzero entry.
type SparseEntry = (usize, Vec<(usize, u64)>);

/// Bird's division-free determinant of the principal submatrix on `idx`.
fn bird(mat: &RingMatrix, idx: &[usize]) -> RingElement {
    let params = mat.params;
    let m = params.m();
    let mask = params.mask();
    let r = idx.len();

    // Sparse rows of A: for each row j, the nonzero (column, terms) pairs.
    let a_rows: Vec<Vec<SparseEntry>> = idx
        .iter()
        .map(|&gi| {
            idx.iter()
                .enumerate()
                .filter_map(|(c, &gj)| {
                    let e = mat.get(gi, gj);
                    (!e.is_zero()).then(|| (c, e.nonzero_terms().collect()))
                })
                .collect()
        })
        .collect();

    // X holds the upper triangle (including the diagonal) row-major in an r x r grid.
    let mut x: Vec<Vec<u64>> = Vec::with_capacity(r * r);
    for &gi in idx {
        for &gj in idx {
            x.push(mat.get(gi, gj).raw().to_vec());
        }
    }
    let mut next: Vec<Vec<u64>> = vec![Vec::new(); r * r];
    let mut mu_diag: Vec<Vec<u64>> = vec![Vec::new(); r];

    for step in 1..r {
        let last = step == r - 1;

        // mu_ii = -(X_{i+1,i+1} + ... + X_{r-1,r-1})
        let mut suffix: Vec<u64> = Vec::new();
        for i in (0..r).rev() {
            let d = &mut mu_diag[i];
            d.clear();
            d.extend(suffix.iter().map(|c| c.wrapping_neg()));
            mask_and_trim(d, mask);
            let xd = &x[i * r + i];
            if suffix.len() < xd.len() {
                suffix.resize(xd.len(), 0);
            }
            for (s, &c) in suffix.iter_mut().zip(xd) {
                *s = s.wrapping_add(c);
            }
        }

        for e in next.iter_mut() {
            e.clear();
        }
        let rows = if last { 1 } else { r };
        for i in 0..rows {
            for j in i..r {
                let mu = if j == i { &mu_diag[i] } else { &x[i * r + j] };
                if mu.is_empty() {
                    continue;
                }
                for (c, terms) in &a_rows[j] {
                    let c = *c;
                    if c < i || (last && c != 0) {
                        continue;
                    }
                    poly_mul_acc_sparse(&mut next[i * r + c], terms, mu, m);
                }
            }
            for c in i..r {
                mask_and_trim(&mut next[i * r + c], mask);
            }
        }
        std::mem::swap(&mut x, &mut next);
    }

    let top = RingElement::from_raw(params, std::mem::take(&mut x[0]));
    if (r - 1) % 2 == 1 {
        -top
    } else {
        top
    }
}

/// Leibniz expansion over all permutations; test oracle for small matrices.
pub fn det_reference(mat: &RingMatrix) -> Result<RingElement, RingError> {
    mat.check()?;
    let n = mat.dim;
    if n > REFERENCE_MAX_DIM {
        return Err(RingError::DimensionTooLarge {
            dim: n,
            max: REFERENCE_MAX_DIM,
        });
    }
    let params = mat.params;
    let mut total = RingElement::zero(params);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut odd = false;

    let add_term = |perm: &[usize], odd: bool, total: &mut RingElement| {
        let mut prod = RingElement::one(params);
        for (i, &j) in perm.iter().enumerate() {
            prod = &prod * mat.get(i, j);
            if prod.is_zero() {
                return;
            }
        }
        if odd {
            *total -= &prod;
        } else {
            *total += &prod;
        }
    };

    // Heap's algorithm; every swap flips the sign.
    let mut c = vec![0usize; n];
    add_term(&perm, odd, &mut total);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            add_term(&perm, odd, &mut total);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total)
}
