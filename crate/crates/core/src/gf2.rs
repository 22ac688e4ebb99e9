//! Linear systems over GF(2) with bit-packed rows.
//!
//! [`Gf2System::solve`] reduces to row echelon form with the leftmost pivot
//! column, returning one particular solution and a null-space basis. A
//! [`SolutionStream`] then walks every solution in Gray-code order, so each
//! step XORs a single basis vector into the previous solution.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Bits `0..len` of `value`, bit `i` of the integer at position `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len >= WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = value & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= bit;
        } else {
            self.words[i / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND with `other`.
    pub fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Rows `coeffs · v = rhs` over `num_vars` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    num_vars: usize,
    rows: Vec<(BitVector, bool)>,
}

impl Gf2System {
    pub fn new(num_vars: usize) -> Self {
        Gf2System {
            num_vars,
            rows: Vec::new(),
        }
    }

    /// Panics if `coeffs` does not have length `num_vars`.
    pub fn push_row(&mut self, coeffs: BitVector, rhs: bool) {
        assert_eq!(
            coeffs.len(),
            self.num_vars,
            "row length must equal num_vars"
        );
        self.rows.push((coeffs, rhs));
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[(BitVector, bool)] {
        &self.rows
    }

    pub fn is_satisfied_by(&self, v: &BitVector) -> bool {
        self.rows.iter().all(|(c, rhs)| c.dot(v) == *rhs)
    }

    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<Gf2Solution> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.num_vars {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].0.get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot, tail) = tail.split_first_mut().expect("pivot row exists");
            for row in head.iter_mut().chain(tail.iter_mut()) {
                if row.0.get(col) {
                    row.0.xor_assign(&pivot.0);
                    row.1 ^= pivot.1;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }

        let mut particular = BitVector::zeros(self.num_vars);
        let mut is_pivot = vec![false; self.num_vars];
        for (r, &col) in pivots.iter().enumerate() {
            particular.set(col, rows[r].1);
            is_pivot[col] = true;
        }
        let null_basis = (0..self.num_vars)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.num_vars);
                v.set(f, true);
                for (r, &col) in pivots.iter().enumerate() {
                    if rows[r].0.get(f) {
                        v.set(col, true);
                    }
                }
                v
            })
            .collect();
        Some(Gf2Solution {
            num_vars: self.num_vars,
            rank,
            particular,
            null_basis,
        })
    }
}

/// An affine solution space `particular + span(null_basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    num_vars: usize,
    rank: usize,
    particular: BitVector,
    null_basis: Vec<BitVector>,
}

impl Gf2Solution {
    pub fn particular(&self) -> &BitVector {
        &self.particular
    }

    pub fn null_basis(&self) -> &[BitVector] {
        &self.null_basis
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.null_basis.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `2^nullity`. Panics beyond 127 free variables.
    pub fn solution_count(&self) -> u128 {
        assert!(self.nullity() < 128, "solution space too large to index");
        1u128 << self.nullity()
    }

    pub fn stream(&self) -> SolutionStream {
        self.stream_range(0, self.solution_count())
    }

    /// Solutions at Gray-code positions `start..end`; disjoint ranges give
    /// disjoint solution sets.
    pub fn stream_range(&self, start: u128, end: u128) -> SolutionStream {
        let end = end.min(self.solution_count());
        let start = start.min(end);
        let mut current = self.particular.clone();
        let gray = start ^ (start >> 1);
        for (b, v) in self.null_basis.iter().enumerate() {
            if gray >> b & 1 == 1 {
                current.xor_assign(v);
            }
        }
        SolutionStream {
            basis: self.null_basis.clone(),
            current,
            pos: start,
            end,
            primed: false,
        }
    }
}

/// Every solution of a [`Gf2Solution`] exactly once, in Gray-code order.
///
/// Holds one current vector plus the basis, independent of stream length.
#[derive(Clone, Debug)]
pub struct SolutionStream {
    basis: Vec<BitVector>,
    current: BitVector,
    pos: u128,
    end: u128,
    primed: bool,
}

impl SolutionStream {
    /// Advances and borrows the next solution without allocating.
    pub fn next_ref(&mut self) -> Option<&BitVector> {
        if self.pos >= self.end {
            return None;
        }
        if self.primed {
            self.pos += 1;
            if self.pos >= self.end {
                return None;
            }
            let b = self.pos.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[b]);
        } else {
            self.primed = true;
        }
        Some(&self.current)
    }

    /// Number of solutions not yet yielded.
    pub fn remaining(&self) -> u128 {
        let consumed = if self.primed { 1 } else { 0 };
        (self.end - self.pos).saturating_sub(consumed)
    }
}

impl Iterator for SolutionStream {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        self.next_ref().cloned()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining();
        match usize::try_from(r) {
            Ok(r) => (r, Some(r)),
            Err(_) => (usize::MAX, None),
        }
    }
}
