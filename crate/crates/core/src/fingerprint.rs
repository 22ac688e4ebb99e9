//! Parameters, random sample points, and the q-perturbed punctured
//! Laplacian whose signed determinants sum to the Hamiltonicity polynomial.
//!
//! The Laplacian is indexed by `V \ {s}` in increasing vertex order (so the
//! sink `t` is the last row). For an assignment `y` over `V \ {t}`:
//!
//! - diagonal `(v, v)`: sum of `z_wv * y_w` over in-arcs `wv`, minus `q_v` when `v` is in `T`
//! - off-diagonal `(u, v)`: `-z_uv * y_u` for each arc `uv`
//!
//! Summing `(-1)^(N - |y|) * det` over all `2^N` assignments leaves exactly
//! the Hamiltonian s–t paths, each weighted by the product of its arc values.

use rand::seq::index;
use rand::Rng;

use crate::determinant::{det, RingMatrix};
use crate::error::{FingerprintError, ParamError};
use crate::gf2::BitVector;
use crate::graph::SplitGraph;
use crate::ring::{RingElement, RingParams};

/// Fixed constant `c` in `tau = n / (c * delta)`.
pub const TAU_DIVISOR: u64 = 20;
/// `k = tau / 10`.
pub const K_DIVISOR: usize = 10;
/// `ell = 100 * |A|`.
pub const ELL_PER_ARC: u64 = 100;
/// `reps = 100 * ln n`.
pub const REPS_PER_LOG_N: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    /// Size of the sampled set `T`.
    pub tau: usize,
    /// Coefficients live modulo `2^k`.
    pub k: u32,
    /// Arc weights are drawn from `1..=ell`.
    pub ell: u64,
    /// Truncation degree of the ring.
    pub m: usize,
    pub reps: usize,
    pub abort_factor: u64,
}

impl Params {
    pub fn ring_params(&self) -> RingParams {
        RingParams::new(self.k, self.m).expect("validated parameters")
    }
}

/// Optional replacements for any derived parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParamOverrides {
    pub tau: Option<usize>,
    pub k: Option<u32>,
    pub ell: Option<u64>,
    pub m: Option<usize>,
    pub reps: Option<usize>,
    pub abort_factor: Option<u64>,
}

fn invalid(name: &'static str, value: impl Into<u128>, constraint: &'static str) -> ParamError {
    ParamError::Invalid {
        name,
        value: value.into(),
        constraint,
    }
}

/// Derives parameters from the split graph's `n` and `|A|`, then applies
/// overrides. Dependent values (`k` from `tau`, `m` from `ell`) are derived
/// from the overridden inputs unless overridden themselves.
pub fn derive_params(g: &SplitGraph, overrides: &ParamOverrides) -> Result<Params, ParamError> {
    let n = g.input_vertex_count();
    let arcs = g.arc_count() as u64;

    let tau = match overrides.tau {
        Some(tau) => tau,
        // ceil(n / (20 * |A| / n)) = ceil(n^2 / (20 |A|))
        None if arcs == 0 => n,
        None => {
            let n2 = (n as u64) * (n as u64);
            (n2.div_ceil(TAU_DIVISOR * arcs) as usize).clamp(1, n.max(1))
        }
    };
    if tau == 0 || tau > n {
        return Err(invalid("tau", tau as u64, "1 <= tau <= n"));
    }

    let k = overrides
        .k
        .unwrap_or_else(|| tau.div_ceil(K_DIVISOR).max(1) as u32);
    if !(1..=64).contains(&k) {
        return Err(invalid("k", k, "1 <= k <= 64"));
    }

    let ell = overrides.ell.unwrap_or((ELL_PER_ARC * arcs).max(1));
    if ell == 0 {
        return Err(invalid("ell", ell, "ell >= 1"));
    }

    let m = match overrides.m {
        Some(m) => m,
        None => (n as u64)
            .checked_mul(ell)
            .and_then(|v| v.checked_add(1))
            .and_then(|v| usize::try_from(v).ok())
            .ok_or(ParamError::Overflow { n, ell })?,
    };
    if m == 0 {
        return Err(invalid("m", m as u64, "m >= 1"));
    }

    let reps = overrides.reps.unwrap_or_else(|| default_reps(n));
    if reps == 0 {
        return Err(invalid("reps", 0u64, "reps >= 1"));
    }

    let abort_factor = overrides.abort_factor.unwrap_or((n as u64).max(1));
    if abort_factor == 0 {
        return Err(invalid("abort_factor", 0u64, "abort_factor >= 1"));
    }

    Ok(Params {
        tau,
        k,
        ell,
        m,
        reps,
        abort_factor,
    })
}

/// `max(1, ceil(100 ln n))`.
pub fn default_reps(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    ((REPS_PER_LOG_N * (n as f64).ln()).ceil() as usize).max(1)
}

/// The sampled set `T` and arc weights.
///
/// Arcs into `T` carry the value 1; every other arc `uv` carries `x^w(uv)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    t_set: Vec<usize>,
    in_t: Vec<bool>,
    weights: Vec<Option<u64>>,
}

impl SamplePoint {
    /// Validates a hand-built sample point: `s` outside `T`, weights present
    /// exactly on arcs whose head is outside `T`, and every weight positive.
    pub fn from_parts(
        g: &SplitGraph,
        mut t_set: Vec<usize>,
        weights: Vec<Option<u64>>,
    ) -> Result<Self, FingerprintError> {
        t_set.sort_unstable();
        t_set.dedup();
        let count = g.vertex_count();
        if t_set.iter().any(|&v| v >= count || v == g.s()) || weights.len() != g.arc_count() {
            return Err(FingerprintError::SampleMismatch);
        }
        let mut in_t = vec![false; count];
        for &v in &t_set {
            in_t[v] = true;
        }
        for (&(_, head), w) in g.arcs().iter().zip(&weights) {
            match (in_t[head], w) {
                (true, None) => {}
                (false, Some(w)) if *w >= 1 => {}
                _ => return Err(FingerprintError::SampleMismatch),
            }
        }
        Ok(SamplePoint {
            t_set,
            in_t,
            weights,
        })
    }

    /// Sorted members of `T`.
    pub fn t_set(&self) -> &[usize] {
        &self.t_set
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_t[v]
    }

    /// Weight of arc `arc` (index into the graph's arc list), `None` for arcs into `T`.
    pub fn weight(&self, arc: usize) -> Option<u64> {
        self.weights[arc]
    }

    pub fn weights(&self) -> &[Option<u64>] {
        &self.weights
    }

    /// The value `z` of arc `arc` in the ring.
    pub fn z(&self, arc: usize, rp: RingParams) -> RingElement {
        match self.weights[arc] {
            None => RingElement::one(rp),
            Some(w) => RingElement::monomial_truncating(rp, w as usize, 1),
        }
    }

    /// `|T \ {t}|`.
    pub fn tau_prime(&self, g: &SplitGraph) -> usize {
        self.t_set.len() - usize::from(self.contains(g.t()))
    }

    pub fn contains_t(&self, g: &SplitGraph) -> bool {
        self.contains(g.t())
    }

    fn matches(&self, g: &SplitGraph) -> bool {
        self.in_t.len() == g.vertex_count() && self.weights.len() == g.arc_count()
    }
}

/// Draws `T` uniformly among `tau`-subsets of `V \ {s}` and independent
/// uniform weights in `1..=ell` for arcs whose head lies outside `T`.
pub fn sample_point<R: Rng + ?Sized>(g: &SplitGraph, p: &Params, rng: &mut R) -> SamplePoint {
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != g.s()).collect();
    assert!(p.tau <= candidates.len(), "tau exceeds |V \\ {{s}}|");
    let mut t_set: Vec<usize> = index::sample(rng, candidates.len(), p.tau)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    t_set.sort_unstable();
    let mut in_t = vec![false; g.vertex_count()];
    for &v in &t_set {
        in_t[v] = true;
    }
    let weights = g
        .arcs()
        .iter()
        .map(|&(_, head)| (!in_t[head]).then(|| rng.random_range(1..=p.ell)))
        .collect();
    SamplePoint {
        t_set,
        in_t,
        weights,
    }
}

/// Perturbation bits `q_v`, defined on `T` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QVector {
    t_set: Vec<usize>,
    per_vertex: Vec<bool>,
}

impl QVector {
    /// `bits[i]` is `q` of the `i`-th member of `sp.t_set()`.
    pub fn new(g: &SplitGraph, sp: &SamplePoint, bits: &[bool]) -> Result<Self, FingerprintError> {
        if bits.len() != sp.t_set.len() || !sp.matches(g) {
            return Err(FingerprintError::QMismatch);
        }
        let mut per_vertex = vec![false; g.vertex_count()];
        for (&v, &b) in sp.t_set.iter().zip(bits) {
            per_vertex[v] = b;
        }
        Ok(QVector {
            t_set: sp.t_set.clone(),
            per_vertex,
        })
    }

    pub fn zeros(g: &SplitGraph, sp: &SamplePoint) -> Self {
        Self::new(g, sp, &vec![false; sp.t_set.len()]).expect("matching sample point")
    }

    pub fn sample<R: Rng + ?Sized>(g: &SplitGraph, sp: &SamplePoint, rng: &mut R) -> Self {
        let bits: Vec<bool> = sp.t_set.iter().map(|_| rng.random()).collect();
        Self::new(g, sp, &bits).expect("matching sample point")
    }

    pub fn get(&self, v: usize) -> bool {
        self.per_vertex.get(v).copied().unwrap_or(false)
    }

    pub fn bits(&self) -> Vec<bool> {
        self.t_set.iter().map(|&v| self.per_vertex[v]).collect()
    }

    fn matches(&self, sp: &SamplePoint) -> bool {
        self.t_set == sp.t_set
    }
}

/// A 0/1 assignment to the variables `y_v`, `v` in `V \ {t} = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(BitVector);

impl Assignment {
    pub fn new(bits: BitVector) -> Self {
        Assignment(bits)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Assignment(BitVector::from_bools(bits))
    }

    pub fn all_ones(len: usize) -> Self {
        Assignment(BitVector::from_bools(&vec![true; len]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> bool {
        self.0.get(v)
    }

    /// `|y|`.
    pub fn weight(&self) -> usize {
        self.0.count_ones()
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }
}

/// Precomputed arc values and row layout for repeated Laplacian builds at a
/// fixed sample point.
pub struct LaplacianBuilder<'a> {
    g: &'a SplitGraph,
    sp: &'a SamplePoint,
    rp: RingParams,
    z: Vec<RingElement>,
}

impl<'a> LaplacianBuilder<'a> {
    pub fn new(
        g: &'a SplitGraph,
        sp: &'a SamplePoint,
        rp: RingParams,
    ) -> Result<Self, FingerprintError> {
        if !sp.matches(g) {
            return Err(FingerprintError::SampleMismatch);
        }
        let z = (0..g.arc_count()).map(|e| sp.z(e, rp)).collect();
        Ok(LaplacianBuilder { g, sp, rp, z })
    }

    pub fn ring_params(&self) -> RingParams {
        self.rp
    }

    /// Row/column of vertex `v` in the punctured matrix.
    #[inline]
    fn slot(&self, v: usize) -> usize {
        if v < self.g.s() {
            v
        } else {
            v - 1
        }
    }

    pub fn build(&self, q: &QVector, y: &Assignment) -> Result<RingMatrix, FingerprintError> {
        let n = self.g.input_vertex_count();
        if y.len() != n {
            return Err(FingerprintError::AssignmentLength {
                expected: n,
                actual: y.len(),
            });
        }
        if !q.matches(self.sp) {
            return Err(FingerprintError::QMismatch);
        }
        let s = self.g.s();
        let mut mat = RingMatrix::zeros(n, self.rp);
        for (e, &(a, b)) in self.g.arcs().iter().enumerate() {
            // a != t, since t has no out-arcs
            if !y.get(a) {
                continue;
            }
            let zb = self.slot(b);
            *mat.get_mut(zb, zb) += &self.z[e];
            if a != s {
                *mat.get_mut(self.slot(a), zb) -= &self.z[e];
            }
        }
        let one = RingElement::one(self.rp);
        for &v in self.sp.t_set() {
            if q.get(v) {
                let zv = self.slot(v);
                *mat.get_mut(zv, zv) -= &one;
            }
        }
        Ok(mat)
    }

    /// `(-1)^(N - |y|) * det(L^q_s(y, z))`.
    pub fn term(&self, q: &QVector, y: &Assignment) -> Result<RingElement, FingerprintError> {
        let mat = self.build(q, y)?;
        let d = det(&mat)?;
        let odd = (self.g.input_vertex_count() - y.weight()) % 2 == 1;
        Ok(if odd { -d } else { d })
    }
}

pub fn build_perturbed_laplacian(
    g: &SplitGraph,
    sp: &SamplePoint,
    q: &QVector,
    y: &Assignment,
    rp: RingParams,
) -> Result<RingMatrix, FingerprintError> {
    LaplacianBuilder::new(g, sp, rp)?.build(q, y)
}

pub fn term_value(
    g: &SplitGraph,
    sp: &SamplePoint,
    q: &QVector,
    y: &Assignment,
    rp: RingParams,
) -> Result<RingElement, FingerprintError> {
    LaplacianBuilder::new(g, sp, rp)?.term(q, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn split_with(n: usize, arcs: usize) -> SplitGraph {
        // a cycle plus chords i -> i+2, i+3, ... until the budget is spent
        let mut list: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut step = 2;
        while list.len() < arcs {
            for i in 0..n {
                if list.len() == arcs {
                    break;
                }
                list.push((i, (i + step) % n));
            }
            step += 1;
        }
        DirectedGraph::new(n, list)
            .unwrap()
            .split_vertex(0)
            .unwrap()
    }

    fn path_graph() -> SplitGraph {
        // s=0 -> 1 -> 2 -> t=3
        DirectedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)])
            .unwrap()
            .split_vertex(0)
            .unwrap()
    }

    #[test]
    fn derive_params_large_instance() {
        let g = split_with(400, 800);
        let p = derive_params(&g, &ParamOverrides::default()).unwrap();
        assert_eq!((p.tau, p.k, p.ell, p.m), (10, 1, 80_000, 32_000_001));
        assert_eq!(p.reps, 600);
        assert_eq!(p.abort_factor, 400);
    }

    #[test]
    fn derive_params_small_instance() {
        let g = split_with(20, 40);
        let p = derive_params(&g, &ParamOverrides::default()).unwrap();
        assert_eq!((p.tau, p.k, p.ell, p.m), (1, 1, 4000, 80_001));
        assert_eq!(p.reps, 300);
    }

    #[test]
    fn ell_override_recomputes_m() {
        let g = split_with(20, 40);
        let o = ParamOverrides {
            ell: Some(16),
            ..Default::default()
        };
        let p = derive_params(&g, &o).unwrap();
        assert_eq!((p.ell, p.m), (16, 20 * 16 + 1));
        let o = ParamOverrides {
            ell: Some(16),
            m: Some(7),
            ..Default::default()
        };
        assert_eq!(derive_params(&g, &o).unwrap().m, 7);
    }

    #[test]
    fn tau_override_drives_k() {
        let g = split_with(40, 80);
        let o = ParamOverrides {
            tau: Some(25),
            ..Default::default()
        };
        assert_eq!(derive_params(&g, &o).unwrap().k, 3);
    }

    #[test]
    fn invalid_overrides_rejected() {
        let g = split_with(6, 9);
        for o in [
            ParamOverrides {
                tau: Some(0),
                ..Default::default()
            },
            ParamOverrides {
                tau: Some(7),
                ..Default::default()
            },
            ParamOverrides {
                k: Some(0),
                ..Default::default()
            },
            ParamOverrides {
                k: Some(65),
                ..Default::default()
            },
            ParamOverrides {
                ell: Some(0),
                ..Default::default()
            },
            ParamOverrides {
                m: Some(0),
                ..Default::default()
            },
            ParamOverrides {
                reps: Some(0),
                ..Default::default()
            },
            ParamOverrides {
                abort_factor: Some(0),
                ..Default::default()
            },
        ] {
            assert!(derive_params(&g, &o).is_err(), "{o:?}");
        }
    }

    #[test]
    fn reps_use_natural_log() {
        assert_eq!(default_reps(1), 1);
        assert_eq!(default_reps(2), 70);
        assert_eq!(default_reps(10), 231);
    }

    #[test]
    fn full_t_means_all_ones() {
        let g = split_with(6, 10);
        let p = Params {
            tau: 6,
            k: 1,
            ell: 50,
            m: 301,
            reps: 1,
            abort_factor: 1,
        };
        let sp = sample_point(&g, &p, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(sp.t_set(), &[1, 2, 3, 4, 5, 6]);
        let rp = p.ring_params();
        for e in 0..g.arc_count() {
            assert_eq!(sp.z(e, rp), RingElement::one(rp));
        }
    }

    #[test]
    fn sample_point_invariants_and_determinism() {
        let g = split_with(9, 20);
        let p = derive_params(
            &g,
            &ParamOverrides {
                tau: Some(4),
                ell: Some(12),
                ..Default::default()
            },
        )
        .unwrap();
        for seed in 0..20 {
            let sp = sample_point(&g, &p, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(sp.t_set().len(), 4);
            assert!(!sp.contains(g.s()));
            for (e, &(_, head)) in g.arcs().iter().enumerate() {
                match sp.weight(e) {
                    None => assert!(sp.contains(head)),
                    Some(w) => {
                        assert!(!sp.contains(head));
                        assert!((1..=12).contains(&w));
                    }
                }
            }
            let again = sample_point(&g, &p, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(sp, again);
        }
    }

    #[test]
    fn from_parts_validation() {
        let g = path_graph();
        assert!(SamplePoint::from_parts(&g, vec![2], vec![Some(1), None, Some(3)]).is_ok());
        // s may not be sampled
        assert!(SamplePoint::from_parts(&g, vec![0], vec![Some(1), Some(1), Some(1)]).is_err());
        // arc into T must not carry a weight
        assert!(SamplePoint::from_parts(&g, vec![2], vec![Some(1), Some(2), Some(3)]).is_err());
        assert!(SamplePoint::from_parts(&g, vec![], vec![Some(0), Some(2), Some(3)]).is_err());
    }

    fn unit_path_point(g: &SplitGraph, t_set: Vec<usize>) -> SamplePoint {
        let weights = g
            .arcs()
            .iter()
            .map(|&(_, h)| (!t_set.contains(&h)).then_some(1))
            .collect();
        SamplePoint::from_parts(g, t_set, weights).unwrap()
    }

    #[test]
    fn zero_assignment_gives_zero_matrix() {
        let g = split_with(5, 8);
        let rp = RingParams::new(3, 20).unwrap();
        let sp = unit_path_point(&g, vec![]);
        let q = QVector::zeros(&g, &sp);
        let y = Assignment::from_bools(&[false; 5]);
        let mat = build_perturbed_laplacian(&g, &sp, &q, &y, rp).unwrap();
        assert_eq!(mat, RingMatrix::zeros(5, rp));
        assert!(det(&mat).unwrap().is_zero());
    }

    #[test]
    fn path_laplacian_by_hand() {
        let g = path_graph();
        let rp = RingParams::new(4, 1).unwrap();
        // all arcs into T = V \ {s} so every z is 1
        let sp = unit_path_point(&g, vec![1, 2, 3]);
        let q = QVector::zeros(&g, &sp);
        let y = Assignment::all_ones(3);
        let mat = build_perturbed_laplacian(&g, &sp, &q, &y, rp).unwrap();
        let c = |v: i64| RingElement::constant(rp, v as u64);
        let expected = RingMatrix::from_rows(vec![
            vec![c(1), c(-1), c(0)],
            vec![c(0), c(1), c(-1)],
            vec![c(0), c(0), c(1)],
        ])
        .unwrap();
        assert_eq!(mat, expected);
        assert_eq!(det(&mat).unwrap(), RingElement::one(rp));
        assert_eq!(
            term_value(&g, &sp, &q, &y, rp).unwrap(),
            RingElement::one(rp)
        );

        let q2 = QVector::new(&g, &sp, &[false, true, false]).unwrap();
        let mat = build_perturbed_laplacian(&g, &sp, &q2, &y, rp).unwrap();
        assert!(mat.get(1, 1).is_zero());
    }

    #[test]
    fn unperturbed_matches_plain_laplacian() {
        let g = split_with(6, 12);
        let p = derive_params(
            &g,
            &ParamOverrides {
                tau: Some(3),
                ell: Some(9),
                ..Default::default()
            },
        )
        .unwrap();
        let rp = p.ring_params();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let sp = sample_point(&g, &p, &mut rng);
            let q = QVector::zeros(&g, &sp);
            let bits: Vec<bool> = (0..6).map(|_| rng.random()).collect();
            let y = Assignment::from_bools(&bits);
            let mat = build_perturbed_laplacian(&g, &sp, &q, &y, rp).unwrap();
            // plain Laplacian straight from the definition
            let verts: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != g.s()).collect();
            for (i, &u) in verts.iter().enumerate() {
                for (j, &v) in verts.iter().enumerate() {
                    let mut want = RingElement::zero(rp);
                    for (e, &(a, b)) in g.arcs().iter().enumerate() {
                        if i == j && b == v && bits[a] {
                            want += &sp.z(e, rp);
                        }
                        if i != j && a == u && b == v && bits[u] {
                            want -= &sp.z(e, rp);
                        }
                    }
                    assert_eq!(mat.get(i, j), &want);
                }
            }
        }
    }

    #[test]
    fn degrees_stay_below_truncation() {
        let g = split_with(6, 11);
        let p = derive_params(
            &g,
            &ParamOverrides {
                tau: Some(2),
                ell: Some(30),
                ..Default::default()
            },
        )
        .unwrap();
        let rp = p.ring_params();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let sp = sample_point(&g, &p, &mut rng);
            let q = QVector::sample(&g, &sp, &mut rng);
            let bits: Vec<bool> = (0..6).map(|_| rng.random()).collect();
            let y = Assignment::from_bools(&bits);
            let mat = build_perturbed_laplacian(&g, &sp, &q, &y, rp).unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    assert!(mat.get(i, j).degree().unwrap_or(0) <= p.ell as usize);
                }
            }
            let d = det(&mat).unwrap();
            assert!(d.degree().unwrap_or(0) <= 6 * p.ell as usize);
            assert!(6 * (p.ell as usize) < p.m);
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let g = path_graph();
        let rp = RingParams::new(2, 4).unwrap();
        let sp = unit_path_point(&g, vec![2]);
        let q = QVector::zeros(&g, &sp);
        let short = Assignment::from_bools(&[true, true]);
        assert!(matches!(
            build_perturbed_laplacian(&g, &sp, &q, &short, rp),
            Err(FingerprintError::AssignmentLength {
                expected: 3,
                actual: 2
            })
        ));
        let other = unit_path_point(&g, vec![1]);
        let q_other = QVector::zeros(&g, &other);
        let y = Assignment::all_ones(3);
        assert!(matches!(
            build_perturbed_laplacian(&g, &sp, &q_other, &y, rp),
            Err(FingerprintError::QMismatch)
        ));
        assert!(QVector::new(&g, &sp, &[true, false]).is_err());
    }
}
