//! Listing the assignments that can contribute to the perturbed
//! inclusion–exclusion sum.
//!
//! A row `v` of the punctured Laplacian with `v` in `T`, and either `y_v = 0`
//! or `v = t`, has no odd off-diagonal coefficient; it is all-even exactly
//! when its diagonal `sum_{wv} y_w - q_v` is even. Those rows form `Z_y`.
//! With `k` or more all-even rows the determinant is divisible by `2^k` and
//! vanishes in the ring, so only assignments with at most `k - 1` even rows
//! in `Z_y` are listed.
//!
//! The listing fixes `y*` on `T \ {t}`, then a parity pattern `p` on `Z_{y*}`
//! with at most `k - 1` zeros, and streams the solutions of the resulting
//! GF(2) system over the remaining variables. Each assignment has one
//! restriction to `T \ {t}` and one parity pattern, so branches are disjoint.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fingerprint::{Assignment, QVector, SamplePoint};
use crate::gf2::{BitVector, Gf2Solution, Gf2System, SolutionStream};
use crate::graph::SplitGraph;

/// `y*`: values on the members of `T \ {t}`, in increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    members: Vec<usize>,
    values: Vec<bool>,
}

impl PartialAssignment {
    pub fn new(members: Vec<usize>, values: Vec<bool>) -> Self {
        assert_eq!(members.len(), values.len());
        PartialAssignment { members, values }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, v: usize) -> Option<bool> {
        self.members
            .iter()
            .position(|&u| u == v)
            .map(|i| self.values[i])
    }
}

/// `Z_{y*}`: members of `T \ {t}` set to 0, plus `t` when `t` is in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSet {
    members: Vec<usize>,
}

impl ZSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Diagonal parities `p_v` on `Z_{y*}` (`true` = odd).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityVector {
    members: Vec<usize>,
    odd: Vec<bool>,
}

impl ParityVector {
    pub fn new(z: &ZSet, odd: Vec<bool>) -> Self {
        assert_eq!(z.len(), odd.len());
        ParityVector {
            members: z.members.clone(),
            odd,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn odd(&self) -> &[bool] {
        &self.odd
    }

    pub fn even_count(&self) -> usize {
        self.odd.iter().filter(|&&b| !b).count()
    }
}

pub fn z_set(t_set: &[usize], t: usize, y_star: &PartialAssignment) -> ZSet {
    let mut members: Vec<usize> = y_star
        .members
        .iter()
        .zip(&y_star.values)
        .filter(|(_, &val)| !val)
        .map(|(&v, _)| v)
        .collect();
    if t_set.contains(&t) {
        members.push(t);
    }
    members.sort_unstable();
    ZSet { members }
}

/// Vertices whose `y` is not fixed by `y*`: `(V \ {t}) \ T`, ascending.
pub fn free_vertices(g: &SplitGraph, sp: &SamplePoint) -> Vec<usize> {
    (0..g.input_vertex_count())
        .filter(|&v| !sp.contains(v))
        .collect()
}

/// `T \ {t}`, ascending.
pub fn fixed_vertices(g: &SplitGraph, sp: &SamplePoint) -> Vec<usize> {
    sp.t_set().iter().copied().filter(|&v| v != g.t()).collect()
}

/// One equation per `v` in `Z_{y*}` over the free variables:
/// `sum_{w free, wv in A} y_w = p_v + q_v + sum_{w in T \ {t}, wv in A} y*_w (mod 2)`.
pub fn build_equation_system(
    g: &SplitGraph,
    sp: &SamplePoint,
    y_star: &PartialAssignment,
    p: &ParityVector,
    q: &QVector,
) -> Gf2System {
    let free = free_vertices(g, sp);
    let mut var_of = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in free.iter().enumerate() {
        var_of[v] = i;
    }
    build_with_vars(g, sp, &var_of, free.len(), y_star, p, q)
}

fn build_with_vars(
    g: &SplitGraph,
    sp: &SamplePoint,
    var_of: &[usize],
    num_vars: usize,
    y_star: &PartialAssignment,
    p: &ParityVector,
    q: &QVector,
) -> Gf2System {
    let mut sys = Gf2System::new(num_vars);
    for (&v, &odd) in p.members.iter().zip(&p.odd) {
        let mut coeffs = BitVector::zeros(num_vars);
        let mut rhs = odd ^ q.get(v);
        for &w in g.in_neighbors(v) {
            if sp.contains(w) {
                rhs ^= y_star.get(w).unwrap_or(false);
            } else {
                coeffs.flip(var_of[w]);
            }
        }
        sys.push_row(coeffs, rhs);
    }
    sys
}

/// A feasible `(y*, p)` pair with its solution space.
#[derive(Clone, Debug)]
pub struct Branch {
    pub y_star: PartialAssignment,
    pub parity: ParityVector,
    pub solution: Gf2Solution,
}

impl Branch {
    /// `2^nullity`, saturating at `u128::MAX`.
    pub fn term_count(&self) -> u128 {
        match self.solution.nullity() {
            n if n < 128 => 1u128 << n,
            _ => u128::MAX,
        }
    }
}

/// Merges `y*` and a free-variable solution into a full assignment.
#[derive(Clone, Debug)]
pub struct AssignmentLayout {
    n: usize,
    free: Vec<usize>,
}

impl AssignmentLayout {
    pub fn new(g: &SplitGraph, sp: &SamplePoint) -> Self {
        AssignmentLayout {
            n: g.input_vertex_count(),
            free: free_vertices(g, sp),
        }
    }

    pub fn assemble(&self, y_star: &PartialAssignment, free_values: &BitVector) -> Assignment {
        let mut bits = BitVector::zeros(self.n);
        for (&v, &val) in y_star.members.iter().zip(&y_star.values) {
            bits.set(v, val);
        }
        for i in free_values.iter_ones() {
            bits.set(self.free[i], true);
        }
        Assignment::new(bits)
    }
}

/// Feasible branches in listing order: `y*` lexicographic (first member of
/// `T \ {t}` most significant), then parity patterns by increasing number
/// of zeros, lexicographic within a size.
pub struct Branches<'a> {
    g: &'a SplitGraph,
    sp: &'a SamplePoint,
    q: &'a QVector,
    k: u32,
    fixed: Vec<usize>,
    var_of: Vec<usize>,
    num_vars: usize,
    next_y_star: u64,
    y_star_count: u64,
    current: Option<(PartialAssignment, ZSet, ZeroPatterns)>,
    infeasible: u64,
    systems: u64,
}

impl<'a> Branches<'a> {
    pub fn new(g: &'a SplitGraph, sp: &'a SamplePoint, q: &'a QVector, k: u32) -> Self {
        let fixed = fixed_vertices(g, sp);
        assert!(fixed.len() < 64, "|T \\ {{t}}| too large to enumerate");
        let free = free_vertices(g, sp);
        let mut var_of = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in free.iter().enumerate() {
            var_of[v] = i;
        }
        Branches {
            g,
            sp,
            q,
            k,
            y_star_count: 1u64 << fixed.len(),
            fixed,
            var_of,
            num_vars: free.len(),
            next_y_star: 0,
            current: None,
            infeasible: 0,
            systems: 0,
        }
    }

    /// Systems solved so far.
    pub fn systems_solved(&self) -> u64 {
        self.systems
    }

    /// Systems found inconsistent so far.
    pub fn infeasible(&self) -> u64 {
        self.infeasible
    }
}

impl Iterator for Branches<'_> {
    type Item = Branch;

    fn next(&mut self) -> Option<Branch> {
        loop {
            if self.current.is_none() {
                if self.next_y_star >= self.y_star_count {
                    return None;
                }
                let idx = self.next_y_star;
                self.next_y_star += 1;
                let width = self.fixed.len();
                let values = (0..width)
                    .map(|j| idx >> (width - 1 - j) & 1 == 1)
                    .collect();
                let y_star = PartialAssignment::new(self.fixed.clone(), values);
                let z = z_set(self.sp.t_set(), self.g.t(), &y_star);
                let max_zeros = (self.k as usize - 1).min(z.len());
                let patterns = ZeroPatterns::new(z.len(), max_zeros);
                self.current = Some((y_star, z, patterns));
            }
            let (y_star, z, patterns) = self.current.as_mut().expect("set above");
            let Some(zeros) = patterns.next() else {
                self.current = None;
                continue;
            };
            let mut odd = vec![true; z.len()];
            for i in zeros {
                odd[i] = false;
            }
            let parity = ParityVector::new(z, odd);
            let sys = build_with_vars(
                self.g,
                self.sp,
                &self.var_of,
                self.num_vars,
                y_star,
                &parity,
                self.q,
            );
            self.systems += 1;
            match sys.solve() {
                Some(solution) => {
                    return Some(Branch {
                        y_star: y_star.clone(),
                        parity,
                        solution,
                    })
                }
                None => self.infeasible += 1,
            }
        }
    }
}

/// Subsets of `0..len` with at most `max` elements, by size then lexicographically.
struct ZeroPatterns {
    len: usize,
    max: usize,
    size: usize,
    combo: Option<Vec<usize>>,
}

impl ZeroPatterns {
    fn new(len: usize, max: usize) -> Self {
        ZeroPatterns {
            len,
            max,
            size: 0,
            combo: Some(Vec::new()),
        }
    }
}

impl Iterator for ZeroPatterns {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.combo.clone()?;
        // advance to the next combination of the same size, else grow
        let mut next = None;
        if let Some(c) = &self.combo {
            let mut c = c.clone();
            let s = c.len();
            let mut i = s;
            while i > 0 {
                i -= 1;
                if c[i] < self.len - s + i {
                    c[i] += 1;
                    for j in i + 1..s {
                        c[j] = c[j - 1] + 1;
                    }
                    next = Some(c);
                    break;
                }
            }
        }
        if next.is_none() && self.size < self.max {
            self.size += 1;
            next = Some((0..self.size).collect());
        }
        self.combo = next;
        Some(out)
    }
}

/// Every contributing assignment exactly once, generated lazily.
pub struct ListingTerms<'a> {
    branches: Branches<'a>,
    layout: AssignmentLayout,
    current: Option<(PartialAssignment, SolutionStream)>,
    yielded: u128,
}

impl<'a> ListingTerms<'a> {
    pub fn yielded(&self) -> u128 {
        self.yielded
    }
}

impl Iterator for ListingTerms<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        loop {
            if let Some((y_star, stream)) = self.current.as_mut() {
                if let Some(free) = stream.next_ref() {
                    self.yielded += 1;
                    return Some(self.layout.assemble(y_star, free));
                }
                self.current = None;
            }
            let branch = self.branches.next()?;
            self.current = Some((branch.y_star, branch.solution.stream()));
        }
    }
}

pub fn listing_terms<'a>(
    g: &'a SplitGraph,
    sp: &'a SamplePoint,
    q: &'a QVector,
    k: u32,
) -> ListingTerms<'a> {
    ListingTerms {
        branches: Branches::new(g, sp, q, k),
        layout: AssignmentLayout::new(g, sp),
        current: None,
        yielded: 0,
    }
}

/// Number of assignments [`listing_terms`] would produce, from the branch
/// nullities alone.
pub fn count_listed(g: &SplitGraph, sp: &SamplePoint, q: &QVector, k: u32) -> u128 {
    Branches::new(g, sp, q, k).fold(0u128, |acc, b| acc.saturating_add(b.term_count()))
}

/// [`count_listed`] without saturation.
pub fn count_listed_exact(g: &SplitGraph, sp: &SamplePoint, q: &QVector, k: u32) -> BigInt {
    Branches::new(g, sp, q, k)
        .map(|b| BigInt::one() << b.solution.nullity())
        .sum()
}

/// Probability over `q` that an assignment with `|Z_y| = z_size` survives:
/// `2^{-z} * sum_{i < k} C(z, i)`.
pub fn contribution_probability(z_size: usize, k: u32) -> BigRational {
    let z = BigInt::from(z_size);
    let tail: BigInt = (0..(k as usize).min(z_size + 1))
        .map(|i| binomial(z.clone(), BigInt::from(i)))
        .sum();
    BigRational::new(tail, BigInt::one() << z_size)
}

/// Expected number of listed assignments over a uniform `q`, given
/// `N` variables, `|T \ {t}| = tau_prime`, and whether `t` is in `T`.
pub fn expected_contributing_count(
    n_vars: usize,
    tau_prime: usize,
    t_in_t: bool,
    k: u32,
) -> BigRational {
    assert!(tau_prime <= n_vars, "tau' exceeds the number of variables");
    assert!(k >= 1, "k must be positive");
    let b = usize::from(t_in_t);
    let mut sum = BigRational::zero();
    for j in 0..=tau_prime {
        let ways = BigRational::from_integer(binomial(BigInt::from(tau_prime), BigInt::from(j)));
        sum += ways * contribution_probability(j + b, k);
    }
    sum * BigRational::from_integer(BigInt::one() << (n_vars - tau_prime))
}

/// `floor(factor * expectation)`, saturating at `u128::MAX`.
pub fn abort_threshold(expected: &BigRational, factor: u64) -> u128 {
    let scaled = expected * BigRational::from_integer(BigInt::from(factor));
    let floor = scaled.floor().to_integer();
    u128::try_from(floor).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::det;
    use crate::fingerprint::{
        build_perturbed_laplacian, derive_params, sample_point, ParamOverrides,
    };
    use crate::generate::generate_random_digraph;
    use crate::graph::DirectedGraph;
    use crate::ring::RingParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn path_graph() -> SplitGraph {
        DirectedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)])
            .unwrap()
            .split_vertex(0)
            .unwrap()
    }

    #[test]
    fn z_set_cases() {
        let ys = PartialAssignment::new(vec![1, 2], vec![true, true]);
        assert!(z_set(&[1, 2], 9, &ys).is_empty());
        let ys = PartialAssignment::new(vec![1, 2], vec![false, false]);
        assert_eq!(z_set(&[1, 2, 9], 9, &ys).members(), &[1, 2, 9]);
        let ys = PartialAssignment::new(vec![4, 5], vec![true, false]);
        assert_eq!(z_set(&[4, 5, 9], 9, &ys).members(), &[5, 9]);
    }

    #[test]
    fn equation_for_path_graph() {
        let g = path_graph();
        let sp = SamplePoint::from_parts(&g, vec![2], vec![Some(1), None, Some(2)]).unwrap();
        let ys = PartialAssignment::new(vec![2], vec![false]);
        let z = z_set(sp.t_set(), g.t(), &ys);
        assert_eq!(z.members(), &[2]);
        let p = ParityVector::new(&z, vec![true]);
        // free variables: y_0 (= y_s) and y_1
        let q0 = QVector::new(&g, &sp, &[false]).unwrap();
        let sys = build_equation_system(&g, &sp, &ys, &p, &q0);
        assert_eq!(sys.rows(), &[(BitVector::from_bools(&[false, true]), true)]);
        let q1 = QVector::new(&g, &sp, &[true]).unwrap();
        let sys = build_equation_system(&g, &sp, &ys, &p, &q1);
        assert_eq!(
            sys.rows(),
            &[(BitVector::from_bools(&[false, true]), false)]
        );
    }

    #[test]
    fn isolated_row_with_odd_target_is_infeasible() {
        // vertex 2's only in-neighbour is 1, which lies in T
        let g = path_graph();
        let sp = SamplePoint::from_parts(&g, vec![1, 2], vec![None, None, Some(1)]).unwrap();
        let ys = PartialAssignment::new(vec![1, 2], vec![false, false]);
        let z = z_set(sp.t_set(), g.t(), &ys);
        let p = ParityVector::new(&z, vec![true, true]);
        let q = QVector::zeros(&g, &sp);
        let sys = build_equation_system(&g, &sp, &ys, &p, &q);
        // row for 2: 0 = 1 + 0 + y*_1 = 1
        assert!(sys.solve().is_none());
    }

    #[test]
    fn zero_patterns_order() {
        let all: Vec<_> = ZeroPatterns::new(3, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2]
            ]
        );
        assert_eq!(ZeroPatterns::new(0, 0).count(), 1);
        assert_eq!(ZeroPatterns::new(4, 4).count(), 16);
    }

    fn random_instance(seed: u64, n: usize, tau: usize) -> (SplitGraph, SamplePoint, QVector) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = generate_random_digraph(n, 2.0, rng.random_bool(0.5), &mut rng).unwrap();
        let sg = g.split_vertex(0).unwrap();
        let p = derive_params(
            &sg,
            &ParamOverrides {
                tau: Some(tau),
                ell: Some(8),
                ..Default::default()
            },
        )
        .unwrap();
        let sp = sample_point(&sg, &p, &mut rng);
        let q = QVector::sample(&sg, &sp, &mut rng);
        (sg, sp, q)
    }

    #[test]
    fn sieve_disabled_lists_everything() {
        let (g, sp, q) = random_instance(1, 7, 3);
        let listed: HashSet<_> = listing_terms(&g, &sp, &q, 4).collect();
        assert_eq!(listed.len(), 1 << 7);
    }

    #[test]
    fn single_vertex_t_k1() {
        // T = {v}, t not in T, y*_v = 0: only the odd pattern is tried
        let (g, sp, q) = random_instance(2, 6, 1);
        if sp.contains(g.t()) {
            return;
        }
        let v = sp.t_set()[0];
        for y in listing_terms(&g, &sp, &q, 1) {
            if !y.get(v) {
                let sum = g.in_neighbors(v).iter().filter(|&&w| y.get(w)).count();
                assert_eq!((sum + q.get(v) as usize) % 2, 1);
            }
        }
    }

    fn brute_contributing(
        g: &SplitGraph,
        sp: &SamplePoint,
        q: &QVector,
        k: u32,
    ) -> HashSet<Assignment> {
        let n = g.input_vertex_count();
        let rp = RingParams::new(k, 64).unwrap();
        (0..1u64 << n)
            .map(|x| Assignment::new(BitVector::from_u64(n, x)))
            .filter(|y| {
                let mat = build_perturbed_laplacian(g, sp, q, y, rp).unwrap();
                let even_rows = sp
                    .t_set()
                    .iter()
                    .filter(|&&v| v == g.t() || !y.get(v))
                    .filter(|&&v| mat.row_is_even(if v < g.s() { v } else { v - 1 }))
                    .count();
                even_rows < k as usize
            })
            .collect()
    }

    #[test]
    fn listing_matches_brute_force_and_skips_vanish() {
        for seed in 0..25 {
            let n = 5 + (seed as usize % 4);
            let tau = 1 + seed as usize % n;
            let (g, sp, q) = random_instance(100 + seed, n, tau);
            let k = 1 + (seed as u32 % 3);
            let listed: Vec<_> = listing_terms(&g, &sp, &q, k).collect();
            let set: HashSet<_> = listed.iter().cloned().collect();
            assert_eq!(set.len(), listed.len(), "duplicate listed, seed {seed}");
            assert_eq!(set, brute_contributing(&g, &sp, &q, k), "seed {seed}");
            assert_eq!(count_listed(&g, &sp, &q, k), listed.len() as u128);

            let rp = RingParams::new(k, 8 * n + 1).unwrap();
            for x in 0..1u64 << n {
                let y = Assignment::new(BitVector::from_u64(n, x));
                if !set.contains(&y) {
                    let mat = build_perturbed_laplacian(&g, &sp, &q, &y, rp).unwrap();
                    assert!(det(&mat).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn probability_examples() {
        assert_eq!(contribution_probability(3, 1), ratio(1, 8));
        assert_eq!(contribution_probability(4, 2), ratio(5, 16));
        assert_eq!(contribution_probability(0, 1), ratio(1, 1));
        assert_eq!(contribution_probability(2, 5), ratio(1, 1));
    }

    #[test]
    fn expected_count_matches_enumeration() {
        // direct sum over all y of Pr[eps_y]
        for n_vars in 0..8 {
            for tau_prime in 0..=n_vars {
                for t_in_t in [false, true] {
                    for k in 1..4 {
                        let mut direct = BigRational::zero();
                        for y in 0u32..1 << n_vars {
                            let zeros = (0..tau_prime).filter(|&j| y >> j & 1 == 0).count();
                            direct += contribution_probability(zeros + t_in_t as usize, k);
                        }
                        assert_eq!(
                            expected_contributing_count(n_vars, tau_prime, t_in_t, k),
                            direct
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn expected_count_without_sieve_is_everything() {
        let e = expected_contributing_count(10, 4, true, 6);
        assert_eq!(e, BigRational::from_integer(BigInt::from(1024)));
    }

    #[test]
    fn expected_fraction_non_increasing_in_tau() {
        for k in 1..4 {
            let mut prev: Option<BigRational> = None;
            for tau_prime in 0..=30 {
                let frac = expected_contributing_count(30, tau_prime, false, k)
                    / BigRational::from_integer(BigInt::one() << 30);
                if let Some(p) = &prev {
                    assert!(&frac <= p);
                }
                prev = Some(frac);
            }
        }
    }

    #[test]
    fn threshold_floors() {
        assert_eq!(abort_threshold(&ratio(5, 16), 7), 2);
        assert_eq!(abort_threshold(&ratio(48, 1), 3), 144);
    }
}
