//! Exponential-time references for small inputs. Nothing here is used on
//! the detection path except the small-instance fallback.

use crate::error::OracleError;
use crate::fingerprint::{Assignment, LaplacianBuilder, QVector, SamplePoint};
use crate::gf2::BitVector;
use crate::graph::{DirectedGraph, SplitGraph};
use crate::ring::{RingElement, RingParams};

/// Largest graph accepted by [`is_hamiltonian_bruteforce`].
pub const BRUTEFORCE_MAX_VERTICES: usize = 24;
/// Largest split graph (including `t`) accepted by [`evaluate_p_direct`].
pub const DIRECT_MAX_VERTICES: usize = 13;
/// Largest number of `y` variables accepted by [`evaluate_p_fullsum`].
pub const FULLSUM_MAX_VARIABLES: usize = 16;

fn check_size(actual: usize, max: usize) -> Result<(), OracleError> {
    if actual > max {
        Err(OracleError::TooLarge { actual, max })
    } else {
        Ok(())
    }
}

/// Held–Karp over vertex subsets: `reach[mask]` holds the endpoints of
/// paths from vertex 0 that cover exactly `mask`.
pub fn is_hamiltonian_bruteforce(g: &DirectedGraph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    check_size(n, BRUTEFORCE_MAX_VERTICES)?;
    if n < 2 {
        return Ok(false);
    }
    let out: Vec<u32> = (0..n)
        .map(|v| g.out_neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in (1..=full).step_by(2) {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = out[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let ends = reach[full];
    Ok((0..n).any(|v| ends >> v & 1 == 1 && out[v] & 1 == 1))
}

/// Hamiltonicity by trying every cyclic order that starts at vertex 0.
pub fn is_hamiltonian_permutations(g: &DirectedGraph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    check_size(n, 11)?;
    if n < 2 {
        return Ok(false);
    }
    let mut rest: Vec<usize> = (1..n).collect();
    fn permute(g: &DirectedGraph, order: &mut Vec<usize>, i: usize) -> bool {
        if i == order.len() {
            let mut prev = 0;
            for &v in order.iter() {
                if !g.has_arc(prev, v) {
                    return false;
                }
                prev = v;
            }
            return g.has_arc(prev, 0);
        }
        for j in i..order.len() {
            order.swap(i, j);
            if permute(g, order, i + 1) {
                return true;
            }
            order.swap(i, j);
        }
        false
    }
    Ok(permute(g, &mut rest, 0))
}

/// Sum over Hamiltonian `s`–`t` paths of the product of arc values.
pub fn evaluate_p_direct(
    g: &SplitGraph,
    sp: &SamplePoint,
    rp: RingParams,
) -> Result<RingElement, OracleError> {
    let count = g.vertex_count();
    check_size(count, DIRECT_MAX_VERTICES)?;
    let z: Vec<RingElement> = (0..g.arc_count()).map(|e| sp.z(e, rp)).collect();
    // out-arcs as (head, arc index)
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); count];
    for (e, &(a, b)) in g.arcs().iter().enumerate() {
        out[a].push((b, e));
    }

    struct Walk<'a> {
        out: &'a [Vec<(usize, usize)>],
        z: &'a [RingElement],
        t: usize,
        full: u32,
        total: RingElement,
    }

    fn dfs(w: &mut Walk<'_>, v: usize, seen: u32, weight: &RingElement) {
        if v == w.t {
            if seen == w.full {
                w.total += weight;
            }
            return;
        }
        for i in 0..w.out[v].len() {
            let (next, e) = w.out[v][i];
            if seen >> next & 1 == 0 {
                let extended = weight * &w.z[e];
                dfs(w, next, seen | 1 << next, &extended);
            }
        }
    }

    let mut walk = Walk {
        out: &out,
        z: &z,
        t: g.t(),
        full: ((1u64 << count) - 1) as u32,
        total: RingElement::zero(rp),
    };
    dfs(&mut walk, g.s(), 1 << g.s(), &RingElement::one(rp));
    Ok(walk.total)
}

/// The unsieved sum of signed perturbed-Laplacian determinants over every
/// assignment.
pub fn evaluate_p_fullsum(
    g: &SplitGraph,
    sp: &SamplePoint,
    q: &QVector,
    rp: RingParams,
) -> Result<RingElement, OracleError> {
    let n = g.input_vertex_count();
    check_size(n, FULLSUM_MAX_VARIABLES)?;
    let builder = LaplacianBuilder::new(g, sp, rp)?;
    let mut total = RingElement::zero(rp);
    for bits in 0..1u64 << n {
        let y = Assignment::new(BitVector::from_u64(n, bits));
        total += &builder.term(q, &y)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingerprint::{derive_params, sample_point, ParamOverrides};
    use crate::generate::generate_random_digraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(n, arcs.to_vec()).unwrap()
    }

    fn tournament(n: usize, rng: &mut ChaCha8Rng) -> DirectedGraph {
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                arcs.push(if rng.random_bool(0.5) { (a, b) } else { (b, a) });
            }
        }
        graph(n, &arcs)
    }

    #[test]
    fn small_cases() {
        assert!(is_hamiltonian_bruteforce(&graph(3, &[(0, 1), (1, 2), (2, 0)])).unwrap());
        assert!(!is_hamiltonian_bruteforce(&graph(3, &[(0, 1), (1, 2)])).unwrap());
        assert!(is_hamiltonian_bruteforce(&graph(2, &[(0, 1), (1, 0)])).unwrap());
        assert!(!is_hamiltonian_bruteforce(&graph(1, &[])).unwrap());
        let star: Vec<_> = (1..4).flat_map(|v| [(0, v), (v, 0)]).collect();
        assert!(!is_hamiltonian_bruteforce(&graph(4, &star)).unwrap());
    }

    #[test]
    fn too_large_is_rejected() {
        let g = graph(25, &[]);
        assert_eq!(
            is_hamiltonian_bruteforce(&g),
            Err(OracleError::TooLarge {
                actual: 25,
                max: 24
            })
        );
    }

    #[test]
    fn tournaments_agree_with_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut seen = [0usize; 2];
        for _ in 0..100 {
            let g = tournament(8, &mut rng);
            let dp = is_hamiltonian_bruteforce(&g).unwrap();
            assert_eq!(dp, is_hamiltonian_permutations(&g).unwrap());
            seen[dp as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn sparse_random_agree_with_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..200 {
            let n = 3 + i % 7;
            let g = generate_random_digraph(n, 1.5, i % 2 == 0, &mut rng).unwrap();
            assert_eq!(
                is_hamiltonian_bruteforce(&g).unwrap(),
                is_hamiltonian_permutations(&g).unwrap()
            );
        }
    }

    #[test]
    fn direct_on_path_graph_is_one() {
        let sg = graph(3, &[(0, 1), (1, 2), (2, 0)]).split_vertex(0).unwrap();
        let rp = RingParams::new(3, 4).unwrap();
        let sp = SamplePoint::from_parts(&sg, vec![1, 2, 3], vec![None, None, None]).unwrap();
        assert_eq!(
            evaluate_p_direct(&sg, &sp, rp).unwrap(),
            RingElement::one(rp)
        );
    }

    #[test]
    fn direct_on_non_hamiltonian_is_zero() {
        let sg = graph(3, &[(0, 1), (1, 2), (2, 1)]).split_vertex(0).unwrap();
        let rp = RingParams::new(3, 10).unwrap();
        let sp = SamplePoint::from_parts(&sg, vec![], vec![Some(1), Some(2), Some(3)]).unwrap();
        assert!(evaluate_p_direct(&sg, &sp, rp).unwrap().is_zero());
    }

    #[test]
    fn direct_two_paths() {
        let arcs = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 3),
            (3, 2),
            (2, 1),
            (1, 4),
        ];
        let sg = graph(5, &arcs).split_vertex(0).unwrap();
        let rp = RingParams::new(8, 64).unwrap();
        let weights: Vec<Option<u64>> = (1..=sg.arc_count() as u64).map(Some).collect();
        let sp = SamplePoint::from_parts(&sg, vec![], weights.clone()).unwrap();
        // paths s,1,2,3,4,t and s,3,2,1,4,t
        let path_weight = |pairs: &[(usize, usize)]| -> usize {
            pairs
                .iter()
                .map(|p| {
                    let e = sg.arcs().iter().position(|a| a == p).unwrap();
                    weights[e].unwrap() as usize
                })
                .sum()
        };
        let t = sg.t();
        let w1 = path_weight(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, t)]);
        let w2 = path_weight(&[(0, 3), (3, 2), (2, 1), (1, 4), (4, t)]);
        assert_ne!(w1, w2);
        let expected =
            &RingElement::monomial(rp, w1, 1).unwrap() + &RingElement::monomial(rp, w2, 1).unwrap();
        assert_eq!(evaluate_p_direct(&sg, &sp, rp).unwrap(), expected);
    }

    #[test]
    fn fullsum_matches_direct_and_ignores_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for i in 0..50 {
            let n = 3 + i % 6;
            let g = generate_random_digraph(n, 2.0, i % 3 != 0, &mut rng).unwrap();
            let sg = g.split_vertex(rng.random_range(0..n)).unwrap();
            let over = ParamOverrides {
                tau: Some(rng.random_range(1..=n)),
                ell: Some(rng.random_range(4..=16)),
                ..Default::default()
            };
            let p = derive_params(&sg, &over).unwrap();
            let rp = p.ring_params();
            let sp = sample_point(&sg, &p, &mut rng);
            let direct = evaluate_p_direct(&sg, &sp, rp).unwrap();
            for _ in 0..3 {
                let q = QVector::sample(&sg, &sp, &mut rng);
                assert_eq!(
                    evaluate_p_fullsum(&sg, &sp, &q, rp).unwrap(),
                    direct,
                    "instance {i}"
                );
            }
            if !is_hamiltonian_bruteforce(&g).unwrap() {
                assert!(direct.is_zero());
            }
        }
    }
}
