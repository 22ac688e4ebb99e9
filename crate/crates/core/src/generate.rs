//! Random digraphs for benchmarks and tests.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::GraphError;
use crate::graph::DirectedGraph;

/// `round(delta * n)` distinct arcs without self-loops. With
/// `ensure_hamiltonian`, a uniformly random Hamiltonian cycle is placed
/// first and the rest are drawn uniformly from the remaining non-arcs.
pub fn generate_random_digraph<R: Rng + ?Sized>(
    n: usize,
    delta: f64,
    ensure_hamiltonian: bool,
    rng: &mut R,
) -> Result<DirectedGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall {
            required: 2,
            actual: n,
        });
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(GraphError::ArcBudget {
            n,
            arcs: 0,
            reason: format!("average outdegree {delta} is not a non-negative number"),
        });
    }
    let arcs = (delta * n as f64).round() as usize;
    let capacity = n * (n - 1);
    if arcs > capacity {
        return Err(GraphError::ArcBudget {
            n,
            arcs,
            reason: format!("at most {capacity} arcs fit"),
        });
    }
    if ensure_hamiltonian && arcs < n {
        return Err(GraphError::ArcBudget {
            n,
            arcs,
            reason: "a Hamiltonian cycle needs n arcs".into(),
        });
    }

    let mut present = vec![false; n * n];
    let mut chosen = Vec::with_capacity(arcs);
    if ensure_hamiltonian {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for i in 0..n {
            let arc = (order[i], order[(i + 1) % n]);
            present[arc.0 * n + arc.1] = true;
            chosen.push(arc);
        }
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && !present[a * n + b])
        .collect();
    let extra = arcs - chosen.len();
    chosen.extend(
        index::sample(rng, free.len(), extra)
            .into_iter()
            .map(|i| free[i]),
    );
    chosen.sort_unstable();
    DirectedGraph::new(n, chosen)
}
