//! Directed graphs, the edge-list text format, and the vertex split that
//! turns Hamiltonian cycles into Hamiltonian s–t paths.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::GraphError;

/// A simple digraph: no self-loops, no parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl DirectedGraph {
    /// Builds a graph, rejecting out-of-range ids, self-loops and duplicates.
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(arcs.len());
        for (i, &(tail, head)) in arcs.iter().enumerate() {
            let line = i + 1;
            for vertex in [tail, head] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        line,
                        vertex,
                        vertex_count,
                    });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop { line, vertex: tail });
            }
            if !seen.insert((tail, head)) {
                return Err(GraphError::DuplicateArc { line, tail, head });
            }
        }
        Ok(Self::from_checked(vertex_count, arcs))
    }

    fn from_checked(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); vertex_count];
        let mut in_adj = vec![Vec::new(); vertex_count];
        for &(tail, head) in &arcs {
            out_adj[tail].push(head);
            in_adj[head].push(tail);
        }
        DirectedGraph {
            vertex_count,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.out_adj[tail].contains(&head)
    }

    /// Exact `|A| / n`. Panics on the empty graph.
    pub fn average_outdegree(&self) -> Ratio<u64> {
        assert!(
            self.vertex_count >= 1,
            "average outdegree of an empty graph"
        );
        Ratio::new(self.arcs.len() as u64, self.vertex_count as u64)
    }

    /// True when some vertex has no outgoing or no incoming arc, which rules
    /// out a Hamiltonian cycle (including the single-vertex graph).
    pub fn has_dead_vertex(&self) -> bool {
        (0..self.vertex_count).any(|v| self.out_adj[v].is_empty() || self.in_adj[v].is_empty())
    }

    /// Replaces `u` by a source `s` keeping `u`'s out-arcs and a sink `t`
    /// keeping `u`'s in-arcs.
    ///
    /// `s` keeps the id `u`; `t` is the fresh id `n`. Every other vertex keeps
    /// its id, so an assignment over `V \ {t}` is indexed by original ids.
    pub fn split_vertex(&self, u: usize) -> Result<SplitGraph, GraphError> {
        if self.vertex_count < 2 {
            return Err(GraphError::TooSmall {
                required: 2,
                actual: self.vertex_count,
            });
        }
        if u >= self.vertex_count {
            return Err(GraphError::NoSuchVertex {
                vertex: u,
                vertex_count: self.vertex_count,
            });
        }
        let t = self.vertex_count;
        let arcs = self
            .arcs
            .iter()
            .map(|&(a, b)| if b == u { (a, t) } else { (a, b) })
            .collect();
        Ok(SplitGraph {
            base: DirectedGraph::from_checked(self.vertex_count + 1, arcs),
            s: u,
            t,
            split_source: u,
        })
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `tail head`.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(GraphError::Malformed {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let [n, m] = parse_pair(header_line, header)?;

        let mut seen = HashSet::with_capacity(m);
        let mut arcs = Vec::with_capacity(m);
        for (line, body) in lines {
            let [tail, head] = parse_pair(line, body)?;
            for vertex in [tail, head] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange {
                        line,
                        vertex,
                        vertex_count: n,
                    });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop { line, vertex: tail });
            }
            if !seen.insert((tail, head)) {
                return Err(GraphError::DuplicateArc { line, tail, head });
            }
            arcs.push((tail, head));
        }
        if arcs.len() != m {
            return Err(GraphError::ArcCountMismatch {
                declared: m,
                found: arcs.len(),
            });
        }
        Ok(Self::from_checked(n, arcs))
    }

    /// Renders the graph in the edge-list format accepted by [`parse`](Self::parse).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.arcs.len());
        for (a, b) in &self.arcs {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], GraphError> {
    let mut fields = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = fields.next().ok_or_else(|| GraphError::Malformed {
            line,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| GraphError::Malformed {
            line,
            message: format!("invalid {what} {tok:?}"),
        })
    };
    let pair = [next("first field")?, next("second field")?];
    if let Some(extra) = fields.next() {
        return Err(GraphError::Malformed {
            line,
            message: format!("unexpected trailing field {extra:?}"),
        });
    }
    Ok(pair)
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// The `(n+1)`-vertex graph produced by [`DirectedGraph::split_vertex`].
///
/// Invariants: `s` has no in-arcs, `t` has no out-arcs, and `t` is the last
/// vertex id, so `V \ {t}` is exactly `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraph {
    base: DirectedGraph,
    s: usize,
    t: usize,
    split_source: usize,
}

impl SplitGraph {
    /// Wraps an already split graph, checking the source/sink invariants.
    pub fn from_parts(base: DirectedGraph, s: usize) -> Result<Self, GraphError> {
        let count = base.vertex_count();
        if count < 3 {
            return Err(GraphError::TooSmall {
                required: 3,
                actual: count,
            });
        }
        let t = count - 1;
        if s >= t {
            return Err(GraphError::InvalidSplit(format!(
                "source {s} must differ from the sink {t}"
            )));
        }
        if !base.in_neighbors(s).is_empty() {
            return Err(GraphError::InvalidSplit(format!("source {s} has in-arcs")));
        }
        if !base.out_neighbors(t).is_empty() {
            return Err(GraphError::InvalidSplit(format!("sink {t} has out-arcs")));
        }
        Ok(SplitGraph {
            base,
            s,
            t,
            split_source: s,
        })
    }

    pub fn base(&self) -> &DirectedGraph {
        &self.base
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn split_source(&self) -> usize {
        self.split_source
    }

    /// Number of vertices of the split graph, `n + 1`.
    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    /// `n`: the vertex count of the input graph, which is also the number
    /// of y-variables and the dimension of the punctured Laplacian.
    pub fn input_vertex_count(&self) -> usize {
        self.base.vertex_count() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.base.arc_count()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        self.base.arcs()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        self.base.out_neighbors(v)
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        self.base.in_neighbors(v)
    }

    /// True when some vertex other than `s` lacks in-arcs, or some vertex
    /// other than `t` lacks out-arcs.
    pub fn has_dead_vertex(&self) -> bool {
        (0..self.vertex_count()).any(|v| {
            (v != self.s && self.in_neighbors(v).is_empty())
                || (v != self.t && self.out_neighbors(v).is_empty())
        })
    }
}
