//! Monte Carlo Hamiltonicity detection for sparse directed graphs in
//! polynomial space.
//!
//! The detector evaluates the Hamiltonicity polynomial of the s–t split of
//! the input at a random point over `Z_{2^k}[x]/(x^m)`. Evaluation is an
//! inclusion–exclusion sum of punctured-Laplacian determinants; a random
//! diagonal perturbation makes most summands vanish for a trivial parity
//! reason, and the survivors are listed as solutions of GF(2) linear
//! systems. A nonzero value certifies a Hamiltonian cycle.
//!
//! Module map:
//! - [`graph`]: digraphs, edge-list parsing, vertex split
//! - [`ring`]: truncated polynomial arithmetic
//! - [`determinant`]: division-free determinant and a Leibniz reference
//! - [`gf2`]: elimination and solution streaming over GF(2)
//! - [`fingerprint`]: parameters, sample points, perturbed Laplacians
//! - [`sieve`]: listing of contributing assignments and their expected count
//! - [`engine`]: the repetition loop and reports
//! - [`oracle`]: exponential brute-force references for small inputs
//! - [`generate`]: random digraphs with optional planted cycles

pub mod determinant;
pub mod engine;
pub mod error;
pub mod fingerprint;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod oracle;
pub mod ring;
pub mod sieve;

pub use determinant::{det, det_reference, RingMatrix};
pub use engine::{
    accumulate, decide_hamiltonicity, DetectionReport, EngineConfig, RepetitionStats, Route,
    Verdict,
};
pub use error::{EngineError, FingerprintError, GraphError, OracleError, ParamError, RingError};
pub use fingerprint::{Assignment, ParamOverrides, Params, QVector, SamplePoint};
pub use generate::generate_random_digraph;
pub use gf2::{BitVector, Gf2Solution, Gf2System, SolutionStream};
pub use graph::{DirectedGraph, SplitGraph};
pub use ring::{RingElement, RingParams};
