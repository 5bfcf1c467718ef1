//! Partially commutative metabelian Lie rings over the integers.
//!
//! A finite graph `G` on generators `x1 < … < xn` defines the metabelian Lie
//! ring `M(X;G)` in which `[xi, xj] = 0` exactly for the edges of `G`. The
//! crate computes canonical forms in these rings, the module action of
//! commutative polynomials on the derived subalgebra, annihilators of
//! `[xi, xj]`, centralizers of generators and of their linear combinations,
//! and decides universal equivalence of the rings defined by trees.
//!
//! An independent brute-force model of every homogeneous component lives in
//! [`oracle`]; the tests use it to certify the other modules.

pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod expr;
pub mod freemetab;
pub mod graph;
pub mod hom;
pub mod oracle;
pub mod pcalg;
pub mod structure;

pub use error::{Error, Result};
pub use expr::{parse_comm, parse_lie, LieExpr};
pub use freemetab::{Coeff, CommMonomial, CommPoly, LieMonomial, LiePoly, MultiDegree};
pub use graph::{Graph, Relabeled, Vertex};
pub use pcalg::PCAlgebra;

