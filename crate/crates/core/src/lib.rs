//! Exact k-star isolation numbers of trees.
//!
//! A vertex set `D` is *k-isolating* when `G - N[D]` contains no `K_{1,k}`;
//! ι_k(G) is the smallest size of such a set. This crate provides exact
//! solvers (a subset search and a linear tree dynamic program), the closed-form
//! upper bounds in terms of order, leaves and support vertices, generators and
//! certificate-producing recognizers for the extremal tree families, and a
//! sweep harness that checks every statement over all small free trees.

pub mod bounds;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod solver;

pub use error::{FamilyError, GraphError, HarnessError, SolverError};
pub use graph::{Graph, PathWitness, Tree};
pub use solver::{DominationSolution, IsolationSolution, Method};

/// Exact scalar used for every bound comparison.
pub type Rational = num_rational::Ratio<i64>;

/// Bound report in exact arithmetic.
pub type BoundReport = bounds::BoundReport<Rational>;

/// Bound report in floating point, for display only.
pub type FloatBoundReport = bounds::BoundReport<f64>;
