//! Exact verification and sampling toolkit for insertion processes on
//! weighted graphs.
//!
//! A symbol arriving between two already-placed symbols `a` and `b` of a word
//! incurs the weight `w(a, v) * w(v, b)`; summing these products over every
//! arrival order gives the building count `B(x)`. Normalizing `B` over words of
//! a fixed length gives the marginal family `P_n`, and this crate decides, on
//! bounded windows and with exact rational arithmetic:
//!
//! - whether `P_n` is a consistent family ([`consistency`]),
//! - whether the resulting stationary process is `k`-dependent ([`dependence`]),
//! - how samples of the process behave ([`process`]),
//! - how the same machinery transfers to shifts of finite type through their
//!   de Bruijn graphs ([`sft`]).
//!
//! Graph structure and the predicates used throughout live in [`graph`];
//! building counts, both recurrences and the brute-force oracle live in
//! [`buildings`], with symbolic evaluation in [`poly`].
//!
//! ```
//! use insertion_kit::graph::WeightedGraph;
//! use insertion_kit::consistency::check_property_c;
//! use insertion_kit::rational::int;
//!
//! let k3 = WeightedGraph::complete(3, int(1)).unwrap();
//! let report = check_property_c(&k3, 4).unwrap();
//! let constants = report.constants.unwrap();
//! assert_eq!(constants[0], int(4));
//! assert_eq!(constants[1], int(5));
//! ```

pub mod buildings;
pub mod cli;
pub mod consistency;
pub mod dependence;
pub mod error;
pub mod graph;
pub mod poly;
pub mod process;
pub mod rational;
pub mod sft;
pub mod symmetry;
pub mod word;

pub use error::{Error, Result};
pub use graph::{VertexId, WeightedGraph};
pub use rational::Rational;
pub use word::{BuildOrder, Word};
