//! Light approximate shortest-path trees (LASTs), minimum-weight shortest-path
//! trees, and the instance generators and brute-force oracles used to check them.

pub mod cli;
pub mod error;
pub mod graph;
pub mod instances;
pub mod last;
pub mod min_spt;
pub mod oracle;
pub mod output;
pub mod parallel;
pub mod trees;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{dijkstra, parse_graph, Edge, Graph, GraphFile};
pub use last::{evaluate, find_last, find_last_traced, LastRun, TreeMetrics};
pub use min_spt::{min_weight_spt, Branching};
pub use parallel::{parallel_last, ParallelRun};
pub use trees::{minimum_spanning_tree, shortest_path_tree, RootedTree};
pub use weight::{Rational, Scalar, Weight};
