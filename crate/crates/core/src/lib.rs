//! Twinless strong connectivity for directed and mixed multigraphs.
//!
//! The central operation is [`two_etscc`], the partition of a digraph into
//! 2-edge twinless strongly connected components, computed in near-linear
//! time from auxiliary graphs built over dominator trees. Through the
//! reductions in [`orient`] the same machinery yields the edge-resilient
//! strongly orientable blocks of a mixed graph.

pub mod auxgraph;
pub mod dominators;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod mveb;
pub mod oracles;
pub mod orient;
pub mod partition;
pub mod pipeline;
pub mod spqr;
pub mod strong;
pub mod uf;
pub mod undirected;

pub use dominators::{dominator_tree, flow_bridges, strong_bridges, BridgeDecomposition, DomTree};
pub use error::{Error, Result};
pub use graph::{underlying, DiGraph, EdgeSet, FailureSet, MixedGraph, UGraph, UGraphView};
pub use mveb::marked_veb;
pub use orient::{edge_resilient_blocks, edge_resilient_blocks_for, strongly_orientable_blocks};
pub use partition::Partition;
pub use pipeline::{baseline_2etscc, two_escc, two_etscc};
pub use strong::{scc, tscc, twinless_strong_bridges, SccResult};
pub use undirected::{biconnected, bridges_2ecc, three_ecc_cactus, BlockForest, Cactus};
