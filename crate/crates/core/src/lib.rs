//! Hypergraph partitioning through balanced vertex separators on the net
//! intersection graph (NIG).
//!
//! The NIG has one vertex per net and joins two nets whenever they share a
//! pin. A vertex separator of the NIG is a net separator of the hypergraph:
//! once the separator nets are set aside, the remaining nets of every
//! hypergraph vertex sit on a single side. Recursive bisection of the NIG
//! then yields a K-way hypergraph partition, with separator nets either
//! removed (cutnet metric) or split into both halves (connectivity-1
//! metric).
//!
//! ```
//! use nigpart::hgraph::{evaluate, Hypergraph};
//! use nigpart::rbpart::{partition, Metric, RbConfig};
//!
//! let h = Hypergraph::from_nets(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
//! let cfg = RbConfig { k: 2, metric: Metric::Connectivity, ..Default::default() };
//! let out = partition(&h, &cfg).unwrap();
//! assert_eq!(evaluate(&h, &out.partition).unwrap().connectivity_minus1_cost, 1);
//! ```

pub mod cli;
pub mod error;
pub mod gen;
pub mod gpvs;
pub mod hgraph;
pub mod ingest;
pub mod nig;
pub mod oracle;
pub mod rbpart;

pub use error::{Error, Result};
