//! A laboratory for alternating-path connectivity in random graphs: seeded
//! binomial generators and edge colorings, bipartite matching kernels,
//! constructive path systems for the dense and sparse regimes, exact
//! small-scale oracles, spectral pseudorandomness checks, and a
//! reproducible CSV experiment harness.

pub mod colored;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pathsys;
pub mod regime;
pub mod report;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use rng::Seed;
