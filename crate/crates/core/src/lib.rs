//! Approximate maximum-weight b-matching under monotone submodular
//! objectives.
//!
//! Four algorithms share one tie-breaking rule (larger gain first, then
//! smaller edge id), so they are deterministic and comparable:
//! [`matching::greedy`], [`matching::lazy_greedy`],
//! [`matching::local_lazy_greedy`] and, with the `parallel` feature,
//! [`parallel::parallel_local_lazy_greedy`]. The [`loadbalance`] module
//! applies them to task-to-machine assignment.

pub mod error;
pub mod graph;
pub mod loadbalance;
pub mod matching;
pub mod objective;
#[cfg(feature = "parallel")]
pub mod parallel;
pub mod report;
pub mod run;

pub use error::{Error, Result};

#[cfg(not(target_arch = "wasm32"))]
pub(crate) use std::time::Instant;
#[cfg(target_arch = "wasm32")]
pub(crate) use web_time::Instant;
