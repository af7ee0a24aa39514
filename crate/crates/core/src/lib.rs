//! Asynchronous elementary cellular automata on circular graphs.
//!
//! Covers the 256 elementary rules and their symmetries, sequential
//! dynamical system maps and periodic states, update-order independence,
//! dynamics groups with exact orders via stabilizer chains, and counting
//! of periodic states by recurrence.

#![no_std]

extern crate alloc;

pub mod chain;
pub mod classify;
pub mod dynamics;
pub mod enumeration;
mod error;
pub mod order;
pub mod perm;
pub mod rule;
pub mod sds;
pub mod state;

pub use chain::PermGroup;
pub use classify::{GroupIdentification, GroupKind};
pub use dynamics::{CoxeterData, Dynamics};
pub use enumeration::{NSet, PeriodicSet};
pub use error::Error;
pub use perm::{OrbitPartition, Permutation};
pub use rule::{Rule, Symbol, Tag};
pub use sds::{SdsMap, UpdateOrder};
pub use state::{AvoidSpec, State, StateSet, Word};
