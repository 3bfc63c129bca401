//! Planar paired-egress switching networks.
//!
//! Three designs (triangular, chevron, brickwork) pair any perfect matching
//! of `N` input photons onto adjacent output lines `(2j, 2j + 1)` using
//! N(N-2)/4 two-by-two switches, the fewest possible for a planar network.
//! The crate builds the networks, routes demands through them, checks the
//! routings by simulation and exhaustive search, and draws the result.

pub mod cli;
pub mod error;
pub mod metrics;
pub mod render;
pub mod routing;
pub mod simulation;
pub mod topology;
pub mod verification;

pub use error::{Error, Result};
pub use routing::{route, PairList, RoutingPlan};
pub use topology::{build_network, DesignKind, Network, SwitchState, SwitchStates};
