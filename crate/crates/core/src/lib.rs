//! Core library for desk-scale simulation and optimization of integrated
//! satellite-MEC networks.
//!
//! The crate models a network of machine-type devices (MTDs), aerial access
//! platforms, satellites, gateways and a cloud, all of which may carry MEC
//! servers. On top of that model it provides:
//!
//! - canonical topology builders for the three minimal integrating
//!   structures and their composition ([`structures`]),
//! - large-scale channel gains via radio maps and Shannon link rates
//!   ([`channel`]),
//! - the end-to-end latency model of a single offloading task ([`latency`]),
//! - satellite/UAV geometry: visibility windows, UAV placement, propagation
//!   delays ([`geometry`]),
//! - medium-timescale on-demand orchestration of server/link activations and
//!   UAV deployment ([`orchestration`]),
//! - process-oriented joint power-allocation and offloading optimization
//!   with baselines and Monte Carlo evaluation ([`optimizer`]).
//!
//! Everything here is pure computation on immutable values; file formats and
//! the command-line front end live in the companion `satmec-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod channel;
pub mod geometry;
pub mod latency;
mod math;
pub mod model;
pub mod netenv;
pub mod optimizer;
pub mod orchestration;
pub mod rng;
pub mod structures;

pub use model::{Link, LinkKind, MecServer, Node, NodeId, NodeKind, Task, Topology};

/// Speed of light in vacuum, in meters per second.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Latency charged to a task whose chosen route carries no signal
/// (zero transmit power or zero rate), in seconds. Kept large but finite so
/// plan objectives stay comparable.
pub const NO_OFFLOAD_SENTINEL: f64 = 1.0e6;
