//! Command line and HTTP front end for plan explanation dialogues.

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod config;
pub mod http;
pub mod load;
pub mod pddl;
pub mod store;
pub mod wire;
