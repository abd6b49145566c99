//! Explaining STRIPS plans with argument schemes.
//!
//! The crate validates a plan against a grounded planning problem and builds
//! explanation arguments for the plan and each of its elements. Critical
//! questions about those arguments form a Dung argumentation framework that
//! is evaluated under grounded semantics.
//!
//! Everything here is pure and allocation-only, so the crate is `no_std`.
//! Parsing and services live in the `xplain` crate.
//!
//! ```
//! use xplain_core::{planning, sample, schemes};
//!
//! let problem = sample::blocks_world();
//! let plan = sample::solution_plan();
//! assert!(planning::check_solution(&problem, &plan).is_solution);
//!
//! let summary = schemes::build_plan_summary_argument(&problem, &plan).unwrap();
//! let text = schemes::render_argument(&summary);
//! assert!(text.contains("is a solution to the planning problem"));
//! ```
#![cfg_attr(not(any(feature = "std", test)), no_std)]
// Diagnostics carry the states and actions they are about; they are built
// once per failure, off any hot path.
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

extern crate alloc;

pub mod dialogue;
pub mod dung;
pub mod planning;
pub mod sample;
pub mod schemes;
