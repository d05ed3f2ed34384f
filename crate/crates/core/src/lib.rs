//! Positive model theory over finite structures.

pub mod amalgamation;
pub mod canon;
pub mod cli;
mod engine;
pub mod enumerate;
pub mod error;
pub mod finder;
pub mod formula;
pub mod morphism;
pub mod signature;
pub mod structure;
pub mod text;
pub mod theory;
pub mod zoo;

pub use engine::{cq_holds, MAX_TARGET};
