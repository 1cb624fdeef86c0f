//! Command line, quiver documents, report encoders and parallel drivers
//! around [`kacstab_core`].

pub mod cli;
pub mod document;
pub mod parallel;
pub mod report;

pub use kacstab_core as core;
