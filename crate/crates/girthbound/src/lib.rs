//! File formats, the multi-threaded search driver, seeded generators and the
//! command-line interface on top of [`girthbound_core`].

pub mod cli;
pub mod driver;
pub mod format;
pub mod random;

pub use girthbound_core as core;
