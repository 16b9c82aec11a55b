//! Degeneracies in the length spectra of complete metric graphs.
//!
//! Periodic orbits on a graph with rationally independent bond lengths share
//! a length exactly when they traverse every bond the same number of times.
//! This crate counts those degeneracy classes on complete graphs `K_V`
//! ([`classes`]), counts the orbits themselves ([`walks`]), forms the mean
//! degeneracy and its large-`n` estimates ([`asymptotics`]), and materializes
//! the degenerate length spectrum ([`spectrum`]). Every count is exact, and
//! [`oracle`] checks them against brute-force enumeration on small graphs.

pub mod asymptotics;
pub mod classes;
pub mod cli;
pub mod decimal;
pub mod error;
pub mod oracle;
pub mod series;
pub mod spectrum;
pub mod walks;

pub use classes::{count_classes, ClassCountTable, Route};
pub use error::{Error, Result};
pub use oracle::{ClassCode, EnumerationCaps, OrbitRep};
pub use walks::{mean_degeneracy, GraphSpec, OrbitCounting};
