//! File formats and command-line driver for reaction network realizations:
//! JSON network documents, polynomial ODE text, and Graphviz export.

pub mod app;
pub mod document;
pub mod dot;
pub mod ode;

pub use app::cli_main;
pub use document::{parse_network, serialize_network, DocumentError, NetworkDocument};
pub use dot::export_dot;
pub use ode::{parse_ode, parse_ode_exact, OdeError};
