//! Rainbow triangles and rainbow cliques in edge-colored graphs.
//!
//! * [`graph`]: edge-colored and oriented graphs with the degree statistics
//!   `d`, `d^c` and `d^s`.
//! * [`io`]: edge-list, JSON, DOT and digraph formats.
//! * [`rainbow`]: rainbow triangle and `K_k` detection plus the lower bounds
//!   in terms of `m + c` and the color-degree sum.
//! * [`constructions`]: Turán graphs, `G_k`, `H_{n,k-2}` and related examples.
//! * [`characterize`]: recognizers (with certificates) for the extremal classes.
//! * [`analysis`]: a summary report of one graph against the bounds.
//! * [`iso`]: isomorphism of colored graphs up to color renaming.
//! * [`transform`]: the associated colored graph of an oriented graph and the
//!   reverse orientation procedure.
//! * [`verify`]: exhaustive and sampled checks of the extremal bounds.

pub mod analysis;
pub mod characterize;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod rainbow;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{ColorId, DegreeProfile, EdgeColoredGraph, GraphStats, OrientedGraph};
