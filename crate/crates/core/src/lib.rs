//! Exact monomial ideal arithmetic, cover ideals of graphs, associated-prime
//! membership tests, and the coloring machinery needed to study the
//! persistence property for cover ideals of the graphs `H_{p,q}`.

pub mod assoc;
pub mod bitset;
pub mod cli;
pub mod coloring;
pub mod cover;
pub mod error;
pub mod graph;
pub mod monomial;
pub mod reproduce;

pub use assoc::{AssReport, Method, PersistenceReport};
pub use cover::PrimeSupport;
pub use error::{Error, Result};
pub use graph::{Graph, GridLabel, VertexCover};
pub use monomial::{Monomial, MonomialIdeal};
