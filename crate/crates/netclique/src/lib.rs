//! Collinearity graphs of Desarguesian nets over finite fields.
//!
//! The crate builds the Paley, Peisert and general m-direction net graphs
//! on GF(r^2), enumerates their maximal cliques, classifies the cliques
//! into orbits under the known automorphism groups, and mechanically
//! verifies the clique constructions and size laws that hold in these
//! graphs. The `netclique` binary exposes all of it on the command line.

pub mod autgroup;
pub mod bits;
pub mod cliques;
pub mod edgelist;
pub mod gf;
pub mod netgraph;

pub use gf::{Fe, FieldSpec, GfError};
pub use netgraph::{Graph, GraphError, NetSpec, SrgParams};
