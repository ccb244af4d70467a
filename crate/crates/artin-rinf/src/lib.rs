//! Machinery for deciding which known R-infinity theorems apply to an
//! Artin group given by its labeled defining graph, together with the
//! finite computations backing them: Coxeter group enumeration, twisted
//! conjugacy, Garside normal forms, twistless hierarchies, and the link
//! girth of dihedral vertices in the Deligne complex.

pub mod classify;
pub mod corpus;
pub mod coxeter;
pub mod deligne;
pub mod garside;
pub mod graph;
pub mod hierarchy;
pub mod torus;
pub mod verdict;

pub use graph::{parse_graph, Convention, GraphAutomorphism, GraphError, Label, LabeledGraph};

#[cfg(test)]
use corpus as testgraphs;
