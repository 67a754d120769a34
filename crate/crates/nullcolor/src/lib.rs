//! Certifying group/field colorability of graphs via the polynomial
//! method: non-vanishing monomial certificates for planar and
//! K5-minor-free graphs, list-coloring extraction through the
//! Combinatorial Nullstellensatz, and Alon-Furedi counting bounds,
//! cross-checked against brute-force oracles at desk scale.

pub mod algebra;
pub mod bounds;
pub mod certify;
pub mod coloring;
pub mod corpus;
pub mod graphs;
pub mod polys;
