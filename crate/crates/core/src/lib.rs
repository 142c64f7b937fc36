//! Exact finite-dimensional models of Hilbert complexes, pairs of complexes and their
//! image cohomology, the intermediate complex construction, simplicial intersection
//! homology with general perversities, and middle-degree pairings and signatures.
//!
//! All arithmetic is over exact rationals. Modules build bottom-up:
//! [`linalg`] → [`complex`] → [`pairs`] → [`intermediate`]; [`strat`] and
//! [`pairing`] supply the geometric instances; [`models`] and [`random`] generate inputs.

pub mod complex;
pub mod intermediate;
pub mod linalg;
pub mod models;
pub mod pairing;
pub mod pairs;
pub mod random;
pub mod strat;
