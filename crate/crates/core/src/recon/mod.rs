//! Exact algebraic data from high-precision numerics.

mod enumerate;
mod lattice;
mod lll;
mod minpoly;
mod orbit;
mod roots;

pub use enumerate::{shortest_row_vector, shortest_vector_candidate};
pub use lattice::{build_minpoly_lattice, build_relation_lattice, LatticeProblem};
pub use lll::{lll, Reduced};
pub use minpoly::{default_kprime, find_minpoly, find_relation, MinPolyResult, Relation, HERMITE_FACTOR};
pub use orbit::{reconstruct_orbits, OrbitStatus, ReconOptions, TorsionOrbit};
pub use roots::{select_root_numeric, RootMatch, DEFAULT_GAP_RATIO};
