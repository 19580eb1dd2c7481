//! Orbit categories of finite permutation groups, phase diagrams of finite
//! transformation groupoids, and the invariants attached to them: degeneracy
//! quivers of linear representations, Milnor numbers and Euler gradings of
//! simple singularities, and Cramér rate functions.

pub mod category;
pub mod fixtures;
pub mod gspace;
pub mod io;
pub mod large_dev;
pub mod linear_rep;
pub mod matrix;
pub mod orbit_category;
pub mod perm_group;
pub mod phase_diagram;
pub mod singularity;

pub use category::{find_isomorphism, CategoryError, FiniteCategory, Functor};
pub use gspace::{GComplex, Pi0FixPresheaf};
pub use large_dev::{DiscreteObservable, RateError, RateProfile};
pub use linear_rep::{LinearAction, QuiverOutput};
pub use matrix::{Matrix, Rational};
pub use orbit_category::OrbitCategory;
pub use perm_group::{FiniteGroup, Permutation, Subgroup, SubgroupLattice};
pub use phase_diagram::{PhaseCategory, StratifiedComplex};
pub use singularity::{AdjacencyCorpus, PolyGerm, QuasihomogeneousGerm, SingularityError};
