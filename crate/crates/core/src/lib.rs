//! Exact recomputation and audit engine for the invariants of generalized
//! Burniat surfaces and Sicilian surfaces.
//!
//! The crate rebuilds, from the group data alone, every finite computation
//! behind the classification tables of these surfaces: affine involution
//! groups on products of elliptic curves, their characters on forms and theta
//! sections, Lefschetz traces on variable cohomology, Hodge splittings of the
//! quotients, and the hypothesis checks of the finite-dimensionality
//! criterion. Published table values are carried separately as untrusted
//! baselines so every table cell can be diffed against recomputation with
//! machine-checked evidence.

pub mod affine;
pub mod baseline;
pub mod characters;
pub mod checker;
pub mod forms;
pub mod hodge;
pub mod scenario;
pub mod sign;
pub mod tables;
pub mod theta;
pub mod theta_num;

pub use sign::Sign;
