//! Resonances, torsion, and zeta functions of combinatorial Morse-Smale flow data.
//!
//! Given the combinatorial data of a Morse-Smale flow (fixed points, closed
//! orbits with exact rational periods and unitary holonomy phases) together
//! with a flat bundle rank, this crate enumerates the imaginary-axis
//! Pollicott-Ruelle resonances with their per-degree multiplicities and
//! evaluates the associated invariants: Morse-type counting inequalities,
//! Koszul homology, torsion determinants of the finite resonance complexes,
//! dynamical and spectral zeta functions with their meromorphic
//! continuations, zeta-regularized torsions, torsion functions, and the
//! Fuller trace pairing on both its geometric and spectral sides.
//!
//! All combinatorial bookkeeping (spectral line coincidences, phase
//! arithmetic) is exact rational; analytic evaluation is double-precision
//! complex arithmetic with certified truncation bounds where series are cut.

pub mod complexes;
pub mod error;
pub mod flow;
pub mod rational;
pub mod report;
pub mod specfun;
pub mod spectrum;
pub mod trace;
pub mod zeta;

pub use error::{Error, Result};
