//! Quantum steering ellipsoids for two-qubit states.
//!
//! Given a two-qubit density matrix, the set of Bloch vectors one party can
//! steer the other party's qubit to (over all local measurements) is an
//! ellipsoid inside the Bloch ball. This crate computes both parties'
//! ellipsoids, enumerates the points where they touch the Bloch sphere
//! (pure steered states), and turns tangency counts into steering
//! certificates, alongside standard entanglement and CHSH diagnostics.

pub mod assemblage;
pub mod criteria;
pub mod ellipsoid;
pub mod error;
pub mod families;
pub mod io;
pub mod proofgeom;
pub mod linalg;
pub mod sampling;
pub mod states;
pub mod tangency;
pub mod tol;

pub use error::{Error, Result};
