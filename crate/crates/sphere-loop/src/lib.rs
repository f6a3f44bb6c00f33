//! Left loop structure on the unit sphere of `R^(n+1)`.

pub mod error;
pub mod geometry;
pub mod hilbert;
pub mod laws;
pub mod semidirect;
pub mod sphere;

pub use error::{Error, Result};
pub use hilbert::{HVector, Operator, Tolerances};
pub use sphere::{PoleClass, SpherePoint};
