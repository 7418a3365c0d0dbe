//! Nonsingular quadratic forms `[a1,b1] ⊥ … ⊥ [an,bn]`, diagonal bilinear
//! forms, block isometries, isotropy and Witt reduction.

pub mod bilinear;
pub mod isometry;
pub mod isotropy;
pub mod quadratic;
pub mod relations;
pub mod witt;

pub use bilinear::BilinearForm;
pub use isometry::{IsometryWitness, Matrix};
pub use isotropy::{is_isotropic, AnisotropyCertificate, Budget, Isotropy};
pub use quadratic::{ArfClass, QuadraticForm};
pub use relations::Rule;
pub use witt::{equivalent, is_hyperbolic, split_plane, witt_reduce, Hyperbolicity, WittDecomposition};
