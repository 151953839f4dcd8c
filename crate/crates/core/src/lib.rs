//! Finite-branch solution structure of the sixth Painleve equation near `z = 0`.

pub mod cubic;
pub mod error;
pub mod families;
pub mod flow;
pub mod params;
pub mod puiseux;
pub mod roots;
pub mod scalar;

pub use error::{Error, Result};
pub use cubic::SurfacePoint;
pub use params::{BVec, Kappa, Theta};
pub use puiseux::{DiffSum, Expr, PuiseuxSeries};
pub use scalar::{Coeff, CRat};
