//! The cubic surface `S(theta)`, the maps `g_j`, and the fixed and periodic
//! point sets of `g_j^2`.

mod exceptional;
mod fixed;
mod lines;
mod periodic;
mod quartic;
mod surface;

pub use exceptional::*;
pub use fixed::*;
pub use lines::*;
pub use periodic::*;
pub use quartic::*;
pub use surface::*;
