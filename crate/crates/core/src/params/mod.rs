//! Parameter spaces, the kappa -> b -> a -> theta chain, the affine Weyl
//! group action and the stratification by Dynkin type.

mod kappa;
mod rh;
mod strata;
mod weyl;

pub use kappa::{parse_rational, rat_to_c, Kappa, CONSTRAINT_TOL};
pub use rh::{b_vec, discriminant, discriminant_factors, discriminant_vanishes, rh_chain, theta_from_a, BVec, RhImage, Theta};
pub use strata::{classify_stratum, reduce_to_alcove, Stratum, StratumLabel};
pub use weyl::{
    act_c64, act_rat, check_unambiguous, cyc_rest, inverse, next3, theta_signs, wall_pattern, weyl_act, Gen, WallPattern, WeylWord,
    WALL_TOL,
};
