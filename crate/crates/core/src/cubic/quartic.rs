use num::complex::Complex64;
use serde::Serialize;

use super::surface::triple;
use crate::params::Theta;
use crate::roots::{poly_roots, RootCluster};

/// The quartic in `x_i` whose roots are the `x_i`-coordinates of the fixed points of `g_j^2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quartic {
    pub j: usize,
    /// Highest degree first; the leading coefficient is 1.
    pub coeffs: [Complex64; 5],
    pub roots: Vec<RootCluster>,
}

pub fn quartic_coeffs(j: usize, th: &Theta) -> [Complex64; 5] {
    let (i, j, k) = triple(j);
    let (ti, tj, tk, t4) = (th.th(i), th.th(j), th.th(k), th.t[3]);
    [Complex64::new(1.0, 0.0), -ti, t4 - 4.0, 4.0 * ti - tj * tk, tj * tj + tk * tk - 4.0 * t4]
}

pub fn quartic(j: usize, th: &Theta) -> Quartic {
    let coeffs = quartic_coeffs(j, th);
    let mut low = coeffs;
    low.reverse();
    Quartic { j, coeffs, roots: poly_roots(&low) }
}

/// The fixed point of `g_j^2` over a given `x_i` (requires `x_i^2 != 4`).
pub fn fixed_point_over(j: usize, xi: Complex64, th: &Theta) -> [Complex64; 3] {
    let (i, j, k) = triple(j);
    let d = 4.0 - xi * xi;
    let mut x = [Complex64::new(0.0, 0.0); 3];
    x[i - 1] = xi;
    x[j - 1] = (2.0 * th.th(j) - xi * th.th(k)) / d;
    x[k - 1] = (2.0 * th.th(k) - xi * th.th(j)) / d;
    x
}
