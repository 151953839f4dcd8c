//! Dormand-Prince 5(4) with complex states and the standard continuous
//! extension.

use num::complex::Complex64;

pub type State = [Complex64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// An accepted step: `y(s0 + theta h)` for `theta` in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct DenseStep {
    pub s0: f64,
    pub h: f64,
    r: [State; 5],
}

impl DenseStep {
    pub fn eval(&self, theta: f64) -> State {
        let t1 = 1.0 - theta;
        let mut out = [Complex64::default(); 2];
        for (i, o) in out.iter_mut().enumerate() {
            let r = |j: usize| self.r[j][i];
            *o = r(0) + (r(1) + (r(2) + (r(3) + r(4) * t1) * theta) * t1) * theta;
        }
        out
    }
}

fn axpy(y: &State, h: f64, ks: &[State], w: &[f64]) -> State {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(w) {
        if c != 0.0 {
            out[0] += k[0] * (h * c);
            out[1] += k[1] * (h * c);
        }
    }
    out
}

pub struct StepResult {
    pub y: State,
    /// Error estimate per component.
    pub err: State,
    pub dense: DenseStep,
    /// Derivative at the end (first stage of the next step).
    pub f_end: State,
}

/// One trial step from `(s, y)` with `f(s, y) = f0`.
pub fn step<F>(f: &mut F, s: f64, y: &State, f0: State, h: f64) -> Result<StepResult, crate::Error>
where
    F: FnMut(f64, &State) -> Result<State, crate::Error>,
{
    let mut k: Vec<State> = Vec::with_capacity(7);
    k.push(f0);
    for i in 1..7 {
        let yi = axpy(y, h, &k, &A[i][..i]);
        k.push(f(s + C[i] * h, &yi)?);
    }
    let y1 = axpy(y, h, &k[..6], &A[6][..6]);
    let err = axpy(&[Complex64::default(); 2], h, &k, &E);
    let mut r = [[Complex64::default(); 2]; 5];
    let dy = [y1[0] - y[0], y1[1] - y[1]];
    let dd = axpy(&[Complex64::default(); 2], h, &k, &D);
    for i in 0..2 {
        let bspl = k[0][i] * h - dy[i];
        r[0][i] = y[i];
        r[1][i] = dy[i];
        r[2][i] = bspl;
        r[3][i] = dy[i] - k[6][i] * h - bspl;
        r[4][i] = dd[i];
    }
    Ok(StepResult { y: y1, err, dense: DenseStep { s0: s, h, r }, f_end: k[6] })
}
