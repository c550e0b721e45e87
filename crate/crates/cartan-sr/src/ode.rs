//! Dormand–Prince 5(4) with adaptive steps and the fourth-order continuous
//! extension.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    pub h_min: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-11,
            atol: 1e-11,
            max_steps: 500_000,
            h_min: 1e-14,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// One accepted step with its interpolation coefficients.
#[derive(Debug, Clone)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    rc: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    pub fn eval(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let mut y = [0.0; N];
        for (i, yi) in y.iter_mut().enumerate() {
            let [r1, r2, r3, r4, r5] = [
                self.rc[0][i],
                self.rc[1][i],
                self.rc[2][i],
                self.rc[3][i],
                self.rc[4][i],
            ];
            *yi = r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
        }
        y
    }

    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn start(&self) -> [f64; N] {
        self.rc[0]
    }

    pub fn end(&self) -> [f64; N] {
        let mut y = self.rc[0];
        for (yi, d) in y.iter_mut().zip(self.rc[1]) {
            *yi += d;
        }
        y
    }
}

/// A trajectory on `[t0, t1]` that can be evaluated at any interior time.
#[derive(Debug, Clone)]
pub struct DenseSolution<const N: usize> {
    pub steps: Vec<DenseStep<N>>,
    pub t0: f64,
    pub y0: [f64; N],
    pub t_end: f64,
    pub y_end: [f64; N],
}

impl<const N: usize> DenseSolution<N> {
    pub fn eval(&self, t: f64) -> [f64; N] {
        if self.steps.is_empty() {
            return self.y0;
        }
        let idx = self
            .steps
            .partition_point(|s| s.t1() < t)
            .min(self.steps.len() - 1);
        self.steps[idx].eval(t)
    }
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        let hc = h * c;
        for i in 0..N {
            out[i] += hc * k[i];
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 ≥ t0`. With `dense` set, every
/// accepted step is stored.
pub fn integrate<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &OdeOptions,
    dense: bool,
) -> Result<DenseSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let mut sol = DenseSolution {
        steps: Vec::new(),
        t0,
        y0,
        t_end: t0,
        y_end: y0,
    };
    if !(t1 >= t0) {
        return Err(Error::Integrator(format!("backward interval [{t0}, {t1}]")));
    }
    if t1 == t0 {
        return Ok(sol);
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let scale = |y: &[f64; N], i: usize| opts.atol + opts.rtol * y[i].abs();
    let norm0 = (0..N)
        .map(|i| (y[i] / scale(&y, i)).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm1 = (0..N)
        .map(|i| (k1[i] / scale(&y, i)).powi(2))
        .sum::<f64>()
        .sqrt();
    let mut h = if norm0 < 1e-5 || norm1 < 1e-5 {
        1e-6
    } else {
        0.01 * norm0 / norm1
    };
    h = h.min(t1 - t0).max(opts.h_min);

    for _ in 0..opts.max_steps {
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(
            t + C4 * h,
            &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = f(
            t + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(t + h, &y_new);

        let mut err = 0.0;
        for i in 0..N {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            err += (e / sc).powi(2);
        }
        err = (err / N as f64).sqrt();
        if !err.is_finite() {
            return Err(Error::Integrator(format!("non-finite state at t = {t}")));
        }

        if err <= 1.0 {
            if dense {
                let mut rc = [[0.0; N]; 5];
                for i in 0..N {
                    let dy = y_new[i] - y[i];
                    let bspl = h * k1[i] - dy;
                    rc[0][i] = y[i];
                    rc[1][i] = dy;
                    rc[2][i] = bspl;
                    rc[3][i] = dy - h * k7[i] - bspl;
                    rc[4][i] = h
                        * (D1 * k1[i]
                            + D3 * k3[i]
                            + D4 * k4[i]
                            + D5 * k5[i]
                            + D6 * k6[i]
                            + D7 * k7[i]);
                }
                sol.steps.push(DenseStep { t0: t, h, rc });
            }
            t = if last { t1 } else { t + h };
            y = y_new;
            k1 = k7;
            if last {
                sol.t_end = t;
                sol.y_end = y;
                return Ok(sol);
            }
        }
        let fac = (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 10.0);
        h *= if err <= 1.0 { fac } else { fac.min(1.0) };
        if h < opts.h_min {
            return Err(Error::Integrator(format!("step size underflow at t = {t}")));
        }
    }
    Err(Error::Integrator("maximum number of steps exceeded".into()))
}

/// Final state only.
pub fn integrate_to<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &OdeOptions,
) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    Ok(integrate(f, t0, y0, t1, opts, false)?.y_end)
}
