//! One-dimensional interpolation over strictly increasing knots.
//!
//! Two schemes are provided: piecewise linear and a natural cubic spline
//! (zero second derivative at both ends). Evaluation at a knot returns the
//! knot value exactly; queries outside the knot range clamp to the end
//! segments.

/// Piecewise-linear interpolation through `(xs[i], ys[i])`.
///
/// `xs` must be strictly increasing and hold at least one knot.
pub fn linear(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(!xs.is_empty());
    if xs.len() == 1 {
        return ys[0];
    }
    let seg = locate(xs, x);
    if x == xs[seg] {
        return ys[seg];
    }
    if x == xs[seg + 1] {
        return ys[seg + 1];
    }
    let t = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
    ys[seg] + t * (ys[seg + 1] - ys[seg])
}

/// Natural cubic spline through a fixed set of knots.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots; zero at both ends.
    second: Vec<f64>,
}

impl CubicSpline {
    /// Fits the spline. `xs` must be strictly increasing with at least two
    /// knots.
    pub fn new(xs: &[f64], ys: &[f64]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        assert!(n >= 2, "spline needs at least two knots");
        debug_assert!(xs.windows(2).all(|w| w[0] < w[1]));

        // Tridiagonal system for the interior second derivatives:
        //   h[i-1]*m[i-1] + 2*(h[i-1]+h[i])*m[i] + h[i]*m[i+1] = rhs[i]
        // with natural end conditions m[0] = m[n-1] = 0, solved by the
        // Thomas algorithm.
        let mut second = vec![0.0; n];
        if n > 2 {
            let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
            let m = n - 2;
            let mut diag = vec![0.0; m];
            let mut upper = vec![0.0; m];
            let mut rhs = vec![0.0; m];
            for i in 0..m {
                diag[i] = 2.0 * (h[i] + h[i + 1]);
                upper[i] = h[i + 1];
                rhs[i] = 6.0 * ((ys[i + 2] - ys[i + 1]) / h[i + 1] - (ys[i + 1] - ys[i]) / h[i]);
            }
            // forward sweep (lower diagonal of row i is h[i])
            for i in 1..m {
                let w = h[i] / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            // back substitution
            second[m] = rhs[m - 1] / diag[m - 1];
            for i in (0..m - 1).rev() {
                second[i + 1] = (rhs[i] - upper[i] * second[i + 2]) / diag[i];
            }
        }

        Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            second,
        }
    }

    /// Evaluates the spline; exact at knots.
    pub fn eval(&self, x: f64) -> f64 {
        let seg = locate(&self.xs, x);
        if x == self.xs[seg] {
            return self.ys[seg];
        }
        if x == self.xs[seg + 1] {
            return self.ys[seg + 1];
        }
        let h = self.xs[seg + 1] - self.xs[seg];
        let a = (self.xs[seg + 1] - x) / h;
        let b = (x - self.xs[seg]) / h;
        a * self.ys[seg]
            + b * self.ys[seg + 1]
            + ((a * a * a - a) * self.second[seg] + (b * b * b - b) * self.second[seg + 1])
                * (h * h)
                / 6.0
    }
}

/// Index of the segment containing `x`: the largest `i` with `xs[i] <= x`,
/// clamped to `[0, n-2]`.
fn locate(xs: &[f64], x: f64) -> usize {
    let n = xs.len();
    match xs.partition_point(|&knot| knot <= x) {
        0 => 0,
        p => (p - 1).min(n - 2),
    }
}
