use super::NumericsError;

/// Settings for [`find_root_monotone`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Stop once the bracket is narrower than this.
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Find `x` in `[lo, hi]` with `f(x) = 0` for a nondecreasing `f`.
///
/// Brent's method (inverse quadratic interpolation and secant steps,
/// falling back to bisection) on a sign-change bracket. Requires
/// `f(lo) <= 0 <= f(hi)`. The result is deterministic for a given `f`.
pub fn find_root_monotone<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    cfg: &RootConfig,
) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    if !(cfg.abs_tol > 0.0) {
        return Err(NumericsError::Config("abs_tol must be positive"));
    }
    if cfg.max_iter == 0 {
        return Err(NumericsError::Config("max_iter must be at least 1"));
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() {
        return Err(NumericsError::NonFinite { x: a });
    }
    if fb.is_nan() {
        return Err(NumericsError::NonFinite { x: b });
    }
    if fa > 0.0 || fb < 0.0 || lo > hi {
        return Err(NumericsError::NotBracketed {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..cfg.max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * cfg.abs_tol;
        let half = 0.5 * (c - b);
        if half.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * half * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
        if fb.is_nan() {
            return Err(NumericsError::NonFinite { x: b });
        }
    }
    Err(NumericsError::RootNotConverged {
        iterations: cfg.max_iter,
        width: (c - b).abs(),
    })
}
