//! Root bracketing and bisection for real functions of one variable.

use crate::Real;

/// Bisection on a bracket `[a, b]` with `f(a)·f(b) ≤ 0`; returns the
/// midpoint of the final bracket.
pub fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, mut a: T, mut b: T, tol: T) -> T {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = (a + b) * T::lit(0.5);
        if (b - a).abs() <= tol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm.is_zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) * T::lit(0.5)
}

/// Scans `grid` for sign changes of `f` and refines each by bisection.
pub fn sign_change_roots<T: Real, F: FnMut(T) -> T>(mut f: F, grid: &[T], tol: T) -> Vec<T> {
    let mut roots = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for &x in grid {
        let fx = f(x);
        if let Some((px, pf)) = prev {
            if fx.is_finite() && pf.is_finite() && (fx < T::zero()) != (pf < T::zero()) {
                roots.push(bisect(&mut f, px, x, tol));
            }
        }
        prev = Some((x, fx));
    }
    roots
}
