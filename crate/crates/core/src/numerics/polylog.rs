//! Dilogarithm and trilogarithm on [0, 1].
//!
//! Small arguments use the defining power series; arguments near 1 use the
//! expansion in μ = ln z, Li_n(e^μ) = Σ_{k≠n−1} ζ(n−k) μ^k/k!
//! + μ^{n−1}/(n−1)!·(H_{n−1} − ln(−μ)), convergent for |μ| < 2π.

use crate::error::{Error, Result};
use crate::Real;

/// ζ(−m) for m = 0..=19.
const ZETA_NEGATIVE: [f64; 20] = [
    -0.5,
    -1.0 / 12.0,
    0.0,
    1.0 / 120.0,
    0.0,
    -1.0 / 252.0,
    0.0,
    1.0 / 240.0,
    0.0,
    -1.0 / 132.0,
    0.0,
    691.0 / 32760.0,
    0.0,
    -1.0 / 12.0,
    0.0,
    3617.0 / 8160.0,
    0.0,
    -43867.0 / 14364.0,
    0.0,
    174611.0 / 6600.0,
];

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
const ZETA3: f64 = 1.202_056_903_159_594_2;

fn zeta_int<T: Real>(s: i32) -> T {
    match s {
        3 => T::lit(ZETA3),
        2 => T::lit(ZETA2),
        s if s <= 0 => T::lit(ZETA_NEGATIVE[(-s) as usize]),
        _ => unreachable!("ζ(1) does not appear in the expansion"),
    }
}

fn series<T: Real>(order: i32, z: T) -> T {
    let mut sum = T::zero();
    let mut power = z;
    for k in 1..200 {
        let kf = T::from_count(k);
        let term = power / kf.powi(order);
        sum = sum + term;
        if term.abs() <= T::epsilon() * T::lit(0.1) * sum.abs() {
            break;
        }
        power = power * z;
    }
    sum
}

fn log_series<T: Real>(order: i32, mu: T) -> T {
    let harmonic = (1..order).fold(T::zero(), |acc, k| acc + T::one() / T::from_count(k as usize));
    let mut sum = T::zero();
    let mut power = T::one();
    let mut factorial = T::one();
    for k in 0..=(order + 19) {
        if k > 0 {
            power = power * mu;
            factorial = factorial * T::from_count(k as usize);
        }
        let term = if k == order - 1 {
            if mu.is_zero() {
                T::zero()
            } else {
                power / factorial * (harmonic - (-mu).ln())
            }
        } else {
            zeta_int::<T>(order - k) * power / factorial
        };
        sum = sum + term;
    }
    sum
}

/// Li_n(z) for n ∈ {2, 3} and z ∈ [0, 1], accurate to ~10⁻¹⁵ in `f64`.
pub fn polylog<T: Real>(order: u32, z: T) -> Result<T> {
    if order != 2 && order != 3 {
        return Err(Error::Domain(format!("polylog order {order} not supported (2 or 3)")));
    }
    if !(z >= T::zero() && z <= T::one()) {
        return Err(Error::Domain(format!("polylog argument {z} outside [0, 1]")));
    }
    let n = order as i32;
    if z <= T::lit(0.25) {
        Ok(series(n, z))
    } else {
        Ok(log_series(n, z.ln()))
    }
}

/// Li_n(e^{−x}) for x ≥ 0, using μ = −x directly to keep full relative
/// accuracy at small x.
pub fn polylog_exp_neg<T: Real>(order: u32, x: T) -> Result<T> {
    if order != 2 && order != 3 {
        return Err(Error::Domain(format!("polylog order {order} not supported (2 or 3)")));
    }
    if !(x >= T::zero()) {
        return Err(Error::Domain(format!("negative exponent {x}")));
    }
    if x < T::lit(1.386) {
        Ok(log_series(order as i32, -x))
    } else {
        Ok(series(order as i32, (-x).exp()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!((polylog(3, 1.0f64).unwrap() - ZETA3).abs() < 1e-15);
        assert!((polylog(2, 1.0f64).unwrap() - ZETA2).abs() < 1e-15);
        assert_eq!(polylog(2, 0.0f64).unwrap(), 0.0);
        assert_eq!(polylog(3, 0.0f64).unwrap(), 0.0);
        let ln2 = std::f64::consts::LN_2;
        let li2_half = ZETA2 / 2.0 - ln2 * ln2 / 2.0;
        assert!((polylog(2, 0.5f64).unwrap() - li2_half).abs() < 1e-15);
        let li3_half = 7.0 / 8.0 * ZETA3 - ZETA2 * ln2 / 2.0 + ln2.powi(3) / 6.0;
        assert!((polylog(3, 0.5f64).unwrap() - li3_half).abs() < 1e-15);
    }

    #[test]
    fn reflection_identity() {
        for i in 1..40 {
            let x = i as f64 / 40.0;
            let lhs = polylog(2, x).unwrap() + polylog(2, 1.0 - x).unwrap();
            let rhs = ZETA2 - x.ln() * (1.0 - x).ln();
            assert!((lhs - rhs).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        for order in [2, 3] {
            let z = 0.25f64;
            let direct = series::<f64>(order, z);
            let logs = log_series::<f64>(order, z.ln());
            assert!((direct - logs).abs() < 1e-15);
        }
    }

    #[test]
    fn exponential_argument() {
        for x in [1e-6f64, 0.01, 0.5, 1.3, 1.5, 4.0] {
            for order in [2, 3] {
                let a = polylog_exp_neg(order, x).unwrap();
                let b = polylog(order, (-x).exp()).unwrap();
                assert!((a - b).abs() < 1e-13, "x = {x}");
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(polylog(2, 1.5f64).is_err());
        assert!(polylog(4, 0.5f64).is_err());
    }
}
