//! Matsubara sums with half-weighted zero term, compensated accumulation and
//! a geometric tail bound.

use rayon::prelude::*;

use crate::Real;

/// Truncation control for Matsubara sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSpec<T> {
    pub rel_tol: T,
    pub max_terms: usize,
}

impl<T: Real> Default for SumSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10).max(T::tolerance_floor()),
            max_terms: 100_000,
        }
    }
}

impl<T: Real> SumSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }
}

/// Result of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult<T> {
    pub value: T,
    /// Bound on the neglected tail.
    pub tail: T,
    pub terms: usize,
    pub converged: bool,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

struct TailTracker<T> {
    acc: CompensatedSum<T>,
    previous: Option<T>,
    quiet: usize,
}

impl<T: Real> TailTracker<T> {
    fn new() -> Self {
        Self {
            acc: CompensatedSum::new(),
            previous: None,
            quiet: 0,
        }
    }

    /// Adds a term and reports whether the tail bound is below tolerance.
    fn push(&mut self, term: T, rel_tol: T) -> (bool, T) {
        self.acc.add(term);
        let total = self.acc.value().abs();
        let magnitude = term.abs();
        let tail = match self.previous {
            _ if magnitude.is_zero() => T::zero(),
            Some(prev) if prev.abs() > magnitude => {
                let ratio = magnitude / prev.abs();
                magnitude * ratio / (T::one() - ratio)
            }
            Some(_) => T::infinity(),
            None => T::infinity(),
        };
        self.previous = Some(term);
        let small = tail <= rel_tol * total || (magnitude.is_zero() && total.is_zero());
        if small {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        (self.quiet >= 2, if tail.is_finite() { tail } else { magnitude })
    }
}

/// Σ'_{l≥0} term(l), with the l = 0 term weighted by ½.
///
/// Summation stops once the geometric tail bound estimated from the last
/// two terms stays below `rel_tol·|partial sum|` for two consecutive terms.
pub fn matsubara_sum<T: Real, F: FnMut(usize) -> T>(mut term: F, spec: &SumSpec<T>) -> SumResult<T> {
    let mut tracker = TailTracker::new();
    let mut tail = T::infinity();
    for l in 0..spec.max_terms {
        let mut t = term(l);
        if l == 0 {
            t = t * T::lit(0.5);
        }
        let (done, bound) = tracker.push(t, spec.rel_tol);
        tail = bound;
        if done && l >= 2 {
            return SumResult {
                value: tracker.acc.value(),
                tail,
                terms: l + 1,
                converged: true,
            };
        }
    }
    SumResult {
        value: tracker.acc.value(),
        tail,
        terms: spec.max_terms,
        converged: false,
    }
}

/// Parallel variant of [`matsubara_sum`]: terms are evaluated concurrently in
/// fixed-size blocks and accumulated in index order, so the result is
/// identical to the sequential sum.
pub fn matsubara_sum_par<T, F>(term: F, spec: &SumSpec<T>) -> SumResult<T>
where
    T: Real,
    F: Fn(usize) -> T + Sync,
{
    let [r] = matsubara_sum_par_n(|l| [term(l)], spec);
    r
}

/// Several Matsubara sums sharing one term evaluation; summation stops when
/// every component has met the tail criterion.
pub fn matsubara_sum_par_n<T, F, const N: usize>(term: F, spec: &SumSpec<T>) -> [SumResult<T>; N]
where
    T: Real,
    F: Fn(usize) -> [T; N] + Sync,
{
    const BLOCK: usize = 64;
    let mut trackers: [TailTracker<T>; N] = std::array::from_fn(|_| TailTracker::new());
    let mut tails = [T::infinity(); N];
    let finish = |trackers: &[TailTracker<T>; N], tails: &[T; N], terms: usize, converged: bool| {
        std::array::from_fn(|c| SumResult {
            value: trackers[c].acc.value(),
            tail: tails[c],
            terms,
            converged,
        })
    };
    let mut start = 0usize;
    while start < spec.max_terms {
        let end = (start + BLOCK).min(spec.max_terms);
        let values: Vec<[T; N]> = (start..end).into_par_iter().map(&term).collect();
        for (offset, mut t) in values.into_iter().enumerate() {
            let l = start + offset;
            if l == 0 {
                t = t.map(|v| v * T::lit(0.5));
            }
            let mut all_done = true;
            for c in 0..N {
                let (done, bound) = trackers[c].push(t[c], spec.rel_tol);
                tails[c] = bound;
                all_done &= done;
            }
            if all_done && l >= 2 {
                return finish(&trackers, &tails, l + 1, true);
            }
        }
        start = end;
    }
    finish(&trackers, &tails, spec.max_terms, false)
}
