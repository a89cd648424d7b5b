//! The piecewise-constant merge operator and its feasibility mathematics.
//!
//! A merge maps the q-coeffs of every side-information frame onto one value
//! through `f(x) = floor((x+c)/W) * W + W/2 - c`. This module provides the
//! exact arithmetic for `f`, the per-block spread statistics that bound the
//! step size, the feasible shift ranges that guarantee identical merging, the
//! closed-form fixed-target parameters, and a coset-coding decoder used as a
//! cross-check oracle.
//!
//! For odd `W` the reconstruction is half-integral, so `f` is carried exactly
//! in halves ([`HalfInt`]); encoder and decoder share this representation
//! bit for bit.

use crate::error::{Error, Result};

/// An exact rational with denominator 2: stores twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn from_int(v: i64) -> Self {
        Self { twice: 2 * v }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 * 0.5
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value when exact; panics on half-integers.
    pub fn to_integer(self) -> i64 {
        assert!(self.is_integer(), "half-integer value {}", self.as_f64());
        self.twice / 2
    }
}

/// Applies the merge operator `f(x) = floor((x+c)/W) * W + W/2 - c` exactly.
pub fn pwc_apply(x: i64, w: i64, c: i64) -> HalfInt {
    debug_assert!(w >= 1, "step size must be >= 1");
    let interval = (x + c).div_euclid(w);
    HalfInt::from_twice(2 * interval * w + w - 2 * c)
}

/// Per-frequency spread statistics of one block across target and SI q-coeffs.
///
/// Index 0 of the input is the target's q-coeffs; the target participates in
/// the min/max spread but not in the target-difference statistic.
#[derive(Debug, Clone)]
pub struct MergeStat {
    pub x_min: Vec<i32>,
    pub x_max: Vec<i32>,
    /// Maximum pair difference `x_max - x_min` per frequency.
    pub z_star: Vec<i32>,
    /// Maximum absolute difference between the target q-coeff and any SI q-coeff.
    pub z_target: Vec<i32>,
}

pub fn compute_merge_stats(qcoeffs: &[&[i32]]) -> Result<MergeStat> {
    if qcoeffs.len() < 2 {
        return Err(Error::NoSideInformation);
    }
    let k = qcoeffs[0].len();
    for row in qcoeffs {
        if row.len() != k {
            return Err(Error::BlockLengthMismatch {
                expected: k,
                got: row.len(),
            });
        }
    }
    let mut stat = MergeStat {
        x_min: Vec::with_capacity(k),
        x_max: Vec::with_capacity(k),
        z_star: Vec::with_capacity(k),
        z_target: Vec::with_capacity(k),
    };
    for i in 0..k {
        let target = qcoeffs[0][i];
        let mut lo = target;
        let mut hi = target;
        let mut zt = 0i32;
        for row in &qcoeffs[1..] {
            let v = row[i];
            lo = lo.min(v);
            hi = hi.max(v);
            zt = zt.max((target - v).abs());
        }
        stat.x_min.push(lo);
        stat.x_max.push(hi);
        stat.z_star.push(hi - lo);
        stat.z_target.push(zt);
    }
    Ok(stat)
}

/// The shifts for which all integers in `[x_min, x_max]` share one constant
/// interval of the merge operator.
///
/// Stored as the raw half-open interval `[lo, hi)` from the two-case analysis;
/// canonical values are the same interval reduced mod `W` into `[0, W)`.
#[derive(Debug, Clone)]
pub struct FeasibleRange {
    lo: i64,
    hi: i64,
    w: i64,
}

impl FeasibleRange {
    /// All of `[0, W)`; the single-point case.
    pub fn full(w: i64) -> Self {
        Self { lo: 0, hi: w, w }
    }

    pub fn step(&self) -> i64 {
        self.w
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn raw_bounds(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, c: i64) -> bool {
        (c - self.lo).rem_euclid(self.w) < self.hi - self.lo
    }

    /// Canonical shift values in `[0, W)`, sorted ascending.
    ///
    /// The sorted order is the tie-break order used throughout the encoder.
    pub fn canonical_values(&self) -> Vec<i64> {
        let mut vals: Vec<i64> = (self.lo..self.hi).map(|c| c.rem_euclid(self.w)).collect();
        vals.sort_unstable();
        vals
    }
}

/// Feasible shift range for merging every integer in `[x_min, x_max]` with
/// step size `W` (the two-case interval analysis).
///
/// Requires `W > x_max - x_min`; the range is then never empty.
pub fn feasible_shift_range(x_min: i64, x_max: i64, w: i64) -> Result<FeasibleRange> {
    debug_assert!(x_min <= x_max);
    if w <= x_max - x_min {
        return Err(Error::InfeasibleStep {
            w,
            spread: x_max - x_min,
        });
    }
    let alpha = x_min.rem_euclid(w);
    let beta = x_max.rem_euclid(w);
    let range = if alpha == beta {
        // only possible when x_min == x_max: any shift merges a single point
        FeasibleRange::full(w)
    } else if alpha < beta {
        FeasibleRange {
            lo: -alpha,
            hi: w - beta,
            w,
        }
    } else {
        FeasibleRange {
            lo: w - alpha,
            hi: w - beta,
            w,
        }
    };
    debug_assert!(!range.is_empty());
    debug_assert!(range.len() as i64 == w - (x_max - x_min));
    Ok(range)
}

/// Closed-form shift for fixed-target merging: with even step `W#` and
/// `c = W#/2 - (X0 mod W#)`, the operator maps every integer in
/// `[X0 - W#/2, X0 + W#/2)` to exactly `X0`.
///
/// The returned shift is canonicalized into `[0, W#)`.
pub fn fixed_target_params(x0: i64, w_sharp: i64) -> Result<i64> {
    if w_sharp % 2 != 0 {
        return Err(Error::OddFixedStep(w_sharp));
    }
    debug_assert!(w_sharp >= 2);
    let c = w_sharp / 2 - x0.rem_euclid(w_sharp);
    Ok(c.rem_euclid(w_sharp))
}

/// Coset decoder: the integer closest to `si_value` whose residue mod `W`
/// equals `coset_index`; ties resolve toward the smaller candidate.
pub fn coset_decode(si_value: i64, coset_index: i64, w: i64) -> i64 {
    debug_assert!((0..w).contains(&coset_index));
    let d = si_value - coset_index;
    let rem = d.rem_euclid(w);
    let below = si_value - rem;
    if 2 * rem <= w {
        below
    } else {
        below + w
    }
}
