//! Closed-form failure and closeness bounds, evaluated in high precision with
//! directed rounding so every reported value is an upper bound.

use astro_float::{BigFloat, RoundingMode};

use crate::error::{Error, Result};

const UP: RoundingMode = RoundingMode::Up;
const DOWN: RoundingMode = RoundingMode::Down;

/// Slack added to f64 log2 conversions so they stay on the safe side.
const LOG2_MARGIN: f64 = 1e-12;

/// Upper bounds on the two failure events of the decoder, as log2 values.
#[derive(Clone, Debug, PartialEq)]
pub struct FailureBound {
    pub log2_p1: f64,
    pub log2_p2: f64,
    /// log2 of the sum of both bounds.
    pub log2_total: f64,
    /// log2(ℓ · q^{tw − m}), the usual first-order estimate of the second
    /// bound. Reported alongside, never used as a bound.
    pub log2_p2_approx: f64,
    /// Whether t ≥ 1, tw ≤ N, (2w − 1)t < m, wt < m and ℓ < n_cols ≤ ℓw.
    pub regime_ok: bool,
    /// Working precision in bits.
    pub precision: usize,
}

impl FailureBound {
    pub fn total(&self) -> f64 {
        self.log2_total.exp2()
    }
}

/// Decoder dimensions: H is `rows × cols` of weight w, E is `cols × samples`
/// with a t-dimensional support in F_{q^m}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DecoderShape {
    pub q: u64,
    pub m: usize,
    pub rows: usize,
    pub cols: usize,
    pub w: usize,
    pub t: usize,
    pub samples: usize,
}

impl DecoderShape {
    pub fn regime_ok(&self) -> bool {
        let &DecoderShape { m, rows, cols, w, t, samples, .. } = self;
        t >= 1
            && t * w <= samples
            && (2 * w).saturating_sub(1) * t < m
            && w * t < m
            && rows < cols
            && cols <= rows * w
    }
}

pub(crate) fn precision_for(q: u64, bits_of: &[usize]) -> usize {
    let lg = (q as f64).log2();
    let widest = bits_of.iter().copied().max().unwrap_or(0) as f64;
    256 + (widest * lg).ceil() as usize
}

fn big(v: u64, p: usize) -> BigFloat {
    BigFloat::from_u64(v, p)
}

/// x^e with every multiplication rounded in direction `rm`; for x > 0 this
/// bounds the exact power from the matching side.
fn pow_dir(x: &BigFloat, mut e: u64, p: usize, rm: RoundingMode) -> BigFloat {
    let mut acc = big(1, p);
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, p, rm);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, p, rm);
        }
    }
    acc
}

/// q^e for any integer e, rounded in direction `rm`.
fn q_pow(q: u64, e: i64, p: usize, rm: RoundingMode) -> BigFloat {
    let qb = big(q, p);
    if e >= 0 {
        pow_dir(&qb, e as u64, p, rm)
    } else {
        let opposite = if rm == UP { DOWN } else { UP };
        let d = pow_dir(&qb, e.unsigned_abs(), p, opposite);
        big(1, p).div(&d, p, rm)
    }
}

/// Top mantissa word, its width in bits, and the binary exponent. The word
/// is 32 bits wide on 32-bit targets.
fn top_word(x: &BigFloat) -> (f64, f64, i64) {
    let digits = x.mantissa_digits().expect("finite value");
    let top = *digits.last().expect("nonempty mantissa");
    let e = x.exponent().expect("finite value") as i64;
    (top as f64, (std::mem::size_of_val(&top) * 8) as f64, e)
}

/// An upper bound on log2(x) for x > 0.
pub fn log2_upper(x: &BigFloat) -> f64 {
    assert!(x.is_positive(), "log2 of a non-positive value");
    let (top, bits, e) = top_word(x);
    // x < (top + 1) · 2^{e − bits}
    ((top + 1.0).log2() - bits + e as f64) + LOG2_MARGIN
}

/// A lower bound on log2(x) for x > 0.
pub fn log2_lower(x: &BigFloat) -> f64 {
    assert!(x.is_positive(), "log2 of a non-positive value");
    let (top, bits, e) = top_word(x);
    (top.log2() - bits + e as f64) - LOG2_MARGIN
}

fn is_le_zero(x: &BigFloat) -> bool {
    x.is_zero() || x.is_negative()
}

/// Upper bounds on both failure events for the given decoder shape:
///
/// P_I ≤ (1 − ∏_{i<tw}(1 − q^{i−N}) + q^{(2w−1)t} / (q^m − q^{t−1}))^ℓ,
/// P_II ≤ 1 − (1 − q^{tw} / (q^m − q^{t−1}))^ℓ.
///
/// When tw > N the product is taken as 0, and a non-positive base in P_II
/// makes that bound 1.
pub fn failure_bound(shape: &DecoderShape) -> Result<FailureBound> {
    let &DecoderShape { q, m, rows: l, w, t, samples: big_n, .. } = shape;
    if q < 2 {
        return Err(Error::Params(format!("q = {q} must be at least 2")));
    }
    let p = precision_for(q, &[m, big_n, t * w]);
    let one = big(1, p);
    let (m_i, t_i, big_n_i) = (m as i64, t as i64, big_n as i64);

    // q^m − q^{t−1}, rounded down since it divides.
    let denom = q_pow(q, m_i, p, DOWN).sub(&q_pow(q, t_i - 1, p, UP), p, DOWN);
    if is_le_zero(&denom) {
        return Err(Error::Params(format!("q^m − q^(t−1) ≤ 0 for m = {m}, t = {t}")));
    }

    let tw = t * w;
    let product = if tw > big_n {
        big(0, p)
    } else {
        (0..tw as i64).fold(one.clone(), |acc, i| {
            let factor = one.sub(&q_pow(q, i - big_n_i, p, UP), p, DOWN);
            acc.mul(&factor, p, DOWN)
        })
    };
    let collision = q_pow(q, ((2 * w).saturating_sub(1) * t) as i64, p, UP).div(&denom, p, UP);
    let base1 = one.sub(&product, p, UP).add(&collision, p, UP);
    let p1 = pow_dir(&base1, l as u64, p, UP);

    let y = q_pow(q, tw as i64, p, UP).div(&denom, p, UP);
    let z = one.sub(&y, p, DOWN);
    let p2 = if is_le_zero(&z) { one.clone() } else { one.sub(&pow_dir(&z, l as u64, p, DOWN), p, UP) };

    let total = p1.add(&p2, p, UP);
    let lg = |x: &BigFloat| if x.is_zero() { f64::NEG_INFINITY } else { log2_upper(x) };
    let log2_p2_approx = (l as f64).log2() + (tw as f64 - m as f64) * (q as f64).log2();
    Ok(FailureBound {
        log2_p1: lg(&p1),
        log2_p2: lg(&p2),
        log2_total: lg(&total),
        log2_p2_approx,
        regime_ok: shape.regime_ok(),
        precision: p,
    })
}

/// log2 ε with ε = (n/2)·√(q^{mk − (m+L)w + w²}), the statistical distance
/// of the public matrix from uniform.
pub fn epsilon_bound(n: usize, k: usize, l: usize, w: usize, m: usize, q: u64) -> f64 {
    let (n, k, l, w, m) = (n as i128, k as i128, l as i128, w as i128, m as i128);
    let exponent = m * k - (m + l) * w + w * w;
    let lq = (q as f64).log2();
    let half = if q.is_power_of_two() {
        (exponent * q.trailing_zeros() as i128) as f64 / 2.0
    } else {
        exponent as f64 * lq / 2.0
    };
    ((n as f64) / 2.0).log2() + half + LOG2_MARGIN
}
