//! Word-level arithmetic in F_2[x]/(f): carry-less products accumulated
//! unreduced, then a byte-at-a-time fold using a precomputed table.

use crate::fq::words_for;
use crate::poly;

/// Product of two 64-bit polynomials over F_2.
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the required CPU feature was just detected.
            return unsafe { clmul_hw(a, b) };
        }
    }
    clmul_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi64_si128, _mm_storeu_si128};
    let r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(a as i64), _mm_cvtsi64_si128(b as i64), 0);
    let mut out = [0u64; 2];
    _mm_storeu_si128(out.as_mut_ptr().cast(), r);
    out[0] as u128 | (out[1] as u128) << 64
}

/// Four bits of `a` per step against a 16-entry table of multiples of `b`.
pub(crate) fn clmul_soft(a: u64, b: u64) -> u128 {
    let mut t = [0u128; 16];
    for i in 1..16 {
        t[i] = (t[i >> 1] << 1) ^ if i & 1 == 1 { b as u128 } else { 0 };
    }
    let mut r = 0u128;
    for s in (0..16).rev() {
        r = (r << 4) ^ t[((a >> (4 * s)) & 15) as usize];
    }
    r
}

/// `acc ^= a · b`, with `acc` holding at least `a.len() + b.len()` words.
#[inline]
pub(crate) fn mul_acc(acc: &mut [u64], a: &[u64], b: &[u64]) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = clmul(x, y);
            acc[i + j] ^= p as u64;
            acc[i + j + 1] ^= (p >> 64) as u64;
        }
    }
}

fn get_byte(v: &[u64], off: usize) -> u64 {
    let (w, b) = (off / 64, off % 64);
    let lo = v.get(w).map_or(0, |&x| x >> b);
    let hi = if b > 56 { v.get(w + 1).map_or(0, |&x| x << (64 - b)) } else { 0 };
    (lo | hi) & 0xff
}

/// `acc ^= src · x^shift`, ignoring bits past the end of `acc`.
fn xor_shifted(acc: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, &x) in src.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if let Some(a) = acc.get_mut(ws + i) {
            *a ^= x << bs;
        }
        if bs != 0 {
            if let Some(a) = acc.get_mut(ws + i + 1) {
                *a ^= x >> (64 - bs);
            }
        }
    }
}

/// Reduction data for one binary modulus.
#[derive(Debug)]
pub(crate) struct Reducer {
    m: usize,
    words: usize,
    /// Entry b holds (b · x^m) mod f, `words` words each.
    fold: Vec<u64>,
}

impl Reducer {
    pub(crate) fn new(modulus_bits: &[u64], m: usize) -> Self {
        let words = words_for(m);
        let mut fold = vec![0u64; 256 * words];
        for b in 1..256u64 {
            let mut shifted = vec![0u64; words_for(m + 8) + 1];
            xor_shifted(&mut shifted, &[b], m);
            let r = poly::gf2x_rem(&shifted, modulus_bits);
            fold[b as usize * words..][..r.len()].copy_from_slice(&r);
        }
        Self { m, words, fold }
    }

    /// Words needed for an unreduced product accumulator.
    pub(crate) fn acc_words(&self) -> usize {
        2 * self.words
    }

    /// Reduces `acc` in place and returns the low `words` words.
    pub(crate) fn reduce(&self, acc: &mut [u64]) -> Vec<u64> {
        self.reduce_in_place(acc);
        acc[..self.words].to_vec()
    }

    /// Reduces `acc` in place; the result is left in its low `words` words.
    pub(crate) fn reduce_in_place(&self, acc: &mut [u64]) {
        let top = acc.len() * 64;
        if top > self.m {
            let mut s = (top - self.m).div_ceil(8) * 8;
            while s > 0 {
                s -= 8;
                let b = get_byte(acc, self.m + s);
                if b != 0 {
                    xor_shifted(acc, &[b], self.m + s);
                    xor_shifted(acc, &self.fold[b as usize * self.words..][..self.words], s);
                }
            }
        }
    }
}
