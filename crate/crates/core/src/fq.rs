//! The base field F_q and dense vectors over it.
//!
//! Elements of F_q are small integers in `[0, q)`. For prime q they are
//! residues; for q = p^e they encode a polynomial over F_p in base p
//! (digit i is the coefficient of β^i). Binary vectors are bit-packed into
//! 64-bit words so row operations become word-wide XORs.

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{self, FqPolyRing, PolyRing};

/// Largest supported base field.
pub const MAX_Q: u64 = 256;

/// Arithmetic tables for F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseField {
    q: u32,
    p: u32,
    degree: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// Factors `q` as `p^e`, returning `None` when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl BaseField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(Error::UnsupportedBase(q));
        }
        let prime = Self::prime(p as u32);
        if e == 1 {
            return Ok(prime);
        }
        // F_{p^e} = F_p[β]/(g) with g the default irreducible of degree e.
        let ring = FqPolyRing::new(&prime);
        let g = poly::default_irreducible(&ring, e as usize);
        let q = q as u32;
        let p32 = p as u32;
        let to_poly = |a: u32| -> Vec<u8> {
            let mut v = Vec::with_capacity(e as usize);
            let mut a = a;
            for _ in 0..e {
                v.push((a % p32) as u8);
                a /= p32;
            }
            v
        };
        let from_poly = |v: &[u8]| -> u32 { v.iter().rev().fold(0u32, |acc, &d| acc * p32 + d as u32) };
        let size = (q * q) as usize;
        let mut add = vec![0u8; size];
        let mut mul = vec![0u8; size];
        for a in 0..q {
            let pa = to_poly(a);
            for b in 0..q {
                let pb = to_poly(b);
                let s: Vec<u8> = pa.iter().zip(&pb).map(|(&x, &y)| ((x as u32 + y as u32) % p32) as u8).collect();
                add[(a * q + b) as usize] = from_poly(&s) as u8;
                let mut prod = ring.rem(&ring.mul(&pa, &pb), &g);
                prod.resize(e as usize, 0);
                mul[(a * q + b) as usize] = from_poly(&prod) as u8;
            }
        }
        Ok(Self::from_tables(q, p32, e, add, mul))
    }

    fn prime(p: u32) -> Self {
        let size = (p * p) as usize;
        let mut add = vec![0u8; size];
        let mut mul = vec![0u8; size];
        for a in 0..p {
            for b in 0..p {
                add[(a * p + b) as usize] = ((a + b) % p) as u8;
                mul[(a * p + b) as usize] = ((a * b) % p) as u8;
            }
        }
        Self::from_tables(p, p, 1, add, mul)
    }

    fn from_tables(q: u32, p: u32, degree: u32, add: Vec<u8>, mul: Vec<u8>) -> Self {
        let mut neg = vec![0u8; q as usize];
        let mut inv = vec![0u8; q as usize];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u8;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Self { q, p, degree, add, mul, neg, inv }
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    /// Degree of F_q over its prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero digit; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn random_digit<R: Rng + ?Sized>(&self, rng: &mut R) -> u8 {
        rng.gen_range(0..self.q) as u8
    }

    pub fn zero_vec(&self, len: usize) -> FqVec {
        if self.is_binary() {
            FqVec::Bits { len, words: vec![0; words_for(len)] }
        } else {
            FqVec::Digits(vec![0; len])
        }
    }

    /// Builds a vector from digits, rejecting any digit outside `[0, q)`.
    pub fn vec_from_digits(&self, digits: &[u8]) -> Result<FqVec> {
        if let Some(d) = digits.iter().find(|&&d| d as u32 >= self.q) {
            return Err(Error::InvalidCoords(format!("digit {d} is not below q = {}", self.q)));
        }
        let mut v = self.zero_vec(digits.len());
        for (i, &d) in digits.iter().enumerate() {
            v.set(i, d);
        }
        Ok(v)
    }

    pub fn random_vec<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> FqVec {
        match self.zero_vec(len) {
            FqVec::Bits { len, mut words } => {
                for w in words.iter_mut() {
                    *w = rng.gen();
                }
                let mut v = FqVec::Bits { len, words };
                v.clear_tail();
                v
            }
            FqVec::Digits(mut d) => {
                for x in d.iter_mut() {
                    *x = self.random_digit(rng);
                }
                FqVec::Digits(d)
            }
        }
    }

    /// `y += c · x`.
    pub fn axpy(&self, y: &mut FqVec, c: u8, x: &FqVec) {
        debug_assert_eq!(y.len(), x.len());
        if c == 0 {
            return;
        }
        match (y, x) {
            (FqVec::Bits { words: yw, .. }, FqVec::Bits { words: xw, .. }) => {
                for (a, b) in yw.iter_mut().zip(xw) {
                    *a ^= b;
                }
            }
            (FqVec::Digits(yd), FqVec::Digits(xd)) => {
                if c == 1 {
                    for (a, &b) in yd.iter_mut().zip(xd) {
                        *a = self.add(*a, b);
                    }
                } else {
                    for (a, &b) in yd.iter_mut().zip(xd) {
                        *a = self.add(*a, self.mul(c, b));
                    }
                }
            }
            _ => panic!("mixed vector representations"),
        }
    }

    /// `y += c · x` restricted to positions `from..`; positions before `from`
    /// in `x` must already be zero for the caller's purposes.
    pub(crate) fn axpy_from(&self, y: &mut FqVec, c: u8, x: &FqVec, from: usize) {
        if c == 0 {
            return;
        }
        match (y, x) {
            (FqVec::Bits { words: yw, .. }, FqVec::Bits { words: xw, .. }) => {
                for (a, b) in yw[from / 64..].iter_mut().zip(&xw[from / 64..]) {
                    *a ^= b;
                }
            }
            (FqVec::Digits(yd), FqVec::Digits(xd)) => {
                for (a, &b) in yd[from..].iter_mut().zip(&xd[from..]) {
                    *a = self.add(*a, self.mul(c, b));
                }
            }
            _ => panic!("mixed vector representations"),
        }
    }

    pub fn scale(&self, x: &mut FqVec, c: u8) {
        match x {
            FqVec::Bits { words, .. } => {
                if c == 0 {
                    words.iter_mut().for_each(|w| *w = 0);
                }
            }
            FqVec::Digits(d) => {
                for a in d.iter_mut() {
                    *a = self.mul(c, *a);
                }
            }
        }
    }

    pub fn add_vec(&self, x: &FqVec, y: &FqVec) -> FqVec {
        let mut out = x.clone();
        self.axpy(&mut out, 1, y);
        out
    }

    pub fn sub_vec(&self, x: &FqVec, y: &FqVec) -> FqVec {
        let mut out = x.clone();
        self.axpy(&mut out, self.neg(1), y);
        out
    }

    pub fn dot(&self, x: &FqVec, y: &FqVec) -> u8 {
        match (x, y) {
            (FqVec::Bits { words: a, .. }, FqVec::Bits { words: b, .. }) => {
                let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                (ones & 1) as u8
            }
            (FqVec::Digits(a), FqVec::Digits(b)) => {
                a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
            }
            _ => panic!("mixed vector representations"),
        }
    }
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A dense vector over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FqVec {
    /// q = 2, bit i of the vector is bit `i % 64` of word `i / 64`.
    Bits { len: usize, words: Vec<u64> },
    /// Any other q, one digit per byte.
    Digits(Vec<u8>),
}

impl FqVec {
    pub fn len(&self) -> usize {
        match self {
            FqVec::Bits { len, .. } => *len,
            FqVec::Digits(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        match self {
            FqVec::Bits { words, .. } => ((words[i / 64] >> (i % 64)) & 1) as u8,
            FqVec::Digits(d) => d[i],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        match self {
            FqVec::Bits { words, .. } => {
                let mask = 1u64 << (i % 64);
                if v & 1 == 1 {
                    words[i / 64] |= mask;
                } else {
                    words[i / 64] &= !mask;
                }
            }
            FqVec::Digits(d) => d[i] = v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FqVec::Bits { words, .. } => words.iter().all(|&w| w == 0),
            FqVec::Digits(d) => d.iter().all(|&x| x == 0),
        }
    }

    /// Index of the first nonzero position at or after `from`.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        match self {
            FqVec::Bits { len, words } => {
                let mut wi = from / 64;
                if wi >= words.len() {
                    return None;
                }
                let mut w = words[wi] & (!0u64 << (from % 64));
                loop {
                    if w != 0 {
                        let i = wi * 64 + w.trailing_zeros() as usize;
                        return (i < *len).then_some(i);
                    }
                    wi += 1;
                    if wi >= words.len() {
                        return None;
                    }
                    w = words[wi];
                }
            }
            FqVec::Digits(d) => d[from.min(d.len())..].iter().position(|&x| x != 0).map(|i| i + from),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.first_nonzero_from(0)
    }

    /// Number of nonzero positions.
    pub fn weight(&self) -> usize {
        match self {
            FqVec::Bits { words, .. } => words.iter().map(|w| w.count_ones() as usize).sum(),
            FqVec::Digits(d) => d.iter().filter(|&&x| x != 0).count(),
        }
    }

    pub fn digits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &FqVec) -> FqVec {
        match (self, other) {
            (FqVec::Digits(a), FqVec::Digits(b)) => FqVec::Digits([a.as_slice(), b.as_slice()].concat()),
            _ => {
                let len = self.len() + other.len();
                let mut out = FqVec::Bits { len, words: vec![0; words_for(len)] };
                for i in 0..self.len() {
                    out.set(i, self.get(i));
                }
                for i in 0..other.len() {
                    out.set(self.len() + i, other.get(i));
                }
                out
            }
        }
    }

    /// The sub-vector at positions `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> FqVec {
        match self {
            FqVec::Digits(d) => FqVec::Digits(d[start..start + len].to_vec()),
            FqVec::Bits { .. } => {
                let mut out = FqVec::Bits { len, words: vec![0; words_for(len)] };
                for i in 0..len {
                    out.set(i, self.get(start + i));
                }
                out
            }
        }
    }

    fn clear_tail(&mut self) {
        if let FqVec::Bits { len, words } = self {
            let r = *len % 64;
            if r != 0 {
                if let Some(last) = words.last_mut() {
                    *last &= (1u64 << r) - 1;
                }
            }
        }
    }
}
