//! Univariate polynomials over F_q.
//!
//! Two representations share one set of algorithms through [`PolyRing`]:
//! bit-packed GF(2)[x] for the binary case and digit vectors for any other
//! base field.

use std::fmt::Debug;

use crate::fq::BaseField;

pub(crate) trait PolyRing {
    type Poly: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Poly;
    fn one(&self) -> Self::Poly;
    fn x(&self) -> Self::Poly;
    fn q(&self) -> u64;
    /// Degree, `None` for the zero polynomial.
    fn degree(&self, a: &Self::Poly) -> Option<usize>;
    fn add(&self, a: &Self::Poly, b: &Self::Poly) -> Self::Poly;
    fn sub(&self, a: &Self::Poly, b: &Self::Poly) -> Self::Poly;
    fn mul(&self, a: &Self::Poly, b: &Self::Poly) -> Self::Poly;
    fn divrem(&self, a: &Self::Poly, b: &Self::Poly) -> (Self::Poly, Self::Poly);
    fn rem(&self, a: &Self::Poly, b: &Self::Poly) -> Self::Poly {
        self.divrem(a, b).1
    }
    fn leading(&self, a: &Self::Poly) -> u8;
    fn scale(&self, a: &Self::Poly, c: u8) -> Self::Poly;
    fn inv_digit(&self, c: u8) -> u8;
    /// Builds a polynomial from coefficients, constant term first.
    fn from_coeffs(&self, c: &[u8]) -> Self::Poly;

    fn is_zero(&self, a: &Self::Poly) -> bool {
        self.degree(a).is_none()
    }

    fn monic(&self, a: &Self::Poly) -> Self::Poly {
        if self.is_zero(a) {
            return a.clone();
        }
        self.scale(a, self.inv_digit(self.leading(a)))
    }
}

/// Monic gcd.
pub(crate) fn gcd<R: PolyRing>(ring: &R, a: &R::Poly, b: &R::Poly) -> R::Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !ring.is_zero(&b) {
        let r = ring.rem(&a, &b);
        a = b;
        b = r;
    }
    ring.monic(&a)
}

pub(crate) fn powmod<R: PolyRing>(ring: &R, base: &R::Poly, mut e: u64, f: &R::Poly) -> R::Poly {
    let mut acc = ring.one();
    let mut b = ring.rem(base, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.rem(&ring.mul(&acc, &b), f);
        }
        e >>= 1;
        if e > 0 {
            b = ring.rem(&ring.mul(&b, &b), f);
        }
    }
    acc
}

/// Inverse of `a` modulo `f` by the extended Euclidean algorithm.
pub(crate) fn inverse_mod<R: PolyRing>(ring: &R, a: &R::Poly, f: &R::Poly) -> Option<R::Poly> {
    let (mut r0, mut r1) = (f.clone(), ring.rem(a, f));
    let (mut s0, mut s1) = (ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (quot, r) = ring.divrem(&r0, &r1);
        let s = ring.sub(&s0, &ring.mul(&quot, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if ring.degree(&r0) != Some(0) {
        return None;
    }
    let c = ring.inv_digit(ring.leading(&r0));
    Some(ring.rem(&ring.scale(&s0, c), f))
}

/// Ben-Or irreducibility test: f of degree m is irreducible iff
/// gcd(x^{q^i} - x, f) = 1 for every i ≤ m/2.
pub(crate) fn is_irreducible<R: PolyRing>(ring: &R, f: &R::Poly) -> bool {
    let m = match ring.degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(m) => m,
    };
    let x = ring.x();
    let one = ring.one();
    let mut g = ring.rem(&x, f);
    for _ in 0..m / 2 {
        g = powmod(ring, &g, ring.q(), f);
        let h = gcd(ring, &ring.sub(&g, &x), f);
        if h != one {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree m,
/// comparing coefficients from the constant term upward. Returns the
/// coefficient list, constant term first, of length m + 1.
pub(crate) fn default_irreducible_coeffs<R: PolyRing>(ring: &R, m: usize) -> Vec<u8> {
    assert!(m >= 1);
    let q = ring.q() as u16;
    let mut c = vec![0u8; m + 1];
    c[m] = 1;
    if m == 1 {
        // x itself.
        return c;
    }
    // A zero constant term makes x a factor.
    c[0] = 1;
    loop {
        if is_irreducible(ring, &ring.from_coeffs(&c)) {
            return c;
        }
        // Advance in lexicographic order: the degree m-1 coefficient is the
        // least significant position.
        let mut i = m - 1;
        loop {
            if (c[i] as u16) + 1 < q {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
            i -= 1;
        }
    }
}

pub(crate) fn default_irreducible<R: PolyRing>(ring: &R, m: usize) -> R::Poly {
    ring.from_coeffs(&default_irreducible_coeffs(ring, m))
}

/// Polynomials over an arbitrary F_q as digit vectors without trailing zeros.
pub(crate) struct FqPolyRing<'a> {
    bf: &'a BaseField,
}

impl<'a> FqPolyRing<'a> {
    pub(crate) fn new(bf: &'a BaseField) -> Self {
        Self { bf }
    }
}

fn trim(mut v: Vec<u8>) -> Vec<u8> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl PolyRing for FqPolyRing<'_> {
    type Poly = Vec<u8>;

    fn zero(&self) -> Vec<u8> {
        Vec::new()
    }

    fn one(&self) -> Vec<u8> {
        vec![1]
    }

    fn x(&self) -> Vec<u8> {
        vec![0, 1]
    }

    fn q(&self) -> u64 {
        self.bf.q()
    }

    fn degree(&self, a: &Vec<u8>) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    fn add(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.bf.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(out)
    }

    fn sub(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.bf.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(out)
    }

    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.bf.add(out[i + j], self.bf.mul(x, y));
            }
        }
        trim(out)
    }

    fn divrem(&self, a: &Vec<u8>, b: &Vec<u8>) -> (Vec<u8>, Vec<u8>) {
        let db = self.degree(b).expect("division by zero polynomial");
        let mut r = trim(a.clone());
        let lead_inv = self.bf.inv(b[db]);
        let mut quot = vec![0u8; r.len().saturating_sub(db)];
        while let Some(dr) = self.degree(&r) {
            if dr < db {
                break;
            }
            let c = self.bf.mul(r[dr], lead_inv);
            let shift = dr - db;
            quot[shift] = c;
            for (j, &bj) in b[..=db].iter().enumerate() {
                r[shift + j] = self.bf.sub(r[shift + j], self.bf.mul(c, bj));
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    fn leading(&self, a: &Vec<u8>) -> u8 {
        self.degree(a).map_or(0, |d| a[d])
    }

    fn scale(&self, a: &Vec<u8>, c: u8) -> Vec<u8> {
        trim(a.iter().map(|&x| self.bf.mul(x, c)).collect())
    }

    fn inv_digit(&self, c: u8) -> u8 {
        self.bf.inv(c)
    }

    fn from_coeffs(&self, c: &[u8]) -> Vec<u8> {
        trim(c.to_vec())
    }
}

/// GF(2)[x] packed 64 coefficients per word, no trailing zero words.
pub(crate) struct Gf2xRing;

pub(crate) fn gf2x_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gf2x_degree(a: &[u64]) -> Option<usize> {
    let i = a.iter().rposition(|&w| w != 0)?;
    Some(i * 64 + 63 - a[i].leading_zeros() as usize)
}

/// `acc ^= b · x^shift`.
fn gf2x_xor_shifted(acc: &mut Vec<u64>, b: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    let need = ws + b.len() + 1;
    if acc.len() < need {
        acc.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in b.iter().enumerate() {
            acc[ws + i] ^= w;
        }
    } else {
        for (i, &w) in b.iter().enumerate() {
            acc[ws + i] ^= w << bs;
            acc[ws + i + 1] ^= w >> (64 - bs);
        }
    }
}

pub(crate) fn gf2x_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() + 1];
    for (i, &w) in a.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let j = w.trailing_zeros() as usize;
            w &= w - 1;
            gf2x_xor_shifted(&mut out, b, i * 64 + j);
        }
    }
    gf2x_trim(out)
}

/// Remainder of `a` modulo a nonzero `f`.
pub(crate) fn gf2x_rem(a: &[u64], f: &[u64]) -> Vec<u64> {
    let df = gf2x_degree(f).expect("division by zero polynomial");
    let mut r = a.to_vec();
    while let Some(dr) = gf2x_degree(&r) {
        if dr < df {
            break;
        }
        gf2x_xor_shifted(&mut r, f, dr - df);
        r.truncate(dr / 64 + 1);
    }
    gf2x_trim(r)
}

impl PolyRing for Gf2xRing {
    type Poly = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }

    fn one(&self) -> Vec<u64> {
        vec![1]
    }

    fn x(&self) -> Vec<u64> {
        vec![2]
    }

    fn q(&self) -> u64 {
        2
    }

    fn degree(&self, a: &Vec<u64>) -> Option<usize> {
        gf2x_degree(a)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, &w) in out.iter_mut().zip(short) {
            *o ^= w;
        }
        gf2x_trim(out)
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.add(a, b)
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        gf2x_mul(a, b)
    }

    fn divrem(&self, a: &Vec<u64>, b: &Vec<u64>) -> (Vec<u64>, Vec<u64>) {
        let db = gf2x_degree(b).expect("division by zero polynomial");
        let mut r = a.clone();
        let mut quot = vec![0u64; (gf2x_degree(a).unwrap_or(0) / 64) + 1];
        while let Some(dr) = gf2x_degree(&r) {
            if dr < db {
                break;
            }
            let shift = dr - db;
            quot[shift / 64] |= 1 << (shift % 64);
            gf2x_xor_shifted(&mut r, b, shift);
            r.truncate(dr / 64 + 1);
        }
        (gf2x_trim(quot), gf2x_trim(r))
    }

    fn rem(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        gf2x_rem(a, b)
    }

    fn leading(&self, a: &Vec<u64>) -> u8 {
        u8::from(!a.is_empty())
    }

    fn scale(&self, a: &Vec<u64>, c: u8) -> Vec<u64> {
        if c & 1 == 1 {
            a.clone()
        } else {
            Vec::new()
        }
    }

    fn inv_digit(&self, c: u8) -> u8 {
        c
    }

    fn from_coeffs(&self, c: &[u8]) -> Vec<u64> {
        let mut out = vec![0u64; c.len().div_ceil(64)];
        for (i, &d) in c.iter().enumerate() {
            if d & 1 == 1 {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        gf2x_trim(out)
    }
}
