//! Arithmetic in F_{q^m} = F_q[x]/(f), elements stored as coordinate vectors
//! over the polynomial basis 1, α, …, α^{m-1}.
//!
//! No operation here is constant time.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::fq::{words_for, BaseField, FqVec};
use crate::gf2m::{self, Reducer};
use crate::poly::{self, FqPolyRing, Gf2xRing, PolyRing};

/// An element of F_{q^m}. Only meaningful together with the [`FieldCtx`]
/// that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fqm(pub(crate) FqVec);

impl Fqm {
    /// Coordinates over the polynomial basis; digit i is the coefficient of α^i.
    pub fn coords(&self) -> &FqVec {
        &self.0
    }

    pub fn into_coords(self) -> FqVec {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

struct Inner {
    base: Arc<BaseField>,
    m: usize,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u8>,
    /// The same modulus packed for the binary fast path.
    modulus_bits: Vec<u64>,
    reducer: Option<Reducer>,
    element_bytes: usize,
}

/// The extension F_{q^m}/F_q. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}} mod {}", self.q(), self.m(), self.modulus_string())
    }
}

impl FieldCtx {
    /// Builds F_{q^m}. The modulus, when given, lists coefficients constant
    /// term first and must have degree exactly m; it is normalized to be
    /// monic. Without one, the lexicographically smallest monic irreducible
    /// (constant term compared first) is used.
    pub fn new(q: u64, m: usize, modulus: Option<&[u8]>) -> Result<Self> {
        let base = BaseField::new(q)?;
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let modulus = match modulus {
            Some(c) => {
                let ring = FqPolyRing::new(&base);
                let digits = base.vec_from_digits(c)?.digits();
                let f = ring.from_coeffs(&digits);
                let deg = ring.degree(&f);
                if deg != Some(m) {
                    return Err(Error::ModulusDegree { expected: m, got: deg });
                }
                let f = ring.monic(&f);
                let irreducible = if base.is_binary() {
                    poly::is_irreducible(&Gf2xRing, &Gf2xRing.from_coeffs(&f))
                } else {
                    poly::is_irreducible(&ring, &f)
                };
                if !irreducible {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None if base.is_binary() => poly::default_irreducible_coeffs(&Gf2xRing, m),
            None => poly::default_irreducible_coeffs(&FqPolyRing::new(&base), m),
        };
        let modulus_bits = if base.is_binary() { Gf2xRing.from_coeffs(&modulus) } else { Vec::new() };
        let reducer = base.is_binary().then(|| Reducer::new(&modulus_bits, m));
        let element_bytes = element_bytes(q, m);
        Ok(Self(Arc::new(Inner { base: Arc::new(base), m, modulus, modulus_bits, reducer, element_bytes })))
    }

    pub fn q(&self) -> u64 {
        self.0.base.q()
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn base(&self) -> &BaseField {
        &self.0.base
    }

    /// Shared handle to F_q, as taken by `MatFq` constructors.
    pub fn base_arc(&self) -> &Arc<BaseField> {
        &self.0.base
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn modulus_string(&self) -> String {
        let terms: Vec<String> = self
            .0
            .modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coeff = if c == 1 || i == 0 { if i == 0 { c.to_string() } else { String::new() } } else { c.to_string() };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }

    /// Bytes taken by one serialized element: ceil(m · log2(q) / 8).
    pub fn element_bytes(&self) -> usize {
        self.0.element_bytes
    }

    pub fn zero(&self) -> Fqm {
        Fqm(self.base().zero_vec(self.m()))
    }

    pub fn one(&self) -> Fqm {
        let mut v = self.base().zero_vec(self.m());
        v.set(0, 1);
        Fqm(v)
    }

    /// The residue class α of x.
    pub fn alpha(&self) -> Fqm {
        if self.m() == 1 {
            let c0 = self.0.modulus[0];
            return Fqm(self.base().vec_from_digits(&[self.base().neg(c0)]).expect("digit in range"));
        }
        let mut v = self.base().zero_vec(self.m());
        v.set(1, 1);
        Fqm(v)
    }

    /// Element with the given coordinates over the polynomial basis.
    pub fn from_coords(&self, v: FqVec) -> Result<Fqm> {
        self.check_vec(&v)?;
        Ok(Fqm(v))
    }

    pub fn from_digits(&self, digits: &[u8]) -> Result<Fqm> {
        if digits.len() != self.m() {
            return Err(Error::InvalidCoords(format!("expected {} digits, got {}", self.m(), digits.len())));
        }
        Ok(Fqm(self.base().vec_from_digits(digits)?))
    }

    fn check_vec(&self, v: &FqVec) -> Result<()> {
        let ok = v.len() == self.m()
            && match v {
                FqVec::Bits { words, .. } => self.base().is_binary() && words.len() == words_for(self.m()),
                FqVec::Digits(d) => !self.base().is_binary() && d.iter().all(|&x| (x as u64) < self.q()),
            };
        if ok {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Verifies that `a` is shaped like an element of this field.
    pub fn check(&self, a: &Fqm) -> Result<()> {
        self.check_vec(&a.0)
    }

    pub fn add(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_raw(a, b))
    }

    pub fn neg(&self, a: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        Ok(self.neg_raw(a))
    }

    pub fn mul(&self, a: &Fqm, b: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn inv(&self, a: &Fqm) -> Result<Fqm> {
        self.check(a)?;
        self.inv_raw(a).ok_or(Error::ZeroInverse)
    }

    pub(crate) fn add_raw(&self, a: &Fqm, b: &Fqm) -> Fqm {
        Fqm(self.base().add_vec(&a.0, &b.0))
    }

    pub(crate) fn add_assign_raw(&self, a: &mut Fqm, b: &Fqm) {
        self.base().axpy(&mut a.0, 1, &b.0);
    }

    pub(crate) fn sub_raw(&self, a: &Fqm, b: &Fqm) -> Fqm {
        Fqm(self.base().sub_vec(&a.0, &b.0))
    }

    pub(crate) fn neg_raw(&self, a: &Fqm) -> Fqm {
        let mut v = a.0.clone();
        self.base().scale(&mut v, self.base().neg(1));
        Fqm(v)
    }

    /// Multiplies by a base-field scalar.
    pub(crate) fn scale_raw(&self, a: &Fqm, c: u8) -> Fqm {
        let mut v = a.0.clone();
        self.base().scale(&mut v, c);
        Fqm(v)
    }

    pub(crate) fn mul_raw(&self, a: &Fqm, b: &Fqm) -> Fqm {
        self.dot_raw([(a, b)])
    }

    /// `a −= c·b`. `scratch` is reused across calls to avoid allocation.
    pub(crate) fn sub_mul_assign_raw(&self, a: &mut Fqm, c: &Fqm, b: &Fqm, scratch: &mut Vec<u64>) {
        match (&self.0.reducer, &mut a.0, &c.0, &b.0) {
            (Some(red), FqVec::Bits { words, .. }, FqVec::Bits { words: cw, .. }, FqVec::Bits { words: bw, .. }) => {
                scratch.clear();
                scratch.resize(red.acc_words(), 0);
                gf2m::mul_acc(scratch, cw, bw);
                red.reduce_in_place(scratch);
                for (x, y) in words.iter_mut().zip(scratch.iter()) {
                    *x ^= y;
                }
            }
            _ => {
                let t = self.mul_raw(c, b);
                *a = self.sub_raw(a, &t);
            }
        }
    }

    /// Σ a_i·b_i, reducing once at the end in the binary case.
    pub(crate) fn dot_raw<'a>(&self, pairs: impl IntoIterator<Item = (&'a Fqm, &'a Fqm)>) -> Fqm {
        let m = self.m();
        match &self.0.reducer {
            Some(red) => {
                let mut acc = vec![0u64; red.acc_words()];
                for (a, b) in pairs {
                    if let (FqVec::Bits { words: aw, .. }, FqVec::Bits { words: bw, .. }) = (&a.0, &b.0) {
                        gf2m::mul_acc(&mut acc, aw, bw);
                    } else {
                        panic!("mixed element representations");
                    }
                }
                Fqm(FqVec::Bits { len: m, words: red.reduce(&mut acc) })
            }
            None => {
                let ring = FqPolyRing::new(self.base());
                let mut acc = ring.zero();
                for (a, b) in pairs {
                    if let (FqVec::Digits(ad), FqVec::Digits(bd)) = (&a.0, &b.0) {
                        acc = ring.add(&acc, &ring.mul(&ring.from_coeffs(ad), &ring.from_coeffs(bd)));
                    } else {
                        panic!("mixed element representations");
                    }
                }
                let mut r = ring.rem(&acc, &self.0.modulus);
                r.resize(m, 0);
                Fqm(FqVec::Digits(r))
            }
        }
    }

    pub(crate) fn inv_raw(&self, a: &Fqm) -> Option<Fqm> {
        if a.is_zero() {
            return None;
        }
        let m = self.m();
        match &a.0 {
            FqVec::Bits { words, .. } => {
                let a = poly::gf2x_trim(words.clone());
                let mut r = poly::inverse_mod(&Gf2xRing, &a, &self.0.modulus_bits)?;
                r.resize(words_for(m), 0);
                Some(Fqm(FqVec::Bits { len: m, words: r }))
            }
            FqVec::Digits(d) => {
                let ring = FqPolyRing::new(self.base());
                let mut r = poly::inverse_mod(&ring, &ring.from_coeffs(d), &self.0.modulus)?;
                r.resize(m, 0);
                Some(Fqm(FqVec::Digits(r)))
            }
        }
    }

    pub fn pow(&self, a: &Fqm, e: &BigUint) -> Result<Fqm> {
        self.check(a)?;
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul_raw(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_raw(&acc, a);
            }
        }
        Ok(acc)
    }

    /// The Frobenius map a ↦ a^q.
    pub fn frobenius(&self, a: &Fqm) -> Result<Fqm> {
        self.pow(a, &BigUint::from(self.q()))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fqm {
        Fqm(self.base().random_vec(self.m(), rng))
    }

    /// Serializes an element: base-q digits packed little-endian, digit i at
    /// position i, in [`element_bytes`](Self::element_bytes) bytes.
    pub fn encode(&self, a: &Fqm) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.element_bytes());
        self.encode_into(a, &mut out);
        out
    }

    pub(crate) fn encode_into(&self, a: &Fqm, out: &mut Vec<u8>) {
        let n = self.element_bytes();
        match &a.0 {
            FqVec::Bits { words, .. } => {
                out.extend(words.iter().flat_map(|w| w.to_le_bytes()).take(n));
            }
            FqVec::Digits(d) => {
                let bytes = if let Some(bits) = digit_bits(self.q()) {
                    let mut w = crate::codec::BitWriter::default();
                    for &x in d {
                        w.push(x as u64, bits);
                    }
                    w.finish()
                } else {
                    let q = BigUint::from(self.q());
                    let v = d.iter().rev().fold(BigUint::zero(), |acc, &x| acc * &q + BigUint::from(x));
                    v.to_bytes_le()
                };
                let start = out.len();
                out.extend(&bytes);
                out.resize(start + n, 0);
            }
        }
    }

    /// Inverse of [`encode`](Self::encode); rejects non-canonical encodings.
    pub fn decode(&self, bytes: &[u8]) -> Result<Fqm> {
        let n = self.element_bytes();
        if bytes.len() != n {
            return Err(Error::Format(format!("element needs {n} bytes, got {}", bytes.len())));
        }
        let m = self.m();
        if self.base().is_binary() {
            let mut words = vec![0u64; words_for(m)];
            for (i, &b) in bytes.iter().enumerate() {
                words[i / 8] |= (b as u64) << (8 * (i % 8));
            }
            let v = FqVec::Bits { len: m, words };
            let mut check = v.clone();
            if let FqVec::Bits { words, .. } = &mut check {
                if m % 64 != 0 {
                    *words.last_mut().unwrap() &= (1u64 << (m % 64)) - 1;
                }
            }
            if check != v {
                return Err(Error::Format("bits set beyond the extension degree".into()));
            }
            return Ok(Fqm(v));
        }
        let digits = if let Some(bits) = digit_bits(self.q()) {
            let mut r = crate::codec::BitReader::new(bytes);
            let d: Vec<u8> = (0..m).map(|_| r.read(bits) as u8).collect();
            if !r.rest_is_zero() {
                return Err(Error::Format("padding bits are not zero".into()));
            }
            d
        } else {
            let q = BigUint::from(self.q());
            let mut v = BigUint::from_bytes_le(bytes);
            if v >= q.pow(m as u32) {
                return Err(Error::Format("element value exceeds q^m".into()));
            }
            let mut d = Vec::with_capacity(m);
            for _ in 0..m {
                d.push((&v % &q).to_u8().expect("digit below q"));
                v /= &q;
            }
            d
        };
        self.from_digits(&digits)
    }
}

/// Bits per digit when q is a power of two.
pub(crate) fn digit_bits(q: u64) -> Option<usize> {
    q.is_power_of_two().then(|| q.trailing_zeros() as usize)
}

/// ceil(m · log2(q) / 8).
pub fn element_bytes(q: u64, m: usize) -> usize {
    match digit_bits(q) {
        Some(b) => (m * b).div_ceil(8),
        None => {
            let top = BigUint::from(q).pow(m as u32) - 1u32;
            (top.bits() as usize).div_ceil(8)
        }
    }
}
