//! Byte layouts shared by matrices, subspaces, keys and ciphertexts.
//!
//! Every file starts with the magic `RMTF`, a version byte and a kind byte.
//! Integers are little-endian.

use crate::error::{Error, Result};
use crate::field::{digit_bits, FieldCtx, Fqm};
use crate::fq::{words_for, FqVec};
use crate::linalg::MatFqm;

pub const MAGIC: &[u8; 4] = b"RMTF";
pub const VERSION: u8 = 1;

/// Size of the standalone matrix header.
pub const MATRIX_HEADER_BYTES: usize = 16;

/// The object stored after the magic/version prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Kind {
    PublicKey = 1,
    TrapdoorKey = 2,
    Ciphertext = 3,
    Matrix = 4,
}

impl Kind {
    pub fn from_byte(b: u8) -> Result<Self> {
        match b {
            1 => Ok(Kind::PublicKey),
            2 => Ok(Kind::TrapdoorKey),
            3 => Ok(Kind::Ciphertext),
            4 => Ok(Kind::Matrix),
            _ => Err(Error::Format(format!("unknown object kind {b}"))),
        }
    }
}

/// Packs values LSB-first into a byte string.
#[derive(Default)]
pub(crate) struct BitWriter {
    bytes: Vec<u8>,
    acc: u128,
    n: usize,
}

impl BitWriter {
    pub(crate) fn push(&mut self, v: u64, bits: usize) {
        debug_assert!(bits <= 64);
        if bits == 0 {
            return;
        }
        let v = if bits == 64 { v } else { v & ((1u64 << bits) - 1) };
        self.acc |= (v as u128) << self.n;
        self.n += bits;
        while self.n >= 8 {
            self.bytes.push(self.acc as u8);
            self.acc >>= 8;
            self.n -= 8;
        }
    }

    pub(crate) fn finish(mut self) -> Vec<u8> {
        if self.n > 0 {
            self.bytes.push(self.acc as u8);
        }
        self.bytes
    }
}

pub(crate) struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    pub(crate) fn read(&mut self, bits: usize) -> u64 {
        let mut v = 0u128;
        let mut got = 0;
        while got < bits {
            let off = self.pos % 8;
            let take = (8 - off).min(bits - got);
            let b = self.bytes.get(self.pos / 8).copied().unwrap_or(0) as u128;
            v |= ((b >> off) & ((1 << take) - 1)) << got;
            got += take;
            self.pos += take;
        }
        v as u64
    }

    pub(crate) fn rest_is_zero(&self) -> bool {
        let byte = self.pos / 8;
        let off = self.pos % 8;
        if off != 0 && self.bytes.get(byte).is_some_and(|b| b >> off != 0) {
            return false;
        }
        self.bytes[byte + usize::from(off != 0)..].iter().all(|&b| b == 0)
    }
}

/// Bytes used by `count` elements in a contiguous element stream.
pub fn stream_bytes(ctx: &FieldCtx, count: usize) -> usize {
    match digit_bits(ctx.q()) {
        Some(b) => (count * ctx.m() * b).div_ceil(8),
        None => count * ctx.element_bytes(),
    }
}

/// Writes elements back to back. For q a power of two the digits are
/// bit-packed with no per-element padding; otherwise each element uses its
/// standalone encoding.
pub fn encode_stream<'a>(ctx: &FieldCtx, elems: impl IntoIterator<Item = &'a Fqm>, out: &mut Vec<u8>) {
    let m = ctx.m();
    match digit_bits(ctx.q()) {
        Some(b) => {
            let mut w = BitWriter::default();
            for a in elems {
                match a.coords() {
                    FqVec::Bits { words, .. } => {
                        for (i, &word) in words.iter().enumerate() {
                            w.push(word, (m - 64 * i).min(64));
                        }
                    }
                    FqVec::Digits(d) => {
                        for &x in d {
                            w.push(x as u64, b);
                        }
                    }
                }
            }
            out.extend(w.finish());
        }
        None => {
            for a in elems {
                ctx.encode_into(a, out);
            }
        }
    }
}

/// Reads exactly `count` elements written by [`encode_stream`].
pub fn decode_stream(ctx: &FieldCtx, bytes: &[u8], count: usize) -> Result<Vec<Fqm>> {
    let need = stream_bytes(ctx, count);
    if bytes.len() != need {
        return Err(Error::Format(format!("element stream needs {need} bytes, got {}", bytes.len())));
    }
    let m = ctx.m();
    match digit_bits(ctx.q()) {
        Some(b) => {
            let mut r = BitReader::new(bytes);
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let v = if ctx.base().is_binary() {
                    let words = (0..words_for(m)).map(|i| r.read((m - 64 * i).min(64))).collect();
                    FqVec::Bits { len: m, words }
                } else {
                    FqVec::Digits((0..m).map(|_| r.read(b) as u8).collect())
                };
                out.push(ctx.from_coords(v)?);
            }
            if !r.rest_is_zero() {
                return Err(Error::Format("nonzero padding after element stream".into()));
            }
            Ok(out)
        }
        None => bytes.chunks(ctx.element_bytes()).map(|c| ctx.decode(c)).collect(),
    }
}

/// Sequential reader over a byte buffer that reports truncation.
pub(crate) struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    pub(crate) fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let Some(end) = end else {
            return Err(Error::Format(format!("truncated input: needed {n} bytes at offset {}", self.pos)));
        };
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    pub(crate) fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub(crate) fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }

    pub(crate) fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::Format(format!("{} trailing bytes", self.buf.len() - self.pos)))
        }
    }
}

/// Checks magic, version and kind; returns a cursor positioned after them.
pub(crate) fn open(bytes: &[u8], kind: Kind) -> Result<Cursor<'_>> {
    let mut c = Cursor::new(bytes);
    if c.take(4)? != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let v = c.u8()?;
    if v != VERSION {
        return Err(Error::Format(format!("unsupported version {v}")));
    }
    let k = Kind::from_byte(c.u8()?)?;
    if k != kind {
        return Err(Error::Format(format!("expected {kind:?}, found {k:?}")));
    }
    Ok(c)
}

pub(crate) fn write_prefix(out: &mut Vec<u8>, kind: Kind) {
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(kind as u8);
}

fn dim_u32(x: usize) -> u32 {
    u32::try_from(x).expect("dimension fits in u32")
}

impl MatFqm {
    /// Standalone matrix file: 16-byte header, then entries row-major, each in
    /// the single-element encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        let ctx = self.ctx();
        let mut out = Vec::with_capacity(MATRIX_HEADER_BYTES + self.entries().len() * ctx.element_bytes());
        write_prefix(&mut out, Kind::Matrix);
        out.extend(dim_u32(self.nrows()).to_le_bytes());
        out.extend(dim_u32(self.ncols()).to_le_bytes());
        out.extend([0, 0]);
        for a in self.entries() {
            ctx.encode_into(a, &mut out);
        }
        out
    }

    pub fn from_bytes(ctx: &FieldCtx, bytes: &[u8]) -> Result<MatFqm> {
        let mut c = open(bytes, Kind::Matrix)?;
        let rows = c.u32()? as usize;
        let cols = c.u32()? as usize;
        c.take(2)?;
        let n = rows.checked_mul(cols).ok_or_else(|| Error::Format("matrix too large".into()))?;
        let eb = ctx.element_bytes();
        let body = c.take(n.checked_mul(eb).ok_or_else(|| Error::Format("matrix too large".into()))?)?;
        c.finish()?;
        let data = if eb == 0 {
            vec![ctx.zero(); n]
        } else {
            body.chunks(eb).map(|e| ctx.decode(e)).collect::<Result<Vec<_>>>()?
        };
        Ok(MatFqm::from_vec_unchecked(ctx, rows, cols, data))
    }
}
