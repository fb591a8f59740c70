//! The trapdoor function f_G(X, E) = X·G + E.
//!
//! Key generation samples a semi-homogeneous W = [W₁ | W₂] of weight w and
//! publishes G = [R | −R·W₁ᵀ·(W₂⁻¹)ᵀ] in systematic form, so that G·Wᵀ = 0.
//! Inversion decodes W·Cᵀ = W·Eᵀ to obtain E, then reads X off the pivot
//! columns of C − E.

use std::fmt;

use rand::Rng;

use crate::codec::{self, Cursor, Kind};
use crate::decoder::{decode, CheckMatrix};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::MatFqm;
use crate::subspace::{rank_weight, sample_homogeneous, sample_semi_homogeneous, sample_subspace, Subspace};

/// Attempts allowed when resampling W₂ until invertible, and R until G has
/// full rank.
pub const RESAMPLE_ATTEMPTS: usize = 256;

/// Bytes in a key or ciphertext header: magic, version, kind, nine u32.
pub const FILE_HEADER_BYTES: usize = 6 + 9 * 4;

/// (q, m, n, L, k, w, t, N, λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamSet {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    /// L: width of W₁ and of R.
    pub l: usize,
    pub k: usize,
    pub w: usize,
    pub t: usize,
    /// N: rows of X and E.
    pub samples: usize,
    pub lambda: u32,
}

/// One named requirement on a parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: &'static str,
    pub required: String,
    pub actual: String,
    pub pass: bool,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{}: required {}, actual {} [{verdict}]", self.name, self.required, self.actual)
    }
}

impl ParamSet {
    /// The structural requirements key generation relies on.
    pub fn structural_constraints(&self) -> Vec<Constraint> {
        let &ParamSet { q, m, n, l, k, w, t, samples: big_n, lambda: _ } = self;
        let c = |name, required: String, actual: String, pass| Constraint { name, required, actual, pass };
        let positive = [m, n, l, k, w, t, big_n].iter().all(|&x| x > 0);
        vec![
            c(
                "q_prime_power",
                "prime power ≤ 256".into(),
                q.to_string(),
                q <= crate::fq::MAX_Q && crate::fq::prime_power(q).is_some(),
            ),
            c("positive", "m, n, L, k, w, t, N ≥ 1".into(), format!("{m}, {n}, {l}, {k}, {w}, {t}, {big_n}"), positive),
            c("nw_ge_n_plus_L", format!("n·w ≥ {}", n + l), (n * w).to_string(), n * w >= n + l),
            c("N_ge_tw", format!("N ≥ {}", t * w), big_n.to_string(), big_n >= t * w),
            c(
                "regime_2w_minus_1_t_lt_m",
                format!("(2w−1)·t < {m}"),
                ((2 * w).saturating_sub(1) * t).to_string(),
                (2 * w).saturating_sub(1) * t < m,
            ),
            c("k_lt_n_plus_L", format!("k < {}", n + l), k.to_string(), k < n + l),
            c("k_le_L", format!("k ≤ {l}"), k.to_string(), k <= l),
            c("t_le_min_m_n_plus_L", format!("t ≤ {}", m.min(n + l)), t.to_string(), t <= m.min(n + l)),
            c("w_le_m", format!("w ≤ {m}"), w.to_string(), w <= m),
            c("w_le_L", format!("w ≤ {l}"), w.to_string(), w <= l),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let failed: Vec<String> =
            self.structural_constraints().into_iter().filter(|c| !c.pass).map(|c| c.to_string()).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Params(failed.join("; ")))
        }
    }

    /// F_{q^m} with the default modulus.
    pub fn field(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.q, self.m, None)
    }

    fn write_header(&self, out: &mut Vec<u8>, kind: Kind) {
        codec::write_prefix(out, kind);
        for v in [self.q as usize, self.m, self.n, self.l, self.k, self.w, self.t, self.samples, self.lambda as usize] {
            out.extend(u32::try_from(v).expect("parameter fits in u32").to_le_bytes());
        }
    }

    fn read_header<'a>(bytes: &'a [u8], kind: Kind) -> Result<(ParamSet, Cursor<'a>)> {
        let mut c = codec::open(bytes, kind)?;
        let mut v = [0u32; 9];
        for x in v.iter_mut() {
            *x = c.u32()?;
        }
        let p = ParamSet {
            q: v[0] as u64,
            m: v[1] as usize,
            n: v[2] as usize,
            l: v[3] as usize,
            k: v[4] as usize,
            w: v[5] as usize,
            t: v[6] as usize,
            samples: v[7] as usize,
            lambda: v[8],
        };
        p.validate().map_err(|e| Error::Format(format!("header parameters rejected: {e}")))?;
        Ok((p, c))
    }
}

/// G in systematic form: the identity sits on `pivots`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    params: ParamSet,
    g: MatFqm,
    pivots: Vec<usize>,
}

/// W = [W₁ | W₂] with its row supports and decoder data.
#[derive(Clone, Debug)]
pub struct TrapdoorKey {
    params: ParamSet,
    w1: MatFqm,
    w2: MatFqm,
    check: CheckMatrix,
}

impl PartialEq for TrapdoorKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.w1 == other.w1 && self.w2 == other.w2
    }
}

impl Eq for TrapdoorKey {}

/// C = X·G + E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    params: ParamSet,
    c: MatFqm,
}

impl PublicKey {
    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.g.ctx()
    }

    /// The k × (n+L) systematic generator matrix.
    pub fn g(&self) -> &MatFqm {
        &self.g
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn non_pivots(&self) -> Vec<usize> {
        let cols = self.params.n + self.params.l;
        (0..cols).filter(|j| !self.pivots.contains(j)).collect()
    }

    /// Header, k pivot indices as u32, then the k·(n+L−k) non-pivot entries
    /// row-major as one element stream.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.params.write_header(&mut out, Kind::PublicKey);
        for &p in &self.pivots {
            out.extend((p as u32).to_le_bytes());
        }
        let rest = self.g.select_columns(&self.non_pivots());
        codec::encode_stream(self.ctx(), rest.entries(), &mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (params, mut c) = ParamSet::read_header(bytes, Kind::PublicKey)?;
        let ctx = params.field()?;
        let cols = params.n + params.l;
        let pivots = (0..params.k).map(|_| c.u32().map(|p| p as usize)).collect::<Result<Vec<_>>>()?;
        if pivots.windows(2).any(|w| w[0] >= w[1]) || pivots.iter().any(|&p| p >= cols) {
            return Err(Error::Format("pivot columns must be increasing and in range".into()));
        }
        let free = cols - params.k;
        let body = c.take(codec::stream_bytes(&ctx, params.k * free))?;
        c.finish()?;
        let entries = codec::decode_stream(&ctx, body, params.k * free)?;
        let mut g = MatFqm::zeros(&ctx, params.k, cols);
        let pk = PublicKey { params, g: g.clone(), pivots };
        let non_pivots = pk.non_pivots();
        for i in 0..params.k {
            g.set(i, pk.pivots[i], ctx.one())?;
            for (j, &col) in non_pivots.iter().enumerate() {
                g.set(i, col, entries[i * free + j].clone())?;
            }
        }
        // A systematic matrix must vanish on other rows' pivot columns.
        let red = g.rref();
        if red.matrix != g || red.pivots != pk.pivots {
            return Err(Error::Format("public key is not in systematic form".into()));
        }
        Ok(PublicKey { g, ..pk })
    }
}

impl TrapdoorKey {
    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.w1.ctx()
    }

    pub fn w1(&self) -> &MatFqm {
        &self.w1
    }

    pub fn w2(&self) -> &MatFqm {
        &self.w2
    }

    /// W = [W₁ | W₂].
    pub fn w(&self) -> &MatFqm {
        self.check.h()
    }

    pub fn supports(&self) -> &[Subspace] {
        self.check.supports()
    }

    pub fn check_matrix(&self) -> &CheckMatrix {
        &self.check
    }

    fn from_parts(params: ParamSet, w1: MatFqm, w2: MatFqm) -> Result<Self> {
        let check = CheckMatrix::new(w1.hstack(&w2)?, params.w)?;
        Ok(Self { params, w1, w2, check })
    }

    /// Header, n subspace encodings, then W₁ and W₂ row-major as one element
    /// stream.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.params.write_header(&mut out, Kind::TrapdoorKey);
        for s in self.supports() {
            s.write(&mut out);
        }
        codec::encode_stream(self.ctx(), self.w1.entries().iter().chain(self.w2.entries()), &mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (params, mut c) = ParamSet::read_header(bytes, Kind::TrapdoorKey)?;
        let ctx = params.field()?;
        let supports = (0..params.n).map(|_| Subspace::read(&ctx, &mut c)).collect::<Result<Vec<_>>>()?;
        let count = params.n * (params.l + params.n);
        let body = c.take(codec::stream_bytes(&ctx, count))?;
        c.finish()?;
        let mut entries = codec::decode_stream(&ctx, body, count)?;
        let w2 = MatFqm::from_vec(&ctx, params.n, params.n, entries.split_off(params.n * params.l))?;
        let w1 = MatFqm::from_vec(&ctx, params.n, params.l, entries)?;
        let tk = Self::from_parts(params, w1, w2).map_err(|e| Error::Format(format!("trapdoor rows: {e}")))?;
        if tk.supports() != supports.as_slice() {
            return Err(Error::Format("stored supports do not match the trapdoor rows".into()));
        }
        Ok(tk)
    }
}

impl Ciphertext {
    pub fn new(params: ParamSet, c: MatFqm) -> Result<Self> {
        if c.shape() != (params.samples, params.n + params.l) {
            return Err(Error::Shape(format!(
                "ciphertext is {}x{}, expected {}x{}",
                c.nrows(),
                c.ncols(),
                params.samples,
                params.n + params.l
            )));
        }
        Ok(Self { params, c })
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn matrix(&self) -> &MatFqm {
        &self.c
    }

    /// Header, then the N·(n+L) entries row-major as one element stream.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.params.write_header(&mut out, Kind::Ciphertext);
        codec::encode_stream(self.c.ctx(), self.c.entries(), &mut out);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (params, mut c) = ParamSet::read_header(bytes, Kind::Ciphertext)?;
        let ctx = params.field()?;
        let count = params.samples * (params.n + params.l);
        let body = c.take(codec::stream_bytes(&ctx, count))?;
        c.finish()?;
        let entries = codec::decode_stream(&ctx, body, count)?;
        Self::new(params, MatFqm::from_vec(&ctx, params.samples, params.n + params.l, entries)?)
    }
}

/// Samples a key pair.
pub fn gen<R: Rng + ?Sized>(params: &ParamSet, rng: &mut R) -> Result<(PublicKey, TrapdoorKey)> {
    params.validate()?;
    let ctx = params.field()?;
    let &ParamSet { n, l, k, w, .. } = params;
    let supports = (0..n).map(|_| sample_subspace(&ctx, w, rng)).collect::<Result<Vec<_>>>()?;
    let w1 = sample_semi_homogeneous(n, l, &supports, rng)?;
    let (w2, w2_inv) = (|| {
        for _ in 0..RESAMPLE_ATTEMPTS {
            let w2 = sample_semi_homogeneous(n, n, &supports, rng)?;
            if let Some(inv) = w2.inverse()? {
                return Ok((w2, inv));
            }
        }
        Err(Error::BudgetExhausted(RESAMPLE_ATTEMPTS))
    })()?;
    // −W₁ᵀ·(W₂⁻¹)ᵀ = −(W₂⁻¹·W₁)ᵀ, an L × n block.
    let tail = w2_inv.mat_mul(&w1)?.transpose().neg();
    for _ in 0..RESAMPLE_ATTEMPTS {
        let r = MatFqm::random(&ctx, k, l, rng);
        let g = r.hstack(&r.mat_mul(&tail)?)?;
        let red = g.rref();
        if red.rank == k {
            let pk = PublicKey { params: *params, g: red.matrix, pivots: red.pivots };
            let tk = TrapdoorKey::from_parts(*params, w1, w2)?;
            debug_assert!(tk.supports() == supports.as_slice());
            return Ok((pk, tk));
        }
    }
    Err(Error::BudgetExhausted(RESAMPLE_ATTEMPTS))
}

/// C = X·G + E, rejecting E whose support is not exactly t-dimensional.
pub fn eval(pk: &PublicKey, x: &MatFqm, e: &MatFqm) -> Result<Ciphertext> {
    let p = &pk.params;
    if x.shape() != (p.samples, p.k) || e.shape() != (p.samples, p.n + p.l) {
        return Err(Error::Shape(format!(
            "X is {}x{} and E is {}x{}, expected {}x{} and {}x{}",
            x.nrows(),
            x.ncols(),
            e.nrows(),
            e.ncols(),
            p.samples,
            p.k,
            p.samples,
            p.n + p.l
        )));
    }
    let weight = rank_weight(e);
    if weight != p.t {
        return Err(Error::WrongWeight { expected: p.t, got: weight });
    }
    Ciphertext::new(*p, x.mat_mul(&pk.g)?.add(e)?)
}

/// A uniform X and an E homogeneous of weight exactly t with uniform support.
pub fn sample_input<R: Rng + ?Sized>(pk: &PublicKey, rng: &mut R) -> Result<(MatFqm, MatFqm)> {
    let p = &pk.params;
    let ctx = pk.ctx();
    let x = MatFqm::random(ctx, p.samples, p.k, rng);
    let v = sample_subspace(ctx, p.t, rng)?;
    let e = sample_homogeneous(p.samples, p.n + p.l, &v, rng, true)?;
    Ok((x, e))
}

/// Recovers (X, E) from C, verifying X·G + E = C before returning.
pub fn invert(pk: &PublicKey, tk: &TrapdoorKey, ct: &Ciphertext) -> Result<(MatFqm, MatFqm)> {
    if pk.params != tk.params || pk.params != ct.params {
        return Err(Error::Params("key and ciphertext parameters differ".into()));
    }
    if pk.ctx() != ct.c.ctx() || tk.ctx() != pk.ctx() {
        return Err(Error::ContextMismatch);
    }
    let c = &ct.c;
    let s = tk.w().mat_mul(&c.transpose())?;
    let decoded = decode(&tk.check, &s, pk.params.t)?;
    let e = decoded.error.transpose();
    let x = c.sub(&e)?.select_columns(&pk.pivots);
    if x.mat_mul(&pk.g)?.add(&e)? != *c {
        return Err(Error::Inconsistent);
    }
    Ok((x, e))
}
