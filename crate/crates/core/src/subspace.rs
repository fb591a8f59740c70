//! F_q-linear subspaces of F_{q^m}: supports, products, scalar preimages,
//! intersections, sampling, and rank-sphere counting.

use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::codec::Cursor;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fqm};
use crate::fq::FqVec;
use crate::linalg::{rref_rows, MatFq, MatFqm, SpanBuilder};

/// Attempts allowed when resampling until a matrix has full support.
pub const EXACT_SUPPORT_ATTEMPTS: usize = 64;

/// A subspace of F_{q^m} over F_q, stored as its RREF basis. Two subspaces
/// are equal exactly when their basis matrices are identical.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ctx: FieldCtx,
    basis: MatFq,
    pivots: Vec<usize>,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.q().hash(state);
        self.ctx.m().hash(state);
        self.basis.rows().hash(state);
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<u8>> = self.basis.rows().iter().map(FqVec::digits).collect();
        write!(f, "Subspace(dim {}, {:?})", self.dim(), rows)
    }
}

impl Subspace {
    fn from_rref(ctx: &FieldCtx, basis: MatFq) -> Self {
        let pivots = basis.rows().iter().map(|r| r.first_nonzero().expect("nonzero basis row")).collect();
        Self { ctx: ctx.clone(), basis, pivots }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::from_rref(ctx, MatFq::zeros(ctx.base_arc().clone(), 0, ctx.m()))
    }

    /// F_{q^m} itself.
    pub fn full(ctx: &FieldCtx) -> Self {
        Self::from_rref(ctx, MatFq::identity(ctx.base_arc().clone(), ctx.m()))
    }

    /// Span of the given elements.
    pub fn span<'a>(ctx: &FieldCtx, elems: impl IntoIterator<Item = &'a Fqm>) -> Result<Self> {
        let mut sb = SpanBuilder::new(ctx.base_arc().clone(), ctx.m());
        for a in elems {
            ctx.check(a)?;
            sb.insert(a.coords());
        }
        Ok(Self::from_rref(ctx, sb.into_rref()))
    }

    pub(crate) fn span_unchecked<'a>(ctx: &FieldCtx, elems: impl IntoIterator<Item = &'a Fqm>) -> Self {
        let mut sb = SpanBuilder::new(ctx.base_arc().clone(), ctx.m());
        for a in elems {
            sb.insert(a.coords());
            if sb.dim() == ctx.m() {
                break;
            }
        }
        Self::from_rref(ctx, sb.into_rref())
    }

    /// Subspace whose basis is the row space of `rows` (coordinate vectors).
    pub fn from_coordinate_rows(ctx: &FieldCtx, rows: &MatFq) -> Result<Self> {
        if rows.ncols() != ctx.m() || rows.base() != ctx.base() {
            return Err(Error::Shape(format!("basis rows must have {} coordinates", ctx.m())));
        }
        let red = rows.rref();
        let basis = MatFq::from_rows(ctx.base_arc().clone(), ctx.m(), red.matrix.into_rows()[..red.rank].to_vec())?;
        Ok(Self::from_rref(ctx, basis))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// The RREF basis as a `dim × m` matrix over F_q.
    pub fn basis(&self) -> &MatFq {
        &self.basis
    }

    /// The RREF basis rows read as field elements.
    pub fn elements(&self) -> Vec<Fqm> {
        self.basis.rows().iter().map(|r| Fqm(r.clone())).collect()
    }

    /// The fixed basis used by the decoder for this support.
    pub fn canonical_basis(&self) -> SupportBasis {
        SupportBasis { elems: self.elements() }
    }

    /// Coefficients of `a` over the RREF basis, or `None` if `a ∉ self`.
    pub fn coordinates_of(&self, a: &Fqm) -> Option<FqVec> {
        let bf = self.ctx.base();
        let coeffs: Vec<u8> = self.pivots.iter().map(|&p| a.coords().get(p)).collect();
        let mut rest = a.coords().clone();
        for (c, row) in coeffs.iter().zip(self.basis.rows()) {
            bf.axpy(&mut rest, bf.neg(*c), row);
        }
        rest.is_zero().then(|| bf.vec_from_digits(&coeffs).expect("digits in range"))
    }

    pub fn contains(&self, a: &Fqm) -> bool {
        self.coordinates_of(a).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.rows().iter().all(|r| other.contains(&Fqm(r.clone())))
    }

    /// Element with the given coefficients over the RREF basis.
    pub fn combine(&self, coeffs: &FqVec) -> Fqm {
        let bf = self.ctx.base();
        let mut v = bf.zero_vec(self.ctx.m());
        for (i, row) in self.basis.rows().iter().enumerate() {
            bf.axpy(&mut v, coeffs.get(i), row);
        }
        Fqm(v)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Fqm {
        let c = self.ctx.base().random_vec(self.dim(), rng);
        self.combine(&c)
    }

    /// Every element, in lexicographic order of basis coefficients.
    pub fn enumerate(&self) -> Vec<Fqm> {
        let q = self.ctx.q() as usize;
        let total = q.checked_pow(self.dim() as u32).expect("subspace small enough to enumerate");
        (0..total)
            .map(|mut idx| {
                let digits: Vec<u8> = (0..self.dim())
                    .map(|_| {
                        let d = (idx % q) as u8;
                        idx /= q;
                        d
                    })
                    .collect();
                self.combine(&self.ctx.base().vec_from_digits(&digits).expect("digits"))
            })
            .collect()
    }

    /// `dim u16 LE, m u16 LE`, then each basis row in the element encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out);
        out
    }

    pub(crate) fn write(&self, out: &mut Vec<u8>) {
        out.extend((self.dim() as u16).to_le_bytes());
        out.extend((self.ctx.m() as u16).to_le_bytes());
        for r in self.basis.rows() {
            self.ctx.encode_into(&Fqm(r.clone()), out);
        }
    }

    pub fn from_bytes(ctx: &FieldCtx, bytes: &[u8]) -> Result<Self> {
        let mut c = Cursor::new(bytes);
        let s = Self::read(ctx, &mut c)?;
        c.finish()?;
        Ok(s)
    }

    pub(crate) fn read(ctx: &FieldCtx, c: &mut Cursor<'_>) -> Result<Self> {
        let dim = c.u16()? as usize;
        let m = c.u16()? as usize;
        if m != ctx.m() || dim > m {
            return Err(Error::Format(format!("subspace header dim {dim}, m {m} does not fit the field")));
        }
        let rows = (0..dim)
            .map(|_| ctx.decode(c.take(ctx.element_bytes())?).map(Fqm::into_coords))
            .collect::<Result<Vec<_>>>()?;
        let basis = MatFq::from_rows(ctx.base_arc().clone(), m, rows)?;
        let red = basis.rref();
        if red.rank != dim || red.matrix.rows()[..dim] != *basis.rows() {
            return Err(Error::Format("subspace basis is not in canonical form".into()));
        }
        Ok(Self::from_rref(ctx, basis))
    }
}

/// An ordered, linearly independent family f_1, …, f_w spanning a support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportBasis {
    elems: Vec<Fqm>,
}

impl SupportBasis {
    pub fn new(ctx: &FieldCtx, elems: Vec<Fqm>) -> Result<Self> {
        let span = Subspace::span(ctx, &elems)?;
        if span.dim() != elems.len() {
            return Err(Error::InvalidCoords("basis elements are linearly dependent".into()));
        }
        Ok(Self { elems })
    }

    pub fn elements(&self) -> &[Fqm] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn span(&self, ctx: &FieldCtx) -> Subspace {
        Subspace::span_unchecked(ctx, &self.elems)
    }
}

/// The F_q-span of every entry of `m`; its dimension is the rank weight.
pub fn support_of(m: &MatFqm) -> Subspace {
    Subspace::span_unchecked(m.ctx(), m.entries())
}

/// Rank weight of a matrix (dimension of its support).
pub fn rank_weight(m: &MatFqm) -> usize {
    support_of(m).dim()
}

/// Uniform w-dimensional subspace of F_{q^m}.
pub fn sample_subspace<R: Rng + ?Sized>(ctx: &FieldCtx, w: usize, rng: &mut R) -> Result<Subspace> {
    if w > ctx.m() {
        return Err(Error::DimensionTooLarge { requested: w, ambient: ctx.m() });
    }
    // Rejecting vectors already in the span samples a uniform full-rank
    // w×m matrix row by row, whose row space is uniform on the Grassmannian.
    let mut sb = SpanBuilder::new(ctx.base_arc().clone(), ctx.m());
    while sb.dim() < w {
        sb.insert(&ctx.base().random_vec(ctx.m(), rng));
    }
    Ok(Subspace::from_rref(ctx, sb.into_rref()))
}

/// `rows × cols` matrix with i.i.d. entries uniform in `w`. With `exact`,
/// resamples until the entries span all of `w`.
pub fn sample_homogeneous<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    w: &Subspace,
    rng: &mut R,
    exact: bool,
) -> Result<MatFqm> {
    let ctx = w.ctx();
    if exact && rows * cols < w.dim() {
        return Err(Error::ImpossibleSupport(format!(
            "{rows}x{cols} entries cannot span a {}-dimensional support",
            w.dim()
        )));
    }
    for _ in 0..EXACT_SUPPORT_ATTEMPTS {
        let data: Vec<Fqm> = (0..rows * cols).map(|_| w.random_element(rng)).collect();
        let m = MatFqm::from_vec_unchecked(ctx, rows, cols, data);
        if !exact || support_of(&m).dim() == w.dim() {
            return Ok(m);
        }
    }
    Err(Error::BudgetExhausted(EXACT_SUPPORT_ATTEMPTS))
}

/// Matrix whose row i has entries uniform in `supports[i]` and row support
/// exactly `supports[i]`.
pub fn sample_semi_homogeneous<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    supports: &[Subspace],
    rng: &mut R,
) -> Result<MatFqm> {
    if supports.len() != rows {
        return Err(Error::Shape(format!("{} supports for {rows} rows", supports.len())));
    }
    let Some(first) = supports.first() else {
        return Err(Error::Shape("semi-homogeneous matrix needs at least one row".into()));
    };
    let ctx = first.ctx().clone();
    let mut data = Vec::with_capacity(rows * cols);
    for s in supports {
        if s.ctx() != &ctx {
            return Err(Error::ContextMismatch);
        }
        let row = sample_homogeneous(1, cols, s, rng, true)?;
        data.extend_from_slice(row.entries());
    }
    Ok(MatFqm::from_vec_unchecked(&ctx, rows, cols, data))
}

/// A · B, spanned by products of basis elements.
pub fn product_space(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    Ok(product_space_unchecked(a, b))
}

pub(crate) fn product_space_unchecked(a: &Subspace, b: &Subspace) -> Subspace {
    let ctx = a.ctx();
    let mut sb = SpanBuilder::new(ctx.base_arc().clone(), ctx.m());
    'outer: for x in a.basis.rows() {
        for y in b.basis.rows() {
            sb.insert(ctx.mul_raw(&Fqm(x.clone()), &Fqm(y.clone())).coords());
            if sb.dim() == ctx.m() {
                break 'outer;
            }
        }
    }
    Subspace::from_rref(ctx, sb.into_rref())
}

/// { f⁻¹ · u : u ∈ s }.
pub fn inverse_scale(f: &Fqm, s: &Subspace) -> Result<Subspace> {
    let ctx = s.ctx();
    let inv = ctx.inv(f)?;
    Ok(scale_unchecked(&inv, s))
}

pub(crate) fn scale_unchecked(c: &Fqm, s: &Subspace) -> Subspace {
    let ctx = s.ctx();
    let scaled: Vec<Fqm> = s.basis.rows().iter().map(|r| ctx.mul_raw(c, &Fqm(r.clone()))).collect();
    Subspace::span_unchecked(ctx, &scaled)
}

/// A ∩ B by the Zassenhaus algorithm: reduce `[a | a]` and `[b | 0]`; rows
/// whose left half vanishes carry the intersection on the right.
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ctx() != b.ctx() {
        return Err(Error::ContextMismatch);
    }
    Ok(intersect_unchecked(a, b))
}

pub(crate) fn intersect_unchecked(a: &Subspace, b: &Subspace) -> Subspace {
    let ctx = a.ctx();
    if a.dim() == 0 || b.dim() == 0 {
        return Subspace::zero(ctx);
    }
    let m = ctx.m();
    let bf = ctx.base();
    let zero = bf.zero_vec(m);
    let mut rows: Vec<FqVec> = a.basis.rows().iter().map(|r| r.concat(r)).chain(b.basis.rows().iter().map(|r| r.concat(&zero))).collect();
    let pivots = rref_rows(bf, &mut rows, 2 * m);
    let mut sb = SpanBuilder::new(ctx.base_arc().clone(), m);
    for (row, &p) in rows.iter().zip(&pivots) {
        if p >= m {
            sb.insert(&row.slice(m, m));
        }
    }
    Subspace::from_rref(ctx, sb.into_rref())
}

/// Gaussian coefficient: the number of w-dimensional subspaces of F_q^m.
pub fn gaussian_binomial(q: u64, m: usize, w: usize) -> BigUint {
    if w > m {
        return BigUint::ZERO;
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..w {
        num *= q.pow(m as u32) - q.pow(i as u32);
        den *= q.pow(w as u32) - q.pow(i as u32);
    }
    num / den
}

/// Size of the rank sphere of radius w in F_{q^m}^L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSize {
    pub exact: BigUint,
    /// The exponent (L + m)·w − w² of the two-sided estimate.
    pub exponent: u64,
    /// Whether w + 3 ≤ min(L, m), the range where the estimate is proven.
    pub in_hypothesis: bool,
}

impl SphereSize {
    pub fn log2(&self) -> f64 {
        log2_big(&self.exact)
    }

    /// log2 of the lower estimate q^{(L+m)w − w²}.
    pub fn log2_lower(&self, q: u64) -> f64 {
        self.exponent as f64 * (q as f64).log2()
    }

    /// log2 of the upper estimate e^{2/(q−1)} · q^{(L+m)w − w²}.
    pub fn log2_upper(&self, q: u64) -> f64 {
        self.log2_lower(q) + 2.0 / ((q - 1) as f64) * std::f64::consts::LOG2_E
    }

    /// Checks both sides of the estimate: the lower side exactly, the upper
    /// side on the ratio exact / q^exponent.
    pub fn sandwich_holds(&self, q: u64) -> bool {
        let base = BigUint::from(q).pow(self.exponent as u32);
        if self.exact < base {
            return false;
        }
        let scaled: BigUint = (&self.exact << 64u32) / &base;
        let ratio = scaled.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(64);
        ratio <= (2.0 / (q - 1) as f64).exp()
    }
}

/// Number of m × L matrices over F_q of rank w (equivalently, vectors of
/// F_{q^m}^L of rank weight w).
pub fn sphere_size(q: u64, m: usize, l: usize, w: usize) -> Result<SphereSize> {
    crate::fq::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if w > m.min(l) {
        return Err(Error::DimensionTooLarge { requested: w, ambient: m.min(l) });
    }
    let qb = BigUint::from(q);
    let mut exact = gaussian_binomial(q, m, w);
    for i in 0..w {
        exact *= qb.pow(l as u32) - qb.pow(i as u32);
    }
    let exponent = ((l + m) * w - w * w) as u64;
    Ok(SphereSize { exact, exponent, in_hypothesis: w + 3 <= m.min(l) })
}

pub(crate) fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 2, None).unwrap()
    }

    fn el(f: &FieldCtx, d: &[u8]) -> Fqm {
        f.from_digits(d).unwrap()
    }

    #[test]
    fn support_examples() {
        let f = f4();
        let v = MatFqm::from_rows(&f, vec![vec![el(&f, &[1, 0]), el(&f, &[0, 1]), el(&f, &[1, 1])]]).unwrap();
        let s = support_of(&v);
        assert_eq!(s, Subspace::full(&f));
        assert_eq!(support_of(&MatFqm::zeros(&f, 2, 2)).dim(), 0);
        let v = MatFqm::from_rows(&f, vec![vec![f.alpha(), f.alpha()]]).unwrap();
        assert_eq!(support_of(&v), Subspace::span(&f, &[f.alpha()]).unwrap());
    }

    #[test]
    fn product_and_scale_examples() {
        let f16 = FieldCtx::new(2, 4, Some(&[1, 1, 0, 0, 1])).unwrap();
        let a = Subspace::span(&f16, &[f16.one(), f16.alpha()]).unwrap();
        let p = product_space(&a, &a).unwrap();
        let a2 = f16.mul(&f16.alpha(), &f16.alpha()).unwrap();
        assert_eq!(p, Subspace::span(&f16, &[f16.one(), f16.alpha(), a2]).unwrap());
        assert_eq!(p.dim(), 3);
        let one = Subspace::span(&f16, &[f16.one()]).unwrap();
        assert_eq!(product_space(&one, &a).unwrap(), a);
        assert_eq!(product_space(&Subspace::zero(&f16), &a).unwrap().dim(), 0);

        let f = f4();
        let s = Subspace::span(&f, &[f.alpha()]).unwrap();
        assert_eq!(inverse_scale(&f.alpha(), &s).unwrap(), Subspace::span(&f, &[f.one()]).unwrap());
        assert_eq!(inverse_scale(&f.one(), &s).unwrap(), s);
        assert_eq!(inverse_scale(&f.zero(), &s), Err(Error::ZeroInverse));
    }

    #[test]
    fn intersect_examples() {
        let f8 = FieldCtx::new(2, 3, Some(&[1, 1, 0, 1])).unwrap();
        let a2 = f8.mul(&f8.alpha(), &f8.alpha()).unwrap();
        let a = Subspace::span(&f8, &[f8.one(), f8.alpha()]).unwrap();
        let b = Subspace::span(&f8, &[f8.alpha(), a2]).unwrap();
        assert_eq!(intersect(&a, &b).unwrap(), Subspace::span(&f8, &[f8.alpha()]).unwrap());
        assert_eq!(intersect(&a, &a).unwrap(), a);
        assert_eq!(intersect(&a, &Subspace::zero(&f8)).unwrap().dim(), 0);
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_size(2, 2, 2, 1).unwrap().exact, BigUint::from(9u32));
        assert_eq!(sphere_size(2, 3, 3, 3).unwrap().exact, BigUint::from(168u32));
        assert_eq!(sphere_size(5, 4, 7, 0).unwrap().exact, BigUint::one());
        assert!(sphere_size(2, 2, 3, 3).is_err());
        assert_eq!(gaussian_binomial(2, 2, 1), BigUint::from(3u32));
    }

    #[test]
    fn samplers_hit_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FieldCtx::new(2, 4, None).unwrap();
        assert_eq!(sample_subspace(&f, 0, &mut rng).unwrap().dim(), 0);
        assert_eq!(sample_subspace(&f, 4, &mut rng).unwrap(), Subspace::full(&f));
        assert!(sample_subspace(&f, 5, &mut rng).is_err());
        let w = sample_subspace(&f, 2, &mut rng).unwrap();
        let h = sample_homogeneous(3, 3, &w, &mut rng, true).unwrap();
        assert_eq!(support_of(&h), w);
        assert!(sample_homogeneous(1, 1, &w, &mut rng, true).is_err());
        let z = sample_homogeneous(2, 2, &Subspace::zero(&f), &mut rng, false).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn subspace_bytes_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = FieldCtx::new(2, 20, None).unwrap();
        let s = sample_subspace(&f, 5, &mut rng).unwrap();
        let b = s.to_bytes();
        assert_eq!(b.len(), 4 + 5 * 3);
        assert_eq!(Subspace::from_bytes(&f, &b).unwrap(), s);
        assert!(Subspace::from_bytes(&f, &b[..b.len() - 1]).is_err());
    }
}
