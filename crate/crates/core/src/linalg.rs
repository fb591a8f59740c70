//! Dense matrices over F_q and F_{q^m}.
//!
//! Elimination always takes the first nonzero entry in a column as pivot,
//! so every routine here is deterministic.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fqm};
use crate::fq::{BaseField, FqVec};

/// Output of a row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<M> {
    pub matrix: M,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduces `rows` in place, choosing pivots only among the first `limit`
/// columns. Returns the pivot columns; pivot rows come first.
pub(crate) fn rref_rows(bf: &BaseField, rows: &mut [FqVec], limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut c = 0;
    while r < rows.len() && c < limit {
        let Some(i) = (r..rows.len()).find(|&i| rows[i].get(c) != 0) else {
            c += 1;
            continue;
        };
        rows.swap(i, r);
        let lead = rows[r].get(c);
        if lead != 1 {
            bf.scale(&mut rows[r], bf.inv(lead));
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot, after) = rest.split_first_mut().expect("pivot row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let v = row.get(c);
            if v != 0 {
                bf.axpy_from(row, bf.neg(v), pivot, c);
            }
        }
        pivots.push(c);
        r += 1;
        c += 1;
    }
    pivots
}

/// A dense matrix over F_q stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct MatFq {
    base: Arc<BaseField>,
    cols: usize,
    rows: Vec<FqVec>,
}

impl fmt::Debug for MatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFq {}x{} over F_{}", self.rows.len(), self.cols, self.base.q())?;
        for row in &self.rows {
            writeln!(f, "  {:?}", row.digits())?;
        }
        Ok(())
    }
}

impl MatFq {
    pub fn zeros(base: Arc<BaseField>, rows: usize, cols: usize) -> Self {
        let rows = (0..rows).map(|_| base.zero_vec(cols)).collect();
        Self { base, cols, rows }
    }

    pub fn identity(base: Arc<BaseField>, n: usize) -> Self {
        let mut m = Self::zeros(base, n, n);
        for i in 0..n {
            m.rows[i].set(i, 1);
        }
        m
    }

    pub fn from_rows(base: Arc<BaseField>, cols: usize, rows: Vec<FqVec>) -> Result<Self> {
        for r in &rows {
            let ok = r.len() == cols && matches!(r, FqVec::Bits { .. }) == base.is_binary();
            if !ok {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
        }
        Ok(Self { base, cols, rows })
    }

    /// Row-major digits.
    pub fn from_digits(base: Arc<BaseField>, rows: usize, cols: usize, digits: &[u8]) -> Result<Self> {
        if digits.len() != rows * cols {
            return Err(Error::Shape(format!("{} digits for a {rows}x{cols} matrix", digits.len())));
        }
        let rows = if cols == 0 {
            (0..rows).map(|_| base.zero_vec(0)).collect()
        } else {
            digits.chunks(cols).map(|c| base.vec_from_digits(c)).collect::<Result<Vec<_>>>()?
        };
        Ok(Self { base, cols, rows })
    }

    pub fn random<R: Rng + ?Sized>(base: Arc<BaseField>, rows: usize, cols: usize, rng: &mut R) -> Self {
        let rows = (0..rows).map(|_| base.random_vec(cols, rng)).collect();
        Self { base, cols, rows }
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[FqVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &FqVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<FqVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.rows[i].set(j, v);
    }

    pub fn rref(&self) -> Rref<MatFq> {
        self.rref_limited(self.cols)
    }

    /// Row reduction with pivots restricted to the first `limit` columns;
    /// used for augmented systems `[A | B]`.
    pub fn rref_limited(&self, limit: usize) -> Rref<MatFq> {
        let mut rows = self.rows.clone();
        let pivots = rref_rows(&self.base, &mut rows, limit.min(self.cols));
        Rref { rank: pivots.len(), pivots, matrix: Self { base: self.base.clone(), cols: self.cols, rows } }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.base.clone(), self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                let v = row.get(j);
                if v != 0 {
                    t.rows[j].set(i, v);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &MatFq) -> Result<MatFq> {
        if self.cols != other.nrows() || self.base != other.base {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let bf = &self.base;
        let rows = self
            .rows
            .iter()
            .map(|a| {
                let mut out = bf.zero_vec(other.cols);
                for (k, b) in other.rows.iter().enumerate() {
                    bf.axpy(&mut out, a.get(k), b);
                }
                out
            })
            .collect();
        Ok(Self { base: self.base.clone(), cols: other.cols, rows })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &MatFq) -> Result<MatFq> {
        if self.nrows() != other.nrows() {
            return Err(Error::Shape(format!("cannot join {} rows with {} rows", self.nrows(), other.nrows())));
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.concat(b)).collect();
        Ok(Self { base: self.base.clone(), cols: self.cols + other.cols, rows })
    }

    /// Columns `start..start + len`.
    pub fn columns(&self, start: usize, len: usize) -> MatFq {
        let rows = self.rows.iter().map(|r| r.slice(start, len)).collect();
        Self { base: self.base.clone(), cols: len, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(FqVec::is_zero)
    }

    /// Left-solves `x · self = b` for a row vector x, returning one solution
    /// (free variables set to zero) or `None` when inconsistent.
    pub fn solve_left_vec(&self, b: &FqVec) -> Option<FqVec> {
        let system = self.transpose();
        let col = MatFq { base: self.base.clone(), cols: 1, rows: b.digits().iter().map(|&d| self.base.vec_from_digits(&[d]).expect("digit")).collect() };
        let aug = system.hstack(&col).ok()?;
        let red = aug.rref_limited(system.cols);
        if red.matrix.rows[red.rank..].iter().any(|r| r.get(system.cols) != 0) {
            return None;
        }
        let mut x = self.base.zero_vec(self.nrows());
        for (i, &p) in red.pivots.iter().enumerate() {
            x.set(p, red.matrix.rows[i].get(system.cols));
        }
        Some(x)
    }
}

/// Incrementally maintained echelon basis of a span of F_q vectors.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    base: Arc<BaseField>,
    len: usize,
    basis: Vec<(usize, FqVec)>,
}

impl SpanBuilder {
    pub fn new(base: Arc<BaseField>, len: usize) -> Self {
        Self { base, len, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, mut v: FqVec) -> FqVec {
        for (p, b) in &self.basis {
            let c = v.get(*p);
            if c != 0 {
                self.base.axpy(&mut v, self.base.neg(c), b);
            }
        }
        v
    }

    pub fn contains(&self, v: &FqVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &FqVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        if self.basis.len() == self.len {
            return false;
        }
        let mut v = self.reduce(v.clone());
        let Some(p) = v.first_nonzero() else {
            return false;
        };
        let lead = v.get(p);
        if lead != 1 {
            self.base.scale(&mut v, self.base.inv(lead));
        }
        self.basis.push((p, v));
        true
    }

    /// Canonical RREF basis of the span.
    pub fn into_rref(self) -> MatFq {
        let mut rows: Vec<FqVec> = self.basis.into_iter().map(|(_, v)| v).collect();
        rref_rows(&self.base, &mut rows, self.len);
        rows.sort_by_key(|r| r.first_nonzero());
        MatFq { base: self.base, cols: self.len, rows }
    }
}

/// A dense row-major matrix over F_{q^m}.
#[derive(Clone, PartialEq, Eq)]
pub struct MatFqm {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<Fqm>,
}

impl fmt::Debug for MatFqm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatFqm {}x{} over {:?}", self.rows, self.cols, self.ctx)
    }
}

fn shape_err(op: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::Shape(format!("{op}: {}x{} and {}x{}", a.0, a.1, b.0, b.1))
}

impl MatFqm {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        Self { ctx: ctx.clone(), rows, cols, data: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = ctx.one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking each against `ctx`.
    pub fn from_vec(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Fqm>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for a in &data {
            ctx.check(a)?;
        }
        Ok(Self { ctx: ctx.clone(), rows, cols, data })
    }

    pub(crate) fn from_vec_unchecked(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<Fqm>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { ctx: ctx.clone(), rows, cols, data }
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<Fqm>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn random<R: Rng + ?Sized>(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| ctx.random(rng)).collect();
        Self { ctx: ctx.clone(), rows, cols, data }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Fqm] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Fqm {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fqm) -> Result<()> {
        self.ctx.check(&v)?;
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Fqm] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Fqm::is_zero)
    }

    fn check_same(&self, other: &MatFqm) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::ContextMismatch)
        } else {
            Ok(())
        }
    }

    pub fn mat_mul(&self, other: &MatFqm) -> Result<MatFqm> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(shape_err("mat_mul", self.shape(), other.shape()));
        }
        let f = &self.ctx;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        let cols = other.transpose();
        for i in 0..self.rows {
            let a = self.row(i);
            for j in 0..other.cols {
                data.push(f.dot_raw(a.iter().zip(cols.row(j))));
            }
        }
        Ok(Self { ctx: f.clone(), rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &MatFqm) -> Result<MatFqm> {
        self.zip(other, "add", |f, a, b| f.add_raw(a, b))
    }

    pub fn sub(&self, other: &MatFqm) -> Result<MatFqm> {
        self.zip(other, "sub", |f, a, b| f.sub_raw(a, b))
    }

    fn zip(&self, other: &MatFqm, op: &str, g: impl Fn(&FieldCtx, &Fqm, &Fqm) -> Fqm) -> Result<MatFqm> {
        self.check_same(other)?;
        if self.shape() != other.shape() {
            return Err(shape_err(op, self.shape(), other.shape()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| g(&self.ctx, a, b)).collect();
        Ok(Self { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> MatFqm {
        let data = self.data.iter().map(|a| self.ctx.neg_raw(a)).collect();
        Self { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> MatFqm {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self { ctx: self.ctx.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &MatFqm) -> Result<MatFqm> {
        self.check_same(other)?;
        if self.rows != other.rows {
            return Err(shape_err("hstack", self.shape(), other.shape()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Columns `start..start + len`.
    pub fn columns(&self, start: usize, len: usize) -> MatFqm {
        self.select_columns(&(start..start + len).collect::<Vec<_>>())
    }

    pub fn select_columns(&self, idx: &[usize]) -> MatFqm {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            data.extend(idx.iter().map(|&j| self.get(i, j).clone()));
        }
        Self { ctx: self.ctx.clone(), rows: self.rows, cols: idx.len(), data }
    }

    pub fn rref(&self) -> Rref<MatFqm> {
        self.rref_limited(self.cols)
    }

    /// Row reduction with pivots restricted to the first `limit` columns.
    pub fn rref_limited(&self, limit: usize) -> Rref<MatFqm> {
        let f = &self.ctx;
        let mut a = self.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(cols) {
            if r == a.rows {
                break;
            }
            let Some(i) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if i != r {
                for j in 0..cols {
                    a.data.swap(i * cols + j, r * cols + j);
                }
            }
            let inv = f.inv_raw(a.get(r, c)).expect("nonzero pivot");
            for j in c..cols {
                let v = &a.data[r * cols + j];
                if !v.is_zero() {
                    a.data[r * cols + j] = f.mul_raw(v, &inv);
                }
            }
            let pivot_row: Vec<(usize, Fqm)> =
                a.row(r)[c..].iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(o, p)| (c + o, p.clone())).collect();
            let mut scratch = Vec::new();
            for i2 in 0..a.rows {
                if i2 == r {
                    continue;
                }
                let factor = a.get(i2, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for (j, p) in &pivot_row {
                    f.sub_mul_assign_raw(&mut a.data[i2 * cols + j], &factor, p, &mut scratch);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: pivots.len(), pivots, matrix: a }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Left-solves `X · self = b`. Returns the unique solution when `self`
    /// has full row rank, some solution otherwise, and `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &MatFqm) -> Result<Option<MatFqm>> {
        self.check_same(b)?;
        if self.cols != b.cols {
            return Err(shape_err("solve", self.shape(), b.shape()));
        }
        let at = self.transpose();
        let aug = at.hstack(&b.transpose())?;
        let red = aug.rref_limited(self.rows);
        let m = &red.matrix;
        for i in red.rank..m.rows {
            if (self.rows..m.cols).any(|j| !m.get(i, j).is_zero()) {
                return Ok(None);
            }
        }
        let mut xt = MatFqm::zeros(&self.ctx, self.rows, b.rows);
        for (i, &p) in red.pivots.iter().enumerate() {
            for j in 0..b.rows {
                xt.data[p * b.rows + j] = m.get(i, self.rows + j).clone();
            }
        }
        Ok(Some(xt.transpose()))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<MatFqm>> {
        if self.rows != self.cols {
            return Err(shape_err("inverse", self.shape(), self.shape()));
        }
        let aug = self.hstack(&MatFqm::identity(&self.ctx, self.rows))?;
        let red = aug.rref_limited(self.cols);
        if red.rank < self.rows {
            return Ok(None);
        }
        Ok(Some(red.matrix.columns(self.cols, self.cols)))
    }

    /// Expands a linear map whose unknowns range over F_q: each F_{q^m}
    /// equation row becomes m F_q rows (coordinate i of every entry), so row
    /// `e·m + i` of the result is coordinate i of equation e.
    pub fn expand_to_base(&self) -> MatFq {
        let m = self.ctx.m();
        let base = self.ctx.base_arc().clone();
        let mut out = MatFq::zeros(base, self.rows * m, self.cols);
        for e in 0..self.rows {
            for (u, a) in self.row(e).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for i in 0..m {
                    let d = a.coords().get(i);
                    if d != 0 {
                        out.set(e * m + i, u, d);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, 2, None).unwrap()
    }

    #[test]
    fn product_examples() {
        let f = f4();
        let a = MatFqm::from_rows(&f, vec![vec![f.alpha()]]).unwrap();
        let aa = a.mat_mul(&a).unwrap();
        assert_eq!(aa.get(0, 0), &f.add(&f.alpha(), &f.one()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let b = MatFqm::random(&f, 3, 4, &mut rng);
        assert_eq!(b.mat_mul(&MatFqm::identity(&f, 4)).unwrap(), b);
        let x = MatFqm::zeros(&f, 2, 3);
        let y = MatFqm::zeros(&f, 2, 2);
        assert!(matches!(x.mat_mul(&y), Err(Error::Shape(_))));
    }

    #[test]
    fn rref_examples() {
        let f = f4();
        let id = MatFqm::identity(&f, 3);
        let r = id.rref();
        assert_eq!((r.matrix, r.rank, r.pivots), (id, 3, vec![0, 1, 2]));
        let a = f.alpha();
        let a1 = f.add(&a, &f.one()).unwrap();
        let m = MatFqm::from_rows(&f, vec![vec![f.one(), a.clone()], vec![a, a1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(MatFqm::zeros(&f, 2, 3).rank(), 0);
    }

    #[test]
    fn solve_examples() {
        let f = FieldCtx::new(2, 8, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = MatFqm::random(&f, 2, 3, &mut rng);
        assert_eq!(MatFqm::identity(&f, 3).solve(&b).unwrap(), Some(b));
        let a = loop {
            let a = MatFqm::random(&f, 3, 6, &mut rng);
            if a.rank() == 3 {
                break a;
            }
        };
        let x0 = MatFqm::random(&f, 4, 3, &mut rng);
        let b = x0.mat_mul(&a).unwrap();
        assert_eq!(a.solve(&b).unwrap(), Some(x0));
        let outside = loop {
            let v = MatFqm::random(&f, 1, 6, &mut rng);
            let stacked = MatFqm::from_vec(&f, 4, 6, [a.entries(), v.entries()].concat()).unwrap();
            if stacked.rank() == 4 {
                break v;
            }
        };
        assert_eq!(a.solve(&outside).unwrap(), None);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldCtx::new(3, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = MatFqm::random(&f, 5, 5, &mut rng);
        let inv = a.inverse().unwrap().expect("random 5x5 over F_81 is invertible for this seed");
        assert_eq!(a.mat_mul(&inv).unwrap(), MatFqm::identity(&f, 5));
    }

    #[test]
    fn expand_examples() {
        let f = f4();
        let one = f.one();
        let a1 = f.add(&f.alpha(), &one).unwrap();
        let lhs = MatFqm::from_rows(&f, vec![vec![one.clone()]]).unwrap().expand_to_base();
        let rhs = MatFqm::from_rows(&f, vec![vec![a1.clone()]]).unwrap().expand_to_base();
        assert_eq!(lhs.solve_left_vec_col(&rhs), None);
        let lhs = MatFqm::from_rows(&f, vec![vec![one, f.alpha()]]).unwrap().expand_to_base();
        assert_eq!(lhs.solve_left_vec_col(&rhs).map(|v| v.digits()), Some(vec![1, 1]));
        assert!(MatFqm::zeros(&f, 2, 3).expand_to_base().is_zero());
    }

    impl MatFq {
        /// Solves `self · x = rhs` for a single column `rhs`.
        fn solve_left_vec_col(&self, rhs: &MatFq) -> Option<FqVec> {
            let b = rhs.transpose().rows[0].clone();
            self.transpose().solve_left_vec(&b)
        }
    }

    #[test]
    fn span_builder_matches_rref() {
        let bf = Arc::new(BaseField::new(3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = MatFq::random(bf.clone(), 6, 5, &mut rng);
        let mut sb = SpanBuilder::new(bf, 5);
        for r in m.rows() {
            sb.insert(r);
        }
        let red = m.rref();
        assert_eq!(sb.dim(), red.rank);
        assert_eq!(sb.into_rref().rows(), &red.matrix.rows()[..red.rank]);
    }
}
