//! Two-step decoding of `S = H·E` for a semi-homogeneous H.
//!
//! Step I recovers the support of E by intersecting scalar preimages of a
//! syndrome row's support. Step II expresses every syndrome entry over the
//! products f_i·ε_j and solves the resulting F_q system for the coordinates
//! of E over the recovered basis ε_1, …, ε_t.

use log::debug;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::fq::FqVec;
use crate::linalg::{rref_rows, MatFqm};
use crate::subspace::{intersect_unchecked, product_space_unchecked, scale_unchecked, support_of, Subspace, SupportBasis};

/// Which half of the decoder gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    SupportRecovery,
    CoefficientRecovery,
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Step::SupportRecovery => "I",
            Step::CoefficientRecovery => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    #[error("no syndrome row produced a support of the target dimension")]
    SupportRecovery,
    #[error("product space for row {row} is too small")]
    ProductDimension { row: usize },
    #[error("syndrome entry ({row}, {col}) lies outside the product space")]
    OutsideProductSpace { row: usize, col: usize },
    #[error("coefficient system has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("coefficient system is inconsistent")]
    InconsistentSystem,
    #[error("recovered error does not reproduce the syndrome")]
    Verification,
}

impl DecodeFailure {
    /// The step that failed; `None` for the final consistency check.
    pub fn step(&self) -> Option<Step> {
        match self {
            DecodeFailure::SupportRecovery => Some(Step::SupportRecovery),
            DecodeFailure::Verification => None,
            _ => Some(Step::CoefficientRecovery),
        }
    }
}

/// A semi-homogeneous parity-check matrix together with the data the
/// decoder reads from it: row supports, one fixed basis per support, and the
/// coordinates ν of every entry over its row's basis.
#[derive(Clone, Debug)]
pub struct CheckMatrix {
    h: MatFqm,
    w: usize,
    supports: Vec<Subspace>,
    bases: Vec<SupportBasis>,
    /// `nu[r][d]` has length w.
    nu: Vec<Vec<FqVec>>,
}

impl CheckMatrix {
    /// Wraps `h`, requiring every row support to have dimension exactly `w`.
    /// The basis of each support is its RREF basis.
    pub fn new(h: MatFqm, w: usize) -> Result<Self> {
        let ctx = h.ctx().clone();
        let mut supports = Vec::with_capacity(h.nrows());
        let mut bases = Vec::with_capacity(h.nrows());
        let mut nu = Vec::with_capacity(h.nrows());
        for r in 0..h.nrows() {
            let s = Subspace::span_unchecked(&ctx, h.row(r));
            if s.dim() != w {
                return Err(Error::WrongWeight { expected: w, got: s.dim() });
            }
            nu.push(h.row(r).iter().map(|a| s.coordinates_of(a).expect("entry lies in its row support")).collect());
            bases.push(s.canonical_basis());
            supports.push(s);
        }
        Ok(Self { h, w, supports, bases, nu })
    }

    pub fn h(&self) -> &MatFqm {
        &self.h
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.h.ctx()
    }

    pub fn rows(&self) -> usize {
        self.h.nrows()
    }

    pub fn cols(&self) -> usize {
        self.h.ncols()
    }

    pub fn weight(&self) -> usize {
        self.w
    }

    pub fn supports(&self) -> &[Subspace] {
        &self.supports
    }

    pub fn bases(&self) -> &[SupportBasis] {
        &self.bases
    }

    /// ν^{(r,d)}: coordinates of h_{r,d} over the basis of row r.
    pub fn nu(&self, r: usize, d: usize) -> &FqVec {
        &self.nu[r][d]
    }

    fn check_syndrome(&self, s: &MatFqm) -> Result<()> {
        if s.ctx() != self.ctx() {
            return Err(Error::ContextMismatch);
        }
        if s.nrows() != self.rows() {
            return Err(Error::Shape(format!("syndrome has {} rows, check matrix has {}", s.nrows(), self.rows())));
        }
        Ok(())
    }
}

/// A successful decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    /// E, of shape n_cols × N.
    pub error: MatFqm,
    pub support: Subspace,
    /// The basis ε_1, …, ε_t the coefficients were solved over.
    pub basis: SupportBasis,
    /// Syndrome row whose candidate support was accepted.
    pub row: usize,
}

/// ∩_i f_i⁻¹ · supp(s_r), stopping early once the dimension drops below
/// `stop_below`.
fn candidate(h: &CheckMatrix, s: &MatFqm, r: usize, stop_below: usize) -> Subspace {
    let ctx = h.ctx();
    let sr = Subspace::span_unchecked(ctx, s.row(r));
    let mut acc: Option<Subspace> = None;
    for f in h.bases[r].elements() {
        let inv = ctx.inv_raw(f).expect("basis elements are nonzero");
        let part = scale_unchecked(&inv, &sr);
        let next = match acc {
            None => part,
            Some(a) => intersect_unchecked(&a, &part),
        };
        if next.dim() < stop_below {
            return next;
        }
        acc = Some(next);
    }
    acc.unwrap_or_else(|| Subspace::full(ctx))
}

/// The full intersection ∩_i f_i⁻¹ · supp(s_r) for one row.
pub fn row_candidate(h: &CheckMatrix, s: &MatFqm, r: usize) -> Result<Subspace> {
    h.check_syndrome(s)?;
    Ok(candidate(h, s, r, 0))
}

/// Step I: the first row r whose candidate has dimension exactly t.
pub fn recover_support(h: &CheckMatrix, s: &MatFqm, t: usize) -> Result<(Subspace, usize)> {
    h.check_syndrome(s)?;
    if t == 0 {
        return Err(Error::Params("target support dimension must be at least 1".into()));
    }
    for r in 0..h.rows() {
        let c = candidate(h, s, r, t);
        if c.dim() == t {
            return Ok((c, r));
        }
    }
    Err(DecodeFailure::SupportRecovery.into())
}

/// Step II: solve for E given its support.
pub fn recover_coefficients(h: &CheckMatrix, s: &MatFqm, support: &Subspace) -> Result<MatFqm> {
    h.check_syndrome(s)?;
    if support.ctx() != h.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = h.ctx();
    let bf = ctx.base();
    let m = ctx.m();
    let w = h.w;
    let t = support.dim();
    let tw = t * w;
    let (l, n, big_n) = (h.rows(), h.cols(), s.ncols());
    let eps = support.elements();

    // sigma[r][c] holds the coefficients of s_{r,c} over f_i·ε_j at index i·t + j.
    let mut sigma: Vec<Vec<FqVec>> = Vec::with_capacity(l);
    for r in 0..l {
        if product_space_unchecked(support, &h.supports[r]).dim() != tw {
            return Err(DecodeFailure::ProductDimension { row: r }.into());
        }
        let mut rows: Vec<FqVec> = Vec::with_capacity(tw);
        for f in h.bases[r].elements() {
            for e in &eps {
                let mut unit = bf.zero_vec(tw);
                unit.set(rows.len(), 1);
                rows.push(ctx.mul_raw(f, e).into_coords().concat(&unit));
            }
        }
        let pivots = rref_rows(bf, &mut rows, m);
        debug_assert_eq!(pivots.len(), tw);
        let mut per_col = Vec::with_capacity(big_n);
        let zeros = bf.zero_vec(tw);
        for c in 0..big_n {
            // Eliminating [s | 0] leaves [0 | −σ] when s lies in the span.
            let mut v = s.get(r, c).coords().concat(&zeros);
            for (row, &p) in rows.iter().zip(&pivots) {
                let a = v.get(p);
                if a != 0 {
                    bf.axpy(&mut v, bf.neg(a), row);
                }
            }
            if v.first_nonzero().is_some_and(|i| i < m) {
                return Err(DecodeFailure::OutsideProductSpace { row: r, col: c }.into());
            }
            let mut coeffs = v.slice(m, tw);
            bf.scale(&mut coeffs, bf.neg(1));
            per_col.push(coeffs);
        }
        sigma.push(per_col);
    }

    // [M | RHS] with M[(r,i), d] = ν^{(r,d)}_i and one RHS column per (c, j).
    let rhs_cols = big_n * t;
    let mut system: Vec<FqVec> = Vec::with_capacity(l * w);
    for r in 0..l {
        for i in 0..w {
            let mut row = bf.zero_vec(n + rhs_cols);
            for d in 0..n {
                let v = h.nu[r][d].get(i);
                if v != 0 {
                    row.set(d, v);
                }
            }
            for c in 0..big_n {
                for j in 0..t {
                    let v = sigma[r][c].get(i * t + j);
                    if v != 0 {
                        row.set(n + c * t + j, v);
                    }
                }
            }
            system.push(row);
        }
    }
    let pivots = rref_rows(bf, &mut system, n);
    if pivots.len() < n {
        return Err(DecodeFailure::RankDeficient { rank: pivots.len() * t, expected: n * t }.into());
    }
    if system[n..].iter().any(|row| !row.is_zero()) {
        return Err(DecodeFailure::InconsistentSystem.into());
    }

    let mut data = Vec::with_capacity(n * big_n);
    for row in system.iter().take(n) {
        for c in 0..big_n {
            let mut e = ctx.zero();
            for (j, eps_j) in eps.iter().enumerate() {
                let x = row.get(n + c * t + j);
                if x != 0 {
                    ctx.add_assign_raw(&mut e, &ctx.scale_raw(eps_j, x));
                }
            }
            data.push(e);
        }
    }
    Ok(MatFqm::from_vec_unchecked(ctx, n, big_n, data))
}

/// Whether (ℓ, n_cols, w, t, N, m) lies in the regime the failure bound
/// covers: ℓ < n_cols ≤ ℓw, N ≥ tw and (2w − 1)t < m.
pub fn in_regime(l: usize, n_cols: usize, w: usize, t: usize, big_n: usize, m: usize) -> bool {
    l < n_cols && n_cols <= l * w && big_n >= t * w && (2 * w).saturating_sub(1) * t < m
}

/// Runs both steps and re-checks `H·E = S`.
pub fn decode(h: &CheckMatrix, s: &MatFqm, t: usize) -> Result<Decoded> {
    h.check_syndrome(s)?;
    if !in_regime(h.rows(), h.cols(), h.w, t, s.ncols(), h.ctx().m()) {
        debug!(
            "decoding outside the analysed regime: l={} n_cols={} w={} t={} N={} m={}",
            h.rows(),
            h.cols(),
            h.w,
            t,
            s.ncols(),
            h.ctx().m()
        );
    }
    let (support, row) = recover_support(h, s, t)?;
    let error = recover_coefficients(h, s, &support)?;
    if h.h.mat_mul(&error)? != *s || support_of(&error).dim() != t {
        return Err(DecodeFailure::Verification.into());
    }
    let basis = support.canonical_basis();
    Ok(Decoded { error, support, basis, row })
}

impl Error {
    /// The decoder step behind this error, if it is a decoding failure.
    pub fn decode_step(&self) -> Option<Step> {
        match self {
            Error::Decode(f) => f.step(),
            _ => None,
        }
    }
}
