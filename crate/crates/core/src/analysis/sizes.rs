//! Key and ciphertext sizes, parameter validation and the published
//! parameter tables.

use std::fmt;

use crate::field::element_bytes;
use crate::trapdoor::{Constraint, ParamSet};

use super::bounds::{epsilon_bound, failure_bound, DecoderShape, FailureBound};

/// Payload sizes in bytes, headers excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeySizes {
    pub pk: u64,
    pub tk: u64,
    pub ct: u64,
}

/// bytes / 1024 rounded to the nearest integer, ties upward.
pub fn kb(bytes: u64) -> u64 {
    (bytes + 512) / 1024
}

/// ceil(count · m · log2(q) / 8).
fn packed_bytes(q: u64, m: usize, count: usize) -> u64 {
    if q.is_power_of_two() {
        let bits = count as u64 * m as u64 * q.trailing_zeros() as u64;
        bits.div_ceil(8)
    } else {
        (count as f64 * m as f64 * (q as f64).log2() / 8.0).ceil() as u64
    }
}

/// pk holds the k·(n+L−k) non-identity entries of the systematic G, ct the
/// N·(n+L) entries of C, and tk the n·(n+L) entries of W plus n support
/// encodings of 4 + w·⌈m·log2(q)/8⌉ bytes each.
pub fn key_sizes(p: &ParamSet) -> KeySizes {
    let cols = p.n + p.l;
    let pk = packed_bytes(p.q, p.m, p.k * (cols - p.k.min(cols)));
    let ct = packed_bytes(p.q, p.m, p.samples * cols);
    let supports = p.n as u64 * (4 + p.w as u64 * element_bytes(p.q, p.m) as u64);
    let tk = packed_bytes(p.q, p.m, p.n * cols) + supports;
    KeySizes { pk, tk, ct }
}

impl ParamSet {
    /// The decoder shape used at inversion: ℓ = n rows, n + L columns.
    pub fn decoder_shape(&self) -> DecoderShape {
        DecoderShape {
            q: self.q,
            m: self.m,
            rows: self.n,
            cols: self.n + self.l,
            w: self.w,
            t: self.t,
            samples: self.samples,
        }
    }
}

/// Outcome of checking a parameter set.
#[derive(Clone, Debug)]
pub struct ParamReport {
    pub params: ParamSet,
    pub constraints: Vec<Constraint>,
    pub failure: Option<FailureBound>,
    pub log2_epsilon: f64,
    pub sizes: KeySizes,
}

impl ParamReport {
    pub fn all_pass(&self) -> bool {
        self.constraints.iter().all(|c| c.pass)
    }

    /// One `key=value` record per constraint.
    pub fn records(&self) -> String {
        self.constraints
            .iter()
            .map(|c| {
                format!(
                    "name={} required=\"{}\" actual=\"{}\" result={}\n",
                    c.name,
                    c.required,
                    c.actual,
                    if c.pass { "PASS" } else { "FAIL" }
                )
            })
            .collect()
    }
}

impl fmt::Display for ParamReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "q={} m={} n={} L={} k={} w={} t={} N={} lambda={}",
            p.q, p.m, p.n, p.l, p.k, p.w, p.t, p.samples, p.lambda
        )?;
        for c in &self.constraints {
            writeln!(f, "  {c}")?;
        }
        if let Some(b) = &self.failure {
            writeln!(
                f,
                "  failure: log2 P_I ≤ {:.2}, log2 P_II ≤ {:.2} (≈ {:.2}), log2 total ≤ {:.2}",
                b.log2_p1, b.log2_p2, b.log2_p2_approx, b.log2_total
            )?;
        }
        writeln!(f, "  log2 epsilon = {:.2}", self.log2_epsilon)?;
        writeln!(
            f,
            "  sizes: pk {} B ({} KB), tk {} B ({} KB), ct {} B ({} KB)",
            self.sizes.pk,
            kb(self.sizes.pk),
            self.sizes.tk,
            kb(self.sizes.tk),
            self.sizes.ct,
            kb(self.sizes.ct)
        )?;
        write!(f, "  note: security level taken from external attack estimates, not certified here")
    }
}

/// Structural checks, the decoding-failure requirement log2 total ≤ −λ and,
/// when `statistical`, log2 ε ≤ −λ.
pub fn validate_params(p: &ParamSet, statistical: bool) -> ParamReport {
    let mut constraints = p.structural_constraints();
    let lambda = -(p.lambda as f64);
    let failure = failure_bound(&p.decoder_shape()).ok();
    constraints.push(Constraint {
        name: "failure_le_2^-lambda",
        required: format!("log2 total ≤ {lambda}"),
        actual: failure.as_ref().map_or("undefined".into(), |b| format!("{:.3}", b.log2_total)),
        pass: failure.as_ref().is_some_and(|b| b.log2_total <= lambda),
    });
    let log2_epsilon = epsilon_bound(p.n, p.k, p.l, p.w, p.m, p.q);
    if statistical {
        constraints.push(Constraint {
            name: "epsilon_le_2^-lambda",
            required: format!("log2 epsilon ≤ {lambda}"),
            actual: format!("{log2_epsilon:.3}"),
            pass: log2_epsilon <= lambda,
        });
    }
    ParamReport { params: *p, constraints, failure, log2_epsilon, sizes: key_sizes(p) }
}

/// A row of the published parameter tables with its printed size columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    /// 1: computational indistinguishability; 2: statistical closeness.
    pub table: u8,
    pub params: ParamSet,
    pub pk_kb: u64,
    pub ct_kb: u64,
}

impl TableRow {
    pub fn statistical(&self) -> bool {
        self.table == 2
    }
}

const fn row(table: u8, lambda: u32, m: usize, l: usize, k: usize, n: usize, w: usize, t: usize, samples: usize, pk_kb: u64, ct_kb: u64) -> TableRow {
    TableRow { table, params: ParamSet { q: 2, m, n, l, k, w, t, samples, lambda }, pk_kb, ct_kb }
}

/// The eight published rows (four per table).
pub const TABLE_ROWS: [TableRow; 8] = [
    row(1, 80, 179, 37, 16, 163, 6, 14, 84, 64, 367),
    row(1, 128, 293, 43, 20, 261, 8, 19, 153, 203, 1664),
    row(1, 192, 443, 59, 27, 391, 9, 26, 237, 618, 5694),
    row(1, 256, 409, 200, 33, 521, 4, 32, 128, 1134, 4608),
    row(2, 80, 499, 59, 17, 163, 16, 13, 208, 212, 2813),
    row(2, 128, 907, 130, 21, 261, 19, 20, 380, 860, 16450),
    row(2, 192, 1657, 234, 29, 391, 26, 28, 728, 3496, 92033),
    row(2, 256, 2707, 129, 36, 521, 35, 35, 1225, 7304, 263116),
];

/// A table row recomputed.
#[derive(Clone, Debug)]
pub struct TableCheck {
    pub row: TableRow,
    pub report: ParamReport,
    pub pk_kb: u64,
    pub ct_kb: u64,
}

impl TableCheck {
    pub fn pk_matches(&self) -> bool {
        self.pk_kb == self.row.pk_kb
    }

    pub fn ct_matches(&self) -> bool {
        self.ct_kb == self.row.ct_kb
    }

    pub fn sizes_match(&self) -> bool {
        self.pk_matches() && self.ct_matches()
    }
}

pub fn check_table() -> Vec<TableCheck> {
    TABLE_ROWS
        .iter()
        .map(|r| {
            let report = validate_params(&r.params, r.statistical());
            TableCheck { row: *r, pk_kb: kb(report.sizes.pk), ct_kb: kb(report.sizes.ct), report }
        })
        .collect()
}
