//! Empirical check of the universal family φ_A(x) = x·A over F_{q^m}.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::linalg::MatFqm;

#[derive(Clone, Debug, PartialEq)]
pub struct HashCheck {
    pub collisions: u64,
    pub samples: u64,
    /// 1 / q^{mr}.
    pub target: f64,
    pub exhaustive: bool,
}

impl HashCheck {
    pub fn rate(&self) -> f64 {
        self.collisions as f64 / self.samples as f64
    }

    /// Binomial standard deviation of the rate at the target probability.
    pub fn sigma(&self) -> f64 {
        (self.target * (1.0 - self.target) / self.samples as f64).sqrt()
    }

    pub fn within_three_sigma(&self) -> bool {
        (self.rate() - self.target).abs() <= 3.0 * self.sigma()
    }
}

/// Largest number of (x, y, A) triples enumerated exhaustively.
const EXHAUSTIVE_LIMIT: u128 = 1 << 22;

/// P[x·A = y·A] for x ≠ y in F_{q^m}^n and A uniform n × r. Enumerates
/// every unordered pair and every A when that is small, and otherwise
/// draws `trials` random triples.
pub fn hash_collision_check(n: usize, r: usize, q: u64, m: usize, trials: u64, seed: u64) -> Result<HashCheck> {
    if r >= n {
        return Err(Error::Params(format!("need r < n, got r = {r}, n = {n}")));
    }
    let ctx = FieldCtx::new(q, m, None)?;
    let size = (q as u128).checked_pow(m as u32);
    let target = (q as f64).powi(-((m * r) as i32));
    let vectors = size.and_then(|s| s.checked_pow(n as u32));
    let matrices = size.and_then(|s| s.checked_pow((n * r) as u32));
    if let (Some(v), Some(a)) = (vectors, matrices) {
        if v * (v - 1) / 2 * a <= EXHAUSTIVE_LIMIT {
            return Ok(exhaustive(&ctx, n, r, v as u64, a as u64, target));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut collisions = 0;
    for _ in 0..trials {
        let x = MatFqm::random(&ctx, 1, n, &mut rng);
        let y = loop {
            let y = MatFqm::random(&ctx, 1, n, &mut rng);
            if y != x {
                break y;
            }
        };
        let a = MatFqm::random(&ctx, n, r, &mut rng);
        if x.mat_mul(&a)? == y.mat_mul(&a)? {
            collisions += 1;
        }
    }
    Ok(HashCheck { collisions, samples: trials, target, exhaustive: false })
}

/// The matrix whose entries are the base-(q^m) digits of `idx`.
fn nth_matrix(ctx: &FieldCtx, rows: usize, cols: usize, mut idx: u64) -> MatFqm {
    let q = ctx.q();
    let data = (0..rows * cols)
        .map(|_| {
            let digits: Vec<u8> = (0..ctx.m())
                .map(|_| {
                    let d = (idx % q) as u8;
                    idx /= q;
                    d
                })
                .collect();
            ctx.from_digits(&digits).expect("digits below q")
        })
        .collect();
    MatFqm::from_vec(ctx, rows, cols, data).expect("shape")
}

fn exhaustive(ctx: &FieldCtx, n: usize, r: usize, vectors: u64, matrices: u64, target: f64) -> HashCheck {
    let xs: Vec<MatFqm> = (0..vectors).map(|i| nth_matrix(ctx, 1, n, i)).collect();
    let ys: Vec<MatFqm> = (0..matrices).map(|i| nth_matrix(ctx, n, r, i)).collect();
    let images: Vec<Vec<MatFqm>> =
        xs.iter().map(|x| ys.iter().map(|a| x.mat_mul(a).expect("shape")).collect()).collect();
    let mut collisions = 0;
    let mut samples = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            for k in 0..ys.len() {
                samples += 1;
                if images[i][k] == images[j][k] {
                    collisions += 1;
                }
            }
        }
    }
    HashCheck { collisions, samples, target, exhaustive: true }
}
