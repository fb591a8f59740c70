//! Property checks shared by the proptest suite and the acceptance run.
//! Each returns `Err` with a description on the first violation.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmtf::subspace::{intersect, inverse_scale, product_space, sample_subspace, support_of};
use rmtf::{FieldCtx, Fqm, MatFq, MatFqm, Subspace};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small fields covering binary, odd-prime and extension bases.
pub const FIELDS: &[(u64, usize)] = &[(2, 1), (2, 5), (2, 13), (2, 64), (2, 97), (3, 4), (4, 3), (5, 3), (7, 2), (9, 2)];

pub fn field_axioms(q: u64, m: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    let mut r = rng(seed);
    let (a, b, c) = (f.random(&mut r), f.random(&mut r), f.random(&mut r));
    let add = |x: &Fqm, y: &Fqm| f.add(x, y).unwrap();
    let mul = |x: &Fqm, y: &Fqm| f.mul(x, y).unwrap();
    ensure!(add(&add(&a, &b), &c) == add(&a, &add(&b, &c)), "add not associative in {f:?}");
    ensure!(mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)), "mul not associative in {f:?}");
    ensure!(add(&a, &b) == add(&b, &a), "add not commutative in {f:?}");
    ensure!(mul(&a, &b) == mul(&b, &a), "mul not commutative in {f:?}");
    ensure!(mul(&a, &add(&b, &c)) == add(&mul(&a, &b), &mul(&a, &c)), "not distributive in {f:?}");
    ensure!(add(&a, &f.neg(&a).unwrap()).is_zero(), "additive inverse in {f:?}");
    ensure!(mul(&a, &f.one()) == a && add(&a, &f.zero()) == a, "identities in {f:?}");
    if !a.is_zero() {
        ensure!(mul(&a, &f.inv(&a).unwrap()) == f.one(), "inverse in {f:?}");
    }
    let lin = f.base().add_vec(a.coords(), b.coords());
    ensure!(add(&a, &b).coords() == &lin, "coords not linear in {f:?}");
    ensure!(f.from_coords(a.coords().clone()).unwrap() == a, "coords roundtrip in {f:?}");
    let order = num_bigint::BigUint::from(q).pow(m as u32);
    ensure!(f.pow(&a, &order).unwrap() == a, "a^(q^m) != a in {f:?}");
    Ok(())
}

pub fn rref_properties(q: u64, m: usize, rows: usize, cols: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    let mut r = rng(seed);
    // Low-rank matrices exercise the interesting cases.
    let inner = 1 + (seed as usize % rows.max(1));
    let a = MatFqm::random(&f, rows, inner, &mut r).mat_mul(&MatFqm::random(&f, inner, cols, &mut r)).unwrap();
    let red = a.rref();
    ensure!(red.matrix.rref().matrix == red.matrix, "rref not idempotent");
    ensure!(red.rank == red.pivots.len() && red.rank <= inner, "rank/pivots disagree");
    let b = MatFqm::random(&f, cols, 3, &mut r);
    ensure!(a.mat_mul(&b).unwrap().rank() <= red.rank.min(b.rank()), "rank(AB) > min");
    // Row space preserved: every row of A solves against the RREF rows.
    let basis = MatFqm::from_vec(&f, red.rank, cols, red.matrix.entries()[..red.rank * cols].to_vec()).unwrap();
    if red.rank > 0 {
        ensure!(basis.solve(&a).unwrap().is_some(), "row space changed");
    }
    if let Some(x) = a.solve(&MatFqm::random(&f, 2, cols, &mut r)).unwrap() {
        ensure!(x.mat_mul(&a).unwrap().nrows() == 2, "solve shape");
    }
    let x0 = MatFqm::random(&f, 2, rows, &mut r);
    let b0 = x0.mat_mul(&a).unwrap();
    let x = a.solve(&b0).unwrap().ok_or("consistent system reported unsolvable")?;
    ensure!(x.mat_mul(&a).unwrap() == b0, "solve result does not verify");

    let base = f.base();
    let digits: Vec<u8> = (0..rows * cols).map(|_| base.random_digit(&mut r)).collect();
    let mq = MatFq::from_digits(f.base_arc().clone(), rows, cols, &digits).unwrap();
    let rq = mq.rref();
    ensure!(rq.matrix.rref().matrix == rq.matrix, "F_q rref not idempotent");
    Ok(())
}

fn sample(f: &FieldCtx, dim: usize, r: &mut ChaCha8Rng) -> Subspace {
    sample_subspace(f, dim, r).unwrap()
}

pub fn product_properties(q: u64, m: usize, da: usize, db: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    let mut r = rng(seed);
    let (a, b) = (sample(&f, da.min(m), &mut r), sample(&f, db.min(m), &mut r));
    let ab = product_space(&a, &b).unwrap();
    ensure!(ab == product_space(&b, &a).unwrap(), "product not symmetric");
    ensure!(ab.dim() <= (a.dim() * b.dim()).min(m), "product dimension {} too large", ab.dim());
    ensure!(a.is_subspace_of(&ab) || !b.contains(&f.one()), "A ⊄ A·B although 1 ∈ B");
    // E ⊆ ∩ f_i⁻¹ (E·W) for any basis f_i of W.
    for fi in b.elements() {
        let back = inverse_scale(&fi, &ab).unwrap();
        ensure!(a.is_subspace_of(&back), "A ⊄ f⁻¹·(A·B)");
    }
    Ok(())
}

pub fn inverse_scale_properties(q: u64, m: usize, d: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    let mut r = rng(seed);
    let s = sample(&f, d.min(m), &mut r);
    let mut x = f.random(&mut r);
    while x.is_zero() {
        x = f.random(&mut r);
    }
    let scaled = inverse_scale(&x, &s).unwrap();
    ensure!(scaled.dim() == s.dim(), "dimension changed");
    let back = product_space(&Subspace::span(&f, [&x]).unwrap(), &scaled).unwrap();
    ensure!(back == s, "x·(x⁻¹·S) != S");
    Ok(())
}

fn element_set(s: &Subspace) -> HashSet<Vec<u8>> {
    let f = s.ctx();
    s.enumerate().iter().map(|e| f.encode(e)).collect()
}

/// Intersection against brute-force membership, for q^m ≤ 2^12.
pub fn intersection_properties(q: u64, m: usize, da: usize, db: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    ensure!((q as f64).powi(m as i32) <= 4096.0, "field too large for enumeration");
    let mut r = rng(seed);
    let (a, b) = (sample(&f, da.min(m), &mut r), sample(&f, db.min(m), &mut r));
    let got = intersect(&a, &b).unwrap();
    let ea = element_set(&a);
    let expected: HashSet<Vec<u8>> = element_set(&b).into_iter().filter(|e| ea.contains(e)).collect();
    ensure!(element_set(&got) == expected, "intersection differs from enumeration");
    ensure!(got == intersect(&b, &a).unwrap(), "intersection not symmetric");
    Ok(())
}

/// support_of is invariant under permuting the entries.
pub fn support_canonical(q: u64, m: usize, seed: u64) -> Check {
    let f = FieldCtx::new(q, m, None).map_err(|e| e.to_string())?;
    let mut r = rng(seed);
    let a = MatFqm::random(&f, 2, 3, &mut r);
    let mut entries = a.entries().to_vec();
    entries.shuffle(&mut r);
    let b = MatFqm::from_vec(&f, 3, 2, entries).unwrap();
    ensure!(support_of(&a) == support_of(&b), "support depends on entry order");
    Ok(())
}

/// Rank of a small matrix over a prime field, by elimination mod p.
fn rank_mod_p(rows: &mut [Vec<u8>], p: u8) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let inv = |a: u8| (1..p).find(|&b| (a as u16 * b as u16) % p as u16 == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pr);
        let s = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = ((*x as u16 * s as u16) % p as u16) as u8;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] as u16;
                for j in 0..cols {
                    let sub = (f * rows[rank][j] as u16) % p as u16;
                    rows[r][j] = ((rows[r][j] as u16 + p as u16 - sub) % p as u16) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// counts[w] = number of m × l matrices over F_p of rank w, by enumeration.
pub fn brute_rank_counts(p: u8, m: usize, l: usize) -> Vec<u64> {
    let mut counts = vec![0u64; m.min(l) + 1];
    let total = (p as u64).pow((m * l) as u32);
    let mut rows = vec![vec![0u8; l]; m];
    for idx in 0..total {
        let mut v = idx;
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = (v % p as u64) as u8;
                v /= p as u64;
            }
        }
        counts[rank_mod_p(&mut rows, p)] += 1;
    }
    counts
}
