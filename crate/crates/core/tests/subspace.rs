mod common;

use std::collections::HashMap;

use common::{brute_rank_counts, rng};
use num_bigint::BigUint;
use rmtf::subspace::{sample_homogeneous, sample_semi_homogeneous, sample_subspace, sphere_size, support_of};
use rmtf::{FieldCtx, Subspace};

/// Pearson statistic against a uniform distribution over `counts.len()` cells.
fn chi_square(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

#[test]
fn lines_of_f4_are_uniform() {
    let f = FieldCtx::new(2, 2, None).unwrap();
    let mut r = rng(1);
    let mut seen: HashMap<Subspace, u64> = HashMap::new();
    for _ in 0..3000 {
        *seen.entry(sample_subspace(&f, 1, &mut r).unwrap()).or_default() += 1;
    }
    assert_eq!(seen.len(), 3);
    let counts: Vec<u64> = seen.values().copied().collect();
    // 2 degrees of freedom, p = 0.001.
    assert!(chi_square(&counts) < 13.82, "{counts:?}");
}

#[test]
fn planes_of_f16_are_uniform() {
    let f = FieldCtx::new(2, 4, None).unwrap();
    let mut r = rng(2);
    let mut seen: HashMap<Subspace, u64> = HashMap::new();
    for _ in 0..35_000 {
        *seen.entry(sample_subspace(&f, 2, &mut r).unwrap()).or_default() += 1;
    }
    assert_eq!(seen.len(), 35);
    let counts: Vec<u64> = seen.values().copied().collect();
    // 34 degrees of freedom, p = 0.001.
    assert!(chi_square(&counts) < 65.25, "{counts:?}");
}

#[test]
fn homogeneous_entries_are_uniform_in_support() {
    let f = FieldCtx::new(2, 4, None).unwrap();
    let mut r = rng(3);
    let w = sample_subspace(&f, 2, &mut r).unwrap();
    let elems = w.enumerate();
    let mut counts = vec![0u64; elems.len()];
    for _ in 0..2000 {
        let m = sample_homogeneous(3, 3, &w, &mut r, true).unwrap();
        assert_eq!(support_of(&m), w);
        for e in m.entries() {
            counts[elems.iter().position(|x| x == e).unwrap()] += 1;
        }
    }
    // 3 degrees of freedom, p = 0.001.
    assert!(chi_square(&counts) < 16.27, "{counts:?}");
}

#[test]
fn homogeneous_edge_cases() {
    let f = FieldCtx::new(3, 5, None).unwrap();
    let mut r = rng(4);
    assert!(sample_homogeneous(3, 4, &Subspace::zero(&f), &mut r, true).unwrap().is_zero());
    let w = sample_subspace(&f, 3, &mut r).unwrap();
    for _ in 0..50 {
        assert!(support_of(&sample_homogeneous(2, 2, &w, &mut r, false).unwrap()).is_subspace_of(&w));
    }
    assert!(sample_homogeneous(1, 2, &w, &mut r, true).is_err());
}

#[test]
fn semi_homogeneous_rows_in_f4() {
    let f = FieldCtx::new(2, 2, None).unwrap();
    let mut r = rng(5);
    let ones = Subspace::span(&f, [&f.one()]).unwrap();
    let alphas = Subspace::span(&f, [&f.alpha()]).unwrap();
    for _ in 0..100 {
        let h = sample_semi_homogeneous(2, 2, &[ones.clone(), alphas.clone()], &mut r).unwrap();
        assert!(h.row(0).iter().all(|x| x.is_zero() || *x == f.one()));
        assert!(h.row(1).iter().all(|x| x.is_zero() || *x == f.alpha()));
        assert!(h.row(0).iter().any(|x| !x.is_zero()) && h.row(1).iter().any(|x| !x.is_zero()));
    }
    let same = sample_semi_homogeneous(3, 4, &vec![alphas.clone(); 3], &mut r).unwrap();
    assert_eq!(support_of(&same), alphas);
    let f8 = FieldCtx::new(2, 8, None).unwrap();
    let planes: Vec<Subspace> = (0..4).map(|_| sample_subspace(&f8, 3, &mut r).unwrap()).collect();
    let h = sample_semi_homogeneous(4, 5, &planes, &mut r).unwrap();
    for (i, p) in planes.iter().enumerate() {
        assert_eq!(&Subspace::span(&f8, h.row(i)).unwrap(), p);
    }
    assert!(sample_semi_homogeneous(4, 2, &planes, &mut r).is_err());
    assert!(sample_semi_homogeneous(3, 5, &planes, &mut r).is_err());
}

#[test]
fn sphere_matches_enumeration_small() {
    for (p, m, l) in [(2u8, 2usize, 2usize), (2, 3, 3), (3, 2, 3), (2, 4, 3)] {
        let counts = brute_rank_counts(p, m, l);
        for (w, &c) in counts.iter().enumerate() {
            assert_eq!(sphere_size(p as u64, m, l, w).unwrap().exact, BigUint::from(c), "q={p} m={m} L={l} w={w}");
        }
    }
}

#[test]
fn sandwich_on_a_grid() {
    for q in [2u64, 3, 4, 5] {
        for m in 1..=12 {
            for l in 1..=12 {
                for w in 0..=m.min(l) {
                    let s = sphere_size(q, m, l, w).unwrap();
                    if s.in_hypothesis {
                        assert!(s.sandwich_holds(q), "q={q} m={m} L={l} w={w}");
                        assert!(s.log2() >= s.log2_lower(q) - 1e-9 && s.log2() <= s.log2_upper(q) + 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn subspace_serialization() {
    let mut r = rng(6);
    for (q, m, d) in [(2u64, 13usize, 4usize), (3, 7, 3), (2, 70, 5), (5, 3, 0)] {
        let f = FieldCtx::new(q, m, None).unwrap();
        let s = sample_subspace(&f, d, &mut r).unwrap();
        let b = s.to_bytes();
        assert_eq!(u16::from_le_bytes([b[0], b[1]]) as usize, d);
        assert_eq!(u16::from_le_bytes([b[2], b[3]]) as usize, m);
        assert_eq!(Subspace::from_bytes(&f, &b).unwrap(), s);
    }
}
