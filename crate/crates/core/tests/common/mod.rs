//! Shared helpers for the integration suites: seeded random codes and a
//! brute-force dual-code oracle.

#![allow(dead_code)]

use lattice_theta::codes::{BinaryLinearCode, WeightDistribution};
use num_bigint::BigUint;
use rand::Rng;

/// Random [n, k] code with full-row-rank generator, drawn with rejection.
pub fn random_code<R: Rng>(rng: &mut R, n: usize, k: usize) -> BinaryLinearCode {
    loop {
        let words = n.div_ceil(64);
        let mask_last = if n % 64 == 0 { !0u64 } else { (1u64 << (n % 64)) - 1 };
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| {
                (0..words)
                    .map(|w| {
                        let r: u64 = rng.gen();
                        if w == words - 1 {
                            r & mask_last
                        } else {
                            r
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(code) = BinaryLinearCode::new(n, rows) {
            return code;
        }
    }
}

/// Weight distribution of the dual code by exhaustive search over F₂ⁿ:
/// count every v with G·vᵀ = 0. Independent of the MacWilliams path.
pub fn brute_force_dual_distribution(code: &BinaryLinearCode) -> WeightDistribution {
    let n = code.n();
    assert!(n <= 24, "brute force dual only for small n");
    let mut counts = vec![0u64; n + 1];
    let rows: Vec<u64> = code
        .rows()
        .iter()
        .map(|r| r[0]) // n <= 24 fits one word
        .collect();
    for v in 0u64..(1u64 << n) {
        if rows.iter().all(|r| (r & v).count_ones() % 2 == 0) {
            counts[v.count_ones() as usize] += 1;
        }
    }
    WeightDistribution::new(n, counts.into_iter().map(BigUint::from).collect()).unwrap()
}
