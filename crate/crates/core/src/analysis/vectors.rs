use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sim::Vector;

fn mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// `count` uniformly random vectors from ChaCha8 seeded with `seed`.
/// Operand bits and the carry (when `with_cin`) are independent fair coins.
pub fn random_vectors(width: usize, with_cin: bool, count: usize, seed: u64) -> Vec<Vector> {
    let m = mask(width);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen::<u64>() & m;
            let b = rng.gen::<u64>() & m;
            let cin = with_cin.then(|| rng.gen::<bool>());
            Vector { a, b, cin }
        })
        .collect()
}

/// Fixed corner cases: all pairs of {0, all-ones, 0101.., 1010.., 1}, and
/// for every bit `i` the carry-chain pairs `(2^i, 2^i)`, `(all-ones, 2^i)`
/// and `(all-ones << i, 2^i)`. With a carry input each pair runs with both
/// carry values. Duplicates are dropped, first occurrence wins.
pub fn directed_vectors(width: usize, with_cin: bool) -> Vec<Vector> {
    let m = mask(width);
    let corners = [
        0,
        m,
        0x5555_5555_5555_5555 & m,
        0xAAAA_AAAA_AAAA_AAAA & m,
        1 & m,
    ];
    let mut pairs = Vec::new();
    for &a in &corners {
        for &b in &corners {
            pairs.push((a, b));
        }
    }
    for i in 0..width {
        let bit = 1u64 << i;
        pairs.push((bit, bit));
        pairs.push((m, bit));
        pairs.push(((m << i) & m, bit));
    }
    let carries: &[Option<bool>] = if with_cin {
        &[Some(false), Some(true)]
    } else {
        &[None]
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in pairs {
        for &cin in carries {
            let v = Vector { a, b, cin };
            if seen.insert(v) {
                out.push(v);
            }
        }
    }
    out
}
