//! Exact rank of rational matrices.
//!
//! Rows are cleared of denominators and reduced with Bareiss' fraction-free
//! recurrence. An optional modular pass gives a cheap lower bound that is
//! returned directly only when it already certifies full rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Matrix, RankOptions};
use crate::Rational;

/// Scale each row by the lcm of its denominators.
pub fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free elimination. Pivot: first nonzero entry in the
/// current column, scanning rows in order.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Rank of the integer matrix modulo `p`; never exceeds the rational rank.
pub fn modular_rank(a: &[Vec<BigInt>], p: u64) -> usize {
    let big_p = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&big_p).to_u64().unwrap()).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in rank + 1..rows {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul_mod(m[r][c], inv, p);
            for j in c..cols {
                let sub = mul_mod(f, m[rank][j], p);
                m[r][j] = (m[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A prime in `[2^61, 2^62)` drawn from a seeded generator.
pub fn random_prime_62(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

pub fn rational_rank(m: &Matrix<Rational>, opts: &RankOptions) -> usize {
    let ints = integer_rows(m);
    if opts.modular_fastpath {
        let lower = modular_rank(&ints, random_prime_62(opts.seed));
        if lower == m.rows().min(m.cols()) {
            return lower;
        }
    }
    bareiss_rank(ints)
}

pub fn rational_rank_lower_bound(m: &Matrix<Rational>, opts: &RankOptions) -> usize {
    if opts.modular_fastpath {
        modular_rank(&integer_rows(m), random_prime_62(opts.seed))
    } else {
        bareiss_rank(integer_rows(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(bareiss_rank(ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(bareiss_rank(ints(&[&[0; 5], &[0; 5], &[0; 5], &[0; 5]])), 0);
        assert_eq!(bareiss_rank(ints(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        assert_eq!(bareiss_rank(ints(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
    }

    #[test]
    fn modular_rank_can_only_drop() {
        // det = 14, so modulo 7 the rank falls to 1
        let a = ints(&[&[3, 1], &[1, 5]]);
        assert_eq!(bareiss_rank(a.clone()), 2);
        assert_eq!(modular_rank(&a, 7), 1);
        assert_eq!(modular_rank(&a, random_prime_62(3)), 2);
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64(2_305_843_009_213_693_951));
        assert!(!is_prime_u64(2_305_843_009_213_693_953));
        let p = random_prime_62(11);
        assert!(is_prime_u64(p) && p >> 61 == 1);
        assert_eq!(p, random_prime_62(11));
    }
}
