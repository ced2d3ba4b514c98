//! Floating-point helpers for eigenvalue extraction: polynomial roots,
//! rational reconstruction of roots, and small dense complex solves.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;
use crate::univariate::UniPoly;
use crate::Rational;

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn to_complex(m: &Matrix<Rational>) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c)
}

/// All complex roots of `f` by Durand–Kerner iteration, each polished with
/// a few Newton steps.
pub(crate) fn complex_roots(f: &UniPoly<Rational>) -> Vec<Complex64> {
    let Some(n) = f.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let monic = f.monic();
    let a: Vec<Complex64> = monic.coeffs().iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect();
    let radius = (0..n)
        .map(|k| a[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius / seed.norm().powi(k as i32)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::one();
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-300, 0.0);
            }
            let step = horner(&a, z[k]) / denom;
            z[k] -= step;
            moved = moved.max(step.norm());
        }
        if moved <= 1e-15 * radius {
            break;
        }
    }
    let da: Vec<Complex64> = (1..=n).map(|k| a[k] * k as f64).collect();
    for root in z.iter_mut() {
        for _ in 0..4 {
            let d = horner(&da, *root);
            if d.norm() == 0.0 {
                break;
            }
            *root -= horner(&a, *root) / d;
        }
    }
    z
}

/// Convergents of the continued fraction of `x`, in order.
fn convergents(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    while !den.is_zero() {
        let (a, rem) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        num = std::mem::replace(&mut den, rem);
    }
    out
}

/// `x` rounded to the nearest multiple of `2^-bits`.
fn round_to_bits(x: &Rational, bits: usize) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    Rational::new(scaled.round().to_integer(), scale)
}

/// An exact rational root of `f` near `approx`, if there is one of
/// moderate height. Newton steps are run in exact arithmetic with
/// increasing precision, and each approximation's convergents are tried;
/// only candidates within `1e-6` (relative) of `approx` are accepted.
pub(crate) fn rational_root_near(f: &UniPoly<Rational>, approx: f64) -> Option<Rational> {
    if !approx.is_finite() {
        return None;
    }
    let df = f.derivative();
    let tol = 1e-6 * (1.0 + approx.abs());
    let mut x = Rational::from_float(approx)?;
    for round in 0..6 {
        let bits = 64usize << round;
        let bound = BigInt::one() << (bits / 2);
        for c in convergents(&x) {
            if c.denom() > &bound {
                break;
            }
            if (to_f64(&c) - approx).abs() <= tol && f.eval(&c).is_zero() {
                return Some(c);
            }
        }
        for _ in 0..2 {
            let slope = df.eval(&x);
            if slope.is_zero() {
                return None;
            }
            x = round_to_bits(&(x.clone() - f.eval(&x) / slope), 2 * bits);
        }
    }
    None
}

/// Whether `z` is real up to a relative tolerance.
pub(crate) fn nearly_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-7 * (1.0 + z.re.abs())
}

/// Solve the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Singular pivots are replaced by a tiny value, which is what
/// inverse iteration wants.
pub(crate) fn solve_complex(a: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a.iter().zip(b).map(|(row, &x)| {
        let mut r = row.clone();
        r.push(x);
        r
    }).collect();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        m.swap(col, piv);
        if m[col][col].norm() < 1e-14 * scale {
            m[col][col] = Complex64::new(1e-14 * scale, 0.0);
        }
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f.norm() != 0.0 {
                for c in col..=n {
                    let t = m[col][c];
                    m[r][c] -= f * t;
                }
            }
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n];
        for c in r + 1..n {
            acc -= m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    x
}

/// A unit vector close to the kernel of `m - λ I`.
pub(crate) fn approximate_eigenvector(m: &[Vec<Complex64>], lambda: Complex64) -> Vec<Complex64> {
    let n = m.len();
    let shift = lambda + Complex64::new(1e-10 * (1.0 + lambda.norm()), 0.0);
    let a: Vec<Vec<Complex64>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { m[r][c] - shift } else { m[r][c] }).collect())
        .collect();
    let mut v: Vec<Complex64> = (0..n).map(|k| Complex64::new(1.0, 0.1 * k as f64)).collect();
    for _ in 0..4 {
        v = solve_complex(&a, &v);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            break;
        }
        v.iter_mut().for_each(|z| *z /= norm);
    }
    v
}

pub(crate) fn mat_vec(m: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Least-squares solution of an overdetermined system through the normal
/// equations.
pub(crate) fn least_squares(cols: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
    let k = cols.len();
    let gram: Vec<Vec<Complex64>> = (0..k)
        .map(|i| (0..k).map(|j| cols[i].iter().zip(&cols[j]).map(|(a, c)| a.conj() * c).sum()).collect())
        .collect();
    let rhs: Vec<Complex64> = cols.iter().map(|c| c.iter().zip(b).map(|(a, y)| a.conj() * y).sum()).collect();
    solve_complex(&gram, &rhs)
}

/// `x` has an exact rational `d`-th root; the positive one when `d` is even.
pub(crate) fn rational_root_of(x: &Rational, d: usize) -> Option<Rational> {
    if d == 0 {
        return None;
    }
    if x.is_negative() && d.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(d as u32);
        (num_traits::pow(r.clone(), d) == n.abs()).then_some(r)
    };
    let num = root(x.numer())?;
    let den = root(x.denom())?;
    let out = Rational::new(num, den);
    Some(if x.is_negative() { -out } else { out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(c: &[Rational]) -> UniPoly<Rational> {
        UniPoly::new(c.to_vec())
    }

    #[test]
    fn roots_and_reconstruction() {
        // (x - 1/3)(x + 7/2)(x - 5)
        let f = poly(&[q(35, 6), q(-17, 1), q(-11, 6), q(1, 1)]);
        let mut found: Vec<Rational> = complex_roots(&f)
            .into_iter()
            .map(|z| rational_root_near(&f, z.re).unwrap())
            .collect();
        found.sort();
        assert_eq!(found, vec![q(-7, 2), q(1, 3), q(5, 1)]);
        // x^2 - 2 has no rational root
        let g = poly(&[q(-2, 1), q(0, 1), q(1, 1)]);
        for z in complex_roots(&g) {
            assert!((z.re.abs() - 2f64.sqrt()).abs() < 1e-12);
            assert!(rational_root_near(&g, z.re).is_none());
        }
    }

    #[test]
    fn nearby_root_wins_over_an_early_convergent() {
        // roots 25/16, 2, -9; the convergent 2 of 1.5625 is the wrong root
        let f = poly(&[q(225, 8), q(-463, 16), q(87, 16), q(1, 1)]);
        assert_eq!(rational_root_near(&f, 1.5625000000000002), Some(q(25, 16)));
        assert_eq!(rational_root_near(&f, 1.9999999999999998), Some(q(2, 1)));
    }

    #[test]
    fn complex_pair() {
        let g = poly(&[q(1, 1), q(0, 1), q(1, 1)]);
        let roots = complex_roots(&g);
        assert!(roots.iter().all(|z| !nearly_real(*z) && (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn exact_roots_of_rationals() {
        assert_eq!(rational_root_of(&q(64, 729), 6), Some(q(2, 3)));
        assert_eq!(rational_root_of(&q(-8, 1), 3), Some(q(-2, 1)));
        assert_eq!(rational_root_of(&q(-1, 1), 2), None);
        assert_eq!(rational_root_of(&q(3, 1), 6), None);
    }
}
