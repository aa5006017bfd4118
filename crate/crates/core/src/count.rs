//! Exact counting functions over big integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("invalid Gaussian binomial arguments")]
    InvalidGaussian,
}

/// `[m k]_q`, the number of k-dimensional subspaces of GF(q)^m.
pub fn gaussian_binomial(m: i64, k: i64, q: u64) -> Result<BigUint, CountError> {
    if k < 0 || m < 0 || k > m || q < 2 {
        return Err(CountError::InvalidGaussian);
    }
    let q = BigUint::from(q);
    let qpow = |n: i64| q.pow(n as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= qpow(m) - qpow(i);
        den *= qpow(k) - qpow(i);
    }
    Ok(num / den)
}

/// `[n 1]_q = 1 + q + ... + q^(n-1)`, zero for `n <= 0`.
pub fn q_int(n: i64, q: u64) -> BigUint {
    if n <= 0 {
        return BigUint::zero();
    }
    gaussian_binomial(n, 1, q).expect("n >= 1")
}

pub fn q_pow(q: u64, n: u32) -> BigUint {
    BigUint::from(q).pow(n)
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Integer determinant by cofactor expansion; the matrices here are at most l x l.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = BigInt::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * determinant(&minor);
                if col % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}
