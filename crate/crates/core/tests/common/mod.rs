//! Oracles shared by the integration tests, independent of the library code paths.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use supervol::exactnum::Matrix;
use supervol::Rational;

/// Pascal's triangle.
pub fn binom(n: u64, k: u64) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row.get(k as usize).cloned().unwrap_or_default()
}

/// Laplace expansion along the first row, memoized on the used-column mask.
pub fn det_laplace(m: &Matrix<Rational>) -> Rational {
    fn go(m: &Matrix<Rational>, row: usize, used: u32, memo: &mut HashMap<u32, Rational>) -> Rational {
        let n = m.rows();
        if row == n {
            return Rational::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut total = Rational::zero();
        let mut sign_pos = 0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = &m[(row, col)];
            if !entry.is_zero() {
                let minor = go(m, row + 1, used | (1 << col), memo);
                let term = entry * minor;
                total = if sign_pos % 2 == 0 { total + term } else { total - term };
            }
            sign_pos += 1;
        }
        memo.insert(used, total.clone());
        total
    }
    go(m, 0, 0, &mut HashMap::new())
}
