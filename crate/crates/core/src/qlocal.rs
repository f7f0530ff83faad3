//! Finite localization sums.
//!
//! For parameters `a_1, …, a_n` with `a_i ≠ 0` and `a_i ± a_j ≠ 0`, the
//! contribution of an `r`-subset `S` is
//!
//! ```text
//! α(S) = ∏_{i∈S, j∉S} (a_i + a_j) / (a_i − a_j)
//! ```
//!
//! and `C(r, n) = Σ_{|S|=r} α(S)` does not depend on the parameters.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::alpha_diagonal;
use crate::grassvol::{VolumeExpr, TWO_PI_PER_ODD_DIM};
use crate::{Integer, Rational, Scalar};

/// Subset enumeration is `2^n`; larger sizes are refused.
pub const MAX_BRUTEFORCE_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QLocalError {
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("subset index {index} out of range for n = {n}")]
    SubsetOutOfRange { index: usize, n: usize },
    #[error("need 0 <= r <= n, got r = {r}, n = {n}")]
    BadRank { r: usize, n: usize },
    #[error("n = {0} exceeds the brute-force bound {MAX_BRUTEFORCE_N}")]
    TooLarge(usize),
    #[error("at least {needed} parameter samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("parameter dependence detected for C({r}, {n})")]
    ParameterDependence { r: usize, n: usize },
    #[error("fixed point {0:?} has alpha != 1")]
    NontrivialAlpha(Vec<usize>),
}

/// Localization parameters `a_1, …, a_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVector<T = Rational> {
    a: Vec<T>,
}

impl<T: Scalar> ParamVector<T> {
    pub fn new(a: Vec<T>) -> Result<Self, QLocalError> {
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                return Err(QLocalError::Degenerate(format!("a[{i}] = 0")));
            }
            for (j, y) in a.iter().enumerate().skip(i + 1) {
                if (x.clone() - y.clone()).is_zero() || (x.clone() + y.clone()).is_zero() {
                    return Err(QLocalError::Degenerate(format!("a[{i}] = ±a[{j}]")));
                }
            }
        }
        Ok(ParamVector { a })
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.a
    }
}

impl ParamVector<Rational> {
    /// Distinct small integers with distinct absolute values, drawn from a
    /// seeded generator; the sign of each entry is random.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let bound = (4 * n as i64).max(8);
        let mut pool: Vec<i64> = (1..=bound).collect();
        pool.shuffle(rng);
        let a = pool[..n]
            .iter()
            .map(|&x| Rational::from_integer(if rng.gen_bool(0.5) { x } else { -x }.into()))
            .collect();
        ParamVector::new(a).expect("distinct absolute values are non-degenerate")
    }

    /// `k` vectors from a generator seeded with `seed`.
    pub fn seeded_samples(n: usize, k: usize, seed: u64) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| Self::random(n, &mut rng)).collect()
    }
}

impl Serialize for ParamVector<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::serde_exact::vec::serialize(&self.a, s)
    }
}

impl<'de> Deserialize<'de> for ParamVector<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = crate::serde_exact::vec::deserialize(d)?;
        ParamVector::new(a).map_err(serde::de::Error::custom)
    }
}

/// `α(S)` for `S` given as zero-based indices.
pub fn alpha_subset<T: Scalar>(subset: &[usize], a: &ParamVector<T>) -> Result<T, QLocalError> {
    let n = a.len();
    let mut inside = vec![false; n];
    for &i in subset {
        if i >= n {
            return Err(QLocalError::SubsetOutOfRange { index: i, n });
        }
        inside[i] = true;
    }
    let (mut num, mut den) = (T::one(), T::one());
    for i in (0..n).filter(|&i| inside[i]) {
        for j in (0..n).filter(|&j| !inside[j]) {
            num = num * (a.a[i].clone() + a.a[j].clone());
            den = den * (a.a[i].clone() - a.a[j].clone());
        }
    }
    Ok(num / den)
}

/// Calls `f` on every `r`-subset of `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let Some(p) = (0..r).rev().find(|&p| idx[p] != p + n - r) else {
            return;
        };
        idx[p] += 1;
        for q in p + 1..r {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// `Σ_{|S|=r} α(S)` for a single parameter vector.
pub fn c_sum<T: Scalar>(r: usize, a: &ParamVector<T>) -> Result<T, QLocalError> {
    let n = a.len();
    if r > n {
        return Err(QLocalError::BadRank { r, n });
    }
    let mut total = T::zero();
    let mut err = None;
    for_each_subset(n, r, |s| match alpha_subset(s, a) {
        Ok(x) => total = total.clone() + x,
        Err(e) => err = Some(e),
    });
    err.map_or(Ok(total), Err)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub n: usize,
    pub r: usize,
    pub samples: Vec<Sample>,
    #[serde(with = "crate::serde_exact")]
    pub consensus: Rational,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub params: ParamVector,
    #[serde(with = "crate::serde_exact")]
    pub sum: Rational,
}

/// `C(r, n)` by exhaustive subset enumeration, once per sample.
pub fn c_bruteforce(r: usize, n: usize, samples: &[ParamVector]) -> Result<LocalizationReport, QLocalError> {
    if r > n {
        return Err(QLocalError::BadRank { r, n });
    }
    if n > MAX_BRUTEFORCE_N {
        return Err(QLocalError::TooLarge(n));
    }
    if samples.len() < 3 {
        return Err(QLocalError::TooFewSamples { needed: 3, got: samples.len() });
    }
    let mut out = Vec::with_capacity(samples.len());
    for a in samples {
        if a.len() != n {
            return Err(QLocalError::Degenerate(format!("expected {n} parameters, got {}", a.len())));
        }
        out.push(Sample { params: a.clone(), sum: c_sum(r, a)? });
    }
    let consensus = out[0].sum.clone();
    if out.iter().any(|s| s.sum != consensus) {
        return Err(QLocalError::ParameterDependence { r, n });
    }
    Ok(LocalizationReport { n, r, samples: out, consensus, agrees: true })
}

/// Closed form: `binom(⌊n/2⌋, ⌊r/2⌋)`, except `0` for `n` even and `r` odd.
pub fn c_closed(r: usize, n: usize) -> Integer {
    if r > n || (n.is_multiple_of(2) && r % 2 == 1) {
        return Integer::zero();
    }
    binomial(BigInt::from(n / 2), BigInt::from(r / 2))
}

fn parity_sign(e: usize) -> Integer {
    if e.is_multiple_of(2) {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// Pascal-type recursion and reflection symmetry on `c_closed`, `1 ≤ r ≤ n ≤ nmax`.
pub fn check_recursions(nmax: usize) -> bool {
    check_recursions_with(nmax, c_closed)
}

/// The same identities for an arbitrary table `c(r, n)`.
pub fn check_recursions_with(nmax: usize, c: impl Fn(usize, usize) -> Integer) -> bool {
    (1..=nmax).all(|n| {
        (1..=n).all(|r| {
            let pascal = if n >= 2 {
                c(r, n) == c(r, n - 1) + parity_sign(n - r) * c(r - 1, n - 1)
            } else {
                true
            };
            pascal && c(r, n) == parity_sign(r * (n - r)) * c(n - r, n)
        })
    })
}

/// Equal-rank GL localization: every `r`-subset is a fixed point whose α,
/// built from the pairs `(a_i+a_j, a_i−a_j)` and `(a_i−a_j, a_i+a_j)`, is `1`.
/// Returns the number of fixed points.
pub fn gl_localization(r: usize, a: &ParamVector) -> Result<Rational, QLocalError> {
    let n = a.len();
    if r > n {
        return Err(QLocalError::BadRank { r, n });
    }
    let v = a.values();
    let mut total = Rational::zero();
    let mut bad = None;
    for_each_subset(n, r, |s| {
        let (mut c, mut d) = (Vec::new(), Vec::new());
        for &i in s {
            for j in (0..n).filter(|j| !s.contains(j)) {
                let (plus, minus) = (&v[i] + &v[j], &v[i] - &v[j]);
                c.extend([plus.clone(), minus.clone()]);
                d.extend([minus, plus]);
            }
        }
        match alpha_diagonal(&c, &d) {
            Ok(alpha) if alpha.is_one() => total += alpha,
            _ => bad = bad.take().or_else(|| Some(s.to_vec())),
        }
    });
    match bad {
        Some(s) => Err(QLocalError::NontrivialAlpha(s)),
        None => Ok(total),
    }
}

/// Volume of the Q-grassmannian `QGr(r, n)`: `C(r, n) · (2π)^{2r(n−r)}`.
pub fn qvolume(r: usize, n: usize) -> Result<VolumeExpr, QLocalError> {
    if r > n {
        return Err(QLocalError::BadRank { r, n });
    }
    let power = 2 * (r * (n - r)) as i64 * TWO_PI_PER_ODD_DIM;
    Ok(&VolumeExpr::constant(Rational::from_integer(c_closed(r, n))) * &VolumeExpr::two_pi(power))
}
