//! Dimensions and exact volumes of supergrassmannians `Gr(r|s, m|n)`.
//!
//! A volume is a [`VolumeExpr`]: a rational coefficient times a formal power
//! of `2π` times a product of opaque classical volumes `V(a, b)` of `Gr(a, b)`.
//! `2π` is never evaluated and classical volumes are never normalized; the
//! only rewriting rules are `V(0, b) = V(b, b) = 1` and `V(a, b) = V(b − a, b)`.
//!
//! The closed form, for `r ≥ s` and nonnegative superdimension:
//!
//! ```text
//! V(r|s, m|n) = (−1)^{s(m+n+r+s)} · C(n, s) · (2π)^A · V(r − s, m − n),
//! A = (m − r)s + (n − s)r  (the odd dimension),
//! ```
//!
//! and `V = 0` when the superdimension is negative. Other orientations are
//! brought to this one through `V(r|s, m|n) = V(s|r, n|m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

/// Power of `2π` contributed per unit of complex odd dimension.
pub const TWO_PI_PER_ODD_DIM: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassVolError {
    #[error("invalid Grassmannian Gr({r}|{s}, {m}|{n}): need r <= m and s <= n")]
    InvalidSpec { r: u32, s: u32, m: u32, n: u32 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("division by a zero volume")]
    DivisionByZero,
    #[error("malformed volume expression: {0}")]
    Malformed(String),
}

/// `Gr(r|s, m|n)`: `(r|s)`-dimensional subspaces of `C^{m|n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassSpec {
    pub r: u32,
    pub s: u32,
    pub m: u32,
    pub n: u32,
}

impl GrassSpec {
    pub fn new(r: u32, s: u32, m: u32, n: u32) -> Result<Self, GrassVolError> {
        if r > m || s > n {
            return Err(GrassVolError::InvalidSpec { r, s, m, n });
        }
        Ok(GrassSpec { r, s, m, n })
    }

    /// `Gr(s|r, n|m)`, the same space with parity reversed.
    pub fn parity_swap(self) -> Self {
        GrassSpec { r: self.s, s: self.r, m: self.n, n: self.m }
    }

    /// `Gr(m−r|n−s, m|n)`.
    pub fn complement(self) -> Self {
        GrassSpec { r: self.m - self.r, s: self.n - self.s, m: self.m, n: self.n }
    }

    /// Every valid spec with `m, n ≤ max`.
    pub fn all_up_to(max: u32) -> impl Iterator<Item = GrassSpec> {
        (0..=max).flat_map(move |m| {
            (0..=max).flat_map(move |n| {
                (0..=m).flat_map(move |r| (0..=n).map(move |s| GrassSpec { r, s, m, n }))
            })
        })
    }
}

impl fmt::Display for GrassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({}|{}, {}|{})", self.r, self.s, self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperDim {
    pub even: u64,
    pub odd: u64,
}

impl SuperDim {
    pub fn sdim(self) -> i64 {
        self.even as i64 - self.odd as i64
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

pub fn dims(spec: GrassSpec) -> SuperDim {
    let (r, s, m, n) = (spec.r as u64, spec.s as u64, spec.m as u64, spec.n as u64);
    SuperDim { even: r * (m - r) + s * (n - s), odd: r * (n - s) + s * (m - r) }
}

/// `(r − s)((m − r) − (n − s))`.
pub fn sdim(spec: GrassSpec) -> i64 {
    let (r, s, m, n) = (spec.r as i64, spec.s as i64, spec.m as i64, spec.n as i64);
    (r - s) * ((m - r) - (n - s))
}

fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// Exact symbolic volume `coeff · (2π)^two_pi_power · ∏ V(a, b)^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VolumeExpr {
    coeff: Rational,
    two_pi_power: i64,
    atoms: BTreeMap<(u32, u32), i32>,
}

impl VolumeExpr {
    pub fn zero() -> Self {
        VolumeExpr { coeff: Rational::zero(), two_pi_power: 0, atoms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(coeff: Rational) -> Self {
        VolumeExpr { coeff, two_pi_power: 0, atoms: BTreeMap::new() }.normalized()
    }

    pub fn two_pi(power: i64) -> Self {
        VolumeExpr { coeff: Rational::one(), two_pi_power: power, atoms: BTreeMap::new() }
    }

    /// Classical volume `V(a, b)` of `Gr(a, b)`, canonicalized.
    pub fn classical(a: u32, b: u32) -> Result<Self, GrassVolError> {
        if a > b {
            return Err(GrassVolError::Hypothesis(format!("V({a}, {b}) needs a <= b")));
        }
        let mut atoms = BTreeMap::new();
        if let Some(key) = canonical_atom(a, b) {
            atoms.insert(key, 1);
        }
        Ok(VolumeExpr { coeff: Rational::one(), two_pi_power: 0, atoms })
    }

    /// Builds an expression from raw parts, canonicalizing atoms.
    pub fn from_parts(
        coeff: Rational,
        two_pi_power: i64,
        atoms: impl IntoIterator<Item = (u32, u32, i32)>,
    ) -> Result<Self, GrassVolError> {
        let mut out = VolumeExpr { coeff, two_pi_power, atoms: BTreeMap::new() };
        for (a, b, exp) in atoms {
            if a > b {
                return Err(GrassVolError::Malformed(format!("atom V({a}, {b})")));
            }
            if let Some(key) = canonical_atom(a, b) {
                *out.atoms.entry(key).or_insert(0) += exp;
            }
        }
        Ok(out.normalized())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn two_pi_power(&self) -> i64 {
        self.two_pi_power
    }

    /// Canonical atoms `(a, b, exponent)` in increasing order.
    pub fn atoms(&self) -> impl Iterator<Item = (u32, u32, i32)> + '_ {
        self.atoms.iter().map(|(&(a, b), &e)| (a, b, e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn normalized(mut self) -> Self {
        self.atoms.retain(|_, e| *e != 0);
        if self.coeff.is_zero() {
            self.two_pi_power = 0;
            self.atoms.clear();
        }
        self
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, GrassVolError> {
        if rhs.is_zero() {
            return Err(GrassVolError::DivisionByZero);
        }
        let mut atoms = self.atoms.clone();
        for (k, e) in &rhs.atoms {
            *atoms.entry(*k).or_insert(0) -= e;
        }
        Ok(VolumeExpr {
            coeff: &self.coeff / &rhs.coeff,
            two_pi_power: self.two_pi_power - rhs.two_pi_power,
            atoms,
        }
        .normalized())
    }
}

/// `None` when the atom equals 1.
fn canonical_atom(a: u32, b: u32) -> Option<(u32, u32)> {
    let a = a.min(b - a);
    (a != 0).then_some((a, b))
}

impl Mul for &VolumeExpr {
    type Output = VolumeExpr;

    fn mul(self, rhs: &VolumeExpr) -> VolumeExpr {
        let mut atoms = self.atoms.clone();
        for (k, e) in &rhs.atoms {
            *atoms.entry(*k).or_insert(0) += e;
        }
        VolumeExpr {
            coeff: &self.coeff * &rhs.coeff,
            two_pi_power: self.two_pi_power + rhs.two_pi_power,
            atoms,
        }
        .normalized()
    }
}

impl Mul for VolumeExpr {
    type Output = VolumeExpr;

    fn mul(self, rhs: VolumeExpr) -> VolumeExpr {
        &self * &rhs
    }
}

impl Neg for VolumeExpr {
    type Output = VolumeExpr;

    fn neg(mut self) -> VolumeExpr {
        self.coeff = -self.coeff;
        self
    }
}

impl fmt::Display for VolumeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut factors = Vec::new();
        if self.two_pi_power != 0 {
            factors.push(format!("(2π)^{}", self.two_pi_power));
        }
        for (a, b, e) in self.atoms() {
            if e == 1 {
                factors.push(format!("V({a},{b})"));
            } else {
                factors.push(format!("V({a},{b})^{e}"));
            }
        }
        let body = factors.join("·");
        match (self.coeff.is_one(), (-&self.coeff).is_one(), body.is_empty()) {
            (_, _, true) => write!(f, "{}", self.coeff),
            (true, _, false) => write!(f, "{body}"),
            (_, true, false) => write!(f, "-{body}"),
            _ => write!(f, "{}·{body}", self.coeff),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomRepr {
    a: u32,
    b: u32,
    exp: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeExprRepr {
    coeff: String,
    two_pi_power: i64,
    atoms: Vec<AtomRepr>,
}

impl Serialize for VolumeExpr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        VolumeExprRepr {
            coeff: self.coeff.to_string(),
            two_pi_power: self.two_pi_power,
            atoms: self.atoms().map(|(a, b, exp)| AtomRepr { a, b, exp }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VolumeExpr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = VolumeExprRepr::deserialize(deserializer)?;
        let coeff: Rational = repr.coeff.parse().map_err(serde::de::Error::custom)?;
        VolumeExpr::from_parts(coeff, repr.two_pi_power, repr.atoms.into_iter().map(|x| (x.a, x.b, x.exp)))
            .map_err(serde::de::Error::custom)
    }
}

/// Whether `spec` must be mirrored through `V(r|s, m|n) = V(s|r, n|m)` to
/// reach the orientation `r ≥ s`, `m − n ≥ r − s` of the closed form.
fn needs_parity_swap(spec: GrassSpec) -> bool {
    spec.r < spec.s || (spec.r == spec.s && spec.m < spec.n)
}

/// Closed-form volume.
pub fn volume(spec: GrassSpec) -> VolumeExpr {
    if sdim(spec) < 0 {
        return VolumeExpr::zero();
    }
    let spec = if needs_parity_swap(spec) { spec.parity_swap() } else { spec };
    let (r, s, m, n) = (spec.r, spec.s, spec.m, spec.n);
    let coeff = sign(s as i64 * (m + n + r + s) as i64) * binom(n, s);
    let odd = (m - r) as i64 * s as i64 + (n - s) as i64 * r as i64;
    let classical = VolumeExpr::classical(r - s, m - n).expect("m - n >= r - s in this orientation");
    &VolumeExpr { coeff, two_pi_power: TWO_PI_PER_ODD_DIM * odd, atoms: BTreeMap::new() } * &classical
}

/// `V(r|r, n|n) = C(n, r) · (2π)^{2r(n−r)}`.
pub fn equal_rank_volume(r: u32, n: u32) -> Result<VolumeExpr, GrassVolError> {
    if r > n {
        return Err(GrassVolError::Hypothesis(format!("equal rank needs r <= n, got r={r}, n={n}")));
    }
    let power = 2 * r as i64 * (n - r) as i64;
    Ok(&VolumeExpr::constant(binom(n, r)) * &VolumeExpr::two_pi(TWO_PI_PER_ODD_DIM * power))
}

/// `V(m−n|0, m|n) = (2π)^{n(m−n)}` for `m ≥ n`.
pub fn one_zero_volume(m: u32, n: u32) -> Result<VolumeExpr, GrassVolError> {
    if m < n {
        return Err(GrassVolError::Hypothesis(format!("needs m >= n, got m={m}, n={n}")));
    }
    Ok(VolumeExpr::two_pi(TWO_PI_PER_ODD_DIM * n as i64 * (m - n) as i64))
}

/// `(−1)^{r(n−s) + s(m−r)}`, the sign relating `V(r|s, m|n)` to the volume
/// of the complementary Grassmannian.
pub fn duality_sign(spec: GrassSpec) -> i32 {
    let d = dims(spec);
    if d.odd.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `V(n|n, m|n)` for `m ≥ n`, from the `(m−n|0)` volume and the duality sign.
fn levi_block_volume(n: u32, m: u32) -> Result<VolumeExpr, GrassVolError> {
    let base = one_zero_volume(m, n)?;
    let spec = GrassSpec::new(m - n, 0, m, n)?;
    Ok(if duality_sign(spec) == 1 { base } else { -base })
}

/// Volume through the double-fibration quotient
/// `(−1)^{(r−s)(n−s)} V(s|s,n|n) V(n|n,m|n) V(r−s,m−n) / (V(s|s,r|s) V(n−s|n−s,m−r|n−s))`,
/// every factor expanded from the equal-rank, `(m−n|0)` and duality formulas.
pub fn volume_via_general_positive(spec: GrassSpec) -> Result<VolumeExpr, GrassVolError> {
    if sdim(spec) < 0 || spec.r < spec.s {
        return Err(GrassVolError::Hypothesis(format!(
            "{spec} needs sdim >= 0 and r >= s"
        )));
    }
    let spec = if needs_parity_swap(spec) { spec.parity_swap() } else { spec };
    let (r, s, m, n) = (spec.r, spec.s, spec.m, spec.n);
    let numerator = equal_rank_volume(s, n)?
        * levi_block_volume(n, m)?
        * VolumeExpr::classical(r - s, m - n)?;
    let denominator = levi_block_volume(s, r)? * levi_block_volume(n - s, m - r)?;
    let quotient = numerator.checked_div(&denominator)?;
    let sign_exp = (r - s) as i64 * (n - s) as i64;
    Ok(if sign_exp % 2 == 0 { quotient } else { -quotient })
}

/// `V(r|s, m|n) = (−1)^{r(n−s)+s(m−r)} V(m−r|n−s, m|n)` on closed-form volumes.
pub fn check_lemma_sign(spec: GrassSpec) -> bool {
    let rhs = volume(spec.complement());
    let rhs = if duality_sign(spec) == 1 { rhs } else { -rhs };
    volume(spec) == rhs
}

/// `V(b|a, c|a) = V(b−a, c−a) · V(a|a, c|a) / V(a|a, b|a)` on closed-form volumes.
pub fn check_cor_one(a: u32, b: u32, c: u32) -> Result<bool, GrassVolError> {
    if !(a <= b && b <= c) {
        return Err(GrassVolError::Hypothesis(format!("needs a <= b <= c, got ({a}, {b}, {c})")));
    }
    let lhs = volume(GrassSpec::new(b, a, c, a)?);
    let rhs = (VolumeExpr::classical(b - a, c - a)? * volume(GrassSpec::new(a, a, c, a)?))
        .checked_div(&volume(GrassSpec::new(a, a, b, a)?))?;
    Ok(lhs == rhs)
}

/// Whether the volume is nonzero, i.e. the Levi subgroup is splitting.
pub fn volume_is_nonzero(spec: GrassSpec) -> bool {
    !volume(spec).is_zero()
}

impl VolumeExpr {
    /// `|coeff|` sign, `0` for the zero volume.
    pub fn sign(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn g(r: u32, s: u32, m: u32, n: u32) -> GrassSpec {
        GrassSpec::new(r, s, m, n).unwrap()
    }

    #[test]
    fn dims_examples() {
        assert_eq!(dims(g(1, 1, 2, 2)), SuperDim { even: 2, odd: 2 });
        assert_eq!(dims(g(2, 0, 5, 0)), SuperDim { even: 6, odd: 0 });
        assert_eq!(dims(g(2, 0, 3, 1)), SuperDim { even: 2, odd: 2 });
    }

    #[test]
    fn sdim_examples() {
        assert_eq!(sdim(g(1, 1, 4, 3)), 0);
        assert_eq!(sdim(g(2, 0, 3, 4)), -6);
        assert_eq!(sdim(g(2, 1, 4, 2)), 1);
        for spec in GrassSpec::all_up_to(5) {
            assert_eq!(dims(spec).sdim(), sdim(spec));
        }
    }

    #[test]
    fn invalid_spec() {
        assert!(GrassSpec::new(3, 0, 2, 0).is_err());
    }

    #[test]
    fn volume_examples() {
        let v = volume(g(1, 1, 2, 2));
        assert_eq!(v.coeff(), &int(2));
        assert_eq!(v.two_pi_power(), 2);
        assert_eq!(v.atoms().count(), 0);
        assert_eq!(v.to_string(), "2·(2π)^2");

        assert_eq!(volume(g(2, 0, 3, 1)), VolumeExpr::two_pi(2));
        assert!(volume(g(2, 0, 3, 4)).is_zero());
        assert_eq!(volume(g(2, 0, 3, 4)), VolumeExpr::zero());
    }

    #[test]
    fn equal_rank_mirror_orientation() {
        // Gr(1|1, 1|3) is Gr(1|1, 3|1) with parity reversed
        assert_eq!(volume(g(1, 1, 1, 3)), volume(g(1, 1, 3, 1)));
        assert_eq!(volume(g(1, 1, 3, 1)), VolumeExpr::two_pi(2));
    }

    #[test]
    fn atom_canonicalization() {
        assert_eq!(VolumeExpr::classical(0, 4).unwrap(), VolumeExpr::one());
        assert_eq!(VolumeExpr::classical(4, 4).unwrap(), VolumeExpr::one());
        assert_eq!(VolumeExpr::classical(3, 4).unwrap(), VolumeExpr::classical(1, 4).unwrap());
        let v = VolumeExpr::classical(2, 5).unwrap();
        assert_eq!(v.atoms().collect::<Vec<_>>(), vec![(2, 5, 1)]);
        assert!(VolumeExpr::classical(3, 2).is_err());
        // general positive orientation: V(2,6) at Gr(3|1, 8|2)
        let v = volume(g(3, 1, 8, 2));
        assert_eq!(v.atoms().collect::<Vec<_>>(), vec![(2, 6, 1)]);
    }

    #[test]
    fn zero_is_canonical() {
        let z = VolumeExpr::from_parts(int(0), 5, [(1, 3, 2)]).unwrap();
        assert_eq!(z, VolumeExpr::zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn division() {
        let a = VolumeExpr::from_parts(int(6), 3, [(1, 3, 1)]).unwrap();
        let b = VolumeExpr::from_parts(int(2), 1, [(2, 3, 1)]).unwrap();
        assert_eq!(a.checked_div(&b).unwrap(), VolumeExpr::from_parts(int(3), 2, []).unwrap());
        assert_eq!(a.checked_div(&VolumeExpr::zero()), Err(GrassVolError::DivisionByZero));
        let inv = VolumeExpr::one().checked_div(&VolumeExpr::classical(1, 3).unwrap()).unwrap();
        assert_eq!(inv.to_string(), "V(1,3)^-1");
    }

    #[test]
    fn general_positive_examples() {
        assert_eq!(volume_via_general_positive(g(2, 1, 4, 2)).unwrap(), volume(g(2, 1, 4, 2)));
        let v = volume_via_general_positive(g(1, 1, 2, 2)).unwrap();
        assert_eq!(v, VolumeExpr::from_parts(int(2), 2, []).unwrap());
        assert!(volume_via_general_positive(g(0, 1, 2, 2)).is_err());
        assert!(volume_via_general_positive(g(2, 0, 3, 4)).is_err());
    }

    #[test]
    fn lemma_sign_examples() {
        assert_eq!(duality_sign(g(1, 1, 2, 2)), 1);
        assert!(check_lemma_sign(g(1, 1, 2, 2)));
        for (m, n) in [(3, 1), (5, 2), (4, 1)] {
            let s = duality_sign(g(m - n, 0, m, n));
            assert_eq!(s, if (n * (m - n)) % 2 == 0 { 1 } else { -1 });
            assert!(check_lemma_sign(g(m - n, 0, m, n)));
        }
        assert!(check_lemma_sign(g(2, 1, 4, 2)));
    }

    #[test]
    fn cor_one_examples() {
        assert!(check_cor_one(0, 1, 2).unwrap());
        assert!(check_cor_one(1, 2, 3).unwrap());
        assert!(check_cor_one(1, 1, 4).unwrap());
        assert!(check_cor_one(2, 1, 4).is_err());
    }

    #[test]
    fn serde_shape() {
        let v = VolumeExpr::from_parts(crate::rat(-3, 2), 4, [(1, 3, -1)]).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"coeff": "-3/2", "two_pi_power": 4, "atoms": [{"a": 1, "b": 3, "exp": -1}]})
        );
        let back: VolumeExpr = serde_json::from_value(json).unwrap();
        assert_eq!(back, v);
    }
}
