//! Restricted-root data of the symmetric pairs used for defect-one groups.
//!
//! Each pair carries a realization of its simple restricted roots in an
//! ambient space with a diagonal form, together with `ρ` (stored, not
//! recomputed from multiplicities). The Casimir acts on a `b`-eigenfunction of
//! weight `λ` by `(λ + 2ρ, λ)`; positivity for nonzero dominant `λ` follows
//! from definiteness of the form and nonnegativity of the coefficients of `ρ`
//! in the simple roots.

use std::fmt;

use num_traits::Zero;

use thiserror::Error;

use crate::exactnum::Matrix;
use crate::rootsys::WeightVector;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymPairError {
    #[error("hypothesis n > m violated for the osp pair (m = {m}, n = {n})")]
    OspHypothesis { m: usize, n: usize },
    #[error("simple roots dependent")]
    DependentRoots,
    #[error("rho is not in the span of the simple roots")]
    RhoOutsideSpan,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lambda = 0 is excluded by hypothesis")]
    ZeroWeight,
    #[error("Gram matrix is not positive definite")]
    NotDefinite,
    #[error("declared length ratio {index} does not match the Gram matrix")]
    LengthRatioMismatch { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `(osp(2m|2n), osp(2m|2n−2) × sp(2))`, restricted roots `BC_1`.
    Osp { m: usize, n: usize },
    /// `(g(1|2), D(1,2;3))`, restricted roots `G_2`.
    G12,
    /// `(F(3|1), D(1,2;2) × sl(2))`.
    F31,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairKind::Osp { m, n } => write!(
                f,
                "(osp({}|{}), osp({}|{}) x sp(2))",
                2 * m,
                2 * n,
                2 * m,
                2 * n - 2
            ),
            PairKind::G12 => write!(f, "(g(1|2), D(1,2;3))"),
            PairKind::F31 => write!(f, "(F(3|1), D(1,2;2) x sl(2))"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedPair<T> {
    pub kind: PairKind,
    /// Diagonal form on the ambient space containing `a*`.
    pub ambient_form: Vec<T>,
    pub simple_roots: Vec<WeightVector<T>>,
    pub rho: WeightVector<T>,
    /// Declared `(α_i, α_i) / (α_{i+1}, α_{i+1})`.
    pub length_ratios: Vec<T>,
}

/// Coefficients of `ρ` in the simple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoCoefficients<T> {
    pub coeffs: Vec<T>,
    pub nonnegative: bool,
}

/// A weight given by its coefficients in the simple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantWeight<T> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> RestrictedPair<T> {
    pub fn osp(m: usize, n: usize) -> Result<Self, SymPairError> {
        if n <= m {
            return Err(SymPairError::OspHypothesis { m, n });
        }
        let alpha = WeightVector::new(vec![T::one()]);
        let k = T::from_int(n as i64 - m as i64 - 1);
        Self::new(PairKind::Osp { m, n }, vec![T::one()], vec![alpha.clone()], alpha.scale(&k), vec![])
    }

    pub fn g12() -> Self {
        // long alpha_1 = -2e1 + e2 + e3, short alpha_2 = e1 - e2
        let a1 = WeightVector::from_ints(&[-2, 1, 1]);
        let a2 = WeightVector::from_ints(&[1, -1, 0]);
        let rho = a1.add(&a2);
        Self::new(PairKind::G12, vec![T::one(); 3], vec![a1, a2], rho, vec![T::from_int(3)])
            .expect("built-in data is consistent")
    }

    pub fn f31() -> Self {
        let half = T::one() / T::from_int(2);
        let a1 = WeightVector::new(vec![half.clone(), -half.clone(), -half]);
        let a2 = WeightVector::from_ints(&[0, 1, -1]);
        let a3 = WeightVector::from_ints(&[0, 0, 1]);
        let rho = a1.add(&a2.scale(&T::from_int(2))).add(&a3.scale(&T::from_int(3)));
        let ratios = vec![T::from_int(3) / T::from_int(8), T::from_int(2)];
        Self::new(PairKind::F31, vec![T::one(); 3], vec![a1, a2, a3], rho, ratios)
            .expect("built-in data is consistent")
    }

    /// Validates definiteness and the declared length ratios.
    pub fn new(
        kind: PairKind,
        ambient_form: Vec<T>,
        simple_roots: Vec<WeightVector<T>>,
        rho: WeightVector<T>,
        length_ratios: Vec<T>,
    ) -> Result<Self, SymPairError> {
        let dim = ambient_form.len();
        for v in simple_roots.iter().chain(std::iter::once(&rho)) {
            if v.dim() != dim {
                return Err(SymPairError::DimensionMismatch { expected: dim, got: v.dim() });
            }
        }
        let pair = RestrictedPair { kind, ambient_form, simple_roots, rho, length_ratios };
        let gram = pair.gram();
        if !leading_minors(&gram).iter().all(|d| d.is_positive()) {
            return Err(SymPairError::NotDefinite);
        }
        for (i, ratio) in pair.length_ratios.iter().enumerate() {
            if i + 1 >= gram.rows() || gram[(i, i)].clone() / gram[(i + 1, i + 1)].clone() != *ratio {
                return Err(SymPairError::LengthRatioMismatch { index: i });
            }
        }
        Ok(pair)
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient_form.len()
    }

    pub fn inner(&self, v: &WeightVector<T>, w: &WeightVector<T>) -> Result<T, SymPairError> {
        for x in [v, w] {
            if x.dim() != self.dim() {
                return Err(SymPairError::DimensionMismatch { expected: self.dim(), got: x.dim() });
            }
        }
        Ok(self
            .ambient_form
            .iter()
            .zip(v.coords.iter().zip(&w.coords))
            .fold(T::zero(), |acc, (f, (a, b))| acc + f.clone() * a.clone() * b.clone()))
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> Matrix<T> {
        let k = self.rank();
        Matrix::from_fn(k, k, |i, j| {
            self.inner(&self.simple_roots[i], &self.simple_roots[j])
                .expect("dimensions validated")
        })
    }

    /// Ambient vector `Σ c_i α_i`.
    pub fn combine(&self, coeffs: &[T]) -> Result<WeightVector<T>, SymPairError> {
        if coeffs.len() != self.rank() {
            return Err(SymPairError::DimensionMismatch { expected: self.rank(), got: coeffs.len() });
        }
        Ok(self
            .simple_roots
            .iter()
            .zip(coeffs)
            .fold(WeightVector::new(vec![T::zero(); self.dim()]), |acc, (a, c)| acc.add(&a.scale(c))))
    }

    /// Solves `v = Σ c_i α_i` exactly.
    pub fn coefficients_of(&self, v: &WeightVector<T>) -> Result<Vec<T>, SymPairError> {
        if v.dim() != self.dim() {
            return Err(SymPairError::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        let basis = Matrix::from_fn(self.dim(), self.rank(), |i, j| self.simple_roots[j].coords[i].clone());
        if basis.rank() < self.rank() {
            return Err(SymPairError::DependentRoots);
        }
        basis.solve(&v.coords).map_err(|_| SymPairError::RhoOutsideSpan)
    }

    pub fn rho_coefficients(&self) -> Result<RhoCoefficients<T>, SymPairError> {
        let coeffs = self.coefficients_of(&self.rho)?;
        let nonnegative = coeffs.iter().all(|c| !c.is_negative());
        Ok(RhoCoefficients { coeffs, nonnegative })
    }

    /// `(λ + 2ρ, λ)` for `λ` in ambient coordinates.
    pub fn casimir_eigenvalue(&self, lambda: &WeightVector<T>) -> Result<T, SymPairError> {
        let shifted = lambda.add(&self.rho.scale(&T::from_int(2)));
        self.inner(&shifted, lambda)
    }

    pub fn is_dominant(&self, lambda: &WeightVector<T>) -> Result<bool, SymPairError> {
        for a in &self.simple_roots {
            if self.inner(lambda, a)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the Casimir eigenvalue on a nonzero weight is positive.
    ///
    /// Positivity is guaranteed for dominant weights; dominance is not
    /// enforced here, see [`RestrictedPair::is_dominant`].
    pub fn positivity_check(&self, lambda: &WeightVector<T>) -> Result<bool, SymPairError> {
        if lambda.is_zero() {
            return Err(SymPairError::ZeroWeight);
        }
        Ok(self.casimir_eigenvalue(lambda)?.is_positive())
    }

    /// Fundamental weights `ϖ_i` with `(ϖ_i, α_j) = δ_ij`, in simple-root coefficients.
    pub fn fundamental_weights(&self) -> Result<Vec<Vec<T>>, SymPairError> {
        let inv = self.gram().inverse().map_err(|_| SymPairError::DependentRoots)?;
        Ok(inv.to_rows())
    }

    /// Dominant weight `Σ b_i ϖ_i` from fundamental-weight coordinates.
    pub fn dominant_from_fundamental(&self, b: &[T]) -> Result<DominantWeight<T>, SymPairError> {
        if b.len() != self.rank() {
            return Err(SymPairError::DimensionMismatch { expected: self.rank(), got: b.len() });
        }
        let fw = self.fundamental_weights()?;
        let coeffs = (0..self.rank())
            .map(|j| (0..self.rank()).fold(T::zero(), |acc, i| acc + b[i].clone() * fw[i][j].clone()))
            .collect();
        Ok(DominantWeight { coeffs })
    }
}

impl<T: Scalar> DominantWeight<T> {
    pub fn to_ambient(&self, pair: &RestrictedPair<T>) -> Result<WeightVector<T>, SymPairError> {
        pair.combine(&self.coeffs)
    }
}

fn leading_minors<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    (1..=m.rows())
        .map(|k| {
            Matrix::from_fn(k, k, |i, j| m[(i, j)].clone())
                .determinant()
                .expect("square")
        })
        .collect()
}

/// Leading principal minors of the pair's Gram matrix.
pub fn gram_minors<T: Scalar>(pair: &RestrictedPair<T>) -> Vec<T> {
    leading_minors(&pair.gram())
}

/// The three built-in families; the osp pair needs its `(m, n)`.
pub fn builtin_pairs<T: Scalar>(m: usize, n: usize) -> Result<Vec<RestrictedPair<T>>, SymPairError> {
    Ok(vec![RestrictedPair::osp(m, n)?, RestrictedPair::g12(), RestrictedPair::f31()])
}

/// Grid of nonzero dominant weights: fundamental-weight coordinates in
/// `[0, 5]^k` with a step giving at least 100 points.
pub fn dominant_grid<T: Scalar>(pair: &RestrictedPair<T>) -> Result<Vec<WeightVector<T>>, SymPairError> {
    let k = pair.rank();
    let steps_per_unit: i64 = match k {
        1 => 20,
        2 => 2,
        _ => 1,
    };
    let ticks = 5 * steps_per_unit;
    let step = T::one() / T::from_int(steps_per_unit);
    let mut out = Vec::new();
    let mut idx = vec![0i64; k];
    loop {
        if idx.iter().any(|&i| i != 0) {
            let b: Vec<T> = idx.iter().map(|&i| T::from_int(i) * step.clone()).collect();
            out.push(pair.dominant_from_fundamental(&b)?.to_ambient(pair)?);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] <= ticks {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `λ_l = (l+1)ε_1 + (l−1)(ε_2 + ε_3)` for `l ≥ 1`, and `λ_0 = 0`.
pub fn d21a_weight<T: Scalar>(l: u64) -> WeightVector<T> {
    if l == 0 {
        return WeightVector::new(vec![T::zero(); 3]);
    }
    let l = l as i64;
    WeightVector::from_ints(&[l + 1, l - 1, l - 1])
}

/// Whether `λ_l` lies in `a* = span(ε_1, ε_2)`.
pub fn d21a_in_a_star(l: u64) -> bool {
    d21a_weight::<crate::Rational>(l).coords[2].is_zero()
}

/// Extension graph of the principal block: `λ_0 – λ_2`, `λ_1 – λ_2`,
/// `λ_l – λ_{l+1}` for `l ≥ 2`, listed up to `λ_max`.
pub fn d21a_extension_edges(max: u64) -> Vec<(u64, u64)> {
    let mut edges = Vec::new();
    if max >= 2 {
        edges.push((0, 2));
        edges.push((1, 2));
    }
    for l in 2..max {
        edges.push((l, l + 1));
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, Rational};

    type Pair = RestrictedPair<Rational>;

    #[test]
    fn osp_rho() {
        let p = Pair::osp(1, 3).unwrap();
        assert_eq!(p.rho_coefficients().unwrap().coeffs, vec![int(1)]);
        let p = Pair::osp(2, 5).unwrap();
        let rc = p.rho_coefficients().unwrap();
        assert_eq!(rc.coeffs, vec![int(2)]);
        assert!(rc.nonnegative);
        let p = Pair::osp(2, 3).unwrap();
        let rc = p.rho_coefficients().unwrap();
        assert_eq!(rc.coeffs, vec![int(0)]);
        assert!(rc.nonnegative);
        assert_eq!(Pair::osp(3, 3), Err(SymPairError::OspHypothesis { m: 3, n: 3 }));
    }

    #[test]
    fn exceptional_rho() {
        assert_eq!(Pair::g12().rho_coefficients().unwrap().coeffs, vec![int(1), int(1)]);
        let rc = Pair::f31().rho_coefficients().unwrap();
        assert_eq!(rc.coeffs, vec![int(1), int(2), int(3)]);
        assert!(rc.nonnegative);
    }

    #[test]
    fn length_ratios_are_pinned() {
        let g = Pair::g12().gram();
        assert_eq!(g[(0, 0)].clone() / g[(1, 1)].clone(), int(3));
        let f = Pair::f31().gram();
        assert_eq!(f[(0, 0)].clone() / f[(1, 1)].clone(), rat(3, 8));
        assert_eq!(f[(1, 1)].clone() / f[(2, 2)].clone(), int(2));
        let bad = Pair::new(
            PairKind::G12,
            vec![int(1); 3],
            Pair::g12().simple_roots,
            Pair::g12().rho,
            vec![int(2)],
        );
        assert_eq!(bad, Err(SymPairError::LengthRatioMismatch { index: 0 }));
    }

    #[test]
    fn casimir_examples() {
        let g = Pair::g12();
        assert_eq!(g.casimir_eigenvalue(&WeightVector::from_ints(&[0, 0, 0])).unwrap(), int(0));
        // (a1, a1) + 2 (rho, a1) = 6 + 2 * 3
        let a1 = g.simple_roots[0].clone();
        assert_eq!(g.casimir_eigenvalue(&a1).unwrap(), int(12));

        let p = Pair::osp(1, 3).unwrap();
        let a = p.simple_roots[0].clone();
        let len = p.inner(&a, &a).unwrap();
        assert_eq!(p.casimir_eigenvalue(&a).unwrap(), int(3) * len);
    }

    #[test]
    fn positivity_examples() {
        let f = Pair::f31();
        let lam = f.combine(&[int(1), int(1), int(1)]).unwrap();
        // not dominant here: (lam, alpha_3) = -1/2; eigenvalue 3/4 + 2 * 3/4
        assert!(!f.is_dominant(&lam).unwrap());
        assert_eq!(f.casimir_eigenvalue(&lam).unwrap(), rat(9, 4));
        assert!(f.positivity_check(&lam).unwrap());
        let p = Pair::osp(2, 3).unwrap();
        assert!(p.positivity_check(&p.simple_roots[0].clone()).unwrap());
        assert_eq!(
            p.positivity_check(&WeightVector::from_ints(&[0])),
            Err(SymPairError::ZeroWeight)
        );
        assert!(!p.is_dominant(&WeightVector::from_ints(&[-1])).unwrap());
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for pair in builtin_pairs::<Rational>(0, 2).unwrap() {
            let fw = pair.fundamental_weights().unwrap();
            for (i, w) in fw.iter().enumerate() {
                let v = pair.combine(w).unwrap();
                for (j, a) in pair.simple_roots.iter().enumerate() {
                    let expected = if i == j { int(1) } else { int(0) };
                    assert_eq!(pair.inner(&v, a).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn grids_are_large_enough() {
        for pair in builtin_pairs::<Rational>(1, 4).unwrap() {
            let grid = dominant_grid(&pair).unwrap();
            assert!(grid.len() >= 100, "{} has {} points", pair.kind, grid.len());
            assert!(grid.iter().all(|l| pair.is_dominant(l).unwrap() && !l.is_zero()));
        }
    }

    #[test]
    fn d21a_weights() {
        assert_eq!(d21a_weight::<Rational>(0), WeightVector::from_ints(&[0, 0, 0]));
        assert_eq!(d21a_weight::<Rational>(1), WeightVector::from_ints(&[2, 0, 0]));
        assert_eq!(d21a_weight::<Rational>(2), WeightVector::from_ints(&[3, 1, 1]));
        assert!(d21a_in_a_star(0));
        assert!(d21a_in_a_star(1));
        assert!(!d21a_in_a_star(2));
        assert_eq!(d21a_extension_edges(4), vec![(0, 2), (1, 2), (2, 3), (3, 4)]);
    }
}
