//! Root data of contragredient Lie superalgebras and of `q(n)`.
//!
//! Every family is realized in coordinates on which the invariant form is
//! diagonal, so `(v, w) = Σ form_i · v_i · w_i`.
//!
//! | family       | basis                         | form                     |
//! |--------------|-------------------------------|--------------------------|
//! | gl, sl(m\|n) | ε_1..ε_m, δ_1..δ_n            | (+1^m, −1^n)             |
//! | osp(M\|2n)   | ε_1..ε_⌊M/2⌋, δ_1..δ_n        | (+1.., −1..)             |
//! | D(2,1;α)     | ε_1, ε_2, ε_3                 | (−(1+α), 1, α)           |
//! | g(3)         | e_1, e_2, e_3, δ              | (1, 1, 1, −2/3)          |
//! | f(4)         | ε_1, ε_2, ε_3, δ              | (1, 1, 1, −3)            |
//! | q(n)         | ε_1..ε_n                      | (+1^n), not invariant    |
//!
//! For `g(3)` the short roots `ε_i` (with `ε_1 + ε_2 + ε_3 = 0`) are realized
//! as `e_i − (e_1 + e_2 + e_3)/3`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::exactnum::Matrix;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSysError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("isotropy undefined: q(n) handled by parity criteria")]
    NotContragredient,
    #[error("no isotropic roots")]
    NoIsotropicRoots,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family<T> {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    /// `osp(M|2n)`.
    Osp { m: usize, n: usize },
    D21a(T),
    G3,
    F4,
    Q(usize),
}

impl<T: fmt::Display> fmt::Display for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Gl { m, n } => write!(f, "gl({m}|{n})"),
            Family::Sl { m, n } => write!(f, "sl({m}|{n})"),
            Family::Osp { m, n } => write!(f, "osp({m}|{})", 2 * n),
            Family::D21a(a) => write!(f, "D(2,1;{a})"),
            Family::G3 => write!(f, "g(3)"),
            Family::F4 => write!(f, "f(4)"),
            Family::Q(n) => write!(f, "q({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector<T> {
    pub coords: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        WeightVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        WeightVector::new(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        WeightVector::new(self.coords.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        WeightVector::new(self.coords.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// Whether the first nonzero coordinate is positive.
    pub fn is_leading_positive(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }
}

impl<T: fmt::Display> fmt::Display for WeightVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A root together with its negative.
pub type RootPair<T> = (Root<T>, Root<T>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root<T> {
    pub vector: WeightVector<T>,
    pub parity: Parity,
}

impl<T: Scalar> Root<T> {
    pub fn neg(&self) -> Self {
        Root { vector: self.vector.neg(), parity: self.parity }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem<T> {
    pub family: Family<T>,
    /// Diagonal of the Gram matrix of the coordinate basis.
    pub form: Vec<T>,
    pub basis_labels: Vec<String>,
    pub roots: Vec<Root<T>>,
}

fn invalid<T>(family: &str, reason: &str) -> Result<T, RootSysError> {
    Err(RootSysError::InvalidParams { family: family.to_string(), reason: reason.to_string() })
}

/// Coordinate vector with `±1` entries at the given positions.
fn signed_unit<T: Scalar>(dim: usize, entries: &[(usize, i64)]) -> WeightVector<T> {
    let mut coords = vec![T::zero(); dim];
    for &(i, s) in entries {
        coords[i] = coords[i].clone() + T::from_int(s);
    }
    WeightVector::new(coords)
}

/// Adds `±v` with the given parity.
fn push_pm<T: Scalar>(roots: &mut Vec<Root<T>>, v: WeightVector<T>, parity: Parity) {
    roots.push(Root { vector: v.neg(), parity });
    roots.push(Root { vector: v, parity });
}

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl<T: Scalar> RootSystem<T> {
    pub fn build(family: Family<T>) -> Result<Self, RootSysError> {
        let mut roots = Vec::new();
        let (form, basis_labels) = match &family {
            Family::Gl { m, n } | Family::Sl { m, n } => {
                let (m, n) = (*m, *n);
                let dim = m + n;
                for i in 0..dim {
                    for j in i + 1..dim {
                        let same_block = (i < m) == (j < m);
                        let parity = if same_block { Parity::Even } else { Parity::Odd };
                        push_pm(&mut roots, signed_unit(dim, &[(i, 1), (j, -1)]), parity);
                    }
                }
                let form = (0..dim).map(|i| T::from_int(if i < m { 1 } else { -1 })).collect();
                let mut names = labels("e", m);
                names.extend(labels("d", n));
                (form, names)
            }
            Family::Osp { m: big_m, n } => {
                let (k, n) = (big_m / 2, *n);
                let odd_m = big_m % 2 == 1;
                if n == 0 && k == 0 {
                    return invalid(&family.to_string(), "empty algebra");
                }
                let dim = k + n;
                let eps = |i: usize| i;
                let del = |j: usize| k + j;
                for i in 0..k {
                    for j in i + 1..k {
                        for s in [1, -1] {
                            push_pm(&mut roots, signed_unit(dim, &[(eps(i), 1), (eps(j), s)]), Parity::Even);
                        }
                    }
                    if odd_m {
                        push_pm(&mut roots, signed_unit(dim, &[(eps(i), 1)]), Parity::Even);
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        for s in [1, -1] {
                            push_pm(&mut roots, signed_unit(dim, &[(del(i), 1), (del(j), s)]), Parity::Even);
                        }
                    }
                    push_pm(&mut roots, signed_unit(dim, &[(del(i), 2)]), Parity::Even);
                    if odd_m {
                        push_pm(&mut roots, signed_unit(dim, &[(del(i), 1)]), Parity::Odd);
                    }
                }
                for i in 0..k {
                    for j in 0..n {
                        for s in [1, -1] {
                            push_pm(&mut roots, signed_unit(dim, &[(eps(i), 1), (del(j), s)]), Parity::Odd);
                        }
                    }
                }
                let form = (0..dim).map(|i| T::from_int(if i < k { 1 } else { -1 })).collect();
                let mut names = labels("e", k);
                names.extend(labels("d", n));
                (form, names)
            }
            Family::D21a(alpha) => {
                if alpha.is_zero() || (alpha.clone() + T::one()).is_zero() {
                    return invalid(&family.to_string(), "alpha must avoid 0 and -1");
                }
                for i in 0..3 {
                    push_pm(&mut roots, signed_unit(3, &[(i, 2)]), Parity::Even);
                }
                for s2 in [1, -1] {
                    for s3 in [1, -1] {
                        push_pm(&mut roots, signed_unit(3, &[(0, 1), (1, s2), (2, s3)]), Parity::Odd);
                    }
                }
                let form = vec![-(T::one() + alpha.clone()), T::one(), alpha.clone()];
                (form, labels("e", 3))
            }
            Family::G3 => {
                let third = T::one() / T::from_int(3);
                // short G2 root eps_i, realized in the sum-zero plane
                let eps = |i: usize| {
                    let mut c: Vec<T> = (0..4)
                        .map(|j| if j < 3 { -third.clone() } else { T::zero() })
                        .collect();
                    c[i] = c[i].clone() + T::one();
                    WeightVector::new(c)
                };
                let delta = signed_unit::<T>(4, &[(3, 1)]);
                for i in 0..3 {
                    push_pm(&mut roots, eps(i), Parity::Even);
                    for j in i + 1..3 {
                        push_pm(&mut roots, eps(i).add(&eps(j).neg()), Parity::Even);
                    }
                }
                push_pm(&mut roots, delta.scale(&T::from_int(2)), Parity::Even);
                push_pm(&mut roots, delta.clone(), Parity::Odd);
                for i in 0..3 {
                    push_pm(&mut roots, eps(i).add(&delta), Parity::Odd);
                    push_pm(&mut roots, eps(i).add(&delta.neg()), Parity::Odd);
                }
                let form = vec![
                    T::one(),
                    T::one(),
                    T::one(),
                    -(T::from_int(2) / T::from_int(3)),
                ];
                let mut names = labels("e", 3);
                names.push("d".into());
                (form, names)
            }
            Family::F4 => {
                for i in 0..3 {
                    for j in i + 1..3 {
                        for s in [1, -1] {
                            push_pm(&mut roots, signed_unit(4, &[(i, 1), (j, s)]), Parity::Even);
                        }
                    }
                    push_pm(&mut roots, signed_unit(4, &[(i, 1)]), Parity::Even);
                }
                push_pm(&mut roots, signed_unit(4, &[(3, 1)]), Parity::Even);
                let half = T::one() / T::from_int(2);
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        for s3 in [1, -1] {
                            let v = signed_unit::<T>(4, &[(0, 1), (1, s2), (2, s3), (3, s1)]);
                            push_pm(&mut roots, v.scale(&half), Parity::Odd);
                        }
                    }
                }
                let form = vec![T::one(), T::one(), T::one(), -T::from_int(3)];
                let mut names = labels("e", 3);
                names.push("d".into());
                (form, names)
            }
            Family::Q(n) => {
                let n = *n;
                for i in 0..n {
                    for j in i + 1..n {
                        let v = signed_unit::<T>(n, &[(i, 1), (j, -1)]);
                        // every root space of q(n) has dimension (1|1)
                        push_pm(&mut roots, v.clone(), Parity::Even);
                        push_pm(&mut roots, v, Parity::Odd);
                    }
                }
                ((0..n).map(|_| T::one()).collect(), labels("e", n))
            }
        };
        Ok(RootSystem { family, form, basis_labels, roots })
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn is_contragredient(&self) -> bool {
        !matches!(self.family, Family::Q(_))
    }

    pub fn inner(&self, v: &WeightVector<T>, w: &WeightVector<T>) -> Result<T, RootSysError> {
        for x in [v, w] {
            if x.dim() != self.dim() {
                return Err(RootSysError::DimensionMismatch { expected: self.dim(), got: x.dim() });
            }
        }
        Ok(self
            .form
            .iter()
            .zip(v.coords.iter().zip(&w.coords))
            .fold(T::zero(), |acc, (f, (a, b))| acc + f.clone() * a.clone() * b.clone()))
    }

    fn inner_unchecked(&self, v: &WeightVector<T>, w: &WeightVector<T>) -> T {
        self.inner(v, w).expect("roots share the ambient dimension")
    }

    pub fn even_roots(&self) -> impl Iterator<Item = &Root<T>> {
        self.roots.iter().filter(|r| r.parity == Parity::Even)
    }

    pub fn odd_roots(&self) -> impl Iterator<Item = &Root<T>> {
        self.roots.iter().filter(|r| r.parity == Parity::Odd)
    }

    /// `(even, odd)` multiplicity of a root vector.
    pub fn multiplicity(&self, v: &WeightVector<T>) -> (usize, usize) {
        self.roots.iter().filter(|r| &r.vector == v).fold((0, 0), |(e, o), r| match r.parity {
            Parity::Even => (e + 1, o),
            Parity::Odd => (e, o + 1),
        })
    }

    pub fn isotropic_roots(&self) -> Result<Vec<Root<T>>, RootSysError> {
        if !self.is_contragredient() {
            return Err(RootSysError::NotContragredient);
        }
        Ok(self
            .odd_roots()
            .filter(|r| self.inner_unchecked(&r.vector, &r.vector).is_zero())
            .cloned()
            .collect())
    }

    /// Witt index of the diagonal form: an upper bound for any totally
    /// isotropic subspace.
    fn witt_bound(&self) -> usize {
        let pos = self.form.iter().filter(|x| x.is_positive()).count();
        let neg = self.form.iter().filter(|x| x.is_negative()).count();
        pos.min(neg)
    }

    /// Isotropic roots up to sign, in the search order used for defect sets:
    /// leading-positive representatives, sorted by descending lexicographic
    /// order of absolute coordinates, then of signed coordinates.
    fn ordered_isotropic_representatives(&self) -> Result<Vec<Root<T>>, RootSysError> {
        let mut reps: Vec<Root<T>> = self
            .isotropic_roots()?
            .into_iter()
            .filter(|r| r.vector.is_leading_positive())
            .collect();
        let lex_desc = |a: &[T], b: &[T]| -> Ordering {
            for (x, y) in a.iter().zip(b) {
                match y.partial_cmp(x) {
                    Some(Ordering::Equal) | None => continue,
                    Some(o) => return o,
                }
            }
            Ordering::Equal
        };
        reps.sort_by(|a, b| {
            let abs_a: Vec<T> = a.vector.coords.iter().map(|c| c.abs()).collect();
            let abs_b: Vec<T> = b.vector.coords.iter().map(|c| c.abs()).collect();
            lex_desc(&abs_a, &abs_b).then_with(|| lex_desc(&a.vector.coords, &b.vector.coords))
        });
        reps.dedup_by(|a, b| a.vector == b.vector);
        Ok(reps)
    }

    /// First maximum mutually orthogonal, linearly independent set of
    /// isotropic roots in search order.
    fn max_orthogonal_isotropic_set(&self) -> Result<Vec<Root<T>>, RootSysError> {
        let reps = self.ordered_isotropic_representatives()?;
        let mut search = DefectSearch {
            system: self,
            reps: &reps,
            bound: self.witt_bound(),
            best: Vec::new(),
            current: Vec::new(),
        };
        search.run(0);
        Ok(search.best.into_iter().map(|i| reps[i].clone()).collect())
    }

    /// Maximal number of mutually orthogonal linearly independent isotropic roots.
    pub fn defect(&self) -> Result<usize, RootSysError> {
        Ok(self.max_orthogonal_isotropic_set()?.len())
    }

    /// Roots `{±α_1, .., ±α_d}` of a defect subgroup, as `(α_i, −α_i)` pairs.
    pub fn defect_subgroup_roots(&self) -> Result<Vec<RootPair<T>>, RootSysError> {
        let set = self.max_orthogonal_isotropic_set()?;
        if set.is_empty() {
            return Err(RootSysError::NoIsotropicRoots);
        }
        Ok(set.into_iter().map(|r| {
            let neg = r.neg();
            (r, neg)
        }).collect())
    }

    /// Same system with coordinates permuted: new coordinate `i` is old `perm[i]`.
    pub fn permute_coords(&self, perm: &[usize]) -> Result<Self, RootSysError> {
        if perm.len() != self.dim() {
            return Err(RootSysError::DimensionMismatch { expected: self.dim(), got: perm.len() });
        }
        let permute = |v: &WeightVector<T>| {
            WeightVector::new(perm.iter().map(|&p| v.coords[p].clone()).collect())
        };
        Ok(RootSystem {
            family: self.family.clone(),
            form: perm.iter().map(|&p| self.form[p].clone()).collect(),
            basis_labels: perm.iter().map(|&p| self.basis_labels[p].clone()).collect(),
            roots: self
                .roots
                .iter()
                .map(|r| Root { vector: permute(&r.vector), parity: r.parity })
                .collect(),
        })
    }

    /// Human readable form of a weight in the basis labels, e.g. `e1 - d1`.
    pub fn describe(&self, v: &WeightVector<T>) -> String {
        let mut out = String::new();
        for (c, label) in v.coords.iter().zip(&self.basis_labels) {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude}*"));
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

struct DefectSearch<'a, T> {
    system: &'a RootSystem<T>,
    reps: &'a [Root<T>],
    bound: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl<T: Scalar> DefectSearch<'_, T> {
    /// Include-first DFS; returns true once the Witt bound is attained.
    fn run(&mut self, start: usize) -> bool {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
            if self.best.len() == self.bound {
                return true;
            }
        }
        for idx in start..self.reps.len() {
            if self.current.len() + (self.reps.len() - idx) <= self.best.len() {
                break;
            }
            if self.admissible(idx) {
                self.current.push(idx);
                let done = self.run(idx + 1);
                self.current.pop();
                if done {
                    return true;
                }
            }
        }
        false
    }

    fn admissible(&self, idx: usize) -> bool {
        let candidate = &self.reps[idx].vector;
        let orthogonal = self
            .current
            .iter()
            .all(|&i| self.system.inner_unchecked(&self.reps[i].vector, candidate).is_zero());
        if !orthogonal {
            return false;
        }
        let rows: Vec<Vec<T>> = self
            .current
            .iter()
            .map(|&i| self.reps[i].vector.coords.clone())
            .chain(std::iter::once(candidate.coords.clone()))
            .collect();
        let count = rows.len();
        Matrix::from_rows(rows).map(|m| m.rank() == count).unwrap_or(false)
    }
}

/// Closed-form defect for the implemented families, used as a cross-check
/// of the exhaustive search.
pub fn defect_formula<T>(family: &Family<T>) -> Option<usize> {
    match family {
        Family::Gl { m, n } | Family::Sl { m, n } => Some(*m.min(n)),
        Family::Osp { m, n } => Some((m / 2).min(*n)),
        Family::D21a(_) | Family::G3 | Family::F4 => Some(1),
        Family::Q(_) => None,
    }
}
