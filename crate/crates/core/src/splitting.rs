//! Splitting criteria and certified chains of splitting subgroups.
//!
//! A [`SubgroupChain`] lists inclusions `K = H_0 ⊂ H_1 ⊂ … ⊂ H_k = G`, each
//! carrying the rule that makes it splitting and a recomputable witness.
//! Splitting is transitive along chains, so a validated chain certifies that
//! `K` is splitting in `G`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassvol::{sdim, GrassSpec, SuperDim};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("unsupported group {0}: chains are built for a single GL(m|n) or Q(n)")]
    Unsupported(GroupDesc),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("step {index} ({rule}) fails: {reason}")]
    InvalidStep { index: usize, rule: Rule, reason: String },
    #[error("steps {0} and {1} do not compose")]
    Broken(usize, usize),
}

/// A simple factor of a product of supergroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "UPPERCASE")]
pub enum Factor {
    Gl { m: u32, n: u32 },
    Sl { m: u32, n: u32 },
    Q { n: u32 },
}

impl Factor {
    pub fn is_trivial(self) -> bool {
        match self {
            Factor::Gl { m, n } => m + n == 0,
            Factor::Sl { m, n } => m + n <= 1,
            Factor::Q { n } => n == 0,
        }
    }

    /// Even and odd dimensions of the Lie superalgebra.
    pub fn lie_dims(self) -> SuperDim {
        let sq = |x: u32| x as u64 * x as u64;
        match self {
            Factor::Gl { m, n } => SuperDim { even: sq(m) + sq(n), odd: 2 * m as u64 * n as u64 },
            Factor::Sl { m, n } => SuperDim { even: sq(m) + sq(n) - 1, odd: 2 * m as u64 * n as u64 },
            Factor::Q { n } => SuperDim { even: sq(n), odd: sq(n) },
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gl { m, n } => write!(f, "GL({m}|{n})"),
            Factor::Sl { m, n } => write!(f, "SL({m}|{n})"),
            Factor::Q { n } => write!(f, "Q({n})"),
        }
    }
}

/// A product of simple factors, flattened, with trivial factors dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Factor>", into = "Vec<Factor>")]
pub struct GroupDesc {
    factors: Vec<Factor>,
}

impl GroupDesc {
    pub fn product(factors: impl IntoIterator<Item = Factor>) -> Self {
        GroupDesc { factors: factors.into_iter().filter(|f| !f.is_trivial()).collect() }
    }

    pub fn gl(m: u32, n: u32) -> Self {
        Self::product([Factor::Gl { m, n }])
    }

    pub fn q(n: u32) -> Self {
        Self::product([Factor::Q { n }])
    }

    pub fn trivial() -> Self {
        Self::product([])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn times(&self, other: &GroupDesc) -> Self {
        Self::product(self.factors.iter().chain(&other.factors).copied())
    }

    pub fn lie_dims(&self) -> SuperDim {
        self.factors.iter().fold(SuperDim { even: 0, odd: 0 }, |acc, f| {
            let d = f.lie_dims();
            SuperDim { even: acc.even + d.even, odd: acc.odd + d.odd }
        })
    }

    fn replace(&self, index: usize, with: &[Factor]) -> Self {
        let mut out = self.factors[..index].to_vec();
        out.extend_from_slice(with);
        out.extend_from_slice(&self.factors[index + 1..]);
        Self::product(out)
    }
}

impl From<Vec<Factor>> for GroupDesc {
    fn from(v: Vec<Factor>) -> Self {
        Self::product(v)
    }
}

impl From<GroupDesc> for Vec<Factor> {
    fn from(g: GroupDesc) -> Self {
        g.factors
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{{1}}");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let run = self.factors[i..].iter().take_while(|&&x| x == self.factors[i]).count();
            parts.push(if run == 1 {
                self.factors[i].to_string()
            } else {
                format!("{}^{run}", self.factors[i])
            });
            i += run;
        }
        write!(f, "{}", parts.join("×"))
    }
}

/// Why a single inclusion is splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// `GL(r|s)×GL(m−r|n−s) ⊂ GL(m|n)` at `factor`; needs `sdim Gr(r|s,m|n) ≥ 0`.
    LeviGl { factor: usize, r: u32, s: u32 },
    /// `Q(r)×Q(n−r) ⊂ Q(n)` at `factor`; needs `r(n−r)` even.
    LeviQ { factor: usize, r: u32 },
    /// `H ⊂ H×E` with `E` a purely even factor at `factor`.
    FactorSplit { factor: usize },
    /// `K ⊂ G` with equal odd parts.
    OddPartsEqual,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::LeviGl { .. } => write!(f, "LEVI_GL"),
            Rule::LeviQ { .. } => write!(f, "LEVI_Q"),
            Rule::FactorSplit { .. } => write!(f, "FACTOR_SPLIT"),
            Rule::OddPartsEqual => write!(f, "ODD_PARTS_EQUAL"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub sub: GroupDesc,
    pub sup: GroupDesc,
    pub rule: Rule,
    /// `sdim` for LEVI_GL, `r(n−r)` for LEVI_Q, odd dimension of the removed
    /// factor for FACTOR_SPLIT, odd-dimension difference for ODD_PARTS_EQUAL.
    pub evidence: i64,
}

impl ChainStep {
    /// Builds a step from `sup` and a rule, computing `sub` and the evidence.
    pub fn apply(sup: &GroupDesc, rule: Rule) -> Result<Self, String> {
        let sub = match rule {
            Rule::LeviGl { factor, r, s } => match sup.factors.get(factor) {
                Some(&Factor::Gl { m, n }) if r <= m && s <= n => {
                    sup.replace(factor, &[Factor::Gl { m: r, n: s }, Factor::Gl { m: m - r, n: n - s }])
                }
                other => return Err(format!("no GL factor containing GL({r}|{s}) at {factor}: {other:?}")),
            },
            Rule::LeviQ { factor, r } => match sup.factors.get(factor) {
                Some(&Factor::Q { n }) if r <= n => sup.replace(factor, &[Factor::Q { n: r }, Factor::Q { n: n - r }]),
                other => return Err(format!("no Q factor containing Q({r}) at {factor}: {other:?}")),
            },
            Rule::FactorSplit { factor } => {
                if factor >= sup.factors.len() {
                    return Err(format!("no factor at {factor}"));
                }
                sup.replace(factor, &[])
            }
            Rule::OddPartsEqual => GroupDesc::product(sup.factors.iter().map(|&f| match f {
                Factor::Gl { m, n } if m * n > 0 => Factor::Sl { m, n },
                other => other,
            })),
        };
        let evidence = Self::witness(&sub, sup, rule)?;
        Ok(ChainStep { sub, sup: sup.clone(), rule, evidence })
    }

    fn witness(sub: &GroupDesc, sup: &GroupDesc, rule: Rule) -> Result<i64, String> {
        match rule {
            Rule::LeviGl { factor, r, s } => match sup.factors.get(factor) {
                Some(&Factor::Gl { m, n }) => Ok(sdim(
                    GrassSpec::new(r, s, m, n).map_err(|e| e.to_string())?,
                )),
                _ => Err(format!("no GL factor at {factor}")),
            },
            Rule::LeviQ { factor, r } => match sup.factors.get(factor) {
                Some(&Factor::Q { n }) if r <= n => Ok(r as i64 * (n - r) as i64),
                _ => Err(format!("no Q factor containing Q({r}) at {factor}")),
            },
            Rule::FactorSplit { factor } => match sup.factors.get(factor) {
                Some(f) => Ok(f.lie_dims().odd as i64),
                None => Err(format!("no factor at {factor}")),
            },
            Rule::OddPartsEqual => Ok(sup.lie_dims().odd as i64 - sub.lie_dims().odd as i64),
        }
    }

    /// Recomputes `sub` and the evidence, then checks the rule's criterion.
    pub fn certify(&self) -> Result<(), String> {
        let expected = Self::apply(&self.sup, self.rule)?;
        if expected.sub != self.sub {
            return Err(format!("expected subgroup {}, found {}", expected.sub, self.sub));
        }
        if expected.evidence != self.evidence {
            return Err(format!("evidence {} recomputes to {}", self.evidence, expected.evidence));
        }
        let ok = match self.rule {
            Rule::LeviGl { .. } => self.evidence >= 0,
            Rule::LeviQ { .. } => self.evidence % 2 == 0,
            Rule::FactorSplit { .. } | Rule::OddPartsEqual => self.evidence == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("evidence {} does not certify the rule", self.evidence))
        }
    }
}

/// Steps ordered from the smallest subgroup up to the ambient group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupChain {
    pub group: GroupDesc,
    pub steps: Vec<ChainStep>,
}

impl SubgroupChain {
    /// The bottom of the chain; the group itself when there are no steps.
    pub fn subgroup(&self) -> &GroupDesc {
        self.steps.first().map_or(&self.group, |s| &s.sub)
    }

    pub fn validate(&self) -> Result<(), SplittingError> {
        for (i, pair) in self.steps.windows(2).enumerate() {
            if pair[0].sup != pair[1].sub {
                return Err(SplittingError::Broken(i, i + 1));
            }
        }
        if let Some(last) = self.steps.last() {
            if last.sup != self.group {
                return Err(SplittingError::Broken(self.steps.len() - 1, self.steps.len()));
            }
        }
        for (index, step) in self.steps.iter().enumerate() {
            step.certify()
                .map_err(|reason| SplittingError::InvalidStep { index, rule: step.rule, reason })?;
        }
        Ok(())
    }
}

/// `GL(r|s)×GL(m−r|n−s) ⊂ GL(m|n)` is splitting iff `sdim Gr(r|s,m|n) ≥ 0`.
pub fn is_splitting_levi_gl(r: u32, s: u32, m: u32, n: u32) -> Result<(bool, i64), SplittingError> {
    let spec = GrassSpec::new(r, s, m, n).map_err(|e| SplittingError::InvalidParams(e.to_string()))?;
    let e = sdim(spec);
    Ok((e >= 0, e))
}

/// `Q(r)×Q(n−r) ⊂ Q(n)` is splitting iff `r(n−r)` is even.
pub fn is_splitting_levi_q(r: u32, n: u32) -> Result<(bool, i64), SplittingError> {
    if r > n {
        return Err(SplittingError::InvalidParams(format!("need r <= n, got r={r}, n={n}")));
    }
    let e = r as i64 * (n - r) as i64;
    Ok((e % 2 == 0, e))
}

/// The chain down to `SL(1|1)^d` for `GL(m|n)` and to `Q(2)^d` or
/// `Q(2)^d×Q(1)` for `Q(n)`.
pub fn minimal_chain(group: &GroupDesc) -> Result<SubgroupChain, SplittingError> {
    let mut current = group.clone();
    let mut steps = Vec::new();
    let mut push = |current: &mut GroupDesc, rule| {
        let step = ChainStep::apply(current, rule).expect("rule applies by construction");
        *current = step.sub.clone();
        steps.push(step);
    };
    match group.factors() {
        [] => {}
        &[Factor::Gl { m, n }] => {
            let d = m.min(n) as usize;
            for k in 0..d {
                if let Some(&Factor::Gl { m: a, n: b }) = current.factors().get(k) {
                    if (a, b) != (1, 1) {
                        push(&mut current, Rule::LeviGl { factor: k, r: 1, s: 1 });
                    }
                }
            }
            if m != n {
                push(&mut current, Rule::FactorSplit { factor: d });
            }
            if d > 0 {
                push(&mut current, Rule::OddPartsEqual);
            }
        }
        &[Factor::Q { n }] => {
            let mut k = 0;
            while let Some(&Factor::Q { n: rest }) = current.factors().get(k) {
                if rest <= 2 {
                    break;
                }
                push(&mut current, Rule::LeviQ { factor: k, r: 2 });
                k += 1;
            }
            debug_assert!(current.factors().iter().all(|f| matches!(f, Factor::Q { n: 1 | 2 })), "{n}");
        }
        _ => return Err(SplittingError::Unsupported(group.clone())),
    }
    steps.reverse();
    Ok(SubgroupChain { group: group.clone(), steps })
}

/// `(g.even − k.even) − (g.odd − k.odd)`, the superdimension of `G/K`.
pub fn quotient_sdim(g: SuperDim, k: SuperDim) -> Result<i64, SplittingError> {
    if k.even > g.even || k.odd > g.odd {
        return Err(SplittingError::InvalidParams(format!("subalgebra dims {k} exceed {g}")));
    }
    Ok((g.even - k.even) as i64 - (g.odd - k.odd) as i64)
}

/// A splitting subgroup must have `sdim G/K ≥ 0`.
pub fn sdim_necessity(g: SuperDim, k: SuperDim) -> Result<bool, SplittingError> {
    Ok(quotient_sdim(g, k)? >= 0)
}

/// Lie dims of `gl(m|n)` and of its Levi subalgebra `gl(r|s)⊕gl(m−r|n−s)`.
pub fn levi_gl_dims(r: u32, s: u32, m: u32, n: u32) -> Result<(SuperDim, SuperDim), SplittingError> {
    GrassSpec::new(r, s, m, n).map_err(|e| SplittingError::InvalidParams(e.to_string()))?;
    let g = GroupDesc::gl(m, n);
    let k = GroupDesc::product([Factor::Gl { m: r, n: s }, Factor::Gl { m: m - r, n: n - s }]);
    Ok((g.lie_dims(), k.lie_dims()))
}

/// Defect-one and projective cases handled by reduction rather than by a chain.
pub const REDUCTIONS: &[(&str, &str, &str)] = &[
    ("PSL(n|n)", "P(SL(1|1)^n)", "image of the GL(n|n) chain under the quotient map"),
    ("SQ(n)", "K ∩ SQ(n)", "intersection with the Q(n) chain subgroup"),
    ("PQ(n)", "image of K", "image of the Q(n) chain subgroup"),
    ("GL(m|n), n > m", "GL(m|n−1)×GL(1)", "symmetric pair, LEVI_GL criterion"),
    ("SOSp(m|2n), m odd or m > 2n", "SOSp(m−1|2n)", "symmetric pair"),
    ("SOSp(2m|2n), n > m", "SOSp(2m|2n−2)×Sp(2)", "symmetric pair, Casimir positivity"),
    ("D(2,1;α)", "SOSp(2|2)×SO(2)", "symmetric pair, weight test"),
    ("G(1|2)", "D(2,1;3)", "symmetric pair, Casimir positivity"),
    ("F(1|3)", "D(1,2;2)×SL(2)", "symmetric pair, Casimir positivity"),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(m: u32, n: u32) -> Factor {
        Factor::Gl { m, n }
    }

    #[test]
    fn levi_gl_examples() {
        assert_eq!(is_splitting_levi_gl(1, 1, 4, 3).unwrap(), (true, 0));
        assert_eq!(is_splitting_levi_gl(2, 0, 3, 4).unwrap(), (false, -6));
        for m in 2..6 {
            for n in 1..m {
                assert!(is_splitting_levi_gl(n, n, m, n).unwrap().0);
            }
        }
        assert!(is_splitting_levi_gl(3, 0, 2, 0).is_err());
    }

    #[test]
    fn levi_q_examples() {
        for n in 2..10 {
            assert!(is_splitting_levi_q(2, n).unwrap().0);
        }
        assert_eq!(is_splitting_levi_q(1, 2).unwrap(), (false, 1));
        assert_eq!(is_splitting_levi_q(1, 3).unwrap(), (true, 2));
    }

    #[test]
    fn gl21_chain() {
        let chain = minimal_chain(&GroupDesc::gl(2, 1)).unwrap();
        chain.validate().unwrap();
        assert_eq!(chain.steps.len(), 3);
        assert_eq!(chain.subgroup(), &GroupDesc::product([Factor::Sl { m: 1, n: 1 }]));
        let levi: Vec<_> = chain.steps.iter().filter(|s| matches!(s.rule, Rule::LeviGl { .. })).collect();
        assert_eq!(levi.len(), 1);
        assert_eq!(levi[0].evidence, 0);
        assert_eq!(chain.steps[2].sup, GroupDesc::gl(2, 1));
        assert_eq!(chain.steps[2].sub, GroupDesc::product([gl(1, 1), gl(1, 0)]));
    }

    #[test]
    fn gl32_chain() {
        let chain = minimal_chain(&GroupDesc::gl(3, 2)).unwrap();
        chain.validate().unwrap();
        assert_eq!(chain.steps.len(), 4);
        assert_eq!(chain.subgroup().to_string(), "SL(1|1)^2");
    }

    #[test]
    fn degenerate_gl_chains() {
        assert!(minimal_chain(&GroupDesc::gl(0, 0)).unwrap().steps.is_empty());
        let c = minimal_chain(&GroupDesc::gl(3, 0)).unwrap();
        c.validate().unwrap();
        assert_eq!(c.subgroup(), &GroupDesc::trivial());
        let c = minimal_chain(&GroupDesc::gl(2, 2)).unwrap();
        c.validate().unwrap();
        assert_eq!(c.steps.len(), 2);
        let c = minimal_chain(&GroupDesc::gl(1, 3)).unwrap();
        c.validate().unwrap();
        assert_eq!(c.subgroup().to_string(), "SL(1|1)");
    }

    #[test]
    fn q5_chain() {
        let chain = minimal_chain(&GroupDesc::q(5)).unwrap();
        chain.validate().unwrap();
        let top_down: Vec<_> = chain.steps.iter().rev().map(|s| (s.sub.to_string(), s.evidence)).collect();
        assert_eq!(top_down, vec![("Q(2)×Q(3)".to_string(), 6), ("Q(2)^2×Q(1)".to_string(), 2)]);
    }

    #[test]
    fn small_q_chains_are_empty() {
        for n in 0..=2 {
            assert!(minimal_chain(&GroupDesc::q(n)).unwrap().steps.is_empty());
        }
    }

    #[test]
    fn unsupported_group() {
        let g = GroupDesc::product([gl(1, 1), gl(1, 1)]);
        assert!(matches!(minimal_chain(&g), Err(SplittingError::Unsupported(_))));
    }

    #[test]
    fn tampered_chain_fails() {
        let mut chain = minimal_chain(&GroupDesc::gl(3, 2)).unwrap();
        chain.steps[1].evidence = 1;
        assert!(chain.validate().is_err());
        let mut chain = minimal_chain(&GroupDesc::gl(3, 2)).unwrap();
        chain.steps.remove(1);
        assert!(matches!(chain.validate(), Err(SplittingError::Broken(..))));
        let bad = ChainStep::apply(&GroupDesc::gl(3, 4), Rule::LeviGl { factor: 0, r: 2, s: 0 }).unwrap();
        assert_eq!(bad.evidence, -6);
        assert!(bad.certify().is_err());
    }

    #[test]
    fn sdim_necessity_examples() {
        let g = GroupDesc::gl(3, 4).lie_dims();
        assert!(sdim_necessity(g, g).unwrap());
        let k = GroupDesc::product([gl(2, 0), gl(1, 4)]).lie_dims();
        assert_eq!(quotient_sdim(g, k).unwrap(), -12);
        assert!(!sdim_necessity(g, k).unwrap());
        assert!(quotient_sdim(k, g).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let chain = minimal_chain(&GroupDesc::gl(3, 2)).unwrap();
        let json = serde_json::to_string(&chain).unwrap();
        let back: SubgroupChain = serde_json::from_str(&json).unwrap();
        assert_eq!(back, chain);
    }
}
