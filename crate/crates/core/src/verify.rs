//! Identity sweeps: every invariant of the library, checked over bounded
//! ranges or seeded random samples.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactnum::{alpha_diagonal, alpha_pfaffian, diagonal_model, pfaffian, AlphaInput, Matrix, SkewMatrix};
use crate::grassvol::{
    check_cor_one, check_lemma_sign, dims, sdim, volume, volume_via_general_positive, GrassSpec,
};
use crate::qlocal::{c_bruteforce, c_closed, check_recursions, check_recursions_with, gl_localization, ParamVector};
use crate::rootsys::{defect_formula, Family, Parity, RootSystem};
use crate::splitting::{
    is_splitting_levi_gl, is_splitting_levi_q, levi_gl_dims, minimal_chain, quotient_sdim, GroupDesc, Rule,
};
use crate::sympair::{builtin_pairs, d21a_in_a_star, dominant_grid, gram_minors, RestrictedPair};
use crate::{int, Rational};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_GRASS_MAX_N: u32 = 6;
pub const DEFAULT_C_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub grass_max_n: u32,
    pub c_max_n: usize,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: DEFAULT_SEED, grass_max_n: DEFAULT_GRASS_MAX_N, c_max_n: DEFAULT_C_MAX_N, samples: 3 }
    }
}

impl VerifyConfig {
    /// Uses `max_n` for every sweep bound.
    pub fn with_max_n(mut self, max_n: u32) -> Self {
        self.grass_max_n = max_n;
        self.c_max_n = max_n as usize;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

type Outcome = Result<usize, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random integer in `[-bound, bound]`.
fn small_int(rng: &mut impl Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// Random nonzero rational `p/q` with `|p|, q ≤ bound`.
pub fn random_nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let p = rng.gen_range(-bound..=bound);
        if p != 0 {
            return crate::rat(p, rng.gen_range(1..=bound));
        }
    }
}

/// Random skew matrix with small integer entries above the diagonal.
pub fn random_skew(rng: &mut impl Rng, size: usize) -> SkewMatrix<Rational> {
    let upper: Vec<Rational> = (0..size * size.saturating_sub(1) / 2).map(|_| small_int(rng, 5)).collect();
    SkewMatrix::from_upper(size, &upper).expect("upper triangle has the right length")
}

pub fn random_matrix(rng: &mut impl Rng, size: usize) -> Matrix<Rational> {
    Matrix::from_fn(size, size, |_, _| small_int(rng, 3))
}

/// Diagonal model data `(c, d)` with nonzero rational entries.
pub fn random_diagonal_data(rng: &mut impl Rng, n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let c = (0..n).map(|_| random_nonzero_rational(rng, 9)).collect();
    let d = (0..n).map(|_| random_nonzero_rational(rng, 9)).collect();
    (c, d)
}

/// `α ∉ {0, −1}`.
pub fn random_d21a_parameter(rng: &mut impl Rng) -> Rational {
    loop {
        let a = random_nonzero_rational(rng, 7);
        if a != -Rational::one() {
            return a;
        }
    }
}

struct Runner {
    checks: Vec<CheckResult>,
}

impl Runner {
    fn run(&mut self, suite: &str, name: &str, f: impl FnOnce() -> Outcome) {
        let (cases, passed, failure) = match f() {
            Ok(cases) => (cases, true, None),
            Err(e) => (0, false, Some(e)),
        };
        self.checks.push(CheckResult { suite: suite.into(), name: name.into(), cases, passed, failure });
    }
}

pub fn run_all(config: &VerifyConfig) -> VerifyReport {
    let mut runner = Runner { checks: Vec::new() };
    exactnum_suite(&mut runner, config);
    rootsys_suite(&mut runner, config);
    sympair_suite(&mut runner);
    grassvol_suite(&mut runner, config);
    qlocal_suite(&mut runner, config);
    splitting_suite(&mut runner, config);
    let passed = runner.checks.iter().filter(|c| c.passed).count();
    VerifyReport { config: *config, failed: runner.checks.len() - passed, passed, checks: runner.checks }
}

fn exactnum_suite(runner: &mut Runner, config: &VerifyConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    runner.run("exactnum", "pfaffian squared is determinant", || {
        for i in 0..100 {
            let m = random_skew(&mut rng, i % 11);
            let pf = pfaffian(&m).map_err(|e| e.to_string());
            let pf = if m.size() % 2 == 1 { Rational::zero() } else { pf? };
            let det = m.matrix().determinant().map_err(|e| e.to_string())?;
            ensure(&pf * &pf == det, || format!("Pf^2 != det for\n{}", m.matrix()))?;
        }
        Ok(100)
    });
    runner.run("exactnum", "pfaffian congruence", || {
        for i in 0..60 {
            let size = 2 * (i % 3 + 1);
            let m = random_skew(&mut rng, size);
            let p = random_matrix(&mut rng, size);
            let lhs = pfaffian(&m.congruence(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rhs = p.determinant().map_err(|e| e.to_string())? * pfaffian(&m).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || "Pf(P^t M P) != det(P) Pf(M)".into())?;
        }
        Ok(60)
    });
    runner.run("exactnum", "diagonal alpha matches pfaffian alpha", || {
        for i in 0..50 {
            let (c, d) = random_diagonal_data(&mut rng, i % 4 + 1);
            let input = diagonal_model(&c, &d).map_err(|e| e.to_string())?;
            let lhs = alpha_diagonal(&c, &d).map_err(|e| e.to_string())?;
            let rhs = alpha_pfaffian(&input).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("alpha mismatch for c={c:?}, d={d:?}"))?;
        }
        Ok(50)
    });
    runner.run("exactnum", "alpha multiplicative over direct sums", || {
        for _ in 0..30 {
            let (c1, d1) = random_diagonal_data(&mut rng, 2);
            let (c2, d2) = random_diagonal_data(&mut rng, 1);
            let a: AlphaInput<Rational> = diagonal_model(&c1, &d1).map_err(|e| e.to_string())?;
            let b = diagonal_model(&c2, &d2).map_err(|e| e.to_string())?;
            let whole = alpha_pfaffian(&a.direct_sum(&b)).map_err(|e| e.to_string())?;
            let parts = alpha_pfaffian(&a).map_err(|e| e.to_string())? * alpha_pfaffian(&b).map_err(|e| e.to_string())?;
            ensure(whole == parts, || "alpha(A ⊕ B) != alpha(A) alpha(B)".into())?;
        }
        Ok(30)
    });
}

fn rootsys_suite(runner: &mut Runner, config: &VerifyConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut families: Vec<Family<Rational>> = Vec::new();
    for m in 0..=4 {
        for n in 0..=4 {
            families.push(Family::Gl { m, n });
        }
    }
    families.extend([
        Family::Osp { m: 3, n: 1 },
        Family::Osp { m: 2, n: 1 },
        Family::Osp { m: 4, n: 2 },
        Family::G3,
        Family::F4,
        Family::D21a(int(1)),
        Family::Q(3),
    ]);
    let systems: Vec<_> = families.iter().filter_map(|f| RootSystem::build(f.clone()).ok()).collect();
    runner.run("rootsys", "roots closed under negation", || {
        for sys in &systems {
            for r in &sys.roots {
                ensure(sys.roots.contains(&r.neg()), || format!("{}: -root missing", sys.family))?;
            }
        }
        Ok(systems.len())
    });
    runner.run("rootsys", "gl odd roots isotropic, even roots not", || {
        let mut cases = 0;
        for sys in systems.iter().filter(|s| matches!(s.family, Family::Gl { .. })) {
            for r in &sys.roots {
                let sq = sys.inner(&r.vector, &r.vector).map_err(|e| e.to_string())?;
                ensure(sq.is_zero() == (r.parity == Parity::Odd), || format!("{}: root {}", sys.family, r.vector))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    runner.run("rootsys", "gl defect is min(m, n)", || {
        let mut cases = 0;
        for m in 0..=4 {
            for n in 0..=4 {
                let sys = RootSystem::<Rational>::build(Family::Gl { m, n }).map_err(|e| e.to_string())?;
                let d = sys.defect().map_err(|e| e.to_string())?;
                ensure(d == m.min(n), || format!("defect gl({m}|{n}) = {d}"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    runner.run("rootsys", "defect matches closed form", || {
        for sys in systems.iter().filter(|s| s.is_contragredient()) {
            let d = sys.defect().map_err(|e| e.to_string())?;
            ensure(Some(d) == defect_formula(&sys.family), || format!("{}: defect {d}", sys.family))?;
        }
        Ok(systems.len() - 1)
    });
    runner.run("rootsys", "defect invariant under coordinate permutations", || {
        let mut cases = 0;
        for m in 1..=3 {
            for n in 1..=3 {
                let sys = RootSystem::<Rational>::build(Family::Gl { m, n }).map_err(|e| e.to_string())?;
                for _ in 0..4 {
                    let mut eps: Vec<usize> = (0..m).collect();
                    let mut del: Vec<usize> = (m..m + n).collect();
                    eps.shuffle(&mut rng);
                    del.shuffle(&mut rng);
                    eps.extend(del);
                    let permuted = sys.permute_coords(&eps).map_err(|e| e.to_string())?;
                    ensure(permuted.defect() == sys.defect(), || format!("gl({m}|{n}) perm {eps:?}"))?;
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });
    runner.run("rootsys", "D(2,1;a) odd roots isotropic", || {
        for _ in 0..20 {
            let a = random_d21a_parameter(&mut rng);
            let sys = RootSystem::build(Family::D21a(a.clone())).map_err(|e| e.to_string())?;
            let iso = sys.isotropic_roots().map_err(|e| e.to_string())?;
            ensure(iso.len() == 8 && sys.odd_roots().count() == 8, || format!("alpha = {a}"))?;
        }
        Ok(20)
    });
}

fn sympair_suite(runner: &mut Runner) {
    let mut pairs: Vec<RestrictedPair<Rational>> = vec![RestrictedPair::g12(), RestrictedPair::f31()];
    for n in 1..=6 {
        for m in 0..n {
            pairs.push(RestrictedPair::osp(m, n).expect("n > m"));
        }
    }
    runner.run("sympair", "Casimir positive on dominant grid", || {
        let mut cases = 0;
        for pair in &pairs {
            for lambda in dominant_grid(pair).map_err(|e| e.to_string())? {
                let ok = pair.positivity_check(&lambda).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{}: (λ+2ρ, λ) <= 0 at {lambda}", pair.kind))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    runner.run("sympair", "rho coefficients round trip", || {
        for pair in &pairs {
            let rho = pair.rho_coefficients().map_err(|e| e.to_string())?;
            let back = pair.combine(&rho.coeffs).map_err(|e| e.to_string())?;
            ensure(back == pair.rho, || format!("{}: round trip", pair.kind))?;
        }
        Ok(pairs.len())
    });
    runner.run("sympair", "gram matrices positive definite", || {
        for pair in builtin_pairs::<Rational>(0, 1).map_err(|e| e.to_string())?.iter().chain(&pairs) {
            ensure(gram_minors(pair).iter().all(|x| x.is_positive()), || format!("{}", pair.kind))?;
        }
        Ok(pairs.len())
    });
    runner.run("sympair", "D(2,1;a) weight test", || {
        for l in 0..=100 {
            ensure(d21a_in_a_star(l) == (l <= 1), || format!("l = {l}"))?;
        }
        Ok(101)
    });
}

fn grass_specs(config: &VerifyConfig) -> impl Iterator<Item = GrassSpec> {
    GrassSpec::all_up_to(config.grass_max_n)
}

fn grassvol_suite(runner: &mut Runner, config: &VerifyConfig) {
    runner.run("grassvol", "volume nonzero iff sdim >= 0", || {
        let mut cases = 0;
        for spec in grass_specs(config) {
            ensure(volume(spec).is_zero() == (sdim(spec) < 0), || format!("{spec}"))?;
            cases += 1;
        }
        Ok(cases)
    });
    runner.run("grassvol", "parity symmetry", || {
        let mut cases = 0;
        for spec in grass_specs(config) {
            ensure(volume(spec) == volume(spec.parity_swap()), || format!("{spec}"))?;
            cases += 1;
        }
        Ok(cases)
    });
    runner.run("grassvol", "general positive formula agrees", || {
        let mut cases = 0;
        for spec in grass_specs(config).filter(|s| sdim(*s) >= 0 && s.r >= s.s) {
            let v = volume_via_general_positive(spec).map_err(|e| e.to_string())?;
            ensure(v == volume(spec), || format!("{spec}: {v} vs {}", volume(spec)))?;
            cases += 1;
        }
        Ok(cases)
    });
    runner.run("grassvol", "complement sign", || {
        let mut cases = 0;
        for spec in grass_specs(config) {
            ensure(check_lemma_sign(spec), || format!("{spec}"))?;
            cases += 1;
        }
        Ok(cases)
    });
    runner.run("grassvol", "one-even-block factorization", || {
        let mut cases = 0;
        let max = config.grass_max_n + 2;
        for c in 0..=max {
            for b in 0..=c {
                for a in 0..=b {
                    ensure(check_cor_one(a, b, c).map_err(|e| e.to_string())?, || format!("({a},{b},{c})"))?;
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });
    runner.run("grassvol", "2π power is the odd dimension", || {
        let mut cases = 0;
        for spec in grass_specs(config).filter(|s| sdim(*s) >= 0) {
            ensure(volume(spec).two_pi_power() == dims(spec).odd as i64, || format!("{spec}"))?;
            cases += 1;
        }
        Ok(cases)
    });
}

fn qlocal_suite(runner: &mut Runner, config: &VerifyConfig) {
    runner.run("qlocal", "brute force equals closed form", || {
        let mut cases = 0;
        for n in 0..=config.c_max_n {
            let samples = ParamVector::seeded_samples(n, config.samples, config.seed.wrapping_add(n as u64));
            for r in 0..=n {
                let report = c_bruteforce(r, n, &samples).map_err(|e| e.to_string())?;
                let closed = Rational::from_integer(c_closed(r, n));
                ensure(report.agrees && report.consensus == closed, || format!("C({r},{n})"))?;
                cases += 1;
            }
        }
        Ok(cases)
    });
    runner.run("qlocal", "recursions on closed form", || {
        ensure(check_recursions(20), || "closed form".into())?;
        Ok(20)
    });
    runner.run("qlocal", "recursions on brute force", || {
        let nmax = config.c_max_n;
        let mut table = vec![Vec::new(); nmax + 1];
        for (n, row) in table.iter_mut().enumerate() {
            let samples = ParamVector::seeded_samples(n, config.samples, config.seed.wrapping_add(n as u64));
            for r in 0..=n {
                let report = c_bruteforce(r, n, &samples).map_err(|e| e.to_string())?;
                ensure(report.consensus.is_integer(), || format!("C({r},{n}) not integral"))?;
                row.push(report.consensus.to_integer());
            }
        }
        let lookup = |r: usize, n: usize| table[n].get(r).cloned().unwrap_or_default();
        ensure(check_recursions_with(nmax, lookup), || "brute-force table".into())?;
        Ok(nmax)
    });
    runner.run("qlocal", "nonvanishing iff r(n-r) even", || {
        for n in 0..=20 {
            for r in 0..=n {
                ensure(c_closed(r, n).is_zero() == ((r * (n - r)) % 2 == 1), || format!("C({r},{n})"))?;
            }
        }
        Ok(231)
    });
    runner.run("qlocal", "GL localization counts fixed points", || {
        let mut cases = 0;
        for n in 0..=10 {
            for a in ParamVector::seeded_samples(n, config.samples, config.seed.wrapping_add(100 + n as u64)) {
                for r in 0..=n {
                    let got = gl_localization(r, &a).map_err(|e| e.to_string())?;
                    let want = Rational::from_integer(num_integer::binomial(n as i64, r as i64).into());
                    ensure(got == want, || format!("r={r}, n={n}"))?;
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });
}

fn splitting_suite(runner: &mut Runner, config: &VerifyConfig) {
    let max = config.grass_max_n;
    runner.run("splitting", "GL chains validate with sdim-0 Levi steps", || {
        let mut cases = 0;
        for m in 0..=max {
            for n in 0..=max {
                let chain = minimal_chain(&GroupDesc::gl(m, n)).map_err(|e| e.to_string())?;
                chain.validate().map_err(|e| e.to_string())?;
                for step in &chain.steps {
                    if matches!(step.rule, Rule::LeviGl { .. }) {
                        ensure(step.evidence == 0, || format!("GL({m}|{n}) Levi evidence {}", step.evidence))?;
                    }
                }
                cases += 1;
            }
        }
        Ok(cases)
    });
    runner.run("splitting", "Q chains validate with even evidence", || {
        for n in 0..=2 * max {
            let chain = minimal_chain(&GroupDesc::q(n)).map_err(|e| e.to_string())?;
            chain.validate().map_err(|e| e.to_string())?;
            ensure(chain.steps.iter().all(|s| s.evidence % 2 == 0), || format!("Q({n})"))?;
        }
        Ok(2 * max as usize + 1)
    });
    runner.run("splitting", "GL Levi predicate matches volume", || {
        let mut cases = 0;
        for spec in grass_specs(config) {
            let (split, _) = is_splitting_levi_gl(spec.r, spec.s, spec.m, spec.n).map_err(|e| e.to_string())?;
            ensure(split == !volume(spec).is_zero(), || format!("{spec}"))?;
            cases += 1;
        }
        Ok(cases)
    });
    runner.run("splitting", "Q Levi predicate matches C(r, n)", || {
        for n in 0..=20u32 {
            for r in 0..=n {
                let (split, _) = is_splitting_levi_q(r, n).map_err(|e| e.to_string())?;
                ensure(split == !c_closed(r as usize, n as usize).is_zero(), || format!("({r},{n})"))?;
            }
        }
        Ok(231)
    });
    runner.run("splitting", "quotient sdim of Levi pairs", || {
        let mut cases = 0;
        for spec in grass_specs(config) {
            let (g, k) = levi_gl_dims(spec.r, spec.s, spec.m, spec.n).map_err(|e| e.to_string())?;
            let q = quotient_sdim(g, k).map_err(|e| e.to_string())?;
            ensure(q == 2 * sdim(spec), || format!("{spec}: {q}"))?;
            cases += 1;
        }
        Ok(cases)
    });
}
