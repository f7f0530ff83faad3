//! Argument parsing, dispatch and rendering for the `supervol` binary.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use supervol::grassvol::{self, GrassSpec, SuperDim, VolumeExpr};
use supervol::qlocal::{self, LocalizationReport, ParamVector, MAX_BRUTEFORCE_N};
use supervol::rootsys::{defect_formula, Family, RootSystem};
use supervol::splitting::{self, GroupDesc, SubgroupChain};
use supervol::sympair::RestrictedPair;
use supervol::verify::{self, CheckResult, VerifyConfig, VerifyReport};
use supervol::{serde_exact, Rational, WeightVector};

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Jsonl,
}

#[derive(Debug, Parser)]
#[command(name = "supervol", version, about = "Exact supergrassmannian volumes, localization sums and splitting subgroups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for random parameter vectors.
    #[arg(long, default_value_t = verify::DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Bound for exhaustive sweeps in `verify` (default 6 for Grassmannians, 12 for C(r,n)).
    #[arg(long, global = true)]
    pub max_n: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Volume of Gr(r|s, m|n).
    Volume { r: u32, s: u32, m: u32, n: u32 },
    /// C(r, n) and the volume of the Q-grassmannian QGr(r, n).
    Qvolume { r: u32, n: u32 },
    /// Superdimension of Gr(r|s, m|n).
    Sdim { r: u32, s: u32, m: u32, n: u32 },
    /// Even and odd dimensions of Gr(r|s, m|n).
    Dims { r: u32, s: u32, m: u32, n: u32 },
    /// Defect and defect-subgroup roots.
    ///
    /// FAMILY is one of: gl M N, sl M N, osp M 2N, d21a ALPHA, g3, f4, q N.
    /// Negative fractions go after `--`, e.g. `defect d21a -- -3/2`.
    Defect {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
    },
    /// Table of C(r, n) for n up to N.
    CTable { n: u32 },
    /// C(r, n) by subset enumeration over seeded parameters, or with --gl the
    /// equal-rank GL fixed-point sum.
    Localize {
        r: u32,
        n: u32,
        #[arg(long)]
        gl: bool,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Splitting criterion for a Levi subgroup: `gl R S M N` or `q R N`.
    Splitting {
        family: String,
        params: Vec<u32>,
    },
    /// Certified chain down to the defect subgroup: `GL M N` or `Q N`.
    Chain {
        family: String,
        params: Vec<u32>,
    },
    /// Casimir eigenvalue (λ+2ρ, λ) for λ in simple-root coefficients.
    ///
    /// PAIR is one of: osp M N, g12, f31; followed by the coefficients.
    /// Negative fractions go after `--`.
    Casimir {
        pair: String,
        #[arg(allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// Run every identity sweep.
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub verb: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub command: CommandEcho,
    pub result: Payload,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub spec: GrassSpec,
    pub volume: VolumeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QVolumeResult {
    pub r: u32,
    pub n: u32,
    #[serde(with = "serde_exact")]
    pub c: Rational,
    pub volume: VolumeExpr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsResult {
    pub spec: GrassSpec,
    pub dims: SuperDim,
    pub sdim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectResult {
    pub family: String,
    pub defect: usize,
    pub formula: Option<usize>,
    pub roots: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CRow {
    pub n: u32,
    pub r: u32,
    #[serde(with = "serde_exact")]
    pub c: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlLocalizationResult {
    pub r: u32,
    pub n: u32,
    pub samples: Vec<ParamVector>,
    #[serde(with = "serde_exact")]
    pub sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingResult {
    pub subgroup: String,
    pub group: String,
    pub criterion: String,
    pub splitting: bool,
    pub evidence: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainResult {
    pub subgroup: String,
    pub valid: bool,
    pub chain: SubgroupChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirResult {
    pub pair: String,
    #[serde(with = "serde_exact::vec")]
    pub coefficients: Vec<Rational>,
    #[serde(with = "serde_exact::vec")]
    pub rho_coefficients: Vec<Rational>,
    pub dominant: bool,
    #[serde(with = "serde_exact")]
    pub eigenvalue: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Payload {
    Volume(VolumeResult),
    Qvolume(QVolumeResult),
    Sdim(DimsResult),
    Dims(DimsResult),
    Defect(DefectResult),
    CTable(Vec<CRow>),
    CRow(CRow),
    Localization(LocalizationReport),
    GlLocalization(GlLocalizationResult),
    Splitting(SplittingResult),
    Chain(ChainResult),
    Casimir(CasimirResult),
    Verify(VerifyReport),
    Check(CheckResult),
}

impl Command {
    fn echo(&self) -> CommandEcho {
        let (verb, args): (&str, Vec<String>) = match self {
            Command::Volume { r, s, m, n } => ("volume", nums(&[*r, *s, *m, *n])),
            Command::Qvolume { r, n } => ("qvolume", nums(&[*r, *n])),
            Command::Sdim { r, s, m, n } => ("sdim", nums(&[*r, *s, *m, *n])),
            Command::Dims { r, s, m, n } => ("dims", nums(&[*r, *s, *m, *n])),
            Command::Defect { family, params } => ("defect", prepend(family, params.clone())),
            Command::CTable { n } => ("c-table", nums(&[*n])),
            Command::Localize { r, n, gl, samples } => {
                let mut a = nums(&[*r, *n]);
                if *gl {
                    a.push("--gl".into());
                }
                a.push(format!("--samples={samples}"));
                ("localize", a)
            }
            Command::Splitting { family, params } => ("splitting", prepend(family, nums(params))),
            Command::Chain { family, params } => ("chain", prepend(family, nums(params))),
            Command::Casimir { pair, values } => ("casimir", prepend(pair, values.clone())),
            Command::Verify => ("verify", vec![]),
        };
        CommandEcho { verb: verb.into(), args }
    }
}

fn nums(v: &[u32]) -> Vec<String> {
    v.iter().map(u32::to_string).collect()
}

fn prepend(head: &str, mut rest: Vec<String>) -> Vec<String> {
    rest.insert(0, head.to_string());
    rest
}

fn spec(r: u32, s: u32, m: u32, n: u32) -> Result<GrassSpec, CliError> {
    GrassSpec::new(r, s, m, n).map_err(|e| usage(e.to_string()))
}

fn tags(t: &[&str]) -> Vec<String> {
    t.iter().map(|s| s.to_string()).collect()
}

fn parse_usize(s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| usage(format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    serde_exact::parse(s).map_err(usage)
}

fn expect_len<T>(what: &str, params: &[T], n: usize) -> Result<(), CliError> {
    if params.len() != n {
        return Err(usage(format!("{what} takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

fn parse_family(name: &str, p: &[String]) -> Result<Family<Rational>, CliError> {
    let ints = |n| -> Result<Vec<usize>, CliError> {
        expect_len(name, p, n)?;
        p.iter().map(|s| parse_usize(s)).collect()
    };
    Ok(match name.to_ascii_lowercase().as_str() {
        "gl" => {
            let v = ints(2)?;
            Family::Gl { m: v[0], n: v[1] }
        }
        "sl" => {
            let v = ints(2)?;
            Family::Sl { m: v[0], n: v[1] }
        }
        "osp" => {
            let v = ints(2)?;
            if v[1] % 2 == 1 {
                return Err(usage("osp M 2N needs an even second parameter"));
            }
            Family::Osp { m: v[0], n: v[1] / 2 }
        }
        "d21a" => {
            expect_len(name, p, 1)?;
            Family::D21a(parse_rational(&p[0])?)
        }
        "g3" => {
            expect_len(name, p, 0)?;
            Family::G3
        }
        "f4" => {
            expect_len(name, p, 0)?;
            Family::F4
        }
        "q" => Family::Q(ints(1)?[0]),
        other => return Err(usage(format!("unknown family {other:?}; expected gl, sl, osp, d21a, g3, f4 or q"))),
    })
}

fn parse_pair(name: &str, values: &[String]) -> Result<(RestrictedPair<Rational>, Vec<Rational>), CliError> {
    let coeffs = |skip: usize, k: usize| -> Result<Vec<Rational>, CliError> {
        expect_len(name, values, skip + k)?;
        values[skip..].iter().map(|s| parse_rational(s)).collect()
    };
    match name.to_ascii_lowercase().as_str() {
        "osp" => {
            if values.len() < 2 {
                return Err(usage("osp takes M N followed by one coefficient"));
            }
            let (m, n) = (parse_usize(&values[0])?, parse_usize(&values[1])?);
            if n <= m {
                return Err(usage(format!("osp pair needs n > m, got m={m}, n={n}")));
            }
            Ok((RestrictedPair::osp(m, n).map_err(domain)?, coeffs(2, 1)?))
        }
        "g12" => Ok((RestrictedPair::g12(), coeffs(0, 2)?)),
        "f31" => Ok((RestrictedPair::f31(), coeffs(0, 3)?)),
        other => Err(usage(format!("unknown pair {other:?}; expected osp, g12 or f31"))),
    }
}

fn levi_description(r: u32, s: u32, m: u32, n: u32) -> (String, String) {
    let sub = GroupDesc::product([
        splitting::Factor::Gl { m: r, n: s },
        splitting::Factor::Gl { m: m - r, n: n - s },
    ]);
    (sub.to_string(), GroupDesc::gl(m, n).to_string())
}

pub fn run(cli: &Cli) -> Result<ResultEnvelope, CliError> {
    let command = cli.command.echo();
    let (result, citations) = match &cli.command {
        Command::Volume { r, s, m, n } => {
            let spec = spec(*r, *s, *m, *n)?;
            (
                Payload::Volume(VolumeResult { spec, volume: grassvol::volume(spec) }),
                tags(&["grassmannian-volume-closed-form", "grassmannian-nonvanishing"]),
            )
        }
        Command::Qvolume { r, n } => {
            if r > n {
                return Err(usage(format!("need r <= n, got r={r}, n={n}")));
            }
            let c = Rational::from_integer(qlocal::c_closed(*r as usize, *n as usize));
            let volume = qlocal::qvolume(*r as usize, *n as usize).map_err(domain)?;
            (
                Payload::Qvolume(QVolumeResult { r: *r, n: *n, c, volume }),
                tags(&["q-grassmannian-localization", "c-closed-form"]),
            )
        }
        Command::Sdim { r, s, m, n } | Command::Dims { r, s, m, n } => {
            let spec = spec(*r, *s, *m, *n)?;
            let d = DimsResult { spec, dims: grassvol::dims(spec), sdim: grassvol::sdim(spec) };
            let payload = if matches!(cli.command, Command::Sdim { .. }) { Payload::Sdim(d) } else { Payload::Dims(d) };
            (payload, tags(&["grassmannian-dimensions"]))
        }
        Command::Defect { family, params } => {
            let family = parse_family(family, params)?;
            let sys = RootSystem::build(family.clone()).map_err(domain)?;
            let roots = sys.defect_subgroup_roots();
            let (defect, roots) = match roots {
                Ok(pairs) => (pairs.len(), pairs.iter().map(|(a, _)| sys.describe(&a.vector)).collect()),
                Err(supervol::rootsys::RootSysError::NoIsotropicRoots) => (0, vec![]),
                Err(e) => return Err(domain(e)),
            };
            (
                Payload::Defect(DefectResult { family: family.to_string(), defect, formula: defect_formula(&family), roots }),
                tags(&["defect-exhaustive-search", "defect-subgroup"]),
            )
        }
        Command::CTable { n } => {
            let rows = (0..=*n)
                .flat_map(|n| (0..=n).map(move |r| (r, n)))
                .map(|(r, n)| CRow { n, r, c: Rational::from_integer(qlocal::c_closed(r as usize, n as usize)) })
                .collect();
            (Payload::CTable(rows), tags(&["c-closed-form"]))
        }
        Command::Localize { r, n, gl, samples } => {
            if r > n {
                return Err(usage(format!("need r <= n, got r={r}, n={n}")));
            }
            if *samples < 3 {
                return Err(usage("--samples must be at least 3"));
            }
            let params = ParamVector::seeded_samples(*n as usize, *samples, cli.seed);
            if *gl {
                let mut sum = None;
                for a in &params {
                    let s = qlocal::gl_localization(*r as usize, a).map_err(domain)?;
                    if sum.as_ref().is_some_and(|x| *x != s) {
                        return Err(domain("GL localization sum depends on parameters"));
                    }
                    sum = Some(s);
                }
                (
                    Payload::GlLocalization(GlLocalizationResult { r: *r, n: *n, samples: params, sum: sum.expect("samples >= 3") }),
                    tags(&["gl-equal-rank-localization"]),
                )
            } else {
                if *n as usize > MAX_BRUTEFORCE_N {
                    return Err(usage(format!("n must be at most {MAX_BRUTEFORCE_N} for subset enumeration")));
                }
                let report = qlocal::c_bruteforce(*r as usize, *n as usize, &params).map_err(domain)?;
                (Payload::Localization(report), tags(&["q-grassmannian-localization"]))
            }
        }
        Command::Splitting { family, params } => match family.to_ascii_lowercase().as_str() {
            "gl" => {
                expect_len("splitting gl", params, 4)?;
                let (r, s, m, n) = (params[0], params[1], params[2], params[3]);
                spec(r, s, m, n)?;
                let (ok, e) = splitting::is_splitting_levi_gl(r, s, m, n).map_err(domain)?;
                let (subgroup, group) = levi_description(r, s, m, n);
                (
                    Payload::Splitting(SplittingResult { subgroup, group, criterion: "LEVI_GL".into(), splitting: ok, evidence: e }),
                    tags(&["levi-splitting-gl", "grassmannian-nonvanishing"]),
                )
            }
            "q" => {
                expect_len("splitting q", params, 2)?;
                let (r, n) = (params[0], params[1]);
                if r > n {
                    return Err(usage(format!("need r <= n, got r={r}, n={n}")));
                }
                let (ok, e) = splitting::is_splitting_levi_q(r, n).map_err(domain)?;
                let subgroup = GroupDesc::product([splitting::Factor::Q { n: r }, splitting::Factor::Q { n: n - r }]);
                (
                    Payload::Splitting(SplittingResult {
                        subgroup: subgroup.to_string(),
                        group: GroupDesc::q(n).to_string(),
                        criterion: "LEVI_Q".into(),
                        splitting: ok,
                        evidence: e,
                    }),
                    tags(&["levi-splitting-q", "c-closed-form"]),
                )
            }
            other => return Err(usage(format!("unknown family {other:?}; expected gl or q"))),
        },
        Command::Chain { family, params } => {
            let group = match family.to_ascii_lowercase().as_str() {
                "gl" => {
                    expect_len("chain GL", params, 2)?;
                    GroupDesc::gl(params[0], params[1])
                }
                "q" => {
                    expect_len("chain Q", params, 1)?;
                    GroupDesc::q(params[0])
                }
                other => return Err(usage(format!("unknown family {other:?}; expected GL or Q"))),
            };
            let chain = splitting::minimal_chain(&group).map_err(domain)?;
            chain.validate().map_err(domain)?;
            (
                Payload::Chain(ChainResult { subgroup: chain.subgroup().to_string(), valid: true, chain }),
                tags(&["defect-subgroup-splitting", "splitting-transitivity", "odd-parts-quotient"]),
            )
        }
        Command::Casimir { pair, values } => {
            let (pair, coefficients) = parse_pair(pair, values)?;
            let lambda: WeightVector = pair.combine(&coefficients).map_err(domain)?;
            if lambda.is_zero() {
                return Err(domain("lambda = 0 is excluded"));
            }
            let eigenvalue = pair.casimir_eigenvalue(&lambda).map_err(domain)?;
            let dominant = pair.is_dominant(&lambda).map_err(domain)?;
            let rho = pair.rho_coefficients().map_err(domain)?;
            (
                Payload::Casimir(CasimirResult {
                    pair: pair.kind.to_string(),
                    coefficients,
                    rho_coefficients: rho.coeffs,
                    dominant,
                    eigenvalue,
                }),
                tags(&["casimir-positivity", "restricted-root-data"]),
            )
        }
        Command::Verify => {
            let mut config = VerifyConfig { seed: cli.seed, ..VerifyConfig::default() };
            if let Some(max) = cli.max_n {
                if max as usize > MAX_BRUTEFORCE_N {
                    return Err(usage(format!("--max-n must be at most {MAX_BRUTEFORCE_N}")));
                }
                config = config.with_max_n(max);
            }
            (Payload::Verify(verify::run_all(&config)), tags(&["identity-sweeps"]))
        }
    };
    Ok(ResultEnvelope { command, result, citations })
}

/// Whether a successful run should still exit nonzero.
pub fn has_failures(env: &ResultEnvelope) -> bool {
    matches!(&env.result, Payload::Verify(r) if r.failed > 0)
}

pub fn render(env: &ResultEnvelope, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(env).expect("envelope serializes") + "\n",
        Format::Jsonl => {
            let items: Vec<Payload> = match &env.result {
                Payload::CTable(rows) => rows.iter().cloned().map(Payload::CRow).collect(),
                Payload::Verify(report) => report.checks.iter().cloned().map(Payload::Check).collect(),
                other => vec![other.clone()],
            };
            items
                .into_iter()
                .map(|result| {
                    let line = ResultEnvelope { command: env.command.clone(), result, citations: env.citations.clone() };
                    serde_json::to_string(&line).expect("envelope serializes") + "\n"
                })
                .collect()
        }
        Format::Text => render_text(&env.result),
    }
}

fn join(xs: &[Rational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn render_check(c: &CheckResult) -> String {
    let status = if c.passed { "PASS" } else { "FAIL" };
    let mut line = format!("{status} {}/{} ({} cases)", c.suite, c.name, c.cases);
    if let Some(f) = &c.failure {
        let _ = write!(line, ": {f}");
    }
    line
}

pub fn render_text(p: &Payload) -> String {
    let mut out = String::new();
    match p {
        Payload::Volume(v) => {
            let _ = writeln!(out, "vol {} = {}", v.spec, v.volume);
        }
        Payload::Qvolume(q) => {
            let _ = writeln!(out, "C({}, {}) = {}", q.r, q.n, q.c);
            let _ = writeln!(out, "vol QGr({}, {}) = {}", q.r, q.n, q.volume);
        }
        Payload::Sdim(d) => {
            let _ = writeln!(out, "sdim {} = {}", d.spec, d.sdim);
        }
        Payload::Dims(d) => {
            let _ = writeln!(out, "dim {} = {}, sdim = {}", d.spec, d.dims, d.sdim);
        }
        Payload::Defect(d) => {
            let _ = writeln!(out, "defect {} = {}", d.family, d.defect);
            if !d.roots.is_empty() {
                let _ = writeln!(out, "defect subgroup roots: ±({})", d.roots.join("), ±("));
            }
        }
        Payload::CTable(rows) => {
            for row in rows {
                out += &render_text(&Payload::CRow(row.clone()));
            }
        }
        Payload::CRow(row) => {
            let _ = writeln!(out, "C({}, {}) = {}", row.r, row.n, row.c);
        }
        Payload::Localization(rep) => {
            for s in &rep.samples {
                let _ = writeln!(out, "a = ({}): sum = {}", join(s.params.values()), s.sum);
            }
            let _ = writeln!(out, "C({}, {}) = {}, samples agree: {}", rep.r, rep.n, rep.consensus, rep.agrees);
        }
        Payload::GlLocalization(g) => {
            for a in &g.samples {
                let _ = writeln!(out, "a = ({}): every fixed point has alpha = 1", join(a.values()));
            }
            let _ = writeln!(out, "GL localization sum for r = {}, n = {}: {}", g.r, g.n, g.sum);
        }
        Payload::Splitting(s) => {
            let verdict = if s.splitting { "splitting" } else { "not splitting" };
            let _ = writeln!(out, "{} ⊂ {}: {verdict} ({} evidence {})", s.subgroup, s.group, s.criterion, s.evidence);
        }
        Payload::Chain(c) => {
            let _ = writeln!(out, "{}", c.chain.group);
            for step in c.chain.steps.iter().rev() {
                let _ = writeln!(out, "  ⊃ {}  [{} evidence {}]", step.sub, step.rule, step.evidence);
            }
            let _ = writeln!(out, "splitting subgroup: {} (valid: {})", c.subgroup, c.valid);
        }
        Payload::Casimir(c) => {
            let _ = writeln!(out, "pair {}", c.pair);
            let _ = writeln!(out, "rho coefficients: ({})", join(&c.rho_coefficients));
            let _ = writeln!(out, "lambda coefficients: ({}), dominant: {}", join(&c.coefficients), c.dominant);
            let _ = writeln!(out, "(lambda + 2 rho, lambda) = {}", c.eigenvalue);
        }
        Payload::Verify(r) => {
            for c in &r.checks {
                let _ = writeln!(out, "{}", render_check(c));
            }
            let _ = writeln!(out, "seed {}: {} passed, {} failed", r.config.seed, r.passed, r.failed);
        }
        Payload::Check(c) => {
            let _ = writeln!(out, "{}", render_check(c));
        }
    }
    out
}
