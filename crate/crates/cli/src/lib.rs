//! Command implementations for the `macmahon` binary. Each command returns
//! the text destined for standard output, or a [`CliError`] carrying the
//! exit code.
//!
//! Exit codes: 1 verification failure, 2 parse or argument error, 3 cap
//! exceeded, 4 invariant not applicable to the input.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use macmahon::chromatic::{beta_table_with, cmf_with, egdp_with};
use macmahon::graphs::{labeled_trees, weight_assignments};
use macmahon::hopf::phi_symbolic;
use macmahon::{
    antipode, basis_matrix, check_chromatic_basis, coproduct, csf_specialize, egdp_specialize,
    explicit_coefficients, gamma, parse_graph, random_forest, recover_egdp_hopf, recover_stats,
    serialize_graph, star_family, Error, GdpKind, Keep, LaurentPolynomial, Limits, MacMahonElement,
    VectorPartition, WeightedGraph,
};

#[derive(Debug, Parser)]
#[command(
    name = "macmahon",
    version,
    about = "Chromatic MacMahon functions of weighted graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub caps: Caps,
    #[command(subcommand)]
    pub command: Command,
}

/// Caps on the exponential enumerations.
#[derive(Debug, Args)]
pub struct Caps {
    /// Largest edge count for edge-subset enumeration.
    #[arg(long, global = true, default_value_t = 30)]
    pub max_edges: usize,
    /// Largest vertex count for vertex-subset enumeration.
    #[arg(long, global = true, default_value_t = 25)]
    pub max_vertices: usize,
    /// Largest number of colorings k^n for the brute-force oracle.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_colorings: u128,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            max_edges: self.max_edges,
            max_vertices: self.max_vertices,
            max_colorings: self.max_colorings,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute an invariant of a graph file.
    Compute {
        input: PathBuf,
        #[arg(long, value_enum)]
        invariant: Invariant,
        /// Evaluate a symmetric-function invariant in k colors.
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// Check that both recovery routes reproduce the EGDP of many forests.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        weight_max: u32,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Add 1 to one β-coefficient before the explicit recovery.
        #[arg(long, hide = true)]
        corrupt_beta: bool,
    },
    /// The two trees with equal weighted CSF but different weighted GDP.
    Counterexample,
    /// Hopf-algebra computations on the CMF of a graph file.
    Hopf {
        input: PathBuf,
        #[arg(long, value_enum)]
        op: HopfOp,
    },
    /// Chromatic bases.
    Bases {
        #[command(subcommand)]
        command: BasesCommand,
    },
    /// Print a seeded random weighted forest.
    RandomForest {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum BasesCommand {
    /// Certify the star family at every multidegree up to (n-max, w-max).
    Check {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        w_max: u32,
        /// Also print each transition matrix.
        #[arg(long)]
        print: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Cmf,
    Wcsf,
    Csf,
    Egdp,
    Wgdp,
    Gdp,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HopfOp {
    Coproduct,
    Antipode,
    Phi,
    Gamma,
    Stats,
    /// EGDP recovered from the CMF alone.
    Recover,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Data to print on stdout before failing (verification reports).
    pub stdout: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            stdout: String::new(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            Error::Parse(_) | Error::InvalidParameter(_) | Error::NoColors => 2,
            _ => 4,
        };
        CliError::new(code, e.to_string())
    }
}

type CliResult = std::result::Result<String, CliError>;

pub fn run(cli: &Cli) -> CliResult {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Compute {
            input,
            invariant,
            truncate,
        } => compute(&read_graph(input)?, *invariant, *truncate, &limits),
        Command::Verify {
            n_max,
            weight_max,
            r,
            seed,
            trials,
            mode,
            corrupt_beta,
        } => verify(
            &VerifyParams {
                n_max: *n_max,
                weight_max: *weight_max,
                r: *r,
                seed: *seed,
                trials: *trials,
                mode: *mode,
                corrupt_beta: *corrupt_beta,
            },
            &limits,
        ),
        Command::Counterexample => counterexample(),
        Command::Hopf { input, op } => hopf(&read_graph(input)?, *op, &limits),
        Command::Bases {
            command:
                BasesCommand::Check {
                    n_max,
                    w_max,
                    print,
                },
        } => bases_check(*n_max, *w_max, *print),
        Command::RandomForest {
            n,
            max_weight,
            r,
            seed,
        } => Ok(serialize_graph(&random_forest(*n, *max_weight, *r, *seed)?)),
    }
}

fn read_graph(path: &Path) -> std::result::Result<WeightedGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
    // every failure while reading a graph file is a parse error
    parse_graph(&text).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))
}

fn element_output(e: &MacMahonElement, truncate: Option<usize>) -> CliResult {
    match truncate {
        Some(k) => Ok(format!("{}\n", e.truncate(k)?)),
        None => Ok(e.to_string()),
    }
}

fn polynomial_output(p: &LaurentPolynomial, truncate: Option<usize>) -> CliResult {
    if truncate.is_some() {
        return Err(CliError::new(
            4,
            "--truncate applies only to cmf, wcsf and csf",
        ));
    }
    Ok(format!("{p}\n"))
}

fn beta_output(beta: &BTreeMap<VectorPartition, u64>) -> String {
    let mut rows: Vec<_> = beta.iter().collect();
    rows.sort_by(|a, b| a.0.display_cmp(b.0));
    rows.iter().map(|(l, b)| format!("{b} {l}\n")).collect()
}

pub fn compute(
    g: &WeightedGraph,
    invariant: Invariant,
    truncate: Option<usize>,
    limits: &Limits,
) -> CliResult {
    let scalar_only = |name: &str| {
        if g.r() == 1 {
            Ok(())
        } else {
            Err(CliError::new(
                4,
                format!("{name} needs scalar weights (r = 1)"),
            ))
        }
    };
    match invariant {
        Invariant::Cmf => element_output(&cmf_with(g, limits)?, truncate),
        Invariant::Wcsf => {
            scalar_only("the weighted CSF")?;
            element_output(
                &csf_specialize(&cmf_with(g, limits)?, Keep::Weight)?,
                truncate,
            )
        }
        Invariant::Csf => element_output(
            &csf_specialize(&cmf_with(g, limits)?, Keep::Cardinality)?,
            truncate,
        ),
        Invariant::Egdp => polynomial_output(&egdp_with(g, limits)?, truncate),
        Invariant::Wgdp => {
            scalar_only("the weighted GDP")?;
            let p = egdp_specialize(&egdp_with(g, limits)?, GdpKind::Weighted)?;
            polynomial_output(&p, truncate)
        }
        Invariant::Gdp => {
            let p = egdp_specialize(&egdp_with(g, limits)?, GdpKind::Plain)?;
            polynomial_output(&p, truncate)
        }
        Invariant::Beta => {
            if truncate.is_some() {
                return Err(CliError::new(
                    4,
                    "--truncate applies only to cmf, wcsf and csf",
                ));
            }
            Ok(beta_output(&beta_table_with(g, limits)?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyParams {
    pub n_max: usize,
    pub weight_max: u32,
    pub r: usize,
    pub seed: u64,
    pub trials: u64,
    pub mode: Mode,
    pub corrupt_beta: bool,
}

/// First exponent vector where two polynomials differ, as `(a,b,c,d)`.
fn first_difference(
    got: &BTreeMap<(u32, u32, u32, u32), i128>,
    want: &LaurentPolynomial,
) -> String {
    let mut want_map: BTreeMap<(u32, u32, u32, u32), i128> = BTreeMap::new();
    for (e, c) in want.terms() {
        want_map.insert((e[0] as u32, e[1] as u32, e[2] as u32, e[3] as u32), c);
    }
    let keys: std::collections::BTreeSet<_> = got.keys().chain(want_map.keys()).collect();
    for k in keys {
        let (g, w) = (
            got.get(k).copied().unwrap_or(0),
            want_map.get(k).copied().unwrap_or(0),
        );
        if g != w {
            return format!(
                "(a,b,c,d) = ({},{},{},{}): explicit {g}, brute force {w}",
                k.0, k.1, k.2, k.3
            );
        }
    }
    "no coefficient differs".into()
}

/// Checks one forest; `Err` carries the failure description.
fn check_forest(
    f: &WeightedGraph,
    corrupt: bool,
    limits: &Limits,
) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    let truth = egdp_with(f, limits).map_err(err)?;
    let hopf = recover_egdp_hopf(&cmf_with(f, limits).map_err(err)?).map_err(err)?;
    if hopf != truth {
        return Err(format!("Hopf route gave {hopf}, brute force {truth}"));
    }
    if f.r() == 1 {
        let mut beta = beta_table_with(f, limits).map_err(err)?;
        if corrupt {
            if let Some(b) = beta.values_mut().next() {
                *b += 1;
            }
        }
        let w = f.total_weight().coords()[0];
        let g = explicit_coefficients(&beta, f.n() as u32, w, f.num_edges() as u32).map_err(err)?;
        let matches = g.len() == truth.num_terms()
            && truth.terms().all(|(e, c)| {
                g.get(&(e[0] as u32, e[1] as u32, e[2] as u32, e[3] as u32)) == Some(&c)
            });
        if !matches {
            return Err(format!(
                "explicit route differs at {}",
                first_difference(&g, &truth)
            ));
        }
    }
    Ok(())
}

pub fn verify(p: &VerifyParams, limits: &Limits) -> CliResult {
    if p.n_max == 0 || p.weight_max == 0 || p.r == 0 {
        return Err(CliError::new(
            2,
            "--n-max, --weight-max and --r must be ≥ 1",
        ));
    }
    let forests: Box<dyn Iterator<Item = WeightedGraph>> = match p.mode {
        Mode::Exhaustive => {
            let (r, max) = (p.r, p.weight_max);
            Box::new((1..=p.n_max).flat_map(move |n| {
                labeled_trees(n).flat_map(move |edges| {
                    weight_assignments(n, r, max)
                        .map(move |w| WeightedGraph::new(r, w, edges.clone()).expect("valid tree"))
                })
            }))
        }
        Mode::Random => {
            let (n_max, max, r, seed) = (p.n_max, p.weight_max, p.r, p.seed);
            Box::new((0..p.trials).map(move |i| {
                let n = 1 + (i as usize % n_max);
                random_forest(n, max, r, seed.wrapping_add(i)).expect("valid parameters")
            }))
        }
    };
    let mut checked = 0u64;
    for f in forests {
        checked += 1;
        if let Err(why) = check_forest(&f, p.corrupt_beta, limits) {
            let mut out = String::new();
            let _ = writeln!(out, "FAIL after {checked} forests: {why}");
            let _ = write!(out, "{}", serialize_graph(&f));
            return Err(CliError {
                code: 1,
                message: format!("verification failed: {why}"),
                stdout: out,
            });
        }
    }
    Ok(format!(
        "checked {checked} forests: {checked} passed, 0 failed\n"
    ))
}

pub fn counterexample() -> CliResult {
    let t1 = WeightedGraph::path(&[2, 1, 2, 3, 1]);
    let t2 = WeightedGraph::path(&[2, 3, 1, 2, 1]);
    let (x1, x2) = (macmahon::cmf(&t1)?, macmahon::cmf(&t2)?);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let wcsf_equal = csf_specialize(&x1, Keep::Weight)? == csf_specialize(&x2, Keep::Weight)?;
    let csf_equal =
        csf_specialize(&x1, Keep::Cardinality)? == csf_specialize(&x2, Keep::Cardinality)?;
    let m = [("x", 4), ("y", 3), ("z", 0)];
    let c1 = egdp_specialize(&macmahon::egdp(&t1)?, GdpKind::Weighted)?.coeff(&m);
    let c2 = egdp_specialize(&macmahon::egdp(&t2)?, GdpKind::Weighted)?.coeff(&m);
    let (k1, k2) = (x1.truncate(2)?, x2.truncate(2)?);
    let mut out = String::new();
    let _ = writeln!(out, "wCSF equal: {}", yes(wcsf_equal));
    let _ = writeln!(out, "CSF equal: {}", yes(csf_equal));
    let _ = writeln!(out, "wGDP x^4y^3 coefficient: {c1} vs {c2}");
    let _ = writeln!(out, "CMF(k=2) distinct: {}", yes(k1 != k2));
    let _ = writeln!(out, "CMF(k=2) T1: {k1}");
    let _ = writeln!(out, "CMF(k=2) T2: {k2}");
    if !(wcsf_equal && csf_equal && c1 == 1 && c2 == 2 && k1 != k2) {
        return Err(CliError {
            code: 1,
            message: "counterexample facts do not hold".into(),
            stdout: out,
        });
    }
    Ok(out)
}

pub fn hopf(g: &WeightedGraph, op: HopfOp, limits: &Limits) -> CliResult {
    let x = cmf_with(g, limits)?;
    Ok(match op {
        HopfOp::Coproduct => coproduct(&x).to_string(),
        HopfOp::Antipode => antipode(&x).to_string(),
        HopfOp::Phi => format!("{}\n", phi_symbolic(&x)?),
        HopfOp::Gamma => format!("{}\n", gamma(&x)),
        HopfOp::Stats => format!("{}\n", recover_stats(&x)?),
        HopfOp::Recover => format!("{}\n", recover_egdp_hopf(&x)?),
    })
}

pub fn bases_check(n_max: usize, w_max: u32, print: bool) -> CliResult {
    let mut out = String::new();
    let mut all = true;
    for n in 1..=n_max {
        for w in n as u32..=w_max {
            let m = basis_matrix(star_family, (n, w))?;
            let ok = check_chromatic_basis(&m.entries)?;
            all &= ok;
            let _ = writeln!(
                out,
                "u=({n},{w}) size={} triangular={}",
                m.partitions.len(),
                if ok { "yes" } else { "no" }
            );
            if print {
                let _ = write!(out, "{m}");
            }
        }
    }
    if all {
        Ok(out)
    } else {
        Err(CliError {
            code: 1,
            message: "some transition matrix is not unitriangular".into(),
            stdout: out,
        })
    }
}
