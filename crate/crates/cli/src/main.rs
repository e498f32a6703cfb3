//! Command-line surface: parse algebra and module files, dispatch to the
//! compute modules, and emit deterministic text, JSON and DOT outputs.
//!
//! Exit codes: 0 success, 1 domain errors (machine-readable JSON on
//! stderr), 2 usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use bricklab::algebra::AlgebraDescription;
use bricklab::ar::{tau, tau_inverse};
use bricklab::census::{bbt_search, brick_census, CensusMode};
use bricklab::decompose::{decompose_multiset, SplitField};
use bricklab::io;
use bricklab::rep::hom_basis;
use bricklab::scalar::{is_prime, PrimeField, Rationals, ScalarDomain};
use bricklab::stability::{
    canonical_decomposition, check_stability, e_invariant, min_self_ext_exhaustive,
    semistability_witness, Verdict, WitnessOutcome,
};
use bricklab::sttilt::{exchange_graph, fan_membership, FanQuery};
use bricklab::{BoundAlgebra, Field};

#[derive(Parser)]
#[command(name = "bricklab", version, about = "exact brick and tau-tilting computations over bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DomainArgs {
    /// Work over the prime field F_p instead of the rationals.
    #[arg(long, global = true)]
    field: Option<u64>,
    /// Override the path-length bound used when compiling the algebra.
    #[arg(long, global = true)]
    max_path_length: Option<usize>,
}

impl DomainArgs {
    fn domain(&self) -> Result<ScalarDomain, CliError> {
        match self.field {
            None => Ok(ScalarDomain::Rationals),
            Some(p) if is_prime(p) => Ok(ScalarDomain::PrimeField(p)),
            Some(p) => Err(CliError::usage(format!("--field {p} is not prime"))),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a bound quiver algebra.
    Alg {
        #[command(subcommand)]
        sub: AlgCmd,
    },
    /// Operations on single modules.
    Rep {
        #[command(subcommand)]
        sub: RepCmd,
    },
    /// Support tau-tilting machinery.
    Sttilt {
        #[command(subcommand)]
        sub: SttiltCmd,
    },
    /// Lattice of functorially finite torsion classes.
    Tors {
        #[command(subcommand)]
        sub: TorsCmd,
    },
    /// King stability.
    Stab {
        #[command(subcommand)]
        sub: StabCmd,
    },
    /// g-vector fan queries.
    Gfan {
        #[command(subcommand)]
        sub: GfanCmd,
    },
    /// Sampled E-invariant of two g-vectors.
    Einv(EinvArgs),
    /// Canonical decomposition of a g-vector.
    Candecomp(CandecompArgs),
    /// Brick censuses over finite fields.
    Bricks {
        #[command(subcommand)]
        sub: BricksCmd,
    },
    /// Brick-Brauer-Thrall experiment sweeps.
    Bbt {
        #[command(subcommand)]
        sub: BbtCmd,
    },
}

#[derive(Subcommand)]
enum AlgCmd {
    /// Compile and report dimension, nilpotency bound and basis sizes.
    Check {
        algebra: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Print the normal-form path basis.
    Basis {
        algebra: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Auslander-Reiten translate (or inverse) of a module.
    Tau {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long)]
        inverse: bool,
        /// Write the result as a module file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Dimension of Hom between two modules.
    Hom {
        algebra: PathBuf,
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Indecomposable direct summands with multiplicities.
    Decompose {
        algebra: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        domain: DomainArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    algebra: PathBuf,
    #[arg(long, default_value_t = 1000)]
    max_nodes: usize,
    /// Skip brick labels (faster deep scans).
    #[arg(long)]
    no_labels: bool,
    /// Write the labeled Hasse diagram as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write nodes, edges, g-matrices and labels as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Subcommand)]
enum SttiltCmd {
    /// Exchange graph of support tau-tilting pairs.
    Graph(GraphArgs),
}

#[derive(Subcommand)]
enum TorsCmd {
    /// Hasse diagram of functorially finite torsion classes with brick
    /// labels (same graph as `sttilt graph`).
    Hasse(GraphArgs),
}

#[derive(Subcommand)]
enum StabCmd {
    /// Exhaustive King verdict via the submodule oracle (finite fields).
    Check {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<i64>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Determinant witness search for semistability.
    Witness {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<i64>,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        domain: DomainArgs,
    },
}

#[derive(Subcommand)]
enum GfanCmd {
    /// Locate a rational vector in the tau-tilting fan.
    Member {
        algebra: PathBuf,
        /// Comma-separated rational coordinates, e.g. -1,3/2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        max_nodes: usize,
        #[command(flatten)]
        domain: DomainArgs,
    },
}

#[derive(Args)]
struct EinvArgs {
    algebra: PathBuf,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta1: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta2: Vec<i64>,
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args)]
struct CandecompArgs {
    algebra: PathBuf,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Vec<i64>,
    #[arg(long, default_value_t = 2)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Subcommand)]
enum BricksCmd {
    /// Exhaustive or sampled brick census at a dimension vector.
    Census {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',')]
        dim: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        fields: Vec<u64>,
        /// Sample this many points instead of exhausting the variety.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BbtCmd {
    /// Sweep dimension vectors and fields for brick-Brauer-Thrall evidence.
    Search {
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_total_dim: usize,
        #[arg(long, value_delimiter = ',')]
        fields: Vec<u64>,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u128,
        #[arg(long, default_value_t = 512)]
        sample_count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// error plumbing
// ---------------------------------------------------------------------------

struct CliError {
    kind: String,
    message: String,
    usage: bool,
}

impl CliError {
    fn usage(message: String) -> Self {
        CliError {
            kind: "usage".into(),
            message,
            usage: true,
        }
    }

    fn domain(kind: &str, message: String) -> Self {
        CliError {
            kind: kind.into(),
            message,
            usage: false,
        }
    }
}

macro_rules! impl_from_err {
    ($t:ty, $kind:expr) => {
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain($kind, e.to_string())
            }
        }
    };
}

impl_from_err!(bricklab::io::IoError, "io");
impl_from_err!(bricklab::AlgebraError, "algebra");
impl_from_err!(bricklab::RepError, "representation");
impl_from_err!(bricklab::sttilt::SttiltError, "sttilt");
impl_from_err!(bricklab::stability::StabilityError, "stability");
impl_from_err!(bricklab::census::CensusError, "census");
impl_from_err!(std::io::Error, "file");

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let payload = json!({
                "error": { "kind": e.kind, "message": e.message }
            });
            eprintln!("{payload}");
            if e.usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn read_algebra(path: &Path) -> Result<AlgebraDescription, CliError> {
    let text = std::fs::read_to_string(path)?;
    let fallback = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "algebra".into());
    Ok(io::parse_algebra(&text, &fallback)?)
}

enum AnyAlgebra {
    Q(Arc<BoundAlgebra<Rationals>>),
    Fp(Arc<BoundAlgebra<PrimeField>>),
}

fn compile(
    desc: &AlgebraDescription,
    domain: &DomainArgs,
) -> Result<(AnyAlgebra, ScalarDomain), CliError> {
    let d = domain.domain()?;
    let alg = match d {
        ScalarDomain::Rationals => AnyAlgebra::Q(Arc::new(
            desc.compile(Rationals, domain.max_path_length)?,
        )),
        ScalarDomain::PrimeField(p) => AnyAlgebra::Fp(Arc::new(
            desc.compile(PrimeField::new(p), domain.max_path_length)?,
        )),
    };
    Ok((alg, d))
}

fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let t = text.trim();
    let parse_int = |s: &str| {
        BigInt::from_str(s.trim()).map_err(|_| CliError::usage(format!("bad rational {t:?}")))
    };
    if let Some((n, d)) = t.split_once('/') {
        let den = parse_int(d)?;
        if den == BigInt::from(0) {
            return Err(CliError::usage(format!("zero denominator in {t:?}")));
        }
        Ok(BigRational::new(parse_int(n)?, den))
    } else {
        Ok(BigRational::from_integer(parse_int(t)?))
    }
}

// ---------------------------------------------------------------------------
// command implementations
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Alg { sub } => match sub {
            AlgCmd::Check { algebra, domain } => {
                let desc = read_algebra(&algebra)?;
                let (alg, d) = compile(&desc, &domain)?;
                match alg {
                    AnyAlgebra::Q(a) => alg_check(&desc, &a, d),
                    AnyAlgebra::Fp(a) => alg_check(&desc, &a, d),
                }
            }
            AlgCmd::Basis { algebra, domain } => {
                let desc = read_algebra(&algebra)?;
                let (alg, _) = compile(&desc, &domain)?;
                match alg {
                    AnyAlgebra::Q(a) => alg_basis(&a),
                    AnyAlgebra::Fp(a) => alg_basis(&a),
                }
            }
        },
        Cmd::Rep { sub } => match sub {
            RepCmd::Tau {
                algebra,
                module,
                inverse,
                out,
                domain,
            } => {
                let desc = read_algebra(&algebra)?;
                let (alg, _) = compile(&desc, &domain)?;
                let text = std::fs::read_to_string(&module)?;
                match alg {
                    AnyAlgebra::Q(a) => rep_tau(&a, &text, inverse, out),
                    AnyAlgebra::Fp(a) => rep_tau(&a, &text, inverse, out),
                }
            }
            RepCmd::Hom {
                algebra,
                source,
                target,
                domain,
            } => {
                let desc = read_algebra(&algebra)?;
                let (alg, _) = compile(&desc, &domain)?;
                let s = std::fs::read_to_string(&source)?;
                let t = std::fs::read_to_string(&target)?;
                match alg {
                    AnyAlgebra::Q(a) => rep_hom(&a, &s, &t),
                    AnyAlgebra::Fp(a) => rep_hom(&a, &s, &t),
                }
            }
            RepCmd::Decompose {
                algebra,
                module,
                domain,
            } => {
                let desc = read_algebra(&algebra)?;
                let (alg, _) = compile(&desc, &domain)?;
                let text = std::fs::read_to_string(&module)?;
                match alg {
                    AnyAlgebra::Q(a) => rep_decompose(&a, &text),
                    AnyAlgebra::Fp(a) => rep_decompose(&a, &text),
                }
            }
        },
        Cmd::Sttilt {
            sub: SttiltCmd::Graph(args),
        }
        | Cmd::Tors {
            sub: TorsCmd::Hasse(args),
        } => {
            let desc = read_algebra(&args.algebra)?;
            let (alg, d) = compile(&desc, &args.domain)?;
            match alg {
                AnyAlgebra::Q(a) => graph_cmd(&desc, &a, d, &args),
                AnyAlgebra::Fp(a) => graph_cmd(&desc, &a, d, &args),
            }
        }
        Cmd::Stab { sub } => match sub {
            StabCmd::Check {
                algebra,
                module,
                theta,
                bound,
                json: json_out,
                domain,
            } => {
                let desc = read_algebra(&algebra)?;
                if domain.field.is_none() {
                    return Err(CliError::domain(
                        "stability",
                        "the exhaustive submodule oracle needs --field <p>".into(),
                    ));
                }
                let (alg, d) = compile(&desc, &domain)?;
                let text = std::fs::read_to_string(&module)?;
                match alg {
                    AnyAlgebra::Fp(a) => stab_check(&desc, &a, d, &text, &theta, bound, json_out),
                    AnyAlgebra::Q(_) => unreachable!(),
                }
            }
            StabCmd::Witness {
                algebra,
                module,
                theta,
                samples,
                n_max,
                seed,
                domain,
            } => {
                let desc = read_algebra(&algebra)?;
                let (alg, _) = compile(&desc, &domain)?;
                let text = std::fs::read_to_string(&module)?;
                match alg {
                    AnyAlgebra::Q(a) => stab_witness(&a, &text, &theta, samples, n_max, seed),
                    AnyAlgebra::Fp(a) => stab_witness(&a, &text, &theta, samples, n_max, seed),
                }
            }
        },
        Cmd::Gfan {
            sub:
                GfanCmd::Member {
                    algebra,
                    theta,
                    max_nodes,
                    domain,
                },
        } => {
            let desc = read_algebra(&algebra)?;
            let (alg, _) = compile(&desc, &domain)?;
            let theta: Vec<BigRational> = theta
                .iter()
                .map(|t| parse_rational(t))
                .collect::<Result<_, _>>()?;
            match alg {
                AnyAlgebra::Q(a) => gfan_member(&a, &theta, max_nodes),
                AnyAlgebra::Fp(a) => gfan_member(&a, &theta, max_nodes),
            }
        }
        Cmd::Einv(args) => {
            let desc = read_algebra(&args.algebra)?;
            let (alg, _) = compile(&desc, &args.domain)?;
            let v = match alg {
                AnyAlgebra::Q(a) => {
                    e_invariant(&a, &args.theta1, &args.theta2, args.samples, args.seed)
                }
                AnyAlgebra::Fp(a) => {
                    e_invariant(&a, &args.theta1, &args.theta2, args.samples, args.seed)
                }
            };
            println!(
                "E({:?}, {:?}) <= {} ({} samples, seed {})",
                args.theta1, args.theta2, v, args.samples, args.seed
            );
            Ok(())
        }
        Cmd::Candecomp(args) => {
            let desc = read_algebra(&args.algebra)?;
            let (alg, _) = compile(&desc, &args.domain)?;
            let parts = match alg {
                AnyAlgebra::Q(a) => {
                    canonical_decomposition(&a, &args.theta, args.samples, args.seed)?
                }
                AnyAlgebra::Fp(a) => {
                    canonical_decomposition(&a, &args.theta, args.samples, args.seed)?
                }
            };
            println!("canonical decomposition of {:?}:", args.theta);
            for p in parts {
                println!("  {p:?}");
            }
            Ok(())
        }
        Cmd::Bricks {
            sub:
                BricksCmd::Census {
                    algebra,
                    dim,
                    fields,
                    sample,
                    budget,
                    seed,
                    json: json_out,
                },
        } => bricks_census(&algebra, &dim, &fields, sample, budget, seed, json_out),
        Cmd::Bbt {
            sub:
                BbtCmd::Search {
                    algebra,
                    max_total_dim,
                    fields,
                    budget,
                    sample_count,
                    seed,
                    json: json_out,
                },
        } => bbt_cmd(
            &algebra,
            max_total_dim,
            &fields,
            budget,
            sample_count,
            seed,
            json_out,
        ),
    }
}

fn alg_check<F: Field>(
    desc: &AlgebraDescription,
    alg: &Arc<BoundAlgebra<F>>,
    d: ScalarDomain,
) -> Result<(), CliError> {
    println!("algebra {} over {}", desc.name, d);
    println!("dim A = {}", alg.dim());
    println!("nilpotency bound N = {}", alg.nilpotency_bound());
    let q = alg.quiver();
    for i in 0..q.num_vertices() {
        let sizes: Vec<String> = (0..q.num_vertices())
            .map(|j| format!("{}", alg.pair_basis(i, j).len()))
            .collect();
        println!(
            "paths from {}: [{}]",
            q.vertex_name(i),
            sizes.join(", ")
        );
    }
    Ok(())
}

fn alg_basis<F: Field>(alg: &Arc<BoundAlgebra<F>>) -> Result<(), CliError> {
    let q = alg.quiver();
    for (id, p) in alg.basis().iter().enumerate() {
        println!(
            "{id}: {} ({} -> {})",
            p.display(q),
            q.vertex_name(p.source),
            q.vertex_name(p.target)
        );
    }
    Ok(())
}

fn rep_tau<F: SplitField>(
    alg: &Arc<BoundAlgebra<F>>,
    text: &str,
    inverse: bool,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let m = io::parse_representation(text, alg)?;
    if !m.check_relations() {
        return Err(CliError::domain(
            "representation",
            "module violates the relations".into(),
        ));
    }
    let t = if inverse { tau_inverse(&m) } else { tau(&m) };
    println!(
        "{} has dimension vector {:?}",
        if inverse { "tau^{-1} M" } else { "tau M" },
        t.dims()
    );
    if let Some(p) = out {
        std::fs::write(p, io::representation_to_toml(&t))?;
    }
    Ok(())
}

fn rep_hom<F: Field>(alg: &Arc<BoundAlgebra<F>>, s: &str, t: &str) -> Result<(), CliError> {
    let m = io::parse_representation(s, alg)?;
    let n = io::parse_representation(t, alg)?;
    println!("dim Hom(M, N) = {}", hom_basis(&m, &n).dim());
    Ok(())
}

fn rep_decompose<F: SplitField>(alg: &Arc<BoundAlgebra<F>>, text: &str) -> Result<(), CliError> {
    let m = io::parse_representation(text, alg)?;
    let parts = decompose_multiset(&m)?;
    println!("{} indecomposable summand class(es):", parts.len());
    for (rep, mult) in parts {
        println!("  {:?} x {}", rep.dims(), mult);
    }
    Ok(())
}

fn graph_cmd<F: SplitField>(
    desc: &AlgebraDescription,
    alg: &Arc<BoundAlgebra<F>>,
    d: ScalarDomain,
    args: &GraphArgs,
) -> Result<(), CliError> {
    let g = exchange_graph(alg, args.max_nodes, !args.no_labels)?;
    println!(
        "{} node(s), {} edge(s), {}",
        g.nodes.len(),
        g.edges.len(),
        if g.complete { "complete" } else { "truncated" }
    );
    if let Some(p) = &args.dot {
        std::fs::write(p, io::graph_dot(&g))?;
    }
    if let Some(p) = &args.json {
        let header = io::report_header(desc, d, None);
        let v = io::graph_json(&g, header);
        std::fs::write(p, serde_json::to_string_pretty(&v).unwrap())?;
    }
    Ok(())
}

fn stab_check(
    desc: &AlgebraDescription,
    alg: &Arc<BoundAlgebra<PrimeField>>,
    d: ScalarDomain,
    text: &str,
    theta: &[i64],
    bound: usize,
    json_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let m = io::parse_representation(text, alg)?;
    if !m.check_relations() {
        return Err(CliError::domain(
            "representation",
            "module violates the relations".into(),
        ));
    }
    if theta.len() != alg.num_vertices() {
        return Err(CliError::usage("theta length != number of vertices".into()));
    }
    let v = check_stability(&m, theta, bound)?;
    let verdict = match v.verdict {
        Verdict::Stable => "stable",
        Verdict::SemistableNotStable => "semistable-not-stable",
        Verdict::Unstable => "unstable",
    };
    println!("theta = {:?}, theta([M]) = {}", theta, v.module_pairing);
    println!("verdict: {verdict}");
    if !v.witnesses.is_empty() {
        println!("witness submodules (dims : theta value):");
        for (dims, val) in &v.witnesses {
            println!("  {dims:?} : {val}");
        }
    }
    if let Some(p) = json_out {
        let payload = json!({
            "header": io::report_header(desc, d, None),
            "theta": theta,
            "module_dims": m.dims(),
            "verdict": verdict,
            "witnesses": v.witnesses,
        });
        std::fs::write(p, serde_json::to_string_pretty(&payload).unwrap())?;
    }
    Ok(())
}

fn stab_witness<F: Field>(
    alg: &Arc<BoundAlgebra<F>>,
    text: &str,
    theta: &[i64],
    samples: usize,
    n_max: usize,
    seed: u64,
) -> Result<(), CliError> {
    let m = io::parse_representation(text, alg)?;
    let out = semistability_witness(&m, theta, samples, n_max, seed)?;
    match out {
        WitnessOutcome::Found { n, det, .. } => {
            println!(
                "found: semi-invariant of weight {n}*theta with value {} (seed {seed})",
                alg.field.fmt_elem(&det)
            );
        }
        WitnessOutcome::NotFound => {
            println!(
                "not-found: no witness among {samples} samples per weight up to {n_max}*theta (inconclusive)"
            );
        }
    }
    Ok(())
}

fn gfan_member<F: SplitField>(
    alg: &Arc<BoundAlgebra<F>>,
    theta: &[BigRational],
    max_nodes: usize,
) -> Result<(), CliError> {
    if theta.len() != alg.num_vertices() {
        return Err(CliError::usage("theta length != number of vertices".into()));
    }
    let g = exchange_graph(alg, max_nodes, false)?;
    match fan_membership(&g, theta) {
        FanQuery::Hit { node } => {
            println!(
                "ConeHit: node {} with g-matrix {:?}",
                node, g.nodes[node].g_cols
            );
        }
        FanQuery::NotInFan => {
            println!("NotFound: the fan is complete and no cone contains theta");
        }
        FanQuery::Unknown => {
            println!("unknown (truncated at {} nodes)", g.nodes.len());
            // cheap certificate attempt for integer rays over finite fields
            if let Some(int_theta) = integral_direction(theta) {
                if let Some(min) = min_self_ext_exhaustive(alg, &int_theta, 1 << 22) {
                    if min > 0 {
                        println!(
                            "candidate missing ray: every two-term complex for {int_theta:?} has self-extensions (min dim = {min})"
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// Scale a rational vector to a primitive integer direction.
fn integral_direction(theta: &[BigRational]) -> Option<Vec<i64>> {
    use num_bigint::BigInt;
    let mut lcm = BigInt::from(1);
    for t in theta {
        let d = t.denom().clone();
        let g = num_integer::gcd(lcm.clone(), d.clone());
        lcm = lcm * d / g;
    }
    let ints: Vec<BigInt> = theta
        .iter()
        .map(|t| (t * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::from(0);
    for i in &ints {
        g = num_integer::gcd(g, i.clone());
    }
    if g == BigInt::from(0) {
        return None;
    }
    ints.iter()
        .map(|i| i64::try_from(i / &g).ok())
        .collect()
}

fn bricks_census(
    algebra: &Path,
    dims: &[usize],
    fields: &[u64],
    sample: Option<u64>,
    budget: u128,
    seed: u64,
    json_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let desc = read_algebra(algebra)?;
    if fields.is_empty() {
        return Err(CliError::usage("--fields needs at least one prime".into()));
    }
    let mut reports = Vec::new();
    for &q in fields {
        if !is_prime(q) {
            return Err(CliError::usage(format!("field {q} is not prime")));
        }
        let alg = Arc::new(desc.compile(PrimeField::new(q), None)?);
        if dims.len() != alg.num_vertices() {
            return Err(CliError::usage("--dim length != number of vertices".into()));
        }
        let mode = match sample {
            Some(c) => CensusMode::Sample(c),
            None => CensusMode::Exhaustive,
        };
        let r = brick_census(&alg, dims, mode, budget, seed)?;
        println!(
            "F_{q}: {} brick point(s), {} iso class(es) at d = {:?}",
            r.brick_points,
            r.class_count(),
            dims
        );
        let header = io::report_header(&desc, ScalarDomain::PrimeField(q), Some(seed));
        reports.push(io::census_json(&r, header));
    }
    if let Some(p) = json_out {
        let payload = json!({ "censuses": reports });
        std::fs::write(p, serde_json::to_string_pretty(&payload).unwrap())?;
    }
    Ok(())
}

fn bbt_cmd(
    algebra: &Path,
    max_total_dim: usize,
    fields: &[u64],
    budget: u128,
    sample_count: u64,
    seed: u64,
    json_out: Option<PathBuf>,
) -> Result<(), CliError> {
    let desc = read_algebra(algebra)?;
    if fields.is_empty() {
        return Err(CliError::usage("--fields needs at least one prime".into()));
    }
    for &q in fields {
        if !is_prime(q) {
            return Err(CliError::usage(format!("field {q} is not prime")));
        }
    }
    let report = bbt_search(
        &desc,
        PrimeField::new,
        max_total_dim,
        fields,
        seed,
        budget,
        sample_count,
    )?;
    let flagged = report.flagged_dims();
    println!(
        "swept {} dimension vector(s) over fields {:?}",
        report.entries.len(),
        fields
    );
    if flagged.is_empty() {
        println!("no 1-parameter-family evidence found");
    } else {
        println!("flagged dimension vectors (growing brick class counts):");
        for d in &flagged {
            println!("  {d:?}");
        }
    }
    println!("brick total dimensions found: {:?}", report.brick_dims_found);
    if let Some(p) = json_out {
        let header = io::report_header(&desc, ScalarDomain::PrimeField(fields[0]), Some(seed));
        let payload = io::bbt_json(&report, header);
        std::fs::write(p, serde_json::to_string_pretty(&payload).unwrap())?;
    }
    Ok(())
}
