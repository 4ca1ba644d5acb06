// SPDX-License-Identifier: Apache-2.0

//! `bcprof`: generate trees, compute exact profiles, analyze them, run the
//! verification sweeps and the scale-free experiments.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error,
//! 3 bad family spec or parameters, 4 file error, 5 vertex or tree error,
//! 6 exact enumeration too large, 7 unknown check, 8 anything else.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use bcprof_core::analysis::{PairAnalysis, VertexAnalysis};
use bcprof_core::experiments::{run_experiment, write_csv, ExperimentConfig, ExperimentError, Manifest, Which};
use bcprof_core::families::{FamilyError, FamilySpec};
use bcprof_core::io::{format_tree, read_tree, TreeFileError};
use bcprof_core::profile::{ProfileBuilder, ProfileError};
use bcprof_core::scale_free::{
    estimate_expected_profiles, exact_expected_pk_table, rational_to_f64, sample_tree, substream,
    ScaleFreeError,
};
use bcprof_core::verify::Check;
use bcprof_core::{all_profiles, BigCount, Profile, Tree, TreeError};

#[derive(Parser)]
#[command(name = "bcprof", version, about = "Exact k-betweenness profiles of trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member or a sampled scale-free tree as a tree file.
    Gen {
        /// path:n, broom:m,n, double-broom:m,n, gij:i,j, tell:l[,strategy] or scale-free:n
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print exact profiles.
    #[command(group(ArgGroup::new("which").required(true).args(["vertex", "all"])))]
    Profile {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Dips and monotonicity of one profile, or crossings of two.
    #[command(group(ArgGroup::new("target").required(true).args(["vertex", "pair"])))]
    Analyze {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<usize>>,
    },
    /// Run a verification sweep (or `all`).
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Expected path counts or profile values in scale-free trees.
    #[command(group(ArgGroup::new("mode").required(true).args(["exact", "trials"])))]
    Expect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo frequency of crossing-free or monotone profiles.
    Experiment {
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = bcprof_core::experiments::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated n values (or vertex labels for the *_vs_i runs).
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<usize>>,
        #[arg(long, default_value_t = bcprof_core::experiments::DEFAULT_FIXED_N)]
        fixed_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Defaults to `<out>.manifest.json` when `--out` is given.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        fail(3, e)
    }
}

impl From<TreeFileError> for Failure {
    fn from(e: TreeFileError) -> Self {
        match e {
            TreeFileError::Tree(t) => fail(5, t),
            other => fail(4, other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(4, e)
    }
}

impl From<ProfileError> for Failure {
    fn from(e: ProfileError) -> Self {
        fail(5, e)
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        fail(5, e)
    }
}

impl From<ScaleFreeError> for Failure {
    fn from(e: ScaleFreeError) -> Self {
        match e {
            ScaleFreeError::NTooLarge { .. } => fail(6, e),
            ScaleFreeError::InvalidN(_) | ScaleFreeError::NoTrials => fail(3, e),
            other => fail(8, other),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Io(io) => fail(4, io),
            other => fail(3, other),
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_gen(spec: &str, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let text = if let Some(n) = spec.strip_prefix("scale-free:") {
        let n: usize = n.trim().parse().map_err(|_| fail(3, format!("cannot parse family spec {spec:?}")))?;
        if n == 0 {
            return Err(fail(3, "scale-free trees need n >= 1"));
        }
        let rt = sample_tree(n, &mut substream(seed, 0));
        let comments = vec![
            format!("family: scale-free:{n}"),
            format!("seed: {seed}"),
            "labels: vertex t has insertion label t+1".to_string(),
        ];
        format_tree(&rt.tree(), &comments)
    } else {
        let built = spec.parse::<FamilySpec>()?.build()?;
        format_tree(&built.tree, &built.comments())
    };
    emit(&text, out)
}

fn check_vertex(tree: &Tree, v: usize) -> Result<(), Failure> {
    if v >= tree.n() {
        return Err(TreeError::OutOfRange { id: v, n: tree.n() }.into());
    }
    Ok(())
}

fn cmd_profile(path: &Path, vertex: Option<usize>, format: Format) -> Result<(), Failure> {
    let tree = read_tree(path)?.tree;
    let profiles: Vec<Profile<BigCount>> = match vertex {
        Some(v) => {
            check_vertex(&tree, v)?;
            vec![ProfileBuilder::new(&tree)?.profile(v)?]
        }
        None => all_profiles(&tree)?,
    };
    let rows: Vec<_> = profiles.iter().flat_map(|p| p.rows()).collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&rows).map_err(|e| fail(8, e))? + "\n",
        Format::Csv => {
            let mut s = String::from("vertex,k,numerator,denominator,reduced,decimal\n");
            for r in &rows {
                writeln!(s, "{},{},{},{},{},{:.6}", r.vertex, r.k, r.numerator, r.denominator, r.reduced, r.decimal)
                    .expect("writing to a String");
            }
            s
        }
    };
    emit(&text, None)
}

fn cmd_analyze(path: &Path, vertex: Option<usize>, pair: Option<Vec<usize>>) -> Result<(), Failure> {
    let tree = read_tree(path)?.tree;
    let builder = ProfileBuilder::<BigCount>::new(&tree)?;
    let json = match (vertex, pair) {
        (Some(v), _) => {
            check_vertex(&tree, v)?;
            serde_json::to_string_pretty(&VertexAnalysis::of(&builder.profile(v)?))
        }
        (None, Some(p)) => {
            check_vertex(&tree, p[0])?;
            check_vertex(&tree, p[1])?;
            let (pu, pv) = (builder.profile(p[0])?, builder.profile(p[1])?);
            serde_json::to_string_pretty(&PairAnalysis::of(&pu, &pv).map_err(|e| fail(8, e))?)
        }
        (None, None) => return Err(fail(2, "either --vertex or --pair is required")),
    };
    emit(&(json.map_err(|e| fail(8, e))? + "\n"), None)
}

fn cmd_verify(check: &str, max_size: Option<usize>) -> Result<bool, Failure> {
    let checks: Vec<Check> = if check == "all" {
        Check::ALL.to_vec()
    } else {
        vec![check.parse().map_err(|e| fail(7, e))?]
    };
    let mut ok = true;
    for c in checks {
        let report = c.run(max_size);
        print!("{report}");
        ok &= report.passed();
    }
    Ok(ok)
}

fn cmd_expect(n: usize, k: usize, exact: bool, trials: Option<usize>, seed: u64) -> Result<(), Failure> {
    let mut s = String::new();
    if exact {
        let table = exact_expected_pk_table(n)?;
        s.push_str("vertex,k,expected,decimal\n");
        for (v, row) in table.iter().enumerate() {
            let e = row.get(k).cloned().unwrap_or_default();
            writeln!(s, "{},{k},{e},{:.6}", v + 1, rational_to_f64(&e)).expect("writing to a String");
        }
    } else {
        let trials = trials.ok_or_else(|| fail(2, "--trials is required without --exact"))?;
        if k < 2 || k + 1 > n {
            return Err(fail(3, format!("need 2 <= k <= n - 1 (n={n} k={k})")));
        }
        let est = estimate_expected_profiles(n, trials, seed)?;
        s.push_str("vertex,k,mean,stderr,trials\n");
        for v in 0..n {
            writeln!(s, "{},{k},{:.6},{:.6},{trials}", v + 1, est.mean[v][k - 2], est.stderr[v][k - 2])
                .expect("writing to a String");
        }
    }
    emit(&s, None)
}

fn cmd_experiment(
    which: &str,
    trials: usize,
    seed: u64,
    grid: Option<Vec<usize>>,
    fixed_n: usize,
    out: Option<&Path>,
    manifest: Option<&Path>,
) -> Result<(), Failure> {
    let which: Which = which.parse()?;
    let mut cfg = ExperimentConfig::new(which, seed);
    cfg.trials = trials;
    cfg.fixed_n = fixed_n;
    if let Some(g) = grid {
        cfg.grid = g;
    }
    let start = Instant::now();
    let res = run_experiment(&cfg)?;
    let elapsed = start.elapsed().as_secs_f64();
    match out {
        Some(path) => write_csv(&res, path)?,
        None => print!("{}", res.to_csv()),
    }
    let manifest_path = manifest
        .map(Path::to_path_buf)
        .or_else(|| out.map(|p| PathBuf::from(format!("{}.manifest.json", p.display()))));
    if let Some(path) = manifest_path {
        let json = serde_json::to_string_pretty(&Manifest::new(&cfg, elapsed)).map_err(|e| fail(8, e))?;
        std::fs::write(path, json + "\n")?;
    }
    Ok(())
}

fn init_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BCPROF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| fail(2, format!("BCPROF_THREADS must be a non-negative integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| fail(8, e))
}

fn run(cli: Cli) -> Result<bool, Failure> {
    init_threads()?;
    match cli.command {
        Command::Gen { spec, seed, out } => cmd_gen(&spec, seed, out.as_deref())?,
        Command::Profile { tree, vertex, all: _, format } => cmd_profile(&tree, vertex, format)?,
        Command::Analyze { tree, vertex, pair } => cmd_analyze(&tree, vertex, pair)?,
        Command::Verify { check, max_size } => return cmd_verify(&check, max_size),
        Command::Expect { n, k, exact, trials, seed } => cmd_expect(n, k, exact, trials, seed)?,
        Command::Experiment {
            which,
            trials,
            seed,
            grid,
            fixed_n,
            out,
            manifest,
        } => cmd_experiment(&which, trials, seed, grid, fixed_n, out.as_deref(), manifest.as_deref())?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("bcprof: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
