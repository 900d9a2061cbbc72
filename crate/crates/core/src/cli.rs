//! Command-line front end.
//!
//! Exit codes: 0 success or quotient exists, 1 not-exists (or a failing
//! corpus item), 2 usage, 3 invalid input, 4 budget exceeded or undecided.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bijection::{parse_bijection, serialize_bijection, EqdFile};
use crate::equivariance::{
    equivariant_quotient_with, nonexistence_from_symmetries, parse_symmetries,
    serialize_certificate, serialize_symmetries, stabilizer_with, Limits, Verdict,
};
use crate::error::Error;
use crate::fp::{fp_divide, parallelize};
use crate::gallery::{
    checkered_product, gadget_f_xy, gadget_f_xyz, regular_rep, thm4_counterexample, CayleyTable,
};
use crate::perm::{labels_in_order, Perm, PermGroup, DEFAULT_GROUP_CAP};
use crate::search::{
    certificate_files, parallelization_gap_search, probe_cancelling, Mode, ProbeParams,
};

#[derive(Parser, Debug)]
#[command(name = "equidiv", version, about = "Equivariant division of bijections A × C → B × C")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct LimitArgs {
    /// Largest group order to enumerate.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    group_cap: usize,
    /// Backtracking nodes allowed per search.
    #[arg(long, default_value_t = 10_000_000)]
    node_limit: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            node_limit: self.node_limit,
            group_cap: self.group_cap,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Divide by C with basepoint division.
    Divide {
        #[arg(long = "in")]
        input: PathBuf,
        /// Basepoint: a C label or an index.
        #[arg(long)]
        base: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace f by the parallel bijection of its per-basepoint quotients.
    Parallelize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the symmetries of f whose C part lies in the group.
    Stab {
        #[arg(long = "in")]
        input: PathBuf,
        /// `full`, `trivial` or `gens (a,b);(c,d)`.
        #[arg(long)]
        group: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide whether f has a quotient equivariant for the group.
    Quotient {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// Prove nonexistence from these symmetries alone.
        #[arg(long)]
        symmetries: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Emit an instance of one of the example families.
    Gallery {
        #[command(subcommand)]
        which: Gallery,
    },
    /// Search small sizes for bijections without an equivariant quotient.
    Probe {
        #[arg(long = "nA")]
        n_a: usize,
        #[arg(long = "nC")]
        n_c: usize,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Parallel)]
        mode: ModeArg,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write one certificate file per counterexample here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Look for f with a quotient whose parallelization has none.
    Gap {
        #[arg(long = "nA")]
        n_a: usize,
        #[arg(long = "nC")]
        n_c: usize,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run the built-in reference corpus.
    VerifyPaper {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Gallery {
    /// Regular representation of the group in a table file.
    RegularRep { table: PathBuf },
    /// Regular representation of Z_n.
    Cyclic { n: usize },
    /// Regular representation of Z_2 × Z_2.
    Klein,
    /// Checkered product for a permutation without fixed points.
    Checkered { sigma: String },
    /// Infinite counterexample for a nontrivial permutation of C.
    Thm4 {
        gamma: String,
        #[arg(long)]
        window: Option<usize>,
    },
    /// f[x,y,z] for an arrangement such as `b,a,c` of a, b, c.
    GadgetXyz { order: String },
    /// f[x,y] for a pair such as `a,b` of a, b, c.
    GadgetXy {
        pair: String,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Parallel,
    All,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) | Error::GroupTooLarge(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 3,
        msg: format!("{}: {e}", path.display()),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

type Outcome = Result<(i32, String), Failure>;

/// Runs the command line `argv` (program name first) and returns the exit
/// code with everything that would be printed.
pub fn run<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(r) => r,
        Err(f) => (f.code, format!("error: {}\n", f.msg)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_fail(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_fail(path, e))
}

fn load(path: &Path) -> Result<EqdFile, Failure> {
    Ok(parse_bijection(&read(path)?)?)
}

/// Default C labels for generated instances: `a, b, ...`, or `c0, c1, ...`
/// past 26 points.
fn default_c_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("c{i}")).collect()
    }
}

/// `full`, `trivial` or `gens (a,b);(c,d)` against the C labels.
fn parse_group(spec: &str, labels: &[String]) -> Result<PermGroup, Failure> {
    let spec = spec.trim();
    let n = labels.len();
    match spec {
        "full" => Ok(PermGroup::symmetric(n)),
        "trivial" => Ok(PermGroup::trivial(n)),
        _ => {
            let gens = spec
                .strip_prefix("gens")
                .ok_or_else(|| usage(format!("unknown group `{spec}`; use full, trivial or gens ...")))?;
            let perms = gens
                .split(';')
                .map(str::trim)
                .filter(|g| !g.is_empty())
                .map(|g| Perm::parse_cycles(g, labels))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PermGroup::new(n, perms)?)
        }
    }
}

fn c_index(base: &str, labels: &[String]) -> Result<usize, Failure> {
    if let Some(i) = labels.iter().position(|l| l == base) {
        return Ok(i);
    }
    match base.parse::<usize>() {
        Ok(i) if i < labels.len() => Ok(i),
        _ => Err(Failure {
            code: 3,
            msg: format!("basepoint `{base}` is neither a C label nor an index below {}", labels.len()),
        }),
    }
}

fn images_line(p: &Perm) -> String {
    let v: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
    v.join(" ")
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Divide { input, base, out } => {
            let file = load(&input)?;
            let c = file.labels.c_or_index(file.bij.n_c());
            let h = fp_divide(&file.bij, c_index(&base, &c)?)?;
            let line = format!("{}\n", images_line(&h));
            if let Some(path) = out {
                write(&path, &line)?;
            }
            Ok((0, line))
        }
        Command::Parallelize { input, out } => {
            let file = load(&input)?;
            let text = serialize_bijection(&EqdFile {
                bij: parallelize(&file.bij)?,
                labels: file.labels,
            });
            if let Some(path) = out {
                write(&path, &text)?;
            }
            Ok((0, text))
        }
        Command::Stab { input, group, limits } => {
            let file = load(&input)?;
            let g = parse_group(&group, &file.labels.c_or_index(file.bij.n_c()))?;
            let stab = stabilizer_with(&file.bij, &g, &limits.limits())?;
            let mut out = format!("symmetries {}\n", stab.len());
            out.push_str(&serialize_symmetries(&stab, &file.labels));
            Ok((0, out))
        }
        Command::Quotient {
            input,
            group,
            symmetries,
            certificate,
            limits,
        } => quotient(&input, group.as_deref(), symmetries.as_deref(), certificate.as_deref(), &limits),
        Command::Gallery { which } => gallery(which),
        Command::Probe {
            n_a,
            n_c,
            group,
            mode,
            sample,
            seed,
            jobs,
            cert_dir,
            limits,
        } => {
            let g = parse_group(&group, &default_c_labels(n_c))?;
            let mode = match mode {
                ModeArg::Parallel => Mode::Parallel,
                ModeArg::All => Mode::All,
            };
            let mut p = ProbeParams::new(n_a, n_c, g, &group, mode);
            p.sample = sample.map(|n| (n, seed));
            p.jobs = jobs;
            p.limits = limits.limits();
            let report = probe_cancelling(&p)?;
            if let Some(dir) = cert_dir {
                fs::create_dir_all(&dir).map_err(|e| io_fail(&dir, e))?;
                for (name, text) in certificate_files(&report) {
                    write(&dir.join(name), &text)?;
                }
            }
            let code = if report.undecided > 0 { 4 } else { 0 };
            Ok((code, report.to_text()))
        }
        Command::Gap {
            n_a,
            n_c,
            group,
            jobs,
            limits,
        } => {
            let g = parse_group(&group, &default_c_labels(n_c))?;
            let r = parallelization_gap_search(n_a, n_c, &g, &group, &limits.limits(), jobs)?;
            let code = if r.undecided > 0 { 4 } else { 0 };
            Ok((code, r.to_text()))
        }
        Command::VerifyPaper { jobs } => {
            let items = crate::corpus::run(jobs);
            let ok = items.iter().all(|i| i.passed);
            Ok((if ok { 0 } else { 1 }, crate::corpus::report(&items)))
        }
    }
}

fn quotient(
    input: &Path,
    group: Option<&str>,
    symmetries: Option<&Path>,
    certificate: Option<&Path>,
    limits: &LimitArgs,
) -> Outcome {
    let file = load(input)?;
    let f = &file.bij;
    let c = file.labels.c_or_index(f.n_c());
    let limits = limits.limits();
    let group = group.map(|g| parse_group(g, &c)).transpose()?;
    let cert = match (symmetries, &group) {
        (Some(path), _) => {
            let syms = parse_symmetries(&read(path)?, &file.labels, f.n_a(), f.n_c())?;
            if let Some(g) = &group {
                let els = g.enumerate(limits.group_cap)?;
                if let Some(t) = syms.iter().find(|t| els.binary_search(&t.gamma).is_err()) {
                    return Err(Failure {
                        code: 3,
                        msg: format!("gamma {} is not in the group", t.gamma.to_cycle_string(Some(&c))),
                    });
                }
            }
            match nonexistence_from_symmetries(f, &syms, &limits)? {
                Some(cert) => cert,
                None => return Ok((4, "undecided: subset\n".into())),
            }
        }
        (None, Some(g)) => equivariant_quotient_with(f, g, &limits)?,
        (None, None) => return Err(usage("quotient needs --group or --symmetries")),
    };
    let text = serialize_certificate(&cert, &file.labels, f.n_a());
    if let Some(path) = certificate {
        write(path, &text)?;
    }
    let code = match cert.verdict {
        Verdict::Exists => 0,
        Verdict::NotExists => 1,
    };
    Ok((code, text))
}

fn abc_order(spec: &str) -> Result<Vec<usize>, Failure> {
    let labels = ["a", "b", "c"];
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            labels
                .iter()
                .position(|&l| l == t)
                .ok_or_else(|| Failure {
                    code: 3,
                    msg: format!("`{t}` is not one of a, b, c"),
                })
        })
        .collect()
}

fn gallery(which: Gallery) -> Outcome {
    let abc = default_c_labels(3);
    let finite = |f: EqdFile| -> Outcome { Ok((0, serialize_bijection(&f))) };
    match which {
        Gallery::RegularRep { table } => {
            let t = CayleyTable::parse(&read(&table)?)?;
            finite(EqdFile::unlabeled(regular_rep(&t)))
        }
        Gallery::Cyclic { n } => finite(EqdFile::unlabeled(regular_rep(&CayleyTable::cyclic(n)?))),
        Gallery::Klein => finite(EqdFile::unlabeled(regular_rep(&CayleyTable::klein()))),
        Gallery::Checkered { sigma } => {
            let c = labels_in_order(&sigma)?;
            let ch = checkered_product(&Perm::parse_cycles(&sigma, &c)?, &c)?;
            let mut out = serialize_bijection(&ch.file);
            for t in &ch.symmetries {
                let _ = writeln!(out, "# symmetry {}", t.to_labeled_string(&ch.file.labels));
            }
            Ok((0, out))
        }
        Gallery::Thm4 { gamma, window } => {
            let c = labels_in_order(&gamma)?;
            let mut g = Perm::parse_cycles(&gamma, &c)?;
            let mut out = String::new();
            let lens: Vec<usize> = g.nontrivial_cycles().iter().map(Vec::len).collect();
            if lens.windows(2).any(|w| w[0] != w[1]) {
                g = g.semiregular_power()?;
                let _ = writeln!(out, "# reduced to {}", g.to_cycle_string(Some(&c)));
            }
            let (lazy, sym) = thm4_counterexample(&g, &c)?;
            out.push_str(&lazy.render(window.unwrap_or(lazy.width() + 3)));
            let _ = writeln!(
                out,
                "# symmetry {}{}",
                sym.gamma.to_cycle_string(Some(&c)),
                sym.beta.to_cycle_string(Some(lazy.symbols()))
            );
            Ok((0, out))
        }
        Gallery::GadgetXyz { order } => {
            let o = abc_order(&order)?;
            let arr: [usize; 3] = o
                .try_into()
                .map_err(|_| usage("gadget-xyz needs an arrangement of a, b, c"))?;
            finite(gadget_f_xyz(arr, &abc)?)
        }
        Gallery::GadgetXy { pair, window } => {
            let o = abc_order(&pair)?;
            let [x, y]: [usize; 2] = o
                .try_into()
                .map_err(|_| usage("gadget-xy needs two of a, b, c"))?;
            Ok((0, gadget_f_xy(x, y, &abc)?.render(window)))
        }
    }
}
