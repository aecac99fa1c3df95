use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use qosc::lattice::Eps;
use qosc::report::{self, Report};
use qosc::scalars::Scalar;

#[derive(Parser)]
#[command(name = "qosc", version, about = "Exact checks for q-oscillator representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// parity sequence as a bitstring, e.g. 0100
    #[arg(long, global = true, default_value = "0000")]
    eps: String,
    /// split point
    #[arg(long, global = true, default_value_t = 2)]
    r: usize,
    /// write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "QOSC_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Defining relations, polarization, and (for eps = 0^n) the q = 1 limit
    Relations {
        #[arg(long, default_value_t = 6)]
        degree: i32,
        #[arg(long, default_value_t = 3)]
        tensor_depth: i32,
        #[arg(long, default_value_t = 4)]
        pol_degree: i32,
        #[arg(long, default_value_t = 5)]
        classical_degree: i32,
    },
    /// Closed-form singular vectors and ladder identities
    Singular {
        #[arg(long, allow_hyphen_values = true, requires = "m")]
        l: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "l")]
        m: Option<i64>,
        #[arg(long, default_value_t = 3)]
        max_i: i64,
        #[arg(long, default_value_t = 3)]
        max_ab: i64,
    },
    /// Solve the normalized R matrix on W_l (x) W_m
    Rmatrix {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 3)]
        components: i64,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Braid relation on triple products
    Yangbaxter {
        /// charges as l,m,k; repeatable
        #[arg(long = "charges", allow_hyphen_values = true, value_parser = parse_triple)]
        charges: Vec<[i64; 3]>,
        #[arg(long, default_value_t = 4)]
        depth: i64,
        /// the fixed second spectral parameter
        #[arg(long, default_value = "2")]
        c: String,
    },
    /// Fusion images and the pole at c1/c2 = q^{|l-m|+2}
    Fusion {
        #[arg(long, default_value_t = 6)]
        degree: i64,
    },
    /// Kirillov-Reshetikhin module W^{l,s}(c)
    Kr {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, default_value_t = 6)]
        degree: i64,
    },
    /// Characters of W_l, stabilization, and the comb rule
    Chars {
        /// charges; repeatable (default -2..2)
        #[arg(long = "l", allow_hyphen_values = true)]
        ls: Vec<i64>,
        #[arg(long, default_value_t = 6)]
        degree: i64,
        /// also write the characters as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Truncation along removed slots
    Truncate {
        /// 1-based slots to remove, comma separated; repeatable
        #[arg(long = "remove", value_delimiter = ',', num_args = 1.., action = clap::ArgAction::Append)]
        remove: Vec<usize>,
        /// remove every slot of this parity instead (0 or 1); repeatable
        #[arg(long = "keep-bit")]
        keep_bit: Vec<u8>,
        #[arg(long = "pair", allow_hyphen_values = true, value_parser = parse_pair)]
        pairs: Vec<(i64, i64)>,
        #[arg(long, default_value_t = 3)]
        max_t: i64,
        #[arg(long, default_value_t = 1)]
        square_depth: i64,
    },
    /// First-order Drinfeld eigenvalues on v_l
    Drinfeld {
        #[arg(long = "n")]
        ns: Vec<usize>,
        #[arg(long = "l", allow_hyphen_values = true)]
        ls: Vec<i64>,
    },
    /// Every acceptance check at its fixed parameters
    All,
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x}: {e}"))).collect()
}

fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    parse_ints(s)?.try_into().map_err(|_| "expected three comma-separated integers".to_string())
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    match parse_ints(s)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err("expected two comma-separated integers".to_string()),
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qosc: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    if let Some(t) = c.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return usage(e);
        }
    }
    let eps = match Eps::parse(&c.eps, c.r) {
        Ok(e) => e,
        Err(e) => return usage(e),
    };
    let scalar = |s: &str| Scalar::parse(s).map_err(|e| format!("{s}: {e}"));
    let t0 = Instant::now();
    let report = match &cli.cmd {
        Cmd::Relations { degree, tensor_depth, pol_degree, classical_degree } => {
            let mut parts = vec![report::relations(&eps, *degree, *tensor_depth), report::polarization(&eps, *pol_degree)];
            if eps.bits().iter().all(|&b| b == 0) {
                parts.push(report::classical(&eps, *classical_degree));
            }
            Report::combine("relations", parts)
        }
        Cmd::Singular { l, m, max_i, max_ab } => {
            let pairs = match (l, m) {
                (Some(l), Some(m)) => vec![(*l, *m)],
                _ => vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, -1), (-1, -2)],
            };
            report::singular(&eps, &pairs, *max_i, *max_ab)
        }
        Cmd::Rmatrix { l, m, components, depth } => report::rmatrix(&eps, *l, *m, *components, *depth),
        Cmd::Yangbaxter { charges, depth, c } => {
            let c = match scalar(c) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let triples = if charges.is_empty() { vec![[0, 0, 0], [1, 0, 0], [1, 1, 0]] } else { charges.clone() };
            report::yangbaxter(&eps, &triples, *depth, &c)
        }
        Cmd::Fusion { degree } => report::fusion(&eps, *degree),
        Cmd::Kr { l, s, c, degree } => {
            let c = match scalar(c) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            report::kr(&eps, *l, *s, &c, *degree)
        }
        Cmd::Chars { ls, degree, csv } => {
            let ls = if ls.is_empty() { vec![-2, -1, 0, 1, 2] } else { ls.clone() };
            let (rep, table) = report::chars(eps.r(), eps.n(), &ls, *degree);
            if let Some(path) = csv {
                let mut text = String::from("l,coefficient,monomial\n");
                for (l, ch) in &table {
                    for (c, m) in ch.sorted_terms() {
                        text.push_str(&format!("{l},{c},{m}\n"));
                    }
                }
                if let Err(e) = std::fs::write(path, text) {
                    return usage(format!("{}: {e}", path.display()));
                }
            }
            rep
        }
        Cmd::Truncate { remove, keep_bit, pairs, max_t, square_depth } => {
            let mut removals: Vec<Vec<usize>> = Vec::new();
            if !remove.is_empty() {
                removals.push(remove.clone());
            }
            for &b in keep_bit {
                removals.push((1..=eps.n()).filter(|&i| eps.bit(i) != b).collect());
            }
            if removals.is_empty() {
                return usage("truncate needs --remove or --keep-bit");
            }
            let pairs = if pairs.is_empty() { vec![(1, 0), (0, 0)] } else { pairs.clone() };
            report::truncate(&eps, &removals, &pairs, *max_t, *square_depth)
        }
        Cmd::Drinfeld { ns, ls } => {
            let ns = if ns.is_empty() { vec![4, 5] } else { ns.clone() };
            let ls = if ls.is_empty() { vec![-2, -1, 0, 1, 2] } else { ls.clone() };
            report::drinfeld(&ns, &ls, eps.r())
        }
        Cmd::All => {
            let parts = report::acceptance()
                .iter()
                .map(|(name, run)| {
                    let t = Instant::now();
                    let rep = run();
                    eprintln!("{name}: {} ({:.1}s)", if rep.passed { "pass" } else { "FAIL" }, t.elapsed().as_secs_f64());
                    rep
                })
                .collect();
            Report::combine("all", parts)
        }
    };
    eprintln!("{}: {} in {:.1}s", report.suite, if report.passed { "pass" } else { "FAIL" }, t0.elapsed().as_secs_f64());
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &c.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                return usage(format!("{}: {e}", path.display()));
            }
        }
        None => println!("{json}"),
    }
    for a in report.failures().take(5) {
        eprintln!("  failed: {}", a.name);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
