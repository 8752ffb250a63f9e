//! `rcg` — cluster-graph distributions, sampling, critical points, and
//! the CSV data behind the survey figures.
//!
//! Exit codes: 0 success, 1 numeric failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rcg_core::bell::{BellTable, EdgeBias};
use rcg_core::community::{figure4_sweep, SweepConfig};
use rcg_core::critical::{critical_bounds, solve_critical};
use rcg_core::exactdist::{degree_pmf, expected_clique_count_by_size};
use rcg_core::logspace::choose2;
use rcg_core::oracle::{bell_polynomial, exact_statistic_pmf, Statistic};
use rcg_core::rng::RngStream;
use rcg_core::sampler::{sample_cluster_graph_cached, CliqueSizeSampler};

#[derive(Parser)]
#[command(name = "rcg", version, about = "Random cluster graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Edge bias given as exactly one of p, t = log(p/(1-p)), or w = p/(1-p).
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct BiasFlags {
    /// Edge probability p in [0, 1)
    #[arg(long)]
    p: Option<f64>,
    /// Log-odds t = log(p/(1-p))
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Odds w = p/(1-p)
    #[arg(long)]
    w: Option<f64>,
}

impl BiasFlags {
    fn bias(&self) -> rcg_core::Result<EdgeBias> {
        match (self.p, self.t, self.w) {
            (Some(p), None, None) => EdgeBias::from_p(p),
            (None, Some(t), None) => EdgeBias::from_t(t),
            (None, None, Some(w)) => EdgeBias::from_w(w),
            _ => unreachable!("clap enforces exactly one bias flag"),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatFlag {
    Cliques,
    Edges,
    Degree,
}

#[derive(Subcommand)]
enum Command {
    /// Print log B_n(w); for n <= 13 also the exact polynomial coefficients
    Bell {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        bias: BiasFlags,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Exact pmf of a partition statistic as CSV `value,prob`
    Dist {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        bias: BiasFlags,
        #[arg(long, value_enum)]
        stat: StatFlag,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Draw cluster graphs; CSV `sample_id,c,m,max_block`
    Sample {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        bias: BiasFlags,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Critical p over an n-range; CSV `n,p_star,p_L,p_U,residual`
    Critical {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Emit the data behind one of the survey figures
    Figure {
        /// Figure number: 2, 3, 4, 5, or 6
        fig: u32,
        /// Vertex count (figures 3, 5, 6)
        #[arg(long)]
        n: Option<usize>,
        /// Sweep config file in TOML (figure 4)
        #[arg(long)]
        config: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        output: String,
    },
}

/// 12 significant digits, trailing zeros trimmed.
fn fmt(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..12).contains(&exp) {
        let prec = (11 - exp).max(0) as usize;
        let plain = format!("{:.*}", prec, x);
        let trimmed = plain.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

fn write_out(path: &str, contents: &str) -> anyhow::Result<()> {
    if path == "-" {
        std::io::stdout().write_all(contents.as_bytes())?;
    } else {
        fs::write(path, contents)?;
    }
    Ok(())
}

fn cmd_bell(n: usize, bias: EdgeBias, output: &str) -> anyhow::Result<()> {
    let table = BellTable::build(n, bias)?;
    let mut out = format!("log_bell={}\n", fmt(table.log_bell(n)));
    if n == 0 {
        out.push_str("coefficients=1\n");
    } else if n <= 13 {
        let poly = bell_polynomial(n)?;
        let top = choose2(n as u64) as u64;
        let coeffs: Vec<String> = (0..=top)
            .map(|m| {
                poly.coeff()
                    .get(&m)
                    .map_or_else(|| "0".to_string(), |c| c.to_string())
            })
            .collect();
        out.push_str(&format!("coefficients={}\n", coeffs.join(",")));
    }
    write_out(output, &out)
}

fn cmd_dist(n: usize, bias: EdgeBias, stat: StatFlag, output: &str) -> anyhow::Result<()> {
    let mut out = String::from("value,prob\n");
    match stat {
        StatFlag::Degree => {
            let table = BellTable::build(n, bias)?;
            let pmf = degree_pmf(&table, n)?;
            for (i, &p) in pmf.probs().iter().enumerate() {
                out.push_str(&format!(
                    "{},{}\n",
                    pmf.support_offset() + i as i64,
                    fmt(p)
                ));
            }
        }
        StatFlag::Cliques | StatFlag::Edges => {
            let statistic = match stat {
                StatFlag::Cliques => Statistic::Cliques,
                _ => Statistic::Edges,
            };
            for (value, p) in exact_statistic_pmf(n, bias, statistic)? {
                out.push_str(&format!("{value},{}\n", fmt(p)));
            }
        }
    }
    write_out(output, &out)
}

fn cmd_sample(
    n: usize,
    bias: EdgeBias,
    samples: usize,
    seed: u64,
    output: &str,
) -> anyhow::Result<()> {
    let table = BellTable::build(n, bias)?;
    let cache = CliqueSizeSampler::build(&table, n)?;
    let mut rng = RngStream::new(seed, 0);
    let mut out = String::from("sample_id,c,m,max_block\n");
    for id in 0..samples {
        let part = sample_cluster_graph_cached(&cache, n, &mut rng);
        out.push_str(&format!(
            "{id},{},{},{}\n",
            part.block_count(),
            part.edge_count(),
            part.max_block()
        ));
    }
    write_out(output, &out)
}

fn critical_csv(n_min: usize, n_max: usize, step: usize, q: f64) -> anyhow::Result<String> {
    anyhow::ensure!(step > 0 && n_min >= 2 && n_min <= n_max, "bad n-range");
    let mut out = String::from("n,p_star,p_L,p_U,residual\n");
    for n in (n_min..=n_max).step_by(step) {
        let r = solve_critical(n, q, 1e-12)?;
        let (lo, hi) = critical_bounds(n)?;
        out.push_str(&format!(
            "{n},{},{},{},{}\n",
            fmt(r.p_star),
            fmt(lo),
            fmt(hi),
            fmt(r.residual)
        ));
    }
    Ok(out)
}

/// Pmf of the size-biased cluster size S = D + 1 as CSV.
fn size_pmf_csv(n: usize, bias: EdgeBias) -> anyhow::Result<String> {
    let table = BellTable::build(n, bias)?;
    let pmf = degree_pmf(&table, n)?;
    let mut out = String::from("s,prob\n");
    for (i, &p) in pmf.probs().iter().enumerate() {
        let s = pmf.support_offset() + i as i64 + 1;
        out.push_str(&format!("{s},{}\n", fmt(p)));
    }
    Ok(out)
}

fn cmd_figure(
    fig: u32,
    n: Option<usize>,
    config: Option<&str>,
    seed: u64,
    output: &str,
) -> anyhow::Result<()> {
    let out = match fig {
        2 => critical_csv(100, 500, 10, 0.5)?,
        3 => {
            let n = n.unwrap_or(30);
            size_pmf_csv(n, EdgeBias::from_p(1.0 / n as f64)?)?
        }
        4 => {
            let path = config
                .ok_or_else(|| anyhow::anyhow!("figure 4 needs --config <sweep.toml>"))?;
            let cfg = SweepConfig::from_toml(&fs::read_to_string(path)?)?;
            let rng = RngStream::new(cfg.seed, 0);
            let rows = figure4_sweep(&cfg, &rng)?;
            let mut out =
                String::from("p,mean_detected_edges,mean_correlation,stderr_correlation\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(r.p),
                    fmt(r.mean_detected_edges),
                    fmt(r.mean_correlation),
                    fmt(r.stderr_correlation)
                ));
            }
            out
        }
        5 => {
            let n = n.unwrap_or(100);
            let crit = solve_critical(n, 0.5, 1e-12)?;
            let table = BellTable::build(n, EdgeBias::from_p(crit.p_star)?)?;
            let mut out = String::from("s,expected_cliques\n");
            for s in 1..=n {
                out.push_str(&format!(
                    "{s},{}\n",
                    fmt(expected_clique_count_by_size(&table, n, s)?)
                ));
            }
            out
        }
        6 => {
            let n = n.unwrap_or(2000);
            size_pmf_csv(n, EdgeBias::from_p((n as f64).powf(-2.0 / 9.0))?)?
        }
        other => anyhow::bail!("usage: unknown figure {other} (expected 2-6)"),
    };
    let _ = seed; // figures 2, 3, 5, 6 are deterministic; 4 seeds via config
    write_out(output, &out)
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Bell { n, bias, output } => cmd_bell(n, bias.bias()?, &output),
        Command::Dist {
            n,
            bias,
            stat,
            output,
        } => cmd_dist(n, bias.bias()?, stat, &output),
        Command::Sample {
            n,
            bias,
            samples,
            seed,
            output,
        } => cmd_sample(n, bias.bias()?, samples, seed, &output),
        Command::Critical {
            n_min,
            n_max,
            step,
            q,
            output,
        } => write_out(&output, &critical_csv(n_min, n_max, step, q)?),
        Command::Figure {
            fig,
            n,
            config,
            seed,
            output,
        } => cmd_figure(fig, n, config.as_deref(), seed, &output),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let usage = e.to_string().starts_with("usage:")
                || e.downcast_ref::<rcg_core::Error>().is_some_and(|err| {
                    matches!(err, rcg_core::Error::InvalidParameter(_))
                });
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
