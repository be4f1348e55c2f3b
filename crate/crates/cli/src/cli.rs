//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Kind, Settings};
use crate::output::{summary_table, write_csv};
use crate::presets::{preset, Figure};
use crate::run::{run_all, RunOutput};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "noma-accuracy",
    version,
    about = "Accuracy of distance-based user ranking in NOMA clusters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic accuracy over the grid.
    Analytic(Opts),
    /// Monte Carlo accuracy over the grid.
    Mc(Opts),
    /// Monte Carlo coverage of a 2-user cluster, ISP and MSP ranking.
    Coverage(Opts),
    /// Run a figure preset (fig1..fig6).
    Reproduce {
        figure: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Analytic and Monte Carlo accuracy over the grid.
    Sweep(Opts),
}

/// Grid flags take comma-separated lists.
#[derive(Debug, Args, Default, Clone)]
pub struct Opts {
    /// key = value config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// ppp, mcp, tcp or ppp-voronoi.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub n_users: Option<String>,
    #[arg(long)]
    pub pool_size: Option<String>,
    /// Ranks such as `1,3`; `;` separates several selections, `M:` prefixes a pool size.
    #[arg(long)]
    pub select: Option<String>,
    /// Linear SIR threshold.
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long)]
    pub theta_db: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    /// first-term or unconditional.
    #[arg(long)]
    pub msp_mode: Option<String>,
    /// uplink or downlink.
    #[arg(long)]
    pub direction: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub radius: Option<String>,
    #[arg(long)]
    pub sigma2: Option<String>,
    /// Fill the runtime_ms column.
    #[arg(long)]
    pub timing: bool,
    /// Do not echo the summary table to stderr.
    #[arg(long)]
    pub quiet: bool,
}

impl Opts {
    /// Config file settings with flags applied on top.
    pub fn settings(&self) -> Result<Settings, CliError> {
        let mut s = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| CliError::Io {
                    path: path.clone(),
                    source: e,
                })?;
                Settings::parse(&text)?
            }
            None => Settings::new(),
        };
        let mut flags = Settings::new();
        let pairs = [
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("model", &self.model),
            ("alpha", &self.alpha),
            ("m", &self.m),
            ("n_users", &self.n_users),
            ("pool_size", &self.pool_size),
            ("select", &self.select),
            ("theta", &self.theta),
            ("theta_db", &self.theta_db),
            ("beta", &self.beta),
            ("msp_mode", &self.msp_mode),
            ("direction", &self.direction),
            ("lambda", &self.lambda),
            ("radius", &self.radius),
            ("sigma2", &self.sigma2),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                flags.set(k, v.as_str())?;
            }
        }
        if let Some(out) = &self.out {
            flags.set("out", out.to_string_lossy())?;
        }
        // a flag for one threshold form replaces the other from the file
        if self.theta.is_some() || self.theta_db.is_some() {
            s.remove(if self.theta.is_some() { "theta_db" } else { "theta" });
        }
        s.merge(&flags);
        Ok(s)
    }
}

/// Runs a parsed command, writes its CSV and returns the run output.
pub fn execute(cli: &Cli) -> Result<RunOutput, CliError> {
    let (exps, opts) = match &cli.command {
        Command::Reproduce { figure, opts } => (preset(Figure::parse(figure)?, &opts.settings()?)?, opts),
        Command::Analytic(o) => (vec![o.settings()?.resolve(Some(Kind::Analytic))?], o),
        Command::Mc(o) => (vec![o.settings()?.resolve(Some(Kind::Mc))?], o),
        Command::Coverage(o) => (vec![o.settings()?.resolve(Some(Kind::Coverage))?], o),
        Command::Sweep(o) => (vec![o.settings()?.resolve(Some(Kind::Sweep))?], o),
    };
    let out_path = exps.first().and_then(|e| e.out.clone());
    let result = run_all(&exps, opts.timing);
    match &out_path {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| CliError::Io {
                path: path.clone(),
                source: e,
            })?;
            write_csv(std::io::BufWriter::new(file), &result.comments, &result.rows)?;
        }
        None => write_csv(std::io::stdout().lock(), &result.comments, &result.rows)?,
    }
    if !opts.quiet {
        let mut err = std::io::stderr().lock();
        let _ = write!(err, "{}", summary_table(&result.rows));
        let _ = writeln!(
            err,
            "{} rows, {} failed{}",
            result.rows.len(),
            result.config_failures + result.numerical_failures,
            out_path
                .map(|p| format!(", written to {}", p.display()))
                .unwrap_or_default()
        );
    }
    for row in result.rows.iter().filter(|r| r.is_error()) {
        eprintln!("error: {}", row.message.as_deref().unwrap_or("unknown"));
    }
    Ok(result)
}

/// Entry point: parses `args` and returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => out.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
