use std::ffi::OsString;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hyperset::commands::{execute, Command, CommandError, Format};

const GRAMMAR: &str =
    "Set expressions: {n,...}  r%m  [a,b)  N (all naturals)  0 (empty)  predicate names \
(squaresblocks, triadic-unit(j), triadic-val-ge(k)), combined with ! & | and parentheses. \
`E << k` is the leftward shift A-k = {n : n+k in A}; `E >> k` is the rightward shift A+k. \
Points are written `point M:r` (depth M, residue r).";

#[derive(Parser, Debug)]
#[command(name = "hyperset", version, about = "Decidable ultrafilter calculus on eventually-periodic sets", after_help = GRAMMAR)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Human, global = true)]
    format: OutFormat,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Schnirelmann density sigma, asymptotic density d and Banach density BD (both w/p).
    Density { expr: String },
    /// Hyper-shift A_gamma = {n : gamma+n in *A}, checked against the ultrafilter-shift A - U_gamma.
    Shift { expr: String, point: String },
    /// Exact embeddability A <=e B, i.e. A = B_gamma for some gamma; reports the witness.
    Embed { a: String, b: String },
    /// Pseudo-sum: A in U_gamma (+) U_delta iff A_delta in U_gamma.
    Psum {
        expr: String,
        gamma: String,
        delta: String,
    },
    /// Star pseudo-sum: A in U_gamma * U_delta iff {n : A+n in U_delta} in U_gamma.
    Star {
        expr: String,
        gamma: String,
        delta: String,
    },
    /// Idempotency: U_gamma (+) U_gamma = U_gamma iff A_gamma = (A_gamma)_gamma for all A.
    Idem { point: String },
    /// Tensor product: X in U_gamma (x) U_delta iff {n : X_n in U_delta} in U_gamma.
    Tensor {
        pair_set: String,
        gamma: String,
        delta: String,
    },
    /// 3-coloring of a fixed-point-free functional graph (file: lines `i -> f(i)`).
    Color3 { file: String },
    /// Rado criterion: c1 x1 + ... + ck xk = 0 is partition regular iff some nonempty subset of the c_i sums to 0.
    Rado { coeffs: String },
    /// Exhaustive check that every r-coloring of [1,N] has a monochromatic solution.
    Schur {
        n: usize,
        colors: u32,
        /// Equation coefficients (default Schur x + y = z, i.e. 1,1,-1).
        #[arg(long = "eq", allow_hyphen_values = true)]
        eq: Option<String>,
    },
    /// Hindman finite-sums search: monochromatic FS(X) with |X| = k (file: one color per element of [1,N]).
    Hindman { file: String, k: usize },
    /// Good start for the Banach density theorem: every prefix of length i <= nu has density >= a - nu/N.
    BanachStart { file: String, nu: usize },
    /// Squares-blocks set [n^2,(n+1)^2) for even n: shift at nu^2 is full, at (nu+1)^2 is empty.
    DemoNoncomm { nu: String, length: usize },
    /// Gamma finite intersection property: a, b, b-a in one atom of the generated partition (file: one set per line).
    GammaFip {
        file: String,
        /// Search window [1,N].
        #[arg(long, default_value_t = 100)]
        window: u64,
    },
}

/// Joins `point` with the following `M:r` token so a point is one argument.
fn merge_points(args: impl IntoIterator<Item = OsString>) -> Vec<OsString> {
    let mut out: Vec<OsString> = Vec::new();
    let mut iter = args.into_iter().peekable();
    while let Some(arg) = iter.next() {
        if arg == "point" {
            if let Some(next) = iter.peek() {
                if next.to_string_lossy().contains(':') {
                    let mut joined = OsString::from("point ");
                    joined.push(iter.next().unwrap());
                    out.push(joined);
                    continue;
                }
            }
        }
        out.push(arg);
    }
    out
}

fn read(path: &str) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Usage(format!("cannot read {path}: {e}")))
}

fn build(cmd: Cmd) -> Result<Command, CommandError> {
    Ok(match cmd {
        Cmd::Density { expr } => Command::Density { set: expr },
        Cmd::Shift { expr, point } => Command::Shift { set: expr, point },
        Cmd::Embed { a, b } => Command::Embed { a, b },
        Cmd::Psum { expr, gamma, delta } => Command::Psum {
            set: expr,
            gamma,
            delta,
        },
        Cmd::Star { expr, gamma, delta } => Command::Star {
            set: expr,
            gamma,
            delta,
        },
        Cmd::Idem { point } => Command::Idem { point },
        Cmd::Tensor {
            pair_set,
            gamma,
            delta,
        } => Command::Tensor {
            pair_set,
            gamma,
            delta,
        },
        Cmd::Color3 { file } => Command::Color3 {
            graph: read(&file)?,
        },
        Cmd::Rado { coeffs } => Command::Rado { coeffs },
        Cmd::Schur { n, colors, eq } => Command::Schur {
            n,
            colors,
            coeffs: eq,
        },
        Cmd::Hindman { file, k } => Command::Hindman {
            coloring: read(&file)?,
            k,
        },
        Cmd::BanachStart { file, nu } => Command::BanachStart {
            window: read(&file)?,
            nu,
        },
        Cmd::DemoNoncomm { nu, length } => Command::DemoNoncomm { nu, length },
        Cmd::GammaFip { file, window } => Command::GammaFip {
            sets: read(&file)?,
            window,
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(merge_points(std::env::args_os())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = match cli.format {
        OutFormat::Human => Format::Human,
        OutFormat::Json => Format::Json,
    };
    match build(cli.command).and_then(|c| execute(&c)) {
        Ok(result) => {
            print!("{}", result.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
