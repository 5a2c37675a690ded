//! `superverma`: parabolic Verma modules from the command line.
//!
//! Exit codes: 0 success or PASS, 2 invalid algebra or configuration,
//! 3 domain error (e.g. λ not dominant for Π_l), 4 depth or resource limit,
//! 5 verification FAIL, 6 sampling degeneracy.

mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use superverma::catalog::build_algebra;
use superverma::character::ParabolicDatum;
use superverma::formula::{eval_formula, verify_offset, VerifyOptions};
use superverma::irreducibility::irreducibility_report;
use superverma::verma::{block_determinant, ParabolicVerma};
use superverma::Result;

use config::{Flags, Format, JobConfig};
use output::Report;

#[derive(Parser)]
#[command(name = "superverma", version, about = "Contravariant forms and irreducibility of parabolic Verma modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, Π, ρ, Δ_n and the Δ^i classes.
    Describe(Flags),
    /// Factored determinant D(λ; μ) with its factor table.
    Det(Flags),
    /// Brute-force Gram block of M_p(λ)^μ and its normalized determinant.
    Gram(Flags),
    /// Compare formula and brute force on seeded λ for a fixed offset η.
    Verify(Flags),
    /// Irreducibility report for M_p(λ).
    Irreducible(Flags),
}

fn datum(job: &JobConfig) -> Result<ParabolicDatum> {
    ParabolicDatum::new(build_algebra(&job.spec, &job.positivity)?, &job.pi_l)
}

fn describe(job: &JobConfig) -> Result<(Report, bool)> {
    Ok((output::describe(&datum(job)?), true))
}

fn det(job: &JobConfig) -> Result<(Report, bool)> {
    let pd = datum(job)?;
    let lam = job.lambda()?;
    let mu = job.mu()?;
    let res = eval_formula(&pd, lam, &mu)?;
    Ok((output::det(&pd, lam, &mu, &res), true))
}

fn gram(job: &JobConfig) -> Result<(Report, bool)> {
    let pd = datum(job)?;
    let lam = job.lambda()?;
    let mu = job.mu()?;
    pd.require_dominant(lam)?;
    let mp = ParabolicVerma::new(&pd, lam, job.depth)?;
    let block = mp.gram_block(&mu)?;
    let det = block_determinant(pd.rs(), &block)?;
    Ok((output::gram(&pd, lam, &block, &det), true))
}

/// With `--lambda`, samples are drawn on the slice of its Π_l pairings.
fn verify(job: &JobConfig) -> Result<(Report, bool)> {
    let pd = datum(job)?;
    let eta = job.eta()?;
    let pairings = match &job.lambda {
        Some(lam) => {
            pd.require_dominant(lam)?;
            let rs = pd.rs();
            Some(pd.pi_l_roots().iter().map(|&r| rs.coroot_pairing(lam, rs.root(r))).collect::<Result<_>>()?)
        }
        None => None,
    };
    let opts = VerifyOptions { samples: job.samples, seed: job.seed, corrupt_exponent: job.corrupt_exponent, pairings };
    let rep = verify_offset(&pd, &eta, &opts)?;
    Ok((output::verify(&rep), rep.pass))
}

fn irreducible(job: &JobConfig) -> Result<(Report, bool)> {
    let pd = datum(job)?;
    let rep = irreducibility_report(&pd, job.lambda()?, job.brute_check.then_some(job.depth))?;
    let agrees = rep.brute_check.as_ref().is_none_or(|b| b.agrees);
    Ok((output::irreducible(&pd, &rep), agrees))
}

/// The report, its format, and whether the run counts as a PASS.
fn run(command: &Command) -> Result<(Report, Format, bool)> {
    let (flags, cmd): (&Flags, fn(&JobConfig) -> Result<(Report, bool)>) = match command {
        Command::Describe(f) => (f, describe),
        Command::Det(f) => (f, det),
        Command::Gram(f) => (f, gram),
        Command::Verify(f) => (f, verify),
        Command::Irreducible(f) => (f, irreducible),
    };
    let job = config::resolve(flags)?;
    let (report, pass) = cmd(&job)?;
    Ok((report, job.format, pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, format, pass)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Format::Table => println!("{}", report.table),
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
