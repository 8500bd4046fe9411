use clap::{Args, Parser, Subcommand};
use ntlf::io::{parse_config, Mode};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ntlf", version, about = "Microstrip nonuniform-line lowpass filter analysis and synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the profile in the config and write its response.
    Analyze(JobArgs),
    /// Search for a profile that meets the config's filter mask.
    Synthesize(JobArgs),
    /// Check the profile in the config against its filter mask.
    Verify(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Sections per shortest wavelength.
    #[arg(long = "sections-per-lambda")]
    sections_per_lambda: Option<f64>,
}

fn run(mode: Mode, args: &JobArgs) -> ntlf::Result<i32> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut job = parse_config(&text)?.with_mode(mode)?;
    if let Some(seed) = args.seed {
        job.optimizer.rng_seed = seed;
    }
    if let Some(k) = args.sections_per_lambda {
        job.grid.sections_per_wavelength = k;
        job.optimizer.analysis.sections_per_wavelength = k;
    }
    let stem = args.config.file_stem().and_then(|s| s.to_str()).unwrap_or("ntlf");
    let outcome = ntlf::job::run(&job, &args.out_dir, stem)?;

    let r = &outcome.report;
    println!("error      {:.6}", outcome.error_value);
    println!("passband   {:+.4} dB  {}", r.passband_margin_db, verdict(r.passband_pass));
    println!("stopband   {:+.4} dB  {}", r.stopband_margin_db, verdict(r.stopband_pass));
    println!("transition {:+.4} dB  {}", r.transition_margin_db, verdict(r.transition_pass));
    println!("width      {:+.4}     {}", r.width_margin, verdict(r.width_pass));
    if let Some(s) = &outcome.synthesis {
        println!("evals      {}", s.evals_used);
        println!("c          {:?}", s.profile.c);
        println!("s          {:?}", s.profile.s);
    }
    for path in &outcome.written {
        println!("wrote {}", path.display());
    }
    Ok(outcome.exit_code())
}

fn verdict(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAIL" }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match &cli.command {
        Command::Analyze(a) => (Mode::Analyze, a),
        Command::Synthesize(a) => (Mode::Synthesize, a),
        Command::Verify(a) => (Mode::Verify, a),
    };
    match run(mode, args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
