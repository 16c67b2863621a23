//! Command-line front end: reads states from JSON files, runs the criteria,
//! classification, capacity, and CHSH machinery, and emits human-readable or
//! machine-readable reports.
//!
//! Exit codes: 0 = separable-certified or undetermined, 1 = entangled-
//! certified, 2 = input or validation error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use entsep::bell::{maximize_chsh, CHSH_CLASSICAL_BOUND};
use entsep::criteria::{
    self, entropy_of_state, schmidt_with_cutoff, CriterionVerdict, DEFAULT_SCHMIDT_CUTOFF,
};
use entsep::densecoding::{self, classify_with};
use entsep::io::{fmt_sig12, sig12, LoadedState, Metadata, Report, StateFile};
use entsep::states::{self, bell_state, default_mixture_size, random_density, random_separable};
use entsep::witness::{canonical_witness_2x2, witness_value, Witness};
use entsep::{BellKind, BipartiteDims, DensityMatrix};

#[derive(Parser)]
#[command(name = "entsep", version, about = "Entanglement detection and classification for bipartite quantum states")]
struct Cli {
    /// Numerical tolerance for criterion margins and validation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every randomized step (optimizer restarts, generators).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run all criteria and assign the dense-coding shell label.
    Classify {
        path: PathBuf,
        /// Also maximize the CHSH violation (two-qubit states only).
        #[arg(long)]
        chsh: bool,
        /// Optimizer restarts for --chsh.
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Generate a state file.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
    },
    /// Maximize the CHSH violation over measurement settings.
    Chsh {
        path: PathBuf,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Dense-coding capacity and advantage.
    Capacity { path: PathBuf },
    /// Schmidt coefficients of a pure state.
    Schmidt {
        path: PathBuf,
        /// Coefficients at or below this are treated as zero.
        #[arg(long, default_value_t = DEFAULT_SCHMIDT_CUTOFF)]
        cutoff: f64,
    },
    /// Evaluate an entanglement witness (canonical two-qubit witness by
    /// default).
    Witness {
        path: PathBuf,
        /// Hermitian operator to use instead, as a density-kind state file
        /// (trace and positivity are not required).
        #[arg(long)]
        witness_file: Option<PathBuf>,
    },
    /// Partial transposition criterion only.
    Ppt { path: PathBuf },
    /// Majorization criterion only.
    Majorization { path: PathBuf },
    /// Entropy criterion only.
    Entropy { path: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// One of the four Bell states, written as a pure-state file.
    Bell {
        #[arg(long, value_enum)]
        kind: BellArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Werner state p·|ψ⁻⟩⟨ψ⁻| + (1−p)/4·I.
    Werner {
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random density matrix of a given rank (Wishart).
    Random {
        /// Bipartite dimensions d_A d_B.
        #[arg(long, num_args = 2, value_names = ["D_A", "D_B"])]
        dims: Vec<usize>,
        /// Rank; defaults to full rank d_A·d_B.
        #[arg(long)]
        rank: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random separable state (mixture of product projectors).
    Separable {
        #[arg(long, num_args = 2, value_names = ["D_A", "D_B"])]
        dims: Vec<usize>,
        /// Number of product terms; defaults to (d_A·d_B)².
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BellArg {
    #[value(alias = "psi_plus")]
    PsiPlus,
    #[value(alias = "psi_minus")]
    PsiMinus,
    #[value(alias = "phi_plus")]
    PhiPlus,
    #[value(alias = "phi_minus")]
    PhiMinus,
}

impl From<BellArg> for BellKind {
    fn from(value: BellArg) -> Self {
        match value {
            BellArg::PsiPlus => BellKind::PsiPlus,
            BellArg::PsiMinus => BellKind::PsiMinus,
            BellArg::PhiPlus => BellKind::PhiPlus,
            BellArg::PhiMinus => BellKind::PhiMinus,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_density(path: &Path) -> anyhow::Result<DensityMatrix> {
    let file = StateFile::load(path)?;
    Ok(file.to_state()?.into_density())
}

fn push_criterion(report: &mut Report, verdict: &CriterionVerdict) {
    report.criteria.push(verdict.into());
}

fn emit(report: &Report, json: bool, human: &[String]) -> anyhow::Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        for line in human {
            println!("{line}");
        }
    }
    Ok(())
}

fn verdict_line(v: &CriterionVerdict) -> String {
    let mut line = format!(
        "{:<14} margin {:>20}  {}",
        v.criterion,
        fmt_sig12(v.margin),
        if v.violated { "VIOLATED (entangled)" } else { "pass" }
    );
    if v.separable_certified {
        line.push_str("  [separability certified]");
    }
    line
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let tol = cli.tol;
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Classify { path, chsh, restarts } => {
            let rho = load_density(path)?;
            let result = classify_with(&rho, tol, &[]);
            let mut report = Report::new(
                "classify",
                Some(path.display().to_string()),
                rho.dims(),
                tol,
            );
            push_criterion(&mut report, &result.ppt);
            push_criterion(&mut report, &result.majorization);
            push_criterion(&mut report, &result.entropy);
            report.class_label = Some(result.class_label.to_string());
            report.capacity = Some(sig12(result.capacity));
            report.one_capacity = Some(sig12(result.one_capacity));
            report.dc_advantage = Some(sig12(result.dc_advantage));

            let mut human = vec![
                format!("state: {} (dims {})", path.display(), rho.dims()),
                verdict_line(&result.ppt),
                verdict_line(&result.majorization),
                verdict_line(&result.entropy),
                format!("dc_advantage: {} bits", fmt_sig12(result.dc_advantage)),
                format!("capacity: {} bits", fmt_sig12(result.capacity)),
            ];
            if *chsh {
                report.seed = Some(seed);
                report.restarts = Some(*restarts);
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                let (value, _) = maximize_chsh(&rho, *restarts, &mut rng)?;
                report.chsh_max = Some(sig12(value));
                human.push(format!("chsh_max: {}", fmt_sig12(value)));
            }
            human.push(format!("class: {}", result.class_label));
            if result.class_label == densecoding::ClassLabel::SepOrBound {
                human.push(
                    "warning: PPT in dimensions above 2x3; separable or bound entangled, \
                     undecided without a witness"
                        .to_string(),
                );
            }

            let code = if result.class_label.certifies_entanglement() { 1 } else { 0 };
            report.exit_code = code as i32;
            emit(&report, cli.json, &human)?;
            Ok(code)
        }

        Command::Gen { kind } => {
            let seed_meta = Metadata { name: None, seed: Some(seed) };
            let (file, out) = match kind {
                GenCommand::Bell { kind, out } => {
                    let psi = bell_state((*kind).into());
                    let meta = Metadata {
                        name: Some(format!("bell_{}", BellKind::from(*kind).name())),
                        seed: None,
                    };
                    (StateFile::from_pure(&psi, Some(meta)), out)
                }
                GenCommand::Werner { p, out } => {
                    let rho = states::werner(*p)?;
                    let meta = Metadata { name: Some(format!("werner_p{p}")), seed: None };
                    (StateFile::from_density(&rho, Some(meta)), out)
                }
                GenCommand::Random { dims, rank, out } => {
                    let dims = parse_dims(dims)?;
                    let rank = rank.unwrap_or_else(|| dims.total());
                    let mut rng = ChaCha12Rng::seed_from_u64(seed);
                    let rho = random_density(dims, rank, &mut rng)?;
                    (
                        StateFile::from_density(
                            &rho,
                            Some(Metadata {
                                name: Some(format!("random_{dims}_rank{rank}")),
                                ..seed_meta
                            }),
                        ),
                        out,
                    )
                }
                GenCommand::Separable { dims, k, out } => {
                    let dims = parse_dims(dims)?;
                    let k = k.unwrap_or_else(|| default_mixture_size(dims));
                    let mut rng = ChaCha12Rng::seed_from_u64(seed);
                    let rho = random_separable(dims, k, &mut rng)?;
                    (
                        StateFile::from_density(
                            &rho,
                            Some(Metadata {
                                name: Some(format!("separable_{dims}_k{k}")),
                                ..seed_meta
                            }),
                        ),
                        out,
                    )
                }
            };
            match &out.out {
                Some(path) => {
                    file.save(path)?;
                    eprintln!("wrote {}", path.display());
                }
                None => println!("{}", serde_json::to_string_pretty(&file)?),
            }
            Ok(0)
        }

        Command::Chsh { path, restarts } => {
            let rho = load_density(path)?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let (value, setting) = maximize_chsh(&rho, *restarts, &mut rng)?;
            let mut report = Report::new("chsh", Some(path.display().to_string()), rho.dims(), tol);
            report.seed = Some(seed);
            report.restarts = Some(*restarts);
            report.chsh_max = Some(sig12(value));
            let violated = value > CHSH_CLASSICAL_BOUND + tol;
            let code = if violated { 1 } else { 0 };
            report.exit_code = code as i32;
            let human = vec![
                format!("chsh_max: {}", fmt_sig12(value)),
                format!("settings: a {:?}  a' {:?}  b {:?}  b' {:?}", setting.a, setting.a_prime, setting.b, setting.b_prime),
                if violated {
                    "CHSH inequality violated: entangled".to_string()
                } else {
                    "within the classical bound".to_string()
                },
            ];
            emit(&report, cli.json, &human)?;
            Ok(code)
        }

        Command::Capacity { path } => {
            let rho = load_density(path)?;
            let mut report =
                Report::new("capacity", Some(path.display().to_string()), rho.dims(), tol);
            let advantage = densecoding::dc_advantage(&rho);
            report.capacity = Some(sig12(densecoding::reported_capacity(&rho)));
            report.one_capacity = Some(sig12(densecoding::dc_capacity(&rho)));
            report.dc_advantage = Some(sig12(advantage));
            let dc = densecoding::is_dc(&rho);
            let code = if dc { 1 } else { 0 };
            report.exit_code = code as i32;
            let human = vec![
                format!("capacity: {} bits", fmt_sig12(densecoding::reported_capacity(&rho))),
                format!("one_capacity: {} bits", fmt_sig12(densecoding::dc_capacity(&rho))),
                format!("dc_advantage: {} bits", fmt_sig12(advantage)),
                if dc {
                    "dense-codeable: yes (entangled)".to_string()
                } else {
                    "dense-codeable: no".to_string()
                },
            ];
            emit(&report, cli.json, &human)?;
            Ok(code)
        }

        Command::Schmidt { path, cutoff } => {
            let file = StateFile::load(path)?;
            let psi = match file.to_state()? {
                LoadedState::Pure(psi) => psi,
                LoadedState::Density(_) => {
                    bail!("schmidt needs a pure state file (kind \"pure\")")
                }
            };
            let dec = schmidt_with_cutoff(&psi, *cutoff)?;
            let mut report =
                Report::new("schmidt", Some(path.display().to_string()), psi.dims(), tol);
            report.schmidt_cutoff = Some(*cutoff);
            report.schmidt_coefficients =
                Some(dec.coefficients().iter().map(|&x| sig12(x)).collect());
            let entangled = dec.coefficients().len() > 1;
            let code = if entangled { 1 } else { 0 };
            report.exit_code = code as i32;
            let human = vec![
                format!(
                    "schmidt coefficients ({}): {}",
                    dec.coefficients().len(),
                    dec.coefficients()
                        .iter()
                        .map(|&x| fmt_sig12(x))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                if entangled {
                    "more than one coefficient: entangled".to_string()
                } else {
                    "single coefficient: product state".to_string()
                },
            ];
            emit(&report, cli.json, &human)?;
            Ok(code)
        }

        Command::Witness { path, witness_file } => {
            let rho = load_density(path)?;
            let w = match witness_file {
                Some(wpath) => {
                    let file = StateFile::load(wpath)?;
                    let dims = BipartiteDims::new(file.dims[0], file.dims[1])?;
                    let rows = file.matrix.as_ref().context(
                        "witness file must carry a \"matrix\" field (Hermitian operator)",
                    )?;
                    let n = dims.total();
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        bail!("witness matrix must be {n}x{n}");
                    }
                    let entries = rows
                        .iter()
                        .flatten()
                        .map(|&[re, im]| num_complex::Complex64::new(re, im))
                        .collect();
                    let op = entsep::ComplexMatrix::new(n, n, entries)?;
                    Witness::new(op, dims)?
                }
                None => {
                    if (rho.dims().d_a(), rho.dims().d_b()) != (2, 2) {
                        bail!(
                            "no --witness-file given and the canonical witness only applies \
                             to 2x2 states (got {})",
                            rho.dims()
                        );
                    }
                    canonical_witness_2x2()
                }
            };
            let value = witness_value(&w, &rho)?;
            let mut report =
                Report::new("witness", Some(path.display().to_string()), rho.dims(), tol);
            report.witness_values = Some(vec![sig12(value)]);
            let detected = value < -tol;
            let code = if detected { 1 } else { 0 };
            report.exit_code = code as i32;
            let human = vec![
                format!("witness value: {}", fmt_sig12(value)),
                if detected {
                    "negative: entangled".to_string()
                } else {
                    "nonnegative: no detection (not a separability proof)".to_string()
                },
            ];
            emit(&report, cli.json, &human)?;
            Ok(code)
        }

        Command::Ppt { path } => single_criterion(cli, path, "ppt"),
        Command::Majorization { path } => single_criterion(cli, path, "majorization"),
        Command::Entropy { path } => single_criterion(cli, path, "entropy"),
    }
}

fn single_criterion(cli: &Cli, path: &Path, which: &str) -> anyhow::Result<u8> {
    let tol = cli.tol;
    let rho = load_density(path)?;
    let verdict = match which {
        "ppt" => criteria::ppt_test(&rho, tol),
        "majorization" => criteria::majorization_test(&rho, tol),
        _ => criteria::entropy_test(&rho, tol),
    };
    let mut report = Report::new(which, Some(path.display().to_string()), rho.dims(), tol);
    push_criterion(&mut report, &verdict);
    if which == "entropy" {
        report.entropy_bits = Some(sig12(entropy_of_state(&rho)));
    }
    let code = if verdict.violated { 1 } else { 0 };
    report.exit_code = code as i32;
    let human = vec![verdict_line(&verdict)];
    emit(&report, cli.json, &human)?;
    Ok(code)
}

fn parse_dims(dims: &[usize]) -> anyhow::Result<BipartiteDims> {
    if dims.len() != 2 {
        bail!("--dims takes exactly two values");
    }
    Ok(BipartiteDims::new(dims[0], dims[1])?)
}
