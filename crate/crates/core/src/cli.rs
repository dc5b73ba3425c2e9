//! Command-line front end. [`run`] returns the exit code and captured
//! output so the dispatcher can be driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adversary::{cheating_bound, min_rounds, per_round_exponent, soundness_monte_carlo};
use crate::cost::{communication_bits, measured_round_bits, CostReport};
use crate::error::Error;
use crate::field::Field;
use crate::keys::keygen;
use crate::params::{validate_params, MatrixKind, SchemeParams, SecurityClaim};
use crate::protocol::run_identification;
use crate::signature::{default_signature_rounds, sign, verify_sig};
use crate::wire::{
    decode_private_key, decode_public_key, decode_signature, encode_private_key, encode_public_key,
    encode_signature, encode_transcript,
};

pub const EXIT_OK: i32 = 0;
/// The verifier rejected.
pub const EXIT_REJECT: i32 = 1;
/// Bad command line (clap's convention).
pub const EXIT_USAGE: i32 = 2;
/// I/O, decoding or parameter errors.
pub const EXIT_ERROR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qsdi", about = "q-ary syndrome decoding identification and signatures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Random,
    Circulant,
}

impl From<KindArg> for MatrixKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Random => MatrixKind::RandomSystematic,
            KindArg::Circulant => MatrixKind::DoubleCirculant,
        }
    }
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// `param80`, `param128` or `custom` (then --q --n --k --w are required)
    #[arg(long, default_value = "param80")]
    params: String,
    #[arg(long)]
    q: Option<u16>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long, value_enum, default_value = "random")]
    kind: KindArg,
    /// Protocol rounds δ
    #[arg(long)]
    rounds: Option<usize>,
    /// Commitment length ℓ_h in bits
    #[arg(long)]
    hash_bits: Option<usize>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<SchemeParams, String> {
        let base = match self.params.as_str() {
            "custom" => {
                let (Some(q), Some(n), Some(k), Some(w)) = (self.q, self.n, self.k, self.w) else {
                    return Err("custom parameters need --q, --n, --k and --w".into());
                };
                SchemeParams::custom(Field::with_order(q).map_err(|e| e.to_string())?, n, k, w)
            }
            name => SchemeParams::by_name(name).ok_or_else(|| format!("unknown parameter set `{name}`"))?,
        };
        let mut p = base.with_kind(self.kind.into());
        if let Some(d) = self.rounds {
            p = p.with_rounds(d);
        }
        if let Some(h) = self.hash_bits {
            p = p.with_hash_bits(h);
        }
        Ok(p)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a key pair; writes OUT.pk and OUT.sk
    Keygen {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the interactive protocol in-process
    Identify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Sign a message file
    Sign {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "00")]
        seed: String,
        #[arg(long)]
        rounds: Option<usize>,
    },
    /// Verify a signature file
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Key size, communication and computation costs
    Metrics {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Monte-Carlo success rate of the optimal cheater
    SoundnessSim {
        #[arg(long)]
        q: u16,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value = "00")]
        seed: String,
    },
    /// Gilbert-Varshamov and security-claim check
    GvCheck {
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<crate::wire::WireError> for Failure {
    fn from(e: crate::wire::WireError) -> Self {
        Failure::Error(format!("decode error {}: {e}", e.code()))
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn seed(hex_seed: &str) -> Result<Vec<u8>, Failure> {
    hex::decode(hex_seed).map_err(|e| Failure::Usage(format!("--seed must be hex: {e}")))
}

fn with_suffix(path: &PathBuf, suffix: &str) -> PathBuf {
    let mut s = path.clone().into_os_string();
    s.push(suffix);
    s.into()
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: EXIT_USAGE, stdout: out, stderr: format!("usage error: {msg}\n") },
        Err(Failure::Error(msg)) => Outcome { code: EXIT_ERROR, stdout: out, stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(command: Command, out: &mut String) -> Result<i32, Failure> {
    match command {
        Command::Keygen { params, seed: hex_seed, out: path } => {
            let p = params.resolve().map_err(Failure::Usage)?;
            let (pk, sk) = keygen(&p, &seed(&hex_seed)?)?;
            let pk_bytes = encode_public_key(&pk);
            let sk_bytes = encode_private_key(&p, &sk);
            write(&with_suffix(&path, ".pk"), &pk_bytes)?;
            write(&with_suffix(&path, ".sk"), &sk_bytes)?;
            let _ = writeln!(out, "public_key_bytes={}", pk_bytes.len());
            let _ = writeln!(out, "private_key_bytes={}", sk_bytes.len());
            Ok(EXIT_OK)
        }
        Command::Identify { pk, sk, rounds, seed: hex_seed, transcript } => {
            let pk = decode_public_key(&read(&pk)?)?;
            let (sk_params, sk) = decode_private_key(&read(&sk)?)?;
            if sk_params.clone().with_rounds(pk.params.rounds) != pk.params {
                let _ = writeln!(out, "verdict=reject\nreason=key files use different parameters");
                return Ok(EXIT_REJECT);
            }
            let delta = rounds.unwrap_or(pk.params.rounds);
            let result = run_identification(&pk, &sk, delta, &seed(&hex_seed)?)?;
            if let Some(path) = &transcript {
                write(path, &encode_transcript(&pk.params, &result.transcripts))?;
            }
            let measured: u64 = result.transcripts.iter().map(|t| measured_round_bits(t).total()).sum();
            let _ = writeln!(out, "rounds={delta}");
            let _ = writeln!(out, "rounds_played={}", result.transcripts.len());
            let _ = writeln!(out, "formula_communication_bits={}", communication_bits(&pk.params.clone().with_rounds(delta)));
            let _ = writeln!(out, "measured_communication_bits={measured}");
            match &result.rejected {
                None => {
                    let _ = writeln!(out, "verdict=accept");
                    Ok(EXIT_OK)
                }
                Some((round, reason)) => {
                    let _ = writeln!(out, "verdict=reject\nrejected_round={round}\nreason={reason}");
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::Sign { pk, sk, msg, out: path, seed: hex_seed, rounds } => {
            let pk = decode_public_key(&read(&pk)?)?;
            let (_, sk) = decode_private_key(&read(&sk)?)?;
            let message = read(&msg)?;
            let delta = rounds.unwrap_or_else(|| default_signature_rounds(&pk.params));
            let sig = sign(&pk, &sk, &message, &seed(&hex_seed)?, delta)?;
            let bytes = encode_signature(&sig);
            write(&path, &bytes)?;
            let _ = writeln!(out, "rounds={delta}\nsignature_bytes={}", bytes.len());
            Ok(EXIT_OK)
        }
        Command::Verify { pk, msg, sig } => {
            let pk = decode_public_key(&read(&pk)?)?;
            let message = read(&msg)?;
            let sig = match decode_signature(&read(&sig)?) {
                Ok(sig) => sig,
                Err(e) => {
                    let _ = writeln!(out, "verdict=reject\nreason=decode error {}: {e}", e.code());
                    return Ok(EXIT_REJECT);
                }
            };
            match verify_sig(&pk, &message, &sig) {
                Ok(()) => {
                    let _ = writeln!(out, "verdict=accept");
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let _ = writeln!(out, "verdict=reject\nreason={e}");
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::Metrics { params } => {
            let p = params.resolve().map_err(Failure::Usage)?;
            p.check_structure()?;
            let report = CostReport::new(&p);
            out.push_str(&report.render_table());
            out.push('\n');
            out.push_str(&report.to_key_values());
            let q = p.field.q();
            let _ = writeln!(out, "per_round_exponent={:.4}", per_round_exponent(q));
            let _ = writeln!(out, "min_rounds_2^-16={}", min_rounds(q, 16));
            let _ = writeln!(out, "cheating_exponent_at_rounds={:.2}", p.rounds as f64 * per_round_exponent(q));
            Ok(EXIT_OK)
        }
        Command::SoundnessSim { q, n, k, w, trials, seed: hex_seed } => {
            let field = Field::with_order(q).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = SchemeParams::custom(field, n, k, w);
            let report = soundness_monte_carlo(&p, trials, &seed(&hex_seed)?)?;
            let _ = writeln!(out, "trials={}", report.trials);
            let _ = writeln!(out, "successes={}", report.successes);
            let _ = writeln!(out, "rate={:.4}", report.rate);
            let _ = writeln!(out, "bound={:.4}", cheating_bound(q));
            Ok(EXIT_OK)
        }
        Command::GvCheck { params } => {
            let p = params.resolve().map_err(Failure::Usage)?;
            let report = validate_params(&p)?;
            let _ = writeln!(out, "gv_weight={:.3}", report.gv_weight);
            let _ = writeln!(out, "w={}", p.weight);
            let _ = writeln!(out, "on_gv_bound={}", report.on_gv_bound());
            match report.security {
                SecurityClaim::Published { set, bits } => {
                    let _ = writeln!(out, "security_bits={bits}\nsecurity_source=published:{set}");
                }
                SecurityClaim::Unverified { bits } => {
                    let _ = writeln!(out, "security_bits={bits}\nsecurity_source=unverified");
                }
            }
            for w in &report.warnings {
                let _ = writeln!(out, "warning={w}");
            }
            Ok(EXIT_OK)
        }
    }
}
