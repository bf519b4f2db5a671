//! Command line front end: parse JSON payloads, dispatch the validators and
//! evaluators, run the property suites, emit machine-readable reports.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or parse
//! errors.

use anyhow::{anyhow, Context, Result};
use binaryk::gen;
use binaryk::payload::Payload;
use binaryk::relative::{rel_class, RelTriple};
use binaryk::suite::{self, sha256_hex, CheckRecord, Report, Status};
use binaryk::torsion::{calibrate_epsilon, k1_class, nenashev_det_oracle};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::time::Instant;

const EXIT_CHECK_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "binaryk", version, about = "validators and unit-valued evaluators for binary acyclic complexes over exact rings")]
struct Cli {
    /// Seed for every randomised command.
    #[arg(long, global = true, env = "BINARYK_SEED", default_value_t = 0xB1AA)]
    seed: u64,
    /// Emit the full report as JSON instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a payload file (complex | binary | multicomplex | dses | triple | relation).
    Validate { path: PathBuf },
    /// Homology of a complex payload, degree by degree.
    Homology { path: PathBuf },
    /// Unit-valued class of an acyclic binary complex payload.
    K1class { path: PathBuf },
    /// Determinant oracle value of a double short exact sequence payload.
    NenashevClass { path: PathBuf },
    /// Calibrate the global exponent relating the class evaluator to the
    /// determinant oracle on seeded samples over F5, F7 and Q.
    Calibrate {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Apply the doubling functor to a binary payload; prints the image and
    /// validates both witness sequences.
    Hfunctor { path: PathBuf },
    /// Validate a multicomplex payload against its signature.
    Multicheck { path: PathBuf },
    /// Operations on generator triples (M, N, u).
    Relative {
        #[command(subcommand)]
        op: RelativeOp,
    },
    /// Run every property suite with a seeded generator.
    Selftest {
        /// Override the per-suite case counts (0 gives a vacuous pass).
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Generate a random valid payload.
    Randgen(RandgenArgs),
}

#[derive(Subcommand)]
enum RelativeOp {
    /// Validate a triple payload.
    Validate { path: PathBuf },
    /// Evaluate the class of a triple modulo embedded source units.
    Class { path: PathBuf },
    /// Boundary invariant of a triple.
    Boundary { path: PathBuf },
    /// Certify a relation payload (ses | diagonal | weak_equiv).
    Certify { path: PathBuf },
}

#[derive(Args)]
struct RandgenArgs {
    /// complex | binary | dses | triple
    #[arg(long)]
    kind: String,
    /// Q, Z, or F<n> for a prime power n.
    #[arg(long, default_value = "F5")]
    ring: String,
    #[arg(long, default_value_t = 2)]
    size: usize,
    /// Write the payload into this directory instead of stdout.
    #[arg(long)]
    fixture_dir: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}

fn load_payload(path: &Path) -> Result<(Payload, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes).context("payload is not utf-8")?;
    let payload = Payload::from_json(&text).map_err(|e| anyhow!("{e}"))?;
    Ok((payload, sha256_hex(text.as_bytes())))
}

fn record(name: &str, result: std::result::Result<(), String>) -> CheckRecord {
    match result {
        Ok(()) => CheckRecord { name: name.into(), cases: 1, status: Status::Ok, witness: None },
        Err(w) => {
            CheckRecord { name: name.into(), cases: 1, status: Status::Fail, witness: Some(w) }
        }
    }
}

fn value_record(name: &str, value: String) -> CheckRecord {
    CheckRecord { name: name.into(), cases: 1, status: Status::Ok, witness: Some(value) }
}

fn emit(report: &Report, json: bool) -> i32 {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        for check in &report.checks {
            let status = match check.status {
                Status::Ok => "ok",
                Status::Fail => "FAIL",
                Status::Warn => "warn",
            };
            match &check.witness {
                Some(w) => println!("{status} {} [{} cases]: {w}", check.name, check.cases),
                None => println!("{status} {} [{} cases]", check.name, check.cases),
            }
        }
        let summary = if report.is_ok() { "PASS" } else { "FAIL" };
        println!("{summary} {} ({} checks, {} ms)", report.command, report.checks.len(), report.millis);
        println!("digest: {}", report.digest);
    }
    if report.is_ok() {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

fn run(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    let seed = cli.seed;
    match cli.command {
        Command::Validate { path } => {
            let (payload, digest) = load_payload(&path)?;
            let name = format!("validate/{}", payload.kind());
            let checks = vec![record(&name, suite::validate_payload(&payload))];
            let report = Report::assemble("validate", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::Homology { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Complex(body) = &payload else {
                return Err(anyhow!("homology expects a complex payload, found {}", payload.kind()));
            };
            let c = body.to_complex().map_err(|e| anyhow!("{e}"))?;
            let mut checks = vec![record("validate/complex", c.validate().map_err(|v| v.to_string()))];
            if checks[0].status == Status::Ok {
                for &n in c.dims().keys() {
                    checks.push(value_record(&format!("H[{n}]"), c.homology(n).to_string()));
                }
                checks.push(value_record("acyclic", c.is_acyclic().to_string()));
            }
            let report = Report::assemble("homology", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::K1class { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Binary(body) = &payload else {
                return Err(anyhow!("k1class expects a binary payload, found {}", payload.kind()));
            };
            let b = body.to_binary().map_err(|e| anyhow!("{e}"))?;
            let checks = match k1_class(&b) {
                Ok(class) => vec![value_record("k1class", class.to_string())],
                Err(e) => vec![record("k1class", Err(e.to_string()))],
            };
            let report = Report::assemble("k1class", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::NenashevClass { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Dses(body) = &payload else {
                return Err(anyhow!("nenashev-class expects a dses payload, found {}", payload.kind()));
            };
            let d = body.to_dses().map_err(|e| anyhow!("{e}"))?;
            let checks = match nenashev_det_oracle(&d) {
                Ok(class) => vec![value_record("nenashev-class", class.to_string())],
                Err(e) => vec![record("nenashev-class", Err(e.to_string()))],
            };
            let report = Report::assemble("nenashev-class", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::Calibrate { cases } => {
            let rings = ["F5", "F7", "Q"];
            let mut samples = Vec::with_capacity(cases);
            for i in 0..cases {
                let ring = gen::ring_by_name(rings[i % rings.len()]).map_err(|e| anyhow!(e))?;
                let mut rng = gen::case_rng(seed, 0xCA11, i as u64);
                samples.push(gen::rand_dses(&ring, 2, &mut rng));
            }
            let checks = match calibrate_epsilon(&samples) {
                Ok(eps) => vec![value_record(
                    "epsilon",
                    format!("{eps:+} (consistent across {cases} samples over F5, F7, Q)"),
                )],
                Err(e) => vec![record("epsilon", Err(e.to_string()))],
            };
            let digest = sha256_hex(format!("calibrate:{seed}:{cases}").as_bytes());
            let report = Report::assemble("calibrate", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::Hfunctor { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Binary(body) = &payload else {
                return Err(anyhow!("hfunctor expects a binary payload, found {}", payload.kind()));
            };
            let b = body.to_binary().map_err(|e| anyhow!("{e}"))?;
            let mut checks = vec![record("validate/binary", b.validate().map_err(|v| v.to_string()))];
            if checks[0].status == Status::Ok {
                let image = b.h_functor();
                match binaryk::binary::h_ses_witnesses(&b) {
                    Ok(_) => checks.push(record("h-witnesses", Ok(()))),
                    Err(v) => checks.push(record("h-witnesses", Err(v.to_string()))),
                }
                if b.is_acyclic() {
                    let before = k1_class(&b).map_err(|e| anyhow!("{e}"))?;
                    let after = k1_class(&image).map_err(|e| anyhow!("{e}"))?;
                    checks.push(value_record("class-before", before.to_string()));
                    checks.push(value_record("class-after", after.to_string()));
                    checks.push(record(
                        "class-invariant",
                        if before == after { Ok(()) } else { Err("class moved".to_string()) },
                    ));
                }
                let out = Payload::Binary(binaryk::payload::BinaryBody::from_binary(&image));
                checks.push(value_record("image", out.to_json()));
            }
            let report = Report::assemble("hfunctor", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::Multicheck { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Multicomplex(body) = &payload else {
                return Err(anyhow!("multicheck expects a multicomplex payload, found {}", payload.kind()));
            };
            let (m, sig) = body.to_multicomplex().map_err(|e| anyhow!("{e}"))?;
            let checks = vec![record("validate/multicomplex", m.validate(&sig).map_err(|v| v.to_string()))];
            let report = Report::assemble("multicheck", digest, seed, checks, ms(start));
            Ok(emit(&report, cli.json))
        }
        Command::Relative { op } => run_relative(op, seed, cli.json, start),
        Command::Selftest { cases } => {
            let report = suite::run_selftest(seed, cases);
            Ok(emit(&report, cli.json))
        }
        Command::Randgen(args) => {
            let mut rng = gen::case_rng(seed, 0x9E4, 0);
            let payload = gen::randgen_payload(&args.kind, &args.ring, args.size, &mut rng)
                .map_err(|e| anyhow!(e))?;
            let text = payload.to_json();
            match args.fixture_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)
                        .with_context(|| format!("creating {}", dir.display()))?;
                    let name =
                        format!("{}-{}-{}-{}.json", args.kind, args.ring, args.size, seed);
                    let path = dir.join(name);
                    std::fs::write(&path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("{}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn run_relative(op: RelativeOp, seed: u64, json: bool, start: Instant) -> Result<i32> {
    match op {
        RelativeOp::Validate { path } => {
            let (t, f, digest) = load_triple(&path)?;
            let checks = vec![record("validate/triple", t.validate(&f).map_err(|v| v.to_string()))];
            let report = Report::assemble("relative validate", digest, seed, checks, ms(start));
            Ok(emit(&report, json))
        }
        RelativeOp::Class { path } => {
            let (t, f, digest) = load_triple(&path)?;
            let checks = match rel_class(&t, &f) {
                Ok(class) => vec![
                    value_record("class", class.to_string()),
                    value_record("order", class.order().to_string()),
                    value_record("trivial", class.is_trivial().to_string()),
                ],
                Err(e) => vec![record("class", Err(e.to_string()))],
            };
            let report = Report::assemble("relative class", digest, seed, checks, ms(start));
            Ok(emit(&report, json))
        }
        RelativeOp::Boundary { path } => {
            let (t, f, digest) = load_triple(&path)?;
            let mut checks =
                vec![record("validate/triple", t.validate(&f).map_err(|v| v.to_string()))];
            checks.push(value_record("boundary", t.boundary().to_string()));
            let report = Report::assemble("relative boundary", digest, seed, checks, ms(start));
            Ok(emit(&report, json))
        }
        RelativeOp::Certify { path } => {
            let (payload, digest) = load_payload(&path)?;
            let Payload::Relation(body) = &payload else {
                return Err(anyhow!("certify expects a relation payload, found {}", payload.kind()));
            };
            let (relation, f) = body.to_relation().map_err(|e| anyhow!("{e}"))?;
            let checks = vec![record(
                "certify/relation",
                binaryk::relative::certify_rel_relation(&relation, &f).map_err(|v| v.to_string()),
            )];
            let report = Report::assemble("relative certify", digest, seed, checks, ms(start));
            Ok(emit(&report, json))
        }
    }
}

fn load_triple(path: &Path) -> Result<(RelTriple, binaryk::relative::FunctorSpec, String)> {
    let (payload, digest) = load_payload(path)?;
    let Payload::Triple(body) = &payload else {
        return Err(anyhow!("expected a triple payload, found {}", payload.kind()));
    };
    let (t, f) = body.to_triple().map_err(|e| anyhow!("{e}"))?;
    Ok((t, f, digest))
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}
