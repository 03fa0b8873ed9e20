//! Command-line surface. [`dispatch`] returns the process exit code:
//! 0 on success, 1 when a check fails, 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::{
    emit_config, export_cloud, parse_config, read_cloud_csv, sha256_hex, slice_cloud, CloudFormat, Mode,
    NecklaceConfig, RunManifest,
};
use crate::necklace::{spin_necklace, validate_semi, NecklaceReport, SpunNecklace};
use crate::orbit::{
    cloud_of, count_report, generators_from_necklace, Checkpoint, Expander, OrbitFrontier, Word,
};
use crate::topology::{homology_matrix, power_is_inner, presentation_of, trefoil_monodromy};
use crate::twistor::{equivariance_check, fiber_check};
use crate::{Error, Result};

pub const THREADS_ENV: &str = "WILDKNOT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "wildknot", version, about = "Pearl necklaces, reflection groups and their limit sets")]
struct Cli {
    /// Directory for run manifests
    #[arg(long, global = true, default_value = ".")]
    manifest_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the contact pattern of a necklace
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        tol_table: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Spin a semi-necklace and write the spun document
    Spin {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample the limit set into a CSV or PLY cloud
    Limitset {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
        /// Resume from this file if it exists; the final frontier is saved to it
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 20_000_000)]
        max_balls: usize,
    },
    /// Enumerated ball counts next to the closed forms
    Counts {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        depth: u32,
        /// Pearl count for the closed forms; defaults to the necklace size
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 5_000_000)]
        max_balls: usize,
    },
    /// Write the Coxeter presentation of the reflection group
    Presentation {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Order of the trefoil monodromy in Out(F2)
    Monodromy {
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
    /// Equivariance of the twistor lift on random even words
    TwistorCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        words: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Keep the points of a cloud near a coordinate hyperplane
    Slice {
        #[arg(long)]
        cloud: PathBuf,
        #[arg(long, default_value = "w=0")]
        plane: String,
        #[arg(long)]
        thickness: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Loaded {
    config: NecklaceConfig,
    hash: String,
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(Loaded {
        config: parse_config(&text)?,
        hash: sha256_hex(text.as_bytes()),
    })
}

fn certified(cfg: &NecklaceConfig) -> Result<(SpunNecklace, NecklaceReport)> {
    let mut sn = cfg.spun_necklace()?;
    let report = sn.certify(cfg.tolerances.tau);
    Ok((sn, report))
}

fn print_report(out: &mut dyn Write, report: &NecklaceReport) -> std::io::Result<()> {
    for c in &report.clauses {
        writeln!(
            out,
            "{}: {}/{} passed, worst residual {:.3e}",
            c.name,
            c.checked - c.failures.len(),
            c.checked,
            c.worst_residual
        )?;
        for f in c.failures.iter().take(10) {
            writeln!(out, "  {f}")?;
        }
        if c.failures.len() > 10 {
            writeln!(out, "  ... {} more", c.failures.len() - 10)?;
        }
    }
    Ok(())
}

fn parse_plane(s: &str) -> Option<(usize, f64)> {
    let (axis, value) = s.split_once('=')?;
    let axis = match axis.trim() {
        "x1" | "x" => 0,
        "x2" | "y" => 1,
        "x3" | "z" => 2,
        "x4" | "w" => 3,
        _ => return None,
    };
    Some((axis, value.trim().parse().ok()?))
}

fn cloud_format(path: &Path) -> CloudFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ply") => CloudFormat::Ply { axes: [0, 1, 2] },
        _ => CloudFormat::Csv,
    }
}

fn random_even_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = 2 * rng.gen_range(1..=max_len / 2);
    let mut w: Vec<usize> = Vec::with_capacity(len);
    while w.len() < len {
        let j = rng.gen_range(0..n);
        if w.last() != Some(&j) {
            w.push(j);
        }
    }
    Word(w)
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Failed,
}

fn run(cmd: Command, m: &mut RunManifest, out: &mut dyn Write) -> Result<Outcome> {
    let w = |e: std::io::Error| Error::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    };
    match cmd {
        Command::Validate { config, tol_table, tol } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            m.param("config", config.display()).param("tol_table", tol_table);
            let mut cfg = l.config;
            if let Some(t) = tol {
                cfg.tolerances.tau = t;
            }
            m.param("tol", cfg.tolerances.tau);
            if cfg.mode == Mode::Semi {
                writeln!(out, "semi-necklace {} ({} pearls)", cfg.name, cfg.pearls.len()).map_err(w)?;
                let semi = validate_semi(&cfg.semi_necklace()?, tol_table)?;
                print_report(out, &semi).map_err(w)?;
                if !semi.passed() {
                    return Ok(Outcome::Failed);
                }
            }
            let (sn, report) = certified(&cfg)?;
            writeln!(out, "spun necklace ({} pearls)", sn.len()).map_err(w)?;
            print_report(out, &report).map_err(w)?;
            Ok(if report.passed() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Spin { config, out: path } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            m.param("config", config.display());
            let cfg = l.config;
            let semi = cfg.semi_necklace()?;
            let mut sn = spin_necklace(&semi)?;
            let report = sn.certify(cfg.tolerances.tau);
            if !report.passed() {
                print_report(out, &report).map_err(w)?;
                return Ok(Outcome::Failed);
            }
            let doc = NecklaceConfig::from_spun(
                &format!("{}-spun", cfg.name),
                &format!("spun from {}", cfg.name),
                cfg.tolerances,
                &sn,
            );
            std::fs::write(&path, emit_config(&doc)).map_err(|e| Error::io(&path, e))?;
            writeln!(out, "{} pearls, {} edges -> {}", sn.len(), doc.edges.len(), path.display()).map_err(w)?;
            m.outputs.push(path.display().to_string());
            Ok(Outcome::Ok)
        }
        Command::Limitset {
            config,
            epsilon,
            depth,
            out: path,
            checkpoint,
            max_balls,
        } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            m.param("config", config.display())
                .param("epsilon", epsilon)
                .param("depth", depth)
                .param("max_balls", max_balls);
            let (sn, report) = certified(&l.config)?;
            if !report.passed() {
                print_report(out, &report).map_err(w)?;
                return Ok(Outcome::Failed);
            }
            let ex = Expander::new(&generators_from_necklace(&sn)?);
            let mut f = match &checkpoint {
                Some(p) if p.exists() => {
                    let cp = Checkpoint::load(p)?;
                    if cp.epsilon != epsilon {
                        return Err(Error::parse(
                            "checkpoint",
                            format!("saved with epsilon {}, requested {epsilon}", cp.epsilon),
                        ));
                    }
                    OrbitFrontier::resume(&ex, &cp, depth)?
                }
                _ => OrbitFrontier::new(&ex, epsilon, depth)?,
            }
            .with_budget(max_balls);
            if let Err(e) = f.run(&ex) {
                if let (Error::BudgetExceeded { checkpoint: cp, .. }, Some(p)) = (&e, &checkpoint) {
                    cp.save(p)?;
                    writeln!(out, "{e}; frontier saved to {}", p.display()).map_err(w)?;
                    m.outputs.push(p.display().to_string());
                    return Ok(Outcome::Failed);
                }
                return Err(e);
            }
            if let Some(p) = &checkpoint {
                f.checkpoint().save(p)?;
                m.outputs.push(p.display().to_string());
            }
            let cloud = cloud_of(&ex, &f)?;
            export_cloud(&cloud, cloud_format(&path), &path)?;
            writeln!(
                out,
                "depth {}, {} leaves below epsilon, {} still active, {} points -> {}",
                f.depth,
                f.completed.len(),
                f.active.len(),
                cloud.len(),
                path.display()
            )
            .map_err(w)?;
            m.outputs.push(path.display().to_string());
            Ok(Outcome::Ok)
        }
        Command::Counts {
            config,
            depth,
            n,
            max_balls,
        } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            let (sn, report) = certified(&l.config)?;
            if !report.passed() {
                print_report(out, &report).map_err(w)?;
                return Ok(Outcome::Failed);
            }
            let n = n.unwrap_or(sn.len() as u64);
            m.param("config", config.display()).param("depth", depth).param("n", n);
            let ex = Expander::new(&generators_from_necklace(&sn)?);
            let mut f = OrbitFrontier::new(&ex, f64::MIN_POSITIVE, depth as usize)?.with_budget(max_balls);
            let truncated = match f.run(&ex) {
                Ok(()) => None,
                Err(Error::BudgetExceeded { depth, .. }) => Some(depth),
                Err(e) => return Err(e),
            };
            let show = |v: Option<u128>| v.map_or("-".to_string(), |x| x.to_string());
            writeln!(out, "depth  enumerated").map_err(w)?;
            for (k, c) in f.counts.iter().enumerate() {
                writeln!(out, "{k:>5}  {c}").map_err(w)?;
            }
            if let Some(d) = truncated {
                writeln!(out, "enumeration stopped before depth {d}: more than {max_balls} balls").map_err(w)?;
            }
            let r = count_report(&f, n, depth);
            let agree = |a: Option<bool>| a.map_or("n/a", |b| if b { "yes" } else { "no" });
            writeln!(out, "closed forms for n = {n}, k = {depth}").map_err(w)?;
            writeln!(
                out,
                "  n(n-2)                  {}  (depth 1 agrees: {})",
                show(r.formulas.first_packing),
                agree(r.first_packing_agrees)
            )
            .map_err(w)?;
            writeln!(
                out,
                "  n(n^2-2n+7)             {}  (depth 2 agrees: {})",
                show(r.formulas.second_packing),
                agree(r.second_packing_agrees)
            )
            .map_err(w)?;
            writeln!(out, "  2n(n-3)^k               {}", show(r.formulas.shell_pearls)).map_err(w)?;
            writeln!(out, "  n((n-1)^k-1)/(n-2)+1    {}", show(r.formulas.connected_copies)).map_err(w)?;
            Ok(Outcome::Ok)
        }
        Command::Presentation { config, out: path } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            m.param("config", config.display());
            let (sn, report) = certified(&l.config)?;
            if !report.passed() {
                print_report(out, &report).map_err(w)?;
                return Ok(Outcome::Failed);
            }
            let p = presentation_of(&sn);
            std::fs::write(&path, p.to_string()).map_err(|e| Error::io(&path, e))?;
            writeln!(
                out,
                "{} generators, {} relators -> {}",
                p.generators.len(),
                p.relators.len(),
                path.display()
            )
            .map_err(w)?;
            m.outputs.push(path.display().to_string());
            Ok(Outcome::Ok)
        }
        Command::Monodromy { radius } => {
            m.param("radius", radius);
            let phi = trefoil_monodromy();
            let h = homology_matrix(&phi);
            writeln!(out, "homology matrix: {h:?}").map_err(w)?;
            for k in 1..=12 {
                if let Some(c) = power_is_inner(&phi, k, radius) {
                    writeln!(out, "Out-order: {k}, conjugator: {c}").map_err(w)?;
                    return Ok(Outcome::Ok);
                }
            }
            writeln!(out, "no power up to 12 is inner within radius {radius}").map_err(w)?;
            Ok(Outcome::Failed)
        }
        Command::TwistorCheck {
            config,
            words,
            samples,
            seed,
            tol,
        } => {
            let l = load(&config)?;
            m.input_hash = Some(l.hash);
            m.param("config", config.display())
                .param("words", words)
                .param("samples", samples)
                .param("seed", seed)
                .param("tol", tol);
            let (sn, report) = certified(&l.config)?;
            if !report.passed() {
                print_report(out, &report).map_err(w)?;
                return Ok(Outcome::Failed);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst: f64 = 0.0;
            let mut worst_fiber: f64 = 0.0;
            for k in 0..words {
                let word = random_even_word(&mut rng, sn.len(), 6);
                let d = equivariance_check(&word, sn.spheres(), samples, seed.wrapping_add(k as u64))?;
                let fib = fiber_check(&word, sn.spheres(), 50, 3, seed.wrapping_add(k as u64))?;
                writeln!(out, "{word}: equivariance {d:.3e}, fiber {fib:.3e}").map_err(w)?;
                worst = worst.max(d);
                worst_fiber = worst_fiber.max(fib);
            }
            let ok = worst <= tol && worst_fiber <= tol;
            writeln!(
                out,
                "worst equivariance {worst:.3e}, worst fiber spread {worst_fiber:.3e}: {}",
                if ok { "pass" } else { "FAIL" }
            )
            .map_err(w)?;
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Slice {
            cloud,
            plane,
            thickness,
            out: path,
        } => {
            let (axis, value) =
                parse_plane(&plane).ok_or_else(|| Error::parse("--plane", format!("expected e.g. w=0, got {plane}")))?;
            if !(thickness > 0.0) {
                return Err(Error::parse("--thickness", "must be positive"));
            }
            let text = std::fs::read_to_string(&cloud).map_err(|e| Error::io(&cloud, e))?;
            m.input_hash = Some(sha256_hex(text.as_bytes()));
            m.param("cloud", cloud.display())
                .param("plane", &plane)
                .param("thickness", thickness);
            let pts = read_cloud_csv(&text)?;
            let kept = slice_cloud(&pts, axis, value, thickness);
            export_cloud(&kept, cloud_format(&path), &path)?;
            writeln!(out, "{} of {} points -> {}", kept.len(), pts.len(), path.display()).map_err(w)?;
            m.outputs.push(path.display().to_string());
            Ok(Outcome::Ok)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Spin { .. } => "spin",
        Command::Limitset { .. } => "limitset",
        Command::Counts { .. } => "counts",
        Command::Presentation { .. } => "presentation",
        Command::Monodromy { .. } => "monodromy",
        Command::TwistorCheck { .. } => "twistor-check",
        Command::Slice { .. } => "slice",
    }
}

fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails harmlessly when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs one command line and returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    init_threads();
    let mut manifest = RunManifest::new(command_name(&cli.command));
    let start = Instant::now();
    let result = run(cli.command, &mut manifest, out);
    manifest.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let code = match result {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(e @ Error::Parse(_)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    };
    if let Err(e) = manifest.write(&cli.manifest_dir) {
        let _ = writeln!(err, "warning: {e}");
    }
    code
}
