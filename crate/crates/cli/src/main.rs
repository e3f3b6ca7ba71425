//! Workbench front end.
//!
//! Subcommands: `classgroup` (summarize one class group), `census` (run a
//! counting experiment and emit CSV/JSON), `theorem1` (classify the subset
//! sums of a set in a finite abelian group, with a re-verified witness),
//! `constants` (sieve constants C₀/Ψ, θ, Ω_D and the half-dimensionality
//! residual ladder), and `genus-check` (calibrate the local genus criteria
//! against brute-force representation for a battery of classical forms).
//!
//! Exit codes: 0 success, 2 usage or failure, 3 resource limits (memory
//! budget, group out of desk scale).  All output is deterministic given
//! the flags and `--seed`; the only rerun-variant field is the
//! `runtime_ms` report column.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genuslab::census::{
    build_tables, corollary4_count, exceptional_count, ideal_count, k_factor_histogram,
    lemma3_count, lemma4_count, lemma5_count, prime_class_histogram,
    shifted_prime_exceptional_count, u_f_report, CensusReport, RepresentationBitmaps,
};
use genuslab::genus::{build_l_set, genus_partition, genus_represents_local, sieve_constants};
use genuslab::grouptheory::{
    classify_subset_sums, verify_classification, Alternative, ClassifierParams,
    FiniteAbelianGroup,
};
use genuslab::primes::{gcd, is_squarefree, primes_up_to};
use genuslab::{ClassGroup, Error, QuadForm};

#[derive(Parser)]
#[command(
    name = "genuslab",
    version,
    about = "Class groups, genus theory, and counting censuses for binary quadratic forms"
)]
struct Cli {
    /// Worker threads (default: all cores); results never depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize one class group: h, genera, cyclic decomposition, forms.
    Classgroup {
        /// Discriminant (negative, ≡ 0 or 1 mod 4).
        #[arg(short = 'D', long = "discriminant", allow_hyphen_values = true)]
        d: i64,
    },
    /// Run a counting census and emit its report.
    Census(CensusArgs),
    /// Classify the subset sums of a set A in a finite abelian group.
    Theorem1(Theorem1Args),
    /// Evaluate the sieve constants for a discriminant.
    Constants(ConstantsArgs),
    /// Calibrate the local genus criteria against brute force.
    GenusCheck {
        /// Check every admissible squarefree m up to this bound.
        #[arg(short = 'X', long = "limit", default_value_t = 20_000)]
        x: u64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Experiment {
    Exceptional,
    Shifted,
    Corollary4,
    PrimesByClass,
    Kfactor,
    Lemma3,
    Lemma4,
    Lemma5,
    Ideals,
    #[value(name = "u_f")]
    UF,
}

#[derive(Copy, Clone, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct CensusArgs {
    /// Which census to run.
    #[arg(value_enum)]
    experiment: Experiment,

    /// Discriminant (negative, ≡ 0 or 1 mod 4).
    #[arg(short = 'D', long = "discriminant", allow_hyphen_values = true, default_value_t = -4)]
    d: i64,

    /// Census bound X (ξ for primes-by-class, Y for lemma4/lemma5).
    #[arg(short = 'X', long = "limit", default_value_t = 10_000)]
    x: u64,

    /// Shift a for the shifted/corollary4 censuses.
    #[arg(short = 'a', long = "shift", allow_hyphen_values = true, default_value_t = 1)]
    a: i64,

    /// Form "a,b,c" for corollary4/u_f (default: the principal form of D).
    #[arg(long)]
    form: Option<String>,

    /// Factor budget r for lemma3.
    #[arg(long, default_value_t = 4)]
    r: usize,

    /// Class index for lemma5.
    #[arg(long, default_value_t = 0)]
    class: usize,

    /// Congruence families "l:r[,r];l:r" for lemma4/lemma5
    /// (default: generated from --seed, or empty at seed 0).
    #[arg(long)]
    families: Option<String>,

    /// Seed for randomized inputs; recorded in the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Segmented evaluation (u_f): fixed windows instead of one bitmap.
    #[arg(long)]
    segmented: bool,

    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Theorem1Args {
    /// Group as invariant factors, e.g. "5" or "2,4" (each dividing the next).
    #[arg(long)]
    group: Option<String>,

    /// Derive the group from this class group's discriminant instead.
    #[arg(long, allow_hyphen_values = true)]
    classgroup: Option<i64>,

    /// Use A = {C² : C ∈ 𝒞} (with --classgroup; default there).
    #[arg(long)]
    squares: bool,

    /// Set A as comma-separated element codes, e.g. "1,2".
    #[arg(long)]
    set: Option<String>,

    /// Quality parameter ε ∈ (0, ½) of the classifier.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,

    /// Seed for a random A when --set is absent.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Size of the random A (default: ⌈log₂|G|⌉ + 3).
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Discriminant (negative, divisible by 4: the constants need an
    /// even-middle principal form).
    #[arg(short = 'D', long = "discriminant", allow_hyphen_values = true)]
    d: i64,

    /// Leading coefficient a of the target form.
    #[arg(short = 'a', long = "lead", default_value_t = 1)]
    a: i64,

    /// Prime truncation T of the C₀ Euler products.
    #[arg(long, default_value_t = 1_000_000)]
    truncation: u64,

    /// Census size X for the Ω_D truncation window.
    #[arg(short = 'X', long = "limit", default_value_t = 1_000_000)]
    x: u64,

    /// z ladder for the half-dimensionality residuals.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1_000u64, 10_000, 100_000])]
    zs: Vec<u64>,

    /// Emit a schema-tagged JSON record instead of text.
    #[arg(long)]
    json: bool,

    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // build_global fails only if a pool already exists; the run is
        // correct (if wider) either way.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::MemoryBudget { .. })
        | Some(Error::GroupTooLarge { .. })
        | Some(Error::SubgroupLatticeTooLarge(_)) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Classgroup { d } => run_classgroup(d),
        Command::Census(args) => run_census(args),
        Command::Theorem1(args) => run_theorem1(args),
        Command::Constants(args) => run_constants(args),
        Command::GenusCheck { x } => run_genus_check(x),
    }
}

fn run_classgroup(d: i64) -> anyhow::Result<()> {
    let g = ClassGroup::new(d)?;
    let disc = g.disc();
    println!(
        "D = {} ({}, conductor {})",
        disc.value(),
        if disc.is_fundamental() { "fundamental" } else { "non-fundamental" },
        disc.conductor()
    );
    println!(
        "h = {}, genera g = {}, ambiguous classes = {}",
        g.h(),
        g.genera_count(),
        g.ambiguous_classes().len()
    );
    let orders: Vec<String> = g.cyclic_orders().iter().map(|o| format!("Z/{o}")).collect();
    println!(
        "cyclic decomposition: {}",
        if orders.is_empty() { "trivial".to_string() } else { orders.join(" x ") }
    );
    println!("reduced forms:");
    for c in 0..g.h() {
        let (a, b, cc) = g.form(c).triple();
        let mut tags = Vec::new();
        if c == g.identity() {
            tags.push("principal");
        }
        if g.inverse(c) == c {
            tags.push("ambiguous");
        }
        let tag = if tags.is_empty() { String::new() } else { format!("  [{}]", tags.join(", ")) };
        println!("  [{c}] ({a}, {b}, {cc})  order {}{tag}", g.order_of(c));
    }
    Ok(())
}

fn parse_form(text: &str) -> anyhow::Result<QuadForm> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("form '{text}' is not three integers a,b,c"))?;
    if parts.len() != 3 {
        bail!("form '{text}' is not three integers a,b,c");
    }
    Ok(QuadForm::new(parts[0], parts[1], parts[2])?)
}

fn parse_families(text: &str) -> anyhow::Result<Vec<(u64, Vec<u64>)>> {
    let mut out = Vec::new();
    for part in text.split(';').filter(|p| !p.is_empty()) {
        let (l, rs) = part
            .split_once(':')
            .with_context(|| format!("family '{part}' is not MODULUS:RES[,RES]"))?;
        let l: u64 = l.trim().parse().with_context(|| format!("bad modulus in '{part}'"))?;
        let residues: Vec<u64> = rs
            .split(',')
            .map(|r| r.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("bad residue in '{part}'"))?;
        out.push((l, residues));
    }
    Ok(out)
}

// Deterministic random congruence families: distinct prime moduli, one or
// two residues each, always leaving at least one residue class alive.
fn random_families(seed: u64, count: usize) -> Vec<(u64, Vec<u64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = primes_up_to(200);
    pool.shuffle(&mut rng);
    pool.truncate(count);
    pool.sort_unstable();
    pool.into_iter()
        .map(|l| {
            let take = rng.gen_range(1..=2usize).min(l as usize - 1);
            let mut residues = Vec::new();
            while residues.len() < take {
                let r = rng.gen_range(0..l);
                if !residues.contains(&r) {
                    residues.push(r);
                }
            }
            residues.sort_unstable();
            (l, residues)
        })
        .collect()
}

impl CensusArgs {
    fn form(&self) -> anyhow::Result<QuadForm> {
        match &self.form {
            Some(text) => parse_form(text),
            None => Ok(genuslab::Discriminant::new(self.d)?.principal_form()),
        }
    }

    fn family_list(&self) -> anyhow::Result<Vec<(u64, Vec<u64>)>> {
        match &self.families {
            Some(text) => parse_families(text),
            None if self.seed != 0 => Ok(random_families(self.seed, 8)),
            None => Ok(Vec::new()),
        }
    }
}

fn run_census(args: CensusArgs) -> anyhow::Result<()> {
    let (d, x, a) = (args.d, args.x, args.a);
    // the shift censuses scan primes q with q + a ≤ X
    let prime_limit = x.max((x as i64 - a).max(2) as u64);
    let mut report: CensusReport = match args.experiment {
        Experiment::Exceptional => {
            let g = ClassGroup::new(d)?;
            let tables = build_tables(x, d)?;
            let maps = RepresentationBitmaps::build(&g, x)?;
            exceptional_count(&g, &tables, &maps, x)?
        }
        Experiment::Shifted => {
            let g = ClassGroup::new(d)?;
            let tables = build_tables(prime_limit, d)?;
            let maps = RepresentationBitmaps::build(&g, x)?;
            shifted_prime_exceptional_count(&g, &tables, &maps, x, a)?
        }
        Experiment::Corollary4 => {
            let f = args.form()?;
            let tables = build_tables(prime_limit, f.disc())?;
            corollary4_count(&f, &tables, x, a)?
        }
        Experiment::PrimesByClass => {
            let g = ClassGroup::new(d)?;
            let tables = build_tables(x, d)?;
            prime_class_histogram(&g, &tables, x)?.rows()
        }
        Experiment::Kfactor => k_factor_histogram(&build_tables(x, d)?, x)?,
        Experiment::Lemma3 => lemma3_count(&build_tables(x, d)?, x, args.r)?,
        Experiment::Lemma4 => lemma4_count(x, &args.family_list()?)?,
        Experiment::Lemma5 => {
            let g = ClassGroup::new(d)?;
            let tables = build_tables(x, d)?;
            lemma5_count(&g, &tables, x, args.class, &args.family_list()?)?
        }
        Experiment::Ideals => ideal_count(d, x)?,
        Experiment::UF => {
            let f = args.form()?;
            let window = args.segmented.then_some(1u64 << 22);
            u_f_report(&f, x, window)?
        }
    };
    report.seed = args.seed;
    let text = match args.format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_codes(text: &str, n: usize) -> anyhow::Result<Vec<usize>> {
    let codes: Vec<usize> = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("set '{text}' is not a comma list of element codes"))?;
    if let Some(&bad) = codes.iter().find(|&&c| c >= n) {
        bail!("element code {bad} is outside the group (order {n})");
    }
    Ok(codes)
}

fn random_subset(g: &FiniteAbelianGroup, seed: u64, size: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (1..g.n()).collect();
    pool.shuffle(&mut rng);
    pool.truncate(size.min(g.n().saturating_sub(1)));
    pool.sort_unstable();
    pool
}

fn run_theorem1(args: Theorem1Args) -> anyhow::Result<()> {
    let (group, a, origin) = if let Some(d) = args.classgroup {
        let cg = ClassGroup::new(d)?;
        let group = cg.abstract_group();
        let a: Vec<usize> = match &args.set {
            Some(text) => parse_codes(text, group.n())?,
            // the motivating instance: A = the square classes
            None => cg.squares().iter().map(|&c| cg.code_of_class(c)).collect(),
        };
        let origin = format!(
            "class group of D = {d} (h = {}, squares subgroup of order {})",
            cg.h(),
            cg.squares().len()
        );
        (group, a, origin)
    } else if let Some(text) = &args.group {
        let orders: Vec<u64> = text
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("group '{text}' is not a comma list of cyclic orders"))?;
        let group = FiniteAbelianGroup::new(&orders)?;
        let a = match &args.set {
            Some(text) => parse_codes(text, group.n())?,
            None => {
                let size = args
                    .size
                    .unwrap_or_else(|| (group.n().max(2) as f64).log2().ceil() as usize + 3);
                random_subset(&group, args.seed, size)
            }
        };
        (group, a, format!("abstract group {text}"))
    } else {
        bail!("theorem1 needs --group or --classgroup");
    };

    let params = ClassifierParams::new(args.eps)?;
    let report = classify_subset_sums(&group, &a, &params);
    let verified = verify_classification(&group, &a, &report);

    let shape: Vec<String> = group.orders().iter().map(|o| format!("Z/{o}")).collect();
    println!("group: {} (order {}) from {origin}", shape.join(" x "), group.n());
    println!("A ({} elements): {}", a.len(), preview(&a));
    println!(
        "eps = {}, eps1 = {:.3e}, c(eps) = {}, kappa = {:.3e}, kappa1 = {:.3e}",
        params.eps, params.eps1, params.c_eps, params.kappa, params.kappa1
    );
    println!("alternative: {}", report.alternative.label());
    match &report.alternative {
        Alternative::SumsAll => {
            println!("  s(A) = G: all {} sums reached", report.sums.len());
        }
        Alternative::Subgroup { subgroup, outside } => {
            println!(
                "  H of order {} and index {} (< 2/eps = {}), |A \\ H| = {} <= c(eps)",
                subgroup.order,
                subgroup.index,
                (2.0 / params.eps).ceil() as usize,
                outside.len()
            );
            println!("  outside elements: {}", preview(outside));
        }
        Alternative::SmallOmega { chosen, omega } => {
            let hp = group.n() as f64;
            let bound = (1.0 + params.eps) * hp.log2()
                + params.c_loglog * hp.ln().ln().max(0.0)
                + params.c_eps as f64;
            println!(
                "  k = {} (bound {:.2}), |Omega| = {} <= eps*h' + k = {:.2}",
                chosen.len(),
                bound,
                omega.len(),
                params.eps * hp + chosen.len() as f64
            );
            println!("  prefix: {}", preview(chosen));
        }
    }
    println!("s(A) reached {} of {} elements", report.sums.len(), group.n());
    if !report.densities.is_empty() {
        let shown: Vec<String> =
            report.densities.iter().take(12).map(|d| format!("{d:.4}")).collect();
        println!(
            "density transcript: [{}{}]",
            shown.join(", "),
            if report.densities.len() > 12 { ", …" } else { "" }
        );
    }
    println!("witness verified: {verified}");
    if !verified {
        bail!("classification witness failed re-verification");
    }
    Ok(())
}

fn preview(v: &[usize]) -> String {
    let shown: Vec<String> = v.iter().take(24).map(|x| x.to_string()).collect();
    format!("[{}{}]", shown.join(", "), if v.len() > 24 { ", …" } else { "" })
}

fn run_constants(args: ConstantsArgs) -> anyhow::Result<()> {
    if args.d >= 0 {
        bail!(Error::BadDiscriminant(args.d));
    }
    let constants = sieve_constants(-args.d, args.a, args.truncation, args.x as f64, &args.zs)?;
    let text = if args.json {
        let mut value = serde_json::to_value(&constants)?;
        value["schema"] = 1.into();
        serde_json::to_string_pretty(&value)? + "\n"
    } else {
        let mut out = String::new();
        out += &format!(
            "D = -{} (a = {}, truncation T = {})\n",
            constants.d_pos, constants.a, constants.truncation
        );
        out += &format!(
            "C0    = {:.12}  (|C0(T) - C0(T/2)| = {:.3e})\n",
            constants.c0, constants.c0_delta
        );
        out += &format!("Psi   = {:.12}  (= sqrt(2 e^gamma / pi) * C0)\n", constants.psi);
        out += &format!(
            "theta = {:.12}  at s* = {:.12}\n",
            constants.theta, constants.theta_argmax
        );
        out += &format!(
            "Omega_D = {:.12}  (c = 1; truncated at (log X)^15: {:.12})\n",
            constants.omega, constants.omega_truncated
        );
        out += "half-dimensionality residuals (sum_{p<=z, inert} log p/(p-1) - 0.5 log z):\n";
        for row in &constants.residual_table {
            out += &format!(
                "  z = {:>10}: sum = {:.6}, half log z = {:.6}, residual = {:+.6}\n",
                row.z, row.sum, row.half_log_z, row.residual
            );
        }
        out
    };
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_genus_check(x: u64) -> anyhow::Result<()> {
    let mut battery = vec![QuadForm::new(1, 0, 2)?, QuadForm::new(2, 2, 3)?];
    for a in 1..=12i64 {
        battery.push(QuadForm::new(1, 0, a * a)?);
    }
    let mut failures = 0u64;
    for f in &battery {
        let d = f.disc();
        let conditions = build_l_set(f, 0)?;
        let even_level = build_l_set(f, 1)?;
        println!(
            "form ({}, {}, {})  D = {d}",
            f.a, f.b, f.c
        );
        println!(
            "  odd level: case {}, L = {:?} mod {} (kappa = {})",
            conditions.case_id, conditions.l_set, conditions.q, conditions.kappa
        );
        println!(
            "  even level: case {}, L = {:?} mod {}",
            even_level.case_id, even_level.l_set, even_level.q
        );

        let g = ClassGroup::new(d)?;
        let class = g.class_of(f)?;
        let partition = genus_partition(&g);
        let genus = partition.members(partition.genus_of(class));
        let maps = RepresentationBitmaps::build(&g, x)?;
        let d_pos = -d;
        let mut checked = 0u64;
        let mut mismatches = 0u64;
        for m in 1..=x {
            if !is_squarefree(m) || gcd(m as i64, d_pos) > 2 {
                continue;
            }
            let local = genus_represents_local(f, m as i64)?;
            let brute = genus.iter().any(|&c| maps.represents(c, m));
            checked += 1;
            if local != brute {
                mismatches += 1;
                if mismatches <= 5 {
                    println!("  MISMATCH at m = {m}: local {local}, brute {brute}");
                }
            }
        }
        println!("  checked {checked} squarefree m <= {x}: {mismatches} mismatches");
        failures += mismatches;
    }
    if failures > 0 {
        bail!("genus calibration failed with {failures} mismatches");
    }
    println!("all {} forms calibrated", battery.len());
    Ok(())
}
