//! `cobord` — exact complex-cobordism computations from the command line:
//! s_ω polynomials, the rational section obstruction, generator
//! construction, spectrum rank tables, and consistency checks.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};

use cobord_core::{
    construct_section_generator_with_limit, gamma_rational, integral_generator_check,
    kernel_basis, parse_class, rank_mtu, rank_mtu_bar, rank_mtu_rel, s_matrix_with_limit,
    s_polynomial, splitting_check, stabilization_check, CobordismClass, Partition, RankTable,
    RequiredSValue, SpectrumTag, DEFAULT_MAX_DEGREE,
};

#[derive(Parser)]
#[command(
    name = "cobord",
    version,
    about = "Exact s-number computations for complex cobordism classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Ceiling on the working degree; raise deliberately for larger runs.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Spectrum {
    #[value(name = "MTU", alias = "mtu")]
    Mtu,
    #[value(name = "MTU-rel", alias = "mtu-rel")]
    MtuRel,
    #[value(name = "MTUbar", alias = "mtubar")]
    MtuBar,
}

#[derive(Subcommand)]
enum Command {
    /// Print s_ω as a polynomial in the Chern classes c_1,...,c_d.
    #[command(name = "s-poly")]
    SPoly {
        /// The partition ω, e.g. "[2,1]".
        omega: String,
    },
    /// Test whether a class admits r sections rationally.
    Obstruct {
        /// Class expression, e.g. "4*CP2 - 3*CP1^2".
        class: String,
        /// Number of sections to test.
        #[arg(long)]
        r: u32,
    },
    /// Construct the degree-d generator whose only nonzero s-number is s_(d).
    Generator {
        #[arg(long)]
        d: u32,
        /// Sections requested; must satisfy r < d.
        #[arg(long)]
        r: u32,
    },
    /// Rank table of a spectrum over a range of half-degrees q.
    Ranks {
        #[arg(long, value_enum, default_value_t = Spectrum::Mtu)]
        spectrum: Spectrum,
        #[arg(long)]
        d: u32,
        /// Required for MTU-rel.
        #[arg(long)]
        r: Option<u32>,
        /// Half-degree range "lo..hi" (inclusive) or a single upper bound.
        #[arg(long, value_parser = parse_q_range)]
        q: (u32, u32),
    },
    /// Chern numbers, s-numbers and Euler characteristic of a class.
    Chern {
        class: String,
    },
    /// Stong basis, splitting, and stabilization checks for one degree.
    Verify {
        #[arg(long)]
        d: u32,
    },
    /// Integral basis of the kernel of the r-section obstruction.
    Kernel {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
}

fn parse_q_range(s: &str) -> Result<(u32, u32), String> {
    let parse_one = |part: &str| {
        part.trim()
            .parse::<u32>()
            .map_err(|_| format!("invalid half-degree '{part}'"))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi)?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok((lo, hi))
    } else {
        Ok((0, parse_one(s)?))
    }
}

enum Outcome {
    Ok,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.max_degree > DEFAULT_MAX_DEGREE {
        eprintln!(
            "warning: degree guard raised to {} (default {}); large degrees grow quickly",
            cli.max_degree, DEFAULT_MAX_DEGREE
        );
    }
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Enforces the guard, then pre-builds the degree table so downstream
/// calls that use the default ceiling find it in the cache.
fn ensure_degree(d: u32, max_degree: u32) -> Result<(), String> {
    if d > max_degree {
        return Err(format!(
            "degree {d} exceeds the guard (--max-degree {max_degree})"
        ));
    }
    s_matrix_with_limit(d, max_degree)
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let max_degree = cli.max_degree;
    let json = cli.format == Format::Json;
    match cli.command {
        Command::SPoly { omega } => cmd_s_poly(&omega, max_degree, json),
        Command::Obstruct { class, r } => cmd_obstruct(&class, r, max_degree, json),
        Command::Generator { d, r } => cmd_generator(d, r, max_degree, json),
        Command::Ranks { spectrum, d, r, q } => cmd_ranks(spectrum, d, r, q, max_degree, json),
        Command::Chern { class } => cmd_chern(&class, max_degree, json),
        Command::Verify { d } => cmd_verify(d, max_degree, json),
        Command::Kernel { d, r } => cmd_kernel(d, r, max_degree, json),
    }
}

fn cmd_s_poly(omega: &str, max_degree: u32, json: bool) -> Result<Outcome, String> {
    let omega: Partition = omega.parse().map_err(|e| format!("{e}"))?;
    if omega.is_empty() {
        return Err("the empty partition has no s-polynomial".into());
    }
    if omega.weight() > max_degree {
        return Err(format!(
            "degree {} exceeds the guard (--max-degree {max_degree})",
            omega.weight()
        ));
    }
    let poly = s_polynomial(&omega).map_err(|e| e.to_string())?;
    if json {
        let out = serde_json::json!({
            "omega": omega.to_string(),
            "degree": omega.weight(),
            "s_polynomial": poly.to_json(),
            "display": poly.to_string(),
        });
        println!("{out}");
    } else {
        println!("{poly}");
    }
    Ok(Outcome::Ok)
}

fn cmd_obstruct(class: &str, r: u32, max_degree: u32, json: bool) -> Result<Outcome, String> {
    let class = parse_class(class).map_err(|e| e.to_string())?;
    let d = class.degree();
    if r > d {
        return Err(format!("cannot ask for {r} sections in degree {d}"));
    }
    ensure_degree(d, max_degree)?;
    let report = gamma_rational(&class, r).map_err(|e| e.to_string())?;
    if json {
        println!("{}", report.to_json());
    } else {
        println!("degree {d} class, testing r = {r} section(s)");
        for (omega, value) in &report.entries {
            println!("  s{omega} = {value}");
        }
        if report.vanishes {
            println!("vanishes: admits {r} section(s) rationally");
        } else {
            let witness = report.witness.as_ref().unwrap();
            println!("obstructed: witness s{witness} != 0");
        }
    }
    Ok(if report.vanishes {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

fn cmd_generator(d: u32, r: u32, max_degree: u32, json: bool) -> Result<Outcome, String> {
    if d == 0 {
        return Err("degree must be at least 1".into());
    }
    if r >= d {
        return Err(format!("generator construction needs r < d (got r={r}, d={d})"));
    }
    ensure_degree(d, max_degree)?;
    let generator =
        construct_section_generator_with_limit(d, max_degree).map_err(|e| e.to_string())?;
    let verdict = integral_generator_check(&generator.class).map_err(|e| e.to_string())?;
    let sections = gamma_rational(&generator.class, r).map_err(|e| e.to_string())?;
    let requirement = match &verdict.required {
        RequiredSValue::Unit => "1 (d+1 is not a prime power)".to_string(),
        RequiredSValue::Prime { p, q } => format!("{p} (d+1 = {p}^{q})"),
    };
    if json {
        let prime_power = match &verdict.required {
            RequiredSValue::Unit => serde_json::Value::Null,
            RequiredSValue::Prime { p, q } => serde_json::json!({"p": p, "q": q}),
        };
        let out = serde_json::json!({
            "d": d,
            "r": r,
            "class": generator.class.to_json(),
            "display": generator.class.to_string(),
            "multiple": generator.multiple.to_string(),
            "admits_sections_rationally": sections.vanishes,
            "rational_generator": verdict.rational_generator,
            "integral_generator": verdict.integral_generator,
            "required_magnitude": verdict.required.magnitude().to_string(),
            "prime_power": prime_power,
        });
        println!("{out}");
    } else {
        println!("X = {} (c={})", generator.class, generator.multiple);
        println!(
            "admits {r} section(s) rationally: {}",
            if sections.vanishes { "yes" } else { "no" }
        );
        println!(
            "rational generator: {}",
            if verdict.rational_generator { "yes" } else { "no" }
        );
        println!(
            "integral generator: {} (|s_[{d}]| = {}, need {requirement})",
            if verdict.integral_generator { "yes" } else { "no" },
            verdict.s_value.abs(),
        );
    }
    Ok(Outcome::Ok)
}

fn cmd_ranks(
    spectrum: Spectrum,
    d: u32,
    r: Option<u32>,
    (q_lo, q_hi): (u32, u32),
    max_degree: u32,
    json: bool,
) -> Result<Outcome, String> {
    if d > max_degree || q_hi > max_degree {
        return Err(format!(
            "degree exceeds the guard (--max-degree {max_degree})"
        ));
    }
    let tag = match spectrum {
        Spectrum::Mtu => SpectrumTag::Mtu { d },
        Spectrum::MtuBar => SpectrumTag::MtuBar { d },
        Spectrum::MtuRel => {
            let r = r.ok_or("--r is required for MTU-rel")?;
            if r > d {
                return Err(format!("r = {r} exceeds d = {d}"));
            }
            SpectrumTag::MtuRel { d, r }
        }
    };
    let mut ranks = Vec::new();
    for q in q_lo..=q_hi {
        let rank = match tag {
            SpectrumTag::Mtu { d } => rank_mtu(d, q),
            SpectrumTag::MtuRel { d, r } => rank_mtu_rel(d, r, q).map_err(|e| e.to_string())?,
            SpectrumTag::MtuBar { d } => rank_mtu_bar(d, q),
        };
        ranks.push((2 * q, rank));
    }
    let table = RankTable { tag, ranks };
    if json {
        println!("{}", table.to_json());
    } else {
        println!("{} ranks by topological degree:", table.tag);
        for (deg, rank) in &table.ranks {
            println!("  deg {deg}: {rank}");
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_chern(class: &str, max_degree: u32, json: bool) -> Result<Outcome, String> {
    let class = parse_class(class).map_err(|e| e.to_string())?;
    let d = class.degree();
    ensure_degree(d, max_degree)?;
    let evaluators: Vec<_> = class
        .terms()
        .map(|(model, coeff)| (coeff.clone(), model.evaluator()))
        .collect();
    let partitions = cobord_core::enumerate(d);
    let mut chern_numbers = Vec::new();
    for lambda in &partitions {
        let mut value = num_rational::BigRational::zero();
        for (coeff, ev) in &evaluators {
            let number = ev.chern_number(lambda).map_err(|e| e.to_string())?;
            value += coeff * num_rational::BigRational::from(number);
        }
        chern_numbers.push((lambda.clone(), value));
    }
    let s_numbers = cobord_core::s_coordinates(&class).map_err(|e| e.to_string())?;
    let euler = chern_numbers
        .iter()
        .find(|(l, _)| l == &Partition::single(d))
        .map(|(_, v)| v.clone())
        .unwrap();
    if json {
        let mut cherns = serde_json::Map::new();
        for (lambda, value) in &chern_numbers {
            cherns.insert(lambda.to_string(), value.to_string().into());
        }
        let mut esses = serde_json::Map::new();
        for (omega, value) in &s_numbers {
            esses.insert(omega.to_string(), value.to_string().into());
        }
        let out = serde_json::json!({
            "class": class.to_string(),
            "degree": d,
            "chern_numbers": cherns,
            "s_numbers": esses,
            "euler": euler.to_string(),
        });
        println!("{out}");
    } else {
        println!("{class}  (degree {d})");
        println!("Chern numbers:");
        for (lambda, value) in &chern_numbers {
            println!("  c{lambda} = {value}");
        }
        println!("s-numbers:");
        for (omega, value) in &s_numbers {
            println!("  s{omega} = {value}");
        }
        println!("euler characteristic: {euler}");
    }
    Ok(Outcome::Ok)
}

fn cmd_verify(d: u32, max_degree: u32, json: bool) -> Result<Outcome, String> {
    if d == 0 {
        return Err("degree must be at least 1".into());
    }
    ensure_degree(d, max_degree)?;
    let matrix = s_matrix_with_limit(d, max_degree).map_err(|e| e.to_string())?;
    let det = matrix.det().clone();
    let stong_ok = !det.is_zero();
    let mut splittings = Vec::new();
    let mut all_ok = stong_ok;
    for r in 0..=d {
        let report = splitting_check(d, r).map_err(|e| e.to_string())?;
        all_ok &= report.consistent;
        splittings.push(report);
    }
    let mut stab_ok = true;
    for r in 0..=d {
        for k in 0..=4 {
            stab_ok &= stabilization_check(d, r, k, d).map_err(|e| e.to_string())?;
        }
    }
    all_ok &= stab_ok;
    if json {
        let out = serde_json::json!({
            "d": d,
            "stong_det": det.to_string(),
            "stong_ok": stong_ok,
            "splittings": splittings.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "stabilization_ok": stab_ok,
            "ok": all_ok,
        });
        println!("{out}");
    } else {
        println!("Stong det={det} {}", if stong_ok { "OK" } else { "FAIL" });
        for report in &splittings {
            println!(
                "splitting r={}: i={} j={} p={} {}",
                report.sections,
                report.i,
                report.j,
                report.p,
                if report.consistent { "OK" } else { "FAIL" }
            );
        }
        println!(
            "stabilization (k<=4, q<=d) {}",
            if stab_ok { "OK" } else { "FAIL" }
        );
    }
    Ok(if all_ok { Outcome::Ok } else { Outcome::Negative })
}

fn cmd_kernel(d: u32, r: u32, max_degree: u32, json: bool) -> Result<Outcome, String> {
    if d == 0 {
        return Err("degree must be at least 1".into());
    }
    if r > d {
        return Err(format!("r = {r} exceeds d = {d}"));
    }
    ensure_degree(d, max_degree)?;
    let basis: Vec<CobordismClass> = kernel_basis(d, r).map_err(|e| e.to_string())?;
    if json {
        let out = serde_json::json!({
            "d": d,
            "r": r,
            "dimension": basis.len(),
            "basis": basis.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "display": basis.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        println!("{out}");
    } else {
        println!("kernel basis for d={d}, r={r} (dimension {}):", basis.len());
        if basis.is_empty() {
            println!("  (zero subspace)");
        }
        for class in &basis {
            println!("  {class}");
        }
    }
    Ok(Outcome::Ok)
}
