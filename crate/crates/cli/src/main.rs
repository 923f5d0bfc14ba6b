use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use kclass_core::canonical::{ratio_text, to_json};
use kclass_core::chartab::{character_table_with, mckay_verify_with, CharacterCap};
use kclass_core::construct::{build_family, cp_semidirect, extremal_pair, psl2, psl2_label, semidirect_label, FamilySpec};
use kclass_core::groupfile::{read_group_file, serialize_group_file, GroupFile};
use kclass_core::numtheory::{bound_profile, primes_up_to};
use kclass_core::permgroup::PermutationGroup;
use kclass_core::report::{emit_report, Format, Report};
use kclass_core::verify::{run_corpus, CorpusConfig};

#[derive(Parser)]
#[command(name = "kclass", version, about = "Class counts, character degrees and bound checks for permutation groups")]
struct Cli {
    /// Worker threads for corpus sweeps (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound profile of a prime, or a table over all primes up to --max.
    Bounds {
        p: Option<u64>,
        #[arg(long)]
        table: bool,
        #[arg(long, requires = "table")]
        max: Option<u64>,
    },
    /// Emit generators of a constructed group in the group-file format.
    ///
    /// KIND is cyclic, dihedral, symmetric, alternating, semidirect, psl2, K
    /// or L, followed by its integer parameters; a full spec such as
    /// `cyclic:7*cyclic:2` is also accepted.
    Construct {
        kind: String,
        params: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugacy classes of a group given as a file or spec.
    Kclasses { group: String },
    /// Irreducible character degrees.
    Chartab {
        group: String,
        /// Also count degrees prime to this prime.
        #[arg(long)]
        p: Option<u64>,
        /// Include character values modulo the working prime.
        #[arg(long)]
        values: bool,
    },
    /// Compare p'-degree counts of G and the normalizer of a Sylow p-subgroup.
    Mckay {
        group: String,
        #[arg(long)]
        p: u64,
    },
    /// Sweep the corpus and check k(G) >= a+b for every prime dividing |G|.
    Verify {
        #[arg(long, default_value_t = 200)]
        max_order: u64,
        #[arg(long, default_value_t = 0)]
        psl2_max: u64,
        /// Largest p for the C_p:C_m sweep (default: max order).
        #[arg(long)]
        semidirect_max: Option<u64>,
        #[arg(long, num_args = 1..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        with_characters: bool,
        /// JSON report path, `-` for stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// CSV report path, `-` for stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// A group named on the command line: a group file, or one of
/// `cyclic:N`, `dihedral:N`, `symmetric:N`, `alternating:N` (joined by `*`
/// for direct products), `semidirect:P:M`, `psl2:P`, `K:P`, `L:P`.
fn resolve_group(arg: &str) -> Result<(String, PermutationGroup)> {
    let path = Path::new(arg);
    if path.is_file() {
        let file = read_group_file(path)?;
        let group = file.group()?;
        return Ok((file.name, group));
    }
    let fields: Vec<&str> = arg.split(':').collect();
    let num = |s: &str| -> Result<u64> { s.trim().parse().with_context(|| format!("bad number `{s}` in `{arg}`")) };
    match fields.as_slice() {
        ["semidirect", p, m] => {
            let (p, m) = (num(p)?, num(m)?);
            Ok((semidirect_label(p, m), cp_semidirect(p, m)?))
        }
        ["psl2", p] => {
            let p = num(p)?;
            Ok((psl2_label(p), psl2(p)?))
        }
        [which @ ("K" | "L"), p] => {
            let pair = extremal_pair(num(p)?)?;
            let m = if *which == "K" { pair.a } else { pair.b };
            Ok((semidirect_label(pair.p, m), if *which == "K" { pair.k } else { pair.l }))
        }
        _ => {
            let spec: FamilySpec = arg.parse().map_err(|e| anyhow!("{e} (and no such file)"))?;
            Ok((spec.to_string(), build_family(&spec)?))
        }
    }
}

fn construct_spec(kind: &str, params: &[u64]) -> Result<String> {
    if kind.contains(':') {
        if !params.is_empty() {
            bail!("a full group spec takes no extra parameters");
        }
        return Ok(kind.to_string());
    }
    let expected = if kind == "semidirect" { 2 } else { 1 };
    if params.len() != expected {
        bail!("`{kind}` takes {expected} parameter(s), got {}", params.len());
    }
    let joined: Vec<String> = params.iter().map(u64::to_string).collect();
    Ok(format!("{kind}:{}", joined.join(":")))
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn bounds_table(max: u64) -> Result<String> {
    let mut out = String::from(
        "p,a,b,sum_ab,lower_old,lower_old_ceil,upper_safe,solvable_p2_bound,star_value,sqrt_integral,is_safe,is_sophie_germain\n",
    );
    for p in primes_up_to(max) {
        let b = bound_profile(p)?;
        out.push_str(&format!(
            "{},{},{},{},{:.6},{},{},{},{:.6},{},{},{}\n",
            b.p,
            b.a,
            b.b,
            b.sum_ab,
            b.lower_old,
            b.lower_old_ceil,
            ratio_text(&b.upper_safe),
            ratio_text(&b.solvable_p2_bound),
            b.star_value,
            b.sqrt_integral,
            b.is_safe,
            b.is_sophie_germain
        ));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = CharacterCap::default();
    match cli.command {
        Command::Bounds { p: Some(p), table: false, .. } => print!("{}", to_json(&bound_profile(p)?)),
        Command::Bounds { table: true, max, p } => {
            let max = max.or(p).ok_or_else(|| anyhow!("--table needs --max"))?;
            print!("{}", bounds_table(max)?);
        }
        Command::Bounds { .. } => bail!("give a prime or --table --max P"),
        Command::Construct { kind, params, out } => {
            let spec = construct_spec(&kind, &params)?;
            let (label, group) = resolve_group(&spec)?;
            let text = serialize_group_file(&GroupFile::from_group(&label, &group));
            match out {
                Some(path) => write_output(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Kclasses { group } => {
            let (label, g) = resolve_group(&group)?;
            let classes = g.conjugacy_classes()?;
            let list: Vec<_> = classes
                .representatives()
                .iter()
                .zip(classes.sizes())
                .map(|(r, s)| json!({"representative": r.to_string(), "size": s, "element_order": r.order()}))
                .collect();
            print!("{}", to_json(&json!({"group": label, "order": g.order()?, "k": classes.k(), "classes": list})));
        }
        Command::Chartab { group, p, values } => {
            let (label, g) = resolve_group(&group)?;
            let table = character_table_with(&g, &cap, values)?;
            let mut out = json!({"group": label, "order": g.order()?, "k": table.k, "degrees": table.degrees});
            if let Some(p) = p {
                out["p"] = json!(p);
                out["irr_pprime"] = json!(table.pprime_count(p));
            }
            if let Some(v) = &table.values {
                out["values"] = serde_json::to_value(v)?;
            }
            print!("{}", to_json(&out));
        }
        Command::Mckay { group, p } => {
            let (label, g) = resolve_group(&group)?;
            let check = mckay_verify_with(&g, p, &cap)?;
            let mut out = serde_json::to_value(check)?;
            out["group"] = json!(label);
            print!("{}", to_json(&out));
            if !check.equal {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Verify { max_order, psl2_max, semidirect_max, files, with_characters, json, csv } => {
            let config = CorpusConfig {
                max_order,
                psl2_range: psl2_max,
                semidirect_range: semidirect_max,
                external_files: files,
                with_characters,
                character_cap: cap,
                ..CorpusConfig::default()
            };
            let corpus = match cli.threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()?
                    .install(|| run_corpus(&config))?,
                None => run_corpus(&config)?,
            };
            let report = Report::from_corpus(&corpus)?;
            if let Some(path) = &json {
                write_output(path, &emit_report(&report, Format::Json))?;
            }
            if let Some(path) = &csv {
                write_output(path, &emit_report(&report, Format::Csv))?;
            }
            let s = report.summary;
            eprintln!(
                "groups checked: {}, checks run: {}, equalities: {}, failures: {}",
                s.groups_checked, s.checks_run, s.equalities, s.failures
            );
            if s.failures > 0 {
                for r in corpus.records.iter().filter(|r| r.is_failure()) {
                    eprintln!("FAILURE {} (order {}), p = {}: {}", r.group_label, r.group_order, r.p, r.notes);
                }
                for entry in &corpus.failing_groups {
                    eprintln!("--- reproduction data for {} ---", entry.label);
                    let group = entry.group()?;
                    eprint!("{}", serialize_group_file(&GroupFile::from_group(&entry.label, &group)));
                }
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
