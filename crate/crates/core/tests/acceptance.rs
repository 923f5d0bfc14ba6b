//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! All comparisons are exact integer or rational comparisons; the only
//! tolerance is the wall-clock limit on the largest PSL(2,p) class count.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kclass_core::chartab::{character_table, mckay_verify, CharacterTable};
use kclass_core::construct::{cp_semidirect, psl2};
use kclass_core::numtheory::{balanced_divisor_pair, bound_profile, factorize, isqrt, primes_up_to};
use kclass_core::permgroup::PermutationGroup;
use kclass_core::verify::{
    corpus_groups, inequality_suite, run_corpus, CorpusConfig, CorpusEntry, Extremal,
};

const PSL2_23_TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn frobenius_formula() -> Outcome {
    let mut count = 0;
    for p in primes_up_to(5000) {
        for m in (1..p).filter(|m| (p - 1) % m == 0 && p * m <= 5000) {
            let k = cp_semidirect(p, m).map_err(|e| e.to_string())?.class_count().map_err(|e| e.to_string())? as u64;
            ensure(k == m + (p - 1) / m, || format!("C{p}:C{m} has k = {k}, expected {}", m + (p - 1) / m))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (p, m) with pm <= 5000"))
}

fn psl_sharpness() -> Outcome {
    let mut largest = Duration::ZERO;
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let start = Instant::now();
        let k = psl2(p).map_err(|e| e.to_string())?.class_count().map_err(|e| e.to_string())? as u64;
        let elapsed = start.elapsed();
        ensure(k * 2 == p + 5, || format!("k(PSL(2,{p})) = {k}, expected {}", (p + 5) / 2))?;
        if p == 23 {
            largest = elapsed;
            ensure(elapsed < PSL2_23_TIME_LIMIT, || format!("PSL(2,23) took {elapsed:?}"))?;
        }
    }
    Ok(format!("p = 5..23, PSL(2,23) in {:.2}s", largest.as_secs_f64()))
}

fn numeric_remarks() -> Outcome {
    let p23 = balanced_divisor_pair(23).map_err(|e| e.to_string())?;
    let p29 = balanced_divisor_pair(29).map_err(|e| e.to_string())?;
    ensure(p23 == (2, 11), || format!("pair(23) = {p23:?}"))?;
    ensure(p29 == (4, 7), || format!("pair(29) = {p29:?}"))?;
    let (s23, s29) = (p23.0 + p23.1, p29.0 + p29.1);
    ensure(s23 == 13 && s29 == 11 && s23 > s29, || format!("sums {s23}, {s29}"))?;
    Ok("(2,11) sum 13 > (4,7) sum 11".into())
}

fn bound_chain() -> Outcome {
    let mut count = 0;
    for p in primes_up_to(999_999) {
        let b = bound_profile(p).map_err(|e| e.to_string())?;
        ensure(b.chain_holds(), || format!("chain fails at p = {p}"))?;
        let r = isqrt(p as u128 - 1);
        let square = r * r == p as u128 - 1;
        ensure(b.sum_equals_lower() == square, || format!("left equality mismatch at p = {p}"))?;
        count += 1;
    }
    Ok(format!("{count} primes below 10^6"))
}

fn conjecture_sweep() -> Outcome {
    let config = CorpusConfig {
        max_order: 2000,
        psl2_range: 19,
        semidirect_range: Some(2000),
        ..CorpusConfig::default()
    };
    let report = run_corpus(&config).map_err(|e| e.to_string())?;
    if let Some(r) = report.counterexamples().next() {
        return Err(format!("{} p = {}: {}", r.group_label, r.p, r.notes));
    }
    ensure(report.all_pass(), || "bound violation in sweep".into())?;
    let equality: BTreeSet<(String, u64)> =
        report.records.iter().filter(|r| r.equality).map(|r| (r.group_label.clone(), r.p)).collect();
    let extremal: BTreeSet<(String, u64)> = report
        .records
        .iter()
        .filter(|r| r.extremal != Extremal::None)
        .map(|r| (r.group_label.clone(), r.p))
        .collect();
    ensure(equality == extremal, || "equality records differ from K/L records".into())?;
    // every K and L within range shows up with equality
    for p in primes_up_to(2000) {
        let (a, b) = balanced_divisor_pair(p).map_err(|e| e.to_string())?;
        for m in [a, b].into_iter().filter(|m| p * m <= 2000) {
            let label = format!("C{p}:C{m}");
            ensure(equality.contains(&(label.clone(), p)), || format!("{label} missing from equality records"))?;
        }
    }
    for (label, p) in [("C2", 2), ("C3", 3), ("S3", 3), ("D3", 3)] {
        ensure(equality.contains(&(label.to_string(), p)), || format!("{label} at p = {p} missing"))?;
    }
    Ok(format!(
        "{} groups, {} records, {} equalities, 0 counterexamples",
        report.groups_checked,
        report.records.len(),
        equality.len()
    ))
}

struct Built {
    entry: CorpusEntry,
    group: PermutationGroup,
    order: u64,
    table: CharacterTable,
}

/// Corpus groups of order at most 1000 with their character tables.
fn tables() -> Result<Vec<Built>, String> {
    let config = CorpusConfig { max_order: 1000, psl2_range: 19, ..CorpusConfig::default() };
    let mut out = Vec::new();
    for entry in corpus_groups(&config).map_err(|e| e.to_string())? {
        let group = entry.group().map_err(|e| e.to_string())?;
        let order = group.order().map_err(|e| e.to_string())?;
        if order > 1000 {
            continue;
        }
        let table = character_table(&group).map_err(|e| format!("{}: {e}", entry.label))?;
        out.push(Built { entry, group, order, table });
    }
    Ok(out)
}

fn character_soundness(built: &[Built]) -> Outcome {
    for b in built {
        let label = &b.entry.label;
        let k = b.group.class_count().map_err(|e| e.to_string())?;
        ensure(b.table.degrees.len() == k, || format!("{label}: {} degrees, k = {k}", b.table.degrees.len()))?;
        ensure(b.table.degrees.iter().map(|d| d * d).sum::<u64>() == b.order, || format!("{label}: sum of squares"))?;
        ensure(b.table.degrees.iter().all(|d| b.order % d == 0), || format!("{label}: degree not dividing order"))?;
    }
    let spot: BTreeMap<&str, Vec<u64>> = [
        ("S3", vec![1, 1, 2]),
        ("C7:C3", vec![1, 1, 1, 3, 3]),
        ("PSL(2,7)", vec![1, 3, 3, 6, 7, 8]),
    ]
    .into_iter()
    .collect();
    for (label, expected) in &spot {
        let b = built.iter().find(|b| b.entry.label == *label).ok_or_else(|| format!("{label} not in corpus"))?;
        ensure(&b.table.degrees == expected, || format!("{label}: {:?}", b.table.degrees))?;
    }
    Ok(format!("{} groups of order <= 1000", built.len()))
}

fn mckay(built: &[Built]) -> Outcome {
    let mut checks = 0;
    for b in built.iter().filter(|b| b.order <= 500) {
        for (p, _) in factorize(b.order) {
            let m = mckay_verify(&b.group, p).map_err(|e| format!("{}: {e}", b.entry.label))?;
            ensure(m.equal, || format!("{} p = {p}: {} vs {}", b.entry.label, m.lhs, m.rhs))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (group, prime) pairs of order <= 500"))
}

fn pprime_lower_bound(built: &[Built]) -> Outcome {
    let g = psl2(7).map_err(|e| e.to_string())?;
    let n = kclass_core::chartab::irr_pprime_count(&g, 7).map_err(|e| e.to_string())?;
    ensure(n == 5, || format!("Irr_7'(PSL(2,7)) = {n}"))?;
    let mut checks = 0;
    for b in built.iter().filter(|b| b.order <= 500) {
        for (p, _) in factorize(b.order) {
            let (a, c) = balanced_divisor_pair(p).map_err(|e| e.to_string())?;
            let count = b.table.pprime_count(p) as u64;
            ensure(count >= a + c, || format!("{} p = {p}: {count} < {}", b.entry.label, a + c))?;
            checks += 1;
        }
    }
    Ok(format!("PSL(2,7) gives 5 = 1+4; {checks} pairs of order <= 500"))
}

fn all_pprime_implies_normal_abelian_sylow(built: &[Built]) -> Outcome {
    let mut hits = 0;
    for b in built {
        for (p, _) in factorize(b.order) {
            if b.table.pprime_count(p) != b.table.k {
                continue;
            }
            hits += 1;
            let s = b.group.sylow(p).map_err(|e| e.to_string())?;
            let normal = b.group.is_normal(&s).map_err(|e| e.to_string())?;
            ensure(normal && s.is_abelian(), || format!("{} p = {p}: Sylow not normal abelian", b.entry.label))?;
        }
    }
    Ok(format!("{hits} pairs with every degree prime to p"))
}

fn inequalities(built: &[Built]) -> Outcome {
    let mut checks = 0;
    let mut affine_equalities = 0;
    for b in built {
        let report = inequality_suite(&b.group).map_err(|e| format!("{}: {e}", b.entry.label))?;
        if let Some(c) = report.checks.iter().find(|c| !c.holds) {
            return Err(format!("{}: {} fails ({} < {})", b.entry.label, c.name, c.lhs, c.rhs));
        }
        checks += report.checks.len();
        if let kclass_core::verify::GroupSource::Semidirect { p, m } = b.entry.source {
            if m > 1 {
                let semi = report
                    .named("semidirect")
                    .next()
                    .ok_or_else(|| format!("{}: semidirect bound not applied", b.entry.label))?;
                ensure(semi.equality, || format!("C{p}:C{m}: {} > {}", semi.lhs, semi.rhs))?;
                affine_equalities += 1;
            }
        }
    }
    Ok(format!("{checks} checks, equality on all {affine_equalities} affine Frobenius groups"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |n: usize, name: &str, outcome: Outcome, elapsed: Duration| {
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} [{secs:.1}s]");
            }
        }
    };
    let timed = |f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let out = f();
        (out, start.elapsed())
    };

    let (o, t) = timed(&frobenius_formula);
    report(1, "class count of C_p:C_m is m + (p-1)/m", o, t);
    let (o, t) = timed(&psl_sharpness);
    report(2, "k(PSL(2,p)) = (p+5)/2", o, t);
    let (o, t) = timed(&numeric_remarks);
    report(3, "balanced pairs for 23 and 29", o, t);
    let (o, t) = timed(&bound_chain);
    report(4, "2*sqrt(p-1) <= a+b <= (p+3)/2", o, t);
    let (o, t) = timed(&conjecture_sweep);
    report(5, "k(G) >= a+b sweep, equality exactly on K/L", o, t);

    let start = Instant::now();
    let built = tables();
    let table_time = start.elapsed();
    match built {
        Ok(built) => {
            let (o, t) = timed(&|| character_soundness(&built));
            report(6, "character degrees", o, t + table_time);
            let (o, t) = timed(&|| mckay(&built));
            report(7, "McKay equality", o, t);
            let (o, t) = timed(&|| pprime_lower_bound(&built));
            report(8, "|Irr_p'(G)| >= a+b", o, t);
            let (o, t) = timed(&|| all_pprime_implies_normal_abelian_sylow(&built));
            report(9, "all degrees prime to p => normal abelian Sylow", o, t);
            let (o, t) = timed(&|| inequalities(&built));
            report(10, "quotient, Ernest and semidirect bounds", o, t);
        }
        Err(why) => {
            for (n, name) in [(6, "character degrees"), (7, "McKay equality"), (8, "|Irr_p'(G)| >= a+b"), (9, "normal abelian Sylow"), (10, "inequality suite")] {
                report(n, name, Err(format!("character tables unavailable: {why}")), table_time);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
