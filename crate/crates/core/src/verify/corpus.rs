use std::path::PathBuf;

use rayon::prelude::*;

use crate::chartab::{character_table_with, CharacterCap};
use crate::construct::{build_family, cp_semidirect, psl2, psl2_label, semidirect_label, FamilySpec};
use crate::error::{GroupError, VerifyError};
use crate::groupfile::{read_group_file, GroupFile};
use crate::numtheory::{factorize, is_prime, primes_up_to};
use crate::permgroup::{PermutationGroup, DEFAULT_ENUMERATION_CAP};

use super::{check_group, VerificationRecord};

/// Built-in family sweeps, each bounded by the corpus `max_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyRange {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    /// A fixed list of small direct products.
    DirectProducts,
    /// Every `C_p ⋊ C_m` with `m | p−1`.
    Semidirect,
}

impl FamilyRange {
    pub const ALL: [FamilyRange; 6] = [
        FamilyRange::Cyclic,
        FamilyRange::Dihedral,
        FamilyRange::Symmetric,
        FamilyRange::Alternating,
        FamilyRange::DirectProducts,
        FamilyRange::Semidirect,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSelection {
    AllDividing,
    /// Only these primes, where they divide `|G|`.
    Only(Vec<u64>),
}

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub max_order: u64,
    pub families: Vec<FamilyRange>,
    /// Extra family members, included when within `max_order`.
    pub extra_families: Vec<FamilySpec>,
    /// Largest prime `p` in the semidirect sweep; `None` means `max_order`.
    pub semidirect_range: Option<u64>,
    /// `PSL(2,p)` for primes `5 ≤ p ≤ psl2_range`, regardless of `max_order`.
    pub psl2_range: u64,
    pub external_files: Vec<PathBuf>,
    pub with_characters: bool,
    pub character_cap: CharacterCap,
    pub primes: PrimeSelection,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_order: 200,
            families: FamilyRange::ALL.to_vec(),
            extra_families: Vec::new(),
            semidirect_range: None,
            psl2_range: 0,
            external_files: Vec::new(),
            with_characters: false,
            character_cap: CharacterCap::default(),
            primes: PrimeSelection::AllDividing,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.max_order == 0 {
            return Err(VerifyError::Config("max_order must be positive".into()));
        }
        if self.max_order > DEFAULT_ENUMERATION_CAP as u64 {
            return Err(VerifyError::Config(format!(
                "max_order {} exceeds the enumeration cap {DEFAULT_ENUMERATION_CAP}",
                self.max_order
            )));
        }
        // |PSL(2,p)| = p(p²−1)/2
        let p = self.psl2_range as u128;
        if p >= 5 && p * (p * p - 1) / 2 > DEFAULT_ENUMERATION_CAP as u128 {
            return Err(VerifyError::Config(format!(
                "psl2 range {} exceeds the enumeration cap",
                self.psl2_range
            )));
        }
        if let PrimeSelection::Only(list) = &self.primes {
            if let Some(q) = list.iter().find(|&&q| !is_prime(q)) {
                return Err(VerifyError::Config(format!("{q} is not prime")));
            }
        }
        Ok(())
    }
}

/// How to build a corpus group. Groups are built on demand so a sweep holds
/// only the groups currently being checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Family(FamilySpec),
    Semidirect { p: u64, m: u64 },
    Psl2(u64),
    File(GroupFile),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    pub source: GroupSource,
}

impl CorpusEntry {
    pub fn group(&self) -> Result<PermutationGroup, GroupError> {
        match &self.source {
            GroupSource::Family(spec) => build_family(spec),
            GroupSource::Semidirect { p, m } => cp_semidirect(*p, *m),
            GroupSource::Psl2(p) => psl2(*p),
            GroupSource::File(file) => file.group(),
        }
    }

    /// Upper bound on the order known without building the group.
    fn order_hint(&self) -> Option<u64> {
        match &self.source {
            GroupSource::Family(spec) => Some(spec.order()),
            GroupSource::Semidirect { p, m } => Some(p * m),
            GroupSource::Psl2(p) => Some(p * (p * p - 1) / 2),
            GroupSource::File(_) => None,
        }
    }
}

/// Direct products in the built-in corpus, smallest first.
fn direct_products() -> Vec<FamilySpec> {
    use FamilySpec::{Alternating as A, Cyclic as C, Dihedral as D, Symmetric as S};
    let product = |parts: Vec<FamilySpec>| FamilySpec::DirectProduct(parts);
    vec![
        product(vec![C(2), C(2)]),
        product(vec![C(2), C(2), C(2)]),
        product(vec![C(2), C(4)]),
        product(vec![C(3), C(3)]),
        product(vec![C(2), C(6)]),
        product(vec![S(3), C(2)]),
        product(vec![C(5), C(5)]),
        product(vec![C(7), C(2)]),
        product(vec![S(3), C(3)]),
        product(vec![D(4), C(2)]),
        product(vec![A(4), C(2)]),
        product(vec![D(5), C(3)]),
        product(vec![S(3), S(3)]),
        product(vec![C(3), C(3), C(3)]),
        product(vec![A(4), C(3)]),
        product(vec![S(4), C(2)]),
        product(vec![D(7), C(7)]),
        product(vec![A(4), A(4)]),
        product(vec![A(5), C(2)]),
        product(vec![S(4), S(3)]),
        product(vec![A(5), C(3)]),
        product(vec![S(4), S(4)]),
    ]
}

/// The corpus groups, in construction order. External files that fail to
/// read or parse are errors.
pub fn corpus_groups(config: &CorpusConfig) -> Result<Vec<CorpusEntry>, VerifyError> {
    config.validate()?;
    let max = config.max_order;
    let mut specs: Vec<FamilySpec> = Vec::new();
    for family in &config.families {
        match family {
            FamilyRange::Cyclic => specs.extend((1..=max as usize).map(FamilySpec::Cyclic)),
            FamilyRange::Dihedral => specs.extend((3..=max as usize / 2).map(FamilySpec::Dihedral)),
            FamilyRange::Symmetric => specs.extend(
                (2..).map(FamilySpec::Symmetric).take_while(|s| s.order() <= max),
            ),
            FamilyRange::Alternating => specs.extend(
                (4..).map(FamilySpec::Alternating).take_while(|s| s.order() <= max),
            ),
            FamilyRange::DirectProducts => {
                specs.extend(direct_products().into_iter().filter(|s| s.order() <= max))
            }
            FamilyRange::Semidirect => {}
        }
    }
    specs.extend(config.extra_families.iter().filter(|s| s.order() <= max).cloned());

    let mut entries: Vec<CorpusEntry> = specs
        .into_iter()
        .map(|spec| CorpusEntry { label: spec.to_string(), source: GroupSource::Family(spec) })
        .collect();

    if config.families.contains(&FamilyRange::Semidirect) {
        let p_max = config.semidirect_range.unwrap_or(max).min(max);
        for p in primes_up_to(p_max) {
            for m in (1..p).filter(|m| (p - 1) % m == 0 && p * m <= max) {
                entries.push(CorpusEntry { label: semidirect_label(p, m), source: GroupSource::Semidirect { p, m } });
            }
        }
    }
    for p in primes_up_to(config.psl2_range).into_iter().filter(|&p| p >= 5) {
        entries.push(CorpusEntry { label: psl2_label(p), source: GroupSource::Psl2(p) });
    }
    for path in &config.external_files {
        let file = read_group_file(path)?;
        entries.push(CorpusEntry { label: file.name.clone(), source: GroupSource::File(file) });
    }
    Ok(entries)
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    /// Sorted by `(group_order, group_label, p)`.
    pub records: Vec<VerificationRecord>,
    pub groups_checked: usize,
    /// Groups behind failing records, for reproduction.
    pub failing_groups: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| r.is_counterexample())
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.is_failure()).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }
}

/// Sweeps the corpus in parallel on the current rayon pool. The record
/// order does not depend on the pool size.
pub fn run_corpus(config: &CorpusConfig) -> Result<CorpusReport, VerifyError> {
    let entries = corpus_groups(config)?;
    // Largest groups first so they do not trail at the end of the sweep.
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(entries[i].order_hint().unwrap_or(u64::MAX)));
    let results: Vec<(usize, Vec<VerificationRecord>)> = order
        .into_par_iter()
        .map(|i| Ok((i, check_entry(&entries[i], config)?)))
        .collect::<Result<_, VerifyError>>()?;

    let mut failing = Vec::new();
    let mut records = Vec::new();
    for (i, recs) in results {
        if recs.iter().any(VerificationRecord::is_failure) {
            failing.push(entries[i].clone());
        }
        records.extend(recs);
    }
    records.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    failing.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(CorpusReport { records, groups_checked: entries.len(), failing_groups: failing })
}

fn check_entry(entry: &CorpusEntry, config: &CorpusConfig) -> Result<Vec<VerificationRecord>, VerifyError> {
    let group = entry.group()?;
    let order = group.order()?;
    let primes: Vec<u64> = factorize(order)
        .into_iter()
        .map(|(q, _)| q)
        .filter(|q| match &config.primes {
            PrimeSelection::AllDividing => true,
            PrimeSelection::Only(list) => list.contains(q),
        })
        .collect();
    if primes.is_empty() {
        return Ok(Vec::new());
    }
    let table = config
        .with_characters
        .then(|| character_table_with(&group, &config.character_cap, false));
    check_group(&group, &entry.label, &primes, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_corpus_is_empty() {
        let config = CorpusConfig { max_order: 1, ..CorpusConfig::default() };
        let report = run_corpus(&config).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.groups_checked, 1);
    }

    #[test]
    fn psl2_range_adds_records() {
        let config = CorpusConfig {
            max_order: 1,
            families: Vec::new(),
            psl2_range: 11,
            ..CorpusConfig::default()
        };
        let report = run_corpus(&config).unwrap();
        let mut seen: Vec<(String, u64)> = report.records.iter().map(|r| (r.group_label.clone(), r.k)).collect();
        seen.dedup();
        assert_eq!(
            seen,
            vec![("PSL(2,5)".into(), 5), ("PSL(2,7)".into(), 6), ("PSL(2,11)".into(), 8)]
        );
    }

    #[test]
    fn caps_are_validated() {
        let config = CorpusConfig { max_order: 3_000_000, ..CorpusConfig::default() };
        assert!(matches!(run_corpus(&config), Err(VerifyError::Config(_))));
        let config = CorpusConfig { psl2_range: 400, ..CorpusConfig::default() };
        assert!(matches!(run_corpus(&config), Err(VerifyError::Config(_))));
    }
}
