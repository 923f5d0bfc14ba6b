//! Per-(group, prime) checks of the lower bound `k(G) ≥ a+b`, recognition
//! of the two extremal groups, and corpus sweeps.
//!
//! [`recognize_extremal`] is a structural test rather than an isomorphism
//! test. A group of order `p·m` with a normal self-centralizing subgroup
//! `P ≅ C_p` and cyclic quotient is `C_p ⋊ C_m` with `C_m` acting
//! faithfully, and that group is unique up to isomorphism because `Aut(C_p)`
//! is cyclic and so has exactly one subgroup of each order dividing `p−1`.

mod corpus;
mod inequality;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::chartab::{character_table_with, CharacterCap, CharacterTable};
use crate::error::{GroupError, VerifyError};
use crate::numtheory::{bound_profile, is_prime};
use crate::permgroup::PermutationGroup;
pub use corpus::{
    corpus_groups, run_corpus, CorpusConfig, CorpusEntry, CorpusReport, FamilyRange, GroupSource,
    PrimeSelection,
};
pub use inequality::{inequality_suite, InequalityCheck, InequalityReport};

/// Marker placed in the notes of a record that refutes the conjectured bound
/// or its equality case.
pub const COUNTEREXAMPLE: &str = "COUNTEREXAMPLE";
/// Marker for a record that violates one of the proven bounds.
pub const BOUND_VIOLATION: &str = "BOUND_VIOLATION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extremal {
    K,
    L,
    KlSame,
    None,
}

impl Extremal {
    pub fn as_str(self) -> &'static str {
        match self {
            Extremal::K => "K",
            Extremal::L => "L",
            Extremal::KlSame => "KL_same",
            Extremal::None => "none",
        }
    }

    pub fn is_extremal(self) -> bool {
        self != Extremal::None
    }
}

impl fmt::Display for Extremal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Extremal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub group_label: String,
    pub group_order: u64,
    pub p: u64,
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub sum_ab: u64,
    pub passes: bool,
    pub equality: bool,
    pub extremal: Extremal,
    pub irr_pprime: Option<u64>,
    pub notes: String,
}

impl VerificationRecord {
    pub fn is_counterexample(&self) -> bool {
        self.notes.contains(COUNTEREXAMPLE)
    }

    pub fn is_failure(&self) -> bool {
        self.is_counterexample() || self.notes.contains(BOUND_VIOLATION)
    }

    pub fn is_near_miss(&self) -> bool {
        self.k == self.sum_ab + 1
    }

    fn sort_key(&self) -> (u64, &str, u64) {
        (self.group_order, &self.group_label, self.p)
    }
}

/// Whether `G` is one of the two conjectured minimizers for `p`.
pub fn recognize_extremal(group: &PermutationGroup, p: u64) -> Result<Extremal, GroupError> {
    let order = require_divides(group, p)?;
    let (a, b) = crate::numtheory::balanced_divisor_pair(p)?;
    if order != p * a && order != p * b {
        return Ok(Extremal::None);
    }
    let sylow = group.sylow(p)?;
    if sylow.order()? != p || !group.is_normal(&sylow)? {
        return Ok(Extremal::None);
    }
    // P is abelian, so P ≤ C_G(P); equal orders mean equality.
    if group.centralizer(&sylow)?.order()? != p {
        return Ok(Extremal::None);
    }
    if !group.quotient(&sylow)?.is_cyclic()? {
        return Ok(Extremal::None);
    }
    Ok(if a == b {
        Extremal::KlSame
    } else if order == p * a {
        Extremal::K
    } else {
        Extremal::L
    })
}

fn require_divides(group: &PermutationGroup, p: u64) -> Result<u64, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let order = group.order()?;
    if order % p != 0 {
        return Err(GroupError::PrimeDoesNotDivide { p, order });
    }
    Ok(order)
}

/// Conjecture check without character data.
pub fn conjecture_a_check(
    group: &PermutationGroup,
    p: u64,
    label: &str,
) -> Result<VerificationRecord, VerifyError> {
    conjecture_a_check_with(group, p, label, None)
}

/// Conjecture check; with a character cap, `irr_pprime` is filled when the
/// group fits under it.
pub fn conjecture_a_check_with(
    group: &PermutationGroup,
    p: u64,
    label: &str,
    characters: Option<&CharacterCap>,
) -> Result<VerificationRecord, VerifyError> {
    require_divides(group, p)?;
    let table = characters.map(|cap| character_table_with(group, cap, false));
    let mut records = check_group(group, label, &[p], table)?;
    Ok(records.pop().expect("one record per prime"))
}

/// Records for each prime in `primes` (all of which divide `|G|`), sharing
/// the class count, solvability and character table across primes.
pub(crate) fn check_group(
    group: &PermutationGroup,
    label: &str,
    primes: &[u64],
    table: Option<Result<CharacterTable, crate::error::CharacterError>>,
) -> Result<Vec<VerificationRecord>, VerifyError> {
    let order = group.order()?;
    let k = group.class_count()? as u64;
    let mut solvable: Option<bool> = None;
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let profile = bound_profile(p)?;
        let (a, b, sum_ab) = (profile.a, profile.b, profile.sum_ab);
        let extremal = recognize_extremal(group, p)?;
        let passes = k >= sum_ab;
        let equality = k == sum_ab;
        let mut notes: Vec<String> = Vec::new();
        if !passes {
            notes.push(format!("{COUNTEREXAMPLE}: k = {k} < a+b = {sum_ab}"));
        } else if equality && !extremal.is_extremal() {
            notes.push(format!("{COUNTEREXAMPLE}: k = a+b = {sum_ab} for a group not of type K or L"));
        }
        if extremal.is_extremal() && !equality {
            notes.push(format!("{COUNTEREXAMPLE}: extremal type {extremal} has k = {k} != {sum_ab}"));
        }
        if k < profile.lower_old_ceil {
            notes.push(format!("{BOUND_VIOLATION}: k = {k} < 2*sqrt(p-1)"));
        }
        if order % (p * p) == 0 {
            let is_solvable = match solvable {
                Some(s) => s,
                None => *solvable.insert(group.is_solvable()?),
            };
            if is_solvable && num_rational::Ratio::from_integer(k as u128) < profile.solvable_p2_bound {
                notes.push(format!("{BOUND_VIOLATION}: solvable with p^2 | |G| and k = {k} < (49p+1)/60"));
            }
        }
        if k == sum_ab + 1 {
            notes.push("near-miss: k = a+b+1".into());
        }
        let irr_pprime = match &table {
            Some(Ok(t)) => Some(t.pprime_count(p) as u64),
            Some(Err(e)) => {
                notes.push(format!("irr_pprime skipped: {e}"));
                None
            }
            None => None,
        };
        out.push(VerificationRecord {
            group_label: label.to_string(),
            group_order: order,
            p,
            k,
            a,
            b,
            sum_ab,
            passes,
            equality,
            extremal,
            irr_pprime,
            notes: notes.join("; "),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_family, cp_semidirect, psl2, FamilySpec};

    #[test]
    fn record_examples() {
        let r = conjecture_a_check(&cp_semidirect(7, 2).unwrap(), 7, "C7:C2").unwrap();
        assert_eq!((r.k, r.sum_ab, r.equality, r.extremal), (5, 5, true, Extremal::K));
        assert!(r.notes.is_empty());

        let r = conjecture_a_check(&psl2(7).unwrap(), 7, "PSL(2,7)").unwrap();
        assert_eq!((r.k, r.passes, r.equality, r.extremal), (6, true, false, Extremal::None));
        assert!(r.is_near_miss());

        let c2 = build_family(&FamilySpec::Cyclic(2)).unwrap();
        let r = conjecture_a_check(&c2, 2, "C2").unwrap();
        assert_eq!((r.k, r.sum_ab, r.equality, r.extremal), (2, 2, true, Extremal::KlSame));

        assert!(conjecture_a_check(&c2, 3, "C2").is_err());
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(recognize_extremal(&cp_semidirect(7, 3).unwrap(), 7).unwrap(), Extremal::L);
        let c7c2 = build_family(&"cyclic:7*cyclic:2".parse().unwrap()).unwrap();
        assert_eq!(recognize_extremal(&c7c2, 7).unwrap(), Extremal::None);
        assert_eq!(recognize_extremal(&cp_semidirect(17, 4).unwrap(), 17).unwrap(), Extremal::KlSame);
        let c3 = build_family(&FamilySpec::Cyclic(3)).unwrap();
        assert_eq!(recognize_extremal(&c3, 3).unwrap(), Extremal::K);
        let s3 = build_family(&FamilySpec::Symmetric(3)).unwrap();
        assert_eq!(recognize_extremal(&s3, 3).unwrap(), Extremal::L);
        // order p·b but with a non-normal Sylow: S3 for p = 2 has a = b = 1, order 6 ≠ 2
        assert_eq!(recognize_extremal(&s3, 2).unwrap(), Extremal::None);
        // C6 has order 3·2 but C_G(P) = G
        let c6 = build_family(&FamilySpec::Cyclic(6)).unwrap();
        assert_eq!(recognize_extremal(&c6, 3).unwrap(), Extremal::None);
    }

    #[test]
    fn characters_fill_irr_pprime() {
        let cap = CharacterCap::default();
        let r = conjecture_a_check_with(&psl2(7).unwrap(), 7, "PSL(2,7)", Some(&cap)).unwrap();
        assert_eq!(r.irr_pprime, Some(5));
        let tiny = CharacterCap { max_order: 10, max_classes: 60 };
        let r = conjecture_a_check_with(&psl2(7).unwrap(), 7, "PSL(2,7)", Some(&tiny)).unwrap();
        assert_eq!(r.irr_pprime, None);
        assert!(r.notes.contains("irr_pprime skipped"));
    }
}
