use std::collections::HashSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::canonical;
use crate::error::GroupError;
use crate::numtheory::is_prime;
use crate::permgroup::{Permutation, PermutationGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    /// `quotient`, `ernest_center`, `ernest_cyclic`, `semidirect` or `orbit`.
    pub name: &'static str,
    /// The subgroup the check was applied to, in cycle notation.
    pub subject: String,
    #[serde(serialize_with = "canonical::ratio")]
    pub lhs: Ratio<u64>,
    #[serde(serialize_with = "canonical::ratio")]
    pub rhs: Ratio<u64>,
    pub holds: bool,
    pub equality: bool,
}

impl InequalityCheck {
    fn new(name: &'static str, subject: String, lhs: Ratio<u64>, rhs: Ratio<u64>) -> Self {
        InequalityCheck { name, subject, holds: lhs >= rhs, equality: lhs == rhs, lhs, rhs }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
    /// Checks that did not apply, and why.
    pub skipped: Vec<String>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a InequalityCheck> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }
}

fn subject(group: &PermutationGroup) -> String {
    if group.generators().is_empty() {
        return "<>".into();
    }
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    format!("<{}>", gens.join(", "))
}

fn int(n: u64) -> Ratio<u64> {
    Ratio::from_integer(n)
}

/// Evaluates the class-count inequalities that apply to `G`:
///
/// - `k(G) ≥ k(G/N) + 1` for each nontrivial proper normal closure `N` of a
///   class representative;
/// - `k(G) ≥ |A| / |G:A|` for `A` the center and for each cyclic subgroup
///   generated by a class representative;
/// - when `G` acts transitively on a prime number `n` of points with a
///   normal Sylow subgroup `V` of order `n`: `k(G) ≥ k(H) + n(H,V) − 1`
///   and `n(H,V) ≥ |V|/|H|`, where `H` is the stabilizer of the first point
///   and `n(H,V)` counts `H`-orbits on `V` under conjugation.
pub fn inequality_suite(group: &PermutationGroup) -> Result<InequalityReport, GroupError> {
    let mut report = InequalityReport::default();
    let order = group.order()?;
    let k = group.class_count()? as u64;
    let reps: Vec<Permutation> = group.conjugacy_classes()?.representatives().to_vec();

    // One representative per conjugacy class of cyclic subgroups: ⟨r⟩ and
    // its conjugates give identical quotient and Ernest checks.
    let classes = group.conjugacy_classes()?;
    let elems = group.elements()?;
    let mut covered = vec![false; reps.len()];
    let mut cyclic_reps: Vec<&Permutation> = Vec::new();
    for (c, r) in reps.iter().enumerate() {
        if covered[c] {
            continue;
        }
        cyclic_reps.push(r);
        let o = r.order();
        let mut x = r.clone();
        for j in 1..=o {
            if num_integer::gcd(j, o) == 1 {
                covered[classes.class_of(elems.index_of(&x).expect("power lies in G"))] = true;
            }
            x = x.then(r);
        }
    }

    // A normal subgroup is a union of classes, which identifies it.
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for r in cyclic_reps.iter().filter(|r| !r.is_identity()) {
        let n = group.normal_closure(std::slice::from_ref(*r))?;
        let n_elems = n.elements()?;
        if n_elems.len() as u64 == order {
            continue;
        }
        let key: Vec<usize> = (0..reps.len()).filter(|&c| n_elems.contains(&reps[c])).collect();
        if !seen.insert(key) {
            continue;
        }
        let q = group.quotient(&n)?;
        report.checks.push(InequalityCheck::new("quotient", subject(&n), int(k), int(q.class_count()? as u64 + 1)));
    }
    if seen.is_empty() {
        report.skipped.push("quotient: no nontrivial proper normal closure of a class representative".into());
    }

    let ernest = |a: &PermutationGroup| -> Result<Ratio<u64>, GroupError> {
        let a_order = a.order()?;
        Ok(Ratio::new(a_order * a_order, order))
    };
    let center = group.center()?;
    report.checks.push(InequalityCheck::new("ernest_center", subject(&center), int(k), ernest(&center)?));
    for r in &cyclic_reps {
        let c = group.subgroup(vec![(*r).clone()])?;
        report.checks.push(InequalityCheck::new("ernest_cyclic", subject(&c), int(k), ernest(&c)?));
    }

    match affine_split(group)? {
        Some((h, v)) => {
            let n_hv = conjugation_orbits(&h, &v)?;
            let kh = h.class_count()? as u64;
            report.checks.push(InequalityCheck::new(
                "semidirect",
                subject(&h),
                int(k),
                int(kh + n_hv - 1),
            ));
            report.checks.push(InequalityCheck::new(
                "orbit",
                subject(&h),
                int(n_hv),
                Ratio::new(v.order()?, h.order()?),
            ));
        }
        None => report
            .skipped
            .push("semidirect: not a transitive group of prime degree with a normal regular subgroup".into()),
    }
    Ok(report)
}

/// `(H, V)` with `V` the normal Sylow subgroup of prime order `n = degree`
/// and `H` the stabilizer of point 1, when `G` is transitive of degree `n`.
fn affine_split(group: &PermutationGroup) -> Result<Option<(PermutationGroup, PermutationGroup)>, GroupError> {
    let n = group.degree() as u64;
    if !is_prime(n) || !group.is_transitive() {
        return Ok(None);
    }
    let v = group.sylow(n)?;
    if v.order()? != n || !group.is_normal(&v)? {
        return Ok(None);
    }
    let h = group.point_stabilizer(1)?;
    debug_assert_eq!(h.order()? * n, group.order()?);
    Ok(Some((h, v)))
}

/// Number of orbits of `H` acting on the elements of `V` by conjugation.
fn conjugation_orbits(h: &PermutationGroup, v: &PermutationGroup) -> Result<u64, GroupError> {
    let v_elems = v.elements()?;
    let mut seen = vec![false; v_elems.len()];
    let mut orbits = 0;
    for start in 0..v_elems.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in h.generators() {
                let j = v_elems
                    .index_of(&v_elems.get(i).conjugate_by(g))
                    .expect("V is normalized by H");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(orbits)
}
