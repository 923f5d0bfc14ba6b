//! Builders for the group families used throughout the crate.
//!
//! Point labelling conventions:
//! - cyclic, dihedral and affine groups act on residues `0..n−1`, written as
//!   points `1..n` (residue `r` is point `r+1`);
//! - `PSL(2,p)` acts on the projective line with residues `0..p−1` as points
//!   `1..p` and `∞` as point `p+1`.

use std::fmt;
use std::str::FromStr;

use crate::error::GroupError;
use crate::numtheory::{balanced_divisor_pair, is_prime, pow_mod, primitive_root};
use crate::permgroup::{Permutation, PermutationGroup};

/// A member of one of the standard families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Components act on consecutive disjoint point blocks.
    DirectProduct(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::InvalidParameter(msg));
        match self {
            FamilySpec::Cyclic(0) => bad("cyclic needs n >= 1".into()),
            FamilySpec::Dihedral(n) if *n < 3 => bad(format!("dihedral needs n >= 3, got {n}")),
            FamilySpec::Symmetric(0) => bad("symmetric needs n >= 1".into()),
            FamilySpec::Alternating(0) => bad("alternating needs n >= 1".into()),
            FamilySpec::DirectProduct(parts) if parts.is_empty() => {
                bad("direct product needs at least one factor".into())
            }
            FamilySpec::DirectProduct(parts) => parts.iter().try_for_each(|p| p.validate()),
            _ => Ok(()),
        }
    }

    /// Group order from the closed formula, saturating on overflow.
    pub fn order(&self) -> u64 {
        let factorial = |n: usize| (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i));
        match self {
            FamilySpec::Cyclic(n) => *n as u64,
            FamilySpec::Dihedral(n) => 2 * *n as u64,
            FamilySpec::Symmetric(n) => factorial(*n).unwrap_or(u64::MAX),
            FamilySpec::Alternating(n) if *n <= 1 => 1,
            FamilySpec::Alternating(n) => factorial(*n).map_or(u64::MAX, |f| f / 2),
            FamilySpec::DirectProduct(parts) => parts
                .iter()
                .try_fold(1u64, |acc, p| acc.checked_mul(p.order()))
                .unwrap_or(u64::MAX),
        }
    }

    fn degree(&self) -> usize {
        match self {
            FamilySpec::Cyclic(n)
            | FamilySpec::Dihedral(n)
            | FamilySpec::Symmetric(n)
            | FamilySpec::Alternating(n) => *n,
            FamilySpec::DirectProduct(parts) => parts.iter().map(FamilySpec::degree).sum(),
        }
    }
}

/// Short labels: `C5`, `D7` (order 14), `S4`, `A5`, `C7xC2`.
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "C{n}"),
            FamilySpec::Dihedral(n) => write!(f, "D{n}"),
            FamilySpec::Symmetric(n) => write!(f, "S{n}"),
            FamilySpec::Alternating(n) => write!(f, "A{n}"),
            FamilySpec::DirectProduct(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    if matches!(p, FamilySpec::DirectProduct(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Parses `cyclic:N`, `dihedral:N`, `symmetric:N`, `alternating:N`, and
/// direct products of those joined by `*`.
impl FromStr for FamilySpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| p.parse()).collect::<Result<Vec<_>, _>>()?;
            let spec = FamilySpec::DirectProduct(factors);
            spec.validate()?;
            return Ok(spec);
        }
        let bad = || GroupError::InvalidParameter(format!("unrecognized family spec `{s}`"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = arg.trim().parse().map_err(|_| bad())?;
        let spec = match name.trim() {
            "cyclic" => FamilySpec::Cyclic(n),
            "dihedral" => FamilySpec::Dihedral(n),
            "symmetric" => FamilySpec::Symmetric(n),
            "alternating" => FamilySpec::Alternating(n),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn from_images(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("family generators are bijections")
}

fn family_generators(spec: &FamilySpec) -> Vec<Permutation> {
    let n = spec.degree();
    let rotation = || from_images((0..n as u32).map(|x| (x + 1) % n as u32).collect());
    match spec {
        FamilySpec::Cyclic(1) | FamilySpec::Symmetric(1) => Vec::new(),
        FamilySpec::Cyclic(_) => vec![rotation()],
        FamilySpec::Dihedral(_) => {
            let reflection = from_images((0..n as u32).map(|x| (n as u32 - x) % n as u32).collect());
            vec![rotation(), reflection]
        }
        FamilySpec::Symmetric(_) => {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            vec![rotation(), from_images(t)]
        }
        FamilySpec::Alternating(n) if *n <= 2 => Vec::new(),
        FamilySpec::Alternating(_) => (3..=n)
            .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]).expect("valid 3-cycle"))
            .collect(),
        FamilySpec::DirectProduct(parts) => {
            let mut gens = Vec::new();
            let mut offset = 0usize;
            for part in parts {
                let d = part.degree();
                for g in family_generators(part) {
                    let mut images: Vec<u32> = (0..n as u32).collect();
                    for x in 0..d {
                        images[offset + x] = (offset + g.apply(x)) as u32;
                    }
                    gens.push(from_images(images));
                }
                offset += d;
            }
            gens
        }
    }
}

/// Standard permutation representation of a family member.
pub fn build_family(spec: &FamilySpec) -> Result<PermutationGroup, GroupError> {
    spec.validate()?;
    PermutationGroup::new(spec.degree(), family_generators(spec))
}

fn require_prime(p: u64) -> Result<(), GroupError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// The translation `x ↦ x + 1` on `Z_p`.
pub fn translation(p: u64) -> Permutation {
    from_images((0..p as u32).map(|x| (x + 1) % p as u32).collect())
}

/// `C_p ⋊ C_m` as the affine maps `x ↦ ux + v` on `Z_p`, with `u` in the
/// order-`m` subgroup `⟨g^((p−1)/m)⟩` for the least primitive root `g`.
pub fn cp_semidirect(p: u64, m: u64) -> Result<PermutationGroup, GroupError> {
    require_prime(p)?;
    if m == 0 || (p - 1) % m != 0 {
        return Err(GroupError::InvalidParameter(format!("{m} does not divide {}", p - 1)));
    }
    let mut gens = vec![translation(p)];
    if m > 1 {
        let w = pow_mod(primitive_root(p)?, (p - 1) / m, p);
        gens.push(from_images((0..p).map(|x| (w * x % p) as u32).collect()));
    }
    PermutationGroup::new(p as usize, gens)
}

/// Label for `cp_semidirect(p, m)`.
pub fn semidirect_label(p: u64, m: u64) -> String {
    format!("C{p}:C{m}")
}

/// `k(C_p ⋊ C_c) = c + (p−1)/c` for a faithful action.
pub fn k_frobenius_metacyclic(p: u64, c: u64) -> Result<u64, GroupError> {
    require_prime(p)?;
    if c == 0 || (p - 1) % c != 0 {
        return Err(GroupError::InvalidParameter(format!("{c} does not divide {}", p - 1)));
    }
    Ok(c + (p - 1) / c)
}

/// The two conjectured minimizers of `k(G)` among groups of order divisible by `p`.
#[derive(Debug, Clone)]
pub struct ExtremalPair {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    /// `C_p ⋊ C_a`, the smaller of the two.
    pub k: PermutationGroup,
    /// `C_p ⋊ C_b`.
    pub l: PermutationGroup,
}

pub fn extremal_pair(p: u64) -> Result<ExtremalPair, GroupError> {
    let (a, b) = balanced_divisor_pair(p)?;
    Ok(ExtremalPair {
        p,
        a,
        b,
        k: cp_semidirect(p, a)?,
        l: cp_semidirect(p, b)?,
    })
}

/// `PSL(2,p)` on the `p+1` points of the projective line, generated by
/// `x ↦ x+1` and `x ↦ −1/x`.
pub fn psl2(p: u64) -> Result<PermutationGroup, GroupError> {
    require_prime(p)?;
    if p < 5 {
        return Err(GroupError::InvalidParameter(format!("PSL(2,{p}) needs p >= 5")));
    }
    let infinity = p as u32;
    let mut shift: Vec<u32> = (0..p as u32).map(|x| (x + 1) % p as u32).collect();
    shift.push(infinity);
    let mut invert = vec![0u32; p as usize + 1];
    invert[0] = infinity;
    invert[p as usize] = 0;
    for x in 1..p {
        let inv = pow_mod(x, p - 2, p);
        invert[x as usize] = ((p - inv) % p) as u32;
    }
    PermutationGroup::new(p as usize + 1, vec![from_images(shift), from_images(invert)])
}

pub fn psl2_label(p: u64) -> String {
    format!("PSL(2,{p})")
}
