//! Ordinary character degrees by the class-algebra method.
//!
//! The central characters `ω_χ(C) = |C|·χ(g_C)/χ(1)` are the common
//! eigenvectors of the class multiplication matrices. Working over `F_ℓ`
//! with `ℓ ≡ 1 (mod exp G)` every eigenvalue lies in the field, so the
//! class algebra splits into one-dimensional common eigenspaces. Each
//! eigenvector yields `χ(1)² = |G| / Σ_C ω(C)·ω(C⁻¹)/|C|` modulo `ℓ`, and
//! since `ℓ > 2√|G|` the degree is the unique integer in `1..=√|G|` with
//! that square.

mod field;
mod linalg;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CharacterError;
use crate::numtheory::{is_prime, isqrt};
use crate::permgroup::{ClassData, PermutationGroup};
pub use field::PrimeField;
use linalg::{charpoly, mat_vec, nullspace, rref, Matrix};

/// How many successive field primes are tried before giving up.
const FIELD_ATTEMPTS: usize = 8;

/// Size limits for character-table computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterCap {
    pub max_order: u64,
    /// Bound on `k(G)` for the eigenspace route; abelian groups bypass it
    /// when no character values are requested.
    pub max_classes: usize,
}

impl Default for CharacterCap {
    fn default() -> Self {
        CharacterCap { max_order: 10_000, max_classes: 512 }
    }
}

impl CharacterCap {
    pub fn admits(&self, group: &PermutationGroup) -> bool {
        let Ok(order) = group.order() else {
            return false;
        };
        order <= self.max_order
            && (group.is_abelian()
                || group.class_count().is_ok_and(|k| k <= self.max_classes))
    }
}

/// Structure constants of the class algebra:
/// `coefficient(i, j, t) = #{(x, y) ∈ C_i × C_j : xy = z_t}` for the fixed
/// representative `z_t` of class `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMultTable {
    k: usize,
    coefficients: Vec<u32>,
}

impl ClassMultTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, i: usize, j: usize, t: usize) -> u32 {
        self.coefficients[(i * self.k + j) * self.k + t]
    }
}

pub fn class_mult_table(
    group: &PermutationGroup,
    cap: &CharacterCap,
) -> Result<ClassMultTable, CharacterError> {
    let classes = group.conjugacy_classes()?;
    check_cap(group, classes, cap)?;
    let k = classes.k();
    let mut coefficients = vec![0u32; k * k * k];
    for i in 0..k {
        let col = class_column_counts(group, classes, i)?;
        for (j, row) in col.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                coefficients[(i * k + j) * k + t] = c;
            }
        }
    }
    Ok(ClassMultTable { k, coefficients })
}

fn check_cap(
    group: &PermutationGroup,
    classes: &ClassData,
    cap: &CharacterCap,
) -> Result<(), CharacterError> {
    let order = group.order()?;
    if order > cap.max_order || classes.k() > cap.max_classes {
        return Err(CharacterError::CapExceeded { order, classes: classes.k() });
    }
    Ok(())
}

/// `counts[i][t] = #{(x, y) ∈ C_j × C_i : xy = z_t}`.
fn class_column_counts(
    group: &PermutationGroup,
    classes: &ClassData,
    j: usize,
) -> Result<Vec<Vec<u32>>, CharacterError> {
    let elems = group.elements()?;
    let k = classes.k();
    let mut counts = vec![vec![0u32; k]; k];
    let inverses: Vec<_> = classes
        .members(j)
        .iter()
        .map(|&x| elems.get(x as usize).inverse())
        .collect();
    for (t, z) in classes.representatives().iter().enumerate() {
        for x_inv in &inverses {
            let y = x_inv.then(z);
            let idx = elems.index_of(&y).expect("product lies in the group");
            counts[classes.class_of(idx)][t] += 1;
        }
    }
    Ok(counts)
}

/// Character values reduced modulo the working prime, one row per
/// irreducible (in the same order as the degrees), one column per class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularValues {
    pub modulus: u64,
    pub rows: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub k: usize,
    /// Irreducible degrees, ascending.
    pub degrees: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<ModularValues>,
}

impl CharacterTable {
    /// Number of irreducible degrees not divisible by `p`.
    pub fn pprime_count(&self, p: u64) -> usize {
        self.degrees.iter().filter(|&&d| d % p != 0).count()
    }

    pub fn linear_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }
}

/// Degrees of the irreducible characters under the default cap.
pub fn character_table(group: &PermutationGroup) -> Result<CharacterTable, CharacterError> {
    character_table_with(group, &CharacterCap::default(), false)
}

/// Character table with optional modular values.
pub fn character_table_with(
    group: &PermutationGroup,
    cap: &CharacterCap,
    with_values: bool,
) -> Result<CharacterTable, CharacterError> {
    let order = group.order()?;
    if order > cap.max_order {
        let k = group.class_count()?;
        return Err(CharacterError::CapExceeded { order, classes: k });
    }
    if group.is_abelian() && !with_values {
        return Ok(CharacterTable { k: order as usize, degrees: vec![1; order as usize], values: None });
    }
    let classes = group.conjugacy_classes()?;
    check_cap(group, classes, cap)?;
    let exponent = group.exponent()?;

    let mut ell = first_field_prime(exponent, order);
    for _ in 0..FIELD_ATTEMPTS {
        if let Some(table) = dixon(group, classes, PrimeField::new(ell))? {
            return Ok(CharacterTable {
                k: table.degrees.len(),
                values: with_values.then(|| ModularValues { modulus: ell, rows: table.values.clone() }),
                degrees: table.degrees,
            });
        }
        ell = next_field_prime(ell, exponent);
    }
    Err(CharacterError::SplitFailed { attempts: FIELD_ATTEMPTS })
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|`.
pub fn first_field_prime(exponent: u64, order: u64) -> u64 {
    let floor = 2 * isqrt(order as u128) as u64; // ℓ > 2√|G| ⟸ ℓ > floor and ℓ² > 4|G|
    let mut ell = 1 + exponent * (floor / exponent);
    loop {
        if ell > floor && (ell as u128) * (ell as u128) > 4 * order as u128 && ell > 2 && is_prime(ell) {
            return ell;
        }
        ell += exponent;
    }
}

fn next_field_prime(ell: u64, exponent: u64) -> u64 {
    let mut next = ell + exponent;
    while !is_prime(next) {
        next += exponent;
    }
    next
}

struct ModularTable {
    degrees: Vec<u64>,
    values: Vec<Vec<u64>>,
}

/// A subspace of `F_ℓ^k` stored as reduced row echelon basis vectors.
struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    fn new(mut basis: Matrix, f: &PrimeField) -> Self {
        let pivots = rref(&mut basis, f);
        Subspace { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of `m` restricted to this (invariant) subspace, in the
    /// coordinates of the basis: since basis vector `s` is 1 at its own
    /// pivot and 0 at the others, coordinate `r` of `m·b_s` is read off at
    /// pivot `r`.
    fn restrict(&self, m: &Matrix, f: &PrimeField) -> Matrix {
        let d = self.dim();
        let mut x = vec![vec![0; d]; d];
        for (r, &pr) in self.pivots.iter().enumerate() {
            let row = &m[pr];
            for (s, b) in self.basis.iter().enumerate() {
                x[r][s] = row.iter().zip(b).fold(0, |acc, (&a, &c)| f.add(acc, f.mul(a, c)));
            }
        }
        x
    }

    fn lift(&self, coords: &[u64], f: &PrimeField) -> Vec<u64> {
        let k = self.basis[0].len();
        let mut v = vec![0; k];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        v
    }
}

/// Eigenspaces of a diagonalizable matrix, as coordinate bases, or `None`
/// if `x` does not split into eigenspaces over the field.
fn eigenspaces(x: &Matrix, f: &PrimeField, rng: &mut ChaCha8Rng) -> Option<Vec<Matrix>> {
    let d = x.len();
    let cp = charpoly(x, f);
    let roots = f.poly_roots(&cp);

    // Krylov vectors v, Xv, …, X^{d−1}v for a random v. For a simple root λ,
    // (f/(x−λ))(X)·v is a λ-eigenvector whenever v has a λ-component.
    let mut krylov: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut v: Vec<u64> = (0..d).map(|_| rng.random_range(0..f.modulus())).collect();
    for _ in 0..d {
        let next = mat_vec(x, &v, f);
        krylov.push(std::mem::replace(&mut v, next));
    }

    let mut spaces = Vec::with_capacity(roots.len());
    let mut total = 0;
    for &lambda in &roots {
        let (mult, _) = f.poly_deflate(&cp, lambda);
        let space = if mult == 1 {
            let (q, _) = f.poly_divmod(&cp, &[f.neg(lambda), 1]);
            let mut u = vec![0; d];
            for (c, kv) in q.iter().zip(&krylov) {
                if *c == 0 {
                    continue;
                }
                for (a, &b) in u.iter_mut().zip(kv) {
                    *a = f.add(*a, f.mul(*c, b));
                }
            }
            if u.iter().any(|&c| c != 0) {
                vec![u]
            } else {
                shifted_nullspace(x, lambda, f)
            }
        } else {
            shifted_nullspace(x, lambda, f)
        };
        if space.len() != mult {
            return None;
        }
        total += mult;
        spaces.push(space);
    }
    (total == d).then_some(spaces)
}

fn shifted_nullspace(x: &Matrix, lambda: u64, f: &PrimeField) -> Matrix {
    let mut shifted = x.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = f.sub(row[i], lambda);
    }
    nullspace(&shifted, f)
}

/// One attempt over a fixed field; `None` asks the caller for another prime.
fn dixon(
    group: &PermutationGroup,
    classes: &ClassData,
    f: PrimeField,
) -> Result<Option<ModularTable>, CharacterError> {
    let k = classes.k();
    let order = group.order()?;
    let mut rng = ChaCha8Rng::seed_from_u64(f.modulus());

    let identity: Matrix = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut done: Vec<Subspace> = Vec::new();
    let mut pending = vec![Subspace::new(identity, &f)];
    for j in 1..k {
        if pending.is_empty() {
            break;
        }
        let m: Matrix = class_column_counts(group, classes, j)?
            .into_iter()
            .map(|row| row.into_iter().map(|c| f.reduce(c as u64)).collect())
            .collect();
        let mut next = Vec::new();
        for space in pending {
            let x = space.restrict(&m, &f);
            let Some(parts) = eigenspaces(&x, &f, &mut rng) else {
                return Ok(None);
            };
            for coords in parts {
                let basis: Matrix = coords.iter().map(|c| space.lift(c, &f)).collect();
                let sub = Subspace::new(basis, &f);
                if sub.dim() == 1 {
                    done.push(sub);
                } else {
                    next.push(sub);
                }
            }
        }
        pending = next;
    }
    if !pending.is_empty() && !(k == 1 && pending.len() == 1) {
        return Ok(None);
    }
    done.extend(pending);

    let inverse_class: Vec<usize> = classes
        .representatives()
        .iter()
        .map(|r| {
            let idx = group.elements().ok()?.index_of(&r.inverse())?;
            Some(classes.class_of(idx))
        })
        .collect::<Option<_>>()
        .expect("inverses lie in the group");
    let size_inv: Vec<u64> = classes.sizes().iter().map(|&s| f.inv(f.reduce(s))).collect();
    let order_mod = f.reduce(order);
    let max_degree = isqrt(order as u128) as u64;

    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for space in done {
        let w = &space.basis[0];
        if w[0] == 0 {
            return Ok(None);
        }
        let scale = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&c| f.mul(c, scale)).collect();
        let norm = (0..k).fold(0, |acc, t| {
            f.add(acc, f.mul(f.mul(omega[t], omega[inverse_class[t]]), size_inv[t]))
        });
        if norm == 0 {
            return Ok(None);
        }
        let square = f.mul(order_mod, f.inv(norm));
        let Some(degree) = (1..=max_degree).find(|&d| f.mul(f.reduce(d), f.reduce(d)) == square)
        else {
            return Ok(None);
        };
        let values = (0..k)
            .map(|t| f.mul(f.mul(omega[t], f.reduce(degree)), size_inv[t]))
            .collect();
        rows.push((degree, values));
    }
    rows.sort();

    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    if degrees.len() != k
        || degrees.iter().map(|d| d * d).sum::<u64>() != order
        || degrees.iter().any(|d| order % d != 0)
    {
        return Ok(None);
    }
    let values: Vec<Vec<u64>> = rows.into_iter().map(|r| r.1).collect();
    if !orthonormal(&values, classes.sizes(), &inverse_class, order_mod, &f) {
        return Ok(None);
    }
    Ok(Some(ModularTable { degrees, values }))
}

/// First orthogonality relation modulo `ℓ`:
/// `Σ_t |C_t| χ_i(t) χ_j(t⁻¹) = |G| δ_ij`.
fn orthonormal(
    values: &[Vec<u64>],
    sizes: &[u64],
    inverse_class: &[usize],
    order_mod: u64,
    f: &PrimeField,
) -> bool {
    let k = values.len();
    for i in 0..k {
        for j in i..k {
            let s = (0..k).fold(0, |acc, t| {
                f.add(acc, f.mul(f.reduce(sizes[t]), f.mul(values[i][t], values[j][inverse_class[t]])))
            });
            if s != if i == j { order_mod } else { 0 } {
                return false;
            }
        }
    }
    true
}

/// `|Irr_{p'}(G)|`, the number of irreducible degrees prime to `p`.
pub fn irr_pprime_count(group: &PermutationGroup, p: u64) -> Result<usize, CharacterError> {
    irr_pprime_count_with(group, p, &CharacterCap::default())
}

pub fn irr_pprime_count_with(
    group: &PermutationGroup,
    p: u64,
    cap: &CharacterCap,
) -> Result<usize, CharacterError> {
    if !is_prime(p) {
        return Err(crate::error::GroupError::NotPrime(p).into());
    }
    Ok(character_table_with(group, cap, false)?.pprime_count(p))
}

/// Both sides of the McKay equality for a prime dividing `|G|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McKayCheck {
    pub p: u64,
    /// `|Irr_{p'}(G)|`.
    pub lhs: usize,
    /// `|Irr_{p'}(N_G(P))|`.
    pub rhs: usize,
    pub normalizer_order: u64,
    pub equal: bool,
}

pub fn mckay_verify(group: &PermutationGroup, p: u64) -> Result<McKayCheck, CharacterError> {
    mckay_verify_with(group, p, &CharacterCap::default())
}

pub fn mckay_verify_with(
    group: &PermutationGroup,
    p: u64,
    cap: &CharacterCap,
) -> Result<McKayCheck, CharacterError> {
    let order = group.order()?;
    if !is_prime(p) {
        return Err(crate::error::GroupError::NotPrime(p).into());
    }
    if order % p != 0 {
        return Err(crate::error::GroupError::PrimeDoesNotDivide { p, order }.into());
    }
    let sylow = group.sylow(p)?;
    let normalizer = group.normalizer(&sylow)?;
    let lhs = irr_pprime_count_with(group, p, cap)?;
    let rhs = irr_pprime_count_with(&normalizer, p, cap)?;
    Ok(McKayCheck { p, lhs, rhs, normalizer_order: normalizer.order()?, equal: lhs == rhs })
}
