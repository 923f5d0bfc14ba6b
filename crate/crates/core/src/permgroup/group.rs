use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use super::classes::ClassData;
use super::perm::Permutation;
use crate::error::GroupError;

/// Default bound on the number of elements a closure may enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 2_000_000;

/// The elements of a group, sorted lexicographically by image sequence and
/// indexed for constant-time membership lookup.
#[derive(Debug)]
pub struct ElementSet {
    set: IndexSet<Permutation, FxBuildHasher>,
}

impl ElementSet {
    fn from_sorted(set: IndexSet<Permutation, FxBuildHasher>) -> Self {
        ElementSet { set }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn get(&self, index: usize) -> &Permutation {
        &self.set[index]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.set.get_index_of(g)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.set.contains(g)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Permutation> + '_ {
        self.set.iter()
    }

    pub fn to_vec(&self) -> Vec<Permutation> {
        self.set.iter().cloned().collect()
    }
}

/// A finitely generated group of permutations of `1..=degree`.
///
/// Handles are immutable. The element list and class partition are computed
/// on first use and cached; clones share those caches.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    cap: usize,
    elements: OnceLock<Arc<ElementSet>>,
    classes: OnceLock<Arc<ClassData>>,
}

impl PermutationGroup {
    /// The group generated by `gens` on `degree` points.
    ///
    /// Identity generators and repeats are dropped; an empty list gives the
    /// trivial group.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let mut generators: Vec<Permutation> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
            }
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            cap: DEFAULT_ENUMERATION_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Result<Self, GroupError> {
        Self::new(degree, Vec::new())
    }

    /// Replaces the enumeration cap. Cached data is kept when it fits.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        if self.elements.get().is_some_and(|e| e.len() > cap) {
            self.elements = OnceLock::new();
            self.classes = OnceLock::new();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn order(&self) -> Result<u64, GroupError> {
        Ok(self.elements()?.len() as u64)
    }

    /// All elements, sorted by image sequence; the identity comes first.
    pub fn elements(&self) -> Result<&ElementSet, GroupError> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let set = closure(self.degree, &self.generators, self.cap)?;
        let _ = self.elements.set(Arc::new(set));
        Ok(self.elements.get().expect("just initialized"))
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool, GroupError> {
        if g.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.elements()?.contains(g))
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> Result<bool, GroupError> {
        if other.degree != self.degree {
            return Ok(false);
        }
        let elems = self.elements()?;
        Ok(other.generators.iter().all(|g| elems.contains(g)))
    }

    pub(crate) fn require_subgroup(&self, other: &PermutationGroup) -> Result<(), GroupError> {
        if self.contains_group(other)? {
            Ok(())
        } else {
            Err(GroupError::NotSubgroup)
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn conjugacy_classes(&self) -> Result<&ClassData, GroupError> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let data = ClassData::compute(self)?;
        let _ = self.classes.set(Arc::new(data));
        Ok(self.classes.get().expect("just initialized"))
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> Result<usize, GroupError> {
        Ok(self.conjugacy_classes()?.k())
    }

    /// Subgroup handle over a sorted element list known to form a group.
    ///
    /// The element cache is filled directly and a generating set is chosen
    /// greedily: scanning in sorted order, each element not yet generated is
    /// adjoined.
    pub(crate) fn from_sorted_elements(
        degree: usize,
        cap: usize,
        elements: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span = closure(degree, &gens, cap)?;
        for g in &elements {
            if span.len() == elements.len() {
                break;
            }
            if !span.contains(g) {
                gens.push(g.clone());
                span = closure(degree, &gens, cap)?;
            }
        }
        debug_assert_eq!(span.len(), elements.len());
        let set: IndexSet<Permutation, FxBuildHasher> = elements.into_iter().collect();
        let group = PermutationGroup {
            degree,
            generators: gens,
            cap,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        };
        let _ = group.elements.set(Arc::new(ElementSet::from_sorted(set)));
        Ok(group)
    }

    /// Subgroup generated by `gens`, inheriting this group's cap.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermutationGroup, GroupError> {
        Ok(PermutationGroup::new(self.degree, gens)?.with_cap(self.cap))
    }

    /// Subgroup consisting of the elements satisfying `pred`, which the
    /// caller guarantees is closed under multiplication.
    pub(crate) fn filter_subgroup<F>(&self, pred: F) -> Result<PermutationGroup, GroupError>
    where
        F: Fn(&Permutation) -> bool,
    {
        let elems: Vec<Permutation> = self.elements()?.iter().filter(|g| pred(g)).cloned().collect();
        Self::from_sorted_elements(self.degree, self.cap, elems)
    }
}

/// Breadth-first closure of `gens` under right multiplication, sorted.
fn closure(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<ElementSet, GroupError> {
    let mut set: IndexSet<Permutation, FxBuildHasher> = IndexSet::default();
    set.insert(Permutation::identity(degree));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let next = set[i].then(g);
            if !set.contains(&next) {
                if set.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                set.insert(next);
                queue.push_back(set.len() - 1);
            }
        }
    }
    set.sort_unstable();
    Ok(ElementSet::from_sorted(set))
}
