use std::collections::VecDeque;

use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::GroupError;

const UNASSIGNED: u32 = u32::MAX;

/// Conjugacy class partition of a group.
///
/// Each class is represented by its lexicographically least element, and
/// classes are sorted by `(size, representative)`. The identity class is
/// therefore always class 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    representatives: Vec<Permutation>,
    sizes: Vec<u64>,
    /// Element indices (into the group's sorted element set) of each class.
    members: Vec<Vec<u32>>,
    /// Class index of each element index.
    class_of: Vec<u32>,
}

impl ClassData {
    /// Orbits of conjugation by the generators, found by breadth-first search.
    pub(crate) fn compute(group: &PermutationGroup) -> Result<Self, GroupError> {
        let elems = group.elements()?;
        let n = elems.len();

        let mut raw: Vec<Vec<u32>> = Vec::new();
        if group.is_abelian() {
            raw.extend((0..n as u32).map(|i| vec![i]));
        } else {
            let mut class_of = vec![UNASSIGNED; n];
            let mut queue = VecDeque::new();
            for start in 0..n {
                if class_of[start] != UNASSIGNED {
                    continue;
                }
                let id = raw.len() as u32;
                class_of[start] = id;
                let mut members = vec![start as u32];
                queue.push_back(start);
                while let Some(i) = queue.pop_front() {
                    let x = elems.get(i);
                    for g in group.generators() {
                        let y = x.conjugate_by(g);
                        let j = elems.index_of(&y).expect("conjugate lies in the group");
                        if class_of[j] == UNASSIGNED {
                            class_of[j] = id;
                            members.push(j as u32);
                            queue.push_back(j);
                        }
                    }
                }
                members.sort_unstable();
                raw.push(members);
            }
        }

        // Element indices follow lexicographic order, so the first member of
        // each (sorted) class is its least element.
        raw.sort_by_key(|m| (m.len(), m[0]));
        let mut class_of = vec![0u32; n];
        for (c, members) in raw.iter().enumerate() {
            for &i in members {
                class_of[i as usize] = c as u32;
            }
        }
        Ok(ClassData {
            representatives: raw.iter().map(|m| elems.get(m[0] as usize).clone()).collect(),
            sizes: raw.iter().map(|m| m.len() as u64).collect(),
            members: raw,
            class_of,
        })
    }

    /// Number of classes, `k(G)`.
    pub fn k(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn members(&self, class: usize) -> &[u32] {
        &self.members[class]
    }

    /// Class index of the element at `element_index` in the sorted element set.
    pub fn class_of(&self, element_index: usize) -> usize {
        self.class_of[element_index] as usize
    }
}
