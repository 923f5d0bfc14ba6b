//! Subgroup constructions on top of full element enumeration.

use std::collections::VecDeque;

use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::GroupError;
use crate::numtheory::{is_prime, p_part};

impl PermutationGroup {
    /// `{g ∈ G : gs = sg for every s ∈ S}`.
    pub fn centralizer(&self, s: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
        self.require_subgroup(s)?;
        let gens = s.generators().to_vec();
        self.filter_subgroup(|g| gens.iter().all(|x| g.commutes_with(x)))
    }

    /// `Z(G)`.
    pub fn center(&self) -> Result<PermutationGroup, GroupError> {
        self.centralizer(self)
    }

    /// `{g ∈ G : gHg⁻¹ = H}`.
    pub fn normalizer(&self, h: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
        self.require_subgroup(h)?;
        let h_elems = h.elements()?;
        let h_gens = h.generators();
        self.filter_subgroup(|g| h_gens.iter().all(|x| h_elems.contains(&x.conjugate_by(g))))
    }

    pub fn is_normal(&self, n: &PermutationGroup) -> Result<bool, GroupError> {
        self.require_subgroup(n)?;
        let n_elems = n.elements()?;
        Ok(self
            .generators()
            .iter()
            .all(|g| n.generators().iter().all(|x| n_elems.contains(&x.conjugate_by(g)))))
    }

    /// Smallest normal subgroup of `G` containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> Result<PermutationGroup, GroupError> {
        let mut current = self.subgroup(gens.to_vec())?;
        'grow: loop {
            let elems = current.elements()?;
            for g in self.generators() {
                for x in current.generators() {
                    let c = x.conjugate_by(g);
                    if !elems.contains(&c) {
                        let mut next = current.generators().to_vec();
                        next.push(c);
                        current = self.subgroup(next)?;
                        continue 'grow;
                    }
                }
            }
            return Ok(current);
        }
    }

    /// `[G, G]`, the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermutationGroup, GroupError> {
        let gens = self.generators();
        let mut commutators = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = &(&(&a.inverse() * &b.inverse()) * a) * b;
                if !c.is_identity() {
                    commutators.push(c);
                }
            }
        }
        self.normal_closure(&commutators)
    }

    /// Whether the derived series reaches the trivial group.
    pub fn is_solvable(&self) -> Result<bool, GroupError> {
        let mut current = self.clone();
        loop {
            if current.is_trivial() || current.order()? == 1 {
                return Ok(true);
            }
            let next = current.derived_subgroup()?;
            if next.order()? == current.order()? {
                return Ok(false);
            }
            current = next;
        }
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> Result<u64, GroupError> {
        let classes = self.conjugacy_classes()?;
        Ok(classes
            .representatives()
            .iter()
            .fold(1, |acc, r| num_integer_lcm(acc, r.order())))
    }

    pub fn is_cyclic(&self) -> Result<bool, GroupError> {
        let n = self.order()?;
        Ok(self.generators().len() <= 1 || self.elements()?.iter().any(|g| g.order() == n))
    }

    /// Stabilizer of a 1-based point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermutationGroup, GroupError> {
        if point == 0 || point > self.degree() {
            return Err(GroupError::PointOutOfRange { point, degree: self.degree() });
        }
        self.filter_subgroup(|g| g.apply(point - 1) == point - 1)
    }

    /// Orbit partition of `1..=domain_size`, each orbit sorted, orbits
    /// ordered by their least point.
    pub fn orbits(&self, domain_size: usize) -> Result<Vec<Vec<usize>>, GroupError> {
        if domain_size != self.degree() {
            return Err(GroupError::DegreeMismatch { expected: self.degree(), found: domain_size });
        }
        let mut seen = vec![false; domain_size];
        let mut out = Vec::new();
        for start in 0..domain_size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start + 1];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in self.generators() {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y + 1);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits(self.degree()).map(|o| o.len() == 1).unwrap_or(false)
    }

    /// `G/N` as the permutation action of `G` on the right cosets of `N`.
    ///
    /// Cosets are numbered by their least element in the sorted order of `G`.
    pub fn quotient(&self, n: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
        if !self.is_normal(n)? {
            return Err(GroupError::NotNormal);
        }
        let elems = self.elements()?;
        let n_elems = n.elements()?;
        let index = elems.len() / n_elems.len();
        let mut coset_of = vec![u32::MAX; elems.len()];
        let mut reps: Vec<usize> = Vec::with_capacity(index);
        for i in 0..elems.len() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            let g = elems.get(i);
            for x in n_elems.iter() {
                let j = elems.index_of(&x.then(g)).expect("coset element lies in G");
                coset_of[j] = c;
            }
        }
        debug_assert_eq!(reps.len(), index);
        let mut gens = Vec::new();
        for g in self.generators() {
            let images: Vec<u32> = reps
                .iter()
                .map(|&r| {
                    let j = elems.index_of(&elems.get(r).then(g)).expect("product lies in G");
                    coset_of[j]
                })
                .collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        Ok(PermutationGroup::new(index, gens)?.with_cap(self.cap()))
    }

    /// A Sylow `p`-subgroup.
    ///
    /// Starts from the lexicographically least element of largest `p`-power
    /// order, then repeatedly adjoins the least `p`-element of the normalizer
    /// that lies outside the current subgroup.
    pub fn sylow(&self, p: u64) -> Result<PermutationGroup, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let target = p_part(self.order()?, p);
        if target == 1 {
            return PermutationGroup::trivial(self.degree()).map(|g| g.with_cap(self.cap()));
        }
        let is_p_element = |g: &Permutation| is_power_of(g.order(), p);
        let start = self
            .elements()?
            .iter()
            .filter(|g| is_p_element(g))
            .max_by(|a, b| a.order().cmp(&b.order()).then_with(|| b.cmp(a)))
            .expect("identity is a p-element")
            .clone();
        let mut sub = self.subgroup(vec![start])?;
        while sub.order()? < target {
            let norm = self.normalizer(&sub)?;
            let sub_elems = sub.elements()?;
            let x = norm
                .elements()?
                .iter()
                .find(|g| is_p_element(g) && !sub_elems.contains(g))
                .expect("a proper p-subgroup has a p-element in its normalizer outside it")
                .clone();
            let mut gens = sub.generators().to_vec();
            gens.push(x);
            sub = self.subgroup(gens)?;
        }
        Ok(sub)
    }

    /// Frobenius test on the set of moved points: transitive, nontrivial
    /// point stabilizers, and no non-identity element fixing two moved points.
    pub fn is_frobenius_transitive(&self) -> Result<bool, GroupError> {
        let mut moved = vec![false; self.degree()];
        for g in self.generators() {
            for x in g.moved_points() {
                moved[x] = true;
            }
        }
        let Some(first) = moved.iter().position(|&m| m) else {
            return Ok(false);
        };
        let orbit = self
            .orbits(self.degree())?
            .into_iter()
            .find(|o| o.contains(&(first + 1)))
            .expect("every point has an orbit");
        if orbit.len() != moved.iter().filter(|&&m| m).count() {
            return Ok(false);
        }
        let mut stabilizer_nontrivial = false;
        for g in self.elements()?.iter().skip(1) {
            let fixed = (0..self.degree()).filter(|&x| moved[x] && g.apply(x) == x).count();
            if fixed >= 2 {
                return Ok(false);
            }
            stabilizer_nontrivial |= fixed == 1;
        }
        Ok(stabilizer_nontrivial)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, &c.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s(n: usize) -> PermutationGroup {
        let long: Vec<usize> = (1..=n).collect();
        PermutationGroup::new(n, vec![perm(n, &[&long]), perm(n, &[&[1, 2]])]).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let s3 = s(3);
        let c3 = s3.subgroup(vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(s3.centralizer(&c3).unwrap().order().unwrap(), 3);

        let outside = PermutationGroup::new(3, vec![perm(3, &[&[1, 2]])]).unwrap();
        let c3_alone = PermutationGroup::new(3, vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(c3_alone.centralizer(&outside).unwrap_err(), GroupError::NotSubgroup);

        // C7 x C2 on 9 points is abelian: the centralizer of anything is everything.
        let g = PermutationGroup::new(
            9,
            vec![perm(9, &[&[1, 2, 3, 4, 5, 6, 7]]), perm(9, &[&[8, 9]])],
        )
        .unwrap();
        let c7 = g.subgroup(vec![perm(9, &[&[1, 2, 3, 4, 5, 6, 7]])]).unwrap();
        assert_eq!(g.centralizer(&c7).unwrap().order().unwrap(), 14);
    }

    #[test]
    fn sylow_examples() {
        assert_eq!(s(4).sylow(2).unwrap().order().unwrap(), 8);
        assert_eq!(s(3).sylow(3).unwrap().order().unwrap(), 3);
        let c5 = PermutationGroup::new(5, vec![perm(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(c5.sylow(7).unwrap().order().unwrap(), 1);
        assert_eq!(c5.sylow(4).unwrap_err(), GroupError::NotPrime(4));
        assert_eq!(s(5).sylow(2).unwrap().order().unwrap(), 8);
        assert_eq!(s(6).sylow(3).unwrap().order().unwrap(), 9);
    }

    #[test]
    fn normalizer_examples() {
        let s3 = s(3);
        let c3 = s3.subgroup(vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(s3.normalizer(&c3).unwrap().order().unwrap(), 6);
        let s4 = s(4);
        let p = s4.sylow(2).unwrap();
        assert_eq!(s4.normalizer(&p).unwrap().order().unwrap(), 8);
        assert_eq!(s4.normalizer(&s4).unwrap().order().unwrap(), 24);
    }

    #[test]
    fn normality() {
        let s3 = s(3);
        let a3 = s3.subgroup(vec![perm(3, &[&[1, 2, 3]])]).unwrap();
        let t = s3.subgroup(vec![perm(3, &[&[1, 2]])]).unwrap();
        assert!(s3.is_normal(&a3).unwrap());
        assert!(!s3.is_normal(&t).unwrap());
        assert!(s3.is_normal(&PermutationGroup::trivial(3).unwrap()).unwrap());
        assert_eq!(s3.quotient(&t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn quotient_examples() {
        let s4 = s(4);
        let v4 = s4
            .subgroup(vec![perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])])
            .unwrap();
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.order().unwrap(), 6);
        assert_eq!(q.class_count().unwrap(), 3);

        let q = s4.quotient(&PermutationGroup::trivial(4).unwrap()).unwrap();
        assert_eq!(q.order().unwrap(), 24);
        assert_eq!(q.class_count().unwrap(), 5);

        let c6 = PermutationGroup::new(6, vec![perm(6, &[&[1, 2, 3, 4, 5, 6]])]).unwrap();
        let c2 = c6.subgroup(vec![perm(6, &[&[1, 2, 3, 4, 5, 6]]).pow(3)]).unwrap();
        let q = c6.quotient(&c2).unwrap();
        assert_eq!(q.order().unwrap(), 3);
        assert_eq!(q.class_count().unwrap(), 3);
    }

    #[test]
    fn frobenius_examples() {
        let d5 = PermutationGroup::new(
            5,
            vec![perm(5, &[&[1, 2, 3, 4, 5]]), perm(5, &[&[2, 5], &[3, 4]])],
        )
        .unwrap();
        assert!(d5.is_frobenius_transitive().unwrap());
        assert!(!s(4).is_frobenius_transitive().unwrap());
        let c5 = PermutationGroup::new(5, vec![perm(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert!(!c5.is_frobenius_transitive().unwrap());
        // extra fixed points outside the moved support are ignored
        let d5_on_7 = PermutationGroup::new(
            7,
            vec![perm(7, &[&[1, 2, 3, 4, 5]]), perm(7, &[&[2, 5], &[3, 4]])],
        )
        .unwrap();
        assert!(d5_on_7.is_frobenius_transitive().unwrap());
        let intransitive = PermutationGroup::new(6, vec![perm(6, &[&[1, 2, 3]]), perm(6, &[&[4, 5, 6]])]).unwrap();
        assert!(!intransitive.is_frobenius_transitive().unwrap());
    }

    #[test]
    fn orbits_of_multiplication_by_two_mod_seven() {
        // point i+1 is residue i
        let images: Vec<u32> = (0..7u32).map(|x| (2 * x) % 7).collect();
        let h = PermutationGroup::new(7, vec![Permutation::from_images(images).unwrap()]).unwrap();
        let orbits = h.orbits(7).unwrap();
        assert_eq!(orbits, vec![vec![1], vec![2, 3, 5], vec![4, 6, 7]]);
        assert_eq!(PermutationGroup::trivial(4).unwrap().orbits(4).unwrap().len(), 4);
        assert_eq!(s(5).orbits(5).unwrap().len(), 1);
        assert!(h.orbits(6).is_err());
    }

    #[test]
    fn derived_series() {
        assert_eq!(s(4).derived_subgroup().unwrap().order().unwrap(), 12);
        assert!(s(4).is_solvable().unwrap());
        assert!(!s(5).is_solvable().unwrap());
        assert_eq!(s(5).center().unwrap().order().unwrap(), 1);
        assert_eq!(s(4).exponent().unwrap(), 12);
    }
}
