//! Deterministic Schreier–Sims: a base and strong generating set with
//! explicit transversals, giving exact group orders and membership tests.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::{compose_into, orbit_partition, OrbitPartition, Permutation};
use crate::Error;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Indices into the strong generating set.
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// Orbit position of each point, or `NONE`.
    pos: Vec<u32>,
    /// Flattened `u_b` (maps the base point to `b`), one row per orbit position.
    reps: Vec<u32>,
    /// Flattened `u_b^{-1}`.
    reps_inv: Vec<u32>,
    /// Per orbit position, how many of `gens` have had their Schreier
    /// generator sifted successfully.
    checked: Vec<u32>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = alloc::vec![NONE; degree];
        pos[base as usize] = 0;
        let id: Vec<u32> = (0..degree as u32).collect();
        Level {
            base,
            gens: Vec::new(),
            orbit: alloc::vec![base],
            pos,
            reps: id.clone(),
            reps_inv: id,
            checked: alloc::vec![0],
        }
    }

    #[inline]
    fn rep(&self, p: usize, d: usize) -> &[u32] {
        &self.reps[p * d..(p + 1) * d]
    }

    #[inline]
    fn rep_inv(&self, p: usize, d: usize) -> &[u32] {
        &self.reps_inv[p * d..(p + 1) * d]
    }

    /// Extends the orbit and transversal under all of `gens`. Existing
    /// transversal entries stay as they are.
    fn close_orbit(&mut self, strong: &[Permutation], d: usize) {
        let mut p = 0;
        let mut row = alloc::vec![0u32; d];
        while p < self.orbit.len() {
            let b = self.orbit[p];
            for &gi in &self.gens {
                let s = &strong[gi as usize];
                let c = s.image(b);
                if self.pos[c as usize] != NONE {
                    continue;
                }
                compose_into(&self.reps[p * d..(p + 1) * d], s.images(), &mut row);
                self.pos[c as usize] = self.orbit.len() as u32;
                self.orbit.push(c);
                self.reps.extend_from_slice(&row);
                let start = self.reps_inv.len();
                self.reps_inv.resize(start + d, 0);
                for (x, &y) in row.iter().enumerate() {
                    self.reps_inv[start + y as usize] = x as u32;
                }
                self.checked.push(0);
            }
            p += 1;
        }
    }
}

/// A permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Runs Schreier–Sims on `generators`, which must all have degree `degree`.
    pub fn new(degree: usize, generators: &[Permutation]) -> Result<Self, Error> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch);
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut group = PermGroup {
            degree,
            generators: generators.to_vec(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        group.schreier_sims(gens);
        Ok(group)
    }

    /// Generators as given, identities included.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn orbits(&self) -> OrbitPartition {
        orbit_partition(self.degree, &self.generators)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.images().to_vec();
        let mut tmp = alloc::vec![0u32; self.degree];
        let level = self.sift(&mut h, &mut tmp, 0);
        level == self.levels.len() && is_identity(&h)
    }

    /// Re-sifts every Schreier generator at every level.
    pub fn verify(&self) -> bool {
        let d = self.degree;
        let mut g = alloc::vec![0u32; d];
        let mut tmp = alloc::vec![0u32; d];
        for (i, level) in self.levels.iter().enumerate() {
            for p in 0..level.orbit.len() {
                for &gi in &level.gens {
                    if self.schreier_generator(i, p, gi as usize, &mut g, &mut tmp) {
                        let l = self.sift(&mut g, &mut tmp, i + 1);
                        if l != self.levels.len() || !is_identity(&g) {
                            return false;
                        }
                    }
                }
            }
        }
        self.generators.iter().all(|g| self.contains(g))
    }

    /// Strips `h` through levels `start..`; returns the level at which the
    /// image of the base point left the basic orbit, or `levels.len()`.
    fn sift(&self, h: &mut Vec<u32>, tmp: &mut Vec<u32>, start: usize) -> usize {
        let d = self.degree;
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let b = h[level.base as usize];
            let p = level.pos[b as usize];
            if p == NONE {
                return l;
            }
            if p != 0 {
                compose_into(h, level.rep_inv(p as usize, d), tmp);
                core::mem::swap(h, tmp);
            }
        }
        self.levels.len()
    }

    /// Writes `u_b · s · u_{s(b)}^{-1}` into `out`; false if it is trivially
    /// the identity.
    fn schreier_generator(&self, i: usize, p: usize, gi: usize, out: &mut [u32], tmp: &mut [u32]) -> bool {
        let d = self.degree;
        let level = &self.levels[i];
        let s = &self.strong[gi];
        compose_into(level.rep(p, d), s.images(), tmp);
        let c = s.image(level.orbit[p]);
        let q = level.pos[c as usize] as usize;
        if tmp == level.rep(q, d) {
            return false;
        }
        compose_into(tmp, level.rep_inv(q, d), out);
        true
    }

    fn add_strong(&mut self, g: Permutation, levels: core::ops::RangeInclusive<usize>) {
        let d = self.degree;
        let idx = self.strong.len() as u32;
        if *levels.end() == self.levels.len() {
            let b = g.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(b, d));
        }
        self.strong.push(g);
        for l in levels {
            self.levels[l].gens.push(idx);
            let strong = &self.strong;
            self.levels[l].close_orbit(strong, d);
        }
    }

    fn schreier_sims(&mut self, gens: Vec<Permutation>) {
        let d = self.degree;
        if gens.is_empty() {
            return;
        }
        // initial base: every generator moves some base point
        let mut base: Vec<u32> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        for &b in &base {
            self.levels.push(Level::new(b, d));
        }
        for g in gens {
            let idx = self.strong.len() as u32;
            let fixes = self.levels.iter().take_while(|l| g.image(l.base) == l.base).count();
            self.strong.push(g);
            for l in 0..=fixes.min(self.levels.len() - 1) {
                self.levels[l].gens.push(idx);
            }
        }
        for l in 0..self.levels.len() {
            let strong = &self.strong;
            self.levels[l].close_orbit(strong, d);
        }
        let mut h = alloc::vec![0u32; d];
        let mut tmp = alloc::vec![0u32; d];
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let mut p = 0;
            while p < self.levels[iu].orbit.len() {
                loop {
                    let level = &self.levels[iu];
                    let k = level.checked[p] as usize;
                    if k >= level.gens.len() {
                        break;
                    }
                    let gi = level.gens[k] as usize;
                    if self.schreier_generator(iu, p, gi, &mut h, &mut tmp) {
                        let j = self.sift(&mut h, &mut tmp, iu + 1);
                        if j < self.levels.len() || !is_identity(&h) {
                            let residue = Permutation::from_images_unchecked(h.clone());
                            self.add_strong(residue, iu + 1..=j);
                            i = j as isize;
                            continue 'outer;
                        }
                    }
                    self.levels[iu].checked[p] += 1;
                }
                p += 1;
            }
            i -= 1;
        }
    }
}

#[inline]
fn is_identity(h: &[u32]) -> bool {
    h.iter().enumerate().all(|(x, &y)| x as u32 == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::naive_closure_order;

    fn factorial(n: u32) -> BigUint {
        (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k))
    }

    #[test]
    fn trivial_groups() {
        let g = PermGroup::new(5, &[]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        let g = PermGroup::new(5, &[Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(g.is_trivial());
    }

    #[test]
    fn elementary_abelian() {
        let n = 6u32;
        let gens: Vec<_> = (0..n).map(|i| Permutation::transposition(2 * n as usize, 2 * i, 2 * i + 1)).collect();
        let g = PermGroup::new(2 * n as usize, &gens).unwrap();
        assert_eq!(g.order(), BigUint::from(64u32));
    }

    #[test]
    fn symmetric_from_adjacent_transpositions() {
        for d in 2..=12u32 {
            let gens: Vec<_> = (0..d - 1).map(|i| Permutation::transposition(d as usize, i, i + 1)).collect();
            let g = PermGroup::new(d as usize, &gens).unwrap();
            assert_eq!(g.order(), factorial(d));
            assert!(g.verify());
        }
    }

    #[test]
    fn alternating_from_three_cycles() {
        for d in 3..=20u32 {
            let gens: Vec<_> = (0..d - 2)
                .map(|i| Permutation::from_cycles(d as usize, &[&[i, i + 1, i + 2]]).unwrap())
                .collect();
            let g = PermGroup::new(d as usize, &gens).unwrap();
            assert_eq!(g.order(), factorial(d) / BigUint::from(2u32));
        }
    }

    #[test]
    fn cyclic_example() {
        let g = Permutation::from_cycles(9, &[&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]]).unwrap();
        let grp = PermGroup::new(9, core::slice::from_ref(&g)).unwrap();
        assert_eq!(grp.order(), BigUint::from(12u32));
        assert!(grp.contains(&g.then(&g)));
        assert!(!grp.contains(&Permutation::transposition(9, 0, 1)));
    }

    #[test]
    fn degree_mismatch() {
        assert!(matches!(
            PermGroup::new(4, &[Permutation::identity(5)]),
            Err(Error::DegreeMismatch)
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm_strategy(d: usize) -> impl Strategy<Value = Permutation> {
            Just((0..d as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn order_matches_closure(d in 2usize..=7, gens in proptest::collection::vec(perm_strategy(7), 1..4)) {
                let gens: Vec<Permutation> = gens
                    .into_iter()
                    .map(|g| {
                        // fold onto 0..d by restricting the cycle structure
                        let mut v: Vec<u32> = (0..d as u32).collect();
                        let img = g.images();
                        for x in 0..d {
                            let mut y = img[x] as usize;
                            while y >= d { y = img[y] as usize; }
                            v[x] = y as u32;
                        }
                        Permutation::from_images(v).unwrap()
                    })
                    .collect();
                let grp = PermGroup::new(d, &gens).unwrap();
                let naive = naive_closure_order(d, &gens, 10_000).unwrap();
                prop_assert_eq!(grp.order(), BigUint::from(naive));
                prop_assert!(grp.verify());
                for g in &gens {
                    prop_assert!(grp.contains(g));
                }
            }
        }
    }
}
