//! Array permutations on `0..d`, orbit partitions, and a brute-force closure
//! used to cross-check stabilizer chains.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::Error;

/// A bijection of `0..d` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, Error> {
        let d = images.len();
        let mut seen = alloc::vec![false; d];
        for &x in &images {
            let x = x as usize;
            if x >= d || seen[x] {
                return Err(Error::NotBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Product of disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, Error> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for k in 0..c.len() {
                let (a, b) = (c[k] as usize, c[(k + 1) % c.len()]);
                if a >= degree || b as usize >= degree {
                    return Err(Error::NotBijective);
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn transposition(degree: usize, a: u32, b: u32) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images.swap(a as usize, b as usize);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` first, then `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(x, &y)| *x as u32 != y).map(|(x, _)| x as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut done = alloc::vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if done[start] || self.images[start] as usize == start {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                c.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(|c| c.len()).collect()
    }

    /// Order as an element: lcm of cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Order as a machine integer; every use in this crate divides 12.
    pub fn order_u64(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity()
            && self.images.iter().enumerate().all(|(x, &y)| self.images[y as usize] as usize == x)
    }

    /// Number of 2-cycles.
    pub fn transposition_count(&self) -> usize {
        self.cycle_lengths().iter().filter(|&&l| l == 2).count()
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Action on the listed points, relabelled `0..points.len()`. The list
    /// must be closed under `self`.
    pub fn restrict(&self, points: &[u32]) -> Result<Permutation, Error> {
        let mut label = alloc::vec![u32::MAX; self.degree()];
        for (k, &p) in points.iter().enumerate() {
            label[p as usize] = k as u32;
        }
        let images = points
            .iter()
            .map(|&p| {
                let l = label[self.images[p as usize] as usize];
                if l == u32::MAX {
                    Err(Error::NotInvariant { vertex: p })
                } else {
                    Ok(l)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation { images })
    }
}

/// `out[x] = b[a[x]]`.
#[inline]
pub(crate) fn compose_into(a: &[u32], b: &[u32], out: &mut [u32]) {
    for (o, &x) in out.iter_mut().zip(a) {
        *o = b[x as usize];
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: alloc::vec![1; n] }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Orbits of a permutation group on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Orbit index of each point.
    pub orbit_of: Vec<u32>,
    /// Points of each orbit in increasing order; orbits ordered by smallest point.
    pub orbits: Vec<Vec<u32>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }
}

pub fn orbit_partition(degree: usize, generators: &[Permutation]) -> OrbitPartition {
    let mut uf = UnionFind::new(degree);
    for g in generators {
        for x in 0..degree as u32 {
            uf.union(x, g.image(x));
        }
    }
    let mut orbit_of = alloc::vec![u32::MAX; degree];
    let mut root_label = alloc::vec![u32::MAX; degree];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for x in 0..degree as u32 {
        let r = uf.find(x) as usize;
        if root_label[r] == u32::MAX {
            root_label[r] = orbits.len() as u32;
            orbits.push(Vec::new());
        }
        orbit_of[x as usize] = root_label[r];
        orbits[root_label[r] as usize].push(x);
    }
    OrbitPartition { orbit_of, orbits }
}

/// Size of the group generated by `generators`, found by breadth-first
/// multiplication; `None` once more than `limit` elements appear.
pub fn naive_closure_order(degree: usize, generators: &[Permutation], limit: usize) -> Option<usize> {
    let id = Permutation::identity(degree);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn composition_and_inverse() {
        let a = Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[2, 3]]).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.image(1), 3);
        assert_eq!(ab.image(2), 0);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.to_string(), "(0 1 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn cycle_data() {
        let g = Permutation::from_cycles(9, &[&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]]).unwrap();
        assert_eq!(g.order_u64(), 12);
        assert_eq!(g.order(), BigUint::from(12u32));
        assert_eq!(g.transposition_count(), 1);
        assert!(g.is_even());
        assert!(!Permutation::transposition(4, 0, 3).is_even());
        assert!(!g.is_involution());
        assert!(Permutation::transposition(4, 1, 2).is_involution());
        assert!(!Permutation::identity(4).is_involution());
    }

    #[test]
    fn non_bijections_rejected() {
        assert!(Permutation::from_images(alloc::vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(alloc::vec![0, 3, 1]).is_err());
    }

    #[test]
    fn orbits_and_restriction() {
        let g = Permutation::from_cycles(9, &[&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]]).unwrap();
        let o = orbit_partition(9, core::slice::from_ref(&g));
        assert_eq!(o.sizes(), alloc::vec![2, 3, 4]);
        let r = g.restrict(&[2, 3, 4]).unwrap();
        assert_eq!(r.to_string(), "(0 1 2)");
        assert!(g.restrict(&[2, 3]).is_err());
    }

    #[test]
    fn naive_closure() {
        let g = Permutation::from_cycles(9, &[&[0, 1], &[2, 3, 4], &[5, 6, 7, 8]]).unwrap();
        assert_eq!(naive_closure_order(9, &[g], 1000), Some(12));
        let s: Vec<Permutation> = (0..4).map(|i| Permutation::transposition(5, i, i + 1)).collect();
        assert_eq!(naive_closure_order(5, &s, 1000), Some(120));
        assert_eq!(naive_closure_order(5, &s, 100), None);
    }
}
