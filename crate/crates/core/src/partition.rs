//! Partitions of `0..degree` in canonical form.
//!
//! Part labels are contiguous and appear in increasing order of the smallest
//! point of each part, so two partitions are equal exactly when their label
//! sequences are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    part_of: Vec<u32>,
    num_parts: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut map = std::collections::HashMap::new();
        let part_of: Vec<u32> = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            num_parts: map.len(),
            part_of,
        }
    }

    pub fn from_parts(degree: usize, parts: &[Vec<u32>]) -> Result<Self> {
        let mut labels = vec![u32::MAX; degree];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::PartitionSyntax("empty part".into()));
            }
            for &p in part {
                let slot = labels.get_mut(p as usize).ok_or(Error::PointOutOfRange {
                    point: p as usize + 1,
                    degree,
                })?;
                if *slot != u32::MAX {
                    return Err(Error::RepeatedPoint(p as usize + 1));
                }
                *slot = i as u32;
            }
        }
        if let Some(p) = labels.iter().position(|&l| l == u32::MAX) {
            return Err(Error::PartitionSyntax(format!("point {} not covered", p + 1)));
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn singletons(degree: usize) -> Self {
        Partition {
            part_of: (0..degree as u32).collect(),
            num_parts: degree,
        }
    }

    pub fn one_part(degree: usize) -> Self {
        Partition {
            part_of: vec![0; degree],
            num_parts: usize::from(degree > 0),
        }
    }

    pub fn degree(&self) -> usize {
        self.part_of.len()
    }

    pub fn num_parts(&self) -> usize {
        self.num_parts
    }

    pub fn part_of(&self, point: u32) -> u32 {
        self.part_of[point as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.part_of
    }

    pub fn parts(&self) -> Vec<Vec<u32>> {
        let mut parts = vec![Vec::new(); self.num_parts];
        for (p, &l) in self.part_of.iter().enumerate() {
            parts[l as usize].push(p as u32);
        }
        parts
    }

    /// The part containing `point`, sorted.
    pub fn part_containing(&self, point: u32) -> Vec<u32> {
        let l = self.part_of(point);
        (0..self.degree() as u32)
            .filter(|&p| self.part_of[p as usize] == l)
            .collect()
    }

    /// Neither the singleton partition nor the one-part partition.
    pub fn is_trivial(&self) -> bool {
        self.num_parts <= 1 || self.num_parts == self.degree()
    }

    fn check_degree(&self, other: &Partition) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// Whether every part of `other` is a union of parts of `self`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_degree(other)?;
        let mut target = vec![u32::MAX; self.num_parts];
        for (p, &l) in self.part_of.iter().enumerate() {
            let t = &mut target[l as usize];
            if *t == u32::MAX {
                *t = other.part_of[p];
            } else if *t != other.part_of[p] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_degree(other)?;
        let mut uf = UnionFind::from_partition(self);
        let mut first = vec![u32::MAX; other.num_parts];
        for (p, &l) in other.part_of.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == u32::MAX {
                *f = p as u32;
            } else {
                uf.union(*f, p as u32);
            }
        }
        Ok(uf.into_partition())
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_degree(other)?;
        let pairs: Vec<(u32, u32)> = self.part_of.iter().zip(&other.part_of).map(|(&a, &b)| (a, b)).collect();
        Ok(Partition::from_labels(&pairs))
    }

    /// The image partition under a permutation.
    pub fn image(&self, g: &Perm) -> Partition {
        let mut labels = vec![0u32; self.degree()];
        for (p, &l) in self.part_of.iter().enumerate() {
            labels[g.apply(p as u32) as usize] = l;
        }
        Partition::from_labels(&labels)
    }

    /// Whether `g` maps every part onto a part.
    pub fn is_invariant_under(&self, g: &Perm) -> bool {
        let mut map = vec![u32::MAX; self.num_parts];
        let mut hit = vec![false; self.num_parts];
        for (p, &l) in self.part_of.iter().enumerate() {
            let target = self.part_of[g.apply(p as u32) as usize];
            let m = &mut map[l as usize];
            if *m == u32::MAX {
                if hit[target as usize] {
                    return false;
                }
                hit[target as usize] = true;
                *m = target;
            } else if *m != target {
                return false;
            }
        }
        true
    }

    /// Parses the 1-based text form `1,3|2,4`.
    pub fn parse(text: &str, degree: usize) -> Result<Partition> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = Vec::new();
        for chunk in compact.split('|') {
            let mut part = Vec::new();
            for item in chunk.split(',') {
                let v: usize = item
                    .parse()
                    .map_err(|_| Error::PartitionSyntax(format!("bad point '{item}'")))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange { point: v, degree });
                }
                part.push(v as u32 - 1);
            }
            parts.push(part);
        }
        Partition::from_parts(degree, &parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, p) in part.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({})", self)
    }
}

/// Union–find over points, used for orbits, joins and minimal blocks.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut uf = UnionFind::new(p.degree());
        let mut first = vec![u32::MAX; p.num_parts()];
        for (x, &l) in p.labels().iter().enumerate() {
            if first[l as usize] == u32::MAX {
                first[l as usize] = x as u32;
            } else {
                uf.parent[x] = first[l as usize];
            }
        }
        uf
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Returns true if two distinct classes were merged.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so class representatives are minimal points
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<u32> = (0..self.parent.len() as u32).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}

/// Orbits of the group generated by `gens` on `0..degree`.
pub fn orbit_partition(gens: &[Perm], degree: usize) -> Partition {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree as u32 {
            uf.union(x, g.apply(x));
        }
    }
    uf.into_partition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(text: &str, n: usize) -> Partition {
        Partition::parse(text, n).unwrap()
    }

    #[test]
    fn canonical_labels() {
        let p = Partition::from_labels(&[7, 3, 7, 3, 9]);
        assert_eq!(p.labels(), &[0, 1, 0, 1, 2]);
        assert_eq!(p.to_string(), "1,3|2,4|5");
        assert_eq!(part("2,4|3,1|5", 5), p);
    }

    #[test]
    fn orbit_partition_examples() {
        let g = Perm::parse("(1,2)(3,4)", 4).unwrap();
        assert_eq!(orbit_partition(&[g], 4), part("1,2|3,4", 4));
        assert_eq!(orbit_partition(&[], 3), Partition::singletons(3));
        let c = Perm::parse("(1,2,3,4,5)", 5).unwrap();
        assert_eq!(orbit_partition(&[c], 5), Partition::one_part(5));
    }

    #[test]
    fn lattice_examples() {
        let a = part("1,2|3,4", 4);
        let b = part("1,3|2,4", 4);
        assert!(Partition::singletons(4).refines(&a).unwrap());
        assert!(!a.refines(&b).unwrap());
        assert_eq!(a.join(&b).unwrap(), Partition::one_part(4));
        assert_eq!(a.meet(&b).unwrap(), Partition::singletons(4));
        assert!(a.refines(&Partition::one_part(4)).unwrap());
        assert!(matches!(
            a.join(&Partition::one_part(5)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn invariance() {
        let c4 = Perm::parse("(1,2,3,4)", 4).unwrap();
        assert!(part("1,3|2,4", 4).is_invariant_under(&c4));
        assert!(!part("1,2|3,4", 4).is_invariant_under(&c4));
        // two parts squeezed into one is not invariant
        let g = Perm::parse("(2,3)", 4).unwrap();
        assert!(!part("1,2|3|4", 4).is_invariant_under(&g));
    }

    #[test]
    fn parse_errors() {
        assert!(Partition::parse("1,2|2,3", 3).is_err());
        assert!(Partition::parse("1,2", 3).is_err());
        assert!(Partition::parse("1,x|2", 2).is_err());
        assert!(Partition::parse("1,4|2,3", 3).is_err());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n as u32, n).prop_map(|v| Partition::from_labels(&v))
    }

    proptest! {
        #[test]
        fn lattice_laws(a in arb_partition(8), b in arb_partition(8)) {
            let j = a.join(&b).unwrap();
            let m = a.meet(&b).unwrap();
            prop_assert!(a.refines(&j).unwrap() && b.refines(&j).unwrap());
            prop_assert!(m.refines(&a).unwrap() && m.refines(&b).unwrap());
            prop_assert_eq!(a.join(&m).unwrap(), a.clone());
            prop_assert_eq!(a.meet(&j).unwrap(), a.clone());
            prop_assert_eq!(Partition::parse(&a.to_string(), 8).unwrap(), a);
        }
    }
}
