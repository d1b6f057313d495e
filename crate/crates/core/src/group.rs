//! Permutation groups given by generators, with a stabilizer chain built once
//! at construction.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::chain::StabChain;
use crate::error::{budget, Error, Result};
use crate::partition::{orbit_partition, Partition};
use crate::perm::Perm;

/// Default budget for operations that enumerate elements.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1_000_000;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
}

/// The action of a group on the parts of an invariant partition.
#[derive(Clone, Debug)]
pub struct BlockAction {
    /// Acts on part labels.
    pub image: PermGroup,
    /// Elements fixing every part setwise.
    pub kernel: PermGroup,
    pub part_index: Vec<u32>,
}

impl PermGroup {
    /// The group generated by `gens` on `0..degree`. An empty generator list
    /// gives the trivial group.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self::build(degree, gens, None))
    }

    fn build(degree: usize, mut gens: Vec<Perm>, order: Option<&BigUint>) -> Self {
        if gens.is_empty() {
            gens.push(Perm::identity(degree));
        }
        let chain = StabChain::with_base(degree, &gens, &[], order);
        PermGroup { degree, gens, chain }
    }

    /// Like [`PermGroup::new`] for generators already known to have the
    /// right degree and a group of known order.
    pub(crate) fn with_order(degree: usize, gens: Vec<Perm>, order: &BigUint) -> Self {
        Self::build(degree, gens, Some(order))
    }

    /// Parses 1-based cycle-notation generators.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|t| Perm::parse(t, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::build(degree, Vec::new(), None)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(cycle_perm(n, 0..n as u32));
            gens.push(cycle_perm(n, [0, 1]));
        }
        Self::build(n, gens, None)
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n as u32).map(|k| cycle_perm(n, [0, 1, k])).collect();
        Self::build(n, gens, None)
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![cycle_perm(n, 0..n as u32)]
        } else {
            Vec::new()
        };
        Self::build(n, gens, None)
    }

    /// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        if n < 3 {
            return Self::symmetric(n);
        }
        let reflection = Perm::from_images_unchecked((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        Self::build(n, vec![cycle_perm(n, 0..n as u32), reflection], None)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn orbits(&self) -> Partition {
        orbit_partition(&self.gens, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbits().num_parts() == 1
    }

    /// Orbit of `point` in breadth-first order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[point as usize] = true;
        let mut orbit = vec![point];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.gens {
                let q = g.apply(orbit[k]);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit
    }

    pub fn point_stabilizer(&self, point: u32) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// Elements fixing each of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let order = self.order();
        let chain = StabChain::with_base(self.degree, &self.gens, points, Some(&order));
        let sub_order = chain.stabilizer_order(points.len());
        Self::with_order(self.degree, chain.stabilizer_gens(points.len()), &sub_order)
    }

    /// Elements mapping the set `points` onto itself, found by filtering
    /// the element list.
    pub fn setwise_stabilizer(&self, points: &[u32], bound: u64) -> Result<PermGroup> {
        let elements = self.elements_bounded(bound)?;
        Ok(Self::generated_by_subset(
            self.degree,
            elements.into_iter().filter(|g| g.stabilizes_set(points)),
        ))
    }

    /// The group generated by the given elements, using a greedy generating
    /// subset: each element not yet in the group is added.
    pub(crate) fn generated_by_subset(degree: usize, elements: impl IntoIterator<Item = Perm>) -> PermGroup {
        let mut group = PermGroup::trivial(degree);
        let mut gens = Vec::new();
        for g in elements {
            if !group.contains(&g) {
                gens.push(g);
                group = PermGroup::build(degree, gens.clone(), None);
            }
        }
        group
    }

    /// Smallest normal subgroup containing `h_gens`.
    pub fn normal_closure(&self, h_gens: &[Perm]) -> Result<PermGroup> {
        for h in h_gens {
            if !self.contains(h) {
                return Err(Error::NotSubgroup(format!("{h} is not in the group")));
            }
        }
        let mut gens: Vec<Perm> = h_gens.iter().filter(|h| !h.is_identity()).cloned().collect();
        let mut group = PermGroup::build(self.degree, gens.clone(), None);
        let mut k = 0;
        while k < gens.len() {
            for g in &self.gens {
                let c = gens[k].conjugate_by(g);
                if !group.contains(&c) {
                    gens.push(c);
                    group = PermGroup::build(self.degree, gens.clone(), None);
                }
            }
            k += 1;
        }
        Ok(group)
    }

    /// Whether `h` is a normal subgroup of `self`.
    pub fn is_normal(&self, h: &PermGroup) -> bool {
        h.is_subgroup_of(self)
            && h.gens
                .iter()
                .all(|x| self.gens.iter().all(|g| h.contains(&x.conjugate_by(g))))
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn elements_bounded(&self, bound: u64) -> Result<Vec<Perm>> {
        match self.order_u64() {
            Some(n) if n <= bound => {}
            _ => return Err(budget("element enumeration", bound)),
        }
        let mut out = Vec::new();
        self.chain.for_each_element(|g| out.push(g.clone()));
        out.sort_unstable();
        Ok(out)
    }

    /// Action on the right cosets of `h`. Point 0 is the coset `h` itself;
    /// the action is returned as computed, possibly unfaithful. Generator `i`
    /// of the result is the image of generator `i` of `self`.
    pub fn coset_action(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("coset action needs a subgroup".into()));
        }
        // (orbits of h)^x depends only on the coset hx
        let h_orbits = h.orbits();
        let fingerprint = |x: &Perm| h_orbits.image(x);
        let mut reps = vec![Perm::identity(self.degree)];
        let mut buckets: HashMap<Partition, Vec<u32>> = HashMap::new();
        buckets.insert(fingerprint(&reps[0]), vec![0]);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); self.gens.len()];
        let mut k = 0;
        while k < reps.len() {
            for (gi, g) in self.gens.iter().enumerate() {
                let y = reps[k].compose(g);
                let bucket = buckets.entry(fingerprint(&y)).or_default();
                let found = bucket
                    .iter()
                    .copied()
                    .find(|&j| h.contains(&y.compose(&reps[j as usize].inverse())));
                let j = match found {
                    Some(j) => j,
                    None => {
                        let j = reps.len() as u32;
                        bucket.push(j);
                        reps.push(y);
                        j
                    }
                };
                images[gi].push(j);
            }
            k += 1;
        }
        let degree = reps.len();
        let gens = images.into_iter().map(Perm::from_images_unchecked).collect();
        Ok(Self::build(degree, gens, None))
    }

    /// Permutations of `0..degree + parts` extending each generator to act on
    /// part labels `degree + label`.
    fn augmented_gens(&self, partition: &Partition) -> Vec<Perm> {
        let n = self.degree;
        let mut rep = vec![0u32; partition.num_parts()];
        for p in (0..n as u32).rev() {
            rep[partition.part_of(p) as usize] = p;
        }
        self.gens
            .iter()
            .map(|g| {
                let mut images: Vec<u32> = g.images().to_vec();
                images.extend(rep.iter().map(|&r| n as u32 + partition.part_of(g.apply(r))));
                Perm::from_images_unchecked(images)
            })
            .collect()
    }

    fn check_invariant(&self, partition: &Partition) -> Result<()> {
        if partition.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: partition.degree(),
            });
        }
        if !self.gens.iter().all(|g| partition.is_invariant_under(g)) {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }

    /// The induced action on the parts of `partition` and its kernel. The
    /// kernel comes from a chain on points plus part labels whose base starts
    /// with every label, so no elements are enumerated.
    pub fn action_on_blocks(&self, partition: &Partition) -> Result<BlockAction> {
        self.check_invariant(partition)?;
        let (n, m) = (self.degree, partition.num_parts());
        let aug = self.augmented_gens(partition);
        let image_gens = aug
            .iter()
            .map(|g| Perm::from_images_unchecked(g.images()[n..].iter().map(|&x| x - n as u32).collect()))
            .collect();
        let prefix: Vec<u32> = (n as u32..(n + m) as u32).collect();
        let order = self.order();
        let chain = StabChain::with_base(n + m, &aug, &prefix, Some(&order));
        let kernel_order = chain.stabilizer_order(m);
        let kernel_gens = chain.stabilizer_gens(m).iter().map(|g| restrict_prefix(g, n)).collect();
        let image_order = &order / &kernel_order;
        Ok(BlockAction {
            image: Self::with_order(m, image_gens, &image_order),
            kernel: Self::with_order(n, kernel_gens, &kernel_order),
            part_index: partition.labels().to_vec(),
        })
    }

    /// Elements mapping the part with label `part` onto itself.
    pub fn part_stabilizer(&self, partition: &Partition, part: u32) -> Result<PermGroup> {
        self.check_invariant(partition)?;
        let n = self.degree;
        let aug = self.augmented_gens(partition);
        let order = self.order();
        let chain = StabChain::with_base(n + partition.num_parts(), &aug, &[n as u32 + part], Some(&order));
        let gens = chain.stabilizer_gens(1).iter().map(|g| restrict_prefix(g, n)).collect();
        Ok(Self::with_order(n, gens, &chain.stabilizer_order(1)))
    }

    /// The action on an invariant set of points, relabelled `0..points.len()`
    /// in the given order.
    pub fn restrict(&self, points: &[u32]) -> Result<PermGroup> {
        let mut index = vec![u32::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p as usize] = i as u32;
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let images: Option<Vec<u32>> = points
                .iter()
                .map(|&p| Some(index[g.apply(p) as usize]).filter(|&i| i != u32::MAX))
                .collect();
            let images = images.ok_or(Error::NotInvariant)?;
            gens.push(Perm::from_images(images)?);
        }
        Self::new(points.len(), gens)
    }
}

fn restrict_prefix(g: &Perm, n: usize) -> Perm {
    Perm::from_images_unchecked(g.images()[..n].to_vec())
}

fn cycle_perm(n: usize, points: impl IntoIterator<Item = u32>) -> Perm {
    let points: Vec<u32> = points.into_iter().collect();
    Perm::from_cycles(n, &[&points]).expect("valid cycle")
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree, self.order())?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// Test-only brute force: the closure of a generator set by breadth-first
/// multiplication.
#[cfg(test)]
pub(crate) fn closure_oracle(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut set = std::collections::BTreeSet::new();
    let id = Perm::identity(degree);
    set.insert(id.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.compose(g);
            if set.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse(text, n).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn named_families() {
        assert_eq!(PermGroup::symmetric(5).order(), big(120));
        assert_eq!(PermGroup::alternating(5).order(), big(60));
        assert_eq!(PermGroup::cyclic(7).order(), big(7));
        assert_eq!(PermGroup::dihedral(4).order(), big(8));
        assert_eq!(PermGroup::dihedral(5).order(), big(10));
        assert_eq!(PermGroup::trivial(3).order(), big(1));
        assert_eq!(PermGroup::symmetric(1).order(), big(1));
    }

    #[test]
    fn order_matches_closure_oracle() {
        let cases: Vec<(usize, Vec<&str>)> = vec![
            (5, vec!["(1,2,3,4,5)", "(1,2,3)"]),
            (6, vec!["(1,2,3,4,5,6)", "(1,3)"]),
            (7, vec!["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
            (8, vec!["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]),
        ];
        for (n, gens) in cases {
            let g = PermGroup::from_cycles(n, &gens).unwrap();
            let brute = closure_oracle(n, g.generators());
            assert_eq!(g.order(), big(brute.len() as u64), "{gens:?}");
            assert!(brute.iter().all(|x| g.contains(x)));
            assert_eq!(g.elements_bounded(1000).unwrap(), brute);
        }
    }

    #[test]
    fn orbits() {
        let g = PermGroup::from_cycles(4, &["(1,2)(3,4)"]).unwrap();
        assert_eq!(g.orbits(), Partition::parse("1,2|3,4", 4).unwrap());
        assert!(!g.is_transitive());
        assert!(PermGroup::cyclic(4).is_transitive());
        assert_eq!(PermGroup::trivial(3).orbits(), Partition::singletons(3));
    }

    #[test]
    fn stabilizers() {
        let a5 = PermGroup::alternating(5);
        assert_eq!(a5.point_stabilizer(0).order(), big(12));
        let s4 = PermGroup::symmetric(4);
        let pw = s4.pointwise_stabilizer(&[0, 1]);
        assert_eq!(pw.order(), big(2));
        assert!(pw.contains(&p("(3,4)", 4)));
        assert_eq!(s4.setwise_stabilizer(&[0, 1], 100).unwrap().order(), big(4));
        for x in 0..5 {
            let orbit = a5.orbit(x).len() as u64;
            assert_eq!(big(orbit) * a5.point_stabilizer(x).order(), a5.order());
        }
    }

    #[test]
    fn normal_closures() {
        let s3 = PermGroup::symmetric(3);
        assert_eq!(s3.normal_closure(&[p("(1,2)", 3)]).unwrap().order(), big(6));
        let c3 = s3.normal_closure(&[p("(1,2,3)", 3)]).unwrap();
        assert_eq!(c3.order(), big(3));
        assert!(s3.is_normal(&c3));
        let d4 = PermGroup::from_cycles(4, &["(1,2,3,4)", "(2,4)"]).unwrap();
        let n = d4.normal_closure(&[p("(2,4)", 4)]).unwrap();
        assert_eq!(n.order(), big(4));
        assert!(n.contains(&p("(1,3)", 4)));
        assert!(s3.normal_closure(&[p("(1,2)", 4)]).is_err());
        let t = PermGroup::from_cycles(3, &["(1,2)"]).unwrap();
        assert!(!s3.is_normal(&t));
    }

    #[test]
    fn element_budget() {
        assert_eq!(PermGroup::symmetric(3).elements_bounded(10).unwrap().len(), 6);
        assert!(matches!(
            PermGroup::alternating(5).elements_bounded(10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coset_actions() {
        let a5 = PermGroup::alternating(5);
        let v4 = PermGroup::from_cycles(5, &["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let on15 = a5.coset_action(&v4).unwrap();
        assert_eq!(on15.degree(), 15);
        assert!(on15.is_transitive());
        assert_eq!(on15.order(), big(60));
        assert_eq!(a5.coset_action(&a5).unwrap().degree(), 1);
        let natural = a5.coset_action(&a5.point_stabilizer(0)).unwrap();
        assert_eq!(natural.degree(), 5);
        assert_eq!(natural.order(), big(60));
        let outside = PermGroup::from_cycles(5, &["(1,2)"]).unwrap();
        assert!(a5.coset_action(&outside).is_err());
    }

    #[test]
    fn coset_action_of_stabilizer_matches_orbit_action() {
        // coset H·x corresponds to the point 0^x
        let g = PermGroup::from_cycles(6, &["(1,2,3,4,5,6)", "(1,3)"]).unwrap();
        let h = g.point_stabilizer(0);
        let act = g.coset_action(&h).unwrap();
        let orbit = g.orbit(0);
        for (gen, image) in g.generators().iter().zip(act.generators()) {
            for (i, &pt) in orbit.iter().enumerate() {
                let j = image.apply(i as u32) as usize;
                assert_eq!(orbit[j], gen.apply(pt));
            }
        }
    }

    #[test]
    fn block_actions() {
        let d4 = PermGroup::from_cycles(4, &["(1,2,3,4)", "(2,4)"]).unwrap();
        let pi = Partition::parse("1,3|2,4", 4).unwrap();
        let ba = d4.action_on_blocks(&pi).unwrap();
        assert_eq!(ba.image.order(), big(2));
        assert_eq!(ba.kernel.order(), big(4));
        let brute: Vec<Perm> = d4
            .elements_bounded(100)
            .unwrap()
            .into_iter()
            .filter(|g| (0..4).all(|x| pi.part_of(g.apply(x)) == pi.part_of(x)))
            .collect();
        assert_eq!(ba.kernel.elements_bounded(100).unwrap(), brute);

        let c4 = PermGroup::cyclic(4);
        let ba = c4.action_on_blocks(&pi).unwrap();
        assert_eq!(ba.kernel.order(), big(2));
        assert!(ba.kernel.contains(&p("(1,3)(2,4)", 4)));

        let one = Partition::one_part(4);
        let ba = d4.action_on_blocks(&one).unwrap();
        assert_eq!(ba.kernel.order(), big(8));
        assert_eq!(ba.image.order(), big(1));

        let bad = Partition::parse("1,2|3,4", 4).unwrap();
        assert_eq!(c4.action_on_blocks(&bad).unwrap_err(), Error::NotInvariant);
    }

    #[test]
    fn part_stabilizer_matches_filter() {
        let g = PermGroup::from_cycles(6, &["(1,2,3,4,5,6)", "(1,5)(2,4)"]).unwrap();
        let pi = Partition::parse("1,4|2,5|3,6", 6).unwrap();
        let h = g.part_stabilizer(&pi, 0).unwrap();
        let brute = g.setwise_stabilizer(&[0, 3], 1000).unwrap();
        assert_eq!(h.order(), brute.order());
        assert!(h.is_subgroup_of(&brute));
    }

    #[test]
    fn restriction() {
        let g = PermGroup::from_cycles(5, &["(1,2)", "(3,4,5)"]).unwrap();
        let r = g.restrict(&[2, 3, 4]).unwrap();
        assert_eq!(r.degree(), 3);
        assert_eq!(r.order(), big(3));
        assert_eq!(g.restrict(&[0, 2]).unwrap_err(), Error::NotInvariant);
    }
}
