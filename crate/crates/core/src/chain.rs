//! Stabilizer chains built by the deterministic Schreier–Sims algorithm.
//!
//! Base points are chosen as the smallest moved point: the first base point is
//! the smallest point moved by any generator, and whenever a new level is
//! needed the smallest point moved by the offending element is used. An
//! optional base prefix is honoured verbatim (used for stabilizers and for
//! kernels of actions on blocks). When the group order is known in advance the
//! construction stops as soon as the basic orbits account for it.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: u32,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Perm>,
    pub orbit: Vec<u32>,
    position: Vec<u32>,
    transversal: Vec<Perm>,
    inverse: Vec<Perm>,
    // Schreier generators for (orbit[..checked_points] x gens[..checked_gens]) are known to sift.
    checked_points: usize,
    checked_gens: usize,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        let mut position = vec![NONE; degree];
        position[base_point as usize] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            position,
            transversal: vec![Perm::identity(degree)],
            inverse: vec![Perm::identity(degree)],
            checked_points: 0,
            checked_gens: 0,
        }
    }

    fn add_gen(&mut self, g: Perm) {
        let gi = self.gens.len();
        self.gens.push(g);
        let old_len = self.orbit.len();
        for k in 0..old_len {
            self.visit(k, gi);
        }
        let mut k = old_len;
        while k < self.orbit.len() {
            for gi in 0..self.gens.len() {
                self.visit(k, gi);
            }
            k += 1;
        }
    }

    fn visit(&mut self, k: usize, gi: usize) {
        let img = self.gens[gi].apply(self.orbit[k]);
        if self.position[img as usize] == NONE {
            let t = self.transversal[k].compose(&self.gens[gi]);
            self.position[img as usize] = self.orbit.len() as u32;
            self.orbit.push(img);
            self.inverse.push(t.inverse());
            self.transversal.push(t);
        }
    }

    /// Transversal element mapping the base point to `p`, if `p` is in the orbit.
    pub fn transversal_for(&self, p: u32) -> Option<&Perm> {
        match self.position[p as usize] {
            NONE => None,
            k => Some(&self.transversal[k as usize]),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        Self::with_base(degree, gens, &[], None)
    }

    /// Builds a chain whose base starts with `prefix`. If `known_order` is
    /// given it must be the exact order of the generated group.
    pub fn with_base(degree: usize, gens: &[Perm], prefix: &[u32], known_order: Option<&BigUint>) -> Self {
        let gens: Vec<Perm> = {
            let mut v: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
            v.dedup();
            v
        };
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for &b in prefix {
            chain.levels.push(Level::new(b, degree));
        }
        if gens.is_empty() {
            return chain;
        }
        if chain.levels.is_empty() {
            let first = gens.iter().filter_map(|g| g.first_moved()).min().unwrap();
            chain.levels.push(Level::new(first, degree));
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let p = g.first_moved().unwrap();
                chain.levels.push(Level::new(p, degree));
            }
        }
        for g in &gens {
            chain.distribute(g, 0, usize::MAX);
        }
        chain.schreier_sims(known_order);
        chain
    }

    /// Adds `h` to every level from `from` up to (and including) the deepest
    /// level whose earlier base points `h` fixes, capped at `to`.
    fn distribute(&mut self, h: &Perm, from: usize, to: usize) {
        let mut l = 0;
        while l < self.levels.len() && l <= to {
            if l >= from {
                self.levels[l].add_gen(h.clone());
            }
            let b = self.levels[l].base_point;
            if h.apply(b) != b {
                break;
            }
            l += 1;
        }
    }

    fn orbit_product(&self) -> BigUint {
        let mut acc = BigUint::one();
        for l in &self.levels {
            acc *= l.orbit.len() as u64;
        }
        acc
    }

    fn schreier_sims(&mut self, known_order: Option<&BigUint>) {
        if let Some(target) = known_order {
            if &self.orbit_product() == target {
                return;
            }
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let (cp, cg) = (self.levels[lvl].checked_points, self.levels[lvl].checked_gens);
            let mut k = 0;
            while k < self.levels[lvl].orbit.len() {
                let mut gi = 0;
                while gi < self.levels[lvl].gens.len() {
                    if k < cp && gi < cg {
                        gi += 1;
                        continue;
                    }
                    let level = &self.levels[lvl];
                    let beta = level.orbit[k];
                    let s = &level.gens[gi];
                    let gamma = s.apply(beta);
                    let ub_s = level.transversal[k].compose(s);
                    let pos = level.position[gamma as usize] as usize;
                    if ub_s != level.transversal[pos] {
                        let schreier = ub_s.compose(&level.inverse[pos]);
                        let (h, j) = self.sift_from(schreier, lvl + 1);
                        if j < self.levels.len() || !h.is_identity() {
                            if j == self.levels.len() {
                                let p = h.first_moved().unwrap();
                                self.levels.push(Level::new(p, self.degree));
                            }
                            for l in lvl + 1..=j {
                                self.levels[l].add_gen(h.clone());
                            }
                            if let Some(target) = known_order {
                                if &self.orbit_product() == target {
                                    return;
                                }
                            }
                            i = j as isize;
                            continue 'outer;
                        }
                    }
                    gi += 1;
                }
                k += 1;
            }
            let level = &mut self.levels[lvl];
            level.checked_points = level.orbit.len();
            level.checked_gens = level.gens.len();
            i -= 1;
        }
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue
    /// and the index of the level where sifting stopped (`levels.len()` when
    /// it passed every level).
    fn sift_from(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let b = level.base_point;
            let beta = g.apply(b);
            if beta == b {
                continue;
            }
            let pos = level.position[beta as usize];
            if pos == NONE {
                return (g, j);
            }
            g = g.compose(&level.inverse[pos as usize]);
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_product()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub(crate) fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Strong generators of the stabilizer of the first `k` base points.
    pub fn stabilizer_gens(&self, k: usize) -> Vec<Perm> {
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Order of the stabilizer of the first `k` base points.
    pub fn stabilizer_order(&self, k: usize) -> BigUint {
        let mut acc = BigUint::one();
        for l in self.levels.iter().skip(k) {
            acc *= l.orbit.len() as u64;
        }
        acc
    }

    /// Every group element, each exactly once, in no particular order.
    pub(crate) fn for_each_element(&self, mut f: impl FnMut(&Perm)) {
        fn rec(levels: &[Level], acc: &Perm, f: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => f(acc),
                Some((last, rest)) => {
                    for t in &last.transversal {
                        rec(rest, &acc.compose(t), f);
                    }
                }
            }
        }
        // g = u_{L-1} ... u_1 u_0, deepest level applied first
        rec(&self.levels, &Perm::identity(self.degree), &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse(text, n).unwrap()
    }

    #[test]
    fn orders() {
        let c4 = StabChain::new(4, &[p("(1,2,3,4)", 4)]);
        assert_eq!(c4.order(), BigUint::from(4u32));
        let a5 = StabChain::new(5, &[p("(1,2,3,4,5)", 5), p("(1,2,3)", 5)]);
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert_eq!(a5.base()[0], 0);
        let s8 = StabChain::new(8, &[p("(1,2,3,4,5,6,7,8)", 8), p("(1,2)", 8)]);
        assert_eq!(s8.order(), BigUint::from(40320u32));
        let trivial = StabChain::new(3, &[Perm::identity(3)]);
        assert_eq!(trivial.order(), BigUint::one());
    }

    #[test]
    fn membership() {
        let a5 = StabChain::new(5, &[p("(1,2,3,4,5)", 5), p("(1,2,3)", 5)]);
        assert!(a5.contains(&p("(1,2)(3,4)", 5)));
        assert!(!a5.contains(&p("(1,2)", 5)));
        assert!(a5.contains(&Perm::identity(5)));
    }

    #[test]
    fn prefix_and_known_order() {
        let s5 = StabChain::new(5, &[p("(1,2,3,4,5)", 5), p("(1,2)", 5)]);
        let order = s5.order();
        let gens = [p("(1,2,3,4,5)", 5), p("(1,2)", 5)];
        let c = StabChain::with_base(5, &gens, &[3, 4], Some(&order));
        assert_eq!(c.base()[..2], [3, 4]);
        assert_eq!(c.order(), order);
        assert_eq!(c.stabilizer_order(2), BigUint::from(6u32));
        for g in c.stabilizer_gens(2) {
            assert_eq!(g.apply(3), 3);
            assert_eq!(g.apply(4), 4);
        }
    }

    #[test]
    fn element_enumeration_is_complete() {
        let s4 = StabChain::new(4, &[p("(1,2,3,4)", 4), p("(1,2)", 4)]);
        let mut all = Vec::new();
        s4.for_each_element(|g| all.push(g.clone()));
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
    }
}
