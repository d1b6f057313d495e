//! Finite groups as multiplication tables over indices `0..order`, with the
//! identity at index 0.

use std::fmt;

use crate::error::{budget, Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_BUDGET};
use crate::perm::Perm;

/// Default limit on table order for automorphism and subgroup searches.
pub const DEFAULT_TABLE_BUDGET: usize = 256;
const MAX_AUTOMORPHISMS: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    name: Option<String>,
}

impl CayleyTable {
    /// Validates identity (index 0), the Latin property and associativity.
    pub fn new(rows: Vec<Vec<u32>>, name: Option<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            table.extend_from_slice(row);
        }
        for a in 0..n {
            if table[a] != a as u32 || table[a * n] != a as u32 {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                for (seen, x) in [(&mut row_seen, table[a * n + b]), (&mut col_seen, table[b * n + a])] {
                    if x as usize >= n || seen[x as usize] {
                        return Err(Error::InvalidTable(format!("element {a} breaks the Latin property")));
                    }
                    seen[x as usize] = true;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(Error::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(Self::from_flat(n, table, name))
    }

    fn from_flat(n: usize, table: Vec<u32>, name: Option<String>) -> Self {
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n as u32).find(|&b| table[a * n + b as usize] == 0).unwrap();
        }
        CayleyTable {
            order: n,
            table,
            inverse,
            name,
        }
    }

    /// Table of a permutation group; elements are indexed in lexicographic
    /// order of their image sequences, which puts the identity first.
    pub fn from_perm_group(group: &PermGroup, name: Option<String>) -> Result<Self> {
        let elements = group.elements_bounded(DEFAULT_ELEMENT_BUDGET)?;
        let n = elements.len();
        let index: std::collections::HashMap<&Perm, u32> =
            elements.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.compose(b)]);
            }
        }
        Ok(Self::from_flat(n, table, name))
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        Self::from_flat(n, table, Some(format!("c{n}")))
    }

    /// Dihedral group of order `order` (even, at least 2): rotations `r^i`
    /// at index `i`, reflections `s r^i` at index `m + i`.
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("dihedral order {order} must be even")));
        }
        let m = order / 2;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (sa, ia) = (a / m, a % m);
                let (sb, ib) = (b / m, b % m);
                // s^sa r^ia s^sb r^ib, using r s = s r^-1
                let i = if sb == 0 { ia + ib } else { m - ia + ib } % m;
                table.push(((sa ^ sb) * m + i % m) as u32);
            }
        }
        Ok(Self::from_flat(order, table, Some(format!("d{order}"))))
    }

    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2)).named("v4")
    }

    pub fn quaternion() -> Self {
        let q8 = PermGroup::from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]).unwrap();
        Self::from_perm_group(&q8, Some("q8".into())).unwrap()
    }

    pub fn symmetric(n: usize) -> Self {
        Self::from_perm_group(&PermGroup::symmetric(n), Some(format!("s{n}"))).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        Self::from_perm_group(&PermGroup::alternating(n), Some(format!("a{n}"))).unwrap()
    }

    /// Pairs `(a, b)` indexed `a·|right| + b`.
    pub fn direct_product(left: &CayleyTable, right: &CayleyTable) -> Self {
        let (n, m) = (left.order, right.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for x in 0..n * m {
            for y in 0..n * m {
                let a = left.mul((x / m) as u32, (y / m) as u32) as usize;
                let b = right.mul((x % m) as u32, (y % m) as u32) as usize;
                table.push((a * m + b) as u32);
            }
        }
        let name = match (&left.name, &right.name) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        Self::from_flat(n * m, table, name)
    }

    /// Looks up a bundled table: `c<n>`, `d<n>` (dihedral of order n), `v4`,
    /// `q8`, `s3`, `s4`, `a4`, `a5`, and direct products joined by `x`, such as
    /// `q8xc2`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let factors: Vec<&str> = lower.split('x').collect();
        let mut acc: Option<CayleyTable> = None;
        for f in factors {
            let t = Self::single_by_name(f).ok_or_else(|| Error::InvalidArgument(format!("unknown table '{name}'")))?;
            acc = Some(match acc {
                None => t,
                Some(a) => Self::direct_product(&a, &t),
            });
        }
        Ok(acc.unwrap().named(&lower))
    }

    fn single_by_name(name: &str) -> Option<Self> {
        let number = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=256).contains(&k));
        match name {
            "v4" => Some(Self::klein()),
            "q8" => Some(Self::quaternion()),
            "s3" => Some(Self::symmetric(3)),
            "s4" => Some(Self::symmetric(4)),
            "a4" => Some(Self::alternating(4)),
            "a5" => Some(Self::alternating(5)),
            _ => {
                if let Some(rest) = name.strip_prefix('c') {
                    number(rest).map(Self::cyclic)
                } else if let Some(rest) = name.strip_prefix('d') {
                    number(rest).and_then(|k| Self::dihedral(k).ok())
                } else {
                    None
                }
            }
        }
    }

    fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn row(&self, a: u32) -> &[u32] {
        let n = self.order;
        &self.table[a as usize * n..(a as usize + 1) * n]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elems = vec![0u32];
        let mut k = 0;
        while k < elems.len() {
            for &g in gens {
                let y = self.mul(elems[k], g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                }
            }
            k += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Greedy generating set: scanning indices upwards, keep each element
    /// outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        for x in 1..self.order as u32 {
            if !member[x as usize] {
                gens.push(x);
                for y in self.closure(&gens) {
                    member[y as usize] = true;
                }
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x as usize] = true;
        }
        member[0]
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, b) as usize]))
    }

    pub fn is_normal_subgroup(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x as usize] = true;
        }
        let gens = self.generators();
        self.is_subgroup(set)
            && set
                .iter()
                .all(|&a| gens.iter().all(|&g| member[self.conjugate(a, g) as usize]))
    }

    /// All automorphisms as permutations of element indices, in lexicographic
    /// order of the generator images.
    pub fn automorphisms(&self, max_order: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        self.homomorphisms_into(self, max_order, true, &mut |phi| {
            out.push(phi.to_vec());
            out.len() < MAX_AUTOMORPHISMS
        })?;
        if out.len() >= MAX_AUTOMORPHISMS {
            return Err(budget("automorphism", MAX_AUTOMORPHISMS as u64));
        }
        Ok(out)
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        if self.order != other.order || self.is_abelian() != other.is_abelian() {
            return false;
        }
        let mut found = false;
        // the order check above keeps the budget at the table size
        let _ = self.homomorphisms_into(other, usize::MAX, true, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Enumerates bijective homomorphisms `self → target` by backtracking
    /// over images of the greedy generators. `visit` returns false to stop.
    fn homomorphisms_into(
        &self,
        target: &CayleyTable,
        max_order: usize,
        bijective: bool,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> Result<()> {
        if self.order > max_order {
            return Err(budget("automorphism search table order", max_order as u64));
        }
        let gens = self.generators();
        let candidates: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..target.order as u32)
                    .filter(|&y| target.element_order(y) == o)
                    .collect()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        // identity to identity; the only entry when there are no generators
        let mut phi = vec![u32::MAX; self.order];
        phi[0] = 0;
        self.extend_hom(target, &gens, &candidates, &mut images, &mut phi, bijective, visit);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_hom(
        &self,
        target: &CayleyTable,
        gens: &[u32],
        candidates: &[Vec<u32>],
        images: &mut Vec<u32>,
        phi: &mut Vec<u32>,
        bijective: bool,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let k = images.len();
        if k == gens.len() {
            return visit(phi);
        }
        for &y in &candidates[k] {
            images.push(y);
            if let Some(map) = self.partial_hom(target, &gens[..=k], images, bijective) {
                let saved = std::mem::replace(phi, map);
                let keep_going = self.extend_hom(target, gens, candidates, images, phi, bijective, visit);
                *phi = saved;
                if !keep_going {
                    images.pop();
                    return false;
                }
            }
            images.pop();
        }
        true
    }

    /// The map on `⟨gens⟩` sending each generator to its image, if it is a
    /// well-defined (and, when asked, injective) homomorphism.
    fn partial_hom(&self, target: &CayleyTable, gens: &[u32], images: &[u32], injective: bool) -> Option<Vec<u32>> {
        let mut phi = vec![u32::MAX; self.order];
        let mut used = vec![false; target.order];
        phi[0] = 0;
        used[0] = true;
        let mut elems = vec![0u32];
        let mut k = 0;
        while k < elems.len() {
            let x = elems[k];
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let py = target.mul(phi[x as usize], img);
                match phi[y as usize] {
                    u32::MAX => {
                        if injective && used[py as usize] {
                            return None;
                        }
                        used[py as usize] = true;
                        phi[y as usize] = py;
                        elems.push(y);
                    }
                    old if old != py => return None,
                    _ => {}
                }
            }
            k += 1;
        }
        Some(phi)
    }

    /// The regular action by right multiplication as permutations of indices.
    pub fn right_multiplication(&self, x: u32) -> Perm {
        Perm::from_images_unchecked((0..self.order as u32).map(|g| self.mul(g, x)).collect())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CayleyTable({}, order {})",
            self.name.as_deref().unwrap_or("?"),
            self.order
        )
    }
}
