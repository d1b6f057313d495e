//! Block systems of transitive groups.
//!
//! Every block system of a transitive group is determined by its block through
//! point 0, and that block is the union of the minimal blocks through `{0, β}`
//! for the β it contains. So the lattice is the closure of the minimal systems
//! ("atoms") under join, which preserves invariance.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::partition::{Partition, UnionFind};

/// Default safety cap on the number of block systems.
pub const DEFAULT_MAX_SYSTEMS: usize = 100_000;

/// All invariant partitions of a transitive group, sorted by number of parts
/// and then by canonical labels. Both trivial partitions are included.
#[derive(Clone, Debug)]
pub struct BlockLattice {
    systems: Vec<Partition>,
}

impl BlockLattice {
    pub fn systems(&self) -> &[Partition] {
        &self.systems
    }

    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.systems.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Partition> {
        self.systems.iter().filter(|p| !p.is_trivial())
    }
}

pub fn is_invariant(group: &PermGroup, partition: &Partition) -> bool {
    partition.degree() == group.degree() && group.generators().iter().all(|g| partition.is_invariant_under(g))
}

fn require_transitive(group: &PermGroup) -> Result<()> {
    if group.is_transitive() {
        Ok(())
    } else {
        Err(Error::NotTransitive)
    }
}

/// The finest invariant partition in which `alpha` and `beta` share a part.
pub fn minimal_block_system(group: &PermGroup, alpha: u32, beta: u32) -> Result<Partition> {
    require_transitive(group)?;
    let n = group.degree();
    if alpha as usize >= n || beta as usize >= n {
        return Err(Error::PointOutOfRange {
            point: alpha.max(beta) as usize + 1,
            degree: n,
        });
    }
    Ok(minimal_system_unchecked(group, alpha, beta))
}

fn minimal_system_unchecked(group: &PermGroup, alpha: u32, beta: u32) -> Partition {
    let mut uf = UnionFind::new(group.degree());
    let mut queue = Vec::new();
    if uf.union(alpha, beta) {
        queue.push((alpha, beta));
    }
    // each queued pair is merged; closing pairs under generators gives invariance
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    uf.into_partition()
}

/// Smallest block containing `alpha` and `beta`, sorted.
pub fn minimal_block(group: &PermGroup, alpha: u32, beta: u32) -> Result<Vec<u32>> {
    Ok(minimal_block_system(group, alpha, beta)?.part_containing(alpha))
}

/// The minimal systems through `{0, β}` for every β ≠ 0, deduplicated.
///
/// Only one β per orbit of the point stabilizer is computed directly: for
/// `h` fixing 0 the system for `β^h` is the image of the system for β.
fn atoms(group: &PermGroup) -> Vec<Partition> {
    let n = group.degree();
    let stab = group.point_stabilizer(0);
    let mut system_of: Vec<Option<Partition>> = vec![None; n];
    for beta in 1..n as u32 {
        if system_of[beta as usize].is_some() {
            continue;
        }
        system_of[beta as usize] = Some(minimal_system_unchecked(group, 0, beta));
        let mut queue = vec![beta];
        while let Some(x) = queue.pop() {
            for h in stab.generators() {
                let y = h.apply(x);
                if system_of[y as usize].is_none() {
                    let img = system_of[x as usize].as_ref().unwrap().image(h);
                    system_of[y as usize] = Some(img);
                    queue.push(y);
                }
            }
        }
    }
    let mut seen = HashSet::new();
    system_of
        .into_iter()
        .flatten()
        .filter(|p| seen.insert(p.clone()))
        .collect()
}

pub fn all_block_systems(group: &PermGroup, max_systems: usize) -> Result<BlockLattice> {
    require_transitive(group)?;
    let n = group.degree();
    let atoms = atoms(group);
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut systems = Vec::new();
    let mut push = |p: Partition, systems: &mut Vec<Partition>| -> Result<()> {
        if seen.insert(p.clone()) {
            if systems.len() >= max_systems {
                return Err(crate::error::budget("block system", max_systems as u64));
            }
            systems.push(p);
        }
        Ok(())
    };
    push(Partition::singletons(n), &mut systems)?;
    push(Partition::one_part(n), &mut systems)?;
    for a in &atoms {
        push(a.clone(), &mut systems)?;
    }
    let mut k = 2;
    while k < systems.len() {
        for a in &atoms {
            let j = systems[k].join(a)?;
            push(j, &mut systems)?;
        }
        k += 1;
    }
    systems.sort_by(|a, b| (a.num_parts(), a.labels()).cmp(&(b.num_parts(), b.labels())));
    Ok(BlockLattice { systems })
}

/// Whether `partition` is the orbit partition of the kernel of the action on
/// its parts, i.e. the orbit partition of some subgroup.
pub fn kernel_orbit_test(group: &PermGroup, partition: &Partition) -> Result<bool> {
    let action = group.action_on_blocks(partition)?;
    Ok(action.kernel.orbits() == *partition)
}

/// Test-only oracle: every partition of the point set checked for invariance.
#[cfg(test)]
pub(crate) fn brute_force_systems(group: &PermGroup) -> Vec<Partition> {
    let mut out: Vec<Partition> = set_partitions(group.degree())
        .into_iter()
        .filter(|p| is_invariant(group, p))
        .collect();
    out.sort_by(|a, b| (a.num_parts(), a.labels()).cmp(&(b.num_parts(), b.labels())));
    out
}

/// All set partitions of `0..n` as restricted growth strings.
#[cfg(test)]
pub(crate) fn set_partitions(n: usize) -> Vec<Partition> {
    fn rec(labels: &mut Vec<u32>, max: u32, n: usize, out: &mut Vec<Partition>) {
        if labels.len() == n {
            out.push(Partition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            rec(labels, max.max(l), n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(&mut vec![0], 0, n, &mut out);
    out
}
