//! Whole-lattice operations: every subgroup, every normal subgroup, and
//! conjugacy classes of elements and of subgroups.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};
use crate::subgroup::{is_prime_power, Subgroup};

pub const DEFAULT_SUBGROUP_CAP: usize = 20_000;

/// Canonical subgroup order: by order, then by membership bitset.
pub fn canonical_cmp(a: &Subgroup, b: &Subgroup) -> std::cmp::Ordering {
    a.order().cmp(&b.order()).then_with(|| a.bits().cmp(b.bits()))
}

/// Conjugacy classes of elements, each sorted, classes ordered by their
/// least element.
pub fn element_classes(g: &GroupTable) -> Vec<Vec<ElementId>> {
    let gens = g.generators();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if class_of[x.index()] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x.index()] = id;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for &s in &gens {
                let z = g.conj(y, s);
                if class_of[z.index()] == usize::MAX {
                    class_of[z.index()] = id;
                    orbit.push(z);
                }
            }
        }
        orbit.sort();
        classes.push(orbit);
    }
    classes
}

fn cyclic_subgroups(g: &GroupTable, prime_power_only: bool) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let o = g.element_order(x);
        if prime_power_only && !is_prime_power(o) {
            continue;
        }
        let mut bits = BitSet::new(g.order());
        let mut y = g.identity();
        for _ in 0..o {
            bits.insert(y.index());
            y = g.mul(y, x);
        }
        if seen.insert(bits.clone()) {
            out.push(Subgroup::from_parts(g, bits, if o == 1 { vec![] } else { vec![x] }));
        }
    }
    out
}

/// Closes `seeds` under joins with the seeds themselves.
fn join_closure(g: &GroupTable, seeds: Vec<Subgroup>, cap: usize) -> Result<Vec<Subgroup>> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut all = Vec::new();
    let mut frontier = Vec::new();
    for s in seeds.iter().chain(std::iter::once(&Subgroup::trivial(g))) {
        if seen.insert(s.bits().clone()) {
            all.push(s.clone());
            frontier.push(s.clone());
        }
    }
    let seed_gens: Vec<Vec<ElementId>> = seeds.iter().map(|s| s.generators().to_vec()).collect();
    while !frontier.is_empty() {
        let produced: Vec<Subgroup> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                let mut local_seen = HashSet::new();
                let mut out = Vec::new();
                for gens in &seed_gens {
                    if gens.iter().all(|&x| s.contains(x)) {
                        continue;
                    }
                    let t = s.extended(g, gens).expect("ids come from the same group");
                    if local_seen.insert(t.bits().clone()) {
                        out.push(t);
                    }
                }
                out
            })
            .collect();
        let mut next = Vec::new();
        for t in produced {
            if seen.insert(t.bits().clone()) {
                if all.len() >= cap {
                    return Err(Error::LatticeCapExceeded { cap });
                }
                all.push(t.clone());
                next.push(t);
            }
        }
        frontier = next;
    }
    all.sort_by(canonical_cmp);
    Ok(all)
}

/// Every subgroup exactly once, in canonical order.
pub fn all_subgroups(g: &GroupTable) -> Result<Vec<Subgroup>> {
    all_subgroups_capped(g, DEFAULT_SUBGROUP_CAP)
}

/// Join-closure from the cyclic subgroups of prime-power order (every
/// subgroup is generated by its elements of prime-power order).
pub fn all_subgroups_capped(g: &GroupTable, cap: usize) -> Result<Vec<Subgroup>> {
    join_closure(g, cyclic_subgroups(g, true), cap)
}

/// Every normal subgroup, including `1` and `G`, in canonical order: joins
/// of normal closures of class representatives.
pub fn normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let mut seeds = Vec::new();
    let mut seen = HashSet::new();
    for class in element_classes(g) {
        let x = class[0];
        if x == g.identity() || !is_prime_power(g.element_order(x)) {
            continue;
        }
        let n = Subgroup::generated(g, &[x]).unwrap().normal_closure(g);
        if seen.insert(n.bits().clone()) {
            seeds.push(n);
        }
    }
    join_closure(g, seeds, usize::MAX).expect("no cap")
}

/// One conjugacy class of subgroups: indices into the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions `subs` under conjugation. Each class's representative has the
/// least membership bitset; classes come in order of first appearance.
pub fn subgroup_conjugacy_classes(g: &GroupTable, subs: &[Subgroup]) -> Vec<SubgroupClass> {
    let pos: HashMap<&BitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.bits(), i)).collect();
    let mut assigned = vec![false; subs.len()];
    let mut out = Vec::new();
    for i in 0..subs.len() {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<usize> = subs[i]
            .conjugates(g)
            .iter()
            .filter_map(|c| pos.get(c.bits()).copied())
            .collect();
        members.sort();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        let representative = *members
            .iter()
            .min_by(|&&a, &&b| subs[a].bits().cmp(subs[b].bits()))
            .unwrap();
        out.push(SubgroupClass {
            representative,
            members,
        });
    }
    out
}

/// The full subgroup lattice with the data the search needs precomputed.
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, u32>,
    cyclic: Vec<bool>,
    prime_power_cyclic: Vec<bool>,
    /// `conj[s][i]`: index of `H_i^{g_s}` for group generator `s`.
    conj: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    classes: Vec<SubgroupClass>,
    maximal: Vec<u32>,
}

impl SubgroupLattice {
    pub fn new(g: &GroupTable) -> Result<Self> {
        Self::with_cap(g, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(g: &GroupTable, cap: usize) -> Result<Self> {
        let subgroups = all_subgroups_capped(g, cap)?;
        let index: HashMap<BitSet, u32> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i as u32))
            .collect();
        let cyclic_bits: HashSet<BitSet> = cyclic_subgroups(g, false)
            .into_iter()
            .map(|s| s.bits().clone())
            .collect();
        let cyclic: Vec<bool> = subgroups.iter().map(|s| cyclic_bits.contains(s.bits())).collect();
        let prime_power_cyclic = subgroups
            .iter()
            .zip(&cyclic)
            .map(|(s, &c)| c && is_prime_power(s.order()))
            .collect();
        let conj: Vec<Vec<u32>> = g
            .generators()
            .iter()
            .map(|&x| {
                subgroups
                    .par_iter()
                    .map(|s| index[s.conjugate(g, x).bits()])
                    .collect()
            })
            .collect();
        let mut class_of = vec![u32::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            class_of[i] = cid;
            let mut members = vec![i];
            let mut head = 0;
            while head < members.len() {
                let j = members[head];
                head += 1;
                for c in &conj {
                    let k = c[j] as usize;
                    if class_of[k] == u32::MAX {
                        class_of[k] = cid;
                        members.push(k);
                    }
                }
            }
            members.sort();
            // canonical order is by (order, bits) and a class shares one
            // order, so the least index has the least bitset
            classes.push(SubgroupClass {
                representative: members[0],
                members,
            });
        }
        let top = subgroups.len() - 1;
        let maximal = (0..top)
            .filter(|&i| {
                !subgroups[i + 1..top]
                    .iter()
                    .any(|s| s.order() > subgroups[i].order() && subgroups[i].bits().is_subset(s.bits()))
            })
            .map(|i| i as u32)
            .collect();
        Ok(SubgroupLattice {
            maximal,
            subgroups,
            index,
            cyclic,
            prime_power_cyclic,
            conj,
            class_of,
            classes,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, bits: &BitSet) -> Option<usize> {
        self.index.get(bits).map(|&i| i as usize)
    }

    pub fn is_cyclic(&self, i: usize) -> bool {
        self.cyclic[i]
    }

    pub fn is_prime_power_cyclic(&self, i: usize) -> bool {
        self.prime_power_cyclic[i]
    }

    pub fn conjugation_action(&self) -> &[Vec<u32>] {
        &self.conj
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    /// Maximal proper subgroups (empty for the trivial group).
    pub fn maximal(&self) -> impl Iterator<Item = usize> + '_ {
        self.maximal.iter().map(|&i| i as usize)
    }

    /// Whether the elements of `bits` generate the whole group.
    pub fn generates_whole(&self, bits: &BitSet) -> bool {
        !self.maximal().any(|i| bits.is_subset(self.subgroups[i].bits()))
    }

    /// Indices of the subgroups of order exactly `order`.
    pub fn with_order(&self, order: usize) -> std::ops::Range<usize> {
        let lo = self.subgroups.partition_point(|s| s.order() < order);
        let hi = self.subgroups.partition_point(|s| s.order() <= order);
        lo..hi
    }

    /// Index of the smallest subgroup containing every element of `bits`.
    pub fn join_of(&self, bits: &BitSet) -> usize {
        self.subgroups
            .iter()
            .position(|s| bits.is_subset(s.bits()))
            .expect("the whole group contains everything")
    }
}
