//! Exhaustive offender search over the subgroup lattice.
//!
//! For fixed `H1, H2` put `P = |H1 H2| = |H1||H2|/|H12|` and, for any
//! subgroup `K`, `f(K) = |K∩H1| |K∩H2| / |K∩H12|` (the size of the product
//! set `(K∩H1)(K∩H2)`). The inequality for `(H1, H2, H3, H4)` then reads
//! `P |H34| >= f(H3) f(H4)`, so with candidates sorted by `f` the inner loop
//! stops as soon as `f(H3) f(H4) <= P`.

use std::collections::HashSet;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::ingleton::{Classifier, IngletonReport, Quadruple};
use crate::lattice::{SubgroupLattice, DEFAULT_SUBGROUP_CAP};
use crate::subgroup::Subgroup;

/// Sound exclusion rules that the search may apply; each can be disabled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    /// `H1`, `H2` not cyclic.
    CyclicH1H2,
    /// `H12, H13, H14, H23, H24` all nontrivial.
    TrivialIntersection,
    /// No `Hi` inside another.
    Containment,
    /// `H1 H2` not a subgroup.
    ProductSubgroup,
    /// `H3`, `H4` not cyclic of prime-power order.
    PrimePowerCyclic,
    /// `H12 ≠ H123 H124`.
    FactorizedH12,
}

impl Filter {
    pub const ALL: [Filter; 6] = [
        Filter::CyclicH1H2,
        Filter::TrivialIntersection,
        Filter::Containment,
        Filter::ProductSubgroup,
        Filter::PrimePowerCyclic,
        Filter::FactorizedH12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::CyclicH1H2 => "cyclic-h1h2",
            Filter::TrivialIntersection => "trivial-intersection",
            Filter::Containment => "containment",
            Filter::ProductSubgroup => "product-subgroup",
            Filter::PrimePowerCyclic => "prime-power-cyclic",
            Filter::FactorizedH12 => "factorized-h12",
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Filter> {
        if s == "all" {
            return Err(Error::Parse("'all' names several filters".into()));
        }
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown filter '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub enum Requirement {
    /// Any offender.
    None,
    #[default]
    Generative,
    Irreducible,
    Indomitable,
}

impl FromStr for Requirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Requirement> {
        match s {
            "none" | "any" => Ok(Requirement::None),
            "generative" => Ok(Requirement::Generative),
            "irreducible" => Ok(Requirement::Irreducible),
            "indomitable" => Ok(Requirement::Indomitable),
            _ => Err(Error::Parse(format!("unknown requirement '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub require: Requirement,
    /// Keep only quadruples meeting the generation conditions a minimal
    /// violator must satisfy (see [`minimal_constraints`]).
    pub minimal_mode: bool,
    pub disable_filters: Vec<Filter>,
    pub subgroup_cap: usize,
    pub time_budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            require: Requirement::Generative,
            minimal_mode: false,
            disable_filters: Vec::new(),
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            time_budget: Some(Duration::from_secs(30 * 60)),
        }
    }
}

impl SearchOptions {
    /// No filters and no requirement: every offender class.
    pub fn unfiltered() -> Self {
        SearchOptions {
            require: Requirement::None,
            disable_filters: Filter::ALL.to_vec(),
            ..Default::default()
        }
    }

    fn on(&self, f: Filter) -> bool {
        !self.disable_filters.contains(&f)
    }
}

#[derive(Clone, Debug)]
pub struct OffenderClass {
    /// Least member of the class.
    pub representative: Quadruple,
    /// Lattice indices of the representative.
    pub indices: [usize; 4],
    pub class_size: usize,
    pub report: IngletonReport,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub classes: Vec<OffenderClass>,
    /// False when the time budget ran out; `classes` is then partial.
    pub complete: bool,
    pub lattice_size: usize,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn require_complete(self, budget: Duration) -> Result<SearchOutcome> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::TimeBudgetExceeded {
                seconds: budget.as_secs(),
            })
        }
    }

    /// Total number of offender quadruples over all classes.
    pub fn total_offenders(&self) -> usize {
        self.classes.iter().map(|c| c.class_size).sum()
    }
}

type Tuple = [u32; 4];

/// Orbit of `t` under conjugation and the two role swaps.
fn orbit(lat: &SubgroupLattice, t: Tuple) -> Vec<Tuple> {
    let act = lat.conjugation_action();
    let mut seen = HashSet::from([t]);
    let mut out = vec![t];
    let mut head = 0;
    while head < out.len() {
        let [a, b, c, d] = out[head];
        head += 1;
        let mut next = vec![[b, a, c, d], [a, b, d, c]];
        for m in act {
            next.push([m[a as usize], m[b as usize], m[c as usize], m[d as usize]]);
        }
        for n in next {
            if seen.insert(n) {
                out.push(n);
            }
        }
    }
    out
}

fn union(lat: &SubgroupLattice, idx: &[u32]) -> BitSet {
    let mut it = idx.iter();
    let mut acc = lat.get(*it.next().unwrap() as usize).bits().clone();
    for &i in it {
        acc = acc.or(lat.get(i as usize).bits());
    }
    acc
}

fn minimal_constraints_idx(lat: &SubgroupLattice, t: Tuple) -> bool {
    let b = |i: usize| lat.get(t[i] as usize).bits();
    for i in 0..4 {
        for j in i + 1..4 {
            if !lat.generates_whole(&b(i).or(b(j))) {
                return false;
            }
            if (i, j) == (2, 3) {
                continue;
            }
            let meet = b(i).and(b(j));
            for k in (0..4).filter(|&k| k != i && k != j) {
                if !lat.generates_whole(&meet.or(b(k))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Generation conditions forced on an offender in a group none of whose
/// proper subgroups has an offender: every `⟨Hi, Hj⟩ = G`, and
/// `⟨Hk, Hij⟩ = G` whenever `{i, j} ≠ {3, 4}` and `k ∉ {i, j}`.
pub fn minimal_constraints(g: &GroupTable, q: &Quadruple) -> Result<bool> {
    if q.parent_uid() != g.uid() {
        return Err(Error::ParentMismatch);
    }
    let h = q.parts();
    let whole = |a: &Subgroup, b: &Subgroup| -> Result<bool> { Ok(Subgroup::join(g, a, b)?.order() == g.order()) };
    for i in 0..4 {
        for j in i + 1..4 {
            if !whole(&h[i], &h[j])? {
                return Ok(false);
            }
            if (i, j) == (2, 3) {
                continue;
            }
            let meet = Subgroup::intersection(g, &h[i], &h[j])?;
            for k in (0..4).filter(|&k| k != i && k != j) {
                if !whole(&h[k], &meet)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Least member, in lexicographic `(order, bitset)` order per role, of the
/// orbit of `q` under simultaneous conjugation and the swaps `H1↔H2`,
/// `H3↔H4`.
pub fn canonical_class(g: &GroupTable, q: &Quadruple) -> Result<Quadruple> {
    if q.parent_uid() != g.uid() {
        return Err(Error::ParentMismatch);
    }
    let key = |q: &Quadruple| q.parts().clone().map(|s| (s.order(), s.bits().clone()));
    let mut best: Option<([(usize, BitSet); 4], Quadruple)> = None;
    for x in g.elements() {
        let c = q.conjugate(g, x);
        for cand in [c.clone(), c.swap12(), c.swap34(), c.swap12().swap34()] {
            let k = key(&cand);
            if best.as_ref().map_or(true, |(bk, _)| k < *bk) {
                best = Some((k, cand));
            }
        }
    }
    Ok(best.expect("group is nonempty").1)
}

struct PairHits {
    hits: Vec<Tuple>,
}

pub fn search_offenders(g: &GroupTable, opts: &SearchOptions) -> Result<SearchOutcome> {
    let start = Instant::now();
    let lat = SubgroupLattice::with_cap(g, opts.subgroup_cap)?;
    search_in_lattice(g, &lat, opts, start)
}

pub fn search_in_lattice(
    g: &GroupTable,
    lat: &SubgroupLattice,
    opts: &SearchOptions,
    start: Instant,
) -> Result<SearchOutcome> {
    let n = lat.len();
    let subs = lat.subgroups();
    let order = |i: usize| subs[i].order() as u64;
    let cyc = opts.on(Filter::CyclicH1H2);
    let triv = opts.on(Filter::TrivialIntersection);
    let cont = opts.on(Filter::Containment);
    let prod = opts.on(Filter::ProductSubgroup);
    let ppc = opts.on(Filter::PrimePowerCyclic);
    let fact = opts.on(Filter::FactorizedH12);

    let out_of_time = AtomicBool::new(false);
    let expired = || {
        if let Some(b) = opts.time_budget {
            if start.elapsed() > b {
                out_of_time.store(true, Ordering::Relaxed);
            }
        }
        out_of_time.load(Ordering::Relaxed)
    };

    // in an abelian group every H1 H2 is a subgroup
    let h1s: Vec<usize> = if prod && g.is_abelian() {
        Vec::new()
    } else {
        lat.classes()
            .iter()
            .map(|c| c.representative)
            .filter(|&i| !(cyc && lat.is_cyclic(i)))
            .collect()
    };
    let mut pairs = Vec::new();
    for &i in &h1s {
        for j in 0..n {
            if cyc && lat.is_cyclic(j) {
                continue;
            }
            let (a, b) = (subs[i].bits(), subs[j].bits());
            let i12 = a.and_count(b) as u64;
            if triv && i12 == 1 {
                continue;
            }
            if cont && (i12 == order(i) || i12 == order(j)) {
                continue;
            }
            if prod {
                let p = order(i) * order(j) / i12;
                let u = a.or(b);
                if lat.with_order(p as usize).any(|k| u.is_subset(subs[k].bits())) {
                    continue;
                }
            }
            pairs.push((i, j));
        }
    }

    let results: Vec<PairHits> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if expired() {
                return PairHits { hits: vec![] };
            }
            let (b1, b2) = (subs[i].bits(), subs[j].bits());
            let h12 = b1.and(b2);
            let o12 = h12.count() as u64;
            let p = order(i) * order(j) / o12;
            // (f, index, |K∩H12|)
            let mut cand: Vec<(u64, u32, u64)> = Vec::new();
            for k in 0..n {
                let bk = subs[k].bits();
                let k1 = bk.and_count(b1) as u64;
                let k2 = bk.and_count(b2) as u64;
                if triv && (k1 == 1 || k2 == 1) {
                    continue;
                }
                if ppc && lat.is_prime_power_cyclic(k) {
                    continue;
                }
                let ok = order(k);
                if cont && (k1 == ok || k2 == ok || k1 == order(i) || k2 == order(j)) {
                    continue;
                }
                let k12 = bk.and_count(&h12) as u64;
                cand.push((k1 * k2 / k12, k as u32, k12));
            }
            cand.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
            let mut hits = Vec::new();
            for (ai, &(f3, k3, d)) in cand.iter().enumerate() {
                if f3 * cand.first().map_or(0, |c| c.0) <= p {
                    break;
                }
                let b3 = subs[k3 as usize].bits();
                let o3 = order(k3 as usize);
                let h123 = if fact { Some(h12.and(b3)) } else { None };
                for (bi, &(f4, k4, e)) in cand.iter().enumerate() {
                    if f3 * f4 <= p {
                        break;
                    }
                    if ai == bi && cont {
                        continue;
                    }
                    let b4 = subs[k4 as usize].bits();
                    let c = b3.and_count(b4) as u64;
                    if cont && (c == o3 || c == order(k4 as usize)) {
                        continue;
                    }
                    if let Some(h123) = &h123 {
                        let j1234 = h123.and_count(b4) as u64;
                        if d * e == o12 * j1234 {
                            continue;
                        }
                    }
                    if c * p < f3 * f4 {
                        hits.push([i as u32, j as u32, k3, k4]);
                    }
                }
            }
            PairHits { hits }
        })
        .collect();
    let complete = !out_of_time.load(Ordering::Relaxed) && !expired();

    // Canonicalize: each orbit once, in deterministic discovery order.
    let mut seen: HashSet<Tuple> = HashSet::new();
    let mut found: Vec<(Tuple, usize)> = Vec::new();
    for t in results.into_iter().flat_map(|r| r.hits) {
        if seen.contains(&t) {
            continue;
        }
        let orb = orbit(lat, t);
        let rep = *orb.iter().min().unwrap();
        let size = orb.len();
        seen.extend(orb);
        if opts.require >= Requirement::Generative && !lat.generates_whole(&union(lat, &rep)) {
            continue;
        }
        if opts.minimal_mode && !minimal_constraints_idx(lat, rep) {
            continue;
        }
        found.push((rep, size));
    }
    found.sort();

    let classifier = Classifier::new(g);
    let mut classes = Vec::new();
    for (rep, size) in found {
        let parts = rep.map(|i| subs[i as usize].clone());
        let q = Quadruple::from_array(parts)?;
        let report = classifier.report(
            &q,
            opts.require >= Requirement::Irreducible,
            opts.require >= Requirement::Indomitable,
        )?;
        debug_assert!(report.offender);
        let keep = match opts.require {
            Requirement::Irreducible => report.irreducible == Some(true),
            Requirement::Indomitable => report.indomitable == Some(true),
            _ => true,
        };
        if keep {
            classes.push(OffenderClass {
                representative: q,
                indices: rep.map(|i| i as usize),
                class_size: size,
                report,
            });
        }
    }
    Ok(SearchOutcome {
        classes,
        complete,
        lattice_size: n,
        elapsed: start.elapsed(),
    })
}
