//! Slow reference computations sharing nothing with the library beyond
//! the multiplication table: naive closures, explicit conjugation and a
//! plain four-fold loop over all subgroups.

use std::collections::{BTreeMap, HashMap, HashSet};

use ingleton::{ElementId, GroupTable, Quadruple};

pub const WORDS: usize = 3;
pub type Bits = [u64; WORDS];
pub type Quad = [Bits; 4];

pub fn size(b: &Bits) -> u64 {
    b.iter().map(|w| w.count_ones() as u64).sum()
}

fn meet(a: &Bits, b: &Bits) -> u64 {
    (0..WORDS).map(|i| (a[i] & b[i]).count_ones() as u64).sum()
}

fn meet3(a: &Bits, b: &Bits, c: &Bits) -> u64 {
    (0..WORDS).map(|i| (a[i] & b[i] & c[i]).count_ones() as u64).sum()
}

fn has(b: &Bits, x: usize) -> bool {
    b[x / 64] >> (x % 64) & 1 == 1
}

fn set(b: &mut Bits, x: usize) {
    b[x / 64] |= 1 << (x % 64);
}

pub fn to_bits(words: &[u64]) -> Bits {
    let mut b = [0; WORDS];
    b[..words.len()].copy_from_slice(words);
    b
}

pub fn quad_of(q: &Quadruple) -> Quad {
    q.bits().map(|b| to_bits(b.words()))
}

/// Sort key: orders first, then the bit patterns.
fn key(q: &Quad) -> ([u64; 4], Quad) {
    (q.map(|b| size(&b)), *q)
}

pub struct Oracle {
    n: usize,
    mul: Vec<u32>,
    /// `conj[g][x] = g^-1 x g`.
    conj: Vec<Vec<u32>>,
    pub subgroups: Vec<Bits>,
}

#[derive(Debug, Default)]
pub struct Scan {
    /// Canonical representative and orbit size of each offender class.
    pub classes: BTreeMap<Quad, usize>,
    /// Offenders visited, counted with multiplicity of the loop.
    pub hits: u64,
}

impl Oracle {
    pub fn new(g: &GroupTable) -> Oracle {
        let n = g.order();
        assert!(n <= 64 * WORDS, "oracle handles orders up to {}", 64 * WORDS);
        let el = |i: usize| ElementId(i as u32);
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = g.mul(el(a), el(b)).0;
            }
        }
        let conj = (0..n)
            .map(|x| (0..n).map(|a| g.conj(el(a), el(x)).0).collect())
            .collect();
        let mut o = Oracle {
            n,
            mul,
            conj,
            subgroups: Vec::new(),
        };
        o.subgroups = o.enumerate();
        o
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    /// Subgroup generated by `gens`, by repeated right multiplication.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut b = [0; WORDS];
        set(&mut b, 0);
        let mut stack = vec![0usize];
        while let Some(a) = stack.pop() {
            for &s in gens {
                let c = self.m(a, s);
                if !has(&b, c) {
                    set(&mut b, c);
                    stack.push(c);
                }
            }
        }
        b
    }

    fn enumerate(&self) -> Vec<Bits> {
        // one generator per cyclic subgroup
        let mut cyclic: HashMap<Bits, usize> = HashMap::new();
        for x in 1..self.n {
            cyclic.entry(self.closure(&[x])).or_insert(x);
        }
        let mut gens: Vec<usize> = cyclic.into_values().collect();
        gens.sort();
        let trivial = self.closure(&[]);
        let mut seen: HashMap<Bits, Vec<usize>> = HashMap::from([(trivial, vec![])]);
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            let hg = seen[&h].clone();
            for &x in &gens {
                if has(&h, x) {
                    continue;
                }
                let mut k = hg.clone();
                k.push(x);
                let j = self.closure(&k);
                if !seen.contains_key(&j) {
                    seen.insert(j, k);
                    queue.push(j);
                }
            }
        }
        let mut out: Vec<Bits> = seen.into_keys().collect();
        out.sort_by_key(|b| (size(b), *b));
        out
    }

    /// Every subset containing the identity and closed under
    /// multiplication, by trying all of them. Only for tiny groups.
    pub fn closed_subsets(&self) -> Vec<Bits> {
        assert!(self.n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..1 << (self.n - 1) {
            let s = (mask << 1) | 1;
            let inside = |x: usize| s >> x & 1 == 1;
            let elems: Vec<usize> = (0..self.n).filter(|&x| inside(x)).collect();
            if elems.iter().all(|&a| elems.iter().all(|&b| inside(self.m(a, b)))) {
                out.push(to_bits(&[s as u64]));
            }
        }
        out.sort_by_key(|b| (size(b), *b));
        out
    }

    pub fn conjugate(&self, b: &Bits, g: usize) -> Bits {
        let mut out = [0; WORDS];
        for x in 0..self.n {
            if has(b, x) {
                set(&mut out, self.conj[g][x] as usize);
            }
        }
        out
    }

    pub fn is_cyclic(&self, b: &Bits) -> bool {
        (0..self.n).any(|x| has(b, x) && self.closure(&[x]) == *b)
    }

    /// Indices of one subgroup from each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut covered: HashSet<Bits> = HashSet::new();
        let mut reps = Vec::new();
        for (i, h) in self.subgroups.iter().enumerate() {
            if covered.contains(h) {
                continue;
            }
            reps.push(i);
            for g in 0..self.n {
                covered.insert(self.conjugate(h, g));
            }
        }
        reps
    }

    /// All images of `q` under conjugation and the two role swaps.
    pub fn orbit(&self, q: &Quad) -> HashSet<Quad> {
        let [a, b, c, d] = *q;
        let mut out = HashSet::new();
        for v in [[a, b, c, d], [b, a, c, d], [a, b, d, c], [b, a, d, c]] {
            for g in 0..self.n {
                out.insert(v.map(|h| self.conjugate(&h, g)));
            }
        }
        out
    }

    pub fn canonical(&self, q: &Quad) -> Quad {
        self.orbit(q).into_iter().min_by_key(key).unwrap()
    }

    /// Every offender class, from all quadruples with `H1` running over
    /// class representatives and `H4` not before `H3`.
    pub fn scan(&self) -> Scan {
        let s = &self.subgroups;
        let k = s.len();
        // pairwise intersection orders
        let pair: Vec<u64> = (0..k * k).map(|ij| meet(&s[ij / k], &s[ij % k])).collect();
        let mut out = Scan::default();
        let mut known: HashSet<Quad> = HashSet::new();
        for i1 in self.class_representatives() {
            let h1 = &s[i1];
            let o1 = size(h1);
            let p1 = &pair[i1 * k..(i1 + 1) * k];
            for (i2, h2) in s.iter().enumerate() {
                let o2 = size(h2);
                let p2 = &pair[i2 * k..(i2 + 1) * k];
                let o12 = p1[i2];
                let p12: Vec<u64> = s.iter().map(|h| meet3(h1, h2, h)).collect();
                for (i3, h3) in s.iter().enumerate() {
                    let p3 = &pair[i3 * k..(i3 + 1) * k];
                    let lhs0 = o1 * o2 * p12[i3];
                    let rhs0 = o12 * p1[i3] * p2[i3];
                    for i4 in i3..k {
                        let lhs = lhs0 * p3[i4] * p12[i4];
                        let rhs = rhs0 * p1[i4] * p2[i4];
                        if lhs >= rhs {
                            continue;
                        }
                        out.hits += 1;
                        let q = [*h1, *h2, *h3, s[i4]];
                        if known.contains(&q) {
                            continue;
                        }
                        let orbit = self.orbit(&q);
                        let rep = *orbit.iter().min_by_key(|q| key(q)).unwrap();
                        out.classes.insert(rep, orbit.len());
                        known.extend(orbit);
                    }
                }
            }
        }
        out
    }
}

/// `[|H1|, |H2|, |H34|, |H123|, |H124|]` and
/// `[|H12|, |H13|, |H14|, |H23|, |H24|]` computed directly.
pub fn sides(q: &Quad) -> ([u64; 5], [u64; 5]) {
    let [a, b, c, d] = q;
    (
        [size(a), size(b), meet(c, d), meet3(a, b, c), meet3(a, b, d)],
        [meet(a, b), meet(a, c), meet(a, d), meet(b, c), meet(b, d)],
    )
}

pub fn offends(q: &Quad) -> bool {
    let (l, r) = sides(q);
    l.iter().product::<u64>() < r.iter().product::<u64>()
}
