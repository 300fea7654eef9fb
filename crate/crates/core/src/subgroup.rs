//! Subgroups as membership bitsets over a parent [`GroupTable`].

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable, Projection};

/// Equality and hashing look at the parent and the element set only; the
/// stored generators are one generating set among many.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    bits: BitSet,
    order: usize,
    generators: Vec<ElementId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.bits.hash(state);
    }
}

/// Grows a closed subgroup by further elements, coset by coset.
///
/// The running set is always a union of right cosets `C*r` of the closed base
/// `C`; it is closed once every `r*s` lands inside for each coset
/// representative `r` and generator `s`.
struct Closure<'g> {
    g: &'g GroupTable,
    bits: BitSet,
    elems: Vec<ElementId>,
    gens: Vec<ElementId>,
}

impl<'g> Closure<'g> {
    fn trivial(g: &'g GroupTable) -> Self {
        let mut bits = BitSet::new(g.order());
        bits.insert(0);
        Closure {
            g,
            bits,
            elems: vec![g.identity()],
            gens: Vec::new(),
        }
    }

    fn from_subgroup(g: &'g GroupTable, h: &Subgroup) -> Self {
        Closure {
            g,
            bits: h.bits.clone(),
            elems: h.elements().collect(),
            gens: h.generators.clone(),
        }
    }

    fn add(&mut self, y: ElementId) {
        if self.bits.contains(y.index()) {
            return;
        }
        let g = self.g;
        self.gens.push(y);
        let base = self.elems.clone();
        let mut reps = vec![g.identity()];
        let add_coset = |z: ElementId, bits: &mut BitSet, elems: &mut Vec<ElementId>| {
            for &c in &base {
                let x = g.mul(c, z);
                if bits.insert(x.index()) {
                    elems.push(x);
                }
            }
        };
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for i in 0..self.gens.len() {
                let z = g.mul(r, self.gens[i]);
                if !self.bits.contains(z.index()) {
                    add_coset(z, &mut self.bits, &mut self.elems);
                    reps.push(z);
                }
            }
        }
    }

    fn finish(self) -> Subgroup {
        let order = self.elems.len();
        Subgroup {
            parent: self.g.uid(),
            bits: self.bits,
            order,
            generators: self.gens,
        }
    }
}

impl Subgroup {
    pub fn trivial(g: &GroupTable) -> Subgroup {
        Closure::trivial(g).finish()
    }

    pub fn whole(g: &GroupTable) -> Subgroup {
        Subgroup {
            parent: g.uid(),
            bits: BitSet::full(g.order()),
            order: g.order(),
            generators: g.generators(),
        }
    }

    /// Smallest subgroup containing `elems`.
    pub fn generated(g: &GroupTable, elems: &[ElementId]) -> Result<Subgroup> {
        let mut c = Closure::trivial(g);
        for &x in elems {
            c.add(g.check_id(x)?);
        }
        Ok(c.finish())
    }

    /// Wraps a membership set already known to be closed, choosing a small
    /// generating set greedily in increasing id order.
    pub fn from_closed_bits(g: &GroupTable, bits: BitSet) -> Subgroup {
        let mut c = Closure::trivial(g);
        for x in bits.iter() {
            c.add(ElementId(x as u32));
            if c.elems.len() == bits.count() {
                break;
            }
        }
        debug_assert_eq!(c.bits, bits, "membership set was not closed");
        c.finish()
    }

    /// Like [`Subgroup::from_closed_bits`] but with caller-supplied generators.
    pub(crate) fn from_parts(g: &GroupTable, bits: BitSet, generators: Vec<ElementId>) -> Subgroup {
        Subgroup {
            parent: g.uid(),
            order: bits.count(),
            bits,
            generators,
        }
    }

    pub fn parent_uid(&self) -> u64 {
        self.parent
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.bits.contains(x.index())
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.iter().map(|i| ElementId(i as u32))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    fn owned_by(&self, g: &GroupTable) -> Result<()> {
        if self.parent == g.uid() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn intersection(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        a.same_parent(b)?;
        a.owned_by(g)?;
        Ok(Subgroup::from_closed_bits(g, a.bits.and(&b.bits)))
    }

    pub fn intersection_order(a: &Subgroup, b: &Subgroup) -> Result<usize> {
        a.same_parent(b)?;
        Ok(a.bits.and_count(&b.bits))
    }

    /// `⟨A, B⟩`
    pub fn join(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        a.same_parent(b)?;
        a.owned_by(g)?;
        let (big, small) = if a.order >= b.order { (a, b) } else { (b, a) };
        let mut c = Closure::from_subgroup(g, big);
        for &x in &small.generators {
            c.add(x);
        }
        Ok(c.finish())
    }

    /// `⟨self, elems⟩`
    pub fn extended(&self, g: &GroupTable, elems: &[ElementId]) -> Result<Subgroup> {
        self.owned_by(g)?;
        let mut c = Closure::from_subgroup(g, self);
        for &x in elems {
            c.add(g.check_id(x)?);
        }
        Ok(c.finish())
    }

    /// `|AB| = |A||B|/|A∩B|`
    pub fn product_set_size(a: &Subgroup, b: &Subgroup) -> Result<usize> {
        let i = Subgroup::intersection_order(a, b)?;
        Ok(a.order * b.order / i)
    }

    /// Whether the product set `AB` is itself a subgroup.
    pub fn is_product_subgroup(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<bool> {
        let p = Subgroup::product_set_size(a, b)?;
        Ok(Subgroup::join(g, a, b)?.order == p)
    }

    /// `x^-1 H x`
    pub fn conjugate(&self, g: &GroupTable, x: ElementId) -> Subgroup {
        let xi = g.inv(x);
        let bits = BitSet::from_indices(
            g.order(),
            self.elements().map(|h| g.mul(g.mul(xi, h), x).index()),
        );
        let generators = self.generators.iter().map(|&h| g.conj(h, x)).collect();
        Subgroup::from_parts(g, bits, generators)
    }

    pub fn is_normal(&self, g: &GroupTable) -> bool {
        g.generators().iter().all(|&s| {
            self.generators
                .iter()
                .all(|&h| self.contains(g.conj(h, s)))
        })
    }

    /// All distinct conjugates `x^-1 H x`, found by orbit search over the
    /// group generators. The first entry is `self`.
    pub fn conjugates(&self, g: &GroupTable) -> Vec<Subgroup> {
        let gens = g.generators();
        let mut orbit = vec![self.clone()];
        let mut seen = std::collections::HashSet::from([self.bits.clone()]);
        let mut head = 0;
        while head < orbit.len() {
            for &s in &gens {
                let c = orbit[head].conjugate(g, s);
                if seen.insert(c.bits.clone()) {
                    orbit.push(c);
                }
            }
            head += 1;
        }
        orbit
    }

    /// Largest normal subgroup of `G` inside `H`: the intersection of all
    /// conjugates of `H`.
    pub fn core(&self, g: &GroupTable) -> Subgroup {
        let mut bits = self.bits.clone();
        for c in self.conjugates(g) {
            bits = bits.and(&c.bits);
        }
        Subgroup::from_closed_bits(g, bits)
    }

    /// Smallest normal subgroup of `G` containing `self`.
    pub fn normal_closure(&self, g: &GroupTable) -> Subgroup {
        let gens = g.generators();
        let mut c = Closure::from_subgroup(g, self);
        loop {
            let mut grew = false;
            let current = c.gens.clone();
            for &h in &current {
                for &s in &gens {
                    let x = g.conj(h, s);
                    if !c.bits.contains(x.index()) {
                        c.add(x);
                        grew = true;
                    }
                }
            }
            if !grew {
                return c.finish();
            }
        }
    }

    pub fn is_cyclic(&self, g: &GroupTable) -> bool {
        self.elements().any(|x| g.element_order(x) == self.order)
    }

    /// Cyclic of order `p^k` for a prime `p` (the trivial group counts).
    pub fn is_cyclic_prime_power(&self, g: &GroupTable) -> bool {
        is_prime_power(self.order) && self.is_cyclic(g)
    }

    pub fn is_abelian(&self, g: &GroupTable) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| g.mul(a, b) == g.mul(b, a))
        })
    }

    /// Image of `self` in the quotient under `proj`.
    pub fn image(&self, proj: &Projection, quotient: &GroupTable) -> Result<Subgroup> {
        if proj.source_uid() != self.parent || proj.target_uid() != quotient.uid() {
            return Err(Error::ParentMismatch);
        }
        let bits = BitSet::from_indices(
            quotient.order(),
            self.elements().map(|x| proj.apply(x).index()),
        );
        let generators = self.generators.iter().map(|&x| proj.apply(x)).collect();
        Ok(Subgroup::from_parts(quotient, bits, generators))
    }

    /// Checks closure, identity and that the generators generate the set.
    pub fn check(&self, g: &GroupTable) -> bool {
        self.contains(g.identity())
            && self.order == self.bits.count()
            && g.order() % self.order == 0
            && self
                .elements()
                .all(|a| self.contains(g.inv(a)) && self.elements().all(|b| self.contains(g.mul(a, b))))
            && Subgroup::generated(g, &self.generators)
                .map(|h| h.bits == self.bits)
                .unwrap_or(false)
    }
}

pub fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return n == 1;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Center of `G`.
pub fn center(g: &GroupTable) -> Subgroup {
    let gens = g.generators();
    let bits = BitSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
            .map(|z| z.index()),
    );
    Subgroup::from_closed_bits(g, bits)
}
