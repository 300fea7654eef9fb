//! The Ingleton inequality on subgroup quadruples.
//!
//! For `H = (H1, H2, H3, H4)` write `Hij = Hi ∩ Hj` and so on. The inequality
//!
//! ```text
//! |H1| |H2| |H34| |H123| |H124|  >=  |H12| |H13| |H14| |H23| |H24|
//! ```
//!
//! holds for most quadruples; an *offender* is one where it fails strictly.

use std::cell::OnceCell;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, PrimInt};
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{quotient_group, GroupTable, Projection};
use crate::lattice::normal_subgroups;
use crate::subgroup::Subgroup;
use crate::{IngletonRatio, Score};

/// Four subgroups of one group, in positional roles `H1..H4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadruple {
    h: [Subgroup; 4],
}

impl Quadruple {
    pub fn new(h1: Subgroup, h2: Subgroup, h3: Subgroup, h4: Subgroup) -> Result<Quadruple> {
        Quadruple::from_array([h1, h2, h3, h4])
    }

    pub fn from_array(h: [Subgroup; 4]) -> Result<Quadruple> {
        let p = h[0].parent_uid();
        if h.iter().any(|s| s.parent_uid() != p) {
            return Err(Error::ParentMismatch);
        }
        Ok(Quadruple { h })
    }

    pub fn parent_uid(&self) -> u64 {
        self.h[0].parent_uid()
    }

    pub fn parts(&self) -> &[Subgroup; 4] {
        &self.h
    }

    pub fn into_parts(self) -> [Subgroup; 4] {
        self.h
    }

    /// Role `i` in `1..=4`.
    pub fn h(&self, i: usize) -> &Subgroup {
        &self.h[i - 1]
    }

    pub fn bits(&self) -> [&BitSet; 4] {
        [self.h[0].bits(), self.h[1].bits(), self.h[2].bits(), self.h[3].bits()]
    }

    pub fn swap12(&self) -> Quadruple {
        let [a, b, c, d] = self.h.clone();
        Quadruple { h: [b, a, c, d] }
    }

    pub fn swap34(&self) -> Quadruple {
        let [a, b, c, d] = self.h.clone();
        Quadruple { h: [a, b, d, c] }
    }

    /// Simultaneous conjugate `x^-1 Hi x`.
    pub fn conjugate(&self, g: &GroupTable, x: crate::group::ElementId) -> Quadruple {
        Quadruple {
            h: self.h.clone().map(|s| s.conjugate(g, x)),
        }
    }

    pub fn image(&self, proj: &Projection, quotient: &GroupTable) -> Result<Quadruple> {
        let [a, b, c, d] = &self.h;
        Quadruple::new(
            a.image(proj, quotient)?,
            b.image(proj, quotient)?,
            c.image(proj, quotient)?,
            d.image(proj, quotient)?,
        )
    }

    fn owned_by(&self, g: &GroupTable) -> Result<()> {
        if self.parent_uid() == g.uid() {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

/// The eleven subgroup orders entering the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IngletonTerms {
    pub h1: u64,
    pub h2: u64,
    pub h34: u64,
    pub h123: u64,
    pub h124: u64,
    pub h12: u64,
    pub h13: u64,
    pub h14: u64,
    pub h23: u64,
    pub h24: u64,
    pub h1234: u64,
}

impl IngletonTerms {
    pub fn from_bits(h: [&BitSet; 4]) -> IngletonTerms {
        let [b1, b2, b3, b4] = h;
        let h12 = b1.and(b2);
        let c = |x: &BitSet, y: &BitSet| x.and_count(y) as u64;
        let h34 = b3.and(b4);
        IngletonTerms {
            h1: b1.count() as u64,
            h2: b2.count() as u64,
            h34: h34.count() as u64,
            h123: c(&h12, b3),
            h124: c(&h12, b4),
            h12: h12.count() as u64,
            h13: c(b1, b3),
            h14: c(b1, b4),
            h23: c(b2, b3),
            h24: c(b2, b4),
            h1234: c(&h12, &h34),
        }
    }

    pub fn lhs_factors(&self) -> [u64; 5] {
        [self.h1, self.h2, self.h34, self.h123, self.h124]
    }

    pub fn rhs_factors(&self) -> [u64; 5] {
        [self.h12, self.h13, self.h14, self.h23, self.h24]
    }

    fn product<T: PrimInt>(factors: [u64; 5]) -> T {
        factors.iter().fold(T::one(), |acc, &f| {
            acc.checked_mul(&T::from(f).expect("term fits the integer type"))
                .expect("Ingleton product overflows the integer type")
        })
    }

    pub fn lhs<T: PrimInt>(&self) -> T {
        Self::product(self.lhs_factors())
    }

    pub fn rhs<T: PrimInt>(&self) -> T {
        Self::product(self.rhs_factors())
    }

    /// `rhs / lhs` in lowest terms.
    pub fn ratio<T: PrimInt + Integer>(&self) -> Ratio<T> {
        Ratio::new(self.rhs(), self.lhs())
    }

    pub fn is_offender(&self) -> bool {
        self.lhs::<u128>() < self.rhs::<u128>()
    }

    /// `ln(rhs/lhs) / ln(|G| / |H1234|)`; zero when every `Hi` is `G`.
    pub fn score<F: Float>(&self, group_order: usize) -> F {
        let ln = |x: u64| F::from(x).unwrap().ln();
        let num = self.rhs_factors().iter().map(|&x| ln(x)).fold(F::zero(), |a, b| a + b)
            - self.lhs_factors().iter().map(|&x| ln(x)).fold(F::zero(), |a, b| a + b);
        let den = ln(group_order as u64) - ln(self.h1234);
        if den == F::zero() {
            F::zero()
        } else {
            num / den
        }
    }

    /// Whether `H12 = H123 H124` as sets, which forces the inequality.
    pub fn h12_factorizes(&self) -> bool {
        self.h123 * self.h124 == self.h12 * self.h1234
    }
}

impl fmt::Display for IngletonTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{} | {},{},{},{},{}; {})",
            self.h1,
            self.h2,
            self.h34,
            self.h123,
            self.h124,
            self.h12,
            self.h13,
            self.h14,
            self.h23,
            self.h24,
            self.h1234
        )
    }
}

pub fn ingleton_terms(g: &GroupTable, q: &Quadruple) -> Result<IngletonTerms> {
    q.owned_by(g)?;
    Ok(IngletonTerms::from_bits(q.bits()))
}

pub fn is_offender(g: &GroupTable, q: &Quadruple) -> Result<bool> {
    Ok(ingleton_terms(g, q)?.is_offender())
}

pub fn ratio(g: &GroupTable, q: &Quadruple) -> Result<IngletonRatio> {
    Ok(ingleton_terms(g, q)?.ratio())
}

pub fn score(g: &GroupTable, q: &Quadruple) -> Result<Score> {
    Ok(ingleton_terms(g, q)?.score(g.order()))
}

fn generated_by_all(g: &GroupTable, parts: &[&Subgroup]) -> Subgroup {
    let gens: Vec<_> = parts.iter().flat_map(|s| s.generators().iter().copied()).collect();
    Subgroup::generated(g, &gens).expect("generators come from g")
}

pub fn is_generative(g: &GroupTable, q: &Quadruple) -> Result<bool> {
    q.owned_by(g)?;
    let [a, b, c, d] = q.parts();
    Ok(generated_by_all(g, &[a, b, c, d]).order() == g.order())
}

pub fn is_irreducible(g: &GroupTable, q: &Quadruple) -> Result<bool> {
    Ok(is_generative(g, q)? && q.parts().iter().all(|h| h.core(g).is_trivial()))
}

/// One nontrivial proper normal subgroup with its quotient.
pub struct NormalQuotient {
    pub normal: Subgroup,
    pub quotient: GroupTable,
    pub projection: Projection,
}

/// Every quotient by a nontrivial proper normal subgroup, built once.
pub fn normal_quotients(g: &GroupTable) -> Vec<NormalQuotient> {
    normal_subgroups(g)
        .into_iter()
        .filter(|n| !n.is_trivial() && n.order() < g.order())
        .map(|n| {
            let (quotient, projection) = quotient_group(g, &n).expect("normal subgroup of g");
            NormalQuotient {
                normal: n,
                quotient,
                projection,
            }
        })
        .collect()
}

/// Images of `q` in every proper quotient, with whether each is an offender.
pub fn quotient_images(g: &GroupTable, q: &Quadruple, quotients: &[NormalQuotient]) -> Result<Vec<bool>> {
    q.owned_by(g)?;
    quotients
        .iter()
        .map(|nq| {
            let img = q.image(&nq.projection, &nq.quotient)?;
            Ok(IngletonTerms::from_bits(img.bits()).is_offender())
        })
        .collect()
}

/// Irreducible, and no image modulo a nontrivial normal subgroup is an
/// offender. A reducible quadruple is reported as not indomitable.
pub fn is_indomitable(g: &GroupTable, q: &Quadruple) -> Result<bool> {
    Classifier::new(g).is_indomitable(q)
}

/// Caches the normal quotients of a group across many classifications.
pub struct Classifier<'g> {
    g: &'g GroupTable,
    quotients: OnceCell<Vec<NormalQuotient>>,
}

impl<'g> Classifier<'g> {
    pub fn new(g: &'g GroupTable) -> Self {
        Classifier {
            g,
            quotients: OnceCell::new(),
        }
    }

    pub fn quotients(&self) -> &[NormalQuotient] {
        self.quotients.get_or_init(|| normal_quotients(self.g))
    }

    pub fn is_indomitable(&self, q: &Quadruple) -> Result<bool> {
        if !is_irreducible(self.g, q)? {
            return Ok(false);
        }
        Ok(!quotient_images(self.g, q, self.quotients())?.into_iter().any(|o| o))
    }

    /// Full report; irreducibility and indomitability only when asked.
    pub fn report(&self, q: &Quadruple, irreducible: bool, indomitable: bool) -> Result<IngletonReport> {
        let terms = ingleton_terms(self.g, q)?;
        let generative = is_generative(self.g, q)?;
        let irr = if irreducible || indomitable {
            Some(is_irreducible(self.g, q)?)
        } else {
            None
        };
        let ind = if indomitable {
            Some(self.is_indomitable(q)?)
        } else {
            None
        };
        Ok(IngletonReport::from_terms(self.g.order(), terms, generative, irr, ind))
    }
}

/// Everything computed about one quadruple.
#[derive(Clone, Debug, PartialEq)]
pub struct IngletonReport {
    pub group_order: usize,
    pub terms: IngletonTerms,
    pub lhs: u128,
    pub rhs: u128,
    pub ratio: IngletonRatio,
    pub score: Score,
    pub offender: bool,
    pub generative: bool,
    pub irreducible: Option<bool>,
    pub indomitable: Option<bool>,
}

impl IngletonReport {
    pub fn from_terms(
        group_order: usize,
        terms: IngletonTerms,
        generative: bool,
        irreducible: Option<bool>,
        indomitable: Option<bool>,
    ) -> IngletonReport {
        IngletonReport {
            group_order,
            terms,
            lhs: terms.lhs(),
            rhs: terms.rhs(),
            ratio: terms.ratio(),
            score: terms.score(group_order),
            offender: terms.is_offender(),
            generative,
            irreducible,
            indomitable,
        }
    }
}

pub fn report(g: &GroupTable, q: &Quadruple) -> Result<IngletonReport> {
    Classifier::new(g).report(q, true, true)
}

/// Replaces `H1` by `⟨H13, H14⟩`; an offender stays an offender.
pub fn shrink_h1(g: &GroupTable, q: &Quadruple) -> Result<Quadruple> {
    q.owned_by(g)?;
    let [h1, h2, h3, h4] = q.parts().clone();
    let h13 = Subgroup::intersection(g, &h1, &h3)?;
    let h14 = Subgroup::intersection(g, &h1, &h4)?;
    Quadruple::new(Subgroup::join(g, &h13, &h14)?, h2, h3, h4)
}

/// Repeatedly replaces each `Hi` by a join of two of its intersections
/// that keeps offenders offenders, until nothing shrinks:
/// `H1, H2` by `⟨Hij, Hik⟩` for their three pairs of partners and
/// `H3` by `⟨H13, H23⟩`, `H4` by `⟨H14, H24⟩`.
pub fn shrink_all(g: &GroupTable, q: &Quadruple) -> Result<Quadruple> {
    q.owned_by(g)?;
    let mut h = q.parts().clone();
    let meet = |h: &[Subgroup; 4], i: usize, j: usize| Subgroup::intersection(g, &h[i], &h[j]);
    let moves: &[(usize, usize, usize)] = &[
        (0, 2, 3),
        (0, 1, 2),
        (0, 1, 3),
        (1, 2, 3),
        (1, 0, 2),
        (1, 0, 3),
        (2, 0, 1),
        (3, 0, 1),
    ];
    loop {
        let mut changed = false;
        for &(i, j, k) in moves {
            let a = meet(&h, i, j)?;
            let b = meet(&h, i, k)?;
            let t = Subgroup::join(g, &a, &b)?;
            if t.order() < h[i].order() {
                h[i] = t;
                changed = true;
            }
        }
        if !changed {
            return Quadruple::from_array(h);
        }
    }
}

/// `(NH1, NH2, NH3, NH4)` for a normal `N` lying in some `Hi`.
pub fn saturate_normal(g: &GroupTable, q: &Quadruple, n: &Subgroup) -> Result<Quadruple> {
    q.owned_by(g)?;
    if n.parent_uid() != g.uid() {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal(g) {
        return Err(Error::PreconditionFailed("N is not normal".into()));
    }
    if !q.parts().iter().any(|h| n.is_subgroup_of(h)) {
        return Err(Error::PreconditionFailed("N lies in no Hi".into()));
    }
    if !is_offender(g, q)? {
        return Err(Error::PreconditionFailed("not an offender".into()));
    }
    let mut out = Vec::with_capacity(4);
    for h in q.parts() {
        out.push(Subgroup::join(g, h, n)?);
    }
    let arr: [Subgroup; 4] = out.try_into().expect("four parts");
    Quadruple::from_array(arr)
}

/// Why a (partial) quadruple cannot be an offender.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exclusion {
    /// `H1` or `H2` is cyclic; carries the role.
    Cyclic(usize),
    /// `H3` or `H4` is cyclic of prime-power order.
    PrimePowerCyclic(usize),
    /// `Hi ∩ Hj = 1` for one of the five right-hand pairs.
    TrivialIntersection(usize, usize),
    /// `Hi ≤ Hj`.
    Containment(usize, usize),
    /// `H1 H2` is a subgroup.
    ProductSubgroup,
    /// `H12 = H123 H124`.
    FactorizedH12,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exclusion::Cyclic(i) => write!(f, "H{i}-cyclic"),
            Exclusion::PrimePowerCyclic(i) => write!(f, "H{i}-prime-power-cyclic"),
            Exclusion::TrivialIntersection(i, j) => write!(f, "trivial-H{i}{j}"),
            Exclusion::Containment(i, j) => write!(f, "H{i}-in-H{j}"),
            Exclusion::ProductSubgroup => write!(f, "product-subgroup"),
            Exclusion::FactorizedH12 => write!(f, "factorized-H12"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Excluded(Exclusion),
    Undetermined,
}

/// Applies every exclusion criterion that the assigned roles allow.
/// `roles[i]` is `H(i+1)` or `None` when unassigned. Never excludes an
/// offender.
pub fn exclusion_verdict(g: &GroupTable, roles: [Option<&Subgroup>; 4]) -> Verdict {
    use Exclusion::*;
    for i in [0, 1] {
        if let Some(h) = roles[i] {
            if h.is_cyclic(g) {
                return Verdict::Excluded(Cyclic(i + 1));
            }
        }
    }
    for i in [2, 3] {
        if let Some(h) = roles[i] {
            if h.is_cyclic_prime_power(g) {
                return Verdict::Excluded(PrimePowerCyclic(i + 1));
            }
        }
    }
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] {
        if let (Some(a), Some(b)) = (roles[i], roles[j]) {
            if a.bits().and_count(b.bits()) == 1 {
                return Verdict::Excluded(TrivialIntersection(i + 1, j + 1));
            }
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            if let (true, Some(a), Some(b)) = (i != j, roles[i], roles[j]) {
                if a.bits().is_subset(b.bits()) {
                    return Verdict::Excluded(Containment(i + 1, j + 1));
                }
            }
        }
    }
    if let (Some(a), Some(b)) = (roles[0], roles[1]) {
        if Subgroup::is_product_subgroup(g, a, b).unwrap_or(false) {
            return Verdict::Excluded(ProductSubgroup);
        }
    }
    if let [Some(a), Some(b), Some(c), Some(d)] = roles {
        if IngletonTerms::from_bits([a.bits(), b.bits(), c.bits(), d.bits()]).h12_factorizes() {
            return Verdict::Excluded(FactorizedH12);
        }
    }
    Verdict::Undetermined
}
