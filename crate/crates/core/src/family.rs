//! An infinite family of supersoluble offenders: the group of upper
//! unitriangular 3x3 matrices over `F_q` extended by the torus
//! `diag(ζ, 1, ζ^-1)`, of order `q^3 (q-1)`, with four Frobenius-type
//! subgroups of order `q(q-1)` giving ratio `2(q-1)^2 / q^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldTable;
use crate::group::{build_group_with, BuildOptions, ElementId, GroupTable, DEFAULT_ORDER_CAP};
use crate::ingleton::{ingleton_terms, is_generative, IngletonTerms, Quadruple};
use crate::matrix::Matrix;
use crate::spec::GroupSpec;
use crate::subgroup::Subgroup;
use crate::IngletonRatio;

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    /// Primitive element to use; the field's least one by default.
    pub zeta: Option<u8>,
    pub order_cap: usize,
    /// Admit `q = 3`, where the construction exists but is not an offender.
    pub allow_small: bool,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            zeta: None,
            order_cap: DEFAULT_ORDER_CAP,
            allow_small: false,
        }
    }
}

/// The named matrices of the construction, as elements of the group.
#[derive(Clone, Copy, Debug)]
pub struct FamilyElements {
    pub u1: ElementId,
    pub u2: ElementId,
    pub u3: ElementId,
    pub u4: ElementId,
    pub t: ElementId,
    pub h2: ElementId,
    pub h3: ElementId,
    pub x: ElementId,
}

pub struct FamilyQuadruple {
    pub q: u32,
    pub field: FieldTable,
    pub group: GroupTable,
    pub elements: FamilyElements,
    pub quadruple: Quadruple,
    pub warning: Option<String>,
}

/// Matrix entries as field elements, built against one primitive element.
struct Recipe<'f> {
    f: &'f FieldTable,
    z: u8,
}

impl Recipe<'_> {
    fn m(&self, e: [u8; 9]) -> Matrix {
        Matrix::new(3, e.to_vec())
    }

    fn zi(&self) -> u8 {
        self.f.inv(self.z).unwrap()
    }

    /// `1 / (1 - ζ)`
    fn k(&self) -> u8 {
        self.f.inv(self.f.sub(1, self.z)).expect("ζ ≠ 1")
    }

    /// `ζ(ζ-2)/(1-ζ)`
    fn alpha(&self) -> u8 {
        let f = self.f;
        f.mul(f.mul(self.z, f.sub(self.z, f.from_int(2))), self.k())
    }

    fn u1(&self, s: u8) -> Matrix {
        self.m([1, s, 0, 0, 1, 0, 0, 0, 1])
    }

    fn u4(&self, s: u8) -> Matrix {
        self.m([1, 0, 0, 0, 1, s, 0, 0, 1])
    }

    /// `u2(s)`: `(1,2) = s`, `(1,3) = sα - s(s-1)ζ`, `(2,3) = -2sζ`.
    fn u2(&self, s: u8) -> Matrix {
        let f = self.f;
        let corner = f.sub(f.mul(s, self.alpha()), f.mul(f.mul(s, f.sub(s, 1)), self.z));
        let right = f.neg(f.mul(f.from_int(2), f.mul(s, self.z)));
        self.m([1, s, corner, 0, 1, right, 0, 0, 1])
    }

    /// `u3(s)`: `(1,3) = s/(1-ζ)`, `(2,3) = s`.
    fn u3(&self, s: u8) -> Matrix {
        self.m([1, 0, self.f.mul(s, self.k()), 0, 1, s, 0, 0, 1])
    }

    fn t(&self) -> Matrix {
        self.m([self.z, 0, 0, 0, 1, 0, 0, 0, self.zi()])
    }

    fn h2(&self) -> Matrix {
        self.m([self.z, 0, 0, 0, 1, 1, 0, 0, self.zi()])
    }

    fn h3(&self) -> Matrix {
        self.m([self.z, 1, 0, 0, 1, 0, 0, 0, self.zi()])
    }

    fn x(&self) -> Matrix {
        let m1 = self.f.neg(1);
        self.m([m1, self.k(), 0, 0, 1, 0, 0, 0, m1])
    }

    fn root(&self, i: usize, s: u8) -> Matrix {
        match i {
            1 => self.u1(s),
            2 => self.u2(s),
            3 => self.u3(s),
            _ => self.u4(s),
        }
    }
}

fn spec_from(f: &FieldTable, r: &Recipe) -> GroupSpec {
    let ints = |m: Matrix| m.entries().iter().map(|&e| e as i64).collect::<Vec<_>>();
    GroupSpec::MatrixGenerators {
        q: f.size(),
        dim: 3,
        generators: vec![ints(r.u1(1)), ints(r.u4(1)), ints(r.t())],
    }
}

fn field_for(q: u32, zeta: Option<u8>) -> Result<FieldTable> {
    if q <= 2 {
        return Err(Error::FieldTooSmall(q));
    }
    let f = FieldTable::new(q)?;
    match zeta {
        None => Ok(f),
        Some(z) if f.multiplicative_order(z) == Some(q - 1) => FieldTable::with_primitive(q, z),
        Some(z) => Err(Error::BadParams(format!("{z} is not a primitive element of F_{q}"))),
    }
}

/// Spec of the ambient group `⟨u1, u4, t⟩` for the default primitive element.
pub fn group_spec(q: u32) -> Result<GroupSpec> {
    let f = field_for(q, None)?;
    let r = Recipe { f: &f, z: f.zeta() };
    Ok(spec_from(&f, &r))
}

pub fn supersoluble_family(q: u32) -> Result<FamilyQuadruple> {
    supersoluble_family_with(q, &FamilyOptions::default())
}

pub fn supersoluble_family_with(q: u32, opts: &FamilyOptions) -> Result<FamilyQuadruple> {
    let f = field_for(q, opts.zeta)?;
    let warning = if q == 3 {
        if !opts.allow_small {
            return Err(Error::FieldTooSmall(q));
        }
        Some("q = 3: the construction gives ratio 8/9 and is not an offender".to_string())
    } else {
        None
    };
    let z = opts.zeta.unwrap_or(f.zeta());
    let r = Recipe { f: &f, z };
    let spec = spec_from(&f, &r);
    let group = build_group_with(&spec, BuildOptions::with_cap(opts.order_cap))?;
    let find = |m: Matrix| {
        group
            .find_matrix(m.entries())
            .ok_or_else(|| Error::VerificationFailed(format!("matrix {m:?} is not in the group")))
    };
    let elements = FamilyElements {
        u1: find(r.u1(1))?,
        u2: find(r.u2(1))?,
        u3: find(r.u3(1))?,
        u4: find(r.u4(1))?,
        t: find(r.t())?,
        h2: find(r.h2())?,
        h3: find(r.h3())?,
        x: find(r.x())?,
    };
    let e = elements;
    let gen = |a, b| Subgroup::generated(&group, &[a, b]);
    let quadruple = Quadruple::new(gen(e.u1, e.t)?, gen(e.u2, e.h2)?, gen(e.u3, e.h3)?, gen(e.u4, e.t)?)?;
    Ok(FamilyQuadruple {
        q,
        field: f,
        group,
        elements,
        quadruple,
        warning,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioJson {
    pub num: u64,
    pub den: u64,
}

impl From<IngletonRatio> for RatioJson {
    fn from(r: IngletonRatio) -> Self {
        RatioJson {
            num: u64::try_from(*r.numer()).expect("ratio fits u64"),
            den: u64::try_from(*r.denom()).expect("ratio fits u64"),
        }
    }
}

/// Outcome of checking every structural claim about the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub q: u32,
    pub zeta: u8,
    pub group_order: usize,
    pub subgroup_orders: [usize; 4],
    /// Each root group `{u_i(s)}` is a subgroup of order `q` containing
    /// `u_i`, normalized by the torus element of its role.
    pub root_groups_normalized: bool,
    /// `|Hi| = q(q-1)` for every role.
    pub frobenius_orders: bool,
    /// `h3 = u1 t`, `h2 = t u4`, `u2 h2 = h3 u3^-1`.
    pub witness_identities: bool,
    /// `|H13| = |H14| = |H23| = |H24| = q - 1`.
    pub pair_intersections: bool,
    /// `H34 = 1` and `H12 = ⟨x⟩` of order 2.
    pub h34_trivial_h12_is_x: bool,
    /// `H123 = H124 = 1`.
    pub triple_intersections_trivial: bool,
    pub generative: bool,
    pub terms: IngletonTerms,
    pub ratio: RatioJson,
    /// The ratio equals `2(q-1)^2/q^2`.
    pub ratio_matches_formula: bool,
    pub offender: bool,
    /// Offender exactly when `2(q-1)^2 > q^2`.
    pub offender_consistent: bool,
    pub score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl FamilyReport {
    pub fn clauses(&self) -> [(&'static str, bool); 8] {
        [
            ("root_groups_normalized", self.root_groups_normalized),
            ("frobenius_orders", self.frobenius_orders),
            ("witness_identities", self.witness_identities),
            ("pair_intersections", self.pair_intersections),
            ("h34_trivial_h12_is_x", self.h34_trivial_h12_is_x),
            ("triple_intersections_trivial", self.triple_intersections_trivial),
            ("ratio_matches_formula", self.ratio_matches_formula),
            ("offender_consistent", self.offender_consistent),
        ]
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.clauses().into_iter().find(|c| !c.1).map(|c| c.0)
    }
}

/// Checks every clause and reports them all.
pub fn family_report(fq: &FamilyQuadruple) -> Result<FamilyReport> {
    let g = &fq.group;
    let f = &fq.field;
    let q = fq.q as usize;
    let e = fq.elements;
    let z = f.zeta();
    let r = Recipe { f, z };
    let h = fq.quadruple.parts();

    let torus = [e.t, e.h2, e.h3, e.t];
    let gens = [e.u1, e.u2, e.u3, e.u4];
    let mut roots_ok = true;
    for i in 1..=4 {
        let ids: Option<Vec<ElementId>> = (0..fq.q)
            .map(|s| g.find_matrix(r.root(i, s as u8).entries()))
            .collect();
        let Some(ids) = ids else {
            roots_ok = false;
            continue;
        };
        let root = Subgroup::generated(g, &ids)?;
        let closed = root.order() == q && ids.iter().all(|&x| root.contains(x));
        let has_gen = root.contains(gens[i - 1]);
        let cyclic_when_prime = f.degree() > 1 || Subgroup::generated(g, &[gens[i - 1]])?.bits() == root.bits();
        let normalized = root.elements().all(|x| root.contains(g.conj(x, torus[i - 1])));
        let inside = root.is_subgroup_of(&h[i - 1]) && h[i - 1].contains(torus[i - 1]);
        roots_ok &= closed && has_gen && cyclic_when_prime && normalized && inside;
    }

    let orders = [h[0].order(), h[1].order(), h[2].order(), h[3].order()];
    let frobenius = orders.iter().all(|&o| o == q * (q - 1));

    let witness = g.mul(e.u1, e.t) == e.h3
        && g.mul(e.t, e.u4) == e.h2
        && g.mul(e.u2, e.h2) == g.mul(e.h3, g.inv(e.u3));

    let terms = ingleton_terms(g, &fq.quadruple)?;
    let m = (q - 1) as u64;
    let pairs = [terms.h13, terms.h14, terms.h23, terms.h24].iter().all(|&o| o == m);
    let h12 = Subgroup::intersection(g, &h[0], &h[1])?;
    let x_group = Subgroup::generated(g, &[e.x])?;
    let h34_h12 = terms.h34 == 1 && x_group.order() == 2 && h12.bits() == x_group.bits();
    let triples = terms.h123 == 1 && terms.h124 == 1;

    let ratio = terms.ratio::<u128>();
    let expected = IngletonRatio::new(2 * (q as u128 - 1).pow(2), (q as u128).pow(2));
    let offender = terms.is_offender();
    Ok(FamilyReport {
        q: fq.q,
        zeta: z,
        group_order: g.order(),
        subgroup_orders: orders,
        root_groups_normalized: roots_ok,
        frobenius_orders: frobenius,
        witness_identities: witness,
        pair_intersections: pairs,
        h34_trivial_h12_is_x: h34_h12,
        triple_intersections_trivial: triples,
        generative: is_generative(g, &fq.quadruple)?,
        terms,
        ratio: ratio.into(),
        ratio_matches_formula: ratio == expected,
        offender,
        offender_consistent: offender == (2 * (q - 1).pow(2) > q * q),
        score: terms.score(g.order()),
        warning: fq.warning.clone(),
    })
}

/// Like [`family_report`] but fails naming the first clause that does not
/// hold.
pub fn verify_family(fq: &FamilyQuadruple) -> Result<FamilyReport> {
    let rep = family_report(fq)?;
    match rep.first_failure() {
        Some(c) => Err(Error::VerificationFailed(c.to_string())),
        None => Ok(rep),
    }
}
