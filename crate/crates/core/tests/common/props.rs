//! Checks of the order lemmas and reduction moves. Each check takes raw
//! indices so both proptest strategies and a seeded generator can drive it.

use ingleton::group::quotient_group;
use ingleton::ingleton::{
    exclusion_verdict, is_offender, saturate_normal, shrink_all, shrink_h1, Verdict,
};
use ingleton::lattice::{all_subgroups, normal_subgroups};
use ingleton::{GroupTable, Quadruple, Subgroup};

use super::corpus::{build, up_to};

pub struct Prepared {
    pub label: &'static str,
    pub g: GroupTable,
    pub subs: Vec<Subgroup>,
    pub normals: Vec<Subgroup>,
}

impl Prepared {
    pub fn new(label: &'static str, g: GroupTable) -> Prepared {
        let subs = all_subgroups(&g).unwrap();
        let normals = normal_subgroups(&g);
        Prepared {
            label,
            g,
            subs,
            normals,
        }
    }

    fn pick<'a>(v: &'a [Subgroup], i: usize) -> &'a Subgroup {
        &v[i % v.len()]
    }

    pub fn sub(&self, i: usize) -> &Subgroup {
        Self::pick(&self.subs, i)
    }

    pub fn normal(&self, i: usize) -> &Subgroup {
        Self::pick(&self.normals, i)
    }
}

/// Corpus groups of order at most 60.
pub fn small_groups() -> Vec<Prepared> {
    up_to(60).map(|&(label, spec, _)| Prepared::new(label, build(spec))).collect()
}

fn meet(a: &Subgroup, b: &Subgroup) -> u128 {
    Subgroup::intersection_order(a, b).unwrap() as u128
}

fn ord(h: &Subgroup) -> u128 {
    h.order() as u128
}

pub type Check = Result<(), String>;

/// `|G| |A ∩ B| >= |A| |B|`.
pub fn order_intersection(p: &Prepared, a: usize, b: usize) -> Check {
    let (a, b) = (p.sub(a), p.sub(b));
    let lhs = p.g.order() as u128 * meet(a, b);
    if lhs >= ord(a) * ord(b) {
        Ok(())
    } else {
        Err(format!("{}: |G||A∩B| = {lhs} < |A||B|", p.label))
    }
}

/// For `B <= A`: `|A| |B ∩ C| >= |B| |A ∩ C|`.
pub fn index_reduction(p: &Prepared, a: usize, b: usize, c: usize) -> Check {
    let a = p.sub(a);
    let inside: Vec<Subgroup> = p.subs.iter().filter(|h| h.is_subgroup_of(a)).cloned().collect();
    let b = Prepared::pick(&inside, b);
    let c = p.sub(c);
    if ord(a) * meet(b, c) >= ord(b) * meet(a, c) {
        Ok(())
    } else {
        Err(format!("{}: index reduction fails for |A|={} |B|={}", p.label, a.order(), b.order()))
    }
}

/// For normal `N`: `|AN ∩ B| |N ∩ A| <= |A ∩ B| |N|`, with equality when
/// `N <= B`. With `contain` set, `B` is drawn from the overgroups of `N`.
pub fn maxlp(p: &Prepared, a: usize, b: usize, n: usize, contain: bool) -> Check {
    let a = p.sub(a);
    let n = p.normal(n);
    let b = if contain {
        let over: Vec<Subgroup> = p.subs.iter().filter(|h| n.is_subgroup_of(h)).cloned().collect();
        Prepared::pick(&over, b).clone()
    } else {
        p.sub(b).clone()
    };
    let an = Subgroup::join(&p.g, a, n).unwrap();
    if an.order() as u128 * meet(n, a) != ord(a) * ord(n) {
        return Err(format!("{}: |AN| |A∩N| != |A| |N|", p.label));
    }
    let lhs = meet(&an, &b) * meet(n, a);
    let rhs = meet(a, &b) * ord(n);
    if lhs > rhs {
        return Err(format!("{}: {lhs} > {rhs}", p.label));
    }
    if n.is_subgroup_of(&b) && lhs != rhs {
        return Err(format!("{}: N <= B but {lhs} != {rhs}", p.label));
    }
    Ok(())
}

/// An excluded quadruple, or an excluded partial assignment together
/// with every completion of its missing role, contains no offender.
/// `missing` in `0..4` leaves that role open; other values assign all.
pub fn exclusion_sound(p: &Prepared, idx: [usize; 4], missing: usize) -> Check {
    let hs = idx.map(|i| p.sub(i).clone());
    let roles: [Option<&Subgroup>; 4] = std::array::from_fn(|r| (r != missing).then(|| &hs[r]));
    let Verdict::Excluded(why) = exclusion_verdict(&p.g, roles) else {
        return Ok(());
    };
    let completions: Vec<Subgroup> = if missing < 4 { p.subs.clone() } else { vec![hs[0].clone()] };
    for c in completions {
        let mut full = hs.clone();
        if missing < 4 {
            full[missing] = c;
        }
        let q = Quadruple::from_array(full).unwrap();
        if is_offender(&p.g, &q).unwrap() {
            return Err(format!("{}: offender excluded as {why}", p.label));
        }
    }
    Ok(())
}

/// Every reduction that must keep an offender an offender does so, and no
/// exclusion criterion fires on it, in any role assignment.
pub fn offender_preserved(g: &GroupTable, normals: &[Subgroup], q: &Quadruple) -> Check {
    if !is_offender(g, q).unwrap() {
        return Err("not an offender to begin with".into());
    }
    for missing in 0..5 {
        let roles: [Option<&Subgroup>; 4] = std::array::from_fn(|r| (r != missing).then(|| q.h(r + 1)));
        if let Verdict::Excluded(why) = exclusion_verdict(g, roles) {
            return Err(format!("offender excluded as {why} with role {} open", missing + 1));
        }
    }
    let s = shrink_h1(g, q).unwrap();
    if !is_offender(g, &s).unwrap() {
        return Err("shrinking H1 lost the offence".into());
    }
    let s = shrink_all(g, q).unwrap();
    if !is_offender(g, &s).unwrap() {
        return Err("full shrinking lost the offence".into());
    }
    for n in normals {
        if n.is_trivial() || !q.parts().iter().any(|h| n.is_subgroup_of(h)) {
            continue;
        }
        let sat = saturate_normal(g, q, n).unwrap();
        if !is_offender(g, &sat).unwrap() {
            return Err(format!("saturating by a normal subgroup of order {} lost the offence", n.order()));
        }
        let (quot, proj) = quotient_group(g, n).unwrap();
        let img = sat.image(&proj, &quot).unwrap();
        if !is_offender(&quot, &img).unwrap() {
            return Err(format!("image mod a normal subgroup of order {} is not an offender", n.order()));
        }
    }
    Ok(())
}

/// The quadruple with each of the four role swaps applied.
pub fn swap_variants(q: &Quadruple) -> [Quadruple; 4] {
    [q.clone(), q.swap12(), q.swap34(), q.swap12().swap34()]
}
