//! Named group constructors. Every name expands into a concrete
//! permutation, matrix or product spec; [`construct_named`] validates the
//! parameters and returns the group spec that the builder will expand.

use crate::error::{Error, Result};
use crate::family;
use crate::field::FieldTable;
use crate::group::{build_group, Label};
use crate::perm::Perm;
use crate::spec::{GroupSpec, NamedParam};

pub const NAMES: &[&str] = &[
    "cyclic",
    "dihedral",
    "dicyclic",
    "metacyclic",
    "abelian",
    "sym",
    "alt",
    "direct_product",
    "wreath2",
    "psl2",
    "pgl2",
    "gl2",
    "sl2",
    "supersoluble",
    "three_x_psl27",
    "three_a5_two",
    "even_s4_squared",
    "two4_f20",
];

/// Validates `name(params)` and returns its spec. `direct_product` yields a
/// [`GroupSpec::DirectProduct`]; everything else stays a named spec.
pub fn construct_named(name: &str, params: Vec<NamedParam>) -> Result<GroupSpec> {
    let spec = if name == "direct_product" {
        match params.as_slice() {
            [NamedParam::Spec(a), NamedParam::Spec(b)] => {
                GroupSpec::direct_product((**a).clone(), (**b).clone())
            }
            _ => return Err(Error::BadParams("direct_product takes two group specs".into())),
        }
    } else {
        GroupSpec::Named {
            name: name.to_string(),
            params,
        }
    };
    if let GroupSpec::Named { .. } = spec {
        expand(&spec)?;
    }
    Ok(spec)
}

fn ints(name: &str, params: &[NamedParam], count: std::ops::RangeInclusive<usize>) -> Result<Vec<i64>> {
    let v: Vec<i64> = params
        .iter()
        .map(|p| match p {
            NamedParam::Int(n) => Ok(*n),
            NamedParam::Spec(_) => Err(Error::BadParams(format!("{name} takes integer parameters"))),
        })
        .collect::<Result<_>>()?;
    if !count.contains(&v.len()) {
        return Err(Error::BadParams(format!(
            "{name} takes {}..={} parameters, got {}",
            count.start(),
            count.end(),
            v.len()
        )));
    }
    Ok(v)
}

fn positive(name: &str, n: i64, min: i64) -> Result<usize> {
    if n < min || n > 4096 {
        return Err(Error::BadParams(format!("{name}: parameter {n} out of range")));
    }
    Ok(n as usize)
}

fn perm_spec(degree: usize, gens: Vec<Perm>) -> GroupSpec {
    GroupSpec::PermutationGenerators {
        degree,
        generators: gens
            .into_iter()
            .filter(|p| !p.is_identity())
            .map(|p| p.to_string())
            .collect(),
    }
}

fn images(degree: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..degree).map(|i| f(i) as u16).collect()).expect("constructed bijection")
}

/// Right regular representation of a group given by a closed-form product
/// on `0..order`.
fn regular(order: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> GroupSpec {
    let perms = gens
        .iter()
        .map(|&s| images(order, |x| mul(x, s)))
        .collect();
    perm_spec(order, perms)
}

/// Expands a named spec into a concrete (non-named) one.
pub fn expand(spec: &GroupSpec) -> Result<GroupSpec> {
    let GroupSpec::Named { name, params } = spec else {
        return Ok(spec.clone());
    };
    let name = name.as_str();
    match name {
        "cyclic" => {
            let n = positive(name, ints(name, params, 1..=1)?[0], 1)?;
            Ok(perm_spec(n, vec![images(n, |i| (i + 1) % n)]))
        }
        "dihedral" => {
            // order 2n, symmetries of the n-gon
            let n = positive(name, ints(name, params, 1..=1)?[0], 1)?;
            match n {
                1 => Ok(GroupSpec::perms(2, &["(1,2)"])),
                2 => Ok(GroupSpec::perms(4, &["(1,2)", "(3,4)"])),
                _ => Ok(perm_spec(
                    n,
                    vec![images(n, |i| (i + 1) % n), images(n, |i| (n - i) % n)],
                )),
            }
        }
        "dicyclic" => {
            // <a, x | a^2n, x^2 = a^n, a^x = a^-1>, order 4n; element a^i x^j is i*2 + j
            let n = positive(name, ints(name, params, 1..=1)?[0], 1)?;
            let m = 2 * n;
            let mul = |u: usize, v: usize| {
                let (i, j) = (u / 2, u % 2);
                let (k, l) = (v / 2, v % 2);
                let k = if j == 1 { (m - k) % m } else { k };
                let mut e = (i + k) % m;
                let mut f = j + l;
                if f == 2 {
                    e = (e + n) % m;
                    f = 0;
                }
                e * 2 + f
            };
            Ok(regular(2 * m, &[2, 1], mul))
        }
        "metacyclic" => {
            // C_m : C_n with b^-1 a b = a^r; element a^i b^j is i*n + j
            let v = ints(name, params, 3..=3)?;
            let m = positive(name, v[0], 1)?;
            let n = positive(name, v[1], 1)?;
            let r = v[2].rem_euclid(m as i64) as usize;
            if num_integer::gcd(r, m) != 1 || pow_mod(r, n, m) != 1 % m {
                return Err(Error::BadParams(format!(
                    "metacyclic: need gcd(r,m) = 1 and r^n = 1 mod m (m={m}, n={n}, r={r})"
                )));
            }
            let s = (1..=m).find(|&s| (s * r) % m == 1 % m).unwrap_or(1) % m.max(1);
            let mul = |u: usize, w: usize| {
                let (i, j) = (u / n, u % n);
                let (k, l) = (w / n, w % n);
                ((i + k * pow_mod(s, j, m)) % m) * n + (j + l) % n
            };
            Ok(regular(m * n, &[n % (m * n), 1 % (m * n)], mul))
        }
        "abelian" => {
            let v = ints(name, params, 1..=8)?;
            let sizes = v
                .iter()
                .map(|&k| positive(name, k, 1))
                .collect::<Result<Vec<_>>>()?;
            let degree: usize = sizes.iter().sum();
            let mut gens = Vec::new();
            let mut off = 0;
            for &k in &sizes {
                gens.push(images(degree, |i| {
                    if (off..off + k).contains(&i) {
                        off + (i - off + 1) % k
                    } else {
                        i
                    }
                }));
                off += k;
            }
            Ok(perm_spec(degree, gens))
        }
        "sym" => {
            let n = positive(name, ints(name, params, 1..=1)?[0], 1)?;
            if n == 1 {
                return Ok(perm_spec(1, vec![]));
            }
            Ok(perm_spec(
                n,
                vec![images(n, |i| (i + 1) % n), images(n, |i| [1, 0].get(i).copied().unwrap_or(i))],
            ))
        }
        "alt" => {
            let n = positive(name, ints(name, params, 1..=1)?[0], 1)?;
            if n < 3 {
                return Ok(perm_spec(n, vec![]));
            }
            let three = images(n, |i| match i {
                0 => 1,
                1 => 2,
                2 => 0,
                _ => i,
            });
            // an n-cycle (n odd) or an (n-1)-cycle fixing the first point
            let long = if n % 2 == 1 {
                images(n, |i| (i + 1) % n)
            } else {
                images(n, |i| if i == 0 { 0 } else { i % (n - 1) + 1 })
            };
            Ok(perm_spec(n, vec![three, long]))
        }
        "wreath2" => {
            let inner = match params.as_slice() {
                [NamedParam::Spec(s)] => s,
                _ => return Err(Error::BadParams("wreath2 takes one group spec".into())),
            };
            let (degree, gens) = perm_action(inner)?;
            let mut out: Vec<Perm> = gens.iter().map(|p| p.extend(2 * degree)).collect();
            out.push(images(2 * degree, |i| (i + degree) % (2 * degree)));
            Ok(perm_spec(2 * degree, out))
        }
        "psl2" | "pgl2" => {
            let q = ints(name, params, 1..=1)?[0];
            let f = FieldTable::new(u32::try_from(q).map_err(|_| Error::BadParams(format!("{name}: q = {q}")))?)?;
            Ok(projective_line(&f, name == "pgl2"))
        }
        "gl2" | "sl2" => {
            let q = ints(name, params, 1..=1)?[0];
            let f = FieldTable::new(u32::try_from(q).map_err(|_| Error::BadParams(format!("{name}: q = {q}")))?)?;
            let z = f.zeta() as i64;
            let zi = f.inv(f.zeta()).unwrap() as i64;
            let mut gens = vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]];
            if name == "gl2" {
                gens.push(vec![z, 0, 0, 1]);
            } else if f.size() > 3 {
                gens.push(vec![z, 0, 0, zi]);
            }
            Ok(GroupSpec::MatrixGenerators {
                q: f.size(),
                dim: 2,
                generators: gens,
            })
        }
        "supersoluble" => {
            let q = ints(name, params, 1..=1)?[0];
            family::group_spec(u32::try_from(q).map_err(|_| Error::BadParams(format!("{name}: q = {q}")))?)
        }
        "three_x_psl27" => {
            ints(name, params, 0..=0)?;
            Ok(GroupSpec::perms(
                11,
                &["(1,2,3)", "(6,9,10)(7,8,11)", "(4,11,5)(7,8,9)"],
            ))
        }
        "even_s4_squared" => {
            // {(a, b) in S4 x S4 : sgn a = sgn b}, an extension (A4 x A4).2
            ints(name, params, 0..=0)?;
            Ok(GroupSpec::perms(
                8,
                &["(1,2,3)", "(2,3,4)", "(5,6,7)", "(6,7,8)", "(1,2)(5,6)"],
            ))
        }
        "three_a5_two" => {
            // {(a, b) in S3 x S5 : sgn a = sgn b} on 3 + 5 points
            ints(name, params, 0..=0)?;
            Ok(GroupSpec::perms(
                8,
                &["(1,2,3)", "(4,5,6,7,8)", "(4,5,6)", "(1,2)(4,5)"],
            ))
        }
        "two4_f20" => {
            // affine maps y -> a*y^(2^k) + b of F_16 with a of order 5
            ints(name, params, 0..=0)?;
            let f = FieldTable::new(16)?;
            let alpha = f.pow(f.zeta(), 3);
            let gens = vec![
                images(16, |y| f.mul(alpha, y as u8) as usize),
                images(16, |y| f.mul(y as u8, y as u8) as usize),
                images(16, |y| f.add(y as u8, 1) as usize),
            ];
            Ok(perm_spec(16, gens))
        }
        "direct_product" => match params.as_slice() {
            [NamedParam::Spec(a), NamedParam::Spec(b)] => {
                Ok(GroupSpec::direct_product((**a).clone(), (**b).clone()))
            }
            _ => Err(Error::BadParams("direct_product takes two group specs".into())),
        },
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn pow_mod(b: usize, e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * b % m;
    }
    acc
}

/// A faithful permutation action: the group spec's own one for permutation
/// groups, the right regular action otherwise.
fn perm_action(spec: &GroupSpec) -> Result<(usize, Vec<Perm>)> {
    let concrete = expand(spec)?;
    if let GroupSpec::PermutationGenerators { degree, generators } = &concrete {
        let gens = generators
            .iter()
            .map(|g| Perm::parse_cycles(g, *degree))
            .collect::<Result<Vec<_>>>()?;
        return Ok((*degree, gens));
    }
    let g = build_group(spec)?;
    let n = g.order();
    let gens = g
        .generators()
        .into_iter()
        .map(|s| images(n, |x| g.mul(crate::group::ElementId(x as u32), s).index()))
        .collect();
    debug_assert!(!matches!(g.label(g.identity()), Label::Perm(_)));
    Ok((n, gens))
}

/// PSL(2,q) or PGL(2,q) acting on the projective line `F_q ∪ {∞}`, with ∞
/// as the last point.
fn projective_line(f: &FieldTable, full: bool) -> GroupSpec {
    let q = f.size() as usize;
    let inf = q;
    let scale = if full { f.zeta() } else { f.mul(f.zeta(), f.zeta()) };
    let translate = images(q + 1, |x| if x == inf { inf } else { f.add(x as u8, 1) as usize });
    let dilate = images(q + 1, |x| if x == inf { inf } else { f.mul(scale, x as u8) as usize });
    let invert = images(q + 1, |x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            f.neg(f.inv(x as u8).unwrap()) as usize
        }
    });
    perm_spec(q + 1, vec![translate, dilate, invert])
}
