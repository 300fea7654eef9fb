//! Permutations as 0-indexed image arrays, with cycle notation at the
//! boundary (1-indexed, as `"(1,2,3)(6,9,10)"`).
//!
//! Products act on the right: `i^(a*b) = (i^a)^b`, and conjugation is
//! `a^b = b^-1 * a * b`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds from an image array, checking it is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidGenerator(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j as usize] = i as u16;
        }
        Perm(r.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Pads with fixed points up to `degree`.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut v = self.0.to_vec();
        v.extend(self.degree() as u16..degree as u16);
        Perm(v.into_boxed_slice())
    }

    /// Parses one permutation in 1-indexed cycle notation, e.g. `"(1,2)(3,4,5)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycle_list(s)?;
        Self::from_cycles(&cycles, degree)
    }

    /// Builds from 1-indexed cycles.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::InvalidGenerator(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if touched[p - 1] {
                    return Err(Error::InvalidGenerator(format!(
                        "point {p} appears twice in a cycle decomposition"
                    )));
                }
                touched[p - 1] = true;
                let next = cyc[(k + 1) % cyc.len()];
                images[p - 1] = (next - 1) as u16;
            }
        }
        Perm::from_images(images)
    }

    pub fn to_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cyc.push(j + 1);
                j = self.apply(j);
            }
            out.push(cyc);
        }
        out
    }
}

/// Largest point mentioned in a cycle string (1-indexed).
pub fn max_point(s: &str) -> Result<usize> {
    Ok(parse_cycle_list(s)?
        .iter()
        .flatten()
        .copied()
        .max()
        .unwrap_or(0))
}

fn parse_cycle_list(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' in cycle string `{s}`")));
        };
        let Some(end) = stripped.find(')') else {
            return Err(Error::Parse(format!("unbalanced parenthesis in `{s}`")));
        };
        let body = stripped[..end].trim();
        if !body.is_empty() {
            let cyc = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(cyc);
        }
        rest = stripped[end + 1..].trim_start();
    }
    Ok(out)
}

/// Splits a generator list such as `"(1,2),(1,2,3)"` or `"(1,2);(1,2,3)"`
/// at top-level separators.
pub fn split_generator_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            ',' | ';' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out.retain(|g| !g.is_empty());
    out
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
