//! Serializable construction recipes for groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::named;
use crate::perm::{max_point, split_generator_list, Perm};

/// A word in the generators of a group spec: generator indices, applied
/// left to right. The empty word is the identity.
pub type Word = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum GroupSpec {
    /// Generators in 1-indexed cycle notation acting on `degree` points.
    PermutationGenerators {
        degree: usize,
        generators: Vec<String>,
    },
    /// Square matrices over `F_q`, row-major. For prime `q` entries are
    /// reduced mod `q`; for prime powers they are element encodings `0..q`.
    MatrixGenerators {
        q: u32,
        dim: usize,
        generators: Vec<Vec<i64>>,
    },
    Named {
        name: String,
        #[serde(default)]
        params: Vec<NamedParam>,
    },
    DirectProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
    },
    Quotient {
        parent: Box<GroupSpec>,
        normal_generators: Vec<Word>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NamedParam {
    Int(i64),
    Spec(Box<GroupSpec>),
}

impl GroupSpec {
    pub fn named(name: &str, params: &[i64]) -> GroupSpec {
        GroupSpec::Named {
            name: name.to_string(),
            params: params.iter().map(|&p| NamedParam::Int(p)).collect(),
        }
    }

    pub fn perms(degree: usize, generators: &[&str]) -> GroupSpec {
        GroupSpec::PermutationGenerators {
            degree,
            generators: generators.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn direct_product(left: GroupSpec, right: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Parses `name:p1,p2,...` where each parameter is an integer or a
    /// parenthesized spec, e.g. `direct_product:(alt:4),(sym:3)`.
    pub fn parse_named(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Vec::new();
        for p in split_top_level(rest)? {
            let p = p.trim();
            if let Some(inner) = p.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
                params.push(NamedParam::Spec(Box::new(GroupSpec::parse_named(inner)?)));
            } else {
                let n = p
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad parameter '{p}' in '{s}'")))?;
                params.push(NamedParam::Int(n));
            }
        }
        named::construct_named(name.trim(), params)
    }

    /// Parses generators in cycle notation separated by `;` or top-level
    /// commas; the degree is the largest point mentioned.
    pub fn parse_perms(s: &str) -> Result<GroupSpec> {
        let generators = split_generator_list(s);
        if generators.is_empty() {
            return Err(Error::Parse("no generators given".into()));
        }
        let degree = generators
            .iter()
            .map(|g| max_point(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1)
            .max(1);
        for g in &generators {
            Perm::parse_cycles(g, degree)?;
        }
        Ok(GroupSpec::PermutationGenerators { degree, generators })
    }

    /// Parses `q:m1;m2;...` with each matrix a comma-separated row-major
    /// list of `d*d` integers.
    pub fn parse_matrices(s: &str) -> Result<GroupSpec> {
        let (q, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected q:entries;entries;...".into()))?;
        let q: u32 = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad field size '{q}'")))?;
        let mut generators = Vec::new();
        for m in rest.split(';').filter(|m| !m.trim().is_empty()) {
            let entries = m
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry '{e}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            generators.push(entries);
        }
        let len = generators
            .first()
            .ok_or_else(|| Error::Parse("no matrices given".into()))?
            .len();
        let dim = (1..=8).find(|d| d * d == len).ok_or_else(|| {
            Error::Parse(format!("{len} entries do not form a square matrix"))
        })?;
        if generators.iter().any(|g| g.len() != len) {
            return Err(Error::Parse("matrices of different sizes".into()));
        }
        Ok(GroupSpec::MatrixGenerators { q, dim, generators })
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in '{s}'")));
    }
    if !s[start..].trim().is_empty() || !out.is_empty() {
        out.push(&s[start..]);
    }
    Ok(out)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::PermutationGenerators { generators, .. } => {
                write!(f, "<{}>", generators.join(", "))
            }
            GroupSpec::MatrixGenerators { q, generators, .. } => {
                write!(f, "<{} matrices over F_{q}>", generators.len())
            }
            GroupSpec::Named { name, params } => {
                write!(f, "{name}")?;
                for (i, p) in params.iter().enumerate() {
                    write!(f, "{}", if i == 0 { ":" } else { "," })?;
                    match p {
                        NamedParam::Int(n) => write!(f, "{n}")?,
                        NamedParam::Spec(s) => write!(f, "({s})")?,
                    }
                }
                Ok(())
            }
            GroupSpec::DirectProduct { left, right } => write!(f, "({left}) x ({right})"),
            GroupSpec::Quotient { parent, .. } => write!(f, "({parent}) / N"),
        }
    }
}
