//! Known violators with their published offender data, and a runner that
//! searches each group and compares.

use std::collections::BTreeSet;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::group::{build_group_with, BuildOptions};
use crate::search::{search_offenders, Requirement, SearchOptions};
use crate::spec::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subset {
    /// Orders up to 192.
    Fast,
    /// Orders up to 360.
    Standard,
    /// Orders up to 504.
    Extended,
}

impl std::str::FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Subset> {
        match s {
            "fast" => Ok(Subset::Fast),
            "standard" => Ok(Subset::Standard),
            "extended" => Ok(Subset::Extended),
            _ => Err(Error::Parse(format!("unknown catalogue subset '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: &'static str,
    /// `name:params` text accepted by [`GroupSpec::parse_named`].
    pub spec: &'static str,
    pub order: usize,
    pub offender: bool,
    /// Distinct ratios `rhs/lhs` as `(num, den)`.
    pub ratios: &'static [(u64, u64)],
    /// Scores with the number of classes attaining each, compared within
    /// [`SCORE_TOLERANCE`].
    pub scores: &'static [(f64, usize)],
    pub class_count: usize,
    pub require: Requirement,
    pub subset: Subset,
}

pub const SCORE_TOLERANCE: f64 = 5e-5;

const fn entry(
    name: &'static str,
    spec: &'static str,
    order: usize,
    ratios: &'static [(u64, u64)],
    scores: &'static [(f64, usize)],
    class_count: usize,
    subset: Subset,
) -> CatalogueEntry {
    CatalogueEntry {
        name,
        spec,
        order,
        offender: true,
        ratios,
        scores,
        class_count,
        require: Requirement::Indomitable,
        subset,
    }
}

const fn clean(name: &'static str, spec: &'static str, order: usize) -> CatalogueEntry {
    CatalogueEntry {
        name,
        spec,
        order,
        offender: false,
        ratios: &[],
        scores: &[],
        class_count: 0,
        require: Requirement::None,
        subset: Subset::Fast,
    }
}

/// Violators from the published tables of indomitable violators and their
/// offender classes, for groups that can be constructed here.
pub const VIOLATORS: &[CatalogueEntry] = &[
    // published: S5, 1 class, 16/15, 0.01348
    entry("S5", "sym:5", 120, &[(16, 15)], &[(0.01348, 1)], 1, Subset::Fast),
    // published: A4 x A4, 1 class, 9/8, 0.02370
    entry("A4 x A4", "direct_product:(alt:4),(alt:4)", 144, &[(9, 8)], &[(0.02370, 1)], 1, Subset::Fast),
    // published: Borel of PSL3(4), 48 classes, 9/8, 0.02240
    entry("PSL3(4) Borel", "supersoluble:4", 192, &[(9, 8)], &[(0.02240, 48)], 48, Subset::Fast),
    // published: A4 x S4, 1 class, 9/8, 0.02080
    entry("A4 x S4", "direct_product:(alt:4),(sym:4)", 288, &[(9, 8)], &[(0.02080, 1)], 1, Subset::Standard),
    // published: A4 wr 2, 7 classes, 9/8, 0.02080 (6) and 0.02370
    entry("A4 wr 2", "wreath2:(alt:4)", 288, &[(9, 8)], &[(0.02080, 6), (0.02370, 1)], 7, Subset::Standard),
    // published: (A4 x A4).2, 7 classes, 9/8, 0.02080 (6) and 0.02370
    entry("(A4 x A4).2", "even_s4_squared", 288, &[(9, 8)], &[(0.02080, 6), (0.02370, 1)], 7, Subset::Standard),
    // published: 2^4 : F20, 1 class, 32/25, 0.04280
    entry("2^4 : F20", "two4_f20", 320, &[(32, 25)], &[(0.04280, 1)], 1, Subset::Standard),
    // published: PGL2(7), 1 class, 8/7, 0.02295
    entry("PGL2(7)", "pgl2:7", 336, &[(8, 7)], &[(0.02295, 1)], 1, Subset::Standard),
    // published: A6, 32 classes, 9/8 and 16/15, 0.02001 0.02268 0.01096 0.01348
    entry(
        "A6",
        "alt:6",
        360,
        &[(9, 8), (16, 15)],
        &[(0.02001, 12), (0.02268, 4), (0.01096, 14), (0.01348, 2)],
        32,
        Subset::Standard,
    ),
    // published: (3 x A5).2, 8 classes, 16/15 and 6/5, 0.01096 0.03097
    entry(
        "(3 x A5).2",
        "three_a5_two",
        360,
        &[(16, 15), (6, 5)],
        &[(0.01096, 6), (0.03097, 2)],
        8,
        Subset::Standard,
    ),
    // published: GL2(5), 4 classes, 16/15, 0.01045
    entry("GL2(5)", "gl2:5", 480, &[(16, 15)], &[(0.01045, 4)], 4, Subset::Extended),
    // published: 5^(1+2) : 4, 60 classes, 32/25, 0.03972
    entry("5^(1+2) : 4", "supersoluble:5", 500, &[(32, 25)], &[(0.03972, 60)], 60, Subset::Extended),
    // published: PSL2(8), 1 class, 7/6, 0.02477
    entry("PSL2(8)", "psl2:8", 504, &[(7, 6)], &[(0.02477, 1)], 1, Subset::Extended),
    // published: 3 x PSL2(7), 2 classes, 9/8, 0.01892
    entry("3 x PSL2(7)", "three_x_psl27", 504, &[(9, 8)], &[(0.01892, 2)], 2, Subset::Extended),
];

/// Groups with no offender at all: too small, abelian or metacyclic.
pub const CLEAN: &[CatalogueEntry] = &[
    clean("S4", "sym:4", 24),
    clean("A4", "alt:4", 12),
    clean("A5", "alt:5", 60),
    clean("SL2(3)", "sl2:3", 24),
    clean("PSL2(7)", "psl2:7", 168),
    clean("D24", "dihedral:12", 24),
    clean("D48", "dihedral:24", 48),
    clean("Q16", "dicyclic:4", 16),
    clean("C7 : C3", "metacyclic:7,3,2", 21),
    clean("C13 : C4", "metacyclic:13,4,5", 52),
    clean("C2^6", "abelian:2,2,2,2,2,2", 64),
    clean("C8 x C8", "abelian:8,8", 64),
];

pub fn entries(subset: Subset) -> Vec<&'static CatalogueEntry> {
    VIOLATORS
        .iter()
        .filter(|e| e.subset <= subset)
        .chain(CLEAN.iter())
        .collect()
}

#[derive(Clone, Debug)]
pub struct CatalogueRow {
    pub name: &'static str,
    pub order: usize,
    pub classes: usize,
    pub ratios: Vec<(u64, u64)>,
    pub scores: Vec<f64>,
    pub complete: bool,
    pub seconds: f64,
    /// Every disagreement with the expectation, first one first.
    pub mismatches: Vec<String>,
}

impl CatalogueRow {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn fmt_ratios(r: &[(u64, u64)]) -> String {
    r.iter().map(|(n, d)| format!("{n}/{d}")).collect::<Vec<_>>().join(" ")
}

/// Searches one group and compares the result with the entry.
pub fn run_entry(e: &CatalogueEntry, budget: Option<Duration>) -> Result<CatalogueRow> {
    let spec = GroupSpec::parse_named(e.spec)?;
    let g = build_group_with(&spec, BuildOptions::with_cap(e.order.max(crate::group::DEFAULT_ORDER_CAP)))?;
    let opts = SearchOptions {
        require: e.require,
        time_budget: budget,
        ..Default::default()
    };
    let out = search_offenders(&g, &opts)?;
    let ratios: BTreeSet<(u64, u64)> = out
        .classes
        .iter()
        .map(|c| {
            let r: crate::family::RatioJson = c.report.ratio.into();
            (r.num, r.den)
        })
        .collect();
    let observed: Vec<f64> = out.classes.iter().map(|c| c.report.score).collect();
    let mut scores: Vec<f64> = Vec::new();
    for &x in &observed {
        if !scores.iter().any(|s| (s - x).abs() < 1e-9) {
            scores.push(x);
        }
    }
    scores.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut mismatches = Vec::new();
    if g.order() != e.order {
        mismatches.push(format!("order: expected {}, observed {}", e.order, g.order()));
    }
    if !out.complete {
        mismatches.push("search did not finish within the time budget".to_string());
    }
    if e.offender == out.classes.is_empty() {
        mismatches.push(format!(
            "offender: expected {}, observed {}",
            e.offender,
            !out.classes.is_empty()
        ));
    }
    if e.class_count != out.classes.len() {
        mismatches.push(format!(
            "classes: expected {}, observed {}",
            e.class_count,
            out.classes.len()
        ));
    }
    let expected_ratios: BTreeSet<(u64, u64)> = e.ratios.iter().copied().collect();
    if expected_ratios != ratios {
        let exp: Vec<_> = expected_ratios.into_iter().collect();
        let obs: Vec<_> = ratios.iter().copied().collect();
        mismatches.push(format!(
            "ratios: expected {{{}}}, observed {{{}}}",
            fmt_ratios(&exp),
            fmt_ratios(&obs)
        ));
    }
    let near = |a: f64, b: f64| (a - b).abs() <= SCORE_TOLERANCE;
    for &(x, n) in e.scores {
        let seen = observed.iter().filter(|&&s| near(s, x)).count();
        if seen != n {
            mismatches.push(format!("score {x:.5}: expected {n} classes, observed {seen}"));
        }
    }
    for &s in &scores {
        if !e.scores.iter().any(|&(x, _)| near(s, x)) {
            mismatches.push(format!("score {s:.5} observed but not expected"));
        }
    }
    Ok(CatalogueRow {
        name: e.name,
        order: g.order(),
        classes: out.classes.len(),
        ratios: ratios.into_iter().collect(),
        scores,
        complete: out.complete,
        seconds: out.elapsed.as_secs_f64(),
        mismatches,
    })
}

impl std::fmt::Display for CatalogueRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let scores: Vec<String> = self.scores.iter().map(|s| format!("{s:.5}")).collect();
        write!(
            f,
            "{:<4} {:<16} order {:>4}  classes {:>3}  ratios [{}]  scores [{}]  {:.1}s",
            if self.passed() { "ok" } else { "FAIL" },
            self.name,
            self.order,
            self.classes,
            fmt_ratios(&self.ratios),
            scores.join(" "),
            self.seconds
        )?;
        for m in &self.mismatches {
            write!(f, "\n     mismatch: {m}")?;
        }
        Ok(())
    }
}
