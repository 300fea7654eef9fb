//! JSON-lines offender databases: one record per offender class plus a
//! summary line, and re-verification of records from generator words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::RatioJson;
use crate::group::{build_group_with, BuildOptions, GroupTable, DEFAULT_ORDER_CAP};
use crate::ingleton::{Classifier, IngletonReport, IngletonTerms, Quadruple};
use crate::search::{OffenderClass, SearchOutcome};
use crate::spec::{GroupSpec, Word};
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub generators: Vec<Word>,
}

impl SubgroupRecord {
    pub fn of(g: &GroupTable, h: &Subgroup) -> SubgroupRecord {
        SubgroupRecord {
            order: h.order(),
            generators: h.generators().iter().map(|&x| g.word(x)).collect(),
        }
    }

    pub fn rebuild(&self, g: &GroupTable) -> Result<Subgroup> {
        let elems = self
            .generators
            .iter()
            .map(|w| g.eval_word(w))
            .collect::<Result<Vec<_>>>()?;
        Subgroup::generated(g, &elems)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubgroupsRecord {
    #[serde(rename = "H1")]
    pub h1: SubgroupRecord,
    #[serde(rename = "H2")]
    pub h2: SubgroupRecord,
    #[serde(rename = "H3")]
    pub h3: SubgroupRecord,
    #[serde(rename = "H4")]
    pub h4: SubgroupRecord,
}

/// Serialized form of an [`IngletonReport`] with its quadruple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub group_order: usize,
    pub terms: IngletonTerms,
    pub lhs: String,
    pub rhs: String,
    pub ratio: RatioJson,
    pub score: f64,
    pub offender: bool,
    pub generative: bool,
    #[serde(default)]
    pub irreducible: Option<bool>,
    #[serde(default)]
    pub indomitable: Option<bool>,
    pub subgroups: SubgroupsRecord,
}

impl ReportRecord {
    pub fn new(g: &GroupTable, q: &Quadruple, rep: &IngletonReport) -> ReportRecord {
        let s = |i| SubgroupRecord::of(g, q.h(i));
        ReportRecord {
            group_order: rep.group_order,
            terms: rep.terms,
            lhs: rep.lhs.to_string(),
            rhs: rep.rhs.to_string(),
            ratio: rep.ratio.into(),
            score: rep.score,
            offender: rep.offender,
            generative: rep.generative,
            irreducible: rep.irreducible,
            indomitable: rep.indomitable,
            subgroups: SubgroupsRecord {
                h1: s(1),
                h2: s(2),
                h3: s(3),
                h4: s(4),
            },
        }
    }

    fn parts(&self) -> [&SubgroupRecord; 4] {
        let s = &self.subgroups;
        [&s.h1, &s.h2, &s.h3, &s.h4]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffenderRecord {
    pub group: GroupSpec,
    pub class_size: usize,
    pub report: ReportRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub group: GroupSpec,
    pub group_order: usize,
    pub lattice_size: usize,
    pub classes: usize,
    pub offenders: usize,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Record {
    Offender(OffenderRecord),
    Summary(SummaryRecord),
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn parse(line: &str) -> Result<Record> {
        serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn class_record(g: &GroupTable, class: &OffenderClass) -> Record {
    Record::Offender(OffenderRecord {
        group: g.spec().clone(),
        class_size: class.class_size,
        report: ReportRecord::new(g, &class.representative, &class.report),
    })
}

/// Every class record followed by the summary.
pub fn outcome_records(g: &GroupTable, out: &SearchOutcome) -> Vec<Record> {
    let mut v: Vec<Record> = out.classes.iter().map(|c| class_record(g, c)).collect();
    v.push(Record::Summary(SummaryRecord {
        group: g.spec().clone(),
        group_order: g.order(),
        lattice_size: out.lattice_size,
        classes: out.classes.len(),
        offenders: out.total_offenders(),
        complete: out.complete,
    }));
    v
}

/// One field that differs between a stored and a recomputed record.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub field: String,
    pub stored: String,
    pub recomputed: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: stored {}, recomputed {}", self.field, self.stored, self.recomputed)
    }
}

fn diff<T: PartialEq + fmt::Debug>(out: &mut Vec<Mismatch>, field: &str, stored: &T, recomputed: &T) {
    if stored != recomputed {
        out.push(Mismatch {
            field: field.to_string(),
            stored: format!("{stored:?}"),
            recomputed: format!("{recomputed:?}"),
        });
    }
}

/// Rebuilds the group and the four subgroups from their generator words,
/// recomputes the report and lists every differing field.
pub fn verify_record(rec: &OffenderRecord) -> Result<Vec<Mismatch>> {
    let cap = rec.report.group_order.max(DEFAULT_ORDER_CAP);
    let g = build_group_with(&rec.group, BuildOptions::with_cap(cap))?;
    let mut out = Vec::new();
    diff(&mut out, "group_order", &rec.report.group_order, &g.order());
    let parts = rec.report.parts();
    let mut subs = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let h = p.rebuild(&g)?;
        diff(&mut out, &format!("subgroups.H{}.order", i + 1), &p.order, &h.order());
        subs.push(h);
    }
    let q = Quadruple::from_array(subs.try_into().expect("four parts"))?;
    let classifier = Classifier::new(&g);
    let rep = classifier.report(&q, rec.report.irreducible.is_some(), rec.report.indomitable.is_some())?;
    let fresh = ReportRecord::new(&g, &q, &rep);
    let r = &rec.report;
    let t = (&r.terms, &fresh.terms);
    for (name, a, b) in [
        ("h1", t.0.h1, t.1.h1),
        ("h2", t.0.h2, t.1.h2),
        ("h34", t.0.h34, t.1.h34),
        ("h123", t.0.h123, t.1.h123),
        ("h124", t.0.h124, t.1.h124),
        ("h12", t.0.h12, t.1.h12),
        ("h13", t.0.h13, t.1.h13),
        ("h14", t.0.h14, t.1.h14),
        ("h23", t.0.h23, t.1.h23),
        ("h24", t.0.h24, t.1.h24),
        ("h1234", t.0.h1234, t.1.h1234),
    ] {
        diff(&mut out, &format!("terms.{name}"), &a, &b);
    }
    diff(&mut out, "lhs", &r.lhs, &fresh.lhs);
    diff(&mut out, "rhs", &r.rhs, &fresh.rhs);
    diff(&mut out, "ratio", &r.ratio, &fresh.ratio);
    diff(&mut out, "score", &r.score, &fresh.score);
    diff(&mut out, "offender", &r.offender, &fresh.offender);
    diff(&mut out, "generative", &r.generative, &fresh.generative);
    diff(&mut out, "irreducible", &r.irreducible, &fresh.irreducible);
    diff(&mut out, "indomitable", &r.indomitable, &fresh.indomitable);
    Ok(out)
}
