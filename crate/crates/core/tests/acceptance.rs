//! End-to-end checks, one line per criterion. Run with
//! `cargo test -p ingleton --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::corpus::{build, up_to, LARGE_LATTICES};
use common::oracle::{quad_of, Oracle};
use common::props::{
    exclusion_sound, index_reduction, maxlp, offender_preserved, order_intersection, small_groups,
    swap_variants,
};
use ingleton::example::example_3xpsl27;
use ingleton::family::{supersoluble_family_with, verify_family, FamilyOptions};
use ingleton::group::{build_group_with, quotient_group, BuildOptions};
use ingleton::ingleton::{ingleton_terms, is_offender};
use ingleton::lattice::{all_subgroups, normal_subgroups};
use ingleton::search::{minimal_constraints, search_offenders, Requirement, SearchOptions, SearchOutcome};
use ingleton::subgroup::center;
use ingleton::{GroupSpec, GroupTable, IngletonTerms, Quadruple};

const TOL: f64 = 5e-5;
/// Lattices above this size are beyond the quartic reference scan.
const SCAN_LIMIT: usize = 400;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(spec: &str, cap: usize) -> Result<GroupTable, String> {
    let s = GroupSpec::parse_named(spec).map_err(|e| e.to_string())?;
    build_group_with(&s, BuildOptions::with_cap(cap)).map_err(|e| e.to_string())
}

fn search(g: &GroupTable, require: Requirement) -> Result<SearchOutcome, String> {
    let opts = SearchOptions {
        require,
        ..Default::default()
    };
    search_offenders(g, &opts).map_err(|e| e.to_string())
}

/// `ln(rhs/lhs) / ln(|G| / |H1234|)` from the raw terms.
fn score_of(t: &IngletonTerms, order: usize) -> f64 {
    let l: f64 = t.lhs_factors().iter().map(|&x| x as f64).product();
    let r: f64 = t.rhs_factors().iter().map(|&x| x as f64).product();
    (r / l).ln() / (order as f64 / t.h1234 as f64).ln()
}

/// A single-class search: the class count, exact ratio and score.
fn single_class(spec: &str, ratio: (u128, u128), score: f64, limit: Duration) -> Outcome {
    let g = group(spec, 2048)?;
    let out = search(&g, Requirement::Generative)?;
    ensure(out.complete, || "search incomplete".into())?;
    ensure(out.classes.len() == 1, || format!("{} classes, expected 1", out.classes.len()))?;
    let rep = &out.classes[0].report;
    ensure(rep.ratio == Ratio::new(ratio.0, ratio.1), || format!("ratio {}", rep.ratio))?;
    let s = score_of(&rep.terms, g.order());
    ensure((s - score).abs() <= TOL && (rep.score - s).abs() < 1e-12, || {
        format!("score {:.5}, expected {score:.5}", rep.score)
    })?;
    ensure(out.elapsed < limit, || format!("took {:.1}s", out.elapsed.as_secs_f64()))?;
    Ok(format!(
        "1 class, ratio {}, score {:.5}, {:.2}s",
        rep.ratio,
        rep.score,
        out.elapsed.as_secs_f64()
    ))
}

fn family() -> Outcome {
    let opts = FamilyOptions {
        order_cap: 30_000,
        ..Default::default()
    };
    let mut notes = Vec::new();
    for q in [4u32, 5, 7, 8, 9, 11, 13] {
        let t = Instant::now();
        let fq = supersoluble_family_with(q, &opts).map_err(|e| format!("q={q}: {e}"))?;
        let rep = verify_family(&fq).map_err(|e| format!("q={q}: {e}"))?;
        let secs = t.elapsed().as_secs_f64();
        let q1 = (q - 1) as u128;
        let expected = Ratio::new(2 * q1 * q1, (q * q) as u128);
        let got = Ratio::new(rep.ratio.num as u128, rep.ratio.den as u128);
        ensure(got == expected, || format!("q={q}: ratio {got}, expected {expected}"))?;
        ensure(rep.offender, || format!("q={q}: not an offender"))?;
        let limit = if q <= 8 { 60.0 } else { 600.0 };
        ensure(secs < limit, || format!("q={q}: took {secs:.1}s"))?;
        if q == 5 {
            ensure(got == Ratio::new(32, 25), || format!("q=5: ratio {got}"))?;
            ensure((rep.score - 0.03972).abs() <= TOL, || format!("q=5: score {:.5}", rep.score))?;
            let minimal = minimal_constraints(&fq.group, &fq.quadruple).map_err(|e| e.to_string())?;
            notes.push(format!("q=5 score {:.5}, minimal-violator conditions {minimal}", rep.score));
        }
    }
    let small = FamilyOptions {
        allow_small: true,
        ..Default::default()
    };
    let fq = supersoluble_family_with(3, &small).map_err(|e| format!("q=3: {e}"))?;
    let rep = verify_family(&fq).map_err(|e| format!("q=3: {e}"))?;
    let got = Ratio::new(rep.ratio.num, rep.ratio.den);
    ensure(got == Ratio::new(8, 9) && !rep.offender && rep.warning.is_some(), || {
        format!("q=3: ratio {got}, offender {}", rep.offender)
    })?;
    notes.push("q=3 gives 8/9, no offender".into());
    Ok(format!("q in 4,5,7,8,9,11,13 verified; {}", notes.join("; ")))
}

fn worked_example() -> Outcome {
    let ex = example_3xpsl27().map_err(|e| e.to_string())?;
    let (g, q) = (&ex.group, &ex.quadruple);
    let t = ingleton_terms(g, q).map_err(|e| e.to_string())?;
    ensure(t.lhs_factors() == [12, 12, 1, 1, 1] && t.rhs_factors() == [2, 3, 3, 3, 3], || {
        format!("terms {t}")
    })?;
    ensure(t.is_offender(), || "not an offender".into())?;
    ensure(t.ratio::<u128>() == Ratio::new(9, 8), || format!("ratio {}", t.ratio::<u128>()))?;
    let s = score_of(&t, g.order());
    ensure((s - 0.01892).abs() <= TOL && (t.score::<f64>(g.order()) - s).abs() < 1e-12, || {
        format!("score {s:.5}")
    })?;
    let z = center(g);
    ensure(z.order() == 3, || format!("|Z(G)| = {}", z.order()))?;
    let (quot, proj) = quotient_group(g, &z).map_err(|e| e.to_string())?;
    let img = q.image(&proj, &quot).map_err(|e| e.to_string())?;
    let bad = is_offender(&quot, &img).map_err(|e| e.to_string())?;
    ensure(!bad, || "image mod Z(G) is an offender".into())?;
    Ok(format!("terms {t}, ratio 9/8, score {s:.5}, image in G/Z(G) of order {} is no offender", quot.order()))
}

fn negative_controls() -> Outcome {
    let t = Instant::now();
    let mut specs: Vec<String> = ["sym:4", "alt:4", "alt:5", "sl2:3"].iter().map(|s| s.to_string()).collect();
    specs.extend(up_to(128).filter(|e| e.1.starts_with("abelian") || e.1.starts_with("cyclic")).map(|e| e.1.to_string()));
    specs.extend(LARGE_LATTICES.iter().map(|e| e.1.to_string()));
    specs.extend((2..=24).map(|n| format!("dihedral:{n}")));
    specs.extend(up_to(200).filter(|e| e.1.starts_with("metacyclic") || e.1.starts_with("dicyclic")).map(|e| e.1.to_string()));
    for (m, n, r) in [(7, 6, 3), (17, 8, 9), (16, 4, 3), (27, 2, 26), (9, 3, 4), (49, 3, 18)] {
        specs.push(format!("metacyclic:{m},{n},{r}"));
    }
    let opts = SearchOptions {
        require: Requirement::None,
        subgroup_cap: 40_000,
        ..Default::default()
    };
    for s in &specs {
        let g = group(s, 2048)?;
        let out = search_offenders(&g, &opts).map_err(|e| format!("{s}: {e}"))?;
        ensure(out.complete && out.classes.is_empty(), || {
            format!("{s}: {} offender classes", out.classes.len())
        })?;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} groups without offenders, {secs:.1}s", specs.len()))
}

/// Offender classes of the groups in the searches above and the two
/// constructed quadruples, with every swap of roles.
fn known_offenders() -> Result<Vec<(GroupTable, Vec<Quadruple>)>, String> {
    let mut out = Vec::new();
    for spec in ["sym:5", "direct_product:(alt:4),(alt:4)", "pgl2:7"] {
        let g = group(spec, 2048)?;
        let found = search(&g, Requirement::None)?;
        let qs = found.classes.iter().flat_map(|c| swap_variants(&c.representative)).collect();
        out.push((g, qs));
    }
    for q in [4, 5] {
        let fq = supersoluble_family_with(q, &FamilyOptions::default()).map_err(|e| e.to_string())?;
        let qs = swap_variants(&fq.quadruple).to_vec();
        out.push((fq.group, qs));
    }
    let ex = example_3xpsl27().map_err(|e| e.to_string())?;
    let qs = swap_variants(&ex.quadruple).to_vec();
    out.push((ex.group, qs));
    Ok(out)
}

fn property_suites() -> Outcome {
    const N: usize = 1000;
    let groups = small_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a9e_7011);
    let idx = |rng: &mut ChaCha8Rng| rng.gen::<u32>() as usize;
    for _ in 0..N {
        let p = &groups[rng.gen_range(0..groups.len())];
        let [a, b, c, n] = [idx(&mut rng), idx(&mut rng), idx(&mut rng), idx(&mut rng)];
        order_intersection(p, a, b)?;
        index_reduction(p, a, b, c)?;
        maxlp(p, a, b, n, false)?;
        maxlp(p, a, b, n, true)?;
        let quad = [a, b, c, n];
        exclusion_sound(p, quad, rng.gen_range(0..5))?;
    }

    // no unfiltered scan turns up an offender with cyclic H1 or H2
    let mut scanned = 0;
    for &(label, spec, _) in up_to(144) {
        let g = build(spec);
        if all_subgroups(&g).map_err(|e| e.to_string())?.len() > SCAN_LIMIT {
            continue;
        }
        let out = search_offenders(&g, &SearchOptions::unfiltered()).map_err(|e| e.to_string())?;
        for c in &out.classes {
            let [h1, h2, _, _] = c.representative.parts();
            ensure(!h1.is_cyclic(&g) && !h2.is_cyclic(&g), || format!("{label}: cyclic H1 or H2"))?;
        }
        scanned += 1;
    }

    let mut preserved = 0;
    for (g, qs) in known_offenders()? {
        let normals = normal_subgroups(&g);
        for q in &qs {
            offender_preserved(&g, &normals, q).map_err(|e| format!("order {}: {e}", g.order()))?;
            preserved += 1;
        }
    }
    Ok(format!(
        "{N} instances per lemma over {} groups, {scanned} unfiltered scans, {preserved} offenders preserved",
        groups.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let filtered = SearchOptions {
        require: Requirement::None,
        ..Default::default()
    };
    let mut checked = 0;
    let mut skipped = Vec::new();
    for &(label, spec, _) in up_to(144) {
        let g = build(spec);
        let o = Oracle::new(&g);
        if o.subgroups.len() > SCAN_LIMIT {
            skipped.push(format!("{label} ({} subgroups)", o.subgroups.len()));
            continue;
        }
        let scan = o.scan();
        let out = search_offenders(&g, &filtered).map_err(|e| e.to_string())?;
        let found: BTreeSet<_> = out
            .classes
            .iter()
            .map(|c| (o.canonical(&quad_of(&c.representative)), c.class_size))
            .collect();
        let expected: BTreeSet<_> = scan.classes.into_iter().collect();
        ensure(found == expected, || {
            format!("{label}: search {} classes, scan {}", found.len(), expected.len())
        })?;
        checked += 1;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(skipped.is_empty(), || format!("no reference scan for {}", skipped.join(", ")))?;
    ensure(secs < 900.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{checked} groups agree, {secs:.1}s"))
}

fn a6() -> Outcome {
    let g = group("alt:6", 2048)?;
    let opts = SearchOptions {
        time_budget: Some(Duration::from_secs(30 * 60)),
        ..Default::default()
    };
    let out = search_offenders(&g, &opts).map_err(|e| e.to_string())?;
    ensure(out.complete, || "search did not finish in 30 minutes".into())?;
    let pairs: BTreeSet<(Ratio<u128>, u64)> =
        out.classes.iter().map(|c| (c.report.ratio, c.report.terms.h1234)).collect();
    for (n, d, k) in [(9, 8, 1), (9, 8, 2), (16, 15, 1), (16, 15, 3)] {
        ensure(pairs.contains(&(Ratio::new(n, d), k)), || format!("missing ({n}/{d}, {k})"))?;
    }
    let ind = search(&g, Requirement::Indomitable)?;
    Ok(format!(
        "{} generative classes, {} indomitable, pairs {:?}, {:.1}s",
        out.classes.len(),
        ind.classes.len(),
        pairs.iter().map(|(r, k)| format!("{r}:{k}")).collect::<Vec<_>>(),
        out.elapsed.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("supersoluble family", family),
        ("S5", || single_class("sym:5", (16, 15), 0.01348, Duration::from_secs(60))),
        ("A4 x A4", || {
            single_class("direct_product:(alt:4),(alt:4)", (9, 8), 0.02370, Duration::from_secs(120))
        }),
        ("PGL2(7)", || single_class("pgl2:7", (8, 7), 0.02295, Duration::from_secs(300))),
        ("3 x PSL2(7) quadruple", worked_example),
        ("negative controls", negative_controls),
        ("property suites", property_suites),
        ("oracle equivalence", oracle_equivalence),
        ("A6", a6),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
