//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use satforge::construction::{build_construction, upper_bound_edges};
use satforge::discharging::{initial_charge, CheckKind, RootChoice, RootRule};
use satforge::search::{canonical_form, min_saturated_edges, LevelSweep, SearchBudget, SearchStatus};
use satforge::{audit, check_saturated, Charge, DischargeAudit, Graph, Stage};

use common::{initial_charges, levels, naive_saturated};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + Sync + 'a>);

/// `(4n - eps)/3 + C(eps, 2)` recomputed by cases on `n mod 3`.
fn expected_construction_edges(n: usize) -> usize {
    match n % 3 {
        0 => 4 * n / 3,
        1 => (4 * n - 1) / 3,
        _ => (4 * n - 2) / 3 + 1,
    }
}

fn construction_formula() -> Outcome {
    for n in 9..=60 {
        let (g, _) = build_construction(n).map_err(|e| e.to_string())?;
        let want = expected_construction_edges(n);
        if g.edge_count() != want || upper_bound_edges(n).ok() != Some(want) {
            return Err(format!("n={n}: {} edges, expected {want}", g.edge_count()));
        }
    }
    Ok("n=9..=60 exact".into())
}

fn construction_saturation() -> Outcome {
    for n in 9..=30 {
        let (g, _) = build_construction(n).map_err(|e| e.to_string())?;
        let report = check_saturated(&g, 6);
        let non_edges = g.order() * (g.order() - 1) / 2 - g.edge_count();
        if !report.is_saturated() || !report.recheck(&g) || report.witnesses.len() != non_edges {
            return Err(format!("n={n}: {}", report.verdict));
        }
    }
    Ok("n=9..=30 saturated, every witness re-validated".into())
}

fn known_exact_values() -> Outcome {
    for n in 3..=9 {
        let r = min_saturated_edges(n, 3, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
        let star = canonical_form(&Graph::star(n)).unwrap();
        let has_star = r.extremal.iter().any(|g| canonical_form(g).unwrap() == star);
        if r.status != SearchStatus::Complete || r.sat_value != Some(n - 1) || !has_star {
            return Err(format!("C3 n={n}: {:?}", r.sat_value));
        }
    }
    for n in 5..=8 {
        let r = min_saturated_edges(n, 4, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
        if r.status != SearchStatus::Complete || r.sat_value != Some((3 * n - 5) / 2) {
            return Err(format!("C4 n={n}: {:?}", r.sat_value));
        }
    }
    let mut c5 = Vec::new();
    for n in 5..=9 {
        let r = min_saturated_edges(n, 5, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
        c5.push(format!("{n}:{}", r.sat_value.map_or("-".into(), |s| s.to_string())));
    }
    Ok(format!("C3 n=3..=9, C4 n=5..=8 exact; C5 recorded {}", c5.join(" ")))
}

fn c6_bracket() -> Outcome {
    let r = min_saturated_edges(9, 6, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
    let sat = r.sat_value.ok_or("no value")?;
    let everyone_saturated = r.extremal.iter().all(|g| naive_saturated(g, 6));
    if r.status != SearchStatus::Complete || !(10..=12).contains(&sat) || !everyone_saturated {
        return Err(format!("sat(9,C6)={sat} status={}", r.status));
    }
    Ok(format!(
        "sat(9,C6)={sat} with {} extremal graphs, {} nodes",
        r.extremal.len(),
        r.explored
    ))
}

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(2..=40);
        let p = rng.gen_range(0.05..0.6);
        let mut g = Graph::new(n);
        // a random spanning tree keeps it connected
        for v in 1..n {
            let u = rng.gen_range(0..v);
            g.add_edge(u, v);
        }
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

fn sum(cs: &[Charge]) -> Charge {
    cs.iter().sum()
}

fn edge_identity(g: &Graph, root: usize) -> Result<(), String> {
    let own = initial_charges(g, root);
    let lib = initial_charge(g, &RootChoice::at(g, root)).map_err(|e| e.to_string())?;
    let lib_g = lib.stage(Stage::G).expect("initial stage");
    if lib_g != own.as_slice() {
        return Err(format!("root {root}: charges differ from recomputation"));
    }
    if sum(&own) + Charge::new(4 * g.order() as i64, 3) != Charge::int(g.edge_count() as i64) {
        return Err(format!("root {root}: sum g + 4n/3 != e"));
    }
    Ok(())
}

fn charge_identity(corpus: &[(String, Graph, DischargeAudit)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a7f);
    let mut random = 0;
    while random < 200 {
        let g = random_connected(&mut rng);
        let roots: Vec<usize> = (0..g.order())
            .filter(|&r| common::distances(&g, r).iter().all(|d| d.is_some_and(|d| d <= 5)))
            .collect();
        if roots.is_empty() {
            continue;
        }
        let root = roots[rng.gen_range(0..roots.len())];
        edge_identity(&g, root).map_err(|e| format!("{}: {e}", satforge::to_graph6(&g)))?;
        random += 1;
    }
    let mut with_root = 0;
    for (name, g, a) in corpus {
        if let Some(l) = &a.ledger {
            edge_identity(l.graph(), l.root().alpha).map_err(|e| format!("{name}: {e}"))?;
            with_root += 1;
        } else if g.is_connected() {
            edge_identity(g, 0).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(format!("200 random graphs, {} corpus graphs ({with_root} with chosen roots)", corpus.len()))
}

fn pipeline_graphs(corpus: &[(String, Graph, DischargeAudit)]) -> impl Iterator<Item = (&String, &DischargeAudit)> {
    corpus.iter().filter(|(_, _, a)| a.ledger.is_some()).map(|(n, _, a)| (n, a))
}

fn conservation(corpus: &[(String, Graph, DischargeAudit)]) -> Outcome {
    let mut count = 0;
    for (name, a) in pipeline_graphs(corpus) {
        let l = a.ledger.as_ref().unwrap();
        let lv = levels(l.graph(), l.root().alpha);
        let outer = |stage: Stage| -> Charge {
            (0..l.graph().order())
                .filter(|&v| lv[v] >= 2)
                .map(|v| l.charge(stage, v).clone())
                .sum()
        };
        let (g, gstar, f7) = (outer(Stage::G), outer(Stage::G5), outer(Stage::F7));
        if g != gstar || gstar != f7 {
            return Err(format!("{name}: g={g} g*={gstar} f7={f7}"));
        }
        count += 1;
    }
    if count == 0 {
        return Err("no graph reached the full redistribution".into());
    }
    Ok(format!("{count} graphs through the full redistribution"))
}

fn first_level_sums(corpus: &[(String, Graph, DischargeAudit)]) -> Outcome {
    let (mut one, mut two) = (0, 0);
    for (name, a) in pipeline_graphs(corpus) {
        let l = a.ledger.as_ref().unwrap();
        let rc = l.root();
        if rc.rule == RootRule::Manual {
            continue;
        }
        let lv = levels(l.graph(), rc.alpha);
        let own = initial_charges(l.graph(), rc.alpha);
        let total: Charge = (0..own.len()).filter(|&v| lv[v] == 1).map(|v| own[v].clone()).sum();
        let want = match rc.delta {
            1 => {
                one += 1;
                Charge::new(-5, 3)
            }
            _ => {
                two += 1;
                Charge::int(-2)
            }
        };
        if total != want {
            return Err(format!("{name}: first level sums to {total}, expected {want}"));
        }
    }
    Ok(format!("{one} graphs with a leaf root, {two} with a good root"))
}

fn structural_statements(corpus: &[(String, Graph, DischargeAudit)]) -> Outcome {
    let kinds = [
        CheckKind::LevelFourDeficits,
        CheckKind::LevelThreeDeficits,
        CheckKind::FinalNonnegative,
        CheckKind::MonotoneSigns,
    ];
    let (mut count, mut warned) = (0, 0);
    for (name, a) in pipeline_graphs(corpus) {
        if a.reduction.is_some() {
            continue;
        }
        for kind in kinds {
            let c = a.check(kind).ok_or(format!("{name}: {kind} not evaluated"))?;
            if !c.ok {
                return Err(format!("{name}: {c}"));
            }
        }
        let l = a.ledger.as_ref().unwrap();
        let lv = levels(l.graph(), l.root().alpha);
        if let Some(v) = (0..lv.len()).find(|&v| lv[v] >= 2 && l.charge(Stage::F7, v).is_negative()) {
            return Err(format!("{name}: f7({v}) = {}", l.charge(Stage::F7, v)));
        }
        count += 1;
        warned += !a.warnings().is_empty() as usize;
    }
    Ok(format!("{count} graphs with empty T2, {warned} with diagnostic warnings"))
}

fn final_bound(corpus: &[(String, Graph, DischargeAudit)]) -> Outcome {
    let mut branches = std::collections::BTreeMap::<&str, usize>::new();
    for (name, g, a) in corpus {
        let bound_ok = a.check(CheckKind::FinalBound).is_some_and(|c| c.ok);
        if !a.passed() || !bound_ok || 3 * g.edge_count() + 6 < 4 * g.order() {
            let failed: Vec<String> = a.failures().iter().map(|c| c.to_string()).collect();
            return Err(format!("{name}: {}", failed.join("; ")));
        }
        let branch = match &a.branch {
            satforge::discharging::AuditBranch::Complete => "complete",
            satforge::discharging::AuditBranch::MinDegreeAtLeastThree(_) => "min-degree",
            satforge::discharging::AuditBranch::NoGoodRoot => "no-good-root",
            satforge::discharging::AuditBranch::Pipeline(_) => "pipeline",
        };
        *branches.entry(branch).or_default() += 1;
    }
    let summary: Vec<String> = branches.iter().map(|(b, c)| format!("{b}={c}")).collect();
    Ok(format!("{} graphs ({})", corpus.len(), summary.join(" ")))
}

const GRAPH_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for (n, &want) in GRAPH_COUNTS.iter().enumerate() {
        // with k > n nothing is pruned, so the sweep lists every graph
        let mut sweep = LevelSweep::new(n, n + 3, SearchBudget::unlimited()).map_err(|e| e.to_string())?;
        let mut graphs: Vec<Graph> = sweep.graphs().cloned().collect();
        while sweep.advance().map_err(|e| e.to_string())? {
            graphs.extend(sweep.graphs().cloned());
        }
        if graphs.len() != want {
            return Err(format!("{} graphs on {n} vertices, expected {want}", graphs.len()));
        }
        for g in &graphs {
            for k in 3..=6 {
                let report = check_saturated(g, k);
                if report.is_saturated() != naive_saturated(g, k) || !report.recheck(g) {
                    return Err(format!("{} k={k}: {}", satforge::to_graph6(g), report.verdict));
                }
            }
        }
        checked += graphs.len();
    }
    Ok(format!("{checked} graphs on up to 8 vertices, k=3..=6"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus: Vec<(String, Graph, DischargeAudit)> = common::corpus()
        .into_iter()
        .map(|(name, g)| {
            let a = audit(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, g, a)
        })
        .collect();
    let criteria: Vec<Criterion> = vec![
        ("construction edge formula", Box::new(construction_formula)),
        ("construction saturation", Box::new(construction_saturation)),
        ("known exact values", Box::new(known_exact_values)),
        ("C6 bracket at n=9", Box::new(c6_bracket)),
        ("charge identity", Box::new(|| charge_identity(&corpus))),
        ("stage conservation", Box::new(|| conservation(&corpus))),
        ("first-level sums", Box::new(|| first_level_sums(&corpus))),
        ("structural statements", Box::new(|| structural_statements(&corpus))),
        ("final bound", Box::new(|| final_bound(&corpus))),
        ("oracle equivalence", Box::new(oracle_equivalence)),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("panicked".into()))).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), outcome)) in criteria.iter().zip(&outcomes).enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
