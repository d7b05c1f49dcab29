use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::saturation::{check_saturated, degree_sum_holds, is_saturated, reduce_t2_with_map, t_sets};

use super::charge::Charge;
use super::ledger::{ChargeLedger, Stage, VertexClass};
use super::root::{choose_root, RootChoice};
use super::{run_pipeline, DischargeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// A graph on at most five vertices is complete.
    CompleteGraph,
    /// Minimum degree at least 3 gives `2e >= 3n`.
    MinDegreeBound,
    /// No good root: degree sum over the non-T1 part gives `2e >= 3n`.
    DegreeSum,
    /// `e = sum of g + 4n/3`.
    EdgeIdentity,
    /// Charge on the root's closed neighbourhood is `-5/3` or `-2`.
    FirstLevelSum,
    /// Outside the first level, total `g` equals total `g5`.
    StageOneConserved,
    /// Outside the first level, total `g5` equals total `f7`.
    StageTwoConserved,
    /// Each rule leaves the overall total unchanged and never touches the
    /// first level.
    RuleBalance,
    /// Once non-negative a vertex stays so, and negative charges only rise.
    MonotoneSigns,
    /// Level 5 is empty after the first stage-two rule.
    LastLevelEmptied,
    /// At most one negative level-4 vertex (at `f5`) below each level-2 vertex.
    LevelFourDeficits,
    /// At most one negative level-3 neighbour (at `f5`) per level-2 vertex,
    /// and none below its other level-3 neighbours when there is one.
    LevelThreeDeficits,
    /// Every vertex outside the first level ends non-negative.
    FinalNonnegative,
    /// Total initial charge outside the first level is non-negative.
    ChargeBound,
    /// The graph left after deleting T2 is still C6-saturated.
    ReducedSaturated,
    /// `e(G) = e(G - T2) + 3|T2|/2`.
    ReductionBookkeeping,
    /// `e >= 4n/3 - 2` for the graph left after deleting T2.
    ReducedBound,
    /// `e >= 4n/3 - 2`.
    FinalBound,
    /// Negative vertices after stage one have no `2`-class and at most one
    /// `1`-class neighbour one level up.
    NegativeVertexShape,
    /// Lower bound on the stage-one result of a `2`-class vertex in terms
    /// of its neighbourhood counts.
    TwoVertexLowerBound,
    /// Case thresholds for `2`-class vertices.
    TwoVertexCases,
    /// No rule drove a non-negative vertex negative.
    RuleConflicts,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::CompleteGraph => "complete graph",
            CheckKind::MinDegreeBound => "min-degree bound",
            CheckKind::DegreeSum => "degree sum",
            CheckKind::EdgeIdentity => "edge identity",
            CheckKind::FirstLevelSum => "first-level sum",
            CheckKind::StageOneConserved => "stage-one conservation",
            CheckKind::StageTwoConserved => "stage-two conservation",
            CheckKind::RuleBalance => "rule balance",
            CheckKind::MonotoneSigns => "monotone signs",
            CheckKind::LastLevelEmptied => "last level emptied",
            CheckKind::LevelFourDeficits => "level-4 deficits",
            CheckKind::LevelThreeDeficits => "level-3 deficits",
            CheckKind::FinalNonnegative => "final non-negative",
            CheckKind::ChargeBound => "charge bound",
            CheckKind::ReducedSaturated => "reduced graph saturated",
            CheckKind::ReductionBookkeeping => "reduction bookkeeping",
            CheckKind::ReducedBound => "reduced bound",
            CheckKind::FinalBound => "final bound",
            CheckKind::NegativeVertexShape => "negative-vertex shape",
            CheckKind::TwoVertexLowerBound => "2-vertex lower bound",
            CheckKind::TwoVertexCases => "2-vertex cases",
            CheckKind::RuleConflicts => "rule conflicts",
        }
    }

    /// Diagnostics are reported but do not decide the verdict.
    pub fn is_diagnostic(self) -> bool {
        matches!(
            self,
            CheckKind::NegativeVertexShape
                | CheckKind::TwoVertexLowerBound
                | CheckKind::TwoVertexCases
                | CheckKind::RuleConflicts
        )
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One verdict with the evaluated quantities behind it, or the least vertex
/// where it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub ok: bool,
    pub detail: String,
    pub counterexample: Option<usize>,
}

impl Check {
    fn new(kind: CheckKind, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            kind,
            ok,
            detail: detail.into(),
            counterexample: None,
        }
    }

    /// Passes when no vertex fails `bad`; otherwise names the least one.
    fn per_vertex(kind: CheckKind, vertices: VertexSet, what: &str, bad: impl Fn(usize) -> Option<String>) -> Self {
        for v in vertices {
            if let Some(why) = bad(v) {
                return Check {
                    kind,
                    ok: false,
                    detail: format!("vertex {v}: {why}"),
                    counterexample: Some(v),
                };
            }
        }
        Check::new(kind, true, format!("{what} ({} vertices)", vertices.len()))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.ok, self.kind.is_diagnostic()) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "WARN",
        };
        write!(f, "{tag} {}: {}", self.kind, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditBranch {
    /// At most five vertices.
    Complete,
    MinDegreeAtLeastThree(usize),
    NoGoodRoot,
    Pipeline(RootChoice),
}

impl fmt::Display for AuditBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditBranch::Complete => write!(f, "small complete graph"),
            AuditBranch::MinDegreeAtLeastThree(d) => write!(f, "minimum degree {d} >= 3"),
            AuditBranch::NoGoodRoot => write!(f, "minimum degree 2 without a good root"),
            AuditBranch::Pipeline(rc) => write!(f, "full redistribution from root {} ({})", rc.alpha, rc.rule),
        }
    }
}

/// Deletion of the triangle-bound degree-2 vertices with a degree-2
/// neighbour, performed before auditing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub removed: VertexSet,
    /// Original id of each vertex of the reduced graph.
    pub kept: Vec<usize>,
    pub reduced: Graph,
}

#[derive(Debug, Clone)]
pub struct DischargeAudit {
    pub n: usize,
    pub edges: usize,
    pub branch: AuditBranch,
    pub reduction: Option<Reduction>,
    /// Present for the full-redistribution branch; indexed by the reduced
    /// graph's vertex ids when a reduction took place.
    pub ledger: Option<ChargeLedger>,
    pub checks: Vec<Check>,
}

impl DischargeAudit {
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| !c.ok && !c.kind.is_diagnostic())
            .collect()
    }

    pub fn warnings(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok && c.kind.is_diagnostic()).collect()
    }

    pub fn check(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    pub fn render(&self) -> String {
        let mut out = format!("graph: n={} e={}\n", self.n, self.edges);
        if let Some(r) = &self.reduction {
            out.push_str(&format!(
                "reduced: removed {} (n={} e={})\n",
                r.removed,
                r.reduced.order(),
                r.reduced.edge_count()
            ));
        }
        out.push_str(&format!("branch: {}\n", self.branch));
        for c in &self.checks {
            out.push_str(&format!("{c}\n"));
        }
        if let Some(l) = &self.ledger {
            for note in l.notes() {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        out.push_str(if self.passed() { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}

/// Renders a rational as an integer, a half, or `p/q`.
fn show(c: &Charge) -> String {
    if *c.denom() == 2.into() {
        let twice: i64 = c.numer().try_into().unwrap_or(i64::MAX);
        format!("{:.1}", twice as f64 / 2.0)
    } else {
        c.to_string()
    }
}

fn lower_bound(n: usize) -> Charge {
    Charge::new(4 * n as i64 - 6, 3)
}

fn bound_check(kind: CheckKind, g: &Graph) -> Check {
    let e = Charge::int(g.edge_count() as i64);
    let lb = lower_bound(g.order());
    Check::new(kind, e >= lb, format!("e={} >= 4n/3-2 = {}", show(&e), show(&lb)))
}

fn half_bound_check(kind: CheckKind, g: &Graph, label: &str, extra: bool) -> Check {
    let e = g.edge_count();
    let ok = 2 * e >= 3 * g.order() && extra;
    Check::new(
        kind,
        ok,
        format!("{label}: {e} >= {}", show(&Charge::new(3 * g.order() as i64, 2))),
    )
}

/// Audits a C6-saturated graph. Graphs on six or more vertices with a
/// non-empty T2 are reduced first and the reduced graph is audited.
pub fn audit(g: &Graph) -> Result<DischargeAudit, DischargeError> {
    let report = check_saturated(g, 6);
    if !report.is_saturated() {
        return Err(DischargeError::NotSaturated(report.verdict));
    }
    let t2 = t_sets(g).t2;
    if t2.is_empty() || g.order() <= 5 {
        return audit_reduced(g, None);
    }
    let (reduced, kept) = reduce_t2_with_map(g)?;
    let mut inner = audit_reduced(&reduced, None)?;
    for c in &mut inner.checks {
        if c.kind == CheckKind::FinalBound {
            c.kind = CheckKind::ReducedBound;
        }
    }
    let sat = is_saturated(&reduced, 6);
    inner.checks.push(Check::new(
        CheckKind::ReducedSaturated,
        sat,
        format!("n={} e={}", reduced.order(), reduced.edge_count()),
    ));
    let lhs = 2 * g.edge_count();
    let rhs = 2 * reduced.edge_count() + 3 * t2.len();
    inner.checks.push(Check::new(
        CheckKind::ReductionBookkeeping,
        lhs == rhs,
        format!(
            "e={} = {} + 3*{}/2 = {}",
            g.edge_count(),
            reduced.edge_count(),
            t2.len(),
            show(&Charge::new(rhs as i64, 2))
        ),
    ));
    inner.checks.push(bound_check(CheckKind::FinalBound, g));
    inner.n = g.order();
    inner.edges = g.edge_count();
    inner.reduction = Some(Reduction {
        removed: t2,
        kept,
        reduced,
    });
    Ok(inner)
}

/// Audits a graph assumed to be C6-saturated with empty T2, using `root`
/// in place of the selection rule when given.
fn audit_reduced(g: &Graph, root: Option<usize>) -> Result<DischargeAudit, DischargeError> {
    let n = g.order();
    let mut checks = Vec::new();
    let delta = g.min_degree();
    let branch = if delta >= 3 {
        checks.push(half_bound_check(CheckKind::MinDegreeBound, g, &format!("delta={delta}"), true));
        AuditBranch::MinDegreeAtLeastThree(delta)
    } else if n <= 5 {
        let full = n * n.saturating_sub(1) / 2;
        checks.push(Check::new(
            CheckKind::CompleteGraph,
            g.edge_count() == full,
            format!("e={} of {full}", g.edge_count()),
        ));
        AuditBranch::Complete
    } else {
        let rc = match root {
            Some(alpha) => Ok(RootChoice::at(g, alpha)),
            None => choose_root(g),
        };
        match rc {
            Err(DischargeError::NoGoodRoot) => {
                checks.push(half_bound_check(CheckKind::DegreeSum, g, "no good root", degree_sum_holds(g)));
                AuditBranch::NoGoodRoot
            }
            Err(e) => return Err(e),
            Ok(rc) => {
                let ledger = run_pipeline(g, &rc)?;
                checks.extend(ledger_checks(&ledger));
                checks.push(bound_check(CheckKind::FinalBound, g));
                return Ok(DischargeAudit {
                    n,
                    edges: g.edge_count(),
                    branch: AuditBranch::Pipeline(rc),
                    reduction: None,
                    ledger: Some(ledger),
                    checks,
                });
            }
        }
    };
    checks.push(bound_check(CheckKind::FinalBound, g));
    Ok(DischargeAudit {
        n,
        edges: g.edge_count(),
        branch,
        reduction: None,
        ledger: None,
        checks,
    })
}

/// Runs the full redistribution from a caller-chosen root and audits it,
/// without checking saturation.
pub fn audit_with_root(g: &Graph, alpha: usize) -> Result<DischargeAudit, DischargeError> {
    let rc = RootChoice::at(g, alpha);
    let ledger = run_pipeline(g, &rc)?;
    let mut checks = ledger_checks(&ledger);
    checks.push(bound_check(CheckKind::FinalBound, g));
    Ok(DischargeAudit {
        n: g.order(),
        edges: g.edge_count(),
        branch: AuditBranch::Pipeline(rc),
        reduction: None,
        ledger: Some(ledger),
        checks,
    })
}

/// Every identity and per-vertex assertion over a completed ledger.
pub fn ledger_checks(l: &ChargeLedger) -> Vec<Check> {
    let g = l.graph();
    let n = g.order();
    let all = g.vertices();
    let outer = l.outer();
    let first = l.level_set(1);
    let mut checks = Vec::new();

    let sum_g = l.total(Stage::G, all);
    let rhs = &sum_g + &Charge::new(4 * n as i64, 3);
    let e = Charge::int(g.edge_count() as i64);
    checks.push(Check::new(
        CheckKind::EdgeIdentity,
        rhs == e,
        format!("e={} vs sum g + 4n/3 = {}", show(&e), show(&rhs)),
    ));

    let v1 = l.total(Stage::G, first);
    let expected = match g.degree(l.root().alpha) {
        1 => Some(Charge::new(-5, 3)),
        2 if l.root().closed_nbhd.len() == 3 && g.edges_within(l.root().closed_nbhd) == 2 => Some(Charge::int(-2)),
        _ => None,
    };
    if let Some(x) = expected {
        checks.push(Check::new(
            CheckKind::FirstLevelSum,
            v1 == x,
            format!("sum over first level = {v1} (expected {x})"),
        ));
    }

    if l.has_stage(Stage::G5) {
        let (a, b) = (l.total(Stage::G, outer), l.total(Stage::G5, outer));
        checks.push(Check::new(CheckKind::StageOneConserved, a == b, format!("{a} -> {b}")));
    }
    if !l.has_stage(Stage::F7) {
        return checks;
    }
    let (a, b) = (l.total(Stage::G5, outer), l.total(Stage::F7, outer));
    checks.push(Check::new(CheckKind::StageTwoConserved, a == b, format!("{a} -> {b}")));

    let unbalanced = Stage::ALL[1..]
        .iter()
        .find(|&&st| l.rule_imbalance(st).is_some_and(|d| !d.is_zero()));
    let touches_first = l
        .transfers()
        .iter()
        .find(|t| first.contains(t.from) || first.contains(t.to));
    checks.push(match (unbalanced, touches_first) {
        (Some(st), _) => Check::new(CheckKind::RuleBalance, false, format!("rule producing {st} changes the total")),
        (None, Some(t)) => Check {
            kind: CheckKind::RuleBalance,
            ok: false,
            detail: format!("rule producing {} moves charge {} -> {}", t.stage, t.from, t.to),
            counterexample: Some(if first.contains(t.from) { t.from } else { t.to }),
        },
        (None, None) => Check::new(CheckKind::RuleBalance, true, format!("{} transfers", l.transfers().len())),
    });

    checks.push(Check::per_vertex(CheckKind::MonotoneSigns, all, "g..g5 and f1..f6", |v| {
        monotone_break(l, v, &Stage::ALL[..6]).or_else(|| monotone_break(l, v, &Stage::ALL[6..12]))
    }));

    checks.push(Check::per_vertex(CheckKind::LastLevelEmptied, l.level_set(5), "f1 on level 5", |w| {
        let f1 = l.charge(Stage::F1, w);
        (!f1.is_zero() && l.n(w, 4) > 0).then(|| format!("f1 = {f1}"))
    }));

    let level2 = l.level_set(2);
    let neg4 = |y: usize| l.negative_at(l.nb(y, 4), Stage::F5).len();
    checks.push(Check::per_vertex(CheckKind::LevelFourDeficits, level2, "at most one", |x| {
        let total: usize = l.nb(x, 3).iter().map(neg4).sum();
        (total > 1).then(|| format!("{total} negative level-4 vertices below"))
    }));
    checks.push(Check::per_vertex(CheckKind::LevelThreeDeficits, level2, "at most one", |x| {
        let ys = l.nb(x, 3);
        let neg = l.negative_at(ys, Stage::F5);
        if neg.len() > 1 {
            return Some(format!("negative level-3 neighbours {neg}"));
        }
        if neg.len() == 1 {
            if let Some(y) = ys.difference(neg).iter().find(|&y| neg4(y) > 0) {
                return Some(format!("neighbour {y} has a negative level-4 neighbour"));
            }
        }
        None
    }));
    checks.push(Check::per_vertex(CheckKind::FinalNonnegative, outer, "f7 >= 0", |v| {
        let f7 = l.charge(Stage::F7, v);
        f7.is_negative().then(|| format!("f7 = {f7}"))
    }));
    let outer_g = l.total(Stage::G, outer);
    checks.push(Check::new(
        CheckKind::ChargeBound,
        outer_g.is_nonnegative(),
        format!("sum of g outside the first level = {outer_g}"),
    ));

    checks.push(negative_shape(l));
    checks.push(two_vertex_lower_bound(l));
    checks.push(two_vertex_cases(l));
    let conflicts = l.conflicts();
    checks.push(match conflicts.first() {
        None => Check::new(CheckKind::RuleConflicts, true, "none"),
        Some(c) => Check {
            kind: CheckKind::RuleConflicts,
            ok: false,
            detail: format!("{} conflicts; first: {c}", conflicts.len()),
            counterexample: Some(c.vertex),
        },
    });
    checks
}

fn monotone_break(l: &ChargeLedger, v: usize, stages: &[Stage]) -> Option<String> {
    stages.windows(2).find_map(|w| {
        let (a, b) = (l.charge(w[0], v), l.charge(w[1], v));
        let bad = (a.is_nonnegative() && b.is_negative()) || (b.is_negative() && b < a);
        bad.then(|| format!("{} = {a}, {} = {b}", w[0], w[1]))
    })
}

fn negative_shape(l: &ChargeLedger) -> Check {
    let candidates: VertexSet = (2..=4)
        .map(|i| l.negative_at(l.level_set(i), Stage::G5))
        .fold(VertexSet::empty(), VertexSet::union);
    Check::per_vertex(CheckKind::NegativeVertexShape, candidates, "negative after stage one", |x| {
        let up = l.nb(x, l.level(x) + 1);
        let twos = l.with_class(up, VertexClass::Two).len();
        let ones = l.with_class(up, VertexClass::One);
        if twos != 0 || ones.len() > 1 {
            return Some(format!("{twos} 2-class and {} 1-class neighbours above", ones.len()));
        }
        let i = l.level(x) + 1;
        ones.iter()
            .find(|&y| l.with_class(l.nb(y, i), VertexClass::One).len() != 1)
            .map(|y| format!("1-class neighbour {y} does not have exactly one 1-class neighbour beside it"))
    })
}

/// Neighbourhood counts of a level-`i` vertex used by the lower bounds.
struct Counts {
    below: i64,
    below_plus: i64,
    below_minus_one: i64,
    below_minus_two: i64,
    beside: i64,
    beside_one: i64,
    beside_two: i64,
}

fn counts(l: &ChargeLedger, x: usize) -> Counts {
    let i = l.level(x);
    let below = l.nb(x, i - 1);
    let beside = l.nb(x, i);
    Counts {
        below: below.len() as i64,
        below_plus: l.plus(below).len() as i64,
        below_minus_one: l.with_class(below, VertexClass::MinusOne).len() as i64,
        below_minus_two: l.with_class(below, VertexClass::MinusTwo).len() as i64,
        beside: beside.len() as i64,
        beside_one: l.with_class(beside, VertexClass::One).len() as i64,
        beside_two: l.with_class(beside, VertexClass::Two).len() as i64,
    }
}

fn upper_twos(l: &ChargeLedger) -> VertexSet {
    (3..=5)
        .map(|i| l.with_class(l.level_set(i), VertexClass::Two))
        .fold(VertexSet::empty(), VertexSet::union)
}

fn sixths(k: i64) -> Charge {
    Charge::new(k, 6)
}

fn two_vertex_lower_bound(l: &ChargeLedger) -> Check {
    Check::per_vertex(CheckKind::TwoVertexLowerBound, upper_twos(l), "2-class vertices of levels 3..5", |x| {
        let c = counts(l, x);
        let gs = l.charge(Stage::G5, x);
        let g0 = l.charge(Stage::G, x);
        let direct = g0 - &sixths(2 * c.below_minus_two + c.below_minus_one + c.beside_one);
        let closed = sixths(
            4 * c.below + 2 * c.below_plus + c.below_minus_one + 2 * c.beside + c.beside_two - 8,
        );
        if *gs < direct {
            Some(format!("g5 = {gs} < {direct}"))
        } else if *gs < closed {
            Some(format!("g5 = {gs} < {closed}"))
        } else {
            None
        }
    })
}

fn two_vertex_cases(l: &ChargeLedger) -> Check {
    Check::per_vertex(CheckKind::TwoVertexCases, upper_twos(l), "2-class vertices of levels 3..5", |x| {
        let c = counts(l, x);
        let gs = l.charge(Stage::G5, x);
        let (p, m, s) = (c.below_plus, c.below, c.beside);
        let strong = p >= 2
            || (m >= 3 && m + s >= 5)
            || p + m >= 4
            || (p + m == 3 && c.beside_two >= 1)
            || (p + m == 3 && c.below_minus_one + s >= 2);
        let strong_target = sixths(2 * m + s);
        if strong && *gs < strong_target {
            return Some(format!("g5 = {gs} < {strong_target}"));
        }
        let weak = p >= 2
            || (m >= 2 && m + s >= 4)
            || p + m >= 3
            || (p + m == 2 && c.beside_two >= 1)
            || (p + m == 2 && c.below_minus_one + s >= 2)
            || (p + m == 1 && c.below_minus_one + c.beside_two >= 3);
        let weak_target = sixths(m + s);
        (weak && *gs < weak_target).then(|| format!("g5 = {gs} < {weak_target}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_construction, build_g0};

    #[test]
    fn g0_passes_everything() {
        let a = audit(&build_g0()).unwrap();
        assert!(a.passed(), "{}", a.render());
        assert!(a.warnings().is_empty(), "{}", a.render());
        assert_eq!(a.check(CheckKind::FinalBound).unwrap().detail, "e=12 >= 4n/3-2 = 10");
        assert!(matches!(a.branch, AuditBranch::Pipeline(ref rc) if rc.alpha == 6));
    }

    #[test]
    fn dense_graph_short_circuits() {
        let a = audit(&Graph::complete(5)).unwrap();
        assert_eq!(a.branch, AuditBranch::MinDegreeAtLeastThree(4));
        assert_eq!(a.check(CheckKind::MinDegreeBound).unwrap().detail, "delta=4: 10 >= 7.5");
        assert!(a.passed());
        let a = audit(&Graph::complete(3)).unwrap();
        assert_eq!(a.branch, AuditBranch::Complete);
        assert!(a.passed());
    }

    #[test]
    fn half_rendering() {
        assert_eq!(show(&Charge::new(15, 2)), "7.5");
        assert_eq!(show(&Charge::new(34, 3)), "34/3");
        assert_eq!(show(&Charge::int(10)), "10");
    }

    #[test]
    fn rejects_unsaturated() {
        assert!(matches!(audit(&Graph::path(7)), Err(DischargeError::NotSaturated(_))));
    }

    #[test]
    fn constructions_pass() {
        for n in 9..=18 {
            let (g, _) = build_construction(n).unwrap();
            let a = audit(&g).unwrap();
            assert!(a.passed(), "n={n}\n{}", a.render());
        }
    }
}
