use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{bfs_levels, Graph, LevelPartition, VertexSet};

use super::charge::Charge;
use super::root::RootChoice;
use super::DischargeError;

/// Deepest level a C6-saturated graph can have from any root.
pub const MAX_LEVEL: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    G,
    G1,
    G2,
    G3,
    G4,
    G5,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
}

impl Stage {
    pub const ALL: [Stage; 13] = [
        Stage::G,
        Stage::G1,
        Stage::G2,
        Stage::G3,
        Stage::G4,
        Stage::G5,
        Stage::F1,
        Stage::F2,
        Stage::F3,
        Stage::F4,
        Stage::F5,
        Stage::F6,
        Stage::F7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::G => "g",
            Stage::G1 => "g1",
            Stage::G2 => "g2",
            Stage::G3 => "g3",
            Stage::G4 => "g4",
            Stage::G5 => "g5",
            Stage::F1 => "f1",
            Stage::F2 => "f2",
            Stage::F3 => "f3",
            Stage::F4 => "f4",
            Stage::F5 => "f5",
            Stage::F6 => "f6",
            Stage::F7 => "f7",
        }
    }

    /// Accepts the stage names plus the aliases `g*` for `g5`.
    pub fn parse(s: &str) -> Option<Stage> {
        let s = s.trim();
        if s == "g*" || s == "gstar" {
            return Some(Stage::G5);
        }
        Stage::ALL.into_iter().find(|st| st.name() == s)
    }

    /// The stage this one is computed from.
    pub fn previous(self) -> Option<Stage> {
        let i = self as usize;
        (i > 0).then(|| Stage::ALL[i - 1])
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class of a vertex of level `i >= 2`, fixed by its initial charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    /// charge -1/3 with at least two `2`-class neighbours one level down
    MinusOne,
    /// charge -1/3 otherwise
    MinusTwo,
    /// charge 1/6
    One,
    /// charge at least 2/3
    Two,
}

impl VertexClass {
    pub fn is_minus(self) -> bool {
        matches!(self, VertexClass::MinusOne | VertexClass::MinusTwo)
    }

    pub fn is_plus(self) -> bool {
        !self.is_minus()
    }

    pub fn tag(self) -> &'static str {
        match self {
            VertexClass::MinusOne => "-1",
            VertexClass::MinusTwo => "-2",
            VertexClass::One => "1",
            VertexClass::Two => "2",
        }
    }
}

/// One unit of charge moved by a rule; the stage is the one it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub stage: Stage,
    pub from: usize,
    pub to: usize,
    pub amount: Charge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxKey {
    /// share of a level-5 vertex per level-4 neighbour
    TStar(usize),
    /// share of a level-4 vertex per level-3 neighbour
    TTwo(usize),
    /// share of a level-3 vertex per level-2 neighbour
    TSix(usize),
    S(usize),
    A(usize),
    A1(usize),
    B1(usize),
    C1(usize),
    A2(usize),
    A3(usize),
    A4(usize),
    L(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxValue {
    Charge(Charge),
    Set(VertexSet),
}

impl fmt::Display for AuxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxValue::Charge(c) => write!(f, "{c}"),
            AuxValue::Set(s) => write!(f, "{s}"),
        }
    }
}

/// Places where a rule's wording admits more than one reading and the
/// adopted reading actually mattered on this graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Note {
    /// The gated set C1(u) was non-empty.
    GatedSetNonEmpty { u: usize, set: VertexSet },
    /// A deficit vertex qualified for funding by more than one neighbour;
    /// the least funder paid.
    SharedDeficit {
        stage: Stage,
        vertex: usize,
        funders: VertexSet,
        paid_by: usize,
    },
    /// A donor's share to a neighbour whose rule condition failed stayed put.
    ShareRetained { stage: Stage, donor: usize, kept_for: usize },
    /// A non-uniform split exception fired.
    SplitException { stage: Stage, vertex: usize, weights: Vec<(usize, Charge)> },
    /// A level-5 vertex had no level-4 neighbour.
    NoLowerNeighbor { vertex: usize },
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::GatedSetNonEmpty { u, set } => write!(f, "C1({u}) = {set} non-empty (gated reading)"),
            Note::SharedDeficit {
                stage,
                vertex,
                funders,
                paid_by,
            } => write!(
                f,
                "{stage}: deficit of {vertex} claimable by {funders}; paid by {paid_by}"
            ),
            Note::ShareRetained { stage, donor, kept_for } => write!(
                f,
                "{stage}: {donor} kept its share for {kept_for} (condition failed there)"
            ),
            Note::SplitException { stage, vertex, weights } => {
                write!(f, "{stage}: split exception at {vertex}:")?;
                for (v, w) in weights {
                    write!(f, " {v}<-{w}")?;
                }
                Ok(())
            }
            Note::NoLowerNeighbor { vertex } => write!(f, "level-5 vertex {vertex} has no level-4 neighbour"),
        }
    }
}

/// A rule took a vertex from non-negative to negative charge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConflict {
    pub stage: Stage,
    pub vertex: usize,
    pub before: Charge,
    pub after: Charge,
}

impl fmt::Display for RuleConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rule producing {} drove vertex {} from {} to {}",
            self.stage, self.vertex, self.before, self.after
        )
    }
}

/// Per-vertex charges at every computed stage, with the level partition,
/// class tags, transfer log and auxiliary quantities behind them.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    pub(crate) graph: Graph,
    pub(crate) root: RootChoice,
    pub(crate) partition: LevelPartition,
    pub(crate) stages: Vec<(Stage, Vec<Charge>)>,
    pub(crate) classes: Vec<Option<VertexClass>>,
    pub(crate) transfers: Vec<Transfer>,
    pub(crate) aux: BTreeMap<AuxKey, AuxValue>,
    pub(crate) notes: Vec<Note>,
    pub(crate) conflicts: Vec<RuleConflict>,
}

impl ChargeLedger {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> &RootChoice {
        &self.root
    }

    pub fn partition(&self) -> &LevelPartition {
        &self.partition
    }

    pub fn stage(&self, stage: Stage) -> Option<&[Charge]> {
        self.stages
            .iter()
            .find(|(s, _)| *s == stage)
            .map(|(_, c)| c.as_slice())
    }

    pub fn has_stage(&self, stage: Stage) -> bool {
        self.stage(stage).is_some()
    }

    pub fn computed_stages(&self) -> Vec<Stage> {
        self.stages.iter().map(|(s, _)| *s).collect()
    }

    pub fn last_stage(&self) -> Stage {
        self.stages.last().expect("stage g always present").0
    }

    /// Charge of `v` at `stage`. Panics if the stage has not been computed.
    pub fn charge(&self, stage: Stage, v: usize) -> &Charge {
        &self.stage(stage).unwrap_or_else(|| panic!("stage {stage} not computed"))[v]
    }

    pub fn class(&self, v: usize) -> Option<VertexClass> {
        self.classes[v]
    }

    pub fn is_classified(&self) -> bool {
        self.classes.iter().any(Option::is_some) || self.partition.depth() == 1
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.transfers
    }

    pub fn aux(&self) -> &BTreeMap<AuxKey, AuxValue> {
        &self.aux
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    pub fn conflicts(&self) -> &[RuleConflict] {
        &self.conflicts
    }

    pub fn level(&self, v: usize) -> usize {
        self.partition.level_of(v)
    }

    pub fn level_set(&self, i: usize) -> VertexSet {
        self.partition.level(i)
    }

    /// Neighbours of `v` in level `i`.
    pub fn nb(&self, v: usize, i: usize) -> VertexSet {
        self.partition.nbrs_in(&self.graph, v, i)
    }

    pub fn n(&self, v: usize, i: usize) -> usize {
        self.nb(v, i).len()
    }

    /// Vertices of `set` carrying class `c`.
    pub fn with_class(&self, set: VertexSet, c: VertexClass) -> VertexSet {
        set.iter().filter(|&v| self.classes[v] == Some(c)).collect()
    }

    /// Vertices of `set` in a minus class (initial charge -1/3).
    pub fn minus(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .filter(|&v| self.classes[v].is_some_and(VertexClass::is_minus))
            .collect()
    }

    pub fn plus(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .filter(|&v| self.classes[v].is_some_and(VertexClass::is_plus))
            .collect()
    }

    /// Vertices of `set` with negative charge at `stage`.
    pub fn negative_at(&self, set: VertexSet, stage: Stage) -> VertexSet {
        let c = self.stage(stage).expect("stage computed");
        set.iter().filter(|&v| c[v].is_negative()).collect()
    }

    pub fn nonnegative_at(&self, set: VertexSet, stage: Stage) -> VertexSet {
        set.difference(self.negative_at(set, stage))
    }

    /// Sum of charges at `stage` over `set`.
    pub fn total(&self, stage: Stage, set: VertexSet) -> Charge {
        let c = self.stage(stage).expect("stage computed");
        set.iter().map(|v| &c[v]).sum()
    }

    /// Vertices outside the first level.
    pub fn outer(&self) -> VertexSet {
        self.graph.vertices().difference(self.level_set(1))
    }

    pub(crate) fn set_aux(&mut self, key: AuxKey, value: AuxValue) {
        self.aux.insert(key, value);
    }

    /// Applies the transfers of one rule to the latest stage, producing
    /// `stage`. All amounts are computed beforehand from the previous stage.
    pub(crate) fn push_stage(&mut self, stage: Stage, transfers: Vec<Transfer>) {
        let (prev_stage, prev) = self.stages.last().expect("stage g present").clone();
        debug_assert_eq!(stage.previous(), Some(prev_stage));
        let mut next = prev.clone();
        for t in &transfers {
            debug_assert_eq!(t.stage, stage);
            next[t.from] -= &t.amount;
            next[t.to] += &t.amount;
        }
        for v in 0..next.len() {
            if prev[v].is_nonnegative() && next[v].is_negative() {
                self.conflicts.push(RuleConflict {
                    stage,
                    vertex: v,
                    before: prev[v].clone(),
                    after: next[v].clone(),
                });
            }
        }
        self.transfers.extend(transfers);
        self.stages.push((stage, next));
    }

    /// Change in total charge over all vertices made by the rule producing
    /// `stage`; zero when the rule only moves charge around.
    pub fn rule_imbalance(&self, stage: Stage) -> Option<Charge> {
        let prev = stage.previous()?;
        let all = self.graph.vertices();
        Some(self.total(stage, all) - self.total(prev, all))
    }

    /// Tab-separated rows `stage vertex level class value` for the
    /// requested stages (all computed stages when `stages` is empty).
    pub fn dump(&self, stages: &[Stage]) -> String {
        let wanted: Vec<Stage> = if stages.is_empty() {
            self.computed_stages()
        } else {
            stages.to_vec()
        };
        let mut out = String::from("stage\tvertex\tlevel\tclass\tcharge\n");
        for st in wanted {
            let Some(c) = self.stage(st) else { continue };
            for (v, value) in c.iter().enumerate() {
                let class = self.classes[v].map_or("-", VertexClass::tag);
                out.push_str(&format!("{st}\t{v}\t{}\t{class}\t{value}\n", self.level(v)));
            }
        }
        out
    }
}

/// Initial charge: `n_1(x)/2 - 4/3` on the first level and
/// `n_{i-1}(x) + n_i(x)/2 - 4/3` on level `i >= 2`.
pub fn initial_charge(g: &Graph, rc: &RootChoice) -> Result<ChargeLedger, DischargeError> {
    let partition = bfs_levels(g, rc.alpha, MAX_LEVEL)?;
    let charges: Vec<Charge> = (0..g.order())
        .map(|x| {
            let i = partition.level_of(x);
            let same = partition.n_in(g, x, i) as i64;
            let below = if i >= 2 { partition.n_in(g, x, i - 1) as i64 } else { 0 };
            Charge::new(6 * below + 3 * same - 8, 6)
        })
        .collect();
    let aux = (0..g.order())
        .filter(|&v| g.degree(v) > 0)
        .filter_map(|v| {
            let leaves: VertexSet = g.neighbors(v).iter().filter(|&u| g.degree(u) == 1).collect();
            (!leaves.is_empty()).then_some((AuxKey::L(v), AuxValue::Set(leaves)))
        })
        .collect();
    Ok(ChargeLedger {
        graph: g.clone(),
        root: rc.clone(),
        partition,
        stages: vec![(Stage::G, charges)],
        classes: vec![None; g.order()],
        transfers: Vec::new(),
        aux,
        notes: Vec::new(),
        conflicts: Vec::new(),
    })
}

/// Tags every vertex outside the first level with its class.
pub fn classify(mut ledger: ChargeLedger) -> ChargeLedger {
    let minus_third = Charge::new(-1, 3);
    let sixth = Charge::new(1, 6);
    let two_thirds = Charge::new(2, 3);
    let g0 = ledger.stage(Stage::G).expect("stage g").to_vec();
    let n = ledger.graph.order();
    let mut classes = vec![None; n];
    // plus classes first: the minus split depends on them
    for v in 0..n {
        if ledger.level(v) < 2 {
            continue;
        }
        if g0[v] == sixth {
            classes[v] = Some(VertexClass::One);
        } else if g0[v] >= two_thirds {
            classes[v] = Some(VertexClass::Two);
        } else {
            debug_assert_eq!(g0[v], minus_third, "initial charge of {v} outside the three cases");
        }
    }
    for v in 0..n {
        let i = ledger.level(v);
        if i < 2 || classes[v].is_some() {
            continue;
        }
        let twos_above = ledger
            .nb(v, i + 1)
            .iter()
            .filter(|&u| classes[u] == Some(VertexClass::Two))
            .count();
        classes[v] = Some(if twos_above >= 2 {
            VertexClass::MinusOne
        } else {
            VertexClass::MinusTwo
        });
    }
    ledger.classes = classes;
    ledger
}
