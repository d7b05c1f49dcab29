use crate::graph::VertexSet;

use super::charge::Charge;
use super::ledger::{classify, AuxKey, AuxValue, ChargeLedger, Note, Stage, Transfer, VertexClass};
use super::DischargeError;

/// Applies the five stage-one rules, producing `g1..g5`.
pub fn stage_one(ledger: ChargeLedger) -> Result<ChargeLedger, DischargeError> {
    if ledger.has_stage(Stage::G1) {
        return Ok(ledger);
    }
    let mut l = if ledger.is_classified() {
        ledger
    } else {
        classify(ledger)
    };
    let t = first_rule(&mut l);
    l.push_stage(Stage::G1, t);
    let t = pair_rule(&l, Stage::G2);
    l.push_stage(Stage::G2, t);
    let t = fill_from_above(&mut l);
    l.push_stage(Stage::G3, t);
    let t = pair_rule(&l, Stage::G4);
    l.push_stage(Stage::G4, t);
    let t = drain_last_level(&l);
    l.push_stage(Stage::G5, t);
    Ok(l)
}

fn send(stage: Stage, from: usize, to: usize, amount: Charge) -> Transfer {
    Transfer {
        stage,
        from,
        to,
        amount,
    }
}

/// Vertices of `set` whose count of `2`-class neighbours in level `i`
/// satisfies `pred`.
fn by_twos_in(l: &ChargeLedger, set: VertexSet, i: usize, pred: impl Fn(usize) -> bool) -> VertexSet {
    set.iter()
        .filter(|&v| pred(l.with_class(l.nb(v, i), VertexClass::Two).len()))
        .collect()
}

/// `C1(u)` for `u` in level 5: empty unless `d(u) = 3` and `u` has exactly
/// one level-4 neighbour, which is negative; then the `1`-class level-5
/// neighbours `w` whose level-4 neighbourhood lies inside that of the
/// other level-5 neighbour of `u`.
fn gated_set(l: &ChargeLedger, u: usize) -> VertexSet {
    let below = l.nb(u, 4);
    if l.graph().degree(u) != 3 || below.len() != 1 || l.minus(below).len() != 1 {
        return VertexSet::empty();
    }
    let same = l.nb(u, 5);
    l.with_class(same, VertexClass::One)
        .iter()
        .filter(|&w| {
            let nw = l.nb(w, 4);
            same.without(w).iter().any(|w2| nw.is_subset(l.nb(w2, 4)))
        })
        .collect()
}

/// `2`-class vertices pay `1/6` to `1`-class neighbours in their level and
/// `1/6` or `1/3` to negative neighbours one level down; `1`-class vertices
/// of levels 3 and 4 pay `1/6` to negative neighbours below that have no
/// `2`-class neighbour in their level.
fn first_rule(l: &mut ChargeLedger) -> Vec<Transfer> {
    let st = Stage::G1;
    let sixth = Charge::new(1, 6);
    let third = Charge::new(1, 3);
    let mut out = Vec::new();
    let mut aux = Vec::new();
    let mut notes = Vec::new();
    for u in 0..l.graph().order() {
        let i = l.level(u);
        match l.class(u) {
            Some(VertexClass::Two) => {
                let mut ones = l.with_class(l.nb(u, i), VertexClass::One);
                if i >= 3 {
                    let below = l.minus(l.nb(u, i - 1));
                    let a1 = by_twos_in(l, below, i, |c| c >= 2);
                    let b1 = by_twos_in(l, below, i, |c| c == 1);
                    for v in a1 {
                        out.push(send(st, u, v, sixth.clone()));
                    }
                    for v in b1 {
                        out.push(send(st, u, v, third.clone()));
                    }
                    if !a1.is_empty() {
                        aux.push((AuxKey::A1(u), a1));
                    }
                    if !b1.is_empty() {
                        aux.push((AuxKey::B1(u), b1));
                    }
                    if i == 5 {
                        let c1 = gated_set(l, u);
                        if !c1.is_empty() {
                            aux.push((AuxKey::C1(u), c1));
                            notes.push(Note::GatedSetNonEmpty { u, set: c1 });
                            ones = ones.difference(c1);
                        }
                    }
                }
                for w in ones {
                    out.push(send(st, u, w, sixth.clone()));
                }
            }
            Some(VertexClass::One) if (3..=4).contains(&i) => {
                let below = l.minus(l.nb(u, i - 1));
                let a2 = by_twos_in(l, below, i, |c| c == 0);
                for v in a2 {
                    out.push(send(st, u, v, sixth.clone()));
                }
                if !a2.is_empty() {
                    aux.push((AuxKey::A2(u), a2));
                }
            }
            _ => {}
        }
    }
    for (k, s) in aux {
        l.set_aux(k, AuxValue::Set(s));
    }
    l.notes.extend(notes);
    out
}

/// Adjacent `1`-class pairs in level 5: the one whose level-4 neighbour is
/// non-negative pays `1/6` to the one whose level-4 neighbour is negative.
fn pair_rule(l: &ChargeLedger, st: Stage) -> Vec<Transfer> {
    let prev = st.previous().expect("pair rule follows another stage");
    let c = l.stage(prev).expect("previous stage present");
    let ones = l.with_class(l.level_set(5), VertexClass::One);
    let mut used = VertexSet::empty();
    let mut out = Vec::new();
    for w1 in ones {
        for w2 in l.with_class(l.nb(w1, 5), VertexClass::One) {
            if w2 < w1 || used.contains(w1) || used.contains(w2) {
                continue;
            }
            let (Some(y1), Some(y2)) = (l.nb(w1, 4).first(), l.nb(w2, 4).first()) else {
                continue;
            };
            for (a, b, ya, yb) in [(w1, w2, y1, y2), (w2, w1, y2, y1)] {
                if c[ya].is_nonnegative() && c[yb].is_negative() {
                    out.push(send(st, a, b, Charge::new(1, 6)));
                    used.insert(a);
                    used.insert(b);
                    break;
                }
            }
        }
    }
    out
}

/// A negative minus-class vertex of levels 2..4 collects the whole charge
/// of each `1`-class neighbour one level up holding exactly `t`.
fn fill_from_above(l: &mut ChargeLedger) -> Vec<Transfer> {
    let st = Stage::G3;
    let c = l.stage(Stage::G2).expect("g2 present").to_vec();
    let mut out = Vec::new();
    let mut aux = Vec::new();
    for y in 0..l.graph().order() {
        let i = l.level(y);
        if !(2..=4).contains(&i) || !l.class(y).is_some_and(VertexClass::is_minus) || c[y].is_nonnegative() {
            continue;
        }
        let t = if i == 4 { Charge::new(1, 3) } else { Charge::new(1, 6) };
        let a3: VertexSet = l
            .with_class(l.nb(y, i + 1), VertexClass::One)
            .iter()
            .filter(|&z| c[z] == t)
            .collect();
        for z in a3 {
            out.push(send(st, z, y, t.clone()));
        }
        if !a3.is_empty() {
            aux.push((AuxKey::A3(y), a3));
        }
    }
    for (k, s) in aux {
        l.set_aux(k, AuxValue::Set(s));
    }
    out
}

/// A negative minus-class vertex of level 4 collects the whole charge of
/// its `1`-class level-5 neighbours.
fn drain_last_level(l: &ChargeLedger) -> Vec<Transfer> {
    let st = Stage::G5;
    let c = l.stage(Stage::G4).expect("g4 present");
    let mut out = Vec::new();
    for y in l.minus(l.level_set(4)) {
        if c[y].is_nonnegative() {
            continue;
        }
        for z in l.with_class(l.nb(y, 5), VertexClass::One) {
            if !c[z].is_zero() {
                out.push(send(st, z, y, c[z].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_g0;
    use crate::discharging::{choose_root, initial_charge, RootChoice};
    use crate::graph::Graph;

    fn run(g: &Graph, rc: &RootChoice) -> ChargeLedger {
        stage_one(classify(initial_charge(g, rc).unwrap())).unwrap()
    }

    #[test]
    fn g0_has_no_stage_one_transfers() {
        let g = build_g0();
        let l = run(&g, &choose_root(&g).unwrap());
        assert!(l.transfers().is_empty());
        assert_eq!(l.stage(Stage::G5), l.stage(Stage::G));
    }

    #[test]
    fn one_vertices_feed_negative_vertex_below() {
        // path 0-1-2 with a triangle 2 3 4: levels {0,1}, {2}, {3,4}
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let l = run(&g, &RootChoice::at(&g, 0));
        assert_eq!(l.class(2), Some(VertexClass::MinusTwo));
        assert_eq!(l.class(3), Some(VertexClass::One));
        assert_eq!(*l.charge(Stage::G, 2), Charge::new(-1, 3));
        assert_eq!(*l.charge(Stage::G1, 2), Charge::zero());
        assert_eq!(*l.charge(Stage::G1, 3), Charge::zero());
        assert_eq!(l.aux().get(&AuxKey::A2(3)), Some(&AuxValue::Set(VertexSet::singleton(2))));
    }

    #[test]
    fn stage_one_conserves_outside_first_level() {
        let g = build_g0();
        for root in [6, 7, 8, 4, 5] {
            let l = run(&g, &RootChoice::at(&g, root));
            let outer = l.outer();
            assert_eq!(l.total(Stage::G, outer), l.total(Stage::G5, outer));
        }
    }
}
