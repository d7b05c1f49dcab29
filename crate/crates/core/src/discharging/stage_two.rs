use std::collections::BTreeMap;

use crate::graph::VertexSet;

use super::charge::Charge;
use super::ledger::{AuxKey, AuxValue, ChargeLedger, Note, Stage, Transfer, VertexClass};
use super::stage_one::stage_one;
use super::DischargeError;

/// Applies the seven stage-two rules, producing `f1..f7`. Runs stage one
/// first if needed.
pub fn stage_two(ledger: ChargeLedger) -> Result<ChargeLedger, DischargeError> {
    if ledger.has_stage(Stage::F1) {
        return Ok(ledger);
    }
    let mut l = stage_one(ledger)?;
    let t = average_down(&mut l);
    l.push_stage(Stage::F1, t);
    let t = help_level_four(&l);
    l.push_stage(Stage::F2, t);
    let t = average_to_level_three(&mut l);
    l.push_stage(Stage::F3, t);
    let t = cover_level_four(&mut l, Stage::F4);
    l.push_stage(Stage::F4, t);
    let t = cover_level_four(&mut l, Stage::F5);
    l.push_stage(Stage::F5, t);
    let t = pair_level_three(&l);
    l.push_stage(Stage::F6, t);
    let t = settle_level_two(&mut l);
    l.push_stage(Stage::F7, t);
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

/// Number of minus-class level-5 neighbours.
fn n5_minus(l: &ChargeLedger, z: usize) -> usize {
    l.minus(l.nb(z, 5)).len()
}

fn has_leaf(l: &ChargeLedger, y: usize) -> bool {
    l.aux().contains_key(&AuxKey::L(y))
}

/// Resolves deficit claims `(funder, vertex, amount)` so that each vertex
/// is covered once, by its least claimant.
fn settle_claims(l: &mut ChargeLedger, st: Stage, claims: Vec<(usize, usize, Charge)>) -> Vec<Transfer> {
    let mut by_vertex: BTreeMap<usize, (usize, Charge, VertexSet)> = BTreeMap::new();
    for (f, z, amount) in claims {
        by_vertex
            .entry(z)
            .and_modify(|e| e.2.insert(f))
            .or_insert((f, amount, VertexSet::singleton(f)));
    }
    let mut out = Vec::new();
    for (z, (f, amount, funders)) in by_vertex {
        if funders.len() > 1 {
            l.notes.push(Note::SharedDeficit {
                stage: st,
                vertex: z,
                funders,
                paid_by: f,
            });
        }
        out.push(send(st, f, z, amount));
    }
    out
}

/// Non-uniform splits for a level-5 vertex, as `(neighbour, fraction)`.
fn split_exception(l: &ChargeLedger, w: usize) -> Option<Vec<(usize, Charge)>> {
    if l.graph().degree(w) != 3 {
        return None;
    }
    let below = l.nb(w, 4);
    if l.minus(below) != below {
        return None;
    }
    let same = l.nb(w, 5);
    if below.len() == 2 && same.len() == 1 {
        let w1 = same.first().expect("one neighbour");
        let ones_w1 = l.with_class(l.nb(w1, 5), VertexClass::One);
        let zs: Vec<usize> = below.iter().collect();
        for (z1, z2) in [(zs[0], zs[1]), (zs[1], zs[0])] {
            let shared = ones_w1.intersection(l.with_class(l.nb(z2, 5), VertexClass::One)).without(w);
            if n5_minus(l, z1) != 0 && !shared.is_empty() {
                return Some(vec![(z1, Charge::new(2, 3)), (z2, Charge::new(1, 3))]);
            }
        }
    }
    if below.len() == 3 {
        let heavy: Vec<usize> = below.iter().filter(|&z| n5_minus(l, z) != 0).collect();
        if let [z1] = heavy[..] {
            let rest: Vec<usize> = below.without(z1).iter().collect();
            let (z2, z3) = (rest[0], rest[1]);
            if l.nb(z2, 3) == l.nb(z3, 3) {
                return Some(vec![
                    (z1, Charge::new(1, 2)),
                    (z2, Charge::new(1, 4)),
                    (z3, Charge::new(1, 4)),
                ]);
            }
        }
    }
    None
}

/// Every level-5 vertex hands its whole charge to its level-4 neighbours,
/// evenly unless a split exception applies.
fn average_down(l: &mut ChargeLedger) -> Vec<Transfer> {
    let st = Stage::F1;
    let c = l.stage(Stage::G5).expect("g5 present").to_vec();
    for i in 3..=5 {
        for v in l.level_set(i) {
            let d = l.n(v, i - 1);
            if d > 0 {
                l.set_aux(AuxKey::TStar(v), AuxValue::Charge(&c[v] / d as i64));
            }
        }
    }
    let mut out = Vec::new();
    for w in l.level_set(5) {
        let below = l.nb(w, 4);
        if below.is_empty() {
            l.notes.push(Note::NoLowerNeighbor { vertex: w });
            continue;
        }
        let weights = match split_exception(l, w) {
            Some(ws) => {
                l.notes.push(Note::SplitException {
                    stage: st,
                    vertex: w,
                    weights: ws.clone(),
                });
                ws
            }
            None => {
                let share = Charge::new(1, below.len() as i64);
                below.iter().map(|z| (z, share.clone())).collect()
            }
        };
        for (z, frac) in weights {
            let amount = &c[w] * &frac;
            if !amount.is_zero() {
                out.push(send(st, w, z, amount));
            }
        }
    }
    out
}

/// Level-4 vertices with enough charge pay `1/6` to each negative level-4
/// neighbour; adjacent `1`-class pairs then balance a zero vertex above a
/// negative one.
fn help_level_four(l: &ChargeLedger) -> Vec<Transfer> {
    let st = Stage::F2;
    let c = l.stage(Stage::F1).expect("f1 present");
    let sixth = Charge::new(1, 6);
    let third = Charge::new(1, 3);
    let mut out = Vec::new();
    for z in l.level_set(4) {
        let neg = l.negative_at(l.nb(z, 4), Stage::F1);
        if !neg.is_empty() && c[z] >= &sixth * neg.len() as i64 {
            for z2 in neg {
                out.push(send(st, z, z2, sixth.clone()));
            }
        }
    }
    let ones = l.with_class(l.level_set(4), VertexClass::One);
    let mut used = VertexSet::empty();
    for z1 in ones {
        for z2 in l.with_class(l.nb(z1, 4), VertexClass::One) {
            if z2 < z1 || used.contains(z1) || used.contains(z2) {
                continue;
            }
            let (Some(y1), Some(y2)) = (l.nb(z1, 3).first(), l.nb(z2, 3).first()) else {
                continue;
            };
            // (receiver, its level-3 neighbour, donor, donor's level-3 neighbour)
            for (zj, yj, zo, yo) in [(z1, y1, z2, y2), (z2, y2, z1, y1)] {
                let donor_ok = (c[zo] >= third && c[yo].is_negative())
                    || (c[zo] >= sixth && c[yo].is_nonnegative());
                if c[zj].is_zero() && c[yj].is_negative() && donor_ok {
                    out.push(send(st, zo, zj, sixth.clone()));
                    used.insert(z1);
                    used.insert(z2);
                    break;
                }
            }
        }
    }
    out
}

/// Non-negative level-4 vertices hand their whole charge to their level-3
/// neighbours, evenly unless the leaf exception applies.
fn average_to_level_three(l: &mut ChargeLedger) -> Vec<Transfer> {
    let st = Stage::F3;
    let c = l.stage(Stage::F2).expect("f2 present").to_vec();
    let mut out = Vec::new();
    for z in l.level_set(4) {
        if c[z].is_negative() {
            continue;
        }
        let ys = l.nb(z, 3);
        l.set_aux(AuxKey::TTwo(z), AuxValue::Charge(&c[z] / ys.len() as i64));
        let with_leaf: Vec<usize> = ys.iter().filter(|&y| has_leaf(l, y)).collect();
        let weights: Vec<(usize, Charge)> =
            if ys.len() == 3 && l.n(z, 4) <= 1 && n5_minus(l, z) == 0 && with_leaf.len() == 1 {
                let y1 = with_leaf[0];
                let ws: Vec<(usize, Charge)> = ys
                    .iter()
                    .map(|y| (y, if y == y1 { Charge::new(1, 2) } else { Charge::new(1, 4) }))
                    .collect();
                l.notes.push(Note::SplitException {
                    stage: st,
                    vertex: z,
                    weights: ws.clone(),
                });
                ws
            } else {
                let share = Charge::new(1, ys.len() as i64);
                ys.iter().map(|y| (y, share.clone())).collect()
            };
        for (y, frac) in weights {
            let amount = &c[z] * &frac;
            if !amount.is_zero() {
                out.push(send(st, z, y, amount));
            }
        }
    }
    out
}

/// Level-3 vertices that can afford it cover the deficits of their negative
/// level-4 neighbours. At `f4` they also pay `1/6` to level-3 neighbours
/// that cannot cover their own.
fn cover_level_four(l: &mut ChargeLedger, st: Stage) -> Vec<Transfer> {
    let prev = st.previous().expect("follows another stage");
    let c = l.stage(prev).expect("previous stage present").to_vec();
    let level3 = l.level_set(3);
    let deficit = |l: &ChargeLedger, y: usize| -> (VertexSet, Charge) {
        let negs = l.negative_at(l.nb(y, 4), prev);
        let s = negs.iter().map(|z| -&c[z]).sum();
        (negs, s)
    };
    let s_of: BTreeMap<usize, (VertexSet, Charge)> = level3.iter().map(|y| (y, deficit(l, y))).collect();
    let mut claims = Vec::new();
    let mut gifts = Vec::new();
    let sixth = Charge::new(1, 6);
    for y in level3 {
        let (negs, s) = &s_of[&y];
        let short: VertexSet = if st == Stage::F4 {
            l.nb(y, 3)
                .iter()
                .filter(|&y1| (&c[y1] - &s_of[&y1].1).is_negative())
                .collect()
        } else {
            VertexSet::empty()
        };
        if st == Stage::F4 {
            l.set_aux(AuxKey::S(y), AuxValue::Charge(s.clone()));
            if !short.is_empty() {
                l.set_aux(AuxKey::A(y), AuxValue::Set(short));
            }
        }
        let with_gifts = s + &(&sixth * short.len() as i64);
        if c[y] >= with_gifts {
            for y1 in short {
                gifts.push(send(st, y, y1, sixth.clone()));
            }
        }
        if c[y] >= *s {
            for z in *negs {
                claims.push((y, z, -&c[z]));
            }
        }
    }
    let mut out = settle_claims(l, st, claims);
    out.extend(gifts);
    out
}

/// Adjacent `1`-class level-3 pairs: a vertex with spare `1/6` whose
/// level-2 neighbour is non-negative pays a zero partner whose level-2
/// neighbour is negative.
fn pair_level_three(l: &ChargeLedger) -> Vec<Transfer> {
    let st = Stage::F6;
    let c = l.stage(Stage::F5).expect("f5 present");
    let sixth = Charge::new(1, 6);
    let ones = l.with_class(l.level_set(3), VertexClass::One);
    let mut used = VertexSet::empty();
    let mut out = Vec::new();
    for y1 in ones {
        for y2 in l.with_class(l.nb(y1, 3), VertexClass::One) {
            if y2 < y1 || used.contains(y1) || used.contains(y2) {
                continue;
            }
            let (Some(x1), Some(x2)) = (l.nb(y1, 2).first(), l.nb(y2, 2).first()) else {
                continue;
            };
            for (a, b, xa, xb) in [(y1, y2, x1, x2), (y2, y1, x2, x1)] {
                if c[xa].is_nonnegative() && c[xb].is_negative() && c[a] >= sixth && c[b].is_zero() {
                    out.push(send(st, a, b, sixth.clone()));
                    used.insert(a);
                    used.insert(b);
                    break;
                }
            }
        }
    }
    out
}

/// Each level-2 vertex that can balance the books collects the shares of
/// its non-negative level-3 neighbours and covers the negative vertices
/// among its level-3 neighbours and their level-4 neighbours.
fn settle_level_two(l: &mut ChargeLedger) -> Vec<Transfer> {
    let st = Stage::F7;
    let c = l.stage(Stage::F6).expect("f6 present").to_vec();
    for y in l.level_set(3) {
        let d = l.n(y, 2);
        l.set_aux(AuxKey::TSix(y), AuxValue::Charge(&c[y] / d as i64));
    }
    let mut shares = Vec::new();
    let mut claims = Vec::new();
    for x in l.level_set(2) {
        let ys = l.nb(x, 3);
        let pos_set = l.nonnegative_at(ys, Stage::F6);
        let pos: Charge = pos_set.iter().map(|y| &c[y] / l.n(y, 2) as i64).sum();
        let below: VertexSet = ys.iter().fold(VertexSet::empty(), |acc, y| acc.union(l.nb(y, 4)));
        let a4 = l.negative_at(below, Stage::F6);
        if !a4.is_empty() {
            l.set_aux(AuxKey::A4(x), AuxValue::Set(a4));
        }
        let neg_set = a4.union(l.negative_at(ys, Stage::F6));
        let neg: Charge = neg_set.iter().map(|y| -&c[y]).sum();
        if &c[x] + &pos >= neg {
            for y in pos_set {
                let amount = &c[y] / l.n(y, 2) as i64;
                if !amount.is_zero() {
                    shares.push(send(st, y, x, amount));
                }
            }
            for y in neg_set {
                claims.push((x, y, -&c[y]));
            }
        } else {
            for y in pos_set {
                if !c[y].is_zero() {
                    l.notes.push(Note::ShareRetained {
                        stage: st,
                        donor: y,
                        kept_for: x,
                    });
                }
            }
        }
    }
    let mut out = shares;
    out.extend(settle_claims(l, st, claims));
    out
}
