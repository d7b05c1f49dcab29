use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::saturation::{good_roots, theta_classes, ThetaClass};

use super::DischargeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootRule {
    /// Degree-1 root whose neighbour lies in the fewest 4-cycles.
    FewestFourCyclesAtNeighbor { four_cycles: usize },
    /// Good degree-2 root of smallest theta index.
    GoodRootMinTheta(ThetaClass),
    /// Caller-supplied root.
    Manual,
}

impl fmt::Display for RootRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootRule::FewestFourCyclesAtNeighbor { four_cycles } => {
                write!(f, "min-4-cycles-at-neighbour ({four_cycles})")
            }
            RootRule::GoodRootMinTheta(c) => write!(f, "good-root theta{}", c.index()),
            RootRule::Manual => write!(f, "manual"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootChoice {
    pub alpha: usize,
    pub closed_nbhd: VertexSet,
    pub delta: usize,
    pub rule: RootRule,
}

impl RootChoice {
    /// Uses `alpha` as the root without applying any selection rule.
    pub fn at(g: &Graph, alpha: usize) -> Self {
        RootChoice {
            alpha,
            closed_nbhd: g.closed_neighbors(alpha),
            delta: g.min_degree(),
            rule: RootRule::Manual,
        }
    }
}

/// Number of distinct 4-cycles through `w`.
pub fn four_cycles_through(g: &Graph, w: usize) -> usize {
    let nbrs: Vec<usize> = g.neighbors(w).iter().collect();
    let mut count = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            count += g.neighbors(a).intersection(g.neighbors(b)).without(w).len();
        }
    }
    count
}

/// Picks the root of the level partition. Ties go to the least vertex id.
pub fn choose_root(g: &Graph) -> Result<RootChoice, DischargeError> {
    let delta = g.min_degree();
    match delta {
        0 => Err(DischargeError::IsolatedVertex),
        1 => {
            let (alpha, four_cycles) = (0..g.order())
                .filter(|&v| g.degree(v) == 1)
                .map(|v| {
                    let a1 = g.neighbors(v).first().expect("degree one");
                    (v, four_cycles_through(g, a1))
                })
                .min_by_key(|&(v, c)| (c, v))
                .expect("some vertex has minimum degree");
            Ok(RootChoice {
                alpha,
                closed_nbhd: g.closed_neighbors(alpha),
                delta,
                rule: RootRule::FewestFourCyclesAtNeighbor { four_cycles },
            })
        }
        2 => {
            let good = good_roots(g);
            if good.is_empty() {
                return Err(DischargeError::NoGoodRoot);
            }
            let theta = theta_classes(g);
            let (class, alpha) = good
                .iter()
                .map(|v| (theta.class_of(v).expect("good roots have degree two"), v))
                .min()
                .expect("non-empty");
            Ok(RootChoice {
                alpha,
                closed_nbhd: g.closed_neighbors(alpha),
                delta,
                rule: RootRule::GoodRootMinTheta(class),
            })
        }
        d => Err(DischargeError::DeltaTooLarge(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_g0;

    #[test]
    fn star_root_is_least_leaf() {
        let rc = choose_root(&Graph::star(5)).unwrap();
        assert_eq!(rc.alpha, 1);
        assert_eq!(rc.delta, 1);
        assert_eq!(rc.closed_nbhd, [0, 1].into_iter().collect());
        assert_eq!(rc.rule, RootRule::FewestFourCyclesAtNeighbor { four_cycles: 0 });
    }

    #[test]
    fn dense_graphs_rejected() {
        assert_eq!(choose_root(&Graph::complete(4)), Err(DischargeError::DeltaTooLarge(3)));
        assert_eq!(choose_root(&Graph::complete(3)), Err(DischargeError::NoGoodRoot));
        assert_eq!(choose_root(&Graph::new(2)), Err(DischargeError::IsolatedVertex));
    }

    #[test]
    fn g0_root_is_first_theta_two_vertex() {
        // good roots: y3, y4 (theta5) and a0, b0, c0 (theta2)
        let rc = choose_root(&build_g0()).unwrap();
        assert_eq!(rc.alpha, 6);
        assert_eq!(rc.rule, RootRule::GoodRootMinTheta(ThetaClass::Two));
    }

    #[test]
    fn four_cycle_count() {
        assert_eq!(four_cycles_through(&Graph::cycle(4), 0), 1);
        assert_eq!(four_cycles_through(&Graph::complete(4), 0), 3);
        assert_eq!(four_cycles_through(&Graph::cycle(5), 0), 0);
    }
}
