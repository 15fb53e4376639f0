//! The tree of infinitely near singular points.
//!
//! For a rational singularity, the singular points of the first blow-up are
//! in bijection with the connected components of the curves E_i with
//! Z·E_i = 0, and each component is the minimal resolution graph of its
//! point (Tyurina). Recursing on the components gives every infinitely near
//! singular point; rational double points are counted but not kept.

use thiserror::Error;

use crate::resgraph::{
    fundamental_cycle, is_reduced, pa_cycle, Cycle, GraphError, ResolutionGraph,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("graph is not rational: p_a(Z) = {0}")]
    NotRational(i64),
    #[error("multiplicity {0} is below 3")]
    LowMultiplicity(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The connected components of the full subgraph on {E_i : Z·E_i = 0},
/// ordered by their smallest vertex id.
pub fn blowup_components(
    g: &ResolutionGraph,
    z: &Cycle,
) -> Result<Vec<ResolutionGraph>, GraphError> {
    let keep: Vec<bool> = (0..g.len()).map(|i| g.pairing(z, i) == 0).collect();
    let mut comps = g
        .components(&keep)
        .iter()
        .map(|c| g.induced_subgraph(c))
        .collect::<Result<Vec<_>, _>>()?;
    comps.sort_by(|a, b| min_id(a).cmp(min_id(b)));
    Ok(comps)
}

fn min_id(g: &ResolutionGraph) -> &str {
    g.vertices()
        .iter()
        .map(|v| v.id.as_str())
        .min()
        .expect("graphs are nonempty")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTree {
    pub graph: ResolutionGraph,
    pub cycle: Cycle,
    pub mult: u64,
    pub reduced: bool,
    pub children: Vec<MultiplicityTree>,
    /// Components of multiplicity 2 found on the blow-up of this point.
    pub dropped_rdp_count: usize,
}

struct Analyzed {
    cycle: Cycle,
    mult: u64,
}

fn analyze_point(g: &ResolutionGraph) -> Result<Analyzed, BlowupError> {
    let cycle = fundamental_cycle(g);
    let pa = pa_cycle(g, &cycle);
    if pa != 0 {
        return Err(BlowupError::NotRational(pa));
    }
    let mult = (-g.self_intersection(&cycle)) as u64;
    Ok(Analyzed { cycle, mult })
}

/// Builds the tree rooted at the singularity with graph `g`, which must be
/// rational of multiplicity at least 3.
pub fn multiplicity_tree(g: &ResolutionGraph) -> Result<MultiplicityTree, BlowupError> {
    let root = analyze_point(g)?;
    if root.mult < 3 {
        return Err(BlowupError::LowMultiplicity(root.mult));
    }
    grow(g.clone(), root)
}

fn grow(graph: ResolutionGraph, point: Analyzed) -> Result<MultiplicityTree, BlowupError> {
    let mut children = Vec::new();
    let mut dropped = 0;
    for comp in blowup_components(&graph, &point.cycle)? {
        debug_assert!(comp.len() < graph.len());
        let sub = analyze_point(&comp)?;
        if sub.mult <= 2 {
            dropped += 1;
        } else {
            children.push(grow(comp, sub)?);
        }
    }
    Ok(MultiplicityTree {
        reduced: is_reduced(&point.cycle),
        graph,
        cycle: point.cycle,
        mult: point.mult,
        children,
        dropped_rdp_count: dropped,
    })
}

impl MultiplicityTree {
    /// All nodes, parents before children.
    pub fn nodes(&self) -> Vec<&MultiplicityTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(node.children.iter());
            i += 1;
        }
        out
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.nodes().iter().map(|n| n.mult).collect()
    }

    pub fn all_reduced(&self) -> bool {
        self.reduced && self.children.iter().all(|c| c.all_reduced())
    }

    pub fn total_dropped_rdps(&self) -> usize {
        self.dropped_rdp_count
            + self
                .children
                .iter()
                .map(|c| c.total_dropped_rdps())
                .sum::<usize>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resgraph::{is_negative_definite, is_rational};

    fn star(center: i64, leaves: &[i64]) -> ResolutionGraph {
        let mut bs = vec![center];
        bs.extend_from_slice(leaves);
        let edges: Vec<(usize, usize)> = (1..=leaves.len()).map(|i| (0, i)).collect();
        ResolutionGraph::from_weights(&bs, &edges).unwrap()
    }

    fn chain(bs: &[i64]) -> ResolutionGraph {
        let edges: Vec<(usize, usize)> = (1..bs.len()).map(|i| (i - 1, i)).collect();
        ResolutionGraph::from_weights(bs, &edges).unwrap()
    }

    fn weights(g: &ResolutionGraph) -> Vec<i64> {
        g.vertices().iter().map(|v| v.b).collect()
    }

    #[test]
    fn component_examples() {
        let cone = ResolutionGraph::from_weights(&[5], &[]).unwrap();
        assert!(blowup_components(&cone, &fundamental_cycle(&cone))
            .unwrap()
            .is_empty());

        let s = star(3, &[3, 3, 3]);
        let comps = blowup_components(&s, &fundamental_cycle(&s)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(weights(&comps[0]), vec![3]);

        let c = chain(&[3, 2, 3]);
        let comps = blowup_components(&c, &fundamental_cycle(&c)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(weights(&comps[0]), vec![2]);
    }

    #[test]
    fn tree_examples() {
        for d in 3..10 {
            let t = multiplicity_tree(&ResolutionGraph::from_weights(&[d], &[]).unwrap()).unwrap();
            assert_eq!((t.node_count(), t.mult, t.reduced), (1, d as u64, true));
        }

        let t = multiplicity_tree(&star(3, &[3, 3, 3])).unwrap();
        assert_eq!(t.mult, 6);
        assert_eq!(t.children.len(), 1);
        assert_eq!(t.children[0].mult, 3);
        assert!(t.all_reduced());
        assert_eq!(t.total_dropped_rdps(), 0);

        let t = multiplicity_tree(&chain(&[3, 2, 3])).unwrap();
        assert_eq!((t.mult, t.children.len(), t.dropped_rdp_count), (4, 0, 1));
    }

    #[test]
    fn tree_rejections() {
        assert_eq!(
            multiplicity_tree(&star(2, &[2, 2, 2])),
            Err(BlowupError::LowMultiplicity(2))
        );
        assert_eq!(
            multiplicity_tree(&star(2, &[3, 3, 3, 3])),
            Err(BlowupError::NotRational(1))
        );
    }

    #[test]
    fn deeper_tree() {
        // star(3; 3,3,3) with two extra b=3 leaves on each arm: Z is
        // reduced, the inner star pairs to zero and blows down to 6 → 3.
        let g = ResolutionGraph::from_weights(
            &[3; 10],
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 8),
                (3, 9),
            ],
        )
        .unwrap();
        let t = multiplicity_tree(&g).unwrap();
        assert_eq!(t.multiplicities(), vec![12, 6, 3]);
        for node in t.nodes() {
            assert!(node.mult >= 3);
            assert!(is_rational(&node.graph));
            assert!(is_negative_definite(&node.graph.intersection_matrix()).unwrap());
            for c in &node.children {
                assert!(c.graph.len() < node.graph.len());
            }
        }
    }

    #[test]
    fn children_are_ordered_by_smallest_id() {
        // Three b=k vertices around a (-2) center, each carrying k−2 leaves.
        let k = 4;
        let mut bs = vec![2, k, k, k];
        let mut edges = vec![(0, 1), (0, 2), (0, 3)];
        for arm in 1..=3 {
            for _ in 0..k - 2 {
                bs.push(2);
                edges.push((arm, bs.len() - 1));
            }
        }
        let g = ResolutionGraph::from_weights(&bs, &edges).unwrap();
        let t = multiplicity_tree(&g).unwrap();
        let ids: Vec<&str> = t.children.iter().map(|c| c.graph.id(0)).collect();
        assert_eq!(ids, vec!["E2", "E3", "E4"]);
        assert_eq!(t.multiplicities(), vec![8, 4, 4, 4]);
        assert!(!t.reduced);
    }
}
