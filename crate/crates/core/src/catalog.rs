//! Named resolution graphs used as fixtures by the tests, the self-test and
//! the CLI.

use crate::resgraph::{ResolutionGraph, Vertex};

fn build(bs: &[i64], edges: &[(usize, usize)]) -> ResolutionGraph {
    ResolutionGraph::from_weights(bs, edges).expect("catalog graphs are valid")
}

fn star(center: i64, leaves: &[i64]) -> ResolutionGraph {
    let mut bs = vec![center];
    bs.extend_from_slice(leaves);
    let edges: Vec<(usize, usize)> = (1..=leaves.len()).map(|i| (0, i)).collect();
    build(&bs, &edges)
}

/// A single curve with self-intersection −d: the cone over the rational
/// normal curve of degree d.
pub fn cone(d: i64) -> ResolutionGraph {
    build(&[d], &[])
}

/// Chain with weights (b_1, …, b_r).
pub fn chain(bs: &[i64]) -> ResolutionGraph {
    let edges: Vec<(usize, usize)> = (1..bs.len()).map(|i| (i - 1, i)).collect();
    build(bs, &edges)
}

/// Center b=3 with three b=3 leaves. Multiplicity 6, one point of
/// multiplicity 3 on the blow-up.
pub fn star_with_three_cubics() -> ResolutionGraph {
    star(3, &[3, 3, 3])
}

/// Chain (3,2,3). Multiplicity 4, an A_1 on the blow-up.
pub fn chain_323() -> ResolutionGraph {
    chain(&[3, 2, 3])
}

pub fn d4() -> ResolutionGraph {
    star(2, &[2, 2, 2])
}

/// Center b=2 with four b=3 leaves: negative definite, but p_a(Z) = 1.
pub fn four_cubic_star() -> ResolutionGraph {
    star(2, &[3, 3, 3, 3])
}

/// Center b=2 with four b=2 leaves (the affine D̃_4 diagram). Its form is
/// only semidefinite, so this is not a valid graph.
pub fn four_leaf_rdp_star_json() -> String {
    r#"{"vertices": [{"id": "C", "b": 2}, {"id": "L1", "b": 2}, {"id": "L2", "b": 2},
  {"id": "L3", "b": 2}, {"id": "L4", "b": 2}],
 "edges": [["C", "L1"], ["C", "L2"], ["C", "L3"], ["C", "L4"]]}"#
        .to_string()
}

/// A (−2)-curve meeting three (−k)-curves, each of which carries k−2
/// further (−2)-curves as leaves. Multiplicity 3k−4; the fundamental cycle
/// is 2 on the central curve and 1 elsewhere, and the first blow-up has
/// three points of multiplicity k. For k = 2 this is D_4.
pub fn three_arm_family(k: i64) -> ResolutionGraph {
    assert!(k >= 2, "family starts at k = 2");
    let mut bs = vec![2, k, k, k];
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    for arm in 1..=3 {
        for _ in 0..k - 2 {
            bs.push(2);
            edges.push((arm, bs.len() - 1));
        }
    }
    build(&bs, &edges)
}

/// Ten b=3 curves: star(3; 3,3,3) with two more leaves on each arm.
/// Multiplicities 12 → 6 → 3.
pub fn two_step_tower() -> ResolutionGraph {
    build(
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
}

/// Rational graphs of multiplicity at least 3 used across the test suites.
pub fn rational_fixtures() -> Vec<ResolutionGraph> {
    let mut out: Vec<ResolutionGraph> = (3..=8).map(cone).collect();
    out.push(star_with_three_cubics());
    out.push(chain_323());
    out.push(three_arm_family(3));
    out.push(three_arm_family(4));
    out.push(three_arm_family(5));
    out.push(two_step_tower());
    out.push(chain(&[4, 2, 2, 5]));
    out.push(chain(&[3, 3, 3, 3]));
    out
}

/// The same graph with vertex order reversed and fresh ids.
pub fn relabel_reversed(g: &ResolutionGraph) -> ResolutionGraph {
    let n = g.len();
    let name = |i: usize| format!("v{}", n - 1 - i);
    let vertices = (0..n)
        .rev()
        .map(|i| Vertex {
            id: name(i),
            b: g.b(i),
        })
        .collect();
    let edges = g.edges().iter().map(|&(i, j)| (name(j), name(i))).collect();
    ResolutionGraph::new(vertices, edges).expect("relabeling keeps validity")
}
