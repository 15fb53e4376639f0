//! Resolution dual graphs of rational surface singularities.
//!
//! Every vertex is a smooth rational curve E_i with self-intersection −b_i,
//! b_i ≥ 2. Edges are transversal intersections; repeated edges count with
//! multiplicity. A graph is only constructed once it is connected and its
//! intersection form is negative definite.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rat, QMatrix};
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Syntax(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex id must be a nonempty string")]
    EmptyId,
    #[error("duplicate vertex id {0:?}")]
    DuplicateId(String),
    #[error("edge refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("vertex {id:?} has b = {b}; a minimal resolution needs b >= 2")]
    NonMinimal { id: String, b: i64 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("graph is not rational: p_a(Z) = {0}")]
    NotRational(i64),
}

impl GraphError {
    /// Stable machine-readable code for each failure kind.
    pub fn code(&self) -> &'static str {
        match self {
            GraphError::Syntax(_) => "syntax",
            GraphError::Empty => "empty",
            GraphError::EmptyId => "empty-id",
            GraphError::DuplicateId(_) => "duplicate-id",
            GraphError::UnknownVertex(_) => "unknown-vertex",
            GraphError::SelfLoop(_) => "self-loop",
            GraphError::NonMinimal { .. } => "non-minimal",
            GraphError::Disconnected => "disconnected",
            GraphError::NotNegativeDefinite => "not-negative-definite",
            GraphError::NotSymmetric => "not-symmetric",
            GraphError::NotRational(_) => "not-rational",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vertex {
    pub id: String,
    pub b: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<Vertex>,
    edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    // neighbours with repetition for multi-edges
    adjacency: Vec<Vec<usize>>,
}

impl ResolutionGraph {
    /// Validates ids, weights, connectivity and negative definiteness.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(String, String)>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.clone()));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(id.clone()))
        };
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let (i, j) = (lookup(a)?, lookup(b)?);
            if i == j {
                return Err(GraphError::SelfLoop(a.clone()));
            }
            idx_edges.push((i, j));
        }
        Self::from_indexed(vertices, idx_edges)
    }

    fn from_indexed(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if let Some(v) = vertices.iter().find(|v| v.b < 2) {
            return Err(GraphError::NonMinimal {
                id: v.id.clone(),
                b: v.b,
            });
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let g = ResolutionGraph {
            vertices,
            edges,
            adjacency,
        };
        if g.components(&vec![true; g.len()]).len() != 1 {
            return Err(GraphError::Disconnected);
        }
        if !is_negative_definite(&g.intersection_matrix())? {
            return Err(GraphError::NotNegativeDefinite);
        }
        Ok(g)
    }

    /// Convenience constructor with ids E1, E2, … and 0-based index edges.
    pub fn from_weights(bs: &[i64], edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let vertices = bs
            .iter()
            .enumerate()
            .map(|(i, &b)| Vertex {
                id: format!("E{}", i + 1),
                b,
            })
            .collect::<Vec<_>>();
        let named = edges
            .iter()
            .map(|&(i, j)| {
                let name = |k: usize| {
                    vertices
                        .get(k)
                        .map(|v| v.id.clone())
                        .unwrap_or_else(|| format!("E{}", k + 1))
                };
                (name(i), name(j))
            })
            .collect();
        Self::new(vertices, named)
    }

    /// Parses the JSON graph format
    /// `{"vertices": [{"id": "E1", "b": 3}, …], "edges": [["E1", "E2"], …]}`.
    pub fn parse(document: &str) -> Result<Self, GraphError> {
        let doc: GraphDoc =
            serde_json::from_str(document).map_err(|e| GraphError::Syntax(e.to_string()))?;
        if let Some(v) = doc.vertices.iter().find(|v| v.b < 1) {
            return Err(GraphError::Syntax(format!(
                "vertex {:?}: b must be a positive integer, got {}",
                v.id, v.b
            )));
        }
        let edges = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Self::new(doc.vertices, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter()
                .map(|&(i, j)| [&self.vertices[i].id, &self.vertices[j].id])
                .collect::<Vec<_>>(),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn b(&self, i: usize) -> i64 {
        self.vertices[i].b
    }

    pub fn id(&self, i: usize) -> &str {
        &self.vertices[i].id
    }

    pub fn intersection_matrix(&self) -> QMatrix {
        let n = self.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            m.set(i, i, rat(-v.b));
        }
        for &(i, j) in &self.edges {
            let x = m.get(i, j) + rat(1);
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
        m
    }

    /// Z·E_i.
    pub fn pairing(&self, z: &Cycle, i: usize) -> i64 {
        let a = &z.coeffs;
        -self.vertices[i].b * a[i] + self.adjacency[i].iter().map(|&j| a[j]).sum::<i64>()
    }

    /// Z·Z.
    pub fn self_intersection(&self, z: &Cycle) -> i64 {
        (0..self.len())
            .map(|i| z.coeffs[i] * self.pairing(z, i))
            .sum()
    }

    /// Z·K for genus-0 curves: Σ a_i (b_i − 2).
    pub fn canonical_pairing(&self, z: &Cycle) -> i64 {
        self.vertices
            .iter()
            .zip(&z.coeffs)
            .map(|(v, a)| a * (v.b - 2))
            .sum()
    }

    /// Connected components of the full subgraph on the vertices with
    /// `keep[i]`, each sorted by vertex index.
    pub fn components(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if !keep[start] || seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The full subgraph on `members`, keeping weights, ids and internal edges.
    pub fn induced_subgraph(&self, members: &[usize]) -> Result<ResolutionGraph, GraphError> {
        let pos: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let vertices = members.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(i, j)| Some((*pos.get(i)?, *pos.get(j)?)))
            .collect();
        Self::from_indexed(vertices, edges)
    }
}

/// An integral cycle Z = Σ a_i E_i, coefficients in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    coeffs: Vec<i64>,
}

impl Cycle {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Cycle { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// (id, coefficient) pairs.
    pub fn labelled<'g>(
        &'g self,
        g: &'g ResolutionGraph,
    ) -> impl Iterator<Item = (&'g str, i64)> + 'g {
        g.vertices
            .iter()
            .map(|v| v.id.as_str())
            .zip(self.coeffs.iter().copied())
    }
}

/// Exact test via leading principal minors: (−1)^k · minor_k > 0 for all k.
pub fn is_negative_definite(m: &QMatrix) -> Result<bool, GraphError> {
    if !m.is_symmetric() {
        return Err(GraphError::NotSymmetric);
    }
    let minors = m
        .leading_principal_minors()
        .map_err(|_| GraphError::NotSymmetric)?;
    Ok(minors.iter().enumerate().all(|(k, minor)| {
        let size = k + 1;
        if size % 2 == 0 {
            minor.is_positive()
        } else {
            minor.is_negative()
        }
    }))
}

pub fn intersection_matrix(g: &ResolutionGraph) -> QMatrix {
    g.intersection_matrix()
}

/// Laufer's computation sequence: start from Σ E_i and raise the
/// coefficient of some E_i with Z·E_i > 0 until none is left. `pick`
/// chooses among the offending vertices (given in increasing order).
pub fn laufer_with(g: &ResolutionGraph, mut pick: impl FnMut(&[usize]) -> usize) -> Cycle {
    let mut z = Cycle::new(vec![1; g.len()]);
    loop {
        let positive: Vec<usize> = (0..g.len()).filter(|&i| g.pairing(&z, i) > 0).collect();
        if positive.is_empty() {
            return z;
        }
        let i = pick(&positive);
        assert!(
            positive.contains(&i),
            "pick returned a vertex with Z·E <= 0"
        );
        z.coeffs[i] += 1;
    }
}

/// The fundamental cycle, raising the lowest-index offending vertex first.
pub fn fundamental_cycle(g: &ResolutionGraph) -> Cycle {
    laufer_with(g, |positive| positive[0])
}

/// Arithmetic genus p_a(Z) = 1 + (Z·Z + Z·K)/2.
///
/// Panics if Z·Z + Z·K is odd, which adjunction rules out.
pub fn pa_cycle(g: &ResolutionGraph, z: &Cycle) -> i64 {
    let s = g.self_intersection(z) + g.canonical_pairing(z);
    assert!(s % 2 == 0, "Z·Z + Z·K = {s} is odd");
    1 + s / 2
}

/// Artin's criterion: p_a of the fundamental cycle vanishes.
pub fn is_rational(g: &ResolutionGraph) -> bool {
    pa_cycle(g, &fundamental_cycle(g)) == 0
}

/// −Z·Z for the fundamental cycle; only meaningful for rational graphs.
pub fn multiplicity(g: &ResolutionGraph) -> Result<u64, GraphError> {
    let z = fundamental_cycle(g);
    let pa = pa_cycle(g, &z);
    if pa != 0 {
        return Err(GraphError::NotRational(pa));
    }
    Ok((-g.self_intersection(&z)) as u64)
}

pub fn is_reduced(z: &Cycle) -> bool {
    z.coeffs.iter().all(|&a| a == 1)
}

pub fn parse_graph(document: &str) -> Result<ResolutionGraph, GraphError> {
    ResolutionGraph::parse(document)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(center: i64, leaves: &[i64]) -> Result<ResolutionGraph, GraphError> {
        let mut bs = vec![center];
        bs.extend_from_slice(leaves);
        let edges: Vec<(usize, usize)> = (1..=leaves.len()).map(|i| (0, i)).collect();
        ResolutionGraph::from_weights(&bs, &edges)
    }

    fn chain(bs: &[i64]) -> ResolutionGraph {
        let edges: Vec<(usize, usize)> = (1..bs.len()).map(|i| (i - 1, i)).collect();
        ResolutionGraph::from_weights(bs, &edges).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = parse_graph(r#"{"vertices": [{"id": "E1", "b": 4}], "edges": []}"#).unwrap();
        assert_eq!(g.len(), 1);

        let four_star = r#"{"vertices": [{"id":"c","b":2},{"id":"a","b":2},{"id":"b","b":2},
            {"id":"d","b":2},{"id":"e","b":2}],
            "edges": [["c","a"],["c","b"],["c","d"],["c","e"]]}"#;
        assert_eq!(parse_graph(four_star), Err(GraphError::NotNegativeDefinite));

        let b1 = r#"{"vertices": [{"id": "E1", "b": 1}], "edges": []}"#;
        assert_eq!(
            parse_graph(b1),
            Err(GraphError::NonMinimal {
                id: "E1".into(),
                b: 1
            })
        );
    }

    #[test]
    fn parse_error_codes_are_distinct() {
        let cases = [
            ("not json", "syntax"),
            (r#"{"vertices": [], "edges": []}"#, "empty"),
            (
                r#"{"vertices": [{"id": "E1", "b": 0}], "edges": []}"#,
                "syntax",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3, "g": 0}], "edges": []}"#,
                "syntax",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3}], "edges": [], "x": 1}"#,
                "syntax",
            ),
            (r#"{"vertices": [{"id": "E1", "b": 3}]}"#, "syntax"),
            (
                r#"{"vertices": [{"id": "", "b": 3}], "edges": []}"#,
                "empty-id",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3}, {"id": "E1", "b": 3}], "edges": []}"#,
                "duplicate-id",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3}], "edges": [["E1", "E2"]]}"#,
                "unknown-vertex",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3}], "edges": [["E1", "E1"]]}"#,
                "self-loop",
            ),
            (
                r#"{"vertices": [{"id": "E1", "b": 3}, {"id": "E2", "b": 3}], "edges": []}"#,
                "disconnected",
            ),
        ];
        for (doc, code) in cases {
            assert_eq!(parse_graph(doc).unwrap_err().code(), code, "{doc}");
        }
    }

    #[test]
    fn json_round_trip() {
        let g = chain(&[3, 2, 3]);
        let back = parse_graph(&g.to_json().to_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn intersection_matrix_examples() {
        let g = ResolutionGraph::from_weights(&[7], &[]).unwrap();
        assert_eq!(g.intersection_matrix(), QMatrix::from_int_rows(&[[-7]]));
        let g = chain(&[3, 3]);
        assert_eq!(
            g.intersection_matrix(),
            QMatrix::from_int_rows(&[[-3, 1], [1, -3]])
        );
        assert!(chain(&[2, 5, 2, 3]).intersection_matrix().is_symmetric());
    }

    #[test]
    fn negative_definite_examples() {
        assert_eq!(
            is_negative_definite(&QMatrix::from_int_rows(&[[-2]])),
            Ok(true)
        );
        assert_eq!(
            is_negative_definite(&QMatrix::from_int_rows(&[[-2, 1], [1, -2]])),
            Ok(true)
        );
        let star = QMatrix::from_int_rows(&[
            [-2, 1, 1, 1, 1],
            [1, -2, 0, 0, 0],
            [1, 0, -2, 0, 0],
            [1, 0, 0, -2, 0],
            [1, 0, 0, 0, -2],
        ]);
        assert_eq!(star.determinant().unwrap(), rat(0));
        assert_eq!(is_negative_definite(&star), Ok(false));
        assert_eq!(
            is_negative_definite(&QMatrix::from_int_rows(&[[-2, 1], [0, -2]])),
            Err(GraphError::NotSymmetric)
        );
    }

    #[test]
    fn four_star_form_annihilates_its_null_vector() {
        let star = QMatrix::from_int_rows(&[
            [-2, 1, 1, 1, 1],
            [1, -2, 0, 0, 0],
            [1, 0, -2, 0, 0],
            [1, 0, 0, -2, 0],
            [1, 0, 0, 0, -2],
        ]);
        let k = star.kernel_basis();
        assert_eq!(k.dim(), 1);
        let z = [2, 1, 1, 1, 1].map(rat);
        assert!(k.coordinates(&z).is_some());
    }

    #[test]
    fn fundamental_cycle_examples() {
        let g = ResolutionGraph::from_weights(&[5], &[]).unwrap();
        assert_eq!(fundamental_cycle(&g).coeffs(), &[1]);
        let g = star(2, &[3, 3, 3]).unwrap();
        assert_eq!(fundamental_cycle(&g).coeffs(), &[2, 1, 1, 1]);
        let g = chain(&[3, 2, 3]);
        let z = fundamental_cycle(&g);
        assert_eq!(z.coeffs(), &[1, 1, 1]);
        assert_eq!(
            (0..3).map(|i| g.pairing(&z, i)).collect::<Vec<_>>(),
            vec![-2, 0, -2]
        );
    }

    #[test]
    fn pa_examples() {
        for d in 2..10 {
            let g = ResolutionGraph::from_weights(&[d], &[]).unwrap();
            assert_eq!(pa_cycle(&g, &Cycle::new(vec![1])), 0);
        }
        let g = star(2, &[3, 3, 3, 3]).unwrap();
        let z = Cycle::new(vec![2, 1, 1, 1, 1]);
        assert_eq!(g.self_intersection(&z), -4);
        assert_eq!(g.canonical_pairing(&z), 4);
        assert_eq!(pa_cycle(&g, &z), 1);
        let g = star(3, &[3, 3, 3]).unwrap();
        let z = Cycle::new(vec![1, 1, 1, 1]);
        assert_eq!((g.self_intersection(&z), g.canonical_pairing(&z)), (-6, 4));
        assert_eq!(pa_cycle(&g, &z), 0);
    }

    #[test]
    fn rationality_examples() {
        for d in 2..8 {
            assert!(is_rational(
                &ResolutionGraph::from_weights(&[d], &[]).unwrap()
            ));
        }
        let bad = star(2, &[3, 3, 3, 3]).unwrap();
        assert!(!is_rational(&bad));
        assert_eq!(multiplicity(&bad), Err(GraphError::NotRational(1)));
        assert!(is_rational(&chain(&[3, 2, 3])));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            multiplicity(&ResolutionGraph::from_weights(&[9], &[]).unwrap()),
            Ok(9)
        );
        assert_eq!(multiplicity(&star(3, &[3, 3, 3]).unwrap()), Ok(6));
        assert_eq!(multiplicity(&chain(&[3, 2, 3])), Ok(4));
    }

    #[test]
    fn rational_double_points_have_multiplicity_two() {
        for n in 1..8 {
            assert_eq!(multiplicity(&chain(&vec![2; n])), Ok(2), "A_{n}");
        }
        assert_eq!(multiplicity(&star(2, &[2, 2, 2]).unwrap()), Ok(2));
        // D_5, E_6
        let d5 = ResolutionGraph::from_weights(&[2; 5], &[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(multiplicity(&d5), Ok(2));
        let e6 = ResolutionGraph::from_weights(&[2; 6], &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
            .unwrap();
        assert_eq!(multiplicity(&e6), Ok(2));
        assert_eq!(fundamental_cycle(&e6).coeffs(), &[1, 2, 3, 2, 1, 2]);
    }

    #[test]
    fn reduced_examples() {
        assert!(is_reduced(&Cycle::new(vec![1, 1, 1])));
        assert!(!is_reduced(&Cycle::new(vec![2, 1, 1, 1])));
        assert!(is_reduced(&Cycle::new(vec![1])));
    }

    #[test]
    fn multi_edges_fail_rationality() {
        // two curves meeting twice
        let g = ResolutionGraph::from_weights(&[3, 3], &[(0, 1), (0, 1)]).unwrap();
        assert!(!is_rational(&g));
        // a cycle of three curves
        let g = ResolutionGraph::from_weights(&[3, 3, 3], &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(pa_cycle(&g, &fundamental_cycle(&g)) >= 1);
    }

    #[test]
    fn induced_subgraph_keeps_edges() {
        let g = chain(&[3, 2, 4, 5]);
        let sub = g.induced_subgraph(&[1, 2]).unwrap();
        assert_eq!(
            sub.vertices().iter().map(|v| v.b).collect::<Vec<_>>(),
            vec![2, 4]
        );
        assert_eq!(sub.edges(), &[(0, 1)]);
        assert_eq!(sub.id(0), "E2");
    }
}
