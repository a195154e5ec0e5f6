//! Graphs given as edge lists, and their cycle matroids.

use std::collections::HashMap;

use crate::arith::{Field, Matrix};

use super::MatroidError;

/// A multigraph whose edges are labelled `1..n` in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from vertex-index pairs; the vertex count is inferred.
    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let nv = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Graph { vertices: (0..nv).map(|i| i.to_string()).collect(), edges: edges.to_vec() }
    }

    /// Parses an edge list: one `u v` pair per line, arbitrary vertex names,
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, MatroidError> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> =
                line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
            if toks.len() != 2 {
                return Err(MatroidError::Parse(format!(
                    "line {}: expected two vertex names, got {:?}",
                    lineno + 1,
                    line
                )));
            }
            let mut id = |name: &str| {
                *index.entry(name.to_string()).or_insert_with(|| {
                    vertices.push(name.to_string());
                    vertices.len() - 1
                })
            };
            let a = id(toks[0]);
            let b = id(toks[1]);
            edges.push((a, b));
        }
        if edges.is_empty() {
            return Err(MatroidError::Parse("graph has no edges".into()));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        if nv == 0 {
            return false;
        }
        let mut uf = UnionFind::new(nv);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        (1..nv).all(|v| uf.find(v) == uf.find(0))
    }

    /// Whether the given edges (zero-based) form a forest.
    pub(crate) fn is_forest(&self, edge_ids: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.num_vertices());
        edge_ids.iter().all(|&e| {
            let (a, b) = self.edges[e];
            uf.union(a, b)
        })
    }

    /// Signed incidence matrix (edge `u v` has `+1` at `u`, `-1` at `v`) with
    /// the row of the last vertex removed. Loops give zero columns.
    pub fn pruned_incidence_matrix(&self, field: Field) -> Matrix {
        let nv = self.num_vertices();
        let mut m = Matrix::zeros(field, nv.saturating_sub(1), self.num_edges());
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                continue;
            }
            if a + 1 < nv {
                m.set(a, j, field.one());
            }
            if b + 1 < nv {
                m.set(b, j, field.from_i64(-1));
            }
        }
        m
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
