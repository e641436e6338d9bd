use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::fermion::{classify_operator, FermionOperator, Template};
use crate::pauli::{Pauli, PauliOperator, PauliString};
use crate::{Error, Result};

/// Interaction graph of a Hamiltonian: one vertex per mode and one qubit per
/// edge. Edges are stored as `(i, j)` with `i < j`, sorted, and edge `k` in
/// that order lives on qubit `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl ModeGraph {
    /// Edges may be given in either orientation and repeat; they are
    /// normalized and deduplicated.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(vertices: usize, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Graph(format!("self-loop on vertex {}", a + 1)));
            }
            if a >= vertices || b >= vertices {
                return Err(Error::Graph(format!(
                    "edge ({}, {}) outside {vertices} vertices",
                    a + 1,
                    b + 1
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            vertices,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edge qubits.
    pub fn qubits(&self) -> usize {
        self.edges.len()
    }

    /// Qubit of the edge joining `a` and `b`, in either orientation.
    pub fn edge_qubit(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    /// `+1` for `i < j`, `-1` otherwise.
    pub fn epsilon(i: usize, j: usize) -> f64 {
        if i < j {
            1.0
        } else {
            -1.0
        }
    }

    /// Neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match v {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for n in self.neighbors(v) {
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Graph(format!(
                "interaction graph on {} vertices with {} edges is disconnected",
                self.vertices,
                self.edges.len()
            )))
        }
    }

    /// One `edge <i> <j> qubit <q>` line per edge, 1-based.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (q, &(i, j)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "edge {} {} qubit {}", i + 1, j + 1, q + 1);
        }
        out
    }
}

/// Interaction graph of `h`. Excitation-type terms add the edges their
/// images use; number and Coulomb terms add none.
pub fn build_mode_graph(h: &FermionOperator) -> Result<ModeGraph> {
    let classes = classify_operator(h)?;
    let mut edges = Vec::new();
    for t in &classes.terms {
        match t.template {
            Template::Number { .. } | Template::CoulombExchange { .. } => {}
            Template::Excitation { i, j } | Template::PairCreation { i, j } => edges.push((i, j)),
            Template::NumberExcitation { i, k, .. } => edges.push((i, k)),
            Template::DoubleExcitation { i, j, k, l } => {
                edges.push((i, j));
                edges.push((k, l));
            }
        }
    }
    ModeGraph::new(h.modes(), edges)
}

/// Vertex operators `B_i` and edge operators `A_ij` of a graph.
#[derive(Debug, Clone)]
pub struct EdgeOperators {
    b: Vec<PauliOperator>,
    a: BTreeMap<(usize, usize), PauliOperator>,
}

impl EdgeOperators {
    pub fn b(&self, i: usize) -> &PauliOperator {
        &self.b[i]
    }

    /// `A_ij` for the edge in the given orientation.
    pub fn a(&self, i: usize, j: usize) -> Result<&PauliOperator> {
        self.a
            .get(&(i, j))
            .ok_or_else(|| Error::Graph(format!("({}, {}) is not an edge", i + 1, j + 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.b.len()
    }
}

/// `B_i` is `Z` on every edge at `i`. For `i < j`, `A_ij` is `X` on edge
/// `(i, j)`, `Z` on edges `(l, i)` with `l < j` and `Z` on edges `(s, j)`
/// with `s < i`; `A_ji = -A_ij`.
pub fn edge_operators(g: &ModeGraph) -> Result<EdgeOperators> {
    g.require_connected()?;
    let n = g.qubits();
    let b = (0..g.vertices())
        .map(|v| {
            let qs = g.neighbors(v).into_iter().map(|u| g.edge_qubit(v, u).expect("neighbour"));
            PauliOperator::from_string(PauliString::z_on(n, qs))
        })
        .collect();
    let mut a = BTreeMap::new();
    for &(i, j) in g.edges() {
        let mut s = PauliString::identity(n);
        for l in g.neighbors(i).into_iter().filter(|&l| l < j) {
            s.set(g.edge_qubit(l, i).expect("neighbour"), Pauli::Z);
        }
        for m in g.neighbors(j).into_iter().filter(|&m| m < i) {
            s.set(g.edge_qubit(m, j).expect("neighbour"), Pauli::Z);
        }
        s.set(g.edge_qubit(i, j).expect("edge"), Pauli::X);
        let op = PauliOperator::from_string(s);
        a.insert((j, i), op.scale(ModeGraph::epsilon(j, i)));
        a.insert((i, j), op);
    }
    Ok(EdgeOperators { b, a })
}
