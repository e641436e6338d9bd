use std::collections::VecDeque;
use std::fmt;

use num_complex::Complex64;

use super::graph::{edge_operators, ModeGraph};
use crate::pauli::PauliOperator;
use crate::simulator::{apply_operator, StateVector};
use crate::{Error, Result};

/// Largest edge register for which [`vacuum_state`] builds a state vector.
pub const MAX_VACUUM_QUBITS: usize = 20;

/// Closed walk `v_0 -> v_1 -> ... -> v_{p-1} -> v_0` through distinct
/// vertices, with `qubits[k]` the edge qubit of `(v_k, v_{k+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    vertices: Vec<usize>,
    qubits: Vec<usize>,
}

impl Loop {
    pub fn new(g: &ModeGraph, vertices: Vec<usize>) -> Result<Self> {
        let p = vertices.len();
        if p < 3 {
            return Err(Error::Graph(format!("a loop needs at least 3 vertices, got {p}")));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != p {
            return Err(Error::Graph("loop revisits a vertex".into()));
        }
        let qubits = (0..p)
            .map(|k| {
                let (a, b) = (vertices[k], vertices[(k + 1) % p]);
                g.edge_qubit(a, b)
                    .ok_or_else(|| Error::Graph(format!("({}, {}) is not an edge", a + 1, b + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(Self { vertices, qubits })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "loop")?;
        for v in &self.vertices {
            write!(f, " {}", v + 1)?;
        }
        Ok(())
    }
}

/// Fundamental cycles of a breadth-first spanning tree grown from vertex 0
/// (neighbours visited in ascending order), one per non-tree edge in edge
/// order. Each loop starts at its smallest vertex and continues toward the
/// smaller of that vertex's two loop neighbours.
pub fn cycle_basis(g: &ModeGraph) -> Result<Vec<Loop>> {
    g.require_connected()?;
    let m = g.vertices();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut parent: Vec<Option<usize>> = vec![None; m];
    let mut depth = vec![0usize; m];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for n in g.neighbors(v) {
            if !seen[n] {
                seen[n] = true;
                parent[n] = Some(v);
                depth[n] = depth[v] + 1;
                queue.push_back(n);
            }
        }
    }

    let is_tree = |a: usize, b: usize| parent[a] == Some(b) || parent[b] == Some(a);
    let mut loops = Vec::new();
    for &(u, v) in g.edges() {
        if is_tree(u, v) {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].expect("non-root");
                up.push(a);
            } else {
                b = parent[b].expect("non-root");
                down.push(b);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        loops.push(Loop::new(g, orient(up))?);
    }
    Ok(loops)
}

fn orient(mut cycle: Vec<usize>) -> Vec<usize> {
    let start = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(k, _)| k)
        .expect("non-empty cycle");
    cycle.rotate_left(start);
    let p = cycle.len();
    if cycle[p - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// `C = i^p A_{v0 v1} A_{v1 v2} ... A_{v(p-1) v0}` for a loop of length `p`.
pub fn loop_stabilizer(g: &ModeGraph, l: &Loop) -> Result<PauliOperator> {
    let ops = edge_operators(g)?;
    let p = l.len();
    let mut c = PauliOperator::identity(g.qubits());
    for k in 0..p {
        c = &c * ops.a(l.vertices[k], l.vertices[(k + 1) % p])?;
    }
    let c = c.scale(Complex64::i().powu(p as u32)).canonicalize(1e-12);
    let ok = c.len() == 1 && c.iter().all(|(_, z)| (z.norm() - 1.0).abs() < 1e-12 && z.im.abs() < 1e-12);
    if !ok {
        return Err(Error::Numeric(format!("loop stabilizer for {l} is not a signed Pauli string")));
    }
    Ok(c)
}

/// Cycle-basis loops of a graph and their stabilizers, in matching order.
#[derive(Debug, Clone)]
pub struct StabilizerSet {
    pub loops: Vec<Loop>,
    pub operators: Vec<PauliOperator>,
}

impl StabilizerSet {
    pub fn len(&self) -> usize {
        self.loops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty()
    }

    /// One Pauli term per line.
    pub fn dump(&self) -> String {
        self.operators.iter().map(|op| op.render()).collect()
    }
}

pub fn stabilizers(g: &ModeGraph) -> Result<StabilizerSet> {
    let loops = cycle_basis(g)?;
    let operators = loops
        .iter()
        .map(|l| loop_stabilizer(g, l))
        .collect::<Result<_>>()?;
    Ok(StabilizerSet { loops, operators })
}

/// `prod (1 + C_L) |0...0>`, normalized.
pub fn vacuum_state(g: &ModeGraph, stabs: &StabilizerSet) -> Result<StateVector> {
    let n = g.qubits();
    if n > MAX_VACUUM_QUBITS {
        return Err(Error::Validation(format!(
            "vacuum state on {n} qubits exceeds the {MAX_VACUUM_QUBITS}-qubit limit"
        )));
    }
    let mut state = StateVector::zeros(1 << n);
    state[0] = Complex64::new(1.0, 0.0);
    for c in &stabs.operators {
        let image = apply_operator(c, &state)?;
        state = (&state + &image) * Complex64::new(0.5, 0.0);
    }
    let norm = state.norm();
    if norm < 1e-12 {
        return Err(Error::Numeric(
            "stabilizer projection annihilates the all-zeros seed state".into(),
        ));
    }
    Ok(state.unscale(norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::H2_STO3G;
    use crate::fermion::{build_molecular_hamiltonian, parse_integral_file};
    use crate::transforms::build_mode_graph;

    fn h2_graph() -> ModeGraph {
        let h = build_molecular_hamiltonian(&parse_integral_file(H2_STO3G).unwrap()).unwrap();
        build_mode_graph(&h).unwrap()
    }

    #[test]
    fn h2_loop_and_stabilizer() {
        let g = h2_graph();
        let loops = cycle_basis(&g).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(loops[0].to_string(), "loop 1 2 3 4");
        let c = loop_stabilizer(&g, &loops[0]).unwrap();
        assert_eq!(c.render(), "-1.000000 XYYX\n");
    }

    #[test]
    fn h2_vacuum() {
        let g = h2_graph();
        let s = stabilizers(&g).unwrap();
        let v = vacuum_state(&g, &s).unwrap();
        let r = 0.5f64.sqrt();
        for (k, amp) in v.iter().enumerate() {
            let expected = if k == 0 || k == 15 { r } else { 0.0 };
            assert!((amp.re - expected).abs() < 1e-12 && amp.im.abs() < 1e-12, "{k}: {amp}");
        }
    }

    #[test]
    fn loop_counts() {
        let path = ModeGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(cycle_basis(&path).unwrap().is_empty());
        let k4 = ModeGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let loops = cycle_basis(&k4).unwrap();
        assert_eq!(loops.len(), 3);
        for l in &loops {
            assert_eq!(l.vertices()[0], 0);
            assert!(l.vertices()[1] < *l.vertices().last().unwrap());
        }
    }

    #[test]
    fn tree_vacuum_is_all_zeros() {
        let g = ModeGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let v = vacuum_state(&g, &stabilizers(&g).unwrap()).unwrap();
        assert_eq!(v[0], Complex64::new(1.0, 0.0));
        assert!(v.iter().skip(1).all(|a| a.norm() == 0.0));
    }

    #[test]
    fn triangle_stabilizer_has_weight_three() {
        let g = ModeGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = stabilizers(&g).unwrap();
        assert_eq!(s.len(), 1);
        let terms = s.operators[0].terms();
        assert_eq!(terms[0].string.weight_profile().0, 3);
        assert!((terms[0].coefficient.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_loops() {
        let g = h2_graph();
        assert!(Loop::new(&g, vec![0, 1]).is_err());
        assert!(Loop::new(&g, vec![0, 1, 3]).is_err());
        assert!(cycle_basis(&ModeGraph::new(3, [(0, 1)]).unwrap()).is_err());
    }
}
