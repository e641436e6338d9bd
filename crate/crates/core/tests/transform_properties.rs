mod common;

use std::collections::BTreeSet;

use common::{c, eigenvalues, kron_operator, max_abs, Matrix};
use fermap_core::fermion::{FermionOperator, FermionTerm, LadderOp, Template};
use fermap_core::pauli::{PauliOperator, PauliString};
use fermap_core::simulator::{
    apply_operator, expectation, spectrum, stabilizer_projector, to_dense_matrix,
};
use fermap_core::transforms::{
    bksf_transform, bravyi_kitaev, build_mode_graph, edge_operators, jordan_wigner,
    loop_stabilizer, stabilizers, vacuum_state, FenwickTree, Loop, ModeGraph,
};
use proptest::prelude::*;
use proptest::sample::Index;

const TOL: f64 = 1e-10;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(25)
}

/// Connected graph on 2..=6 vertices with at most 8 edges: a random tree plus
/// random extra edges.
fn connected_graph() -> impl Strategy<Value = ModeGraph> {
    (2usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<Index>(), n - 1),
            prop::collection::vec((any::<Index>(), any::<Index>()), 0..=5),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges = BTreeSet::new();
                for (k, p) in parents.iter().enumerate() {
                    let v = k + 1;
                    edges.insert((p.index(v), v));
                }
                for (a, b) in extra {
                    if edges.len() >= 8 {
                        break;
                    }
                    let (a, b) = (a.index(n), b.index(n));
                    if a != b {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
                ModeGraph::new(n, edges).unwrap()
            })
    })
}

fn same(a: &PauliOperator, b: &PauliOperator) -> bool {
    a.max_abs_diff(b) < TOL
}

fn negated(a: &PauliOperator) -> PauliOperator {
    a.scale(-1.0)
}

fn shared_vertices(e: (usize, usize), f: (usize, usize)) -> usize {
    [e.0, e.1].iter().filter(|v| **v == f.0 || **v == f.1).count()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn edge_operator_algebra(g in connected_graph()) {
        let ops = edge_operators(&g).unwrap();
        let one = PauliOperator::identity(g.qubits());
        for v in 0..g.vertices() {
            let b = ops.b(v);
            prop_assert!(b.is_hermitian(TOL));
            prop_assert!(same(&(b * b), &one));
            prop_assert!(max_abs(&(to_dense_matrix(b).unwrap() - kron_operator(b))) < TOL);
            for w in 0..g.vertices() {
                let bw = ops.b(w);
                prop_assert!(same(&(b * bw), &(bw * b)));
            }
        }
        for &(i, j) in g.edges() {
            let a = ops.a(i, j).unwrap();
            prop_assert!(a.is_hermitian(TOL));
            prop_assert!(same(&(a * a), &one));
            prop_assert!(same(ops.a(j, i).unwrap(), &negated(a)));
            prop_assert!(max_abs(&(to_dense_matrix(a).unwrap() - kron_operator(a))) < TOL);
            for k in 0..g.vertices() {
                let b = ops.b(k);
                let expected = if k == i || k == j { negated(&(b * a)) } else { b * a };
                prop_assert!(same(&(a * b), &expected), "A_{}{} B_{}", i, j, k);
            }
            for &(k, l) in g.edges() {
                if (k, l) == (i, j) {
                    continue;
                }
                let other = ops.a(k, l).unwrap();
                let swapped = other * a;
                let expected = if shared_vertices((i, j), (k, l)) == 1 { negated(&swapped) } else { swapped };
                prop_assert!(same(&(a * other), &expected), "A_{}{} A_{}{}", i, j, k, l);
            }
        }
    }

    #[test]
    fn stabilizer_structure(g in connected_graph()) {
        let set = stabilizers(&g).unwrap();
        prop_assert_eq!(set.len(), g.edges().len() + 1 - g.vertices());
        let one = PauliOperator::identity(g.qubits());
        let ops = edge_operators(&g).unwrap();
        for (l, s) in set.loops.iter().zip(&set.operators) {
            prop_assert_eq!(s.len(), 1);
            prop_assert!(s.is_hermitian(TOL));
            prop_assert!(same(&(s * s), &one));
            for other in &set.operators {
                prop_assert!(s.commutes_with(other).unwrap());
            }
            for v in 0..g.vertices() {
                prop_assert!(s.commutes_with(ops.b(v)).unwrap(), "loop {l} vs B_{v}");
            }
            for &(i, j) in g.edges() {
                prop_assert!(s.commutes_with(ops.a(i, j).unwrap()).unwrap(), "loop {l} vs A_{i}{j}");
            }
        }
    }

    #[test]
    fn vacuum_is_empty_and_stabilized(g in connected_graph()) {
        let set = stabilizers(&g).unwrap();
        let vac = vacuum_state(&g, &set).unwrap();
        prop_assert!((vac.norm() - 1.0).abs() < TOL);
        let ops = edge_operators(&g).unwrap();
        for v in 0..g.vertices() {
            let n = (&PauliOperator::identity(g.qubits()) - ops.b(v)).scale(0.5);
            prop_assert!(expectation(&n, &vac).unwrap().norm() < TOL, "occupation of mode {}", v + 1);
        }
        for cycle in simple_cycles(&g) {
            let l = Loop::new(&g, cycle).unwrap();
            let s = loop_stabilizer(&g, &l).unwrap();
            let image = apply_operator(&s, &vac).unwrap();
            prop_assert!((image - &vac).norm() < TOL, "loop {l}");
        }
    }

    #[test]
    fn bksf_code_space_matches_even_sector(
        (g, coeffs) in connected_graph().prop_flat_map(|g| {
            let n = 2 * g.vertices() + 2 * g.edges().len() + 16;
            (Just(g), prop::collection::vec(-1.0f64..1.0, n))
        })
    ) {
        let h = template_operator(&g, &coeffs);
        let derived = build_mode_graph(&h).unwrap();
        prop_assert_eq!(derived.edges(), g.edges());
        let qubit_h = bksf_transform(&h, &g).unwrap();
        let set = stabilizers(&g).unwrap();
        for s in &set.operators {
            prop_assert!(s.commutes_with(&qubit_h).unwrap());
        }
        let code = stabilizer_projector(&set.operators, g.qubits()).unwrap();
        let bksf_spec = spectrum(&qubit_h, Some(&code)).unwrap();

        let m = g.vertices();
        let jw = jordan_wigner(&h);
        let parity = PauliOperator::from_string(PauliString::z_on(m, 0..m));
        let even = stabilizer_projector(&[parity], m).unwrap();
        let jw_spec = spectrum(&jw, Some(&even)).unwrap();

        prop_assert_eq!(bksf_spec.len(), jw_spec.len());
        for (a, b) in bksf_spec.iter().zip(&jw_spec) {
            prop_assert!((a - b).abs() < 1e-9, "{bksf_spec:?} vs {jw_spec:?}");
        }
    }

    #[test]
    fn jw_and_bk_spectra_agree(h in even_operator()) {
        let jw = to_dense_matrix(&jordan_wigner(&h)).unwrap();
        let bk = to_dense_matrix(&bravyi_kitaev(&h)).unwrap();
        let (a, b) = (eigenvalues(&jw), eigenvalues(&bk));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9, "{a:?} vs {b:?}");
        }
    }
}

/// Number, Coulomb and excitation terms on every vertex and edge, plus
/// number-excitation and double-excitation terms where the graph allows.
fn template_operator(g: &ModeGraph, coeffs: &[f64]) -> FermionOperator {
    let mut coeff = coeffs.iter().copied();
    let mut next = || coeff.next().unwrap_or(0.5);
    let m = g.vertices();
    let mut templates = Vec::new();
    for i in 0..m {
        templates.push(Template::Number { i });
        templates.push(Template::CoulombExchange { i, j: (i + 1) % m });
    }
    let edges = g.edges();
    for &(i, j) in edges {
        templates.push(Template::Excitation { i, j });
        if let Some(k) = (0..m).find(|&k| k != i && k != j) {
            templates.push(Template::NumberExcitation { i, j: k, k: j });
        }
    }
    let mut doubles = 0;
    for (x, &(i, j)) in edges.iter().enumerate() {
        for &(k, l) in &edges[x + 1..] {
            if doubles < 4 && shared_vertices((i, j), (k, l)) == 0 {
                templates.push(Template::DoubleExcitation { i, j, k, l });
                doubles += 1;
            }
        }
    }
    let mut h = FermionOperator::new(m);
    for t in templates {
        let c = next();
        let c = if matches!(t, Template::Excitation { .. }) { c.signum() * (0.1 + c.abs()) } else { c };
        for term in t.expand(c) {
            h.add_term(term).unwrap();
        }
    }
    h
}

/// Hermitian operator on 1..=5 modes built from random even-length ladder
/// products and their adjoints.
fn even_operator() -> impl Strategy<Value = FermionOperator> {
    (1usize..=5).prop_flat_map(|m| {
        let factor = (0..m, any::<bool>()).prop_map(|(mode, dagger)| LadderOp { mode, dagger });
        let product = (1usize..=2)
            .prop_flat_map(move |half| prop::collection::vec(factor.clone(), 2 * half));
        prop::collection::vec((-1.0f64..1.0, product), 1..=6).prop_map(move |terms| {
            let mut h = FermionOperator::new(m);
            for (c, factors) in terms {
                let t = FermionTerm::new(c, factors);
                h.add_term(t.adjoint()).unwrap();
                h.add_term(t).unwrap();
            }
            h
        })
    })
}

/// Every simple cycle once, as a vertex sequence starting at its smallest
/// vertex.
fn simple_cycles(g: &ModeGraph) -> Vec<Vec<usize>> {
    fn extend(g: &ModeGraph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for u in g.neighbors(last) {
            if u == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if u > start && !path.contains(&u) {
                path.push(u);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.vertices() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

fn ladder(m: usize, op: LadderOp) -> FermionOperator {
    FermionOperator::from_terms(m, [FermionTerm::new(1.0, vec![op])]).unwrap()
}

/// `a_j^` on occupation basis states: `|n> -> (-1)^(n_0 + .. + n_{j-1}) |n + e_j>`.
fn creation_matrix(m: usize, j: usize) -> Matrix {
    let dim = 1 << m;
    let mut out = Matrix::zeros(dim, dim);
    for n in 0..dim {
        if n >> j & 1 == 0 {
            let below = (n & ((1 << j) - 1)).count_ones();
            let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
            out[(n | 1 << j, n)] = c(sign, 0.0);
        }
    }
    out
}

#[test]
fn jordan_wigner_acts_on_occupation_states() {
    for m in 1..=4 {
        for j in 0..m {
            let create = to_dense_matrix(&jordan_wigner(&ladder(m, LadderOp::create(j)))).unwrap();
            let annihilate =
                to_dense_matrix(&jordan_wigner(&ladder(m, LadderOp::annihilate(j)))).unwrap();
            let expected = creation_matrix(m, j);
            assert!(max_abs(&(create - &expected)) < TOL, "a{}^ on {m} modes", j + 1);
            assert!(max_abs(&(annihilate - expected.adjoint())) < TOL, "a{} on {m} modes", j + 1);
        }
    }
}

/// Basis change taking occupation vector `n` to the Fenwick-encoded vector
/// whose bit `q` is the parity of the modes stored at `q`.
fn fenwick_basis_change(tree: &FenwickTree) -> Matrix {
    let m = tree.modes();
    let dim = 1 << m;
    let mut u = Matrix::zeros(dim, dim);
    for n in 0..dim {
        let mut b = 0usize;
        for q in 0..m {
            let parity = tree.stored_modes(q).iter().filter(|&&k| n >> k & 1 == 1).count() % 2;
            b |= parity << q;
        }
        u[(b, n)] = c(1.0, 0.0);
    }
    u
}

#[test]
fn bravyi_kitaev_is_the_fenwick_basis_change_of_jordan_wigner() {
    for m in 1..=5 {
        let tree = FenwickTree::new(m);
        let u = fenwick_basis_change(&tree);
        assert!(max_abs(&(u.adjoint() * &u - Matrix::identity(1 << m, 1 << m))) < TOL);
        for j in 0..m {
            let op = ladder(m, LadderOp::create(j));
            let jw = to_dense_matrix(&jordan_wigner(&op)).unwrap();
            let bk = to_dense_matrix(&bravyi_kitaev(&op)).unwrap();
            assert!(max_abs(&(bk - &u * jw * u.adjoint())) < TOL, "a{}^ on {m} modes", j + 1);
        }
    }
}

#[test]
fn fenwick_sets_match_brute_force() {
    for m in 1..=16 {
        let tree = FenwickTree::new(m);
        for j in 0..m {
            let stored = tree.stored_modes(j);
            assert!(stored.contains(&j) && stored.iter().all(|&k| k <= j));

            let update: Vec<usize> = (0..m).filter(|&q| q != j && tree.stored_modes(q).contains(&j)).collect();
            assert_eq!(tree.update_set(j), update, "update set of {j} in {m}");

            let mut covered: Vec<usize> = tree.parity_set(j).iter().flat_map(|&q| tree.stored_modes(q)).collect();
            covered.sort_unstable();
            assert_eq!(covered, (0..j).collect::<Vec<_>>(), "parity set of {j} in {m}");

            let mut flipped: Vec<usize> = tree.flip_set(j).iter().flat_map(|&q| tree.stored_modes(q)).collect();
            flipped.sort_unstable();
            let below: Vec<usize> = stored.iter().copied().filter(|&k| k != j).collect();
            assert_eq!(flipped, below, "flip set of {j} in {m}");

            let parity: BTreeSet<usize> = tree.parity_set(j).into_iter().collect();
            let flip: BTreeSet<usize> = tree.flip_set(j).into_iter().collect();
            let rest: BTreeSet<usize> = tree.remainder_set(j).into_iter().collect();
            assert_eq!(rest, &parity - &flip);
        }
    }
}

#[test]
fn pair_creation_fills_both_modes_from_vacuum() {
    let g = ModeGraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let mut h = FermionOperator::new(4);
    for t in (Template::PairCreation { i: 0, j: 1 }).expand(1.0) {
        h.add_term(t).unwrap();
    }
    let image = bksf_transform(&h, &g).unwrap();
    let set = stabilizers(&g).unwrap();
    let vac = vacuum_state(&g, &set).unwrap();
    let created = apply_operator(&image, &vac).unwrap();
    assert!(created.norm() > 0.5);
    let created = created.normalize();
    let ops = edge_operators(&g).unwrap();
    for v in 0..4 {
        let occupation = expectation(&(&PauliOperator::identity(g.qubits()) - ops.b(v)).scale(0.5), &created).unwrap();
        let expected = if v < 2 { 1.0 } else { 0.0 };
        assert!((occupation - c(expected, 0.0)).norm() < TOL, "mode {}", v + 1);
    }
    for s in &set.operators {
        assert!((apply_operator(s, &created).unwrap() - &created).norm() < TOL);
    }
}
