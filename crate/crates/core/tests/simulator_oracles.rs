//! Statevector results checked against a dense-matrix circuit built from
//! scratch, and optimizer results against grid search.

use std::f64::consts::{PI, TAU};

use dcqaoa::graph::{random_graph, toy_graph};
use dcqaoa::qaoa::{
    apply_cost_layer, apply_mixer_layer, build_initial_state, optimize_params, qaoa_expectation,
    sample_solution_map, AnsatzParams, OptimizerConfig,
};
use dcqaoa::solution::expectation_value;
use dcqaoa::{CutAssignment, Graph};
use num_complex::Complex64;

type Matrix = Vec<Vec<Complex64>>;

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Expectation from explicit matrices: H on every qubit, then per layer the
/// diagonal cost unitary and the tensor product of `R_X(2 beta)`.
fn dense_expectation(g: &Graph, layers: &[(f64, f64)]) -> f64 {
    let n = g.node_count();
    let dim = 1 << n;
    let cut = |b: usize| g.cut_size(&CutAssignment::from_index(b as u64, n)).unwrap() as f64;
    let h = 1.0 / 2f64.sqrt();
    let hadamard: Matrix = vec![
        vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
    ];
    let tensor = |m: &Matrix| (1..n).fold(m.clone(), |acc, _| kron(&acc, m));
    let mut state: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); dim];
    state[0] = Complex64::new(1.0, 0.0);
    let apply = |m: &Matrix, s: &[Complex64]| -> Vec<Complex64> {
        (0..dim).map(|i| (0..dim).map(|j| m[i][j] * s[j]).sum()).collect()
    };
    state = apply(&tensor(&hadamard), &state);
    for &(gamma, beta) in layers {
        let mut cost = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (b, row) in cost.iter_mut().enumerate() {
            row[b] = Complex64::from_polar(1.0, -gamma * cut(b));
        }
        let (s, c) = beta.sin_cos();
        let rx: Matrix = vec![
            vec![Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
            vec![Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
        ];
        state = apply(&matmul(&tensor(&rx), &cost), &state);
    }
    state.iter().enumerate().map(|(b, a)| a.norm_sqr() * cut(b)).sum()
}

fn grid_max(g: &Graph, steps: usize) -> f64 {
    let mut best = f64::MIN;
    for i in 0..steps {
        for j in 0..steps {
            let gamma = TAU * i as f64 / steps as f64;
            let beta = PI * j as f64 / steps as f64;
            let p = AnsatzParams::new(vec![(gamma, beta)]).unwrap();
            best = best.max(qaoa_expectation(g, &p).unwrap());
        }
    }
    best
}

#[test]
fn matches_dense_matrix_simulation() {
    let graphs = [Graph::complete(2), Graph::complete(3), toy_graph()];
    let angles = [
        vec![(0.3, 0.2)],
        vec![(1.1, 2.9), (4.0, 0.7)],
        vec![(5.5, 0.1), (0.2, 1.4), (2.2, 2.2)],
    ];
    for g in &graphs {
        for layers in &angles {
            let fast = qaoa_expectation(g, &AnsatzParams::new(layers.clone()).unwrap()).unwrap();
            let dense = dense_expectation(g, layers);
            assert!((fast - dense).abs() < 1e-10, "{fast} vs {dense}");
        }
    }
}

#[test]
fn k2_depth_one_optimum_is_one() {
    let g = Graph::complete(2);
    let grid = grid_max(&g, 100);
    assert!(grid > 0.99 && grid <= 1.0 + 1e-12, "grid oracle {grid}");
    let r = optimize_params(&g, 1, &OptimizerConfig::default(), 7).unwrap();
    assert!((r.expectation - 1.0).abs() < 1e-6 || r.expectation >= 0.99);
    let dense = dense_expectation(&g, r.params.layers());
    assert!((dense - r.expectation).abs() < 1e-9);
    assert!(dense >= 0.99);
}

#[test]
fn triangle_depth_one_and_two() {
    let g = Graph::complete(3);
    let grid = grid_max(&g, 100);
    let p1 = optimize_params(&g, 1, &OptimizerConfig::default(), 1).unwrap().expectation;
    assert!(p1 > 1.5 && p1 <= 2.0, "{p1}");
    assert!(p1 >= grid - 1e-3, "optimizer {p1} below grid {grid}");
    let p2 = optimize_params(&g, 2, &OptimizerConfig::default(), 1).unwrap().expectation;
    assert!(p2 >= p1 - 1e-6, "p2 {p2} < p1 {p1}");
}

#[test]
fn deeper_circuits_do_not_lose_expectation() {
    let g = random_graph(6, 0.5, 3).unwrap();
    let cfg = OptimizerConfig::default();
    let mut last = f64::MIN;
    for p in 1..=3 {
        let e = optimize_params(&g, p, &cfg, 17).unwrap().expectation;
        assert!(e >= last - 1e-6, "p={p}: {e} < {last}");
        last = e;
    }
}

#[test]
fn norm_survives_eight_layers() {
    let g = random_graph(8, 0.4, 9).unwrap();
    let mut s = build_initial_state(8).unwrap();
    for layer in 0..8 {
        let x = layer as f64;
        s = apply_cost_layer(s, &g, 0.3 + 0.7 * x).unwrap();
        s = apply_mixer_layer(s, 0.11 + 0.4 * x);
    }
    assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
}

#[test]
fn sampled_expectation_matches_exact() {
    let g = toy_graph();
    let params = AnsatzParams::new(vec![(0.9, 0.4), (2.1, 0.3)]).unwrap();
    let exact = qaoa_expectation(&g, &params).unwrap();
    let shots = 100_000;
    let m = sample_solution_map(&g, &params, shots, 2024).unwrap();
    let mean = expectation_value(&g, &m).unwrap();
    let var: f64 = m
        .iter()
        .map(|(a, c)| c as f64 * (g.cut_size(a).unwrap() as f64 - mean).powi(2))
        .sum::<f64>()
        / shots as f64;
    let se = (var / shots as f64).sqrt();
    assert!((mean - exact).abs() <= 3.0 * se, "{mean} vs {exact} (se {se})");
}
