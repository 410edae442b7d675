use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default qubit cap for dense simulation (2^20 amplitudes, 16 MiB).
pub const MAX_QUBITS: usize = 20;

/// Dense state over `n` qubits. Basis index bit `n-1-j` holds node
/// position `j`, so position 0 is the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

/// Cut size of every basis state of a graph, computed once per graph.
#[derive(Debug, Clone)]
pub struct CutTable {
    qubits: usize,
    cuts: Vec<u32>,
}

impl CutTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.node_count();
        check_qubits(n)?;
        let dim = 1usize << n;
        let masks: Vec<(usize, usize)> = g
            .edge_positions()
            .into_iter()
            .map(|(a, b)| (1 << (n - 1 - a), 1 << (n - 1 - b)))
            .collect();
        let cuts = (0..dim)
            .map(|b| {
                masks
                    .iter()
                    .filter(|&&(ma, mb)| (b & ma == 0) != (b & mb == 0))
                    .count() as u32
            })
            .collect();
        Ok(Self { qubits: n, cuts })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn cuts(&self) -> &[u32] {
        &self.cuts
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Contract("a statevector needs at least one qubit".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooLarge {
            what: "statevector simulation",
            nodes: n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

impl Statevector {
    /// Uniform superposition (Hadamard on every qubit of `|0...0>`).
    pub fn uniform(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            qubits: n,
            amps: vec![a; dim],
        })
    }

    /// Every amplitude 1: the uniform superposition scaled by `2^(n/2)`.
    /// Exactly representable, so zero-angle circuits stay exact.
    pub(crate) fn unnormalized_uniform(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            qubits: n,
            amps: vec![Complex64::new(1.0, 0.0); 1 << n],
        })
    }

    pub(crate) fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a /= norm;
        }
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits: n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::Contract(format!("{dim} amplitudes is not a qubit register")));
        }
        let qubits = dim.trailing_zeros() as usize;
        check_qubits(qubits)?;
        Ok(Self { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Multiplies basis amplitude `b` by `exp(-i gamma C(b))`.
    pub fn apply_cost(&mut self, table: &CutTable, gamma: f64) {
        assert_eq!(table.qubits, self.qubits, "cut table does not match register");
        for (amp, &c) in self.amps.iter_mut().zip(&table.cuts) {
            *amp *= Complex64::from_polar(1.0, -gamma * c as f64);
        }
    }

    /// `R_X(2 beta)` on every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let off = Complex64::new(0.0, -s);
        let dim = self.amps.len();
        for q in 0..self.qubits {
            let mask = 1usize << q;
            for i in (0..dim).filter(|i| i & mask == 0) {
                let a0 = self.amps[i];
                let a1 = self.amps[i | mask];
                self.amps[i] = a0 * c + a1 * off;
                self.amps[i | mask] = a0 * off + a1 * c;
            }
        }
    }

    /// `sum_b |amp(b)|^2 C(b) / sum_b |amp(b)|^2`.
    pub fn expected_cut(&self, table: &CutTable) -> f64 {
        let (weighted, norm) = self
            .amps
            .iter()
            .zip(&table.cuts)
            .fold((0.0, 0.0), |(w, z), (a, &c)| {
                let p = a.norm_sqr();
                (w + p * c as f64, z + p)
            });
        weighted / norm
    }
}

pub fn build_initial_state(n: usize) -> Result<Statevector> {
    Statevector::uniform(n)
}

pub fn apply_cost_layer(mut s: Statevector, g: &Graph, gamma: f64) -> Result<Statevector> {
    let table = CutTable::new(g)?;
    if table.qubits != s.qubits {
        return Err(Error::Contract("graph size does not match the register".into()));
    }
    s.apply_cost(&table, gamma);
    Ok(s)
}

pub fn apply_mixer_layer(mut s: Statevector, beta: f64) -> Statevector {
    s.apply_mixer(beta);
    s
}
