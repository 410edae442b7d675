/// Result of a single simplex run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Nelder–Mead minimization with a hard cap on objective evaluations.
///
/// The initial simplex is `x0` plus one vertex per axis offset by `step[i]`.
/// Stops once the spread of vertex values drops below `ftol` or the budget
/// runs out; with `budget == 1` only `x0` is evaluated.
pub fn minimize(
    f: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    step: &[f64],
    budget: usize,
    ftol: f64,
) -> SimplexResult {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let dim = x0.len();
    let budget = budget.max(1);
    let mut evals = 0usize;
    let mut eval = |x: &[f64]| {
        evals += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(x0);
    simplex.push((x0.to_vec(), v0));
    for i in 0..dim {
        if simplex.len() >= budget {
            break;
        }
        let mut x = x0.to_vec();
        x[i] += step[i];
        let v = eval(&x);
        simplex.push((x, v));
    }
    let best_of = |s: &[(Vec<f64>, f64)]| {
        s.iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .cloned()
            .expect("simplex is never empty")
    };
    if simplex.len() < dim + 1 {
        let (x, value) = best_of(&simplex);
        return SimplexResult {
            x,
            value,
            evaluations: simplex.len(),
            converged: false,
        };
    }

    let mut converged = false;
    let mut used = dim + 1;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.abs() < ftol {
            converged = true;
            break;
        }
        if used >= budget {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
            .collect();
        let toward = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, w)| c + t * (c - w)).collect()
        };

        let worst = simplex[dim].clone();
        let xr = toward(REFLECT, &worst.0);
        let fr = eval(&xr);
        used += 1;

        if fr < simplex[0].1 {
            if used < budget {
                let xe = toward(EXPAND, &worst.0);
                let fe = eval(&xe);
                used += 1;
                simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else {
                simplex[dim] = (xr, fr);
            }
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        if used >= budget {
            if fr < worst.1 {
                simplex[dim] = (xr, fr);
            }
            break;
        }
        // Outside contraction when the reflection beat the worst vertex,
        // inside contraction otherwise.
        let (xc, fc) = if fr < worst.1 {
            let xc = toward(CONTRACT, &worst.0);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = toward(-CONTRACT, &worst.0);
            let fc = eval(&xc);
            (xc, fc)
        };
        used += 1;
        if fc < worst.1.min(fr) {
            simplex[dim] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            if used >= budget {
                break;
            }
            let x: Vec<f64> = best
                .iter()
                .zip(&vertex.0)
                .map(|(b, v)| b + SHRINK * (v - b))
                .collect();
            let v = eval(&x);
            used += 1;
            *vertex = (x, v);
        }
    }

    let (x, value) = best_of(&simplex);
    SimplexResult {
        x,
        value,
        evaluations: evals,
        converged,
    }
}
