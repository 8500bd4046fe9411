/// Outcome of a bounded Nelder-Mead run.
#[derive(Debug, Clone, PartialEq)]
pub struct Refined {
    pub point: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Minimizes `f` from `start` (whose value is already known) inside the box
/// `bounds`, spending at most `budget` evaluations. Points are clamped to the box.
pub fn nelder_mead<F>(
    mut f: F,
    start: &[f64],
    start_value: f64,
    bounds: (f64, f64),
    step: f64,
    budget: usize,
) -> Refined
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let (lo, hi) = bounds;
    let clamp = |x: Vec<f64>| x.into_iter().map(|v| v.clamp(lo, hi)).collect::<Vec<_>>();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> Option<f64> {
        if *evals >= budget {
            return None;
        }
        *evals += 1;
        Some(f(x))
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(start.to_vec(), start_value)];
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] = if x[i] + step <= hi { x[i] + step } else { x[i] - step };
        let x = clamp(x);
        match eval(&x, &mut evals) {
            Some(v) => simplex.push((x, v)),
            None => return best_of(simplex, evals),
        }
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if (simplex[n].1 - simplex[0].1).abs() <= 1e-12 * (1.0 + simplex[0].1.abs()) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| {
            clamp(centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect())
        };

        let xr = along(1.0);
        let Some(fr) = eval(&xr, &mut evals) else { break };
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let Some(fe) = eval(&xe, &mut evals) else {
                simplex[n] = (xr, fr);
                break;
            };
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, t) = if fr < simplex[n].1 { (along(0.5), fr) } else { (along(-0.5), simplex[n].1) };
        let Some(fc) = eval(&xc, &mut evals) else { break };
        if fc < t {
            simplex[n] = (xc, fc);
            continue;
        }
        // shrink towards the best vertex
        let best = simplex[0].0.clone();
        for k in 1..=n {
            let x = clamp(best.iter().zip(&simplex[k].0).map(|(b, v)| b + 0.5 * (v - b)).collect());
            match eval(&x, &mut evals) {
                Some(v) => simplex[k] = (x, v),
                None => return best_of(simplex, evals),
            }
        }
    }
    best_of(simplex, evals)
}

fn best_of(simplex: Vec<(Vec<f64>, f64)>, evals: usize) -> Refined {
    let (point, value) = simplex.into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    Refined { point, value, evals }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn finds_rosenbrock_minimum() {
        let start = [-1.2, 1.0];
        let r = nelder_mead(rosenbrock, &start, rosenbrock(&start), (-5.0, 5.0), 0.5, 5000);
        assert!(r.value < 1e-8, "{r:?}");
        assert!((r.point[0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn respects_budget_and_box() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 3.0).powi(2)).sum::<f64>();
        let start = [0.0; 4];
        let r = nelder_mead(f, &start, f(&start), (-1.0, 1.0), 0.2, 37);
        assert!(r.evals <= 37);
        assert!(r.point.iter().all(|v| (-1.0..=1.0).contains(v)));
        assert!(r.value <= f(&start));
    }

    #[test]
    fn zero_budget_returns_start() {
        let r = nelder_mead(|x| x[0] * x[0], &[0.5], 0.25, (-1.0, 1.0), 0.1, 0);
        assert_eq!(r, Refined { point: vec![0.5], value: 0.25, evals: 0 });
    }
}
