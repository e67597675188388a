//! Derivative-free minimization by the Nelder–Mead simplex method.

#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    /// Edge length of the initial simplex along each axis.
    pub step: f64,
    pub max_evals: usize,
    /// Stop once the best value drops below this.
    pub target: f64,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            step: 0.5,
            max_evals: 2000,
            target: 0.0,
            ftol: 1e-30,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let v0 = eval(x0, &mut evals);
        simplex.push((x0.to_vec(), v0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if evals >= self.max_evals || best <= self.target || (worst - best).abs() <= self.ftol {
                break;
            }
            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n].0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };
            let xr = along(alpha);
            let vr = eval(&xr, &mut evals);
            if vr < simplex[0].1 {
                let xe = along(gamma);
                let ve = eval(&xe, &mut evals);
                simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
                continue;
            }
            if vr < simplex[n - 1].1 {
                simplex[n] = (xr, vr);
                continue;
            }
            let (xc, vc) = if vr < worst {
                let xc = along(rho);
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            } else {
                let xc = along(-rho);
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            };
            if vc < vr.min(worst) {
                simplex[n] = (xc, vc);
                continue;
            }
            let x_best = simplex[0].0.clone();
            for item in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = x_best
                    .iter()
                    .zip(&item.0)
                    .map(|(b, xi)| b + sigma * (xi - b))
                    .collect();
                let v = eval(&x, &mut evals);
                *item = (x, v);
            }
        }
        let (x, value) = simplex.swap_remove(0);
        Minimum { x, value, evals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let nm = NelderMead {
            max_evals: 5000,
            ..Default::default()
        };
        let m = nm.minimize(|x| (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0]);
        assert!(m.value < 1e-12, "{m:?}");
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] + 2.0).abs() < 1e-5);
    }

    #[test]
    fn rosenbrock() {
        let nm = NelderMead {
            max_evals: 20000,
            ..Default::default()
        };
        let m = nm.minimize(|x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2), &[-1.2, 1.0]);
        assert!(m.value < 1e-10, "{m:?}");
    }

    #[test]
    fn respects_budget_and_target() {
        let nm = NelderMead {
            max_evals: 50,
            ..Default::default()
        };
        let m = nm.minimize(|x| x.iter().map(|v| v * v).sum(), &[3.0; 4]);
        assert!(m.evals <= 50 + 4 + 2);
        let nm = NelderMead {
            target: 1.0,
            ..Default::default()
        };
        let m = nm.minimize(|x| x[0] * x[0], &[10.0]);
        assert!(m.value <= 1.0);
    }
}
