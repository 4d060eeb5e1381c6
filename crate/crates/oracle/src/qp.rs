//! Dense convex quadratic programming.
//!
//! Solves
//! ```text
//!     minimize    (1/2) x' H x + q' x
//!     subject to  E x  = e
//!                 A x <= b
//! ```
//! with H diagonal positive semidefinite. Equalities are eliminated through a
//! rank-revealing SVD (they may be linearly dependent, as the stacked nodal
//! balance rows of a multi-scenario problem are); the reduced strictly convex
//! problem is then solved by the Goldfarb-Idnani dual active-set method,
//! which starts from the unconstrained minimizer and needs no feasible
//! starting point. Infeasibility surfaces as a Farkas-type certificate:
//! either an equality residual ray or a nonnegative combination of
//! inequality rows with a positive gap.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QpError {
    #[error("equalities are inconsistent: ||Ex - e|| = {residual:.3e}")]
    InfeasibleEqualities { residual: f64 },
    #[error(
        "inequalities are infeasible: row {row} is implied above its bound by the working set (gap {gap:.3e})"
    )]
    InfeasibleInequalities {
        row: usize,
        /// Nonnegative combination of working-set rows proving the conflict.
        combination: Vec<(usize, f64)>,
        gap: f64,
    },
    #[error("reduced Hessian is not positive definite (add curvature or bounds)")]
    SingularHessian,
    #[error("active-set iteration limit reached")]
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct QpSolution {
    pub x: DVector<f64>,
    pub objective: f64,
    /// Multipliers of the equality rows (least-norm when rows are dependent).
    pub eq_duals: DVector<f64>,
    /// Multipliers of the inequality rows (zero off the active set).
    pub ineq_duals: DVector<f64>,
    /// max of stationarity / feasibility / complementarity violations.
    pub kkt_residual: f64,
}

const RANK_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-9;

pub struct QpProblem {
    /// Diagonal of H.
    pub hessian_diag: DVector<f64>,
    pub linear: DVector<f64>,
    pub eq_mat: DMatrix<f64>,
    pub eq_rhs: DVector<f64>,
    pub ineq_mat: DMatrix<f64>,
    pub ineq_rhs: DVector<f64>,
}

impl QpProblem {
    pub fn solve(&self) -> Result<QpSolution, QpError> {
        let n = self.linear.len();
        let m_eq = self.eq_mat.nrows();

        // Rank-revealing reduction of the equalities. Padding with zero rows
        // keeps V square so the nullspace basis is complete for any shape.
        let padded_rows = m_eq.max(n);
        let mut padded = DMatrix::<f64>::zeros(padded_rows, n);
        padded.view_mut((0, 0), (m_eq, n)).copy_from(&self.eq_mat);
        let svd = padded.svd(true, true);
        let u = svd.u.as_ref().expect("svd with u");
        let vt = svd.v_t.as_ref().expect("svd with v_t");
        let sigma = &svd.singular_values;
        let smax = sigma.iter().cloned().fold(0.0, f64::max);
        let tol = RANK_TOL * smax.max(1.0);
        let rank = sigma.iter().filter(|s| **s > tol).count();

        let mut e_pad = DVector::<f64>::zeros(padded_rows);
        e_pad.rows_mut(0, m_eq).copy_from(&self.eq_rhs);

        // Least-norm particular solution x0 = V S+ U' e.
        let mut x0 = DVector::<f64>::zeros(n);
        for i in 0..rank {
            let coef = u.column(i).dot(&e_pad) / sigma[i];
            x0.axpy(coef, &vt.row(i).transpose(), 1.0);
        }
        let eq_resid = (&self.eq_mat * &x0 - &self.eq_rhs).norm();
        if eq_resid > 1e-7 * (1.0 + self.eq_rhs.norm()) {
            return Err(QpError::InfeasibleEqualities { residual: eq_resid });
        }

        let nz = n - rank;
        let z = DMatrix::<f64>::from_fn(n, nz, |i, j| vt[(rank + j, i)]);

        // Reduced objective. H is diagonal: H Z scales rows of Z.
        let hz = {
            let mut hz = z.clone();
            for i in 0..n {
                let h = self.hessian_diag[i];
                hz.row_mut(i).scale_mut(h);
            }
            hz
        };
        let mut h_red = z.transpose() * &hz;
        let g0 = DVector::from_fn(n, |i, _| self.hessian_diag[i] * x0[i]) + &self.linear;
        let q_red = z.transpose() * &g0;

        // H restricted to the nullspace must be PD for the dual method; a
        // zero-cost direction (all-zero quadratic coefficients) gets a small
        // regularizer and the KKT self-check below still applies.
        let scale = h_red.diagonal().amax().max(1.0);
        let mut chol = h_red.clone().cholesky();
        if chol.is_none() {
            for i in 0..nz {
                h_red[(i, i)] += 1e-10 * scale;
            }
            chol = h_red.clone().cholesky();
        }
        let chol = chol.ok_or(QpError::SingularHessian)?;
        let h_inv = chol.inverse();

        let a_red = &self.ineq_mat * &z;
        let b_red = DVector::from_fn(self.ineq_mat.nrows(), |i, _| {
            self.ineq_rhs[i] - self.ineq_mat.row(i).transpose().dot(&x0)
        });

        let (w, lambda) = goldfarb_idnani(&h_red, &h_inv, &q_red, &a_red, &b_red)?;

        let x = &x0 + &z * &w;
        let objective = 0.5
            * x.iter()
                .zip(self.hessian_diag.iter())
                .map(|(xi, h)| h * xi * xi)
                .sum::<f64>()
            + self.linear.dot(&x);

        // Equality duals from full-space stationarity: E' y = -(Hx + q + A'l).
        let grad = DVector::from_fn(n, |i, _| self.hessian_diag[i] * x[i]) + &self.linear;
        let rhs = -(&grad + self.ineq_mat.transpose() * &lambda);
        let mut y = DVector::<f64>::zeros(m_eq);
        for i in 0..rank {
            // y = U S+ V' rhs, truncated back to the real rows.
            let coef = vt.row(i).transpose().dot(&rhs) / sigma[i];
            for r in 0..m_eq {
                y[r] += coef * u[(r, i)];
            }
        }

        let kkt_residual = kkt_residual(self, &x, &y, &lambda);
        Ok(QpSolution {
            x,
            objective,
            eq_duals: y,
            ineq_duals: lambda,
            kkt_residual,
        })
    }
}

fn kkt_residual(p: &QpProblem, x: &DVector<f64>, y: &DVector<f64>, l: &DVector<f64>) -> f64 {
    let n = x.len();
    let grad = DVector::from_fn(n, |i, _| p.hessian_diag[i] * x[i]) + &p.linear;
    let stat = &grad + p.eq_mat.transpose() * y + p.ineq_mat.transpose() * l;
    let scale = 1.0 + grad.amax();
    let mut worst: f64 = stat.amax() / scale;
    let eq = &p.eq_mat * x - &p.eq_rhs;
    worst = worst.max(eq.amax() / (1.0 + p.eq_rhs.amax()));
    let slack = &p.ineq_rhs - &p.ineq_mat * x;
    for i in 0..slack.len() {
        worst = worst.max(-slack[i] / (1.0 + p.ineq_rhs[i].abs()));
        worst = worst.max((l[i] * slack[i]).abs() / scale);
        worst = worst.max(-l[i]);
    }
    worst
}

/// Goldfarb-Idnani dual active-set iteration on the reduced problem
///     min (1/2) w'Hw + q'w  s.t.  A w <= b,
/// H positive definite. Returns the minimizer and the inequality duals.
fn goldfarb_idnani(
    h: &DMatrix<f64>,
    h_inv: &DMatrix<f64>,
    q: &DVector<f64>,
    a: &DMatrix<f64>,
    b: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>), QpError> {
    let nz = q.len();
    let m = a.nrows();
    let mut w = -(h_inv * q);
    let mut active: Vec<usize> = Vec::new();
    let mut duals: Vec<f64> = Vec::new();
    let mut lambda = DVector::<f64>::zeros(m);

    let norm_row = |i: usize| -> f64 { a.row(i).norm().max(1.0) };

    let max_iter = 50 * (m + nz + 10);
    for _ in 0..max_iter {
        // Most violated inequality.
        let mut worst = FEAS_TOL;
        let mut p = None;
        for i in 0..m {
            if active.contains(&i) {
                continue;
            }
            let viol = (a.row(i).transpose().dot(&w) - b[i]) / norm_row(i);
            if viol > worst {
                worst = viol;
                p = Some(i);
            }
        }
        let Some(p) = p else {
            for (k, &i) in active.iter().enumerate() {
                lambda[i] = duals[k];
            }
            return Ok((w, lambda));
        };

        // Inner loop: take primal/dual steps until constraint p becomes
        // feasible (added to the working set) or infeasibility is proven.
        loop {
            let n_plus = a.row(p).transpose();
            let k = active.len();

            // Primal step direction z and dual direction r.
            let (z, r) = if k == 0 {
                (h_inv * &n_plus, DVector::<f64>::zeros(0))
            } else {
                let n_mat = DMatrix::<f64>::from_fn(nz, k, |i, j| a[(active[j], i)]);
                let m_n = h_inv * &n_mat;
                let s = n_mat.transpose() * &m_n;
                let rhs = n_mat.transpose() * (h_inv * &n_plus);
                let r = s
                    .clone()
                    .lu()
                    .solve(&rhs)
                    .ok_or(QpError::SingularHessian)?;
                let z = h_inv * &n_plus - &m_n * &r;
                (z, r)
            };

            let slope = n_plus.dot(&z);
            let s_p = n_plus.dot(&w) - b[p];

            // Partial (dual) step length from the blocking active constraint.
            let mut t1 = f64::INFINITY;
            let mut blocker = None;
            for (j, &rj) in r.iter().enumerate() {
                if rj > FEAS_TOL {
                    let t = duals[j] / rj;
                    if t < t1 {
                        t1 = t;
                        blocker = Some(j);
                    }
                }
            }

            if slope <= 1e-12 * n_plus.norm_squared().max(1.0) {
                // a_p lies in the span of the working-set normals; no primal
                // progress is possible toward satisfying p.
                if blocker.is_none() {
                    // a_p = sum r_i a_i with every r_i <= 0, so for feasible x:
                    // a_p'x >= sum r_i b_i = a_p'w = b_p + s_p > b_p. Farkas.
                    let combination = active
                        .iter()
                        .zip(r.iter())
                        .map(|(&i, &ri)| (i, -ri))
                        .collect();
                    return Err(QpError::InfeasibleInequalities {
                        row: p,
                        combination,
                        gap: s_p,
                    });
                }
                // Pure dual step: drop the blocker, stay at w.
                let j = blocker.unwrap();
                for (jj, d) in duals.iter_mut().enumerate() {
                    *d -= t1 * r[jj];
                }
                active.remove(j);
                duals.remove(j);
                continue;
            }

            // Full step reaches the boundary of p.
            let t2 = s_p / slope;
            let t = t1.min(t2);
            w.axpy(-t, &z, 1.0);
            for (jj, d) in duals.iter_mut().enumerate() {
                *d -= t * r[jj];
            }

            if t2 <= t1 {
                active.push(p);
                duals.push(t);
                break;
            } else {
                let j = blocker.expect("t1 finite implies a blocker");
                active.remove(j);
                duals.remove(j);
            }
        }
    }
    Err(QpError::IterationLimit)
}
