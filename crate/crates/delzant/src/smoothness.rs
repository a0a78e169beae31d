//! Stratified rank analysis of the defining systems.
//!
//! The closure of C(V) (equivalently the closure of D(V)) is a smooth
//! submanifold exactly when the system Jacobian has full rank n-k at every
//! point of the zero locus, including all boundary strata. Strata are
//! decided exactly - an equation on a stratum is trivially satisfied,
//! infeasible, or an active monomial relation - and only the rank itself is
//! numeric. On active strata the equations are affine-linear in log
//! coordinates, so the solution set is sampled from an exact particular
//! solution plus kernel directions.

use crate::lattice::{integer_kernel_basis, IntMatrix};
use crate::polytope::DelzantPolytope;
use crate::subspace::{
    build_system, jacobian, ortho_basis, AffineSubspace, ExponentSystem, Side, SubspaceError,
};
use crate::tol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Count of singular values above `RANK_REL * max(sigma_max, 1)`.
pub fn numeric_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol::RANK_REL * max_sv.max(1.0);
    svd.singular_values.iter().filter(|&&s| s > cutoff).count()
}

/// Rank of a complex matrix via the real embedding [[Re,-Im],[Im,Re]],
/// whose singular values are those of the original, doubled.
pub fn numeric_rank_complex(m: &DMatrix<Complex64>) -> usize {
    let (r, c) = m.shape();
    let emb = DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let v = m[(i % r, j % c)];
        match (i >= r, j >= c) {
            (false, false) | (true, true) => v.re,
            (false, true) => -v.im,
            (true, false) => v.im,
        }
    });
    let svd = emb.svd(false, false);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol::RANK_REL * max_sv.max(1.0);
    let count = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    count / 2
}

/// How one equation behaves on a stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationOnStratum {
    /// Both monomials vanish: 0 = 0.
    TriviallySatisfied,
    /// Exactly one monomial vanishes: 0 = positive, no solutions.
    Infeasible,
    /// Neither vanishes: a relation among the surviving coordinates.
    Active,
}

/// Stratum-wide status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumStatus {
    Infeasible,
    TriviallySatisfied,
    Active,
}

#[derive(Debug, Clone)]
pub struct StratumReduction {
    /// Coordinates forced to zero.
    pub vanishing: Vec<usize>,
    pub equations: Vec<EquationOnStratum>,
    pub status: StratumStatus,
}

/// Classify every equation of `sys` on the stratum where the coordinates in
/// `vanishing` are zero and the rest are positive.
pub fn stratum_reduce(sys: &ExponentSystem, vanishing: &[usize]) -> StratumReduction {
    let in_s = |i: usize| vanishing.contains(&i);
    let equations: Vec<EquationOnStratum> = (0..sys.num_equations())
        .map(|j| {
            let pos_vanishes = sys.pos_indices(j).any(in_s);
            let neg_vanishes = sys.neg_indices(j).any(in_s);
            match (pos_vanishes, neg_vanishes) {
                (true, true) => EquationOnStratum::TriviallySatisfied,
                (false, false) => EquationOnStratum::Active,
                _ => EquationOnStratum::Infeasible,
            }
        })
        .collect();
    let status = if equations.contains(&EquationOnStratum::Infeasible) {
        StratumStatus::Infeasible
    } else if equations.contains(&EquationOnStratum::Active) {
        StratumStatus::Active
    } else {
        StratumStatus::TriviallySatisfied
    };
    StratumReduction {
        vanishing: vanishing.to_vec(),
        equations,
        status,
    }
}

/// Rank evidence for one stratum of one vertex system.
#[derive(Debug, Clone)]
pub struct StratumReport {
    pub vanishing: Vec<usize>,
    pub status: StratumStatus,
    /// Equations that stay active on this stratum.
    pub active_equations: Vec<usize>,
    /// Dimension of the log-linear solution set (sampled coordinates only).
    pub solution_dim: usize,
    pub rank_min: usize,
    pub rank_max: usize,
    pub samples: usize,
    /// A sampled point witnessing `rank_min` (facet values / moduli).
    pub witness: Vec<f64>,
    /// True when every sample had rank n-k.
    pub full_rank: bool,
}

impl StratumReport {
    fn empty(reduction: &StratumReduction) -> StratumReport {
        StratumReport {
            vanishing: reduction.vanishing.clone(),
            status: StratumStatus::Infeasible,
            active_equations: Vec::new(),
            solution_dim: 0,
            rank_min: 0,
            rank_max: 0,
            samples: 0,
            witness: Vec::new(),
            full_rank: true,
        }
    }
}

/// Analyze every stratum of a vertex system. Returns one report per
/// feasible or infeasible stratum (2^n in total).
pub fn analyze_system(sys: &ExponentSystem, samples: usize, rng: &mut ChaCha8Rng) -> Vec<StratumReport> {
    let n = sys.dim();
    let target = sys.num_equations();
    let mut reports = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let vanishing: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let reduction = stratum_reduce(sys, &vanishing);
        if reduction.status == StratumStatus::Infeasible {
            reports.push(StratumReport::empty(&reduction));
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        let active: Vec<usize> = reduction
            .equations
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == EquationOnStratum::Active)
            .map(|(j, _)| j)
            .collect();

        // log-linear system over the free coordinates:
        // sum_i m_{j,i} y_i = log c_j  (active equations only involve free
        // coordinates by construction)
        let a = DMatrix::from_fn(active.len(), free.len(), |r, c| {
            sys.exponents[active[r]][free[c]] as f64
        });
        let b = nalgebra::DVector::from_fn(active.len(), |r, _| sys.log_constants[active[r]]);
        let (particular, solvable) = if active.is_empty() {
            (vec![0.0; free.len()], true)
        } else {
            let svd = a.clone().svd(true, true);
            let y = svd.solve(&b, 1e-12).expect("svd solve");
            let residual = (&a * &y - &b).norm();
            (y.iter().cloned().collect(), residual < tol::LOGLIN_RESIDUAL)
        };
        if !solvable {
            reports.push(StratumReport {
                status: StratumStatus::Infeasible,
                ..StratumReport::empty(&reduction)
            });
            continue;
        }

        // exact kernel of the integer exponent block spans the solution set
        let kernel: Vec<Vec<f64>> = if active.is_empty() {
            (0..free.len())
                .map(|i| {
                    let mut e = vec![0.0; free.len()];
                    e[i] = 1.0;
                    e
                })
                .collect()
        } else {
            let rows: Vec<Vec<i64>> = active
                .iter()
                .map(|&j| free.iter().map(|&i| sys.exponents[j][i]).collect())
                .collect();
            integer_kernel_basis(&IntMatrix::from_rows(&rows))
                .iter()
                .map(|v| v.to_i64().iter().map(|&x| x as f64).collect())
                .collect()
        };
        let solution_dim = kernel.len();

        let mut rank_min = usize::MAX;
        let mut rank_max = 0;
        let mut witness = Vec::new();
        let total = samples.max(1);
        // the log-linear solve works in y_i = log(arg_i); arguments carry
        // the side's scale factor, so w_i = exp(y_i) / scale
        let log_scale = sys.arg_scale().ln();
        for s in 0..total {
            let mut y = particular.clone();
            if s > 0 {
                for dir in &kernel {
                    let c = rng.gen_range(-1.5..1.5);
                    for (yi, di) in y.iter_mut().zip(dir) {
                        *yi += c * di;
                    }
                }
            }
            let mut w = vec![0.0; n];
            for (slot, &i) in free.iter().enumerate() {
                w[i] = (y[slot] - log_scale).exp();
            }
            let jac = jacobian(sys, &w);
            let rank = numeric_rank(&jac);
            if rank < rank_min {
                rank_min = rank;
                witness = w.clone();
            }
            rank_max = rank_max.max(rank);
        }

        reports.push(StratumReport {
            vanishing,
            status: reduction.status,
            active_equations: active,
            solution_dim,
            rank_min,
            rank_max,
            samples: total,
            witness,
            full_rank: rank_min == target && rank_max == target,
        });
    }
    reports
}

/// True when every sampled (nonempty) stratum in a report list is full rank.
pub fn numeric_rank_defect_free(reports: &[StratumReport]) -> bool {
    reports.iter().all(|r| r.samples == 0 || r.full_rank)
}

/// A specific rank deficiency: where it happened.
#[derive(Debug, Clone)]
pub struct DeficiencyWitness {
    pub vertex: usize,
    pub vanishing: Vec<usize>,
    pub point: Vec<f64>,
    pub rank: usize,
    pub expected: usize,
}

/// Full decision record for one subspace on one polytope.
#[derive(Debug, Clone)]
pub struct SmoothnessVerdict {
    /// True iff every nonempty stratum at every vertex is full-rank.
    pub overall: bool,
    pub per_vertex: Vec<(usize, Vec<StratumReport>)>,
    pub witness: Option<DeficiencyWitness>,
    /// f-side and g-side numeric ranks agreed at every sampled point.
    pub rank_agreement: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisConfig {
    pub samples: usize,
    pub seed: u64,
    pub side: AnalysisSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisSide {
    F,
    G,
    Both,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            samples: tol::STRATUM_SAMPLES,
            seed: 0,
            side: AnalysisSide::Both,
        }
    }
}

/// Analyze one vertex of the polytope for the given subspace.
pub fn analyze_vertex(
    polytope: &DelzantPolytope,
    vertex: usize,
    v: &AffineSubspace,
    config: &AnalysisConfig,
) -> Vec<StratumReport> {
    let chart = polytope.vertex_chart(vertex);
    let basis = ortho_basis(v);
    let side = match config.side {
        AnalysisSide::F => Side::ComplexF,
        _ => Side::PolytopeG,
    };
    let sys = build_system(&chart, v, &basis, side);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ vertex as u64);
    analyze_system(&sys, config.samples, &mut rng)
}

/// Decide whether the closure of C(V) is a torus-equivariantly embedded
/// toric manifold - equivalently whether the closure of D(V) is a
/// submanifold with corners. Analyzes the g-side at every vertex and, for
/// `AnalysisSide::Both`, re-checks every sampled point against the f-side
/// under the |z_i| = e L_i correspondence.
pub fn is_embedded_toric(
    polytope: &DelzantPolytope,
    v: &AffineSubspace,
    config: &AnalysisConfig,
) -> Result<SmoothnessVerdict, SubspaceError> {
    let n = polytope.dim();
    if v.dim_ambient() != n {
        return Err(SubspaceError::InvalidSubspace(format!(
            "subspace lives in dimension {}, polytope in {n}",
            v.dim_ambient()
        )));
    }
    let basis = ortho_basis(v);
    let expected = basis.len();
    let mut per_vertex = Vec::new();
    let mut witness = None;
    let mut rank_agreement = true;
    let mut overall = true;

    for vertex in 0..polytope.vertices().len() {
        let chart = polytope.vertex_chart(vertex);
        let g_sys = build_system(&chart, v, &basis, Side::PolytopeG);
        let f_sys = build_system(&chart, v, &basis, Side::ComplexF);
        let primary = match config.side {
            AnalysisSide::F => &f_sys,
            _ => &g_sys,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (vertex as u64).wrapping_mul(0x9e37));
        let reports = analyze_system(primary, config.samples, &mut rng);

        if config.side == AnalysisSide::Both {
            for report in &reports {
                if report.samples == 0 {
                    continue;
                }
                // |z_i| = e L_i: the f-side point has moduli e * w
                let z: Vec<f64> = report.witness.iter().map(|&w| std::f64::consts::E * w).collect();
                let rank_f = numeric_rank(&jacobian(&f_sys, &z));
                let rank_g = numeric_rank(&jacobian(&g_sys, &report.witness));
                if rank_f != rank_g {
                    rank_agreement = false;
                }
            }
        }

        for report in &reports {
            if report.samples > 0 && !report.full_rank {
                overall = false;
                if witness.is_none() {
                    witness = Some(DeficiencyWitness {
                        vertex,
                        vanishing: report.vanishing.clone(),
                        point: report.witness.clone(),
                        rank: report.rank_min,
                        expected,
                    });
                }
            }
        }
        per_vertex.push((vertex, reports));
    }

    Ok(SmoothnessVerdict {
        overall,
        per_vertex,
        witness,
        rank_agreement,
    })
}
