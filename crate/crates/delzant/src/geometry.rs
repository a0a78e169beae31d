//! Guillemin potential G, the Legendre transform Phi = grad G and its
//! Newton inverse, the chart transforms Psi_l / Psi-bar_l, D(V) curve
//! tracing in two dimensions, and curve intersection search.

use crate::lattice;
use crate::polytope::{rational_to_f64, DelzantPolytope, Location, VertexChart};
use crate::smoothness::{is_embedded_toric, AnalysisConfig};
use crate::subspace::{build_system, eval_system, ortho_basis, AffineSubspace, Side};
use crate::tol;
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("NotInterior: facet {facet} has value {value}")]
    NotInterior { facet: usize, value: f64 },
    #[error("NoConvergence({0}): Newton did not reach tolerance")]
    NoConvergence(usize),
    #[error("OnExcludedFacet: facet {0} value must stay positive for this chart")]
    OnExcludedFacet(usize),
    #[error("Unsupported: {0}")]
    Unsupported(String),
}

fn interior_facet_values(
    polytope: &DelzantPolytope,
    xi: &[f64],
) -> Result<Vec<f64>, GeometryError> {
    let values = polytope.facet_values(xi);
    for (j, &l) in values.iter().enumerate() {
        if l <= 0.0 {
            return Err(GeometryError::NotInterior { facet: j, value: l });
        }
    }
    Ok(values)
}

/// Guillemin potential G(xi) = sum_j L_j log L_j on the open polytope.
pub fn potential_value(polytope: &DelzantPolytope, xi: &[f64]) -> Result<f64, GeometryError> {
    let values = interior_facet_values(polytope, xi)?;
    Ok(values.iter().map(|&l| l * l.ln()).sum())
}

/// The Legendre transform Phi(xi) = grad G(xi), with
/// dG/dxi_i = sum_j u_{j,i} (1 + log L_j(xi)).
pub fn potential_grad(polytope: &DelzantPolytope, xi: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let values = interior_facet_values(polytope, xi)?;
    let n = polytope.dim();
    let mut grad = vec![0.0; n];
    for (facet, &l) in polytope.facets().iter().zip(&values) {
        let w = 1.0 + l.ln();
        for (gi, u) in grad.iter_mut().zip(facet.normal.entries()) {
            *gi += i64::try_from(u).unwrap() as f64 * w;
        }
    }
    Ok(grad)
}

/// Hessian of G: sum_j u_j u_j^t / L_j. Positive definite on the interior.
pub fn potential_hessian(
    polytope: &DelzantPolytope,
    xi: &[f64],
) -> Result<DMatrix<f64>, GeometryError> {
    let values = interior_facet_values(polytope, xi)?;
    let n = polytope.dim();
    let mut h = DMatrix::zeros(n, n);
    for (facet, &l) in polytope.facets().iter().zip(&values) {
        let u: Vec<f64> = facet
            .normal
            .entries()
            .iter()
            .map(|x| i64::try_from(x).unwrap() as f64)
            .collect();
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] += u[i] * u[j] / l;
            }
        }
    }
    Ok(h)
}

/// Largest step along `d` from `xi` keeping every facet value positive,
/// clamped by the fraction-to-boundary rule.
fn boundary_step(polytope: &DelzantPolytope, xi: &[f64], d: &[f64]) -> f64 {
    let mut alpha = 1.0 / tol::FRACTION_TO_BOUNDARY;
    for facet in polytope.facets() {
        let du = lattice::dot_f64(facet.normal.entries(), d);
        if du < 0.0 {
            alpha = alpha.min(facet.value_f64(xi) / -du);
        }
    }
    (tol::FRACTION_TO_BOUNDARY * alpha).min(1.0)
}

/// Maximizer of sum_j log L_j, by Newton from the vertex centroid.
pub fn analytic_center(polytope: &DelzantPolytope) -> Vec<f64> {
    let n = polytope.dim();
    let mut xi = polytope.vertex_centroid();
    for _ in 0..100 {
        let values = polytope.facet_values(&xi);
        let mut g = DVector::zeros(n);
        let mut h = DMatrix::zeros(n, n);
        for (facet, &l) in polytope.facets().iter().zip(&values) {
            let u: Vec<f64> = facet
                .normal
                .entries()
                .iter()
                .map(|x| i64::try_from(x).unwrap() as f64)
                .collect();
            for i in 0..n {
                g[i] += u[i] / l;
                for j in 0..n {
                    h[(i, j)] += u[i] * u[j] / (l * l);
                }
            }
        }
        if g.norm() < 1e-12 {
            break;
        }
        let d = h
            .clone()
            .cholesky()
            .expect("barrier hessian is positive definite")
            .solve(&g);
        let d_slice: Vec<f64> = d.iter().cloned().collect();
        let alpha = boundary_step(polytope, &xi, &d_slice);
        for (x, di) in xi.iter_mut().zip(&d_slice) {
            *x += alpha * di;
        }
    }
    xi
}

/// Invert the Legendre transform: find the interior point with
/// grad G(xi) = x.
///
/// Solves min_xi G(xi) - <x, xi>, whose gradient is exactly the residual
/// grad G - x, by damped Newton from the analytic center: Armijo
/// backtracking on the objective, steps clamped by the
/// fraction-to-boundary rule so every iterate stays interior.
pub fn legendre_inverse(polytope: &DelzantPolytope, x: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let n = polytope.dim();
    assert_eq!(x.len(), n);
    let objective = |xi: &[f64]| -> Result<f64, GeometryError> {
        let mut h = 0.0;
        // L log L extends by 0 to the boundary, so clamp log at L = 0
        for l in polytope.facet_values(xi) {
            if l < 0.0 {
                return Err(GeometryError::NotInterior { facet: 0, value: l });
            }
            if l > 0.0 {
                h += l * l.ln();
            }
        }
        Ok(h - xi.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
    };
    let mut xi = analytic_center(polytope);
    for _ in 0..tol::NEWTON_MAX_ITERS {
        let g = potential_grad(polytope, &xi)?;
        let residual = DVector::from_iterator(n, g.iter().zip(x).map(|(gi, xi)| gi - xi));
        if residual.norm() < tol::LEGENDRE_NEWTON {
            return Ok(xi);
        }
        let h = potential_hessian(polytope, &xi)?;
        let d = h
            .cholesky()
            .expect("hessian is positive definite on the interior")
            .solve(&(-&residual));
        let d_slice: Vec<f64> = d.iter().cloned().collect();
        let slope: f64 = residual.iter().zip(&d_slice).map(|(r, di)| r * di).sum();
        let mut alpha = boundary_step(polytope, &xi, &d_slice);
        let h0 = objective(&xi)?;
        for _ in 0..60 {
            let trial: Vec<f64> = xi
                .iter()
                .zip(&d_slice)
                .map(|(x, di)| x + alpha * di)
                .collect();
            if let Ok(h1) = objective(&trial) {
                if h1 <= h0 + 1e-4 * alpha * slope {
                    xi = trial;
                    break;
                }
            }
            alpha *= 0.5;
        }
    }
    let g = potential_grad(polytope, &xi)?;
    let residual = DVector::from_iterator(n, g.iter().zip(x).map(|(gi, xi)| gi - xi));
    if residual.norm() < tol::LEGENDRE_NEWTON {
        Ok(xi)
    } else {
        Err(GeometryError::NoConvergence(tol::NEWTON_MAX_ITERS))
    }
}

/// Chart transform Psi_l on the interior:
/// xi^l = Q^l (exp(<v^l_i, grad G(xi)> - 1) + kappa^l_i)_i.
pub fn psi_lambda(
    polytope: &DelzantPolytope,
    chart: &VertexChart,
    xi: &[f64],
) -> Result<Vec<f64>, GeometryError> {
    let grad = potential_grad(polytope, xi)?;
    let n = polytope.dim();
    let w: Vec<f64> = (0..n)
        .map(|i| {
            let inner = lattice::dot_f64(&chart.q.column(i), &grad);
            (inner - 1.0).exp() + rational_to_f64(&chart.offsets[i])
        })
        .collect();
    Ok(chart.q.mul_vec_f64(&w))
}

/// Chart-local facet values of the extended transform:
/// L^l_i(xi^l) = exp(sum_j <v_i,u_j>) L_i(xi) prod_j L_j(xi)^{<v_i,u_j>},
/// products over the facets not meeting the vertex. Total on the polytope
/// minus those facets; incident facet points land on the orthant walls.
pub fn psi_bar_facet_values(
    polytope: &DelzantPolytope,
    chart: &VertexChart,
    xi: &[f64],
) -> Result<Vec<f64>, GeometryError> {
    let n = polytope.dim();
    let all_values = polytope.facet_values(xi);
    let non_incident: Vec<usize> = (0..polytope.facets().len())
        .filter(|j| !chart.facet_order.contains(j))
        .collect();
    for &j in &non_incident {
        if all_values[j] <= 0.0 {
            return Err(GeometryError::OnExcludedFacet(j));
        }
    }
    Ok((0..n)
        .map(|i| {
            let v_i = chart.q.column(i);
            let mut log_factor = 0.0;
            for &j in &non_incident {
                let e = i64::try_from(&lattice::dot_int(
                    &v_i,
                    polytope.facets()[j].normal.entries(),
                ))
                .unwrap() as f64;
                log_factor += e * (1.0 + all_values[j].ln());
            }
            all_values[chart.facet_order[i]] * log_factor.exp()
        })
        .collect())
}

/// The extension Psi-bar_l of Psi_l to the boundary (minus the facets not
/// meeting the vertex): xi^l = Q^l (L^l(xi^l) + kappa^l).
pub fn psi_bar_lambda(
    polytope: &DelzantPolytope,
    chart: &VertexChart,
    xi: &[f64],
) -> Result<Vec<f64>, GeometryError> {
    let local = psi_bar_facet_values(polytope, chart, xi)?;
    let n = polytope.dim();
    let w: Vec<f64> = (0..n)
        .map(|i| local[i] + rational_to_f64(&chart.offsets[i]))
        .collect();
    Ok(chart.q.mul_vec_f64(&w))
}

/// Residual of the g-system of V at a point of the polytope, evaluated in
/// the chart of the nearest vertex.
pub fn g_residual(
    polytope: &DelzantPolytope,
    v: &AffineSubspace,
    xi: &[f64],
) -> Result<f64, GeometryError> {
    let chart = polytope.vertex_chart(polytope.nearest_vertex(xi));
    let w = psi_bar_facet_values(polytope, &chart, xi)?;
    let basis = ortho_basis(v);
    let sys = build_system(&chart, v, &basis, Side::PolytopeG);
    Ok(eval_system(&sys, &w)
        .iter()
        .fold(0.0_f64, |acc, r| acc.max(r.abs())))
}

/// One traced point of a D(V) curve.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub s: f64,
    pub position: Vec<f64>,
    pub location: Location,
}

/// A curve endpoint on the boundary, with the facets it landed on.
#[derive(Debug, Clone)]
pub struct CurveEndpoint {
    pub s: f64,
    pub position: Vec<f64>,
    pub facets: Vec<usize>,
    pub vertex: Option<usize>,
}

/// Sampled closure of D(V) for a 2-dimensional polytope and a line V.
#[derive(Debug, Clone)]
pub struct CurveSample {
    pub points: Vec<CurvePoint>,
    pub endpoints: [CurveEndpoint; 2],
}

fn min_facet_value(polytope: &DelzantPolytope, xi: &[f64]) -> f64 {
    polytope
        .facet_values(xi)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Trace D(V)-bar for n = 2, k = 1: map the affine parameterization of V
/// through the Legendre inverse, refine to the requested resolution, and
/// extend to the boundary by bisection in the parameter.
pub fn trace_curve(
    polytope: &DelzantPolytope,
    v: &AffineSubspace,
    resolution: usize,
) -> Result<CurveSample, GeometryError> {
    if polytope.dim() != 2 || v.dim() != 1 {
        return Err(GeometryError::Unsupported(
            "curve tracing needs a 2-dimensional polytope and a line".into(),
        ));
    }
    let resolution = resolution.max(8);
    let at = |s: f64| -> Result<Vec<f64>, GeometryError> {
        legendre_inverse(polytope, &v.point(&[s]))
    };

    // expand outward until the curve point is within BOUNDARY_L of the
    // boundary (a Newton failure counts as overshooting), then bisect the
    // parameter onto that shell and keep the interior side
    let find_end = |dir: f64| -> Result<(f64, Vec<f64>), GeometryError> {
        let shell = |s: f64| -> Option<f64> {
            at(s).ok().map(|p| min_facet_value(polytope, &p))
        };
        let mut s_in = 0.0;
        let mut s_out = dir;
        for _ in 0..80 {
            match shell(s_out) {
                Some(m) if m >= tol::BOUNDARY_L => {
                    s_in = s_out;
                    s_out *= 2.0;
                }
                _ => break,
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (s_in + s_out);
            match shell(mid) {
                Some(m) if m >= tol::BOUNDARY_L => {
                    s_in = mid;
                    if m < tol::BOUNDARY_L / 0.3 {
                        break;
                    }
                }
                _ => s_out = mid,
            }
        }
        Ok((s_in, at(s_in)?))
    };

    let (s_neg, p_neg) = find_end(-1.0)?;
    let (s_pos, p_pos) = find_end(1.0)?;

    let endpoint = |s: f64, position: Vec<f64>| -> CurveEndpoint {
        let facets: Vec<usize> = polytope
            .facet_values(&position)
            .iter()
            .enumerate()
            .filter(|(_, &l)| l.abs() <= tol::ON_FACET)
            .map(|(j, _)| j)
            .collect();
        let vertex = polytope
            .vertices()
            .iter()
            .position(|vx| vx.facets == facets);
        CurveEndpoint {
            s,
            position,
            facets,
            vertex,
        }
    };
    let endpoints = [endpoint(s_neg, p_neg), endpoint(s_pos, p_pos)];

    let mut points: Vec<(f64, Vec<f64>)> = Vec::with_capacity(resolution + 1);
    for i in 0..=resolution {
        let s = s_neg + (s_pos - s_neg) * i as f64 / resolution as f64;
        points.push((s, at(s)?));
    }
    let target = polytope.diameter() / resolution as f64;
    let cap = resolution * 8;
    for _ in 0..16 {
        let mut refined = Vec::with_capacity(points.len() * 2);
        let mut any = false;
        for pair in points.windows(2) {
            let (s0, p0) = &pair[0];
            let (s1, p1) = &pair[1];
            refined.push((*s0, p0.clone()));
            let dist: f64 = p0
                .iter()
                .zip(p1)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist > target && refined.len() < cap {
                let mid = 0.5 * (s0 + s1);
                refined.push((mid, at(mid)?));
                any = true;
            }
        }
        refined.push(points.last().unwrap().clone());
        points = refined;
        if !any || points.len() >= cap {
            break;
        }
    }

    let points = points
        .into_iter()
        .map(|(s, position)| {
            let location = polytope.locate(&position, tol::ON_FACET);
            CurvePoint {
                s,
                position,
                location,
            }
        })
        .collect();
    Ok(CurveSample { points, endpoints })
}

/// A located intersection of two D(V) curves.
#[derive(Debug, Clone)]
pub struct IntersectionPoint {
    pub position: Vec<f64>,
    pub location: Location,
}

#[derive(Debug, Clone)]
pub struct IntersectionResult {
    pub points: Vec<IntersectionPoint>,
    pub warnings: Vec<String>,
}

/// Find interior and boundary intersections of D(V_a)-bar and D(V_b)-bar
/// in a 2-dimensional polytope.
///
/// Interior points solve the pair of curve equations
/// <grad G(xi) - a, q> = 0 by Newton from grid seeds (the log form of the
/// two g-systems); boundary points are coincidences of curve endpoints.
pub fn intersect_curves(
    polytope: &DelzantPolytope,
    va: &AffineSubspace,
    vb: &AffineSubspace,
    resolution: usize,
) -> Result<IntersectionResult, GeometryError> {
    if polytope.dim() != 2 || va.dim() != 1 || vb.dim() != 1 {
        return Err(GeometryError::Unsupported(
            "intersection search needs a 2-dimensional polytope and lines".into(),
        ));
    }
    let mut warnings = Vec::new();
    for (name, v) in [("first", va), ("second", vb)] {
        let verdict = is_embedded_toric(polytope, v, &AnalysisConfig::default())
            .map_err(|e| GeometryError::Unsupported(e.to_string()))?;
        if !verdict.overall {
            warnings.push(format!(
                "{name} subspace is not an embedded toric slope; its closed curve may be singular"
            ));
        }
    }

    let qa: Vec<f64> = ortho_basis(va).vectors()[0]
        .to_i64()
        .iter()
        .map(|&x| x as f64)
        .collect();
    let qb: Vec<f64> = ortho_basis(vb).vectors()[0]
        .to_i64()
        .iter()
        .map(|&x| x as f64)
        .collect();
    let ca: f64 = qa.iter().zip(va.anchor()).map(|(q, a)| q * a).sum();
    let cb: f64 = qb.iter().zip(vb.anchor()).map(|(q, a)| q * a).sum();

    let f = |xi: &[f64]| -> Result<DVector<f64>, GeometryError> {
        let g = potential_grad(polytope, xi)?;
        let fa: f64 = qa.iter().zip(&g).map(|(q, gi)| q * gi).sum::<f64>() - ca;
        let fb: f64 = qb.iter().zip(&g).map(|(q, gi)| q * gi).sum::<f64>() - cb;
        Ok(DVector::from_vec(vec![fa, fb]))
    };

    let mut found: Vec<Vec<f64>> = Vec::new();
    let bounds = bounding_box(polytope);
    let grid = 16;
    let mut seeds: Vec<Vec<f64>> = vec![analytic_center(polytope)];
    for gx in 0..grid {
        for gy in 0..grid {
            let xi = vec![
                bounds.0[0] + (bounds.1[0] - bounds.0[0]) * (gx as f64 + 0.5) / grid as f64,
                bounds.0[1] + (bounds.1[1] - bounds.0[1]) * (gy as f64 + 0.5) / grid as f64,
            ];
            if min_facet_value(polytope, &xi) > 1e-6 {
                seeds.push(xi);
            }
        }
    }

    for seed in seeds {
        let mut xi = seed;
        let mut ok = false;
        for _ in 0..100 {
            let r = f(&xi)?;
            if r.norm() < 1e-12 {
                ok = true;
                break;
            }
            let h = potential_hessian(polytope, &xi)?;
            let jac = DMatrix::from_fn(2, 2, |row, col| {
                let q = if row == 0 { &qa } else { &qb };
                (0..2).map(|l| q[l] * h[(l, col)]).sum()
            });
            let Some(d) = jac.lu().solve(&(-&r)) else {
                break;
            };
            let d_slice: Vec<f64> = d.iter().cloned().collect();
            let alpha = boundary_step(polytope, &xi, &d_slice);
            if alpha * d.norm() < 1e-16 {
                break;
            }
            for (x, di) in xi.iter_mut().zip(&d_slice) {
                *x += alpha * di;
            }
        }
        if !ok {
            continue;
        }
        if g_residual(polytope, va, &xi)? > tol::INTERSECT_RESIDUAL
            || g_residual(polytope, vb, &xi)? > tol::INTERSECT_RESIDUAL
        {
            continue;
        }
        let dup = found.iter().any(|p| {
            p.iter()
                .zip(&xi)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                < tol::INTERSECT_DEDUP
        });
        if !dup {
            found.push(xi);
        }
    }

    let mut points: Vec<IntersectionPoint> = found
        .into_iter()
        .map(|position| IntersectionPoint {
            location: polytope.locate(&position, tol::ON_FACET),
            position,
        })
        .collect();

    // boundary intersections: endpoint coincidences of the two closures
    let curve_a = trace_curve(polytope, va, resolution)?;
    let curve_b = trace_curve(polytope, vb, resolution)?;
    for ea in &curve_a.endpoints {
        for eb in &curve_b.endpoints {
            let dist: f64 = ea
                .position
                .iter()
                .zip(&eb.position)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist < tol::INTERSECT_DEDUP {
                let position: Vec<f64> = ea
                    .position
                    .iter()
                    .zip(&eb.position)
                    .map(|(a, b)| 0.5 * (a + b))
                    .collect();
                points.push(IntersectionPoint {
                    location: polytope.locate(&position, tol::ON_FACET),
                    position,
                });
            }
        }
    }

    points.sort_by(|a, b| {
        a.position
            .partial_cmp(&b.position)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(IntersectionResult { points, warnings })
}

/// Axis-aligned bounding box of the vertices.
pub fn bounding_box(polytope: &DelzantPolytope) -> (Vec<f64>, Vec<f64>) {
    let n = polytope.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in polytope.vertices() {
        for (i, x) in v.position_f64().iter().enumerate() {
            lo[i] = lo[i].min(*x);
            hi[i] = hi[i].max(*x);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_interior(polytope: &DelzantPolytope, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let (lo, hi) = bounding_box(polytope);
        loop {
            let xi: Vec<f64> = lo
                .iter()
                .zip(&hi)
                .map(|(a, b)| rng.gen_range(*a..*b))
                .collect();
            if min_facet_value(polytope, &xi) > 1e-3 {
                return xi;
            }
        }
    }

    #[test]
    fn cp2_center_maps_to_origin() {
        let p = catalog::cp2();
        let g = potential_grad(&p, &[2.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!(g[0].abs() < 1e-12 && g[1].abs() < 1e-12);
        let xi = legendre_inverse(&p, &[0.0, 0.0]).unwrap();
        assert!((xi[0] - 2.0 / 3.0).abs() < 1e-10);
        assert!((xi[1] - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn cp2_grad_closed_form() {
        // dG/dxi_1 = log(xi_1 / (2 - xi_1 - xi_2)) for the CP^2 triangle
        let p = catalog::cp2();
        let xi = [0.9, 0.4];
        let g = potential_grad(&p, &xi).unwrap();
        let l3 = 2.0 - xi[0] - xi[1];
        assert!((g[0] - (xi[0] / l3).ln()).abs() < 1e-12);
        assert!((g[1] - (xi[1] / l3).ln()).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (_, p) in catalog::all() {
            for _ in 0..25 {
                let xi = random_interior(&p, &mut rng);
                let g = potential_grad(&p, &xi).unwrap();
                for i in 0..p.dim() {
                    let mut plus = xi.clone();
                    let mut minus = xi.clone();
                    plus[i] += tol::FD_STEP;
                    minus[i] -= tol::FD_STEP;
                    let fd = (potential_value(&p, &plus).unwrap()
                        - potential_value(&p, &minus).unwrap())
                        / (2.0 * tol::FD_STEP);
                    let scale = 1.0 + g[i].abs();
                    assert!(
                        (g[i] - fd).abs() / scale < tol::GRAD_FD_REL,
                        "fd mismatch {} vs {}",
                        g[i],
                        fd
                    );
                }
            }
        }
    }

    #[test]
    fn hessian_is_positive_definite() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (_, p) in catalog::all() {
            for _ in 0..20 {
                let xi = random_interior(&p, &mut rng);
                let h = potential_hessian(&p, &xi).unwrap();
                assert!(h.cholesky().is_some(), "hessian not PD at {xi:?}");
            }
        }
    }

    #[test]
    fn legendre_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, p) in catalog::all() {
            for _ in 0..25 {
                let xi = random_interior(&p, &mut rng);
                let x = potential_grad(&p, &xi).unwrap();
                let back = legendre_inverse(&p, &x).unwrap();
                let err: f64 = xi
                    .iter()
                    .zip(&back)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                assert!(err < tol::LEGENDRE_ROUNDTRIP, "round trip error {err}");
            }
        }
    }

    #[test]
    fn large_targets_stay_interior() {
        let p = catalog::cp2();
        for s in [5.0, 10.0, 20.0] {
            let xi = legendre_inverse(&p, &[s, 0.0]).unwrap();
            assert!(min_facet_value(&p, &xi) > 0.0);
        }
    }

    #[test]
    fn psi_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (_, p) in catalog::all() {
            for vertex in 0..p.vertices().len() {
                let chart = p.vertex_chart(vertex);
                for _ in 0..10 {
                    let xi = random_interior(&p, &mut rng);
                    let grad = potential_grad(&p, &xi).unwrap();
                    let local = psi_lambda(&p, &chart, &xi).unwrap();
                    // grad G^l(psi(xi)) = grad G(xi), with G^l built from
                    // the incident facets only
                    let values = chart.local_facet_values(&local);
                    let n = p.dim();
                    let mut lhs = vec![0.0; n];
                    for i in 0..n {
                        let w = 1.0 + values[i].ln();
                        for (l, u) in lhs.iter_mut().zip(chart.u.column(i)) {
                            *l += i64::try_from(&u).unwrap() as f64 * w;
                        }
                    }
                    for (a, b) in lhs.iter().zip(&grad) {
                        assert!((a - b).abs() < tol::PSI_CONSISTENCY, "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_bar_extends_psi() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (_, p) in catalog::all() {
            for vertex in 0..p.vertices().len() {
                let chart = p.vertex_chart(vertex);
                for _ in 0..10 {
                    let xi = random_interior(&p, &mut rng);
                    let a = psi_lambda(&p, &chart, &xi).unwrap();
                    let b = psi_bar_lambda(&p, &chart, &xi).unwrap();
                    for (x, y) in a.iter().zip(&b) {
                        assert!((x - y).abs() < 1e-12, "{x} vs {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_bar_at_vertex_is_origin() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let xi = [0.0, 0.0];
        let local = psi_bar_lambda(&p, &chart, &xi).unwrap();
        let values = chart.local_facet_values(&local);
        assert!(values.iter().all(|&l| l.abs() < 1e-12));
    }

    #[test]
    fn psi_bar_facet_point_lands_on_wall() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        // on facet 0 (xi_1 = 0), interior in the other coordinates
        let xi = [0.0, 0.7];
        let local = psi_bar_lambda(&p, &chart, &xi).unwrap();
        let values = chart.local_facet_values(&local);
        let slot = chart.facet_order.iter().position(|&j| j == 0).unwrap();
        assert!(values[slot].abs() < 1e-12);
        // the excluded facet stays excluded
        let bad = psi_bar_lambda(&p, &chart, &[1.0, 1.0]);
        assert_eq!(bad, Err(GeometryError::OnExcludedFacet(2)));
    }

    #[test]
    fn trace_v1_hits_boundary() {
        let p = catalog::cp2();
        let v = AffineSubspace::linear(vec![vec![1, 0]], 2).unwrap();
        let c = trace_curve(&p, &v, 64).unwrap();
        // one endpoint is the vertex (2,0), the other lies on facet 0
        let mut vertex_ends = 0;
        for e in &c.endpoints {
            assert!(!e.facets.is_empty(), "endpoint must reach the boundary");
            if e.vertex.is_some() {
                vertex_ends += 1;
            }
        }
        assert_eq!(vertex_ends, 1);
        for pt in &c.points {
            let r = g_residual(&p, &v, &pt.position).unwrap();
            assert!(r < tol::CURVE_RESIDUAL, "residual {r} at {:?}", pt.position);
        }
    }

    #[test]
    fn v1_v3_single_interior_intersection() {
        let p = catalog::cp2();
        let v1 = AffineSubspace::linear(vec![vec![1, 0]], 2).unwrap();
        let v3 = AffineSubspace::new(vec![vec![1, 1]], vec![2.0_f64.ln(), 0.0]).unwrap();
        let result = intersect_curves(&p, &v1, &v3, 64).unwrap();
        let interior: Vec<_> = result
            .points
            .iter()
            .filter(|pt| pt.location == Location::Interior)
            .collect();
        assert_eq!(interior.len(), 1);
        let expected = legendre_inverse(&p, &[2.0_f64.ln(), 0.0]).unwrap();
        let d: f64 = interior[0]
            .position
            .iter()
            .zip(&expected)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(d < 1e-8, "interior point off by {d}");
        assert_eq!(result.points.len(), 1, "no boundary intersections expected");
    }

    #[test]
    fn parallel_pair_meets_on_boundary() {
        let p = catalog::cp2();
        let v3 = AffineSubspace::new(vec![vec![1, 1]], vec![2.0_f64.ln(), 0.0]).unwrap();
        let v5 = AffineSubspace::new(vec![vec![1, 1]], vec![-(2.0_f64.ln()), 0.0]).unwrap();
        let result = intersect_curves(&p, &v3, &v5, 64).unwrap();
        let interior = result
            .points
            .iter()
            .filter(|pt| pt.location == Location::Interior)
            .count();
        assert_eq!(interior, 0);
        assert!(!result.points.is_empty(), "expected a boundary intersection");
    }
}
