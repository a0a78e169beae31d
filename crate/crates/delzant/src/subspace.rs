//! Rational-slope affine subspaces V, primitive orthogonal bases, and the
//! per-vertex monomial defining systems: f^l on the complex chart side and
//! g^l on the polytope side. Also the subtorus action i_V, its scaling
//! factors on the defining equations, and explicit parameterization of
//! points on C_l(V).

use crate::lattice::{self, integer_kernel_basis, Int, IntMatrix, PrimitiveVec};
use crate::polytope::VertexChart;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::{E, TAU};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubspaceError {
    #[error("InvalidSubspace: {0}")]
    InvalidSubspace(String),
    #[error("PoleAtBoundary: negative exponent at a vanishing coordinate")]
    PoleAtBoundary,
}

/// V = R p_1 + ... + R p_k + a, with primitive integer spanning vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSubspace {
    spanning: Vec<PrimitiveVec>,
    anchor: Vec<f64>,
}

impl AffineSubspace {
    pub fn new(spanning: Vec<Vec<i64>>, anchor: Vec<f64>) -> Result<Self, SubspaceError> {
        if spanning.is_empty() {
            return Err(SubspaceError::InvalidSubspace("no spanning vectors".into()));
        }
        let n = anchor.len();
        let k = spanning.len();
        if spanning.iter().any(|p| p.len() != n) {
            return Err(SubspaceError::InvalidSubspace(format!(
                "spanning vectors must have length {n}"
            )));
        }
        if k > n.saturating_sub(1) {
            return Err(SubspaceError::InvalidSubspace(format!(
                "k = {k} spanning vectors in dimension {n}; need 1 <= k <= n-1"
            )));
        }
        let m = IntMatrix::from_rows(&spanning);
        if m.rank() != k {
            return Err(SubspaceError::InvalidSubspace(
                "spanning vectors are linearly dependent".into(),
            ));
        }
        let prim: Result<Vec<PrimitiveVec>, _> = spanning
            .iter()
            .map(|p| lattice::primitive_part_i64(p))
            .collect();
        let prim = prim
            .map_err(|_| SubspaceError::InvalidSubspace("zero spanning vector".into()))?;
        Ok(AffineSubspace {
            spanning: prim,
            anchor,
        })
    }

    /// Linear subspace through the origin.
    pub fn linear(spanning: Vec<Vec<i64>>, dim: usize) -> Result<Self, SubspaceError> {
        Self::new(spanning, vec![0.0; dim])
    }

    /// The codimension-1 subspace orthogonal to a primitive normal vector.
    pub fn hyperplane(normal: &[i64], anchor: Vec<f64>) -> Result<Self, SubspaceError> {
        let m = IntMatrix::from_rows(&[normal.to_vec()]);
        let spanning: Vec<Vec<i64>> = integer_kernel_basis(&m)
            .iter()
            .map(|p| p.to_i64())
            .collect();
        Self::new(spanning, anchor)
    }

    pub fn dim_ambient(&self) -> usize {
        self.anchor.len()
    }

    pub fn dim(&self) -> usize {
        self.spanning.len()
    }

    pub fn spanning(&self) -> &[PrimitiveVec] {
        &self.spanning
    }

    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    pub fn with_anchor(&self, anchor: Vec<f64>) -> Self {
        AffineSubspace {
            spanning: self.spanning.clone(),
            anchor,
        }
    }

    /// A point of V: P u + a.
    pub fn point(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.dim());
        let n = self.dim_ambient();
        let mut x = self.anchor.clone();
        for (l, p) in self.spanning.iter().enumerate() {
            for i in 0..n {
                x[i] += i64::try_from(&p.entries()[i]).unwrap() as f64 * u[l];
            }
        }
        x
    }
}

/// Primitive basis q_{k+1}..q_n of the lattice orthogonal to V.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoBasis {
    vectors: Vec<PrimitiveVec>,
}

impl OrthoBasis {
    pub fn vectors(&self) -> &[PrimitiveVec] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Canonical primitive basis of {q : <p_l, q> = 0 for all l}.
pub fn ortho_basis(v: &AffineSubspace) -> OrthoBasis {
    let rows: Vec<Vec<i64>> = v.spanning.iter().map(|p| p.to_i64()).collect();
    let vectors = integer_kernel_basis(&IntMatrix::from_rows(&rows));
    debug_assert_eq!(vectors.len(), v.dim_ambient() - v.dim());
    OrthoBasis { vectors }
}

/// Which side of the correspondence a system lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// f^l: monomial equations in the complex chart coordinates z^l.
    ComplexF,
    /// g^l: the same exponents with arguments e L^l_i(xi^l).
    PolytopeG,
}

/// One monomial-difference system
/// `prod_{i in I+} w_i^{m_{j,i}} - c_j prod_{i in I-} w_i^{-m_{j,i}}`,
/// j = k+1..n, with m_{j,i} = <u^l_i, q_j> and c_j = exp<a, q_j>.
///
/// Zero exponents are excluded from both products up front, so boundary
/// evaluation is total and the empty product is 1.
#[derive(Debug, Clone)]
pub struct ExponentSystem {
    pub side: Side,
    /// Exponent rows m_j, one per equation.
    pub exponents: Vec<Vec<i64>>,
    /// c_j = exp<a, q_j> > 0.
    pub constants: Vec<f64>,
    /// <a, q_j>, kept for log-linear stratum solves.
    pub log_constants: Vec<f64>,
    /// The chart's normal matrix U; the g-side Jacobian carries e * B * U^t.
    pub u: IntMatrix,
}

impl ExponentSystem {
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn num_equations(&self) -> usize {
        self.exponents.len()
    }

    /// Indices with m_{j,i} > 0 (I+ minus I0).
    pub fn pos_indices(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.exponents[j]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
    }

    /// Indices with m_{j,i} < 0 (I- minus I0).
    pub fn neg_indices(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.exponents[j]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m < 0)
            .map(|(i, _)| i)
    }

    /// Argument scale: g-side arguments are e * w, f-side arguments are w.
    pub fn arg_scale(&self) -> f64 {
        match self.side {
            Side::ComplexF => 1.0,
            Side::PolytopeG => E,
        }
    }
}

/// Build f^l or g^l for a chart and subspace: m_{j,i} = <u^l_i, q_j> exactly.
pub fn build_system(
    chart: &VertexChart,
    v: &AffineSubspace,
    basis: &OrthoBasis,
    side: Side,
) -> ExponentSystem {
    let n = chart.dim();
    assert_eq!(v.dim_ambient(), n, "subspace/chart dimension mismatch");
    let mut exponents = Vec::with_capacity(basis.len());
    let mut constants = Vec::with_capacity(basis.len());
    let mut log_constants = Vec::with_capacity(basis.len());
    for q in basis.vectors() {
        let row: Vec<i64> = (0..n)
            .map(|i| {
                i64::try_from(&lattice::dot_int(&chart.u.column(i), q.entries()))
                    .expect("exponent exceeds i64")
            })
            .collect();
        let log_c = lattice::dot_f64(q.entries(), v.anchor());
        exponents.push(row);
        log_constants.push(log_c);
        constants.push(log_c.exp());
    }
    ExponentSystem {
        side,
        exponents,
        constants,
        log_constants,
        u: chart.u.clone(),
    }
}

fn int_pow<T>(base: T, exp: u32) -> T
where
    T: Copy + num::One + std::ops::Mul<Output = T>,
{
    let mut acc = T::one();
    let mut b = base;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b;
        }
        b = b * b;
        e >>= 1;
    }
    acc
}

/// Evaluate all equations at a point. For the f-side, `w` are the chart
/// coordinates; for the g-side, `w` are the facet values L^l (the factor e
/// is applied internally).
pub fn eval_system<T>(sys: &ExponentSystem, w: &[T]) -> Vec<T>
where
    T: Copy
        + num::One
        + std::ops::Mul<Output = T>
        + std::ops::Sub<Output = T>
        + From<f64>,
{
    assert_eq!(w.len(), sys.dim());
    let scale = T::from(sys.arg_scale());
    (0..sys.num_equations())
        .map(|j| {
            let mut pos = T::one();
            let mut neg = T::one();
            for (i, &m) in sys.exponents[j].iter().enumerate() {
                if m > 0 {
                    pos = pos * int_pow(scale * w[i], m as u32);
                } else if m < 0 {
                    neg = neg * int_pow(scale * w[i], (-m) as u32);
                }
            }
            pos - T::from(sys.constants[j]) * neg
        })
        .collect()
}

fn jacobian_entries<T>(sys: &ExponentSystem, w: &[T]) -> DMatrix<T>
where
    T: nalgebra::Scalar
        + Copy
        + num::Zero
        + num::One
        + std::ops::Mul<Output = T>
        + From<f64>,
{
    assert_eq!(w.len(), sys.dim());
    let scale = T::from(sys.arg_scale());
    let rows = sys.num_equations();
    let n = sys.dim();
    DMatrix::from_fn(rows, n, |j, i| {
        let m = sys.exponents[j][i];
        if m == 0 {
            // zero coefficient short-circuits; never evaluate the monomial
            return T::zero();
        }
        let same_sign = |l: usize| sys.exponents[j][l].signum() == m.signum();
        let mut prod = T::one();
        for l in 0..n {
            if !same_sign(l) {
                continue;
            }
            let e = sys.exponents[j][l].unsigned_abs() as u32 - u32::from(l == i);
            prod = prod * int_pow(scale * w[l], e);
        }
        let coeff = if m < 0 { sys.constants[j] } else { 1.0 };
        T::from(m as f64 * coeff) * prod
    })
}

/// Jacobian at a real nonnegative point. For the f-side this is Df^l
/// directly; for the g-side it is Dg^l = e * B(eL) * U^t per the explicit
/// formula, i.e. the derivative in the chart coordinates xi^l.
pub fn jacobian(sys: &ExponentSystem, w: &[f64]) -> DMatrix<f64> {
    let b = jacobian_entries::<f64>(sys, w);
    match sys.side {
        Side::ComplexF => b,
        Side::PolytopeG => {
            let n = sys.dim();
            let ut = DMatrix::from_fn(n, n, |i, j| sys.u.at_f64(j, i));
            b * ut * E
        }
    }
}

/// Jacobian of an f-side system at a complex chart point.
pub fn jacobian_complex(sys: &ExponentSystem, w: &[Complex64]) -> DMatrix<Complex64> {
    assert_eq!(sys.side, Side::ComplexF, "complex points live on the f-side");
    jacobian_entries::<Complex64>(sys, w)
}

/// Element t = (e^{i theta_1}, ..., e^{i theta_k}) of the acting subtorus.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    angles: Vec<f64>,
}

impl TorusElement {
    pub fn new(angles: Vec<f64>) -> Self {
        TorusElement {
            angles: angles.into_iter().map(|a| a.rem_euclid(TAU)).collect(),
        }
    }

    pub fn identity(k: usize) -> Self {
        TorusElement {
            angles: vec![0.0; k],
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// Exponents <p_l, v^l_j> of the subtorus action in chart coordinates.
fn action_exponents(chart: &VertexChart, v: &AffineSubspace) -> Vec<Vec<i64>> {
    let n = chart.dim();
    v.spanning()
        .iter()
        .map(|p| {
            (0..n)
                .map(|j| {
                    i64::try_from(&lattice::dot_int(p.entries(), &chart.q.column(j)))
                        .expect("action exponent exceeds i64")
                })
                .collect()
        })
        .collect()
}

/// i_V(t) . z: coordinate j is multiplied by prod_l t_l^{<p_l, v^l_j>}.
pub fn torus_act(
    chart: &VertexChart,
    v: &AffineSubspace,
    t: &TorusElement,
    z: &[Complex64],
) -> Vec<Complex64> {
    let exps = action_exponents(chart, v);
    (0..z.len())
        .map(|j| {
            let angle: f64 = t
                .angles
                .iter()
                .zip(&exps)
                .map(|(theta, row)| theta * row[j] as f64)
                .sum();
            Complex64::from_polar(1.0, angle) * z[j]
        })
        .collect()
}

/// Unit-modulus factors T^l_j(t) with f^l(i_V(t) z) = T^l(t) f^l(z).
pub fn action_factor(
    chart: &VertexChart,
    v: &AffineSubspace,
    basis: &OrthoBasis,
    t: &TorusElement,
) -> Vec<Complex64> {
    let exps = action_exponents(chart, v);
    let sys = build_system(chart, v, basis, Side::ComplexF);
    (0..sys.num_equations())
        .map(|i| {
            let angle: f64 = t
                .angles
                .iter()
                .zip(&exps)
                .map(|(theta, pv)| {
                    let s: i64 = sys.neg_indices(i).map(|j| -pv[j] * sys.exponents[i][j]).sum();
                    theta * s as f64
                })
                .sum();
            Complex64::from_polar(1.0, angle)
        })
        .collect()
}

/// Explicit point of C_l(V):
/// z^l_i = exp(sum_l <p_l,v^l_i> u_l + <a,v^l_i> + i sum_l <p_l,v^l_i> v_l).
pub fn param_point(
    chart: &VertexChart,
    v: &AffineSubspace,
    u_params: &[f64],
    v_params: &[f64],
) -> Vec<Complex64> {
    assert_eq!(u_params.len(), v.dim());
    assert_eq!(v_params.len(), v.dim());
    let exps = action_exponents(chart, v);
    let n = chart.dim();
    (0..n)
        .map(|i| {
            let mut re = lattice::dot_f64(&chart.q.column(i), v.anchor());
            let mut im = 0.0;
            for (l, pv) in exps.iter().enumerate() {
                re += pv[i] as f64 * u_params[l];
                im += pv[i] as f64 * v_params[l];
            }
            Complex64::from_polar(re.exp(), im)
        })
        .collect()
}

/// The torus element (theta_l = -v_l) that rotates a `param_point` output
/// onto the nonnegative real orthant.
pub fn phase_normalize(v_params: &[f64]) -> TorusElement {
    TorusElement::new(v_params.iter().map(|x| -x).collect())
}

/// Exact orthogonality identity behind the action factors:
/// sum_i <p_l, v^l_i><u^l_i, q_j> = 0 for all l, j.
pub fn orthogonality_defect(
    chart: &VertexChart,
    v: &AffineSubspace,
    basis: &OrthoBasis,
) -> Vec<Vec<Int>> {
    let n = chart.dim();
    v.spanning()
        .iter()
        .map(|p| {
            basis
                .vectors()
                .iter()
                .map(|q| {
                    (0..n)
                        .map(|i| {
                            lattice::dot_int(p.entries(), &chart.q.column(i))
                                * lattice::dot_int(&chart.u.column(i), q.entries())
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tol;
    use num::Zero;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn span11() -> AffineSubspace {
        AffineSubspace::linear(vec![vec![1, 1]], 2).unwrap()
    }

    #[test]
    fn ortho_basis_examples() {
        let v = span11();
        let b = ortho_basis(&v);
        assert_eq!(b.vectors().len(), 1);
        assert_eq!(b.vectors()[0].to_i64(), vec![1, -1]);

        let v = AffineSubspace::linear(vec![vec![1, 0]], 2).unwrap();
        assert_eq!(ortho_basis(&v).vectors()[0].to_i64(), vec![0, 1]);

        let v = AffineSubspace::linear(vec![vec![1, 1, 1]], 3).unwrap();
        let b = ortho_basis(&v);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn build_system_cp2_diagonal() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = span11();
        let b = ortho_basis(&v);
        let sys = build_system(&chart, &v, &b, Side::ComplexF);
        assert_eq!(sys.exponents, vec![vec![1, -1]]);
        assert_eq!(sys.constants, vec![1.0]);

        let sys_g = build_system(&chart, &v, &b, Side::PolytopeG);
        assert_eq!(sys_g.exponents, vec![vec![1, -1]]);
        // g-side arguments carry the factor e: e L_1 - e L_2
        let vals = eval_system(&sys_g, &[1.0, 2.0]);
        assert!((vals[0] - (std::f64::consts::E - 2.0 * std::f64::consts::E)).abs() < 1e-14);
    }

    #[test]
    fn build_system_with_log2_anchor() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = AffineSubspace::new(vec![vec![1, 0]], vec![2.0_f64.ln(), 0.0]).unwrap();
        let b = ortho_basis(&v);
        assert_eq!(b.vectors()[0].to_i64(), vec![0, 1]);
        let sys = build_system(&chart, &v, &b, Side::ComplexF);
        // q = (0,1) is orthogonal to the anchor direction: c = exp<a,q> = 1
        assert_eq!(sys.exponents, vec![vec![0, 1]]);
        assert!((sys.constants[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eval_f_side() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = span11();
        let b = ortho_basis(&v);
        let sys = build_system(&chart, &v, &b, Side::ComplexF);
        assert_eq!(eval_system(&sys, &[3.0, 3.0]), vec![0.0]);
        // the corner lies on the closure: both monomials vanish
        assert_eq!(eval_system(&sys, &[0.0, 0.0]), vec![0.0]);
    }

    #[test]
    fn jacobian_examples() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = span11();
        let b = ortho_basis(&v);
        let sys = build_system(&chart, &v, &b, Side::ComplexF);
        let j = jacobian(&sys, &[0.7, 1.3]);
        assert_eq!(j[(0, 0)], 1.0);
        assert_eq!(j[(0, 1)], -1.0);

        // z1 z2 - c from V = span{(1,-1)}: product rule kills both entries
        // at the origin
        let v = AffineSubspace::linear(vec![vec![1, -1]], 2).unwrap();
        let b = ortho_basis(&v);
        assert_eq!(b.vectors()[0].to_i64(), vec![1, 1]);
        let sys = build_system(&chart, &v, &b, Side::ComplexF);
        let j = jacobian(&sys, &[0.0, 0.0]);
        assert_eq!(j[(0, 0)], 0.0);
        assert_eq!(j[(0, 1)], 0.0);

        // g-side of z1 - z2 at the identity chart: e * [1, -1]
        let v = span11();
        let b = ortho_basis(&v);
        let sys = build_system(&chart, &v, &b, Side::PolytopeG);
        let j = jacobian(&sys, &[0.4, 0.9]);
        assert!((j[(0, 0)] - std::f64::consts::E).abs() < 1e-15);
        assert!((j[(0, 1)] + std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn torus_act_flips_signs() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = span11();
        let t = TorusElement::new(vec![std::f64::consts::PI]);
        let z = vec![Complex64::new(0.5, 0.0), Complex64::new(2.0, 0.0)];
        let tz = torus_act(&chart, &v, &t, &z);
        assert!((tz[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!((tz[1] - Complex64::new(-2.0, 0.0)).norm() < 1e-15);

        let id = TorusElement::identity(1);
        let tz = torus_act(&chart, &v, &id, &z);
        assert_eq!(tz, z);
    }

    #[test]
    fn equivariance_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = catalog::cp2();
        for _ in 0..50 {
            let chart = p.vertex_chart(rng.gen_range(0..3));
            let v = AffineSubspace::new(
                vec![vec![rng.gen_range(-3..=3), rng.gen_range(1..=3)]],
                vec![rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)],
            )
            .unwrap();
            let b = ortho_basis(&v);
            let sys = build_system(&chart, &v, &b, Side::ComplexF);
            let t = TorusElement::new(vec![rng.gen_range(0.0..TAU)]);
            let z: Vec<Complex64> = (0..2)
                .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            let lhs = eval_system(&sys, &torus_act(&chart, &v, &t, &z));
            let factors = action_factor(&chart, &v, &b, &t);
            let rhs: Vec<Complex64> = eval_system(&sys, &z)
                .iter()
                .zip(&factors)
                .map(|(f, tf)| tf * f)
                .collect();
            for (l, r) in lhs.iter().zip(&rhs) {
                assert!(
                    (l - r).norm() / (1.0 + r.norm()) < tol::EQUIVARIANCE_REL,
                    "equivariance violated: {l} vs {r}"
                );
            }
            for tf in &factors {
                assert!((tf.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn param_point_basics() {
        let p = catalog::cp2();
        let chart = p.vertex_chart(0);
        let v = span11();
        let z = param_point(&chart, &v, &[0.0], &[0.0]);
        assert!((z[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let z = param_point(&chart, &v, &[1.0], &[0.0]);
        assert!((z[0].re - std::f64::consts::E).abs() < 1e-12);
        assert!((z[1].re - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn param_point_satisfies_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = catalog::cp2();
        for _ in 0..100 {
            let chart = p.vertex_chart(rng.gen_range(0..3));
            let v = AffineSubspace::new(
                vec![vec![rng.gen_range(-3..=3), rng.gen_range(1..=4)]],
                vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
            )
            .unwrap();
            let b = ortho_basis(&v);
            let sys = build_system(&chart, &v, &b, Side::ComplexF);
            let u = [rng.gen_range(-1.0..1.0)];
            let vv = [rng.gen_range(0.0..TAU)];
            let z = param_point(&chart, &v, &u, &vv);
            for (j, r) in eval_system(&sys, &z).iter().enumerate() {
                // relative to the magnitude of the two monomials
                let mut pos = 1.0;
                let mut neg = sys.constants[j];
                for (i, &m) in sys.exponents[j].iter().enumerate() {
                    if m > 0 {
                        pos *= z[i].norm().powi(m as i32);
                    } else if m < 0 {
                        neg *= z[i].norm().powi(-m as i32);
                    }
                }
                let scale = 1.0 + pos + neg;
                assert!(r.norm() / scale < tol::PARAM_RESIDUAL, "residual {r}");
            }
        }
    }

    #[test]
    fn phase_normalize_rotates_to_reals() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let p = catalog::cp2();
        let v = span11();
        for _ in 0..50 {
            let chart = p.vertex_chart(rng.gen_range(0..3));
            let u = [rng.gen_range(-1.0..1.0)];
            let vv = [rng.gen_range(0.0..TAU)];
            let z = param_point(&chart, &v, &u, &vv);
            let t = phase_normalize(&vv);
            let tz = torus_act(&chart, &v, &t, &z);
            for (w, orig) in tz.iter().zip(&z) {
                assert!(w.im.abs() < tol::PHASE_IMAG, "imag {}", w.im);
                assert!(w.re >= 0.0);
                assert!((w.re - orig.norm()).abs() < 1e-12);
            }
        }
        assert_eq!(phase_normalize(&[0.0]), TorusElement::identity(1));
    }

    #[test]
    fn orthogonality_identity_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (_, p) in catalog::all() {
            let n = p.dim();
            for _ in 0..20 {
                let k = if n == 2 { 1 } else { rng.gen_range(1..n) };
                let Some(v) = crate::subspace::testutil::random_subspace(&mut rng, n, k) else {
                    continue;
                };
                let b = ortho_basis(&v);
                for id in 0..p.vertices().len() {
                    let chart = p.vertex_chart(id);
                    for row in orthogonality_defect(&chart, &v, &b) {
                        for x in row {
                            assert!(x.is_zero());
                        }
                    }
                }
            }
        }
    }

}
