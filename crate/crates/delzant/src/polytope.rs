//! Delzant polytopes in H-representation: exact validation (simple,
//! smooth, bounded), vertex enumeration over the rationals, per-vertex
//! charts (U, Q, offsets), transition matrices, and facet functions L_j.

use crate::lattice::{
    self, integer_kernel_basis, unimodular_inverse, Int, IntMatrix, PrimitiveVec,
};
use itertools::Itertools;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("NotSimple at vertex {0}: lies on {1} facets")]
    NotSimple(String, usize),
    #[error("NotSmooth at vertex {0}: det {1}")]
    NotSmooth(String, Int),
    #[error("Unbounded")]
    Unbounded,
    #[error("Empty")]
    Empty,
    #[error("NonPrimitiveNormal: facet {0} normal is not primitive")]
    NonPrimitiveNormal(usize),
    #[error("ZeroNormal: facet {0} normal is zero")]
    ZeroNormal(usize),
    #[error("DuplicateFacet: facets {0} and {1} are identical")]
    DuplicateFacet(usize, usize),
    #[error("DimensionMismatch: facet {facet} normal has length {got}, expected {expected}")]
    DimensionMismatch {
        facet: usize,
        got: usize,
        expected: usize,
    },
    #[error("UnsupportedDimension: dim {0} (supported range is 1..=6)")]
    UnsupportedDimension(usize),
    #[error("TooFewFacets: {0} facets cannot bound a {1}-dimensional polytope")]
    TooFewFacets(usize, usize),
}

/// One inequality `L_j(xi) = <xi, u_j> - kappa_j >= 0` with a primitive
/// inward-pointing normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: PrimitiveVec,
    pub offset: Rational,
}

impl Halfspace {
    /// The normal keeps its orientation (it points inward); it only has to
    /// be primitive.
    pub fn new(normal: Vec<i64>, offset: Rational) -> Result<Self, PolytopeError> {
        let entries: Vec<Int> = normal.iter().map(|&x| Int::from(x)).collect();
        let p = PrimitiveVec::checked(entries).map_err(|e| match e {
            lattice::LatticeError::ZeroVector => PolytopeError::ZeroNormal(0),
            _ => PolytopeError::NonPrimitiveNormal(0),
        })?;
        Ok(Halfspace { normal: p, offset })
    }

    /// Exact facet value at a rational point.
    pub fn value(&self, xi: &[Rational]) -> Rational {
        self.normal
            .entries()
            .iter()
            .zip(xi)
            .map(|(u, x)| Rational::from_integer(u.clone()) * x)
            .sum::<Rational>()
            - &self.offset
    }

    pub fn value_f64(&self, xi: &[f64]) -> f64 {
        lattice::dot_f64(self.normal.entries(), xi) - rational_to_f64(&self.offset)
    }
}

/// A vertex with its exact position and the facets it lies on
/// (sorted ascending; chart construction may reorder a copy).
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub position: Vec<Rational>,
    pub facets: Vec<usize>,
}

impl Vertex {
    pub fn position_f64(&self) -> Vec<f64> {
        self.position.iter().map(rational_to_f64).collect()
    }
}

/// Validated Delzant polytope. Vertices are always recomputed from the
/// H-representation, never trusted from input.
#[derive(Debug, Clone)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Halfspace>,
    vertices: Vec<Vertex>,
}

/// Per-vertex chart data: normals U (columns u_i), edge directions
/// Q (columns v_i) with det Q = +1, and offsets kappa, all in the chart's
/// facet order.
#[derive(Debug, Clone)]
pub struct VertexChart {
    pub vertex: usize,
    pub position: Vec<Rational>,
    /// Incident facet indices in chart order (after any det fix-up swap).
    pub facet_order: Vec<usize>,
    /// Columns are the inward normals u^l_1..u^l_n.
    pub u: IntMatrix,
    /// Columns are the edge directions v^l_1..v^l_n; Q * U^t = E, det Q = +1.
    pub q: IntMatrix,
    pub offsets: Vec<Rational>,
}

impl VertexChart {
    /// The standard orthant chart: U = Q = identity, zero offsets.
    /// Not attached to any polytope vertex.
    pub fn orthant(n: usize) -> VertexChart {
        VertexChart {
            vertex: 0,
            position: vec![Rational::zero(); n],
            facet_order: (0..n).collect(),
            u: IntMatrix::identity(n),
            q: IntMatrix::identity(n),
            offsets: vec![Rational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// u^l_i as a column vector.
    pub fn normal(&self, i: usize) -> Vec<Int> {
        self.u.column(i)
    }

    /// v^l_i as a column vector.
    pub fn direction(&self, i: usize) -> Vec<Int> {
        self.q.column(i)
    }

    /// The matrix `t(Q^l)^{-1}` = [u^l_1 ... u^l_n]; equals U.
    pub fn q_inv_transpose(&self) -> &IntMatrix {
        &self.u
    }

    /// Chart-local facet values L^l_i(xi) = <u^l_i, xi> - kappa^l_i.
    pub fn local_facet_values(&self, xi: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                lattice::dot_f64(&self.u.column(i), xi) - rational_to_f64(&self.offsets[i])
            })
            .collect()
    }
}

/// Where a point sits relative to the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// On the boundary; lists the facets whose L vanishes, and the vertex id
    /// when the active set matches a vertex exactly.
    Boundary {
        facets: Vec<usize>,
        vertex: Option<usize>,
    },
    /// Outside: some facet value is negative.
    Outside { facet: usize },
}

impl DelzantPolytope {
    /// Validate an H-representation: enumerate vertices exactly, check
    /// boundedness, simplicity and smoothness.
    pub fn validate(dim: usize, facets: Vec<Halfspace>) -> Result<Self, PolytopeError> {
        if dim == 0 || dim > 6 {
            return Err(PolytopeError::UnsupportedDimension(dim));
        }
        for (j, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    facet: j,
                    got: f.normal.len(),
                    expected: dim,
                });
            }
        }
        for (a, b) in (0..facets.len()).tuple_combinations() {
            if facets[a] == facets[b] {
                return Err(PolytopeError::DuplicateFacet(a, b));
            }
        }
        if facets.len() < dim + 1 {
            // cannot be bounded with so few facets
            return Err(PolytopeError::Unbounded);
        }

        check_bounded(dim, &facets)?;

        let mut vertices: Vec<Vertex> = Vec::new();
        for subset in (0..facets.len()).combinations(dim) {
            let a: Vec<Vec<Rational>> = subset
                .iter()
                .map(|&j| {
                    facets[j]
                        .normal
                        .entries()
                        .iter()
                        .map(|x| Rational::from_integer(x.clone()))
                        .collect()
                })
                .collect();
            let b: Vec<Rational> = subset.iter().map(|&j| facets[j].offset.clone()).collect();
            let Some(pos) = lattice::solve_rational(&a, &b) else {
                continue;
            };
            if facets.iter().any(|f| f.value(&pos).is_negative()) {
                continue;
            }
            let active: Vec<usize> = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.value(&pos).is_zero())
                .map(|(j, _)| j)
                .collect();
            if active.len() > dim {
                return Err(PolytopeError::NotSimple(point_string(&pos), active.len()));
            }
            if !vertices.iter().any(|v| v.position == pos) {
                vertices.push(Vertex {
                    position: pos,
                    facets: active,
                });
            }
        }

        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        vertices.sort_by(|a, b| a.position.cmp(&b.position));

        for v in &vertices {
            let u = IntMatrix::from_columns(
                &v.facets
                    .iter()
                    .map(|&j| facets[j].normal.entries().to_vec())
                    .collect::<Vec<_>>(),
            );
            let det = u.det();
            if det.abs() != Int::one() {
                return Err(PolytopeError::NotSmooth(
                    point_string(&v.position),
                    det.abs(),
                ));
            }
        }

        Ok(DelzantPolytope {
            dim,
            facets,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Chart at vertex `id`: U from incident normals; if det U = -1 the
    /// first two facets are swapped to force det Q = +1.
    pub fn vertex_chart(&self, id: usize) -> VertexChart {
        let v = &self.vertices[id];
        let mut order = v.facets.clone();
        let columns = |ord: &[usize]| -> IntMatrix {
            IntMatrix::from_columns(
                &ord.iter()
                    .map(|&j| self.facets[j].normal.entries().to_vec())
                    .collect::<Vec<_>>(),
            )
        };
        let mut u = columns(&order);
        if u.det() == -Int::one() {
            order.swap(0, 1);
            u = columns(&order);
        }
        debug_assert!(u.det().is_one());
        let q = unimodular_inverse(&u.transpose()).expect("validated chart is unimodular");
        debug_assert!(q.det().is_one());
        debug_assert_eq!(q.mul(&u.transpose()), IntMatrix::identity(self.dim));
        VertexChart {
            vertex: id,
            position: v.position.clone(),
            facet_order: order.clone(),
            u,
            q,
            offsets: order.iter().map(|&j| self.facets[j].offset.clone()).collect(),
        }
    }

    /// Transition matrix D^{lm} = (Q^l)^{-1} Q^m in SL(n, Z).
    pub fn transition(&self, from: usize, to: usize) -> IntMatrix {
        let ql = self.vertex_chart(from).q;
        let qm = self.vertex_chart(to).q;
        unimodular_inverse(&ql)
            .expect("chart Q is unimodular")
            .mul(&qm)
    }

    /// All facet values (L_1(xi), ..., L_d(xi)) at a real point.
    pub fn facet_values(&self, xi: &[f64]) -> Vec<f64> {
        self.facets.iter().map(|f| f.value_f64(xi)).collect()
    }

    /// Classify a point by the sign pattern of its facet values.
    pub fn locate(&self, xi: &[f64], tol: f64) -> Location {
        let values = self.facet_values(xi);
        if let Some((j, _)) = values.iter().enumerate().find(|(_, &l)| l < -tol) {
            return Location::Outside { facet: j };
        }
        let active: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, &l)| l.abs() <= tol)
            .map(|(j, _)| j)
            .collect();
        if active.is_empty() {
            return Location::Interior;
        }
        let vertex = self
            .vertices
            .iter()
            .position(|v| v.facets == active)
            .filter(|_| active.len() == self.dim);
        Location::Boundary {
            facets: active,
            vertex,
        }
    }

    /// Index of the vertex nearest to a point (euclidean).
    pub fn nearest_vertex(&self, xi: &[f64]) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let p = v.position_f64();
            let d: f64 = p.iter().zip(xi).map(|(a, b)| (a - b) * (a - b)).sum();
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    /// Vertex centroid; interior for a full-dimensional bounded polytope.
    pub fn vertex_centroid(&self) -> Vec<f64> {
        let n = self.dim;
        let mut c = vec![0.0; n];
        for v in &self.vertices {
            for (ci, x) in c.iter_mut().zip(v.position_f64()) {
                *ci += x;
            }
        }
        for ci in &mut c {
            *ci /= self.vertices.len() as f64;
        }
        c
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Vec<f64>> = self.vertices.iter().map(|v| v.position_f64()).collect();
        let mut d: f64 = 0.0;
        for (a, b) in pts.iter().tuple_combinations() {
            let dist: f64 = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            d = d.max(dist);
        }
        d
    }
}

/// Boundedness: the recession cone {y : <u_j, y> >= 0 for all j} must be
/// trivial. Checked exactly: a nontrivial cone either has a lineality
/// vector (kernel of all normals) or an extreme ray supported on n-1
/// independent normals.
fn check_bounded(dim: usize, facets: &[Halfspace]) -> Result<(), PolytopeError> {
    let normal_rows: Vec<Vec<i64>> = facets
        .iter()
        .map(|f| {
            f.normal
                .entries()
                .iter()
                .map(|x| i64::try_from(x).expect("normal entry exceeds i64"))
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rows(&normal_rows);
    if !integer_kernel_basis(&m).is_empty() {
        return Err(PolytopeError::Unbounded);
    }
    if dim == 1 {
        // kernel empty means both orientations present; bounded
        return Ok(());
    }
    for subset in (0..facets.len()).combinations(dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&j| normal_rows[j].clone()).collect();
        let sub = IntMatrix::from_rows(&rows);
        if sub.rank() != dim - 1 {
            continue;
        }
        let kernel = integer_kernel_basis(&sub);
        debug_assert_eq!(kernel.len(), 1);
        let y = kernel[0].entries();
        let neg: Vec<Int> = y.iter().map(|x| -x).collect();
        for cand in [y.to_vec(), neg] {
            let feasible = facets
                .iter()
                .all(|f| !lattice::dot_int(f.normal.entries(), &cand).is_negative());
            if feasible {
                return Err(PolytopeError::Unbounded);
            }
        }
    }
    Ok(())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

fn point_string(pos: &[Rational]) -> String {
    let parts: Vec<String> = pos
        .iter()
        .map(|x| {
            if x.is_integer() {
                x.numer().to_string()
            } else {
                x.to_string()
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}
