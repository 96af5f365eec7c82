use nalgebra::{DMatrix, DVector};

use crate::error::GeomError;
use crate::jet::JetOrder;
use crate::map::{eval_jet, SmoothMap, TargetSpace};

/// Rank cutoff, relative to the largest singular value.
const RANK_TOL: f64 = 1e-9;
/// Parameter step for the limiting-plane probe at corank-1 points.
const LIMIT_STEP: f64 = 1e-4;
/// Required agreement between the probe and its half-step refinement.
const LIMIT_AGREE: f64 = 1e-5;

/// Vertical foliation of the standard models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationKind {
    /// Fibres of `T*R^n -> R^n`: span(∂p_1..∂p_n).
    CotangentFibres,
    /// Fibres of the front projection `J^1 -> J^0`: span(∂p_1..∂p_n).
    FrontFibres,
}

#[derive(Debug, Clone, Copy)]
pub struct FoliationSpec {
    pub kind: FoliationKind,
    pub n: usize,
}

impl FoliationSpec {
    pub fn cotangent(n: usize) -> Self {
        Self {
            kind: FoliationKind::CotangentFibres,
            n,
        }
    }

    pub fn front(n: usize) -> Self {
        Self {
            kind: FoliationKind::FrontFibres,
            n,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            FoliationKind::CotangentFibres => 2 * self.n,
            FoliationKind::FrontFibres => 2 * self.n + 1,
        }
    }

    /// Orthonormal frame of the leaf directions.
    pub fn vertical_frame(&self) -> DMatrix<f64> {
        let d = self.ambient_dim();
        let mut m = DMatrix::zeros(d, self.n);
        for k in 0..self.n {
            m[(self.n + k, k)] = 1.0;
        }
        m
    }
}

/// An n-plane in the tangent space of `T*R^n` or `J^1(R^n, R)` at a point.
#[derive(Debug, Clone)]
pub struct LagrangianPlane {
    pub ambient_dim: usize,
    /// Base point in the ambient model (needed for the contact condition).
    pub base: DVector<f64>,
    /// Orthonormal frame, ambient_dim × n.
    pub frame: DMatrix<f64>,
    pub contact: bool,
}

impl LagrangianPlane {
    /// Orthonormalize `spanning` (ambient_dim × n) and wrap it as a plane.
    pub fn from_span(
        base: DVector<f64>,
        spanning: DMatrix<f64>,
        contact: bool,
    ) -> Result<Self, GeomError> {
        let n = spanning.ncols();
        let frame = orthonormal_basis(&spanning, n)?;
        Ok(Self {
            ambient_dim: spanning.nrows(),
            base,
            frame,
            contact,
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    /// Max |ω(f_i, f_j)| over frame pairs, ω = dp ∧ dq.
    ///
    /// In the contact case the frame vectors are read as tangent vectors of
    /// `J^1` and ω is the restriction of `d(−p·dq)` to the contact planes.
    pub fn isotropy_defect(&self) -> f64 {
        let n = if self.contact {
            (self.ambient_dim - 1) / 2
        } else {
            self.ambient_dim / 2
        };
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let mut w = 0.0;
                for k in 0..n {
                    w += self.frame[(n + k, i)] * self.frame[(k, j)]
                        - self.frame[(n + k, j)] * self.frame[(k, i)];
                }
                worst = worst.max(w.abs());
            }
        }
        worst
    }

    /// Max |(dz − p·dq)(f_i)| over the frame; 0 unless `contact`.
    pub fn contact_defect(&self) -> f64 {
        if !self.contact {
            return 0.0;
        }
        let n = (self.ambient_dim - 1) / 2;
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            let mut a = self.frame[(2 * n, i)];
            for k in 0..n {
                a -= self.base[n + k] * self.frame[(k, i)];
            }
            worst = worst.max(a.abs());
        }
        worst
    }
}

/// Orthonormal basis of the column space; errors if the numeric rank is
/// below `expected_rank`.
fn orthonormal_basis(m: &DMatrix<f64>, expected_rank: usize) -> Result<DMatrix<f64>, GeomError> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.as_ref().expect("svd with u");
    let smax = svd.singular_values.max();
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > RANK_TOL * smax.max(1e-300))
        .count();
    if rank < expected_rank {
        return Err(GeomError::RankDeficient {
            rank,
            expected: expected_rank,
        });
    }
    Ok(u.columns(0, expected_rank).into_owned())
}

/// Principal angles (ascending, radians) between the column spans of `a` and `b`.
///
/// Cosine form via the SVD of `Qa' Qb`, with the sine form (SVD of
/// `(I − Qa Qa') Qb`) substituted below π/4 where acos loses half the
/// working precision.
pub fn principal_angles(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>, GeomError> {
    if a.nrows() != b.nrows() {
        return Err(GeomError::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    let k = a.ncols().min(b.ncols());
    let qa = orthonormal_basis(a, a.ncols())?;
    let qb = orthonormal_basis(b, b.ncols())?;

    let prod = qa.transpose() * &qb;
    let mut cosines: Vec<f64> = prod.svd(false, false).singular_values.iter().copied().collect();
    cosines.sort_by(|x, y| y.partial_cmp(x).unwrap());

    let residual = &qb - &qa * (qa.transpose() * &qb);
    let mut sines: Vec<f64> = residual
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sines.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sines.resize(k, 1.0);

    Ok((0..k)
        .map(|i| {
            let from_cos = cosines.get(i).copied().unwrap_or(0.0).clamp(-1.0, 1.0).acos();
            if from_cos < std::f64::consts::FRAC_PI_4 {
                sines[i].clamp(-1.0, 1.0).asin()
            } else {
                from_cos
            }
        })
        .collect())
}

/// Largest principal angle between two planes of the same dimension.
///
/// This is the operator-norm flavor of subspace distance: zero iff the spans
/// agree, symmetric, and it satisfies the triangle inequality.
pub fn plane_distance(p: &LagrangianPlane, q: &LagrangianPlane) -> Result<f64, GeomError> {
    if p.ambient_dim != q.ambient_dim {
        return Err(GeomError::DimensionMismatch {
            expected: p.ambient_dim,
            got: q.ambient_dim,
        });
    }
    let angles = principal_angles(&p.frame, &q.frame)?;
    Ok(angles.last().copied().unwrap_or(0.0))
}

/// Dimension of the numerical intersection of `p` with the vertical plane:
/// the number of principal angles below `tol`. Zero means transverse.
pub fn vertical_defect(p: &LagrangianPlane, fol: &FoliationSpec, tol: f64) -> Result<usize, GeomError> {
    let vert = fol.vertical_frame();
    if vert.nrows() != p.ambient_dim {
        return Err(GeomError::DimensionMismatch {
            expected: vert.nrows(),
            got: p.ambient_dim,
        });
    }
    let angles = principal_angles(&p.frame, &vert)?;
    Ok(angles.iter().filter(|a| **a < tol).count())
}

fn plane_from_jet(map: &dyn SmoothMap, q: &[f64]) -> Result<(DVector<f64>, DMatrix<f64>), GeomError> {
    let jet = eval_jet(map, q, JetOrder::One)?;
    Ok((jet.value, jet.jacobian))
}

fn projector(frame: &DMatrix<f64>) -> DMatrix<f64> {
    frame * frame.transpose()
}

/// Dominant n-dimensional subspace of a symmetric positive semidefinite
/// accumulator matrix.
fn dominant_subspace(acc: &DMatrix<f64>, n: usize) -> DMatrix<f64> {
    let se = acc.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let mut out = DMatrix::zeros(acc.nrows(), n);
    for (c, &i) in order.iter().take(n).enumerate() {
        out.set_column(c, &se.eigenvectors.column(i));
    }
    out
}

fn probe_plane(
    map: &dyn SmoothMap,
    q: &[f64],
    kernel: &DVector<f64>,
    step: f64,
    sides: &[f64],
) -> Result<DMatrix<f64>, GeomError> {
    let n = map.domain_dim();
    let d = map.target().dim();
    let mut acc = DMatrix::zeros(d, d);
    for s in sides {
        let qs: Vec<f64> = q
            .iter()
            .enumerate()
            .map(|(i, x)| x + s * step * kernel[i])
            .collect();
        let (_, jac) = plane_from_jet(map, &qs)?;
        // normalize columns so that collapsing directions do not drown the
        // surviving ones before orthonormalization
        let mut jn = jac.clone();
        for c in 0..jn.ncols() {
            let norm = jn.column(c).norm();
            if norm > 1e-300 {
                jn.set_column(c, &(jn.column(c) / norm));
            }
        }
        let basis = orthonormal_basis(&jn, n)?;
        acc += projector(&basis);
    }
    Ok(dominant_subspace(&acc, n))
}

/// Tangent plane `df(T_q L)` of `map` at `q`.
///
/// At full rank this is the Jacobian column span. At corank-1 points
/// (wrinkle and cusp loci) the limiting plane is computed by probing along
/// the kernel at parameter distance `1e-4` on both sides, averaging the two
/// projectors, and cross-validating against the half-step result.
pub fn gauss_plane(map: &dyn SmoothMap, q: &[f64]) -> Result<LagrangianPlane, GeomError> {
    let n = map.domain_dim();
    let (value, jac) = plane_from_jet(map, q)?;
    let svd = jac.clone().svd(true, true);
    let smax = svd.singular_values.max();
    // floor the scale at 1: at a deep singular point every column is tiny
    // and a purely relative test would hallucinate full rank
    let rank = svd
        .singular_values
        .iter()
        .filter(|s| **s > RANK_TOL * smax.max(1.0))
        .count();
    let contact = matches!(map.target(), TargetSpace::JetOne { .. });
    if rank == n {
        let frame = orthonormal_basis(&jac, n)?;
        return Ok(LagrangianPlane {
            ambient_dim: jac.nrows(),
            base: value,
            frame,
            contact,
        });
    }
    if rank + 1 < n {
        return Err(GeomError::CorankTooHigh { corank: n - rank });
    }
    let kernel = kernel_direction(&jac);
    let coarse = probe_plane(map, q, &kernel, LIMIT_STEP, &[-1.0, 1.0])?;
    let fine = probe_plane(map, q, &kernel, LIMIT_STEP / 2.0, &[-1.0, 1.0])?;
    let gap = principal_angles(&coarse, &fine)?
        .last()
        .copied()
        .unwrap_or(0.0);
    if gap > LIMIT_AGREE {
        return Err(GeomError::LimitPlaneUnstable {
            disagreement: gap,
            tol: LIMIT_AGREE,
        });
    }
    Ok(LagrangianPlane {
        ambient_dim: jac.nrows(),
        base: value,
        frame: fine,
        contact,
    })
}

/// Limiting plane at a corank-1 point using probes on one side only
/// (Richardson extrapolation of the projectors at steps h and h/2).
///
/// `side` is +1.0 or -1.0.
pub fn gauss_plane_one_sided(
    map: &dyn SmoothMap,
    q: &[f64],
    side: f64,
) -> Result<LagrangianPlane, GeomError> {
    let n = map.domain_dim();
    let (value, jac) = plane_from_jet(map, q)?;
    let kernel = kernel_direction(&jac);
    let p_h = probe_plane(map, q, &kernel, LIMIT_STEP, &[side])?;
    let p_h2 = probe_plane(map, q, &kernel, LIMIT_STEP / 2.0, &[side])?;
    let extrapolated = 2.0 * projector(&p_h2) - projector(&p_h);
    // symmetrize before the eigen solve; extrapolation can leave tiny skew
    let sym = (&extrapolated + extrapolated.transpose()) * 0.5;
    let frame = dominant_subspace(&sym, n);
    Ok(LagrangianPlane {
        ambient_dim: jac.nrows(),
        base: value,
        frame,
        contact: matches!(map.target(), TargetSpace::JetOne { .. }),
    })
}

/// Limiting plane at a corank-1 point (the two-sided rule used by
/// [`gauss_plane`]), exposed for cross-validation against the one-sided rule.
pub fn gauss_plane_limit(map: &dyn SmoothMap, q: &[f64]) -> Result<LagrangianPlane, GeomError> {
    let (value, jac) = plane_from_jet(map, q)?;
    let kernel = kernel_direction(&jac);
    let frame = probe_plane(map, q, &kernel, LIMIT_STEP / 2.0, &[-1.0, 1.0])?;
    Ok(LagrangianPlane {
        ambient_dim: jac.nrows(),
        base: value,
        frame,
        contact: matches!(map.target(), TargetSpace::JetOne { .. }),
    })
}

/// Unit right-singular vector for the smallest singular value.
pub fn kernel_direction(jac: &DMatrix<f64>) -> DVector<f64> {
    let svd = jac.clone().svd(false, true);
    let vt = svd.v_t.as_ref().expect("svd with v_t");
    let idx = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    vt.row(idx).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::FnMap;
    use nalgebra::dvector;

    fn horizontal(n: usize) -> LagrangianPlane {
        let mut frame = DMatrix::zeros(2 * n, n);
        for k in 0..n {
            frame[(k, k)] = 1.0;
        }
        LagrangianPlane {
            ambient_dim: 2 * n,
            base: DVector::zeros(2 * n),
            frame,
            contact: false,
        }
    }

    #[test]
    fn identical_planes_have_zero_distance() {
        let p = horizontal(2);
        assert_eq!(plane_distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn rotated_line_distance_is_the_angle() {
        let theta: f64 = 0.3;
        let q = LagrangianPlane::from_span(
            DVector::zeros(2),
            DMatrix::from_column_slice(2, 1, &[theta.cos(), theta.sin()]),
            false,
        )
        .unwrap();
        let d = plane_distance(&horizontal(1), &q).unwrap();
        assert!((d - 0.3).abs() < 1e-12, "distance {d}");
    }

    #[test]
    fn vertical_defect_counts_intersection() {
        let fol = FoliationSpec::cotangent(2);
        let h = horizontal(2);
        assert_eq!(vertical_defect(&h, &fol, 1e-6).unwrap(), 0);
        let v = LagrangianPlane {
            ambient_dim: 4,
            base: DVector::zeros(4),
            frame: fol.vertical_frame(),
            contact: false,
        };
        assert_eq!(vertical_defect(&v, &fol, 1e-6).unwrap(), 2);
    }

    #[test]
    fn cusp_limit_plane_is_horizontal() {
        // q -> (q^2, q^3) in T*R^1: the limiting tangent line at q = 0 is
        // spanned by ∂q of the target, so the wrinkle is transverse to the
        // cotangent fibres there.
        let m = FnMap::value_only("cusp", 1, TargetSpace::Cotangent { n: 1 }, |q| {
            dvector![q[0] * q[0], q[0] * q[0] * q[0]]
        });
        let p = gauss_plane(&m, &[0.0]).unwrap();
        let h = horizontal(1);
        let d = plane_distance(&p, &h).unwrap();
        assert!(d < 1e-6, "distance to horizontal {d}");
        assert_eq!(
            vertical_defect(&p, &FoliationSpec::cotangent(1), 1e-3).unwrap(),
            0
        );
    }

    #[test]
    fn immersed_fold_is_vertical_at_the_fold() {
        // q -> (q^2, (3/2) q) in T*R^1: an immersed fold; at q = 0 the
        // tangent line is the cotangent fibre, a 1-dimensional tangency.
        let m = FnMap::value_only("fold", 1, TargetSpace::Cotangent { n: 1 }, |q| {
            dvector![q[0] * q[0], 1.5 * q[0]]
        });
        let p = gauss_plane(&m, &[0.0]).unwrap();
        assert_eq!(
            vertical_defect(&p, &FoliationSpec::cotangent(1), 1e-3).unwrap(),
            1
        );
    }

    #[test]
    fn corank_two_is_rejected() {
        let m = FnMap::value_only("flat", 2, TargetSpace::Euclidean { dim: 3 }, |q| {
            dvector![
                q[0] * q[0] * q[0],
                q[1] * q[1] * q[1],
                q[0] * q[0] * q[1] * q[1]
            ]
        });
        match gauss_plane(&m, &[0.0, 0.0]) {
            Err(GeomError::CorankTooHigh { corank }) => assert_eq!(corank, 2),
            other => panic!("expected corank error, got {other:?}"),
        }
    }
}
