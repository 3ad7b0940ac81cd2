//! Biqutrit curves and pictures.
//!
//! Two families are studied, `ρ₁^λ = (1−λ)ρ₃ + λρ₁` and
//! `ρ₂^λ = (1−λ)ρ₃ + λρ₂`, whose k-norms are known in closed form. The plane
//! through `ρ₃`, `ρᵢ` and `ρ*` shows the nested regions `D ⊂ BP₂ ⊂ BP₁`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{rho, rho_lambda, sigma};
use crate::knorm::{max_expectation_ladder, min_knorm, SolverConfig};
use crate::linalg::{hs_inner, schmidt_rank, CMatrix, HermitianOp, PureVector, State, C64, ZERO};
use crate::tol;

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    Ok(())
}

fn check_family(family: usize) -> Result<()> {
    if family != 1 && family != 2 {
        return Err(Error::InvalidParameter(format!("family must be 1 or 2, got {family}")));
    }
    Ok(())
}

/// Reshaping of `α₃√(1−λ) ξ₃ + α₁√λ ξ₁`.
pub fn family1_matrix(lambda: f64, a3: C64, a1: C64) -> CMatrix {
    let a = a3 * ((1.0 - lambda) / 3.0).sqrt();
    let mut m = CMatrix::from_diagonal_element(3, 3, a);
    m[(0, 1)] = a1 * lambda.sqrt();
    m
}

/// Reshaping of `α₃√(1−λ) ξ₃ + α₂√λ ξ₂`.
pub fn family2_matrix(lambda: f64, a3: C64, a2: C64) -> CMatrix {
    let a = a3 * ((1.0 - lambda) / 3.0).sqrt();
    let b = a2 * (lambda / 2.0).sqrt();
    let mut m = CMatrix::from_diagonal_element(3, 3, a);
    m[(0, 1)] = b;
    m[(1, 0)] = b;
    m
}

/// Eigenvalues `(μ, μ₊, μ₋)` of `A*A` for `A =` [`family1_matrix`].
///
/// Expects `λ ∈ [0, 1]` and `|α₃|² + |α₁|² ≤ 1`.
pub fn eigvals_family1(lambda: f64, a3: C64, a1: C64) -> (f64, f64, f64) {
    let mu = (1.0 - lambda) / 3.0 * a3.norm_sqr();
    let p = a1.norm_sqr();
    let centre = mu + lambda / 2.0 * p;
    let spread = a1.norm() * lambda.sqrt() * (mu + lambda / 4.0 * p).sqrt();
    (mu, centre + spread, centre - spread)
}

/// Eigenvalues `(ν, ν₊, ν₋)` of `B*B` for `B =` [`family2_matrix`].
pub fn eigvals_family2(lambda: f64, a3: C64, a2: C64) -> (f64, f64, f64) {
    let nu = (1.0 - lambda) / 3.0 * a3.norm_sqr();
    let centre = nu + lambda / 2.0 * a2.norm_sqr();
    let cross = a3 * a2.conj() + a3.conj() * a2;
    let spread = (lambda * (1.0 - lambda) / 6.0).sqrt() * cross.norm();
    (nu, centre + spread, centre - spread)
}

/// `‖ρᵢ^λ‖_S(k)` from the piecewise closed forms, `i = family`.
pub fn closed_form_knorm(family: usize, lambda: f64, k: usize) -> Result<f64> {
    check_family(family)?;
    check_lambda(lambda)?;
    let l = lambda;
    Ok(match (family, k) {
        (_, 3) => (1.0 - l).max(l),
        (1, 1) if l <= 0.4 => 4.0 / 3.0 * (1.0 - l).powi(2) / (4.0 - 7.0 * l),
        (1, 2) if l <= 0.5 => (2.0 * ((1.0 - l) / (4.0 - 7.0 * l)).sqrt() + 1.0) * (1.0 - l) / 3.0,
        (1, 1) | (1, 2) => l,
        (2, 1) => (2.0 + l) / 6.0,
        (2, 2) if l <= 0.5 => (4.0 - l + (25.0 * l * l - 32.0 * l + 16.0).sqrt()) / 12.0,
        (2, 2) => l,
        _ => return Err(Error::LevelOutOfRange { k, max: 3 }),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub lambda: f64,
    pub k: usize,
    pub closed_form: f64,
    pub optimizer: f64,
    pub abs_gap: f64,
}

/// `count` equally spaced points covering `[0, 1]`.
pub fn uniform_grid(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..count).map(|j| j as f64 / (count - 1) as f64).collect(),
    }
}

/// Closed form and optimizer value for `k = 1, 2, 3` at every grid point,
/// ordered by grid index then `k`.
pub fn sweep_family_levels(family: usize, grid: &[f64], cfg: &SolverConfig) -> Result<Vec<CurvePoint>> {
    check_family(family)?;
    grid.iter().try_for_each(|&l| check_lambda(l))?;
    let rows: Vec<Vec<CurvePoint>> = grid
        .par_iter()
        .map(|&lambda| {
            let state = rho_lambda(family, lambda)?;
            let ladder = max_expectation_ladder(&state, 3, cfg)?;
            ladder
                .iter()
                .map(|res| {
                    let closed_form = closed_form_knorm(family, lambda, res.k)?;
                    Ok(CurvePoint {
                        lambda,
                        k: res.k,
                        closed_form,
                        optimizer: res.value,
                        abs_gap: (closed_form - res.value).abs(),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn sweep_family(family: usize, k: usize, grid: &[f64], cfg: &SolverConfig) -> Result<Vec<CurvePoint>> {
    if !(1..=3).contains(&k) {
        return Err(Error::LevelOutOfRange { k, max: 3 });
    }
    let mut all = sweep_family_levels(family, grid, cfg)?;
    all.retain(|p| p.k == k);
    Ok(all)
}

pub fn sweep_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("lambda,k,closed_form,optimizer,gap\n");
    for p in points {
        let _ = writeln!(out, "{},{},{},{},{}", p.lambda, p.k, p.closed_form, p.optimizer, p.abs_gap);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentCheck {
    pub on_boundary: bool,
    #[serde(skip)]
    pub witness_vector: Option<PureVector>,
    /// `(⟨ξ|W1|ξ⟩, ⟨ξ|W2|ξ⟩)` at the witness vector.
    pub forms: Option<(f64, f64)>,
}

/// Whether the segment between two k-blockpositive matrices lies on the
/// boundary of `BP_k`, i.e. whether some unit `ξ` of Schmidt rank `≤ k` has
/// `⟨ξ|W1|ξ⟩ = 0 = ⟨ξ|W2|ξ⟩`.
///
/// Candidates are tried first. Otherwise, since both quadratic forms are
/// nonnegative on such `ξ`, a joint zero exists iff `|W1 + W2|_S(k) = 0`, and
/// the minimizer of the sum is searched instead of the sum of squares.
pub fn boundary_segment_check(
    w1: &HermitianOp,
    w2: &HermitianOp,
    k: usize,
    candidates: &[PureVector],
    cfg: &SolverConfig,
) -> Result<SegmentCheck> {
    let dim = w1.dim();
    if w2.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim.total(), found: w2.dim().total() });
    }
    for w in [w1, w2] {
        let floor = min_knorm(w, k, cfg)?.value;
        if floor < -tol::EPS_BP {
            return Err(Error::Precondition(format!("input is not {k}-blockpositive: |W|_S({k}) = {floor:.3e}")));
        }
    }
    let joint = |v: &PureVector| (w1.expectation(v.amplitudes()), w2.expectation(v.amplitudes()));
    let is_zero = |(a, b): (f64, f64)| a.abs() <= tol::EPS_BP && b.abs() <= tol::EPS_BP;
    for c in candidates {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim.total(), found: c.dim().total() });
        }
        if c.schmidt_rank() <= k && is_zero(joint(c)) {
            return Ok(SegmentCheck { on_boundary: true, forms: Some(joint(c)), witness_vector: Some(c.clone()) });
        }
    }
    let sum = w1 + w2;
    let best = min_knorm(&sum, k, cfg)?;
    let forms = joint(&best.certificate);
    if is_zero(forms) {
        return Ok(SegmentCheck { on_boundary: true, forms: Some(forms), witness_vector: Some(best.certificate) });
    }
    Ok(SegmentCheck { on_boundary: false, forms: None, witness_vector: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Plane {
    H1,
    H2,
}

impl Plane {
    pub fn index(self) -> usize {
        match self {
            Plane::H1 => 1,
            Plane::H2 => 2,
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H1" | "h1" | "1" => Ok(Plane::H1),
            "H2" | "h2" | "2" => Ok(Plane::H2),
            _ => Err(Error::InvalidParameter(format!("plane must be H1 or H2, got {s:?}"))),
        }
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H{}", self.index())
    }
}

/// `a·ρ₃ + b·ρᵢ + c·ρ*` with `a + b + c = 1`, `i` the plane index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneCoord {
    pub plane: Plane,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Orthonormal drawing frame of a plane: `ρᵢ` at the origin, `ρ₃` straight
/// above it and `ρ*` to the right. Distances are Hilbert-Schmidt distances.
#[derive(Clone, Debug)]
pub struct PlaneFrame {
    pub plane: Plane,
    rho3: State,
    rho_i: State,
    star: State,
    /// Drawing coordinates of `ρ₃` and `ρ*`.
    top: (f64, f64),
    centre: (f64, f64),
}

impl PlaneFrame {
    pub fn new(plane: Plane) -> Result<Self> {
        let rho3 = rho(3)?;
        let rho_i = rho(plane.index())?;
        let star = State::maximally_mixed(rho3.dim());
        let u = rho3.as_op() - rho_i.as_op();
        let w = star.as_op() - rho_i.as_op();
        let uu = hs_inner(&u, &u)?;
        let y = hs_inner(&w, &u)? / uu.sqrt();
        let x = (hs_inner(&w, &w)? - y * y).sqrt();
        Ok(Self { plane, rho3, rho_i, star, top: (0.0, uu.sqrt()), centre: (x, y) })
    }

    pub fn centre(&self) -> (f64, f64) {
        self.centre
    }

    pub fn xy(&self, p: &PlaneCoord) -> (f64, f64) {
        (p.a * self.top.0 + p.c * self.centre.0, p.a * self.top.1 + p.c * self.centre.1)
    }

    pub fn coord(&self, (x, y): (f64, f64)) -> PlaneCoord {
        let c = x / self.centre.0;
        let a = (y - c * self.centre.1) / self.top.1;
        PlaneCoord { plane: self.plane, a, b: 1.0 - a - c, c }
    }

    pub fn operator(&self, p: &PlaneCoord) -> HermitianOp {
        let partial = &self.rho3.scaled(p.a) + &self.rho_i.scaled(p.b);
        &partial + &self.star.scaled(p.c)
    }

    /// Vertices `ρ₃`, `ρᵢ`, `σᵢ` of the state region in the plane.
    pub fn state_triangle(&self) -> [PlaneCoord; 3] {
        let plane = self.plane;
        [
            PlaneCoord { plane, a: 1.0, b: 0.0, c: 0.0 },
            PlaneCoord { plane, a: 0.0, b: 1.0, c: 0.0 },
            PlaneCoord { plane, a: -1.0 / 7.0, b: -1.0 / 7.0, c: 9.0 / 7.0 },
        ]
    }

    /// `σᵢ` as an operator, for cross-checking [`PlaneFrame::state_triangle`].
    pub fn sigma(&self) -> Result<State> {
        sigma(self.plane.index())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub k: usize,
    pub ray_index: usize,
    /// Distance from `ρ*` in drawing units.
    pub t: f64,
    pub coord: PlaneCoord,
    pub x: f64,
    pub y: f64,
}

/// Crossing of the `BP_k` boundary along the ray from `ρ*` in drawing
/// direction `(dx, dy)` (normalized internally), by bisection on the sign of
/// `|X|_S(k)` evaluated on the full operator. The sign is taken exactly, not
/// up to the blockpositivity tolerance, which would bias the crossing outward.
pub fn bp_boundary_along(frame: &PlaneFrame, k: usize, direction: (f64, f64), cfg: &SolverConfig) -> Result<f64> {
    let norm = direction.0.hypot(direction.1);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidParameter("ray direction must be nonzero".into()));
    }
    let (dx, dy) = (direction.0 / norm, direction.1 / norm);
    let (x0, y0) = frame.centre;
    let at = |t: f64| frame.operator(&frame.coord((x0 + t * dx, y0 + t * dy)));
    // Rank-k vectors seen to be negative on the ray stay negative further out.
    let mut witness: Option<PureVector> = None;
    let mut inside = |t: f64| -> Result<bool> {
        let op = at(t);
        if let Some(w) = &witness {
            if op.expectation(w.amplitudes()) < 0.0 {
                return Ok(false);
            }
        }
        let res = min_knorm(&op, k, cfg)?;
        if res.value >= 0.0 {
            Ok(true)
        } else {
            witness = Some(res.certificate);
            Ok(false)
        }
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut steps = 0;
    while inside(hi)? {
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if steps > tol::RAY_MAX_STEPS {
            return Err(Error::Precondition("ray never leaves the blockpositive set".into()));
        }
    }
    for _ in 0..tol::RAY_MAX_STEPS {
        if hi - lo <= tol::RAY_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `BP_k` boundary traced along `num_rays` equally spaced rays from `ρ*`.
pub fn bp_boundary_on_plane(plane: Plane, k: usize, num_rays: usize, cfg: &SolverConfig) -> Result<Vec<BoundaryPoint>> {
    if num_rays < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 rays, got {num_rays}")));
    }
    let frame = PlaneFrame::new(plane)?;
    frame.rho3.dim().check_level(k)?;
    cfg.validate()?;
    let (x0, y0) = frame.centre;
    (0..num_rays)
        .into_par_iter()
        .map(|j| {
            let angle = std::f64::consts::TAU * j as f64 / num_rays as f64;
            let (dx, dy) = (angle.cos(), angle.sin());
            let t = bp_boundary_along(&frame, k, (dx, dy), cfg)?;
            let (x, y) = (x0 + t * dx, y0 + t * dy);
            Ok(BoundaryPoint { k, ray_index: j, t, coord: frame.coord((x, y)), x, y })
        })
        .collect()
}

pub fn plane_csv(points: &[BoundaryPoint]) -> String {
    let mut out = String::from("plane,k,ray_index,a,b,c,x,y\n");
    for p in points {
        let c = &p.coord;
        let _ = writeln!(out, "{},{},{},{},{},{},{},{}", c.plane, p.k, p.ray_index, c.a, c.b, c.c, p.x, p.y);
    }
    out
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

struct Canvas {
    min: (f64, f64),
    max: (f64, f64),
    size: f64,
    margin: f64,
}

impl Canvas {
    fn fit<'a>(points: impl Iterator<Item = &'a (f64, f64)>, size: f64) -> Self {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        Self { min, max, size, margin: 40.0 }
    }

    fn scale(&self) -> f64 {
        let span = (self.max.0 - self.min.0).max(self.max.1 - self.min.1).max(1e-12);
        (self.size - 2.0 * self.margin) / span
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let s = self.scale();
        (self.margin + (x - self.min.0) * s, self.size - self.margin - (y - self.min.1) * s)
    }

    fn polyline(&self, out: &mut String, pts: &[(f64, f64)], closed: bool, colour: &str) {
        let tag = if closed { "polygon" } else { "polyline" };
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<{tag} points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }

    fn label(&self, out: &mut String, at: (f64, f64), text: &str, colour: &str) {
        let (x, y) = self.map(at);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{colour}">{text}</text>"#, x + 4.0, y - 4.0);
    }
}

fn svg_open(size: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

/// Closed boundary curves per level, the state triangle and named points.
pub fn plane_svg(frame: &PlaneFrame, boundaries: &[Vec<BoundaryPoint>]) -> String {
    let triangle: Vec<(f64, f64)> = frame.state_triangle().iter().map(|p| frame.xy(p)).collect();
    let curves: Vec<Vec<(f64, f64)>> =
        boundaries.iter().map(|b| b.iter().map(|p| (p.x, p.y)).collect()).collect();
    let canvas = Canvas::fit(triangle.iter().chain(curves.iter().flatten()), 480.0);
    let mut out = svg_open(canvas.size);
    canvas.polyline(&mut out, &triangle, true, "black");
    for (curve, pts) in boundaries.iter().zip(&curves) {
        let Some(first) = curve.first() else { continue };
        let colour = PALETTE[(first.k - 1) % PALETTE.len()];
        canvas.polyline(&mut out, pts, true, colour);
        let top = pts.iter().copied().fold((0.0, f64::NEG_INFINITY), |a, p| if p.1 > a.1 { p } else { a });
        canvas.label(&mut out, top, &format!("BP{}", first.k), colour);
    }
    let i = frame.plane.index();
    for (p, name) in triangle.iter().zip(["ρ3".to_string(), format!("ρ{i}"), format!("σ{i}")]) {
        canvas.label(&mut out, *p, &name, "black");
    }
    canvas.label(&mut out, frame.centre, "ρ*", "black");
    out.push_str("</svg>\n");
    out
}

/// One curve per `k` of optimizer values against `λ`.
pub fn curves_svg(points: &[CurvePoint]) -> String {
    let mut levels: Vec<usize> = points.iter().map(|p| p.k).collect();
    levels.sort_unstable();
    levels.dedup();
    let all: Vec<(f64, f64)> = points.iter().map(|p| (p.lambda, p.optimizer)).collect();
    let bounds = [(0.0, 0.0), (1.0, 1.0)];
    let canvas = Canvas::fit(all.iter().chain(bounds.iter()), 480.0);
    let mut out = svg_open(canvas.size);
    canvas.polyline(&mut out, &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], true, "#999999");
    for k in levels {
        let colour = PALETTE[(k - 1) % PALETTE.len()];
        let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.k == k).map(|p| (p.lambda, p.optimizer)).collect();
        canvas.polyline(&mut out, &pts, false, colour);
        if let Some(&end) = pts.last() {
            canvas.label(&mut out, end, &format!("S({k})"), colour);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// `(0,1,1)⊗(0,1,1)`, `|00⟩+|11⟩`, `(1,−i,0)⊗(1,−i,0)`, `(1,1,0)⊗(1,1,0)`,
/// normalized. They certify the boundary segments
/// `ρᵢ–ω_{3,1}`, `ρᵢ–ω_{3,2}`, `ρ₃–ω_{2,1}` and `ω_{2,1}–ω_{3,1}`.
pub fn eta(i: usize) -> Result<PureVector> {
    let one = C64::new(1.0, 0.0);
    let minus_i = C64::new(0.0, -1.0);
    let normalized_product = |x: [C64; 3]| {
        let n = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let x: Vec<C64> = x.iter().map(|z| z / n).collect();
        PureVector::product(&x, &x)
    };
    match i {
        1 => normalized_product([ZERO, one, one]),
        2 => {
            let d = crate::families::d33();
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut v = crate::linalg::CVector::zeros(9);
            v[d.index(0, 0)] = C64::new(s, 0.0);
            v[d.index(1, 1)] = C64::new(s, 0.0);
            PureVector::new(d, v)
        }
        3 => normalized_product([one, minus_i, ZERO]),
        4 => normalized_product([one, one, ZERO]),
        _ => Err(Error::InvalidParameter(format!("eta index must be 1..=4, got {i}"))),
    }
}

/// Schmidt rank of [`eta`], 1 except for `η₂`.
pub fn eta_rank(i: usize) -> Result<usize> {
    let v = eta(i)?;
    schmidt_rank(v.dim(), v.amplitudes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{omega, rho as named_rho};
    use crate::linalg::sorted_svd;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn eigen_formula_examples() {
        let (a, b, d) = eigvals_family1(0.3, c(0.8), ZERO);
        assert_abs_diff_eq!(a, 0.7 / 3.0 * 0.64, epsilon = 1e-15);
        assert_abs_diff_eq!(b, a, epsilon = 1e-15);
        assert_abs_diff_eq!(d, a, epsilon = 1e-15);
        let (a, b, d) = eigvals_family1(0.0, c(1.0), ZERO);
        assert_eq!((a, b, d), (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0));
        let (a, b, d) = eigvals_family1(0.5, ZERO, c(1.0));
        assert_abs_diff_eq!(a, 0.0);
        assert_abs_diff_eq!(b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-15);
        let (a, b, d) = eigvals_family2(0.4, c(0.5), ZERO);
        assert_abs_diff_eq!(b, a, epsilon = 1e-15);
        assert_abs_diff_eq!(d, a, epsilon = 1e-15);
        // α₃ᾱ₂ purely imaginary makes the cross term vanish
        let (_, b, d) = eigvals_family2(0.4, c(0.6), C64::new(0.0, 0.8));
        assert_abs_diff_eq!(b, d, epsilon = 1e-15);
    }

    fn svd_squares(m: &CMatrix) -> Vec<f64> {
        let (s, _, _) = sorted_svd(m);
        let mut v: Vec<f64> = s.iter().map(|x| x * x).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    fn sorted(t: (f64, f64, f64)) -> Vec<f64> {
        let mut v = vec![t.0, t.1, t.2];
        v.sort_by(f64::total_cmp);
        v
    }

    fn random_alpha(rng: &mut ChaCha8Rng) -> (C64, C64) {
        let r: f64 = rng.random();
        let (p3, p2): (f64, f64) = (rng.random::<f64>() * 6.3, rng.random::<f64>() * 6.3);
        let scale: f64 = rng.random::<f64>().sqrt();
        (C64::from_polar(scale * r.sqrt(), p3), C64::from_polar(scale * (1.0 - r).sqrt(), p2))
    }

    #[test]
    fn eigen_formulas_match_svd_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let lambda: f64 = rng.random();
            let (a3, a) = random_alpha(&mut rng);
            let e1 = eigvals_family1(lambda, a3, a);
            let e2 = eigvals_family2(lambda, a3, a);
            let s1 = (1.0 - lambda) * a3.norm_sqr() + lambda * a.norm_sqr();
            assert_abs_diff_eq!(e1.0 + e1.1 + e1.2, s1, epsilon = 1e-13);
            assert_abs_diff_eq!(e2.0 + e2.1 + e2.2, s1, epsilon = 1e-13);
            for (got, want) in sorted(e1).iter().zip(svd_squares(&family1_matrix(lambda, a3, a))) {
                assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
            }
            for (got, want) in sorted(e2).iter().zip(svd_squares(&family2_matrix(lambda, a3, a))) {
                assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(closed_form_knorm(1, 0.0, 1).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_knorm(1, 0.0, 2).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_knorm(2, 1.0, 1).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_knorm(1, 0.5, 2).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_knorm(1, 0.2, 1).unwrap(), 0.64 * 4.0 / 3.0 / 2.6, epsilon = 1e-15);
        assert!(closed_form_knorm(3, 0.5, 1).is_err());
        assert!(closed_form_knorm(1, 1.5, 1).is_err());
        assert!(closed_form_knorm(1, 0.5, 4).is_err());
    }

    #[test]
    fn closed_forms_continuous_at_breakpoints() {
        let eps = 1e-13;
        for (family, k, at) in [(1, 1, 0.4), (1, 2, 0.5), (2, 2, 0.5), (1, 3, 0.5), (2, 3, 0.5)] {
            let left = closed_form_knorm(family, at - eps, k).unwrap();
            let right = closed_form_knorm(family, at + eps, k).unwrap();
            assert!((left - right).abs() < 1e-12, "family {family} k {k}: {left} vs {right}");
        }
    }

    #[test]
    fn second_family_first_level_is_affine() {
        let f = |l| closed_form_knorm(2, l, 1).unwrap();
        let (a, b, d) = (f(0.1), f(0.45), f(0.8));
        let slope1 = (b - a) / 0.35;
        let slope2 = (d - b) / 0.35;
        assert_abs_diff_eq!(slope1, slope2, epsilon = 1e-12);
    }

    #[test]
    fn sweep_examples() {
        let pts = sweep_family(1, 3, &[1.0], &cfg()).unwrap();
        assert_abs_diff_eq!(pts[0].closed_form, 1.0);
        assert_abs_diff_eq!(pts[0].optimizer, 1.0, epsilon = 1e-12);
        let pts = sweep_family(2, 1, &[0.5], &cfg()).unwrap();
        assert_abs_diff_eq!(pts[0].closed_form, 5.0 / 12.0, epsilon = 1e-15);
        assert!(pts[0].abs_gap < 1e-6);
        let pts = sweep_family(1, 1, &[0.2], &cfg()).unwrap();
        assert_abs_diff_eq!(pts[0].closed_form, 0.328_205_128_205_128_2, epsilon = 1e-15);
        assert!(pts[0].abs_gap < 1e-6);
    }

    #[test]
    fn sweep_csv_layout() {
        let pts = sweep_family_levels(2, &[0.0, 1.0], &cfg()).unwrap();
        let csv = sweep_csv(&pts);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lambda,k,closed_form,optimizer,gap");
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("0,1,"));
    }

    #[test]
    fn eta_certificates() {
        let cases: [(usize, HermitianOp, HermitianOp); 5] = [
            (1, named_rho(1).unwrap().into_op(), omega(3, 1).unwrap()),
            (1, named_rho(2).unwrap().into_op(), omega(3, 1).unwrap()),
            (2, named_rho(1).unwrap().into_op(), omega(3, 2).unwrap()),
            (3, named_rho(3).unwrap().into_op(), omega(2, 1).unwrap()),
            (4, omega(2, 1).unwrap(), omega(3, 1).unwrap()),
        ];
        for (i, w1, w2) in cases {
            let v = eta(i).unwrap();
            assert!(w1.expectation(v.amplitudes()).abs() < 1e-12, "eta {i}");
            assert!(w2.expectation(v.amplitudes()).abs() < 1e-12, "eta {i}");
        }
        assert_eq!(eta_rank(2).unwrap(), 2);
        assert_eq!(eta_rank(4).unwrap(), 1);
    }

    #[test]
    fn segment_examples() {
        let r1 = named_rho(1).unwrap().into_op();
        let w31 = omega(3, 1).unwrap();
        let hit = boundary_segment_check(&r1, &w31, 1, &[eta(1).unwrap()], &cfg()).unwrap();
        assert!(hit.on_boundary);
        let w21 = omega(2, 1).unwrap();
        assert!(boundary_segment_check(&w21, &w31, 1, &[eta(4).unwrap()], &cfg()).unwrap().on_boundary);
        // without candidates the optimizer finds a joint zero too
        assert!(boundary_segment_check(&w21, &w31, 1, &[], &cfg()).unwrap().on_boundary);
        let star = State::maximally_mixed(r1.dim()).into_op();
        for k in 1..=3 {
            assert!(!boundary_segment_check(&star, &star, k, &[eta(2).unwrap()], &cfg()).unwrap().on_boundary);
        }
        assert!(boundary_segment_check(&w31, &star, 2, &[], &cfg()).is_err());
    }

    #[test]
    fn frame_geometry() {
        for plane in [Plane::H1, Plane::H2] {
            let frame = PlaneFrame::new(plane).unwrap();
            let (x, y) = frame.centre();
            assert_abs_diff_eq!(x, (7.0f64 / 18.0).sqrt(), epsilon = 1e-14);
            assert_abs_diff_eq!(y, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-14);
            let tri = frame.state_triangle();
            assert!(frame.operator(&tri[2]).max_abs_diff(&frame.sigma().unwrap()) < 1e-14);
            let round = frame.coord(frame.xy(&tri[2]));
            assert_abs_diff_eq!(round.a, tri[2].a, epsilon = 1e-14);
            assert_abs_diff_eq!(round.c, tri[2].c, epsilon = 1e-14);
            // drawing distances are Hilbert-Schmidt distances
            let (p, q) = (frame.operator(&tri[0]), frame.operator(&tri[2]));
            let diff = &p - &q;
            let (xp, yp) = frame.xy(&tri[0]);
            let (xq, yq) = frame.xy(&tri[2]);
            assert_abs_diff_eq!(hs_inner(&diff, &diff).unwrap().sqrt(), (xp - xq).hypot(yp - yq), epsilon = 1e-13);
        }
    }

    #[test]
    fn ray_away_from_rho3_meets_omega32() {
        let frame = PlaneFrame::new(Plane::H1).unwrap();
        let (x0, y0) = frame.centre();
        let (xa, ya) = frame.xy(&frame.state_triangle()[0]);
        let t = bp_boundary_along(&frame, 2, (x0 - xa, y0 - ya), &cfg()).unwrap();
        // ω_{3,2} = ρ* + (1/5)(ρ* − ρ₃), and |ρ* − ρ₃| = √(8/9)
        assert_abs_diff_eq!(t, (8.0f64 / 9.0).sqrt() / 5.0, epsilon = 1e-7);
        let t1 = bp_boundary_along(&frame, 1, (x0 - xa, y0 - ya), &cfg()).unwrap();
        assert_abs_diff_eq!(t1, (8.0f64 / 9.0).sqrt() / 2.0, epsilon = 1e-7);
    }

    #[test]
    fn ray_toward_pure_state_stops_there() {
        let frame = PlaneFrame::new(Plane::H2).unwrap();
        let (x0, y0) = frame.centre();
        let (xa, ya) = frame.xy(&frame.state_triangle()[0]);
        for k in 1..=3 {
            let t = bp_boundary_along(&frame, k, (xa - x0, ya - y0), &cfg()).unwrap();
            assert_abs_diff_eq!(t, (8.0f64 / 9.0).sqrt(), epsilon = 1e-7);
        }
    }

    #[test]
    fn ray_through_sigma2_passes_it() {
        let frame = PlaneFrame::new(Plane::H2).unwrap();
        let (x0, y0) = frame.centre();
        let (xs, ys) = frame.xy(&frame.state_triangle()[2]);
        let dist = (xs - x0).hypot(ys - y0);
        let t = bp_boundary_along(&frame, 1, (xs - x0, ys - y0), &cfg()).unwrap();
        assert!(t > dist + 1e-3, "{t} vs {dist}");
        let t3 = bp_boundary_along(&frame, 3, (xs - x0, ys - y0), &cfg()).unwrap();
        assert_abs_diff_eq!(t3, dist, epsilon = 1e-7);
    }

    #[test]
    fn plane_boundary_matches_min_norm_oracle() {
        let frame = PlaneFrame::new(Plane::H1).unwrap();
        let pts = bp_boundary_on_plane(Plane::H1, 1, 6, &cfg()).unwrap();
        let (x0, y0) = frame.centre();
        for p in &pts {
            // along ρ* + tD the quadratic forms are 1/9 + t⟨ξ|D|ξ⟩
            let d = &frame.operator(&frame.coord((x0 + (p.x - x0) / p.t, y0 + (p.y - y0) / p.t)))
                - State::maximally_mixed(frame.rho3.dim()).as_op();
            let floor = min_knorm(&d, 1, &cfg()).unwrap().value;
            assert_abs_diff_eq!(p.t, -1.0 / (9.0 * floor), epsilon = 1e-6);
            assert_abs_diff_eq!(p.coord.a + p.coord.b + p.coord.c, 1.0, epsilon = 1e-14);
        }
        let csv = plane_csv(&pts);
        assert!(csv.starts_with("plane,k,ray_index,a,b,c,x,y\nH1,1,0,"));
        let svg = plane_svg(&frame, &[pts]);
        assert!(svg.contains("<polygon") && svg.ends_with("</svg>\n"));
        assert!(bp_boundary_on_plane(Plane::H1, 1, 2, &cfg()).is_err());
    }
}
