//! Named states, witness points and one-parameter families.
//!
//! Everything with rational entries is assembled from integer numerators over
//! a common denominator (see [`HermitianOp::from_rational`]), so these
//! operators match exact fractions to the last bit.
//!
//! The biqutrit catalog uses
//! `ξ₁ = |01⟩`, `ξ₂ = (|01⟩ + |10⟩)/√2`, `ξ₃ = (|00⟩ + |11⟩ + |22⟩)/√3`
//! and `ρᵢ = |ξᵢ⟩⟨ξᵢ|`.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::x_lambda;
use crate::linalg::{partial_transpose, BipartiteDim, CVector, HermitianOp, PureVector, State, Subspace, ONE};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `|Ω⟩⟨Ω|`, `|Ω⟩ = Σ|ii⟩/√n`.
    MaxEntangled { n: usize },
    /// Projection state onto the antisymmetric subspace of `n ⊗ n`.
    Antisymmetric { n: usize },
    /// `ρ* = I / mn`.
    MaximallyMixed { m: usize, n: usize },
    /// `P_E / dim E`.
    Projection(Subspace),
    /// `ρᵢ` in `3 ⊗ 3`, `i ∈ {1, 2, 3}`.
    Rho(usize),
    /// `(1−λ)ρ₃ + λρᵢ`, `i ∈ {1, 2}`, `λ ∈ [0, 1]`.
    RhoLambda { i: usize, lambda: f64 },
    /// `σᵢ = (9ρ* − ρ₃ − ρᵢ)/7`, `i ∈ {1, 2}`.
    Sigma(usize),
    /// `ω_{3,1}`, `ω_{3,2}` or `ω_{2,1}`.
    Omega { i: usize, k: usize },
    /// `X_λ` of the maximally entangled state.
    Isotropic { n: usize, lambda: f64 },
    /// Partial transpose of the isotropic family.
    Werner { n: usize, lambda: f64 },
    /// `X_λ` of the maximally entangled state at `λ = −1/(nk − 1)`.
    Tomiyama { n: usize, k: usize },
}

impl Family {
    /// Kebab-case name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Family::MaxEntangled { .. } => "max-entangled",
            Family::Antisymmetric { .. } => "antisymmetric",
            Family::MaximallyMixed { .. } => "rho-star",
            Family::Projection(_) => "projection",
            Family::Rho(_) => "rho",
            Family::RhoLambda { .. } => "rho-lambda",
            Family::Sigma(_) => "sigma",
            Family::Omega { .. } => "omega",
            Family::Isotropic { .. } => "isotropic",
            Family::Werner { .. } => "werner",
            Family::Tomiyama { .. } => "tomiyama",
        }
    }

    pub fn build(&self) -> Result<HermitianOp> {
        Ok(match self {
            Family::MaxEntangled { n } => max_entangled(*n)?.into_op(),
            Family::Antisymmetric { n } => antisymmetric(*n)?.into_op(),
            Family::MaximallyMixed { m, n } => State::maximally_mixed(BipartiteDim::new(*m, *n)?).into_op(),
            Family::Projection(e) => e.projection_state().into_op(),
            Family::Rho(i) => rho(*i)?.into_op(),
            Family::RhoLambda { i, lambda } => rho_lambda(*i, *lambda)?.into_op(),
            Family::Sigma(i) => sigma(*i)?.into_op(),
            Family::Omega { i, k } => omega(*i, *k)?,
            Family::Isotropic { n, lambda } => isotropic(*n, *lambda)?,
            Family::Werner { n, lambda } => werner(*n, *lambda)?,
            Family::Tomiyama { n, k } => tomiyama_point(*n, *k)?,
        })
    }

    /// Builds and checks that the result is a state.
    pub fn build_state(&self) -> Result<State> {
        State::new(self.build()?)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::MaxEntangled { n } | Family::Antisymmetric { n } => write!(f, "{}(n={n})", self.name()),
            Family::MaximallyMixed { m, n } => write!(f, "rho-star({m}x{n})"),
            Family::Projection(e) => write!(f, "projection(dim={})", e.dim()),
            Family::Rho(i) => write!(f, "rho{i}"),
            Family::RhoLambda { i, lambda } => write!(f, "rho{i}-lambda({lambda})"),
            Family::Sigma(i) => write!(f, "sigma{i}"),
            Family::Omega { i, k } => write!(f, "omega_{{{i},{k}}}"),
            Family::Isotropic { n, lambda } | Family::Werner { n, lambda } => {
                write!(f, "{}(n={n}, lambda={lambda})", self.name())
            }
            Family::Tomiyama { n, k } => write!(f, "tomiyama(n={n}, k={k})"),
        }
    }
}

/// `3 ⊗ 3`.
pub fn d33_dim() -> BipartiteDim {
    d33()
}

pub(crate) fn d33() -> BipartiteDim {
    BipartiteDim::new(3, 3).expect("3x3 is valid")
}

/// `ξ₁`, `ξ₂`, `ξ₃` of the biqutrit catalog.
pub fn xi(i: usize) -> Result<PureVector> {
    let d = d33();
    let mut v = CVector::zeros(9);
    match i {
        1 => v[d.index(0, 1)] = ONE,
        2 => {
            v[d.index(0, 1)] = ONE;
            v[d.index(1, 0)] = ONE;
        }
        3 => {
            for j in 0..3 {
                v[d.index(j, j)] = ONE;
            }
        }
        _ => return Err(Error::InvalidParameter(format!("xi index must be 1, 2 or 3, got {i}"))),
    }
    PureVector::normalized(d, v)
}

/// Integer pattern `J` with `J[(ii),(jj)] = 1`, so `|Ω⟩⟨Ω| = J/n`.
fn omega_pattern(n: usize) -> Vec<i64> {
    let t = n * n;
    let mut num = vec![0; t * t];
    for i in 0..n {
        for j in 0..n {
            num[(i * n + i) * t + j * n + j] = 1;
        }
    }
    num
}

fn identity_pattern(t: usize) -> Vec<i64> {
    let mut num = vec![0; t * t];
    for i in 0..t {
        num[i * t + i] = 1;
    }
    num
}

/// Integer pattern `K` with `ρ₂ = K/2`.
fn xi2_pattern() -> Vec<i64> {
    let d = d33();
    let mut num = vec![0; 81];
    for &r in &[d.index(0, 1), d.index(1, 0)] {
        for &c in &[d.index(0, 1), d.index(1, 0)] {
            num[r * 9 + c] = 1;
        }
    }
    num
}

fn xi1_pattern() -> Vec<i64> {
    let idx = d33().index(0, 1);
    let mut num = vec![0; 81];
    num[idx * 9 + idx] = 1;
    num
}

fn combine(terms: &[(i64, &[i64])]) -> Vec<i64> {
    let len = terms[0].1.len();
    (0..len).map(|i| terms.iter().map(|(c, p)| c * p[i]).sum()).collect()
}

fn rational_state(dim: BipartiteDim, num: &[i64], den: i64) -> Result<State> {
    State::new(HermitianOp::from_rational(dim, num, den)?)
}

pub fn max_entangled(n: usize) -> Result<State> {
    rational_state(BipartiteDim::square(n)?, &omega_pattern(n), n as i64)
}

/// `(2/(n(n−1))) Σ_{i>j} |ξ_ij⟩⟨ξ_ij|`, equal to `(I − F)/(n(n−1))` with `F` the swap.
pub fn antisymmetric(n: usize) -> Result<State> {
    let dim = BipartiteDim::square(n)?;
    let t = n * n;
    let mut num = identity_pattern(t);
    for i in 0..n {
        for j in 0..n {
            num[(i * n + j) * t + j * n + i] -= 1;
        }
    }
    rational_state(dim, &num, (n * (n - 1)) as i64)
}

pub fn rho(i: usize) -> Result<State> {
    match i {
        1 => rational_state(d33(), &xi1_pattern(), 1),
        2 => rational_state(d33(), &xi2_pattern(), 2),
        3 => rational_state(d33(), &omega_pattern(3), 3),
        _ => Err(Error::InvalidParameter(format!("rho index must be 1, 2 or 3, got {i}"))),
    }
}

/// `ρᵢ^λ = (1−λ)ρ₃ + λρᵢ` for `i ∈ {1, 2}` and `λ ∈ [0, 1]`.
pub fn rho_lambda(i: usize, lambda: f64) -> Result<State> {
    if i != 1 && i != 2 {
        return Err(Error::InvalidParameter(format!("rho-lambda index must be 1 or 2, got {i}")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let mix = &rho(3)?.scaled(1.0 - lambda) + &rho(i)?.scaled(lambda);
    State::new(mix)
}

/// `σᵢ = (9ρ* − ρ₃ − ρᵢ)/7`, the projection state onto `span{ξ₃, ξᵢ}^⊥`.
pub fn sigma(i: usize) -> Result<State> {
    let id = identity_pattern(9);
    let j = omega_pattern(3);
    match i {
        // (I − J/3 − E)/7 over 21
        1 => rational_state(d33(), &combine(&[(3, &id), (-1, &j), (-3, &xi1_pattern())]), 21),
        // (I − J/3 − K/2)/7 over 42
        2 => rational_state(d33(), &combine(&[(6, &id), (-2, &j), (-3, &xi2_pattern())]), 42),
        _ => Err(Error::InvalidParameter(format!("sigma index must be 1 or 2, got {i}"))),
    }
}

/// Boundary points `ω_{3,1} = (3/2)ρ* − (1/2)ρ₃`, `ω_{3,2} = (6/5)ρ* − (1/5)ρ₃`
/// and `ω_{2,1} = (9/7)ρ* − (2/7)ρ₂`.
pub fn omega(i: usize, k: usize) -> Result<HermitianOp> {
    let id = identity_pattern(9);
    match (i, k) {
        (3, 1) => HermitianOp::from_rational(d33(), &combine(&[(1, &id), (-1, &omega_pattern(3))]), 6),
        (3, 2) => HermitianOp::from_rational(d33(), &combine(&[(2, &id), (-1, &omega_pattern(3))]), 15),
        (2, 1) => HermitianOp::from_rational(d33(), &combine(&[(1, &id), (-1, &xi2_pattern())]), 7),
        _ => Err(Error::InvalidParameter(format!("no omega point ({i},{k}); expected (3,1), (3,2) or (2,1)"))),
    }
}

pub fn isotropic(n: usize, lambda: f64) -> Result<HermitianOp> {
    Ok(x_lambda(&max_entangled(n)?, lambda))
}

/// Partial transpose of [`isotropic`]; this reparametrizes the Werner states.
pub fn werner(n: usize, lambda: f64) -> Result<HermitianOp> {
    Ok(partial_transpose(&isotropic(n, lambda)?))
}

/// `X_λ` of the maximally entangled state at `λ = −1/(nk−1)`, assembled as
/// `(kI − J)/(n(nk−1))`. It is `k`-blockpositive and, for `k < n`, not
/// `(k+1)`-blockpositive.
pub fn tomiyama_point(n: usize, k: usize) -> Result<HermitianOp> {
    let dim = BipartiteDim::square(n)?;
    dim.check_level(k)?;
    let num = combine(&[(k as i64, &identity_pattern(n * n)), (-1, &omega_pattern(n))]);
    HermitianOp::from_rational(dim, &num, (n * (n * k - 1)) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn all_catalog() -> Vec<Family> {
        let mut out = vec![
            Family::MaxEntangled { n: 3 },
            Family::Antisymmetric { n: 4 },
            Family::MaximallyMixed { m: 2, n: 3 },
            Family::Projection(Subspace::span(d33(), &[xi(3).unwrap().into_amplitudes()]).unwrap()),
            Family::Isotropic { n: 3, lambda: -0.3 },
            Family::Werner { n: 3, lambda: 0.7 },
            Family::Tomiyama { n: 4, k: 2 },
        ];
        for i in 1..=3 {
            out.push(Family::Rho(i));
        }
        for i in 1..=2 {
            out.push(Family::Sigma(i));
            out.push(Family::RhoLambda { i, lambda: 0.35 });
        }
        for (i, k) in [(3, 1), (3, 2), (2, 1)] {
            out.push(Family::Omega { i, k });
        }
        out
    }

    #[test]
    fn every_family_has_unit_trace() {
        for fam in all_catalog() {
            let op = fam.build().unwrap();
            assert_abs_diff_eq!(op.trace(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn omega_points_match_x_lambda() {
        let star = State::maximally_mixed(d33());
        let rho3 = rho(3).unwrap();
        let want = &star.scaled(6.0 / 5.0) - &rho3.scaled(1.0 / 5.0);
        assert!(omega(3, 2).unwrap().max_abs_diff(&want) < 1e-15);
        assert!(omega(3, 2).unwrap().max_abs_diff(&x_lambda(&rho3, -0.2)) < 1e-15);
        assert!(omega(3, 1).unwrap().max_abs_diff(&x_lambda(&rho3, -0.5)) < 1e-15);
        let rho2 = rho(2).unwrap();
        let want = &star.scaled(9.0 / 7.0) - &rho2.scaled(2.0 / 7.0);
        assert!(omega(2, 1).unwrap().max_abs_diff(&want) < 1e-15);
        assert!(omega(1, 1).is_err());
    }

    #[test]
    fn rho_lambda_endpoints() {
        assert!(rho_lambda(1, 0.0).unwrap().max_abs_diff(&rho(3).unwrap()) < 1e-16);
        assert!(rho_lambda(1, 1.0).unwrap().max_abs_diff(&rho(1).unwrap()) < 1e-16);
        assert!(matches!(rho_lambda(1, 1.5), Err(Error::InvalidParameter(_))));
        assert!(matches!(rho_lambda(3, 0.5), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn werner_trace_is_one() {
        for lambda in [-2.0, -0.5, 0.0, 0.4, 1.0, 3.0] {
            assert_abs_diff_eq!(werner(3, lambda).unwrap().trace(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn sigma_is_projection_state_onto_complement() {
        for i in 1..=2 {
            let s = sigma(i).unwrap();
            for v in [xi(3).unwrap(), xi(i).unwrap()] {
                assert!((s.matrix() * v.amplitudes()).norm() < 1e-15);
            }
            let sq = s.matrix() * s.matrix();
            assert!((sq - s.matrix() / crate::linalg::re(7.0)).norm() < 1e-15);
            let star = State::maximally_mixed(d33());
            let want = &(&star.scaled(9.0 / 7.0) - &rho(3).unwrap().scaled(1.0 / 7.0)) - &rho(i).unwrap().scaled(1.0 / 7.0);
            assert!(s.max_abs_diff(&want) < 1e-15);
        }
    }

    #[test]
    fn antisymmetric_is_projection_state() {
        for n in 3..=4 {
            let a = antisymmetric(n).unwrap();
            let scale = (n * (n - 1)) as f64 / 2.0;
            let p = a.scaled(scale);
            assert!((p.matrix() * p.matrix() - p.matrix()).norm() < 1e-14);
            assert_abs_diff_eq!(p.trace(), scale, epsilon = 1e-12);
        }
    }

    #[test]
    fn tomiyama_points() {
        let rho3 = max_entangled(3).unwrap();
        assert!(tomiyama_point(3, 2).unwrap().max_abs_diff(&omega(3, 2).unwrap()) < 1e-16);
        assert!(tomiyama_point(3, 1).unwrap().max_abs_diff(&x_lambda(&rho3, -0.5)) < 1e-15);
        let top = tomiyama_point(3, 3).unwrap();
        assert!(top.max_abs_diff(&x_lambda(&rho3, -1.0 / 8.0)) < 1e-15);
        assert_abs_diff_eq!(top.min_eigenvalue(), 0.0, epsilon = 1e-15);
        assert!(State::new(top).is_ok());
        assert!(matches!(tomiyama_point(3, 4), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn named_vectors() {
        assert_eq!(xi(1).unwrap().schmidt_rank(), 1);
        assert_eq!(xi(2).unwrap().schmidt_rank(), 2);
        assert_eq!(xi(3).unwrap().schmidt_rank(), 3);
        assert!(xi(4).is_err());
        for i in 1..=3 {
            assert!(State::pure(&xi(i).unwrap()).max_abs_diff(&rho(i).unwrap()) < 1e-15);
        }
    }
}
