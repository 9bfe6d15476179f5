//! Principal-series machinery of the quantum Lorentz group.
//!
//! A principal weight is a pair `(m, rho)` with `m` a half-integer and
//! `rho ∈ (-pi/hbar, pi/hbar]`, equivalently the pair of complex spins
//! `X0 = (m + i rho - 1)/2`, `X1 = (-m + i rho - 1)/2`. Everything built on a
//! weight depends on it only through `q^{2X0+1} = q^m e^{-i hbar rho}`, so all
//! integrands over `rho` are periodic with period `2 pi / hbar`.

pub mod asympt;
pub mod entrela;
pub mod lambda;
pub mod reduced;
pub mod rep;

pub use lambda::{
    lambda_boundary_b_ab, lambda_boundary_bc, lambda_casimir_residual, lambda_coeff, lambda_diag_3j,
    lambda_diag_harmonics, lambda_linear_system_residual, lambda_systan_residual, LambdaTable,
};
pub use asympt::{
    lambda_decay_envelope, lambda_diag_limit_ratio, reduced_asymptotic_ratio, sixj3_asymptotic_ratio,
    w65_unit_sum,
};
pub use entrela::{
    aw_match_residual, aw_match_sides, AwMatch, completeness_check, entrela, gamma_coeff, m_norm, m_norm_alt, m_norm_theta,
    o3_check, weighted_lambda_closed, weighted_lambda_sum, EntrelaSpins, O3Check,
};
pub use reduced::{intertwiner_residual, intertwiner_subsystem_residual, reduced_element, ReducedBlock};
pub use rep::{
    center_residual, rep_action_g, rep_action_l, rmatrix_action, rmatrix_intertwines_residual,
    BasisVector, TensorVec,
};

use num_complex::Complex64;

use crate::error::{QError, QResult};
use crate::qnum::{ComplexSpin, HalfInt, QContext};

/// Label of a principal unitary representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrincipalWeight {
    pub m: HalfInt,
    pub rho: f64,
}

impl PrincipalWeight {
    /// Fold `rho` into the fundamental interval `(-pi/hbar, pi/hbar]`.
    pub fn new(ctx: &QContext, m: HalfInt, rho: f64) -> Self {
        let period = ctx.rho_period();
        let mut r = (rho + period / 2.0).rem_euclid(period) - period / 2.0;
        if r <= -period / 2.0 {
            r += period;
        }
        PrincipalWeight { m, rho: r }
    }

    /// `X0 = (m + i rho - 1)/2`.
    pub fn x0(&self) -> ComplexSpin {
        ComplexSpin::new(Complex64::new((self.m.as_f64() - 1.0) / 2.0, self.rho / 2.0))
    }

    /// `X1 = (-m + i rho - 1)/2 = X0 - m`.
    pub fn x1(&self) -> ComplexSpin {
        self.x0().shifted(-self.m)
    }

    /// The unitarily equivalent label `(-m, -rho)` (underline on both spins).
    pub fn underline(&self, ctx: &QContext) -> Self {
        PrincipalWeight::new(ctx, -self.m, -self.rho)
    }

    /// Ordered label pair `(X0, X1)` used by the Lambda coefficients.
    pub fn label(&self) -> RepLabel {
        RepLabel { first: self.x0(), second: self.x1(), m: self.m }
    }

    /// The swapped pair `(X1, X0)`, the label of the conjugate structure.
    pub fn label_swapped(&self) -> RepLabel {
        RepLabel { first: self.x1(), second: self.x0(), m: -self.m }
    }
}

/// An ordered pair of complex spins `(first, second)` whose difference is the
/// exact half-integer `m`; generalises a principal weight to the swapped and
/// continued labels that show up inside identities.
#[derive(Clone, Copy, Debug)]
pub struct RepLabel {
    pub first: ComplexSpin,
    pub second: ComplexSpin,
    pub m: HalfInt,
}

impl RepLabel {
    pub fn new(tol: f64, first: ComplexSpin, second: ComplexSpin) -> QResult<Self> {
        let m = first.halfint_diff(&second, tol)?;
        Ok(RepLabel { first, second, m })
    }

    pub fn swapped(&self) -> Self {
        RepLabel { first: self.second, second: self.first, m: -self.m }
    }

    /// `i rho = first + second + 1` as a complex number.
    pub fn i_rho(&self) -> Complex64 {
        self.first.value() + self.second.value() + 1.0
    }
}

/// Plancherel density `P(m, rho) = (hbar/4pi) (q - q^{-1})^2 [m + i rho][m - i rho]`.
///
/// The `hbar/4pi` normalisation is the one that makes the Fourier identity
/// `int dP Lambda^{BC}_{AA} = delta_{B,0} delta_{A,C} [d_A]` hold exactly.
pub fn plancherel_density(ctx: &QContext, w: &PrincipalWeight) -> f64 {
    let q = ctx.q();
    let th = ctx.hbar() * w.rho;
    // (q-1/q)^2 [m+ir][m-ir] = q^{2m} + q^{-2m} - 2 cos(2 hbar rho)
    let g = (q.ln() * 2.0 * w.m.as_f64()).exp() + (-q.ln() * 2.0 * w.m.as_f64()).exp() - 2.0 * (2.0 * th).cos();
    ctx.hbar() / (4.0 * std::f64::consts::PI) * g
}

/// Uniform trapezoid quadrature of a periodic integrand over
/// `(-pi/hbar, pi/hbar]`; exact for trigonometric polynomials in
/// `theta = hbar rho` of degree below `nodes`.
///
/// Nodes sit at half-steps so the degenerate points `rho = 0` and
/// `rho = ±pi/hbar` are never sampled.
pub fn quad_rho(ctx: &QContext, nodes: u32, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
    let period = ctx.rho_period();
    let h = period / nodes as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..nodes {
        let rho = -period / 2.0 + (i as f64 + 0.5) * h;
        s += f(rho);
    }
    s * h
}

/// Fallible integrand variant of [`quad_rho`].
pub fn quad_rho_result(
    ctx: &QContext,
    nodes: u32,
    mut f: impl FnMut(f64) -> QResult<Complex64>,
) -> QResult<Complex64> {
    let period = ctx.rho_period();
    let h = period / nodes as f64;
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..nodes {
        let rho = -period / 2.0 + (i as f64 + 0.5) * h;
        s += f(rho)?;
    }
    Ok(s * h)
}

/// Reject weights on the degeneracy lines excluded by the intertwiner
/// construction: any `rho` or signed combination of the three below the guard
/// band `1e-3 * pi / hbar`.
pub fn degenerate_triple(ctx: &QContext, x: &PrincipalWeight, y: &PrincipalWeight, z: &PrincipalWeight) -> bool {
    let guard = 1e-3 * std::f64::consts::PI / ctx.hbar();
    let period = ctx.rho_period();
    let wrapped = |v: f64| {
        let r = (v + period / 2.0).rem_euclid(period) - period / 2.0;
        r.abs()
    };
    if wrapped(x.rho) < guard || wrapped(y.rho) < guard || wrapped(z.rho) < guard {
        return true;
    }
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                if wrapped(sx * x.rho + sy * y.rho + sz * z.rho) < guard {
                    return true;
                }
            }
        }
    }
    false
}

/// Degeneracy error for operations that require a regular triple.
pub fn require_regular(ctx: &QContext, x: &PrincipalWeight, y: &PrincipalWeight, z: &PrincipalWeight) -> QResult<()> {
    if degenerate_triple(ctx, x, y, z) {
        Err(QError::Degenerate(format!(
            "rho triple ({}, {}, {}) on an excluded line",
            x.rho, y.rho, z.rho
        )))
    } else {
        Ok(())
    }
}
