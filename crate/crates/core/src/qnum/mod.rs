//! Exact spins and scalar q-functions.
//!
//! The numerical conventions used everywhere downstream: `0 < q < 1`,
//! `hbar = -ln q`, all q-Pochhammer symbols run in base `q^2`, and
//! `nu_inf` takes principal square roots factor by factor (not the square
//! root of the product), which is what pins every sign in the 6j layer.

mod halfint;
pub mod kernel;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use halfint::{spins_up_to, triangle_range, weight_range, y0, y1, HalfInt, HALF, ONE, ZERO};

use crate::error::{QError, QResult};
use crate::scalar::{Cx, RBig, Real, Sf64};
use kernel::QEnv;

/// Floating-point precision used by the evaluation kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrecisionMode {
    /// binary64 mantissas with unbounded exponent range.
    Standard,
    /// 256-bit mantissas; required for 6j symbols with spins above ~8.
    Extended,
}

/// Immutable numerical environment: deformation parameter, truncation and
/// tolerance knobs, precision mode.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QContext {
    q: f64,
    hbar: f64,
    prod_cutoff: u32,
    tol: f64,
    precision: PrecisionMode,
}

impl QContext {
    /// Context at deformation parameter `q` in (0, 1) with default knobs.
    pub fn new(q: f64) -> QResult<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::Domain(format!("q must lie in (0,1), got {q}")));
        }
        // factor count making the (a)_inf tail < 1e-18 for re(a) >= -cutoff/2:
        // |log tail| <= q^{2 re a + 2N}/(1-q^2)
        let prod_cutoff = ((1e-18 * (1.0 - q * q)).ln() / q.ln()).ceil() as u32;
        Ok(QContext {
            q,
            hbar: -q.ln(),
            prod_cutoff,
            tol: 1e-9,
            precision: PrecisionMode::Standard,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// hbar = -ln q.
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Identity-residual tolerance used by verification sweeps.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn prod_cutoff(&self) -> u32 {
        self.prod_cutoff
    }

    pub fn precision(&self) -> PrecisionMode {
        self.precision
    }

    /// Period of the continuous principal-series parameter rho.
    pub fn rho_period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.hbar
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_prod_cutoff(mut self, cutoff: u32) -> Self {
        self.prod_cutoff = cutoff;
        self
    }

    pub fn with_precision(mut self, precision: PrecisionMode) -> Self {
        self.precision = precision;
        self
    }

    /// Backend-specific kernel environment. The big backend runs at the
    /// thread's current working precision (256 bits unless a caller raised it
    /// for ill-conditioned large-spin sums).
    pub fn env<R: Real>(&self) -> QEnv<R> {
        QEnv::new(self)
    }
}

/// Dispatch a kernel expression over the context's precision mode.
macro_rules! dispatch {
    ($ctx:expr, $env:ident, $body:expr) => {
        match $ctx.precision() {
            PrecisionMode::Standard => {
                let $env = $ctx.env::<Sf64>();
                $body
            }
            PrecisionMode::Extended => {
                let $env = $ctx.env::<RBig>();
                $body
            }
        }
    };
}
pub(crate) use dispatch;

// ---------------------------------------------------------------------------
// ComplexSpin
// ---------------------------------------------------------------------------

/// A complex spin, kept as `base + shift` with an exact half-integer shift so
/// that differences of spins built over the same base are exact integers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexSpin {
    base: Complex64,
    shift: HalfInt,
}

impl ComplexSpin {
    pub fn new(value: Complex64) -> Self {
        ComplexSpin { base: value, shift: ZERO }
    }

    pub fn from_halfint(h: HalfInt) -> Self {
        ComplexSpin { base: Complex64::new(0.0, 0.0), shift: h }
    }

    pub fn value(&self) -> Complex64 {
        self.base + self.shift.as_f64()
    }

    /// The spin shifted by an exact half-integer.
    pub fn shifted(&self, by: HalfInt) -> Self {
        ComplexSpin { base: self.base, shift: self.shift + by }
    }

    /// The involution `X -> -X - 1`.
    pub fn underline(&self) -> Self {
        ComplexSpin { base: -self.base - 1.0, shift: -self.shift }
    }

    pub fn conj(&self) -> Self {
        ComplexSpin { base: self.base.conj(), shift: self.shift }
    }

    /// `self - other` when that difference is a half-integer.
    ///
    /// Exact when both spins share a base (as all spins inside one recoupling
    /// sum do); otherwise decided numerically within `tol`.
    pub fn halfint_diff(&self, other: &ComplexSpin, tol: f64) -> QResult<HalfInt> {
        if self.base == other.base {
            return Ok(self.shift - other.shift);
        }
        let d = self.value() - other.value();
        if d.im.abs() > tol {
            return Err(QError::NotHalfInteger(format!("{} - {}", self.value(), other.value())));
        }
        HalfInt::try_from_f64(d.re, tol)
    }
}

// ---------------------------------------------------------------------------
// Public scalar operations
// ---------------------------------------------------------------------------

/// `[x] = (q^x - q^{-x})/(q - q^{-1})`.
pub fn qnumber(ctx: &QContext, x: Complex64) -> Complex64 {
    dispatch!(ctx, env, env.qnumber(&Cx::from_f64(x.re, x.im)).to_c64())
}

/// Principal square root with `Arg ∈ (-pi, pi]`; `sqrt(-1) = +i`.
pub fn sqrt_principal(z: Complex64) -> Complex64 {
    Cx::<Sf64>::from_f64(z.re, z.im).sqrt_principal().to_c64()
}

/// Sign of the imaginary part; zero imaginary part is a domain error.
pub fn epsilon_sign(z: Complex64) -> QResult<i32> {
    if z.im == 0.0 {
        Err(QError::Domain("epsilon(z) needs Im(z) != 0".into()))
    } else if z.im > 0.0 {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// `(a)_inf = prod_{k>=0}(1 - q^{2a+2k})`.
pub fn poch_inf(ctx: &QContext, a: Complex64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.poch_inf(&Cx::from_f64(a.re, a.im))?.to_c64()))
}

/// `(a)_n`, a finite product for either sign of `n`.
pub fn poch_n(ctx: &QContext, a: Complex64, n: i64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.poch_n(&Cx::from_f64(a.re, a.im), n)?.to_c64()))
}

/// `nu_inf(a)`: the square-root-regularised Eulerian product.
pub fn nu_inf(ctx: &QContext, a: Complex64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.nu_inf(&Cx::from_f64(a.re, a.im))?.to_c64()))
}

/// `nu_n(a) = nu_inf(a)/nu_inf(a+n)`.
pub fn nu_n(ctx: &QContext, a: Complex64, n: i64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.nu_n(&Cx::from_f64(a.re, a.im), n)?.to_c64()))
}

/// `omega(a; b, c)`, the four-nu ratio.
pub fn omega(ctx: &QContext, a: Complex64, b: Complex64, c: Complex64) -> QResult<Complex64> {
    dispatch!(
        ctx,
        env,
        Ok(env
            .omega(&Cx::from_f64(a.re, a.im), &Cx::from_f64(b.re, b.im), &Cx::from_f64(c.re, c.im))?
            .to_c64())
    )
}

/// `phi_(a, n)` for half-integer `n`.
pub fn phi_fn(ctx: &QContext, a: Complex64, n: HalfInt) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.phi(&Cx::from_f64(a.re, a.im), n)?.to_c64()))
}

/// `xi(z) = (z)_inf (1-z)_inf`.
pub fn xi(ctx: &QContext, z: Complex64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.xi(&Cx::from_f64(z.re, z.im))?.to_c64()))
}

/// Ribbon root `v_x^{1/k}`, `k ∈ {1, 2, 4}`, by its explicit exponential form.
pub fn ribbon_root(ctx: &QContext, x: Complex64, k: u32) -> Complex64 {
    dispatch!(ctx, env, env.ribbon_root(&Cx::from_f64(x.re, x.im), k).to_c64())
}

/// Jacobi theta function `theta_j(z)` with nome `q`.
pub fn theta(ctx: &QContext, j: u8, z: Complex64) -> QResult<Complex64> {
    dispatch!(ctx, env, Ok(env.theta(j, &Cx::from_f64(z.re, z.im))?.to_c64()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.6).unwrap()
    }

    #[test]
    fn qnumber_basics() {
        let c = ctx();
        let one = qnumber(&c, Complex64::new(1.0, 0.0));
        assert!((one - 1.0).norm() < 1e-15);
        let two = qnumber(&c, Complex64::new(2.0, 0.0));
        assert!((two - (0.6 + 1.0 / 0.6)).norm() < 1e-14);
        // oddness on a few random-ish points
        for k in 0..8 {
            let y = Complex64::new(0.3 * k as f64 - 1.1, 0.2 * k as f64 - 0.7);
            assert!((qnumber(&c, -y) + qnumber(&c, y)).norm() < 1e-13);
        }
    }

    #[test]
    fn sqrt_branch() {
        assert!((sqrt_principal(Complex64::new(4.0, 0.0)) - 2.0).norm() < 1e-15);
        let i = sqrt_principal(Complex64::new(-1.0, 0.0));
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        for k in 0..100 {
            let z = Complex64::new((k as f64 * 0.713).sin() * 3.0, (k as f64 * 1.31).cos() * 3.0);
            let r = sqrt_principal(z);
            assert!((r * r - z).norm() < 1e-12);
        }
    }

    #[test]
    fn epsilon_sign_cases() {
        assert_eq!(epsilon_sign(Complex64::new(1.0, 2.0)).unwrap(), 1);
        assert_eq!(epsilon_sign(Complex64::new(3.0, -1.0)).unwrap(), -1);
        assert!(epsilon_sign(Complex64::new(5.0, 0.0)).is_err());
    }

    #[test]
    fn pochhammer_identities() {
        let c = ctx();
        let a = Complex64::new(0.7, 0.4);
        assert!((poch_n(&c, a, 0).unwrap() - 1.0).norm() < 1e-15);
        let p1 = poch_n(&c, a, 1).unwrap();
        let q2a = (Complex64::new(0.6f64.ln(), 0.0) * a * 2.0).exp();
        assert!((p1 - (1.0 - q2a)).norm() < 1e-14);

        // inversion relation (a)_{-n} (1-a)_n = (-1)^n q^{-2na + n(n+1)}
        for n in 1..=6i64 {
            let lhs = poch_n(&c, a, -n).unwrap() * poch_n(&c, Complex64::new(1.0, 0.0) - a, n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign
                * (Complex64::new(0.6f64.ln(), 0.0) * (-2.0 * n as f64 * a + (n * (n + 1)) as f64)).exp();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn nu_squares_to_poch() {
        let c = ctx();
        for k in 0..60 {
            let a = Complex64::new((k as f64 * 0.37).sin() * 2.0 + 0.2, (k as f64 * 0.91).cos() * 1.5 + 0.1);
            let nu = nu_inf(&c, a).unwrap();
            let p = poch_inf(&c, a).unwrap();
            // nu^2 = (a)_inf holds exactly factor by factor
            assert!((nu * nu - p).norm() / p.norm() < 1e-12);
        }
    }

    #[test]
    fn phi_properties() {
        let c = ctx();
        let a = Complex64::new(0.45, 0.83);
        // cocycle
        let n = HalfInt::from_twice(3);
        let p = HalfInt::from_twice(-1);
        let lhs = phi_fn(&c, a, n).unwrap() * phi_fn(&c, a - n.as_f64(), p).unwrap();
        let rhs = phi_fn(&c, a, n + p).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        // phi^2 = (-1)^n for integer n
        for nn in [-3i64, -1, 1, 2, 5] {
            let v = phi_fn(&c, a, HalfInt::from_int(nn)).unwrap();
            let sq = v * v;
            let want = if nn % 2 == 0 { 1.0 } else { -1.0 };
            assert!((sq - want).norm() < 1e-12, "n={nn}");
        }
        // closed form for integer n, non-real a
        let s = epsilon_sign((Complex64::new(0.6f64.ln(), 0.0) * a).exp()).unwrap();
        let v = phi_fn(&c, a, HalfInt::from_int(3)).unwrap();
        let want = Complex64::new(0.0, -std::f64::consts::FRAC_PI_2 * 3.0 * s as f64).exp();
        assert!((v - want).norm() < 1e-12);
        // phi_(a, 0) = 1
        assert!((phi_fn(&c, a, ZERO).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn xi_symmetry_and_zero() {
        let c = ctx();
        let z = Complex64::new(0.3, 0.6);
        let a = xi(&c, z).unwrap();
        let b = xi(&c, Complex64::new(1.0, 0.0) - z).unwrap();
        assert!((a - b).norm() < 1e-13);
        // xi(1) contains the factor (1 - q^0) = 0, flagged as a zero factor
        assert!(matches!(xi(&c, Complex64::new(1.0, 0.0)), Err(QError::ZeroFactor(_))));
    }

    #[test]
    fn ribbon_roots() {
        let c = ctx();
        let x = Complex64::new(0.9, -0.4);
        let r4 = ribbon_root(&c, x, 4);
        let v = ribbon_root(&c, x, 1);
        assert!((r4.powu(4) - v).norm() / v.norm() < 1e-12);
        // integer K: v_K = q^{-2K(K+1)}
        let v2 = ribbon_root(&c, Complex64::new(3.0, 0.0), 1);
        let want = 0.6f64.powi(-24);
        assert!((v2 - want).norm() / want < 1e-12);
        // v_{1/2} = -q^{-3/2}
        let vh = ribbon_root(&c, Complex64::new(0.5, 0.0), 1);
        assert!((vh - Complex64::new(-0.6f64.powf(-1.5), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn theta_basics() {
        let c = ctx();
        assert!(theta(&c, 1, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-15);
        // theta4'/theta4 = 4 sum q^n sin(2nz)/(1-q^{2n})
        let z = 0.47;
        let mut series = 0.0;
        for n in 1..200 {
            series += 4.0 * 0.6f64.powi(n) * (2.0 * n as f64 * z).sin() / (1.0 - 0.6f64.powi(2 * n));
        }
        let h = 1e-6;
        let tp = theta(&c, 4, Complex64::new(z + h, 0.0)).unwrap().re;
        let tm = theta(&c, 4, Complex64::new(z - h, 0.0)).unwrap().re;
        let t0 = theta(&c, 4, Complex64::new(z, 0.0)).unwrap().re;
        assert!(((tp - tm) / (2.0 * h) / t0 - series).abs() < 1e-6);
    }

    #[test]
    fn halfint_diff_paths() {
        let x = ComplexSpin::new(Complex64::new(0.137, 0.293));
        let y = x.shifted(HalfInt::from_twice(5));
        assert_eq!(y.halfint_diff(&x, 1e-9).unwrap().twice(), 5);
        assert_eq!(x.underline().underline(), x);
        let z = ComplexSpin::new(Complex64::new(0.137 + 1.0, 0.293));
        assert_eq!(z.halfint_diff(&x, 1e-9).unwrap().twice(), 2);
        let w = ComplexSpin::new(Complex64::new(0.3, 0.293));
        assert!(w.halfint_diff(&x, 1e-9).is_err());
    }

    #[test]
    fn extended_mode_matches_standard() {
        let c = ctx();
        let e = ctx().with_precision(PrecisionMode::Extended);
        let a = Complex64::new(0.23, 0.71);
        let s = poch_inf(&c, a).unwrap();
        let x = poch_inf(&e, a).unwrap();
        assert!((s - x).norm() < 1e-13);
        let s = nu_inf(&c, Complex64::new(-1.3, 0.4)).unwrap();
        let x = nu_inf(&e, Complex64::new(-1.3, 0.4)).unwrap();
        assert!((s - x).norm() / s.norm() < 1e-12);
    }
}
