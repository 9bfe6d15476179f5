//! Large-spin asymptotics: the closed-form behaviour of reduced elements and
//! 6j(3) symbols, the diagonal Lambda limit, and the very-well-poised unit
//! sum that normalises the reduced-element asymptotics.
//!
//! The reduced-element and 6j(3) checks run above spin 8 and therefore use
//! the extended backend throughout.

use num_complex::Complex64;

use crate::error::QResult;
use crate::qnum::kernel::QEnv;
use crate::qnum::{HalfInt, QContext};
use crate::scalar::{big_precision, set_big_precision, Cx, RBig, Real};
use crate::sixj::SixEval;

/// Working precision for the large-T checks: their terminating sums carry
/// cancellation of order q^{-T^2}, so the bit count scales with T^2.
fn precision_for(ctx: &QContext, t: HalfInt) -> usize {
    let nats = ctx.hbar() * t.as_f64() * t.as_f64();
    ((nats * std::f64::consts::LOG2_E * 1.15) as usize + 96).max(crate::scalar::EXTENDED_PRECISION_BITS)
}

fn with_precision<T>(bits: usize, f: impl FnOnce() -> T) -> T {
    let old = big_precision();
    set_big_precision(bits);
    let out = f();
    set_big_precision(old);
    out
}

use super::lambda::lambda_diag_3j;
use super::reduced::reduced_element_kernel;
use super::PrincipalWeight;

fn spin<R: Real>(s: &crate::qnum::ComplexSpin) -> Cx<R> {
    let v = s.value();
    Cx::from_f64(v.re, v.im)
}

/// Closed-form large-T behaviour of the reduced element `[T+P, P, T]` with
/// `P = m_Y >= 0`, evaluated in a generic backend.
fn reduced_asymptotic<R: Real>(
    env: &QEnv<R>,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    t: HalfInt,
) -> QResult<Cx<R>> {
    let one = Cx::<R>::one();
    let p = wy.m;
    let (x0, x1) = (spin::<R>(&wx.x0()), spin::<R>(&wx.x1()));
    let (y0, y1) = (spin::<R>(&wy.x0()), spin::<R>(&wy.x1()));
    let (z0, z1) = (spin::<R>(&wz.x0()), spin::<R>(&wz.x1()));
    let tc = env.cx(t);

    // e^{-2 i pi T} e^{i pi m_X / 2}
    let ph = env.expi_pi_h(-(t + t)).mul(&{
        let half_mx = Cx::<R>::from_f64(wx.m.as_f64() / 2.0, 0.0);
        env.expi_pi(&half_mx)
    });
    // q^{-T(Y0+Y1)} q^{-Z0 Z1}
    let qp = env.qpow(&tc.neg().mul(&y0.add(&y1)).sub(&z0.mul(&z1)));
    let dp = env.qdim(p).sqrt();
    let nu1 = env.nu1(&x1.add(&x1).add(&one))?.mul(&env.nu1(&z0.add(&z0).add(&one))?);

    // phi_(2X0, P+T+m_X) phi_(Z1+X1-Y1, -m_Z-m_X+m_Y) / phi_(Z0+Z1, T)
    let phis = env
        .phi(&x0.add(&x0), p + t + wx.m)?
        .mul(&env.phi(&z1.add(&x1).sub(&y1), -wz.m - wx.m + wy.m)?)
        .div(&env.phi(&z0.add(&z1), t)?);

    let two = Cx::<R>::from_f64(2.0, 0.0);
    let b1 = env
        .nu_inf(&y0.add(&x0).sub(&z0).add(&one))?
        .mul(&env.nu_inf(&y0.add(&x0).add(&z0).add(&two))?)
        .mul(&env.nu_inf(&y0.sub(&x0).sub(&z0))?)
        .mul(&env.nu_inf(&y0.add(&z0).sub(&x0).add(&one))?);
    // q^{(3/2)X0^2 + X0/2 - Z0^2/2 + Z0/2}
    let h32 = Cx::<R>::from_f64(1.5, 0.0);
    let half = Cx::<R>::from_f64(0.5, 0.0);
    let e1 = env.qpow(
        &h32.mul(&x0).mul(&x0)
            .add(&x0.mul_r(&R::from_f64(0.5)))
            .sub(&z0.mul(&z0).mul(&half))
            .add(&z0.mul_r(&R::from_f64(0.5))),
    );
    let d1 = e1
        .mul(&env.poch_inf(&one)?)
        .mul(&env.nu_inf(&y1.add(&y1).add(&one))?)
        .mul(&env.nu_inf(&y0.add(&y0).add(&one))?);

    let b2 = env
        .nu_inf(&y1.add(&x1).sub(&z1).add(&one))?
        .mul(&env.nu_inf(&y1.add(&x1).add(&z1).add(&two))?)
        .mul(&env.nu_inf(&y1.sub(&x1).sub(&z1))?)
        .mul(&env.nu_inf(&y1.add(&z1).sub(&x1).add(&one))?);
    // q^{-(3/2)X1^2 - X1/2 - Z1^2/2 - Z1/2}
    let e2 = env.qpow(
        &h32.mul(&x1).mul(&x1).neg()
            .sub(&x1.mul_r(&R::from_f64(0.5)))
            .sub(&z1.mul(&z1).mul(&half))
            .sub(&z1.mul_r(&R::from_f64(0.5))),
    );
    let d2 = e2
        .mul(&env.nu_inf(&x0.add(&x0).add(&one))?)
        .mul(&env.nu_inf(&x0.add(&x0).neg())?)
        .mul(&env.nu_inf(&z0.add(&z1).add(&one))?)
        .mul(&env.nu_inf(&z0.add(&z1).neg())?);

    Ok(ph.mul(&qp).mul(&dp.into_cx()).mul(&nu1).mul(&phis).mul(&b1).div(&d1).mul(&b2).div(&d2))
}

trait IntoCx<R: Real> {
    fn into_cx(self) -> Cx<R>;
}

impl<R: Real> IntoCx<R> for R {
    fn into_cx(self) -> Cx<R> {
        Cx::from_re(self)
    }
}

/// `reduced_element(T+m_Y, m_Y, T) / asymptotic` in the extended backend;
/// the ratio tends to 1 as T grows.
pub fn reduced_asymptotic_ratio(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    t: HalfInt,
) -> QResult<Complex64> {
    super::require_regular(ctx, wx, wy, wz)?;
    with_precision(precision_for(ctx, t), || {
        let ev = SixEval::<RBig>::new(ctx);
        let exact = reduced_element_kernel(
            &ev,
            wx.x0(),
            wx.x1(),
            wy.x0(),
            wy.x1(),
            wz.x0(),
            wz.x1(),
            t + wy.m,
            wy.m,
            t,
        )?;
        let approx = reduced_asymptotic(&ev.env, wx, wy, wz, t)?;
        Ok(exact.div(&approx).to_c64())
    })
}

/// Closed-form large-T behaviour of `{Y0 X0 Z0; T Z1 X2}(3)` divided into the
/// exact value, in the extended backend; tends to 1 as T grows.
pub fn sixj3_asymptotic_ratio(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wz: &PrincipalWeight,
    ox2: HalfInt,
    t: HalfInt,
) -> QResult<Complex64> {
    with_precision(precision_for(ctx, t), || sixj3_asymptotic_ratio_inner(ctx, wx, wz, ox2, t))
}

fn sixj3_asymptotic_ratio_inner(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wz: &PrincipalWeight,
    ox2: HalfInt,
    t: HalfInt,
) -> QResult<Complex64> {
    let ev = SixEval::<RBig>::new(ctx);
    let env = &ev.env;
    let one = Cx::<RBig>::one();
    let two = Cx::<RBig>::from_f64(2.0, 0.0);
    // reuse the X weight as the Y0 line of the symbol
    let y0s = wx.x0();
    let x0s = wx.x0().shifted(crate::qnum::ZERO); // X0 line base
    let x2s = x0s.shifted(ox2);
    let (z0s, z1s) = (wz.x0(), wz.x1());

    let exact = ev.sixj3(y0s, x0s, z0s, t, z1s, x2s)?;

    let (y0, x0) = (spin::<RBig>(&y0s), spin::<RBig>(&x0s));
    let (x2, z0, z1) = (spin::<RBig>(&x2s), spin::<RBig>(&z0s), spin::<RBig>(&z1s));
    // e^{i pi (T + X0 - X2)} = e^{i pi T} e^{-i pi ox2}
    let ph = env.expi_pi_h(t - ox2);
    let qp = env.qpow(&env.cx(t + t).neg().mul(&y0));
    let phis = env.phi(&x0.add(&x2), -t)?.mul(&env.phi(&z0.add(&z1), -t)?);
    let om = env.omega(&y0, &x2, &z1)?.mul(&env.omega(&y0, &x0, &z0)?);
    // q^{(Z1-Z0)(X0+Z0-Y0) + (X2-X0)(Z1+X0-Y0+1)}
    let e = env.qpow(
        &z1.sub(&z0).mul(&x0.add(&z0).sub(&y0)).add(
            &x2.sub(&x0).mul(&z1.add(&x0).sub(&y0).add(&one)),
        ),
    );
    let den1 = e
        .mul(&env.poch_inf(&one)?)
        .mul(&env.poch_inf(&y0.add(&y0).add(&one))?);
    let nu1s = env.nu1(&x2.add(&x2).add(&one))?.mul(&env.nu1(&z0.add(&z0).add(&one))?);
    let pochs = env
        .poch_inf(&y0.sub(&x0).sub(&z0))?
        .mul(&env.poch_inf(&x0.add(&z0).sub(&y0).add(&one))?);
    let den2 = env
        .nu_inf(&x0.add(&x2).neg())?
        .mul(&env.nu_inf(&x0.add(&x2).add(&one))?)
        .mul(&env.nu_inf(&z0.add(&z1).neg())?)
        .mul(&env.nu_inf(&z0.add(&z1).add(&one))?);
    let approx = ph.mul(&qp).mul(&phis).mul(&om).div(&den1).mul(&nu1s).mul(&pochs).div(&den2);
    let _ = two;
    Ok(exact.div(&approx).to_c64())
}

/// Diagonal Lambda limit: `Lambda^{B, K}_{K} -> 1` as K grows.
pub fn lambda_diag_limit_ratio(ctx: &QContext, b: HalfInt, k: HalfInt, w: &PrincipalWeight) -> Complex64 {
    lambda_diag_3j(ctx, b, k, k, &w.label())
}

/// The unit sum behind the reduced-element asymptotics:
/// `A = (1/(1+a)_m) sum_k (1-q^{2a+4k}) (a)_k (-m)_k / ((1-q^{2a}) (1)_k (a+m+1)_k) q^{2k^2+2k(m+a)} = 1`.
pub fn w65_unit_sum(ctx: &QContext, alpha: Complex64, m: u64) -> QResult<Complex64> {
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=m {
        let ki = k as i64;
        let t = (1.0 - (lnq * (2.0 * alpha + 4.0 * k as f64)).exp())
            * crate::qnum::poch_n(ctx, alpha, ki)?
            * crate::qnum::poch_n(ctx, Complex64::new(-(m as f64), 0.0), ki)?
            / ((1.0 - (lnq * 2.0 * alpha).exp())
                * crate::qnum::poch_n(ctx, Complex64::new(1.0, 0.0), ki)?
                * crate::qnum::poch_n(ctx, alpha + m as f64 + 1.0, ki)?)
            * (lnq * (2.0 * (k * k) as f64 + 2.0 * k as f64 * (m as f64) ) ).exp()
            * (lnq * 2.0 * k as f64 * alpha).exp();
        sum += t;
    }
    Ok(sum / crate::qnum::poch_n(ctx, 1.0 + alpha, m as i64)?)
}

/// Empirical decay-envelope check for `|Lambda^{B, B+R}_{A D}| <= C B q^{2B}`:
/// returns the largest late-range envelope ratio relative to the early range.
pub fn lambda_decay_envelope(
    ctx: &QContext,
    a: HalfInt,
    d: HalfInt,
    r: HalfInt,
    w: &PrincipalWeight,
    bmax: u32,
) -> QResult<f64> {
    let label = w.label();
    let q2 = ctx.q() * ctx.q();
    let mut early = 0.0f64;
    let mut late_ratio = 0.0f64;
    for b_int in 1..=bmax {
        let b = HalfInt::from_int(b_int as i64);
        let c = b + r;
        if c.is_negative() {
            continue;
        }
        let v = super::lambda::lambda_coeff(ctx, b, c, a, d, &label)?;
        let envelope = v.norm() / (b.as_f64() * q2.powf(b.as_f64()));
        if b_int <= bmax / 2 {
            early = early.max(envelope);
        } else {
            late_ratio = late_ratio.max(envelope);
        }
    }
    Ok(late_ratio / early.max(1e-300))
}
