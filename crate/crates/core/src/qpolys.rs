//! q-Racah and Askey-Wilson polynomials in base `q^2`, with parameters kept
//! as exponents (`a = q^{2 alpha}` etc.) so half-integer shifts stay exact.
//!
//! ```text
//! mu(x)   = q^{-2x} + q^{2(x + gamma + delta + 1)}
//! p_n^R   = 4Phi3[-n, n+1+alpha+beta, -x, gamma+delta+x+1; alpha+1, beta+delta+1, gamma+1]
//! tau(z)  = (q^{2z} + q^{-2z})/2
//! p_n^AW  = q^{-2 n alpha} (alpha+beta)_n (alpha+gamma)_n (alpha+delta)_n
//!           * 4Phi3[-n, n+alpha+beta+gamma+delta-1, alpha+z, alpha-z;
//!                   alpha+beta, alpha+gamma, alpha+delta]
//! ```
//! with the discrete weight/norm `w^R, h^R` and continuous weight/norm
//! `w^AW, h^AW` as products of Pochhammer symbols.

use num_complex::Complex64;

use crate::error::QResult;
use crate::qhyper::{phi_eval, PhiParams, QExp};
use crate::qnum::{poch_inf, poch_n, QContext};

/// q-Racah parameter exponents and lattice size.
#[derive(Clone, Copy, Debug)]
pub struct RacahParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    /// Lattice size N; the weight is supported on x = 0..N.
    pub n_lattice: u64,
}

impl RacahParams {
    /// The standard truncation `alpha + 1 = -N`.
    pub fn truncated(beta: Complex64, gamma: Complex64, delta: Complex64, n_lattice: u64) -> Self {
        RacahParams { alpha: Complex64::new(-(n_lattice as f64) - 1.0, 0.0), beta, gamma, delta, n_lattice }
    }
}

/// `mu(x) = q^{-2x} + q^{2(x + gamma + delta + 1)}`.
pub fn racah_mu(ctx: &QContext, p: &RacahParams, x: u64) -> Complex64 {
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    (lnq * (-2.0 * x as f64)).exp() + (lnq * 2.0 * (x as f64 + p.gamma + p.delta + 1.0)).exp()
}

/// q-Racah polynomial value `p_n(mu(x))`.
pub fn racah_p(ctx: &QContext, p: &RacahParams, n: u64, x: u64) -> QResult<Complex64> {
    let params = PhiParams::new(
        vec![
            QExp::terminating(n),
            QExp::new(n as f64 + 1.0 + p.alpha + p.beta),
            QExp::terminating(x),
            QExp::new(p.gamma + p.delta + x as f64 + 1.0),
        ],
        vec![
            QExp::new(p.alpha + 1.0),
            QExp::new(p.beta + p.delta + 1.0),
            QExp::new(p.gamma + 1.0),
        ],
        Complex64::new(1.0, 0.0),
    );
    phi_eval(ctx, &params)
}

/// q-Racah weight `w(x)`.
pub fn racah_w(ctx: &QContext, p: &RacahParams, x: u64) -> QResult<Complex64> {
    let xi = x as i64;
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let num = poch_n(ctx, p.gamma + p.delta + 1.0, xi)?
        * poch_n(ctx, p.alpha + 1.0, xi)?
        * poch_n(ctx, p.beta + p.delta + 1.0, xi)?
        * poch_n(ctx, p.gamma + 1.0, xi)?
        * (1.0 - (lnq * 2.0 * (2.0 * x as f64 + p.gamma + p.delta + 1.0)).exp());
    let den = (lnq * 2.0 * x as f64 * (p.alpha + p.beta + 1.0)).exp()
        * poch_n(ctx, Complex64::new(1.0, 0.0), xi)?
        * poch_n(ctx, p.gamma + p.delta + 1.0 - p.alpha, xi)?
        * poch_n(ctx, p.gamma - p.beta + 1.0, xi)?
        * poch_n(ctx, p.delta + 1.0, xi)?
        * (1.0 - (lnq * 2.0 * (p.gamma + p.delta + 1.0)).exp());
    Ok(num / den)
}

/// q-Racah squared norm `h_n`.
pub fn racah_h(ctx: &QContext, p: &RacahParams, n: u64) -> QResult<Complex64> {
    let ni = n as i64;
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let fin = (lnq * 2.0 * n as f64 * (p.gamma + p.delta + 1.0)).exp()
        * (1.0 - (lnq * 2.0 * (p.alpha + p.beta + 1.0)).exp())
        * poch_n(ctx, Complex64::new(1.0, 0.0), ni)?
        * poch_n(ctx, p.beta + 1.0, ni)?
        * poch_n(ctx, p.alpha - p.delta + 1.0, ni)?
        * poch_n(ctx, p.alpha + p.beta - p.gamma + 1.0, ni)?
        / ((1.0 - (lnq * 2.0 * (2.0 * n as f64 + p.alpha + p.beta + 1.0)).exp())
            * poch_n(ctx, p.alpha + p.beta + 1.0, ni)?
            * poch_n(ctx, p.alpha + 1.0, ni)?
            * poch_n(ctx, p.beta + p.delta + 1.0, ni)?
            * poch_n(ctx, p.gamma + 1.0, ni)?);
    let tail = poch_inf(ctx, p.gamma + p.delta + 2.0)?
        * poch_inf(ctx, p.gamma - p.alpha - p.beta)?
        * poch_inf(ctx, p.delta - p.alpha)?
        * poch_inf(ctx, -p.beta)?
        / (poch_inf(ctx, p.gamma + p.delta - p.alpha + 1.0)?
            * poch_inf(ctx, p.gamma - p.beta + 1.0)?
            * poch_inf(ctx, p.delta + 1.0)?
            * poch_inf(ctx, -p.alpha - p.beta - 1.0)?);
    Ok(fin * tail)
}

/// Askey-Wilson parameter exponents.
#[derive(Clone, Copy, Debug)]
pub struct AWParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

/// `tau(z) = (q^{2z} + q^{-2z})/2`.
pub fn aw_tau(ctx: &QContext, z: Complex64) -> Complex64 {
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    ((lnq * 2.0 * z).exp() + (lnq * -2.0 * z).exp()) / 2.0
}

/// Askey-Wilson polynomial `p_n(tau(z))`.
pub fn aw_p(ctx: &QContext, p: &AWParams, n: u64, z: Complex64) -> QResult<Complex64> {
    let ni = n as i64;
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let pref = (lnq * -2.0 * n as f64 * p.alpha).exp()
        * poch_n(ctx, p.alpha + p.beta, ni)?
        * poch_n(ctx, p.alpha + p.gamma, ni)?
        * poch_n(ctx, p.alpha + p.delta, ni)?;
    let params = PhiParams::new(
        vec![
            QExp::terminating(n),
            QExp::new(n as f64 + p.alpha + p.beta + p.gamma + p.delta - 1.0),
            QExp::new(p.alpha + z),
            QExp::new(p.alpha - z),
        ],
        vec![
            QExp::new(p.alpha + p.beta),
            QExp::new(p.alpha + p.gamma),
            QExp::new(p.alpha + p.delta),
        ],
        Complex64::new(1.0, 0.0),
    );
    Ok(pref * phi_eval(ctx, &params)?)
}

/// Askey-Wilson weight `w(z)`.
pub fn aw_w(ctx: &QContext, p: &AWParams, z: Complex64) -> QResult<Complex64> {
    let num = poch_inf(ctx, 2.0 * z)? * poch_inf(ctx, -2.0 * z)?;
    let mut den = Complex64::new(1.0, 0.0);
    for e in [p.alpha, p.beta, p.gamma, p.delta] {
        den *= poch_inf(ctx, e + z)? * poch_inf(ctx, e - z)?;
    }
    Ok(num / den)
}

/// Askey-Wilson squared norm `h_n`.
pub fn aw_h(ctx: &QContext, p: &AWParams, n: u64) -> QResult<Complex64> {
    let ni = n as i64;
    let s = p.alpha + p.beta + p.gamma + p.delta;
    let num = poch_inf(ctx, s + 2.0 * n as f64)? * poch_n(ctx, s + n as f64 - 1.0, ni)?;
    let den = poch_inf(ctx, p.alpha + p.beta + n as f64)?
        * poch_inf(ctx, Complex64::new(n as f64 + 1.0, 0.0))?
        * poch_inf(ctx, p.alpha + p.gamma + n as f64)?
        * poch_inf(ctx, p.alpha + p.delta + n as f64)?
        * poch_inf(ctx, p.beta + p.gamma + n as f64)?
        * poch_inf(ctx, p.beta + p.delta + n as f64)?
        * poch_inf(ctx, p.gamma + p.delta + n as f64)?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::quad_rho_result;
    use crate::qhyper::sears_transform;

    fn ctx() -> QContext {
        QContext::new(0.6).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degree_zero_is_one() {
        let cx = ctx();
        let rp = RacahParams::truncated(c(0.9, 0.3), c(0.4, -0.2), c(1.1, 0.5), 5);
        assert_eq!(racah_p(&cx, &rp, 0, 0).unwrap(), Complex64::new(1.0, 0.0));
        let ap = AWParams { alpha: c(0.5, 0.1), beta: c(0.7, -0.3), gamma: c(0.9, 0.2), delta: c(1.2, 0.0) };
        assert_eq!(aw_p(&cx, &ap, 0, c(0.3, 0.8)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn racah_orthogonality() {
        let cx = ctx();
        for k in 0..6 {
            let nn = 3 + (k % 4);
            let rp = RacahParams::truncated(
                c(0.9 + 0.13 * k as f64, 0.3 - 0.07 * k as f64),
                c(0.4 + 0.11 * k as f64, -0.2 + 0.03 * k as f64),
                c(1.1 - 0.09 * k as f64, 0.5 + 0.05 * k as f64),
                nn,
            );
            for n in 0..=nn {
                for m in 0..=nn {
                    let mut s = Complex64::new(0.0, 0.0);
                    let mut tmax = 0.0f64;
                    for x in 0..=nn {
                        let t = racah_w(&cx, &rp, x).unwrap()
                            * racah_p(&cx, &rp, n, x).unwrap()
                            * racah_p(&cx, &rp, m, x).unwrap();
                        tmax = tmax.max(t.norm());
                        s += t;
                    }
                    let want = if n == m { racah_h(&cx, &rp, n).unwrap() } else { Complex64::new(0.0, 0.0) };
                    // polynomial values at the high end of the lattice carry
                    // ~1e-9 absolute rounding from their own terminating sums
                    assert!(
                        (s - want).norm() < 1e-8 * (1.0 + tmax),
                        "k={k} n={n} m={m}: {s} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn racah_sears_consistency() {
        // p_n evaluated directly vs through one Sears transformation, both
        // refereed against the extended-precision evaluation; the direct
        // series at the far lattice corner is ill-conditioned in binary64
        // (terms up to ~1e9 against an O(1e-3) value), the Sears route is not
        let cx = ctx();
        let xt = ctx().with_precision(crate::qnum::PrecisionMode::Extended);
        let rp = RacahParams::truncated(c(0.8, 0.25), c(0.55, -0.15), c(1.3, 0.4), 6);
        for n in 0..=6u64 {
            for x in 0..=6u64 {
                let reference = racah_p(&xt, &rp, n, x).unwrap();
                let direct = racah_p(&cx, &rp, n, x).unwrap();
                let params = PhiParams::new(
                    vec![
                        QExp::terminating(n),
                        QExp::new(n as f64 + 1.0 + rp.alpha + rp.beta),
                        QExp::terminating(x),
                        QExp::new(rp.gamma + rp.delta + x as f64 + 1.0),
                    ],
                    vec![
                        QExp::new(rp.alpha + 1.0),
                        QExp::new(rp.beta + rp.delta + 1.0),
                        QExp::new(rp.gamma + 1.0),
                    ],
                    c(1.0, 0.0),
                );
                let (out, pref) = sears_transform(&cx, &params).unwrap();
                let via = pref * phi_eval(&cx, &out).unwrap();
                assert!((via - reference).norm() < 1e-10 * (1.0 + reference.norm()), "sears n={n} x={x}");
                assert!((direct - reference).norm() < 1e-6 * (1.0 + reference.norm()), "direct n={n} x={x}");
            }
        }
    }

    #[test]
    fn aw_even_in_z() {
        let cx = ctx();
        let ap = AWParams { alpha: c(0.5, 0.1), beta: c(0.7, -0.3), gamma: c(0.9, 0.2), delta: c(1.2, 0.0) };
        for n in 0..5u64 {
            let z = c(0.37, 0.81);
            let a = aw_p(&cx, &ap, n, z).unwrap();
            let b = aw_p(&cx, &ap, n, -z).unwrap();
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn aw_continuous_orthogonality_by_quadrature() {
        // (hbar/4pi) int_{-pi/hbar}^{pi/hbar} w(z(rho)) p_n p_m drho = delta_{nm} h_n
        // with q^{2z} = e^{-i hbar rho} on the unit circle (the same measure
        // normalisation as the Plancherel density)
        let cx = ctx();
        let ap = AWParams { alpha: c(0.6, 0.0), beta: c(0.9, 0.0), gamma: c(1.3, 0.0), delta: c(0.4, 0.0) };
        let hbar = cx.hbar();
        for n in 0..=4u64 {
            for m in 0..=4u64 {
                let v = quad_rho_result(&cx, 4096, |rho| {
                    let z = Complex64::new(0.0, rho / 2.0); // 2z = i rho
                    Ok(aw_w(&cx, &ap, z)? * aw_p(&cx, &ap, n, z)? * aw_p(&cx, &ap, m, z)?)
                })
                .unwrap()
                    * (hbar / (4.0 * std::f64::consts::PI));
                let want = if n == m { aw_h(&cx, &ap, n).unwrap() } else { Complex64::new(0.0, 0.0) };
                let scale = aw_h(&cx, &ap, n).unwrap().norm();
                assert!(
                    (v - want).norm() / scale < 1e-6,
                    "n={n} m={m}: {v} vs {want} (ratio {})",
                    v / want
                );
            }
        }
    }
}
