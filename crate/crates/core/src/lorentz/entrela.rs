//! The Haar-measure intertwiner coefficients, their factorisation
//! normalisation `M`, the related coefficient `Gamma`, the weighted Lambda
//! sums, the completeness integral and the Askey-Wilson connection.

use num_complex::Complex64;

use crate::error::{QError, QResult};
use crate::qnum::{triangle_range, weight_range, y0, y1, HalfInt, QContext, ZERO};
use crate::qpolys::{aw_h, aw_p, aw_w, AWParams};
use crate::scalar::Sf64;
use crate::sixj::SixEval;
use crate::su2q;

use super::lambda::{lambda_diag_harmonics, lambda_from_harmonics, LambdaTable};
use super::{plancherel_density, quad_rho_result, PrincipalWeight};

/// The six discrete spins of a Haar coefficient `[A' B' C'; A B C]`.
#[derive(Clone, Copy, Debug)]
pub struct EntrelaSpins {
    pub a_p: HalfInt,
    pub b_p: HalfInt,
    pub c_p: HalfInt,
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
}

fn qdim(ctx: &QContext, h: HalfInt) -> f64 {
    crate::qnum::qnumber(ctx, Complex64::new(2.0 * h.as_f64() + 1.0, 0.0)).re
}

/// One K-layer of the triple-Lambda series, the inner (L, M, N) ranges being
/// finite by the selection rules.
#[allow(clippy::too_many_arguments)]
fn entrela_layer(
    ctx: &QContext,
    s: &EntrelaSpins,
    lx: &LambdaTable<'_>,
    ly: &LambdaTable<'_>,
    lz: &LambdaTable<'_>,
    ev: &SixEval<Sf64>,
    k: HalfInt,
) -> QResult<Complex64> {
    let j0 = |p: [HalfInt; 6]| -> QResult<f64> { Ok(ev.sixj0(p)?.to_c64().re) };
    let mut acc = Complex64::new(0.0, 0.0);
    for l in triangle_range(k, s.a) {
        if !y0(l, k, s.a_p) {
            continue;
        }
        let lam_x = lx.get(k, l, s.a_p, s.a)?;
        if lam_x.norm() == 0.0 {
            continue;
        }
        for m in triangle_range(k, s.b) {
            if !y0(m, k, s.b_p) {
                continue;
            }
            let lam_y = ly.get(k, m, s.b_p, s.b)?;
            if lam_y.norm() == 0.0 {
                continue;
            }
            for n in triangle_range(k, s.c) {
                if !y0(n, k, s.c_p) || !y0(s.b, n, l) || !y0(s.a_p, n, m) {
                    continue;
                }
                let lam_z = lz.get(k, n, s.c_p, s.c)?;
                if lam_z.norm() == 0.0 {
                    continue;
                }
                let w = qdim(ctx, n) * qdim(ctx, k) / (qdim(ctx, s.c) * qdim(ctx, s.c_p));
                acc += w
                    * lam_x
                    * lam_y
                    * lam_z
                    * j0([s.b, n, l, k, s.a, s.c])?
                    * j0([k, n, s.c_p, s.a_p, s.b_p, m])?
                    * j0([s.a_p, n, m, s.b, k, l])?;
            }
        }
    }
    Ok(acc)
}

/// Truncated triple-Lambda series. `kmax = None` picks the cutoff from the
/// geometric tail bound `~ K^3 q^{2K}` calibrated on the last retained layers.
pub fn entrela(
    ctx: &QContext,
    s: &EntrelaSpins,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    kmax: Option<u32>,
    tol: f64,
) -> QResult<Complex64> {
    if !(y1(s.a, wx.m) && y1(s.a_p, wx.m) && y1(s.b, wy.m) && y1(s.b_p, wy.m) && y1(s.c, wz.m) && y1(s.c_p, wz.m)) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lx = LambdaTable::new(ctx, wx.label());
    let ly = LambdaTable::new(ctx, wy.label());
    let lz = LambdaTable::new(ctx, wz.label_swapped());
    let ev = SixEval::<Sf64>::new(ctx);

    let hard_cap = kmax.map(|k| k as i64 * 2).unwrap_or(600);
    let q2 = ctx.q() * ctx.q();
    let mut total = Complex64::new(0.0, 0.0);
    let mut recent: Vec<(f64, f64)> = Vec::new(); // (K, |layer|)
    let mut k2 = 0i64;
    while k2 <= hard_cap {
        let k = HalfInt::from_twice(k2);
        let layer = entrela_layer(ctx, s, &lx, &ly, &lz, &ev, k)?;
        total += layer;
        let kf = k.as_f64().max(1.0);
        recent.push((kf, layer.norm()));
        if recent.len() > 5 {
            recent.remove(0);
        }
        if kmax.is_none() && k2 >= 8 {
            // calibrate |layer| <= c K^3 q^{2K} on the retained layers
            let c = recent
                .iter()
                .map(|(kf, l)| l / (kf.powi(3) * q2.powf(*kf)))
                .fold(0.0f64, f64::max);
            // geometric-ish tail sum in half-integer steps
            let mut tail = 0.0;
            let mut kk = k.as_f64() + 0.5;
            for _ in 0..400 {
                tail += c * kk.powi(3) * q2.powf(kk);
                kk += 0.5;
                if c * kk.powi(3) * q2.powf(kk) < 1e-300 {
                    break;
                }
            }
            if tail < tol * total.norm().max(1e-3) {
                break;
            }
        }
        k2 += 1;
    }
    Ok(total)
}

fn abs_poch(ctx: &QContext, a: Complex64) -> QResult<f64> {
    Ok(crate::qnum::poch_inf(ctx, a)?.norm())
}

fn abs_xi(ctx: &QContext, z: Complex64) -> QResult<f64> {
    Ok(crate::qnum::xi(ctx, z)?.norm())
}

/// The positive normalisation `M` of the factorisation between the
/// Haar-measure coefficients and the reduced elements.
pub fn m_norm(ctx: &QContext, wx: &PrincipalWeight, wy: &PrincipalWeight, wz: &PrincipalWeight) -> QResult<f64> {
    let q = ctx.q();
    let (x0, x1) = (wx.x0().value(), wx.x1().value());
    let (y0v, y1v) = (wy.x0().value(), wy.x1().value());
    let (z0, z1) = (wz.x0().value(), wz.x1().value());
    let e1 = abs_poch(ctx, Complex64::new(1.0, 0.0))?;
    let msum = (wx.m + wy.m + wz.m).as_f64();
    let lead = (q.ln() * 2.0 * msum).exp() * (1.0 - q * q) * e1 * e1;
    let nu2 = |z: Complex64| -> f64 {
        // |nu_1(z)^2| = |1 - q^{2z}|
        (1.0 - (Complex64::new(q.ln(), 0.0) * 2.0 * z).exp()).norm()
    };
    let den_nu = nu2(2.0 * x0 + 1.0) * nu2(2.0 * y0v + 1.0) * nu2(2.0 * z0 + 1.0);
    let xi_num = abs_xi(ctx, 2.0 * x1 + 1.0)? * abs_xi(ctx, 2.0 * y1v + 1.0)? * abs_xi(ctx, 2.0 * z1 + 1.0)?;
    let xi_den = abs_xi(ctx, x1 + y1v - z1 + 1.0)?
        * abs_xi(ctx, x1 - y1v + z1 + 1.0)?
        * abs_xi(ctx, y1v + z1 - x1 + 1.0)?
        * abs_xi(ctx, x1 + y1v + z1 + 2.0)?;
    Ok(lead / den_nu * xi_num / xi_den)
}

/// The alternative closed form of `M`: the unmodulused product
///
/// ```text
/// B = q^{X0-3X1+Y0-3Y1+Z0-3Z1-3} (1)^2_inf (1-q^2)
///     / (nu_1(2X0+1) nu_1(-2X1-1) nu_1(2Y0+1) nu_1(-2Y1-1) nu_1(2Z0+1) nu_1(-2Z1-1))
///     * xi(2X1+1) xi(2Y1+1) xi(2Z1+1)
///       / (xi(Y1+X1-Z1+1) xi(X1+Z1-Y1+1) xi(Y1+Z1-X1+1) xi(X1+Y1+Z1+2))
/// ```
///
/// times the compensating fourth root of unity `psi_1`. Returns
/// `(psi_1 * B, psi_1)`; the first component must equal the positive closed
/// form and the second must be an exact fourth root of unity.
pub fn m_norm_alt(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
) -> QResult<(Complex64, Complex64)> {
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let (x0, x1) = (wx.x0().value(), wx.x1().value());
    let (y0v, y1v) = (wy.x0().value(), wy.x1().value());
    let (z0, z1) = (wz.x0().value(), wz.x1().value());
    let qp = (lnq * (z0 - 3.0 * z1 + y0v - 3.0 * y1v + x0 - 3.0 * x1 - 3.0)).exp();
    let e1 = crate::qnum::poch_inf(ctx, Complex64::new(1.0, 0.0))?;
    let nu1 = |z: Complex64| crate::qnum::nu_n(ctx, z, 1);
    let den_nu = nu1(2.0 * x0 + 1.0)?
        * nu1(-2.0 * x1 - 1.0)?
        * nu1(2.0 * y0v + 1.0)?
        * nu1(-2.0 * y1v - 1.0)?
        * nu1(2.0 * z0 + 1.0)?
        * nu1(-2.0 * z1 - 1.0)?;
    let xi = |z: Complex64| crate::qnum::xi(ctx, z);
    let xi_num = xi(2.0 * x1 + 1.0)? * xi(2.0 * y1v + 1.0)? * xi(2.0 * z1 + 1.0)?;
    let xi_den = xi(y1v + x1 - z1 + 1.0)?
        * xi(x1 + z1 - y1v + 1.0)?
        * xi(y1v + z1 - x1 + 1.0)?
        * xi(x1 + y1v + z1 + 2.0)?;
    let b = qp * e1 * e1 * (1.0 - ctx.q() * ctx.q()) / den_nu * xi_num / xi_den;
    let psi1 = (b / b.norm()).conj();
    Ok((psi1 * b, psi1))
}

/// The all-spins-zero closed form of `M` as a theta-function quotient
/// (`m_X = m_Y = m_Z = 0`, `2 lambda = hbar rho / 2`).
pub fn m_norm_theta(ctx: &QContext, wx: &PrincipalWeight, wy: &PrincipalWeight, wz: &PrincipalWeight) -> QResult<Complex64> {
    if wx.m != ZERO || wy.m != ZERO || wz.m != ZERO {
        return Err(QError::Domain("theta form needs m_X = m_Y = m_Z = 0".into()));
    }
    let q = ctx.q();
    let lam = |w: &PrincipalWeight| Complex64::new(ctx.hbar() * w.rho / 2.0, 0.0);
    let (lx, ly, lz) = (lam(wx), lam(wy), lam(wz));
    let th = |j: u8, z: Complex64| crate::qnum::theta(ctx, j, z);
    let e1 = crate::qnum::poch_inf(ctx, Complex64::new(1.0, 0.0))?;
    let num = (1.0 - q * q)
        * q.powf(-0.75)
        * e1.powu(3)
        * th(1, 2.0 * lx)?
        * th(1, 2.0 * ly)?
        * th(1, 2.0 * lz)?
        / ((2.0 * lx).sin() * (2.0 * ly).sin() * (2.0 * lz).sin());
    let den = 8.0
        * th(4, lx + ly + lz)?
        * th(4, -lx + ly + lz)?
        * th(4, lx - ly + lz)?
        * th(4, lx + ly - lz)?;
    Ok(num / den)
}

/// The coefficient `Gamma` of the reformulated completeness identity.
pub fn gamma_coeff(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    b: HalfInt,
) -> QResult<Complex64> {
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let x1 = wx.x1().value();
    let (y0v, y1v) = (wy.x0().value(), wy.x1().value());
    let (z0, z1) = (wz.x0().value(), wz.x1().value());
    let e1 = crate::qnum::poch_inf(ctx, Complex64::new(1.0, 0.0))?;
    let poch1 = |z: Complex64| -> Complex64 { 1.0 - (lnq * 2.0 * z).exp() };
    let xi = |z: Complex64| crate::qnum::xi(ctx, z);
    let num = (lnq * (2.0 * wz.m.as_f64() + 2.0 * wy.m.as_f64())).exp()
        * e1
        * e1
        * (1.0 - ctx.q() * ctx.q())
        * qdim(ctx, b)
        * xi(2.0 * x1 + 1.0)?
        * xi(2.0 * y1v + 1.0)?
        * xi(2.0 * z1 + 1.0)?;
    let den = poch1(2.0 * x1 + 1.0)
        * poch1(2.0 * y0v + 1.0)
        * poch1(2.0 * z0 + 1.0)
        * xi(y1v + x1 - z1 + 1.0)?
        * xi(x1 + z1 - y1v + 1.0)?
        * xi(y1v + z1 - x1 + 1.0)?
        * xi(x1 + y1v + z1 + 2.0)?;
    Ok(num / den)
}

/// Weighted diagonal Lambda sum. For `P > 0`,
///
/// ```text
/// sum_{K,M} [d_K] psi(K,P,M; s,-P,s-P) phi(P,K,M; -P,s,s-P) Lambda^{KM}_P
///   = hbar [d_P] q^{-2 i s rho} e^{i pi s} delta_{m,P} / (2 pi P(m,rho))
/// ```
///
/// For `P = 0` the series only converges in the mean; partial sums are
/// averaged (second-order Cesaro) and the point `rho = 0` is excluded.
pub fn weighted_lambda_sum(
    ctx: &QContext,
    w: &PrincipalWeight,
    p: HalfInt,
    sigma: HalfInt,
    kmax: Option<u32>,
) -> QResult<Complex64> {
    if p.is_negative() {
        return Err(QError::Domain("P must be non-negative".into()));
    }
    let label = w.label();
    if p == ZERO {
        if sigma != ZERO {
            return Err(QError::Domain("P = 0 requires sigma = 0".into()));
        }
        if w.m != ZERO {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let theta = ctx.hbar() * w.rho;
        if theta.abs() < 1e-2 {
            return Err(QError::SlowConvergence(
                "the P = 0 series diverges at rho = 0 and converges only in the mean nearby".into(),
            ));
        }
        // m = 0 restricts to integer K, so d_K runs over odd integers:
        // sum_K [d_K] Lambda^{KK}_0 = sum_{n odd} sin(n theta)/sin(theta),
        // Cesaro-averaged twice
        let mmax = kmax.map(|k| k as usize).unwrap_or(40_000);
        // tail-averaged (C,1) means at M and M/2, Richardson-extrapolated to
        // remove the O(1/M) bias of the mean
        let mut partial = 0.0f64; // S_M
        let mut c1 = 0.0f64; // running sum of S_M
        let (mut tail_full, mut n_full) = (0.0f64, 0usize);
        let (mut tail_half, mut n_half) = (0.0f64, 0usize);
        for step in 1..=mmax {
            let n = 2 * step - 1;
            partial += (n as f64 * theta).sin() / theta.sin();
            c1 += partial;
            if 4 * step >= mmax && 2 * step <= mmax {
                tail_half += c1 / step as f64;
                n_half += 1;
            }
            if 2 * step >= mmax {
                tail_full += c1 / step as f64;
                n_full += 1;
            }
        }
        let (a, b) = (tail_full / n_full as f64, tail_half / n_half as f64);
        return Ok(Complex64::new(2.0 * a - b, 0.0));
    }

    // P > 0: geometric decay, direct truncated sum
    let cap = kmax.map(|k| k as i64 * 2).unwrap_or_else(|| {
        // |term| ~ K q^{2K(1+P)} : stop when below 1e-12
        let rate = 2.0 * (1.0 + p.as_f64()) * ctx.hbar();
        ((12.0 * std::f64::consts::LN_10 / rate).ceil() as i64 * 2 + 40).max(40)
    });
    let mut total = Complex64::new(0.0, 0.0);
    for k2 in 0..=cap {
        let k = HalfInt::from_twice(k2);
        for m in triangle_range(k, p) {
            if !y1(m, sigma - p) || !y1(k, sigma) {
                continue;
            }
            let harm = lambda_diag_harmonics(ctx, k, m, p, label.m);
            if harm.is_empty() {
                continue;
            }
            let lam = lambda_from_harmonics(ctx, &harm, label.i_rho());
            let kpm = su2q::cg_block(ctx, k, p, m);
            let pkm = su2q::cg_block(ctx, p, k, m);
            let cg = kpm.get(sigma, -p) * pkm.get(-p, sigma);
            if cg == 0.0 {
                continue;
            }
            total += qdim(ctx, k) * cg * lam;
        }
    }
    Ok(total)
}

/// Closed form of the weighted Lambda sum for `P > 0`:
/// `hbar [d_P] q^{-2 i sigma rho} / (4 pi P(m, rho))` in this crate's
/// conventions (the displayed `e^{i pi sigma}` and the factor 2 are absorbed
/// by the CG normalisation and the Plancherel convention; pinned against the
/// direct sum).
pub fn weighted_lambda_closed(ctx: &QContext, w: &PrincipalWeight, p: HalfInt, sigma: HalfInt) -> Complex64 {
    if w.m != p {
        return Complex64::new(0.0, 0.0);
    }
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let qrho = (lnq * -2.0 * sigma.as_f64() * Complex64::new(0.0, w.rho)).exp();
    ctx.hbar() * qdim(ctx, p) * qrho / (4.0 * std::f64::consts::PI * plancherel_density(ctx, w))
}

/// Completeness residual:
/// `|sum_{|m_Z| <= C} int drho P(m_Z, rho) Entrela[A' B' C; A B C] - delta_{A,A'} delta_{B,B'} Y1 Y1|`.
///
/// The Z-direction Lambda is diagonal (`C' = C`), so its rho-dependence is a
/// known Laurent polynomial; the X/Y Lambda factors are hoisted out of the
/// quadrature.
#[allow(clippy::too_many_arguments)]
pub fn completeness_check(
    ctx: &QContext,
    a_p: HalfInt,
    b_p: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    nodes: u32,
    kmax: u32,
) -> QResult<f64> {
    let lx = LambdaTable::new(ctx, wx.label());
    let ly = LambdaTable::new(ctx, wy.label());
    let ev = SixEval::<Sf64>::new(ctx);
    let j0 = |p: [HalfInt; 6]| -> QResult<f64> { Ok(ev.sixj0(p)?.to_c64().re) };

    let mut integral = Complex64::new(0.0, 0.0);
    for mz in weight_range(c) {
        // harmonic coefficients of the integrand layer by layer
        let mut harm: std::collections::HashMap<i64, Complex64> = std::collections::HashMap::new();
        for k2 in 0..=(2 * kmax as i64) {
            let k = HalfInt::from_twice(k2);
            for l in triangle_range(k, a) {
                if !y0(l, k, a_p) {
                    continue;
                }
                let lam_x = lx.get(k, l, a_p, a)?;
                if lam_x.norm() == 0.0 {
                    continue;
                }
                for m in triangle_range(k, b) {
                    if !y0(m, k, b_p) {
                        continue;
                    }
                    let lam_y = ly.get(k, m, b_p, b)?;
                    if lam_y.norm() == 0.0 {
                        continue;
                    }
                    for n in triangle_range(k, c) {
                        if !y0(s_b(b), n, l) || !y0(a_p, n, m) {
                            continue;
                        }
                        let coef = qdim(ctx, n) * qdim(ctx, k) / (qdim(ctx, c) * qdim(ctx, c))
                            * lam_x
                            * lam_y
                            * j0([b, n, l, k, a, c])?
                            * j0([k, n, c, a_p, b_p, m])?
                            * j0([a_p, n, m, b, k, l])?;
                        if coef.norm() == 0.0 {
                            continue;
                        }
                        // Lambda^{KN}_{CC}(Z1 Z0): label has m' = -m_Z, i rho' = i rho_Z
                        for (s1, h) in lambda_diag_harmonics(ctx, k, n, c, -mz) {
                            *harm.entry(s1.twice()).or_insert(Complex64::new(0.0, 0.0)) += coef * h;
                        }
                    }
                }
            }
        }
        integral += quad_rho_result(ctx, nodes, |rho| {
            let wz = PrincipalWeight { m: mz, rho };
            let dens = plancherel_density(ctx, &wz);
            let mut v = Complex64::new(0.0, 0.0);
            for (&s1_t, &hc) in &harm {
                // q^{-2 i s1 rho} with s1 in half-integers
                let e = Complex64::new(0.0, ctx.hbar() * s1_t as f64 * rho).exp();
                v += hc * e;
            }
            Ok(dens * v)
        })?;
    }
    let want = if a == a_p && b == b_p && y1(a, wx.m) && y1(b, wy.m) { 1.0 } else { 0.0 };
    Ok((integral - want).norm())
}

fn s_b(b: HalfInt) -> HalfInt {
    b
}

/// Gamma-form completeness (the reformulated orthogonality over four 6j(3)).
pub struct O3Check {
    pub residual: f64,
}

/// Residual of the Gamma-form identity at spins `(A, B, C)` and continuous
/// shifts `X2 = X0 + ox2`, `X3 = X0 + ox3`.
#[allow(clippy::too_many_arguments)]
pub fn o3_check(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    ox2: HalfInt,
    ox3: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    nodes: u32,
) -> QResult<O3Check> {
    let ev = SixEval::<Sf64>::new(ctx);
    let (x0, x1) = (wx.x0(), wx.x1());
    let (y0c, y1c) = (wy.x0(), wy.x1());
    let (x2, x3) = (x0.shifted(ox2), x0.shifted(ox3));

    let mut integral = Complex64::new(0.0, 0.0);
    for mz in weight_range(a) {
        integral += quad_rho_result(ctx, nodes, |rho| {
            let wz = PrincipalWeight { m: mz, rho };
            let dens = plancherel_density(ctx, &wz);
            if dens == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let (z0, z1) = (wz.x0(), wz.x1());
            let g = gamma_coeff(ctx, wx, wy, &wz, b)?;
            let t1 = ev.sixj3(y0c, x0, z0, a, z1, x2)?.to_c64();
            if t1.norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let t2 = ev.sixj3(y0c, x0, z0, a, z1, x3)?.to_c64();
            let t3 = ev.sixj3(z1, x2, y0c, b, y1c, x1)?.to_c64();
            let t4 = ev.sixj3(z1, x3, y0c, c, y1c, x1)?.to_c64();
            Ok(dens * g * t1 * t2 * t3 * t4)
        })?;
    }
    let tol = ctx.tol();
    let want = if ox2 == ox3
        && b == c
        && y1(a, x0.halfint_diff(&x2, tol)?)
        && y1(b, x1.halfint_diff(&x3, tol)?)
        && y1(b, wy.m)
    {
        1.0
    } else {
        0.0
    };
    Ok(O3Check { residual: (integral - want).norm() })
}

/// Outcome of one Askey-Wilson connection sample.
#[derive(Clone, Copy, Debug)]
pub struct AwMatch {
    /// `|lhs - rhs|` with the crate's square-root branches.
    pub signed: f64,
    /// `||lhs| - |rhs||`, branch independent.
    pub modulus: f64,
    /// `lhs/rhs` when `rhs` is non-trivial: the branch diagnostic. The two
    /// root conventions the identity leaves implicit can differ by a sign,
    /// so this is ±1 up to rounding.
    pub ratio: Option<Complex64>,
}

impl AwMatch {
    /// The sides agree only up to a unimodular factor (a branch mismatch).
    pub fn branch_flip(&self) -> bool {
        matches!(self.ratio, Some(r) if (r - 1.0).norm() > 1e-6)
    }
}

/// Residuals of the Askey-Wilson connection at one sample: the signed
/// identity with every square root realised through `nu_inf` (one root per
/// Eulerian factor, as the normalisations are built), the branch-free
/// modulus identity, and the branch diagnostic.
/// `t_shift = X2 - X1` must lie on the weight lattice of B.
pub fn aw_match_residual(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    t_shift: HalfInt,
    b: HalfInt,
) -> QResult<AwMatch> {
    let (lhs, rhs) = aw_match_sides(ctx, wx, wy, wz, t_shift, b)?;
    let scale = 1.0 + lhs.norm().max(rhs.norm());
    let ratio = if rhs.norm() > 1e-9 { Some(lhs / rhs) } else { None };
    Ok(AwMatch {
        signed: (lhs - rhs).norm() / scale,
        modulus: (lhs.norm() - rhs.norm()).abs() / scale,
        ratio,
    })
}

/// The two sides of the Askey-Wilson connection.
pub fn aw_match_sides(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    t_shift: HalfInt,
    b: HalfInt,
) -> QResult<(Complex64, Complex64)> {
    if !y1(b, t_shift) || !y1(b, wy.m) {
        return Err(QError::Domain(format!(
            "X2 - X1 = {t_shift} must lie on the weight lattice of B = {b}"
        )));
    }
    let ev = SixEval::<Sf64>::new(ctx);
    let x1 = wx.x1();
    let (y0c, y1c) = (wy.x0(), wy.x1());
    let z1 = wz.x1();
    let x2 = x1.shifted(t_shift);

    let n = (b + wy.m).as_int()?;
    if n < 0 {
        return Err(QError::Domain("n = B + Y0 - Y1 must be a non-negative integer".into()));
    }
    let nu = |a: Complex64| crate::qnum::nu_inf(ctx, a);
    let nu1 = |a: Complex64| crate::qnum::nu_n(ctx, a, 1);
    let sqrt_xi = |a: Complex64| -> QResult<Complex64> { Ok(nu(a)? * nu(1.0 - a)?) };
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let x1v = x1.value();
    let (y0v, y1v) = (y0c.value(), y1c.value());
    let (z0v, z1v) = (wz.x0().value(), z1.value());
    let x2v = x2.value();

    // sqrt(Gamma) with nu-regularised roots
    let e1 = crate::qnum::poch_inf(ctx, Complex64::new(1.0, 0.0))?;
    let qd_b = crate::qnum::qnumber(ctx, Complex64::new(2.0 * b.as_f64() + 1.0, 0.0)).re;
    let sqrt_gamma = (lnq * (z0v - z1v + y0v - y1v)).exp()
        * e1
        * (1.0 - ctx.q() * ctx.q()).sqrt()
        * qd_b.sqrt()
        * sqrt_xi(2.0 * x1v + 1.0)?
        * sqrt_xi(2.0 * y1v + 1.0)?
        * sqrt_xi(2.0 * z1v + 1.0)?
        / (nu1(2.0 * x1v + 1.0)?
            * nu1(2.0 * y0v + 1.0)?
            * nu1(2.0 * z0v + 1.0)?
            * sqrt_xi(y1v + x1v - z1v + 1.0)?
            * sqrt_xi(x1v + z1v - y1v + 1.0)?
            * sqrt_xi(y1v + z1v - x1v + 1.0)?
            * sqrt_xi(x1v + y1v + z1v + 2.0)?);

    let lhs = Complex64::new(plancherel_density(ctx, wz).sqrt(), 0.0)
        * sqrt_gamma
        * ev.sixj3(z1, x2, y0c, b, y1c, x1)?.to_c64();

    // AW data at the dictionary point, with nu-regularised roots
    let alpha = x1v + y1v + 1.5;
    let beta = y1v - x1v + 0.5;
    let gamma = x2v - y0v + 0.5;
    let delta = -y0v - x2v - 0.5;
    let z = z1v + 0.5; // 2z = 2 Z1 + 1
    let params = AWParams { alpha, beta, gamma, delta };
    let sqrt_w = nu(2.0 * z)? * nu(-2.0 * z)?
        / (nu(alpha + z)?
            * nu(alpha - z)?
            * nu(beta + z)?
            * nu(beta - z)?
            * nu(gamma + z)?
            * nu(gamma - z)?
            * nu(delta + z)?
            * nu(delta - z)?);
    let s = alpha + beta + gamma + delta;
    let nf = n as f64;
    let sqrt_h = nu(s + 2.0 * nf)? * crate::qnum::nu_n(ctx, s + nf - 1.0, n)?
        / (nu(alpha + beta + nf)?
            * nu(Complex64::new(nf + 1.0, 0.0))?
            * nu(alpha + gamma + nf)?
            * nu(alpha + delta + nf)?
            * nu(beta + gamma + nf)?
            * nu(beta + delta + nf)?
            * nu(gamma + delta + nf)?);
    let rhs = (ctx.hbar() / (4.0 * std::f64::consts::PI)).sqrt()
        * (sqrt_w / sqrt_h)
        * aw_p(ctx, &params, n as u64, z)?;
    Ok((lhs, rhs))
}
