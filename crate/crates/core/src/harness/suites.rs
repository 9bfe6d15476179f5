//! The ten verification suites, each mapping one-to-one onto the identities
//! of the modules they exercise.

use num_complex::Complex64;

use super::sampling;
use super::{SplitMix64, SuiteConfig, SuiteReport};
use crate::error::QResult;
use crate::lorentz::{self, LambdaTable, PrincipalWeight, ReducedBlock};
use crate::qnum::{
    spins_up_to, triangle_range, weight_range, y0, y1, HalfInt, QContext, HALF, ONE, ZERO,
};
use crate::qpolys;
use crate::scalar::{Real, Sf64};
use crate::sixj::{self, SixJArgs};
use crate::su2q;
use crate::verify::{self, Ident};

pub fn cg(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("cg", ctx, cfg);
    let smax = cfg.max_spin.min(HalfInt::from_int(3));
    let spins: Vec<HalfInt> = spins_up_to(smax).collect();

    // orthogonality and completeness of the CG pairing
    let mut worst = 0.0f64;
    let mut count = 0u32;
    for &a in &spins {
        for &b in &spins {
            for k in triangle_range(a, b) {
                for l in triangle_range(a, b) {
                    let bk = su2q::cg_block(ctx, a, b, k);
                    let bl = su2q::cg_block(ctx, a, b, l);
                    for p in weight_range(k) {
                        let mut s = 0.0;
                        for m in weight_range(a) {
                            s += bl.get(m, p - m) * bk.get(m, p - m);
                        }
                        worst = worst.max((s - if k == l { 1.0 } else { 0.0 }).abs());
                        count += 1;
                    }
                }
            }
        }
    }
    rep.push("orthogonality", worst, count, 1e-12);

    // psi(A,B,C;i,j,k) = psi(B,A,C;-j,-i,-k) = (-1)^{A+B-C} psi(..; -i,-j,-k)(1/q)
    let mut worst = 0.0f64;
    let mut count = 0u32;
    for &a in &spins {
        for &b in &spins {
            for k in triangle_range(a, b) {
                let ab = su2q::cg_block(ctx, a, b, k);
                let ba = su2q::cg_block(ctx, b, a, k);
                let abi = su2q::cg_block_qinv(ctx, a, b, k);
                let par = (a + b - k).neg_one_pow()?;
                for i in weight_range(a) {
                    for j in weight_range(b) {
                        if !y1(k, i + j) {
                            continue;
                        }
                        worst = worst.max((ab.get(i, j) - ba.get(-j, -i)).abs());
                        worst = worst.max((ab.get(i, j) - par * abi.get(-i, -j)).abs());
                        count += 1;
                    }
                }
            }
        }
    }
    rep.push("weight_reversal_and_qinv", worst, count, 1e-11);

    // twist relation and quasitriangularity of the braiding
    let small: Vec<HalfInt> = spins_up_to(HalfInt::from_twice(3)).collect();
    let mut tw = 0.0f64;
    let mut qt = 0.0f64;
    let mut count = 0u32;
    for &i_sp in &small {
        for &j_sp in &small {
            let rp = su2q::rmatrix(ctx, j_sp, i_sp, su2q::BraidSign::Plus);
            let rm = su2q::rmatrix(ctx, j_sp, i_sp, su2q::BraidSign::Minus);
            for k in triangle_range(i_sp, j_sp) {
                let bij = su2q::cg_block(ctx, i_sp, j_sp, k);
                let bji = su2q::cg_block(ctx, j_sp, i_sp, k);
                let vr = (su2q::ribbon_sqrt(ctx, i_sp) * su2q::ribbon_sqrt(ctx, j_sp)
                    / su2q::ribbon_sqrt(ctx, k))
                .re;
                for p in weight_range(k) {
                    for j in weight_range(j_sp) {
                        let i = p - j;
                        if !y1(i_sp, i) {
                            continue;
                        }
                        let mut sp = 0.0;
                        let mut sm = 0.0;
                        for kk in weight_range(i_sp) {
                            let ll = p - kk;
                            if y1(j_sp, ll) {
                                sp += bij.get(kk, ll) * rp.get(ll, kk, j, i);
                                sm += bij.get(kk, ll) * rm.get(ll, kk, j, i);
                            }
                        }
                        tw = tw.max((sp - vr * bji.get(j, i)).abs());
                        tw = tw.max((sm - bji.get(j, i) / vr).abs());
                        count += 1;
                    }
                }
            }
        }
    }
    for &a in &small {
        for &b in &small {
            for &d in &small {
                let rad = su2q::rmatrix(ctx, a, d, su2q::BraidSign::Plus);
                let rbd = su2q::rmatrix(ctx, b, d, su2q::BraidSign::Plus);
                for cc in triangle_range(a, b) {
                    let rcd = su2q::rmatrix(ctx, cc, d, su2q::BraidSign::Plus);
                    let bab = su2q::cg_block(ctx, a, b, cc);
                    for i in weight_range(a) {
                        for j in weight_range(b) {
                            for n in weight_range(d) {
                                for k in weight_range(cc) {
                                    let l = i + j + n - k;
                                    if !y1(d, l) {
                                        continue;
                                    }
                                    let mut lhs = 0.0;
                                    for ip in weight_range(a) {
                                        let jp = k - ip;
                                        let m = ip + l - i;
                                        if y1(b, jp) && y1(d, m) {
                                            lhs += bab.get(ip, jp)
                                                * rad.get(ip, l, i, m)
                                                * rbd.get(jp, m, j, n);
                                        }
                                    }
                                    let rhs = rcd.get(k, l, i + j, n) * bab.get(i, j);
                                    qt = qt.max((lhs - rhs).abs());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push("twist_relation", tw, count, 1e-11);
    rep.push("quasitriangularity", qt, count, 1e-11);

    // Weyl element: inverse pairing, mu pairing, quantum trace
    let mut worst = 0.0f64;
    for &j in &small {
        let w = su2q::weyl_w(ctx, j);
        let v = su2q::ribbon(ctx, j);
        let mu = su2q::mu_diag(ctx, j);
        let n = j.twice() as usize + 1;
        let qd: f64 = mu.iter().sum();
        let want = crate::qnum::qnumber(ctx, Complex64::new(2.0 * j.as_f64() + 1.0, 0.0)).re;
        worst = worst.max((qd - want).abs());
        let e2 = if j.twice() % 2 == 0 { 1.0 } else { -1.0 };
        for a in 0..n {
            for k in 0..n {
                let mut s1 = Complex64::new(0.0, 0.0);
                let mut s2 = Complex64::new(0.0, 0.0);
                for b in 0..n {
                    s1 += w.upper[a][b] * w.lower[b][k];
                    s2 += w.upper[a][b] * w.lower[k][b];
                }
                worst = worst.max((v * s1 - if a == k { 1.0 } else { 0.0 }).norm());
                let want = if a == k { e2 * mu[a] } else { 0.0 };
                worst = worst.max((v * s2 - want).norm());
            }
        }
    }
    rep.push("weyl_and_mu", worst, small.len() as u32, 1e-11);
    Ok(rep)
}

pub fn sixj0(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("sixj0", ctx, cfg);
    let id = Ident::<Sf64>::new(ctx);
    let s = cfg.max_spin;
    rep.push("symmetries", verify::sixj0::trivsymm_residual(&id, s)?, 0, 1e-11);
    rep.push("racah_wigner", verify::sixj0::racah_wigner_residual(&id, s)?, 0, 1e-11);
    rep.push("orthogonality", verify::sixj0::ortho_residual(&id, s)?, 0, 1e-11);
    rep.push("racah_relation", verify::sixj0::racah_residual(&id, s)?, 0, 1e-11);
    rep.push("biedenharn_elliot", verify::sixj0::pentagon_residual(&id, s)?, 0, 1e-11);
    rep.push("zero_spin_reduction", verify::sixj0::zero_spin_reduction_residual(ctx, s)?, 0, 1e-11);
    Ok(rep)
}

/// Draw samples until `n` non-vacuous ones (identity sides of non-trivial
/// size) are collected; returns the worst residual and the count.
fn sweep(
    rng: &mut SplitMix64,
    n: u32,
    mut f: impl FnMut(&mut SplitMix64) -> QResult<(f64, f64)>,
) -> QResult<(f64, u32)> {
    let mut worst = 0.0f64;
    let mut good = 0u32;
    for _ in 0..(40 * n) {
        if good >= n {
            break;
        }
        let (r, scale) = f(rng)?;
        if scale > 1e-9 {
            good += 1;
            worst = if r.is_finite() { worst.max(r) } else { f64::INFINITY };
        }
    }
    Ok((worst, good))
}

pub fn sixj1(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("sixj1", ctx, cfg);
    let id = Ident::<Sf64>::new(ctx);
    let mut rng = SplitMix64::new(cfg.seed);
    let smax = cfg.max_spin;
    let n = cfg.samples;
    let tol = 1e-9;
    let spin = |rng: &mut SplitMix64| sampling::spin(rng, smax);
    let off = |rng: &mut SplitMix64| sampling::offset(rng, smax);
    let gs = sampling::generic_spin;

    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::symcont_a_residual(&id, gs(rng), off(rng), off(rng), spin(rng), spin(rng), spin(rng))
    })?;
    rep.push("symmetry_first_family", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::symcont_b_residual(&id, gs(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng))
    })?;
    rep.push("symmetry_second_family", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::ortho1_residual(&id, gs(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng))
    })?;
    rep.push("orthogonality_c_sum", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::ortho2_residual(&id, gs(rng), off(rng), spin(rng), spin(rng), spin(rng), spin(rng))
    })?;
    rep.push("orthogonality_x3_sum_a", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::ortho3_residual(&id, gs(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng))
    })?;
    rep.push("orthogonality_x3_sum_b", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::racah_residual(&id, gs(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng))
    })?;
    rep.push("racah_relation", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::penta1_residual(
            &id, gs(rng), off(rng), off(rng), off(rng),
            spin(rng), spin(rng), spin(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_mixed_6j0", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::penta2_residual(
            &id, gs(rng), off(rng), off(rng), off(rng), off(rng),
            spin(rng), spin(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_second_family", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::penta3_residual(
            &id, gs(rng), off(rng), off(rng),
            spin(rng), spin(rng), spin(rng), spin(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_discrete_rhs", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::hexa_residual(
            &id, gs(rng), off(rng), off(rng), off(rng),
            spin(rng), spin(rng), spin(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("hexagon", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj1::underline_residual(&id, gs(rng), off(rng), off(rng), spin(rng), spin(rng), spin(rng))
    })?;
    rep.push("underline_symmetry", r, g, tol);
    Ok(rep)
}

pub fn sixj3(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("sixj3", ctx, cfg);
    let id = Ident::<Sf64>::new(ctx);
    let mut rng = SplitMix64::new(cfg.seed);
    let smax = cfg.max_spin;
    let n = cfg.samples;
    let tol = 1e-9;
    let spin = |rng: &mut SplitMix64| sampling::spin(rng, smax);
    let off = |rng: &mut SplitMix64| sampling::offset(rng, smax);
    let gs = sampling::generic_spin;

    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::sym_residual(&id, gs(rng), gs(rng), gs(rng), off(rng), off(rng), spin(rng))
    })?;
    rep.push("symmetry", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::ortho_residual(&id, gs(rng), gs(rng), gs(rng), off(rng), off(rng), spin(rng))
    })?;
    rep.push("discrete_orthogonality", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::penta1_residual(
            &id, gs(rng), gs(rng), gs(rng),
            off(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_1", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::penta2_residual(
            &id, gs(rng), gs(rng), gs(rng),
            off(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_2", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::racah_residual(&id, gs(rng), gs(rng), gs(rng), off(rng), off(rng), spin(rng))
    })?;
    rep.push("racah_relation", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::penta3_residual(
            &id, gs(rng), gs(rng), gs(rng),
            off(rng), off(rng), off(rng), spin(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_3", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::penta4_residual(
            &id, gs(rng), gs(rng), gs(rng),
            off(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_4", r, g, tol);
    let (r, g) = sweep(&mut rng, n, |rng| {
        verify::sixj3::hexa_residual(
            &id, gs(rng), gs(rng), gs(rng),
            off(rng), off(rng), off(rng), off(rng), spin(rng), spin(rng),
        )
    })?;
    rep.push("pentagon_hexagon", r, g, tol);
    let mut g_worst = 0.0f64;
    let (r, g) = sweep(&mut rng, n, |rng| {
        let (r, scale, gg) =
            verify::sixj3::underline_residual(&id, gs(rng), gs(rng), gs(rng), off(rng), off(rng), spin(rng))?;
        if scale > 1e-9 {
            g_worst = g_worst.max((gg.abs().to_f64() - 1.0).abs());
            g_worst = g_worst.max((gg.powi(4).to_c64() - 1.0).norm());
        }
        Ok((r, scale))
    })?;
    rep.push("underline_symmetry", r, g, tol);
    rep.push("underline_root_of_unity", g_worst, g, 1e-10);
    Ok(rep)
}

pub fn lambda(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("lambda", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let smax = cfg.max_spin;
    let n_weights = 20u32.min(cfg.samples.max(4));
    let tol = 1e-9;

    let mut systan = 0.0f64;
    let mut linear = 0.0f64;
    let mut casimir = 0.0f64;
    let mut boundary = 0.0f64;
    let mut diag3j = 0.0f64;
    let mut unitarity = 0.0f64;
    for _ in 0..n_weights {
        let w = sampling::weight(&mut rng, ctx);
        let label = w.label();
        systan = systan.max(lorentz::lambda_systan_residual(ctx, &label, HalfInt::from_twice(2))?);
        linear = linear.max(lorentz::lambda_linear_system_residual(ctx, &label, smax)?);
        casimir = casimir.max(lorentz::lambda_casimir_residual(ctx, &label, smax)?);
        for b in spins_up_to(ONE) {
            for c in spins_up_to(ONE) {
                if y1(b + c, w.m) {
                    let closed = lorentz::lambda_boundary_bc(ctx, b, c, &label)?;
                    let direct = lorentz::lambda_coeff(ctx, b, c, b + c, b + c, &label)?;
                    boundary = boundary.max((closed - direct).norm());
                }
                if y1(b, w.m) {
                    let closed = lorentz::lambda_boundary_b_ab(ctx, c, b, &label)?;
                    let direct = lorentz::lambda_coeff(ctx, c, b + c, b, b, &label)?;
                    boundary = boundary.max((closed - direct).norm());
                    // Lambda^{B,A+B}_A(X0X1) = (v_X0/v_X1) Lambda^{A+B,B}_A(X1X0)
                    let lnq = Complex64::new(ctx.q().ln(), 0.0);
                    let irho = label.i_rho();
                    let vr = ((Complex64::new(0.0, 2.0 * std::f64::consts::PI) * w.m.as_f64()).exp())
                        * (lnq * (-2.0 * w.m.as_f64()) * irho).exp();
                    let swapped = vr * lorentz::lambda_coeff(ctx, b + c, c, b, b, &label.swapped())?;
                    boundary = boundary.max((closed - swapped).norm());
                }
            }
        }
        let swapped = w.label_swapped();
        for a in spins_up_to(smax) {
            if !y1(a, w.m) {
                continue;
            }
            for b in spins_up_to(smax) {
                for c in triangle_range(a, b).filter(|c| *c <= smax) {
                    let via6j = lorentz::lambda_coeff(ctx, b, c, a, a, &label)?;
                    let via3j = lorentz::lambda_diag_3j(ctx, b, c, a, &label);
                    diag3j = diag3j.max((via6j - via3j).norm());
                    for d in spins_up_to(smax) {
                        if !y0(d, b, c) || !y1(d, w.m) {
                            continue;
                        }
                        let v = lorentz::lambda_coeff(ctx, b, c, a, d, &label)?;
                        let u = lorentz::lambda_coeff(ctx, b, c, a, d, &swapped)?;
                        unitarity = unitarity.max((u - v.conj()).norm());
                    }
                }
            }
        }
    }
    rep.push("representation_system", systan, n_weights, tol);
    rep.push("linear_system", linear, n_weights, tol);
    rep.push("casimir_system", casimir, n_weights, tol);
    rep.push("boundary_closed_forms", boundary, n_weights, tol);
    rep.push("diagonal_3j_cross_check", diag3j, n_weights, tol);
    rep.push("unitarity_conjugation", unitarity, n_weights, tol);

    // exact Fourier quadrature of the Plancherel pairing
    let nodes = 4 * (smax.twice() as u32).div_euclid(2).max(1) * 2 + 3;
    let mut fourier = 0.0f64;
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for c in triangle_range(a, b).filter(|c| *c <= smax) {
                let mut total = Complex64::new(0.0, 0.0);
                for m in weight_range(a) {
                    total += lorentz::quad_rho_result(ctx, nodes, |rho| {
                        let w = PrincipalWeight::new(ctx, m, rho);
                        Ok(Complex64::new(lorentz::plancherel_density(ctx, &w), 0.0)
                            * lorentz::lambda_diag_3j(ctx, b, c, a, &w.label()))
                    })?;
                }
                let want = if b == ZERO && a == c {
                    crate::qnum::qnumber(ctx, Complex64::new(2.0 * a.as_f64() + 1.0, 0.0)).re
                } else {
                    0.0
                };
                fourier = fourier.max((total - want).norm());
            }
        }
    }
    rep.push("plancherel_fourier_identity", fourier, 0, 1e-10);

    // weighted diagonal sum against its closed form
    let mut wsum = 0.0f64;
    for _ in 0..6 {
        let p = HalfInt::from_twice(rng.below(4) as i64 + 1);
        let w = PrincipalWeight { m: p, ..sampling::weight(&mut rng, ctx) };
        for sigma in [ZERO, HALF, ONE] {
            if !y1(p + p, sigma + sigma) {
                continue;
            }
            let got = lorentz::weighted_lambda_sum(ctx, &w, p, sigma, None)?;
            let want = lorentz::weighted_lambda_closed(ctx, &w, p, sigma);
            wsum = wsum.max((got - want).norm() / (1.0 + want.norm()));
        }
    }
    rep.push("weighted_diagonal_sum", wsum, 6, 1e-6);
    Ok(rep)
}

pub fn intertwiner(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("intertwiner", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let smax = cfg.max_spin;
    let triples = 10u32;
    let tol = 1e-8;
    let mut sub = 0.0f64;
    let mut full = 0.0f64;
    let mut nonvanishing = f64::INFINITY;
    for _ in 0..triples {
        let (wx, wy, wz) = sampling::weight_triple(&mut rng, ctx)?;
        let block = ReducedBlock::new(ctx, wx, wy, wz)?;
        let lx = LambdaTable::new(ctx, wx.label());
        let ly = LambdaTable::new(ctx, wy.label());
        let lz = LambdaTable::new(ctx, wz.label());
        // the 1/2-generator subsystem at a few admissible (A, B, C)
        let mut tested = 0;
        'outer: for a in spins_up_to(smax) {
            if !y1(a, wx.m) {
                continue;
            }
            for b in spins_up_to(smax) {
                if !y1(b, wy.m) {
                    continue;
                }
                for c in triangle_range(a, b).filter(|c| y1(*c, wz.m)) {
                    for sigma in [HALF, -HALF] {
                        for tau in [HALF, -HALF] {
                            sub = sub.max(lorentz::intertwiner_subsystem_residual(
                                ctx, &block, &lx, &ly, &lz, sigma, tau, a, b, c,
                            )?);
                        }
                    }
                    tested += 1;
                    if tested >= 3 {
                        break 'outer;
                    }
                }
            }
        }
        // the general equation for U <= 1
        let u = HalfInt::from_twice(rng.below(2) as i64 + 1);
        let w_spin = sampling::spin(&mut rng, smax);
        for t in triangle_range(u, w_spin).filter(|t| y1(*t, wz.m)) {
            let a = sampling::spin(&mut rng, smax);
            if !y1(a, wx.m) {
                continue;
            }
            for b in spins_up_to(smax).filter(|b| y1(*b, wy.m)) {
                for c in triangle_range(a, b).filter(|c| y1(*c, wz.m)) {
                    full = full.max(lorentz::intertwiner_residual(
                        ctx, &block, &lx, &ly, &lz, u, w_spin, t, a, b, c,
                    )?);
                }
            }
        }
        // Theorem-1 support statement
        for c in spins_up_to(smax).filter(|c| y1(*c, wz.m)) {
            nonvanishing = nonvanishing.min(block.nonvanishing_at(c, HalfInt::from_int(2))?);
        }
    }
    rep.push("half_generator_subsystem", sub, triples, tol);
    rep.push("general_intertwiner_equation", full, triples, tol);
    rep.push("nonvanishing_support_margin", 1e-8 / nonvanishing.max(1e-300), triples, 1.0);
    Ok(rep)
}

pub fn entrela(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("entrela", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let tol_fact = 1e-6;

    // positivity of M and agreement of its two closed forms
    let mut pos_ok = 0.0f64;
    let mut forms = 0.0f64;
    for _ in 0..50 {
        let (wx, wy, wz) = sampling::weight_triple(&mut rng, ctx)?;
        let m = lorentz::m_norm(ctx, &wx, &wy, &wz)?;
        if !(m > 0.0) {
            pos_ok = 1.0;
        }
        let (alt, psi1) = lorentz::m_norm_alt(ctx, &wx, &wy, &wz)?;
        forms = forms.max((alt - m).norm() / m);
        forms = forms.max((psi1.powu(4) - 1.0).norm());
    }
    rep.push("normalisation_positive", pos_ok, 50, 0.5);
    rep.push("normalisation_two_forms", forms, 50, 1e-10);

    // all-spin-zero series against the theta quotient
    let mut theta = 0.0f64;
    for _ in 0..3 {
        let w = |rng: &mut SplitMix64| PrincipalWeight { m: ZERO, ..sampling::weight(rng, ctx) };
        let (wx, wy, wz) = (w(&mut rng), w(&mut rng), w(&mut rng));
        if lorentz::degenerate_triple(ctx, &wx, &wy, &wz) {
            continue;
        }
        let s0 = lorentz::EntrelaSpins { a_p: ZERO, b_p: ZERO, c_p: ZERO, a: ZERO, b: ZERO, c: ZERO };
        let v = lorentz::entrela(ctx, &s0, &wx, &wy, &wz, None, 1e-10)?;
        let th = lorentz::m_norm_theta(ctx, &wx, &wy, &wz)?;
        theta = theta.max((v - th).norm() / th.norm());
    }
    rep.push("theta_series", theta, 3, 1e-8);

    // factorization into reduced elements, including an off-diagonal side
    let mut fact = 0.0f64;
    for k in 0..10 {
        let (wx, wy, wz) = sampling::weight_triple(&mut rng, ctx)?;
        let block = ReducedBlock::new(ctx, wx, wy, wz)?;
        let m = lorentz::m_norm(ctx, &wx, &wy, &wz)?;
        let pick = |rng: &mut SplitMix64, m_w: HalfInt| -> HalfInt {
            let mut s = sampling::spin(rng, ONE);
            while !y1(s, m_w) {
                s = s + HALF;
            }
            s
        };
        let a = pick(&mut rng, wx.m);
        let b = pick(&mut rng, wy.m);
        let a_p = if k % 2 == 0 { a } else { pick(&mut rng, wx.m) };
        let b_p = pick(&mut rng, wy.m);
        let cs: Vec<HalfInt> = triangle_range(a, b).filter(|c| y1(*c, wz.m) && *c <= ONE + ONE).collect();
        let cps: Vec<HalfInt> = triangle_range(a_p, b_p).filter(|c| y1(*c, wz.m) && *c <= ONE + ONE).collect();
        if cs.is_empty() || cps.is_empty() {
            continue;
        }
        let (c, c_p) = (cs[0], cps[0]);
        let sp = lorentz::EntrelaSpins { a_p, b_p, c_p, a, b, c };
        let lhs = lorentz::entrela(ctx, &sp, &wx, &wy, &wz, None, 1e-9)?;
        let rhs = m * block.get(a, b, c)? * block.get(a_p, b_p, c_p)?.conj();
        fact = fact.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    rep.push("factorization", fact, 10, tol_fact);

    // doubling the cutoff must not move the truncated series
    let (wx, wy, wz) = sampling::weight_triple(&mut rng, ctx)?;
    let s0 = lorentz::EntrelaSpins { a_p: ZERO, b_p: ZERO, c_p: ZERO, a: ZERO, b: ZERO, c: ZERO };
    if y1(ZERO, wx.m) && y1(ZERO, wy.m) && y1(ZERO, wz.m) {
        let v1 = lorentz::entrela(ctx, &s0, &wx, &wy, &wz, Some(30), 1e-9)?;
        let v2 = lorentz::entrela(ctx, &s0, &wx, &wy, &wz, Some(60), 1e-9)?;
        rep.push("truncation_stability", (v1 - v2).norm() / (1.0 + v2.norm()), 1, 1e-9);
    }
    Ok(rep)
}

pub fn completeness(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("completeness", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let tol = 1e-4;
    let kmax = 40;

    let mut diag = 0.0f64;
    let mut off = 0.0f64;
    for _ in 0..3 {
        let wx = PrincipalWeight { m: ZERO, ..sampling::weight(&mut rng, ctx) };
        let wy = PrincipalWeight { m: ZERO, ..sampling::weight(&mut rng, ctx) };
        diag = diag.max(lorentz::completeness_check(ctx, ZERO, ZERO, ZERO, ZERO, ZERO, &wx, &wy, cfg.nodes, kmax)?);
        diag = diag.max(lorentz::completeness_check(ctx, ONE, ONE, ONE, ONE, ONE, &wx, &wy, cfg.nodes, kmax)?);
        off = off.max(lorentz::completeness_check(ctx, ONE, ZERO, ZERO, ZERO, ZERO, &wx, &wy, cfg.nodes, kmax)?);
        off = off.max(lorentz::completeness_check(ctx, ONE, ONE, ZERO, ONE, ONE, &wx, &wy, cfg.nodes, kmax)?);
    }
    rep.push("haar_orthogonality_diagonal", diag, 6, tol);
    rep.push("haar_orthogonality_off_diagonal", off, 6, tol);

    // Gamma-form of the same statement over four 6j(3)
    let mut o3 = 0.0f64;
    for _ in 0..2 {
        let wx = sampling::weight(&mut rng, ctx);
        let wy = sampling::weight(&mut rng, ctx);
        for (ox2, ox3, a, b, c) in [
            (ZERO, ZERO, ZERO, ZERO, ZERO),
            (ZERO, ZERO, ONE, HALF, HALF),
            (ONE, ZERO, ONE, ZERO, ZERO),
        ] {
            if !y1(a, wx.m) && !y1(b, wy.m) {
                continue;
            }
            let check = lorentz::o3_check(ctx, &wx, &wy, ox2, ox3, a, b, c, cfg.nodes)?;
            o3 = o3.max(check.residual);
        }
    }
    rep.push("gamma_form_orthogonality", o3, 6, tol);

    // A = 0 specialisation: continuous Askey-Wilson orthogonality
    let mut aw = 0.0f64;
    let wx = PrincipalWeight { m: ZERO, ..sampling::weight(&mut rng, ctx) };
    let wy = PrincipalWeight { m: ZERO, ..sampling::weight(&mut rng, ctx) };
    let x1 = wx.x1().value();
    let y1v = wy.x1().value();
    let y0v = wy.x0().value();
    let x0v = wx.x0().value();
    let params = qpolys::AWParams {
        alpha: x1 + y1v + 1.5,
        beta: y1v - x1 + 0.5,
        gamma: x0v - y0v + 0.5,
        delta: -y0v - x0v - 0.5,
    };
    for n in 0..=3u64 {
        for m in 0..=3u64 {
            let v = lorentz::quad_rho_result(ctx, cfg.nodes, |rho| {
                let z = Complex64::new(0.0, rho / 2.0);
                Ok(qpolys::aw_w(ctx, &params, z)?
                    * qpolys::aw_p(ctx, &params, n, z)?
                    * qpolys::aw_p(ctx, &params, m, z)?)
            })? * ctx.hbar()
                / (4.0 * std::f64::consts::PI);
            let want = if n == m { qpolys::aw_h(ctx, &params, n)? } else { Complex64::new(0.0, 0.0) };
            let scale = qpolys::aw_h(ctx, &params, n)?.norm();
            aw = aw.max((v - want).norm() / scale);
        }
    }
    rep.push("askey_wilson_specialisation", aw, 16, tol);
    Ok(rep)
}

pub fn askey(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("askey", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);

    // q-Racah package equivalence under the exponent dictionary
    let mut norm_eq = 0.0f64;
    let mut series_eq = 0.0f64;
    let mut count = 0u32;
    for t2 in 0..=6i64 {
        let t = HalfInt::from_twice(t2);
        let x1 = sampling::generic_spin(&mut rng);
        let y1s = sampling::generic_spin(&mut rng);
        let z1 = sampling::generic_spin(&mut rng);
        for n in 0..=t2.min(3) {
            for x in 0..=t2.min(3) {
                let x2 = x1.shifted(HalfInt::from_twice(2 * n - t2));
                let y2 = y1s.shifted(HalfInt::from_twice(t2 - 2 * x));
                let args = SixJArgs::new(ctx.tol(), t, x1, x2, z1, y1s, y2)?;
                let norm = sixj::norm6j(ctx, &args)?;
                let val = sixj::val6j(ctx, &args)?;
                let rp = qpolys::RacahParams {
                    alpha: Complex64::new(-2.0 * t.as_f64() - 1.0, 0.0),
                    beta: 2.0 * x1.value() + 1.0,
                    gamma: z1.value() + x1.value() - y1s.value() - t.as_f64(),
                    delta: -(z1.value() + y1s.value() + x1.value() + t.as_f64() + 2.0),
                    n_lattice: t2 as u64,
                };
                let w = qpolys::racah_w(ctx, &rp, x as u64)?;
                let h = qpolys::racah_h(ctx, &rp, n as u64)?;
                let p = qpolys::racah_p(ctx, &rp, n as u64, x as u64)?;
                norm_eq = norm_eq.max((norm * norm - w / h).norm() / (w / h).norm());
                series_eq = series_eq.max((val / norm - p).norm() / (1.0 + p.norm()));
                count += 1;
            }
        }
    }
    rep.push("q_racah_norm_dictionary", norm_eq, count, 1e-10);
    rep.push("q_racah_series_dictionary", series_eq, count, 1e-10);

    // Askey-Wilson connection: the signed identity on branch-aligned samples,
    // the branch-free modulus identity everywhere, and the check that every
    // branch mismatch is an exact sign
    let mut signed = 0.0f64;
    let mut modulus = 0.0f64;
    let mut flips_are_signs = 0.0f64;
    let mut n_signed = 0u32;
    let mut n_total = 0u32;
    let want_signed = cfg.samples.max(20).min(40);
    for _ in 0..(want_signed * 20) {
        if n_signed >= want_signed && n_total >= 10 * want_signed {
            break;
        }
        let (wx, wy, wz) = sampling::weight_triple(&mut rng, ctx)?;
        let b = sampling::spin(&mut rng, cfg.max_spin);
        if !y1(b, wy.m) {
            continue;
        }
        // X2 - X1 uniform on the weight lattice of B
        let t_shift = HalfInt::from_twice(-b.twice() + 2 * rng.below(b.twice() as u64 + 1) as i64);
        let m = match lorentz::aw_match_residual(ctx, &wx, &wy, &wz, t_shift, b) {
            Ok(v) => v,
            Err(_) => continue,
        };
        n_total += 1;
        modulus = modulus.max(m.modulus);
        if m.branch_flip() {
            if let Some(r) = m.ratio {
                flips_are_signs = flips_are_signs.max((r * r - 1.0).norm());
            }
        } else if n_signed < want_signed {
            signed = signed.max(m.signed);
            n_signed += 1;
        }
    }
    rep.push("connection_with_aligned_branches", signed, n_signed, 1e-8);
    rep.push("connection_modulus", modulus, n_total, 1e-8);
    rep.push("connection_flips_are_exact_signs", flips_are_signs, n_total, 1e-8);
    Ok(rep)
}

pub fn asymptotics(ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    let mut rep = SuiteReport::new("asymptotics", ctx, cfg);
    let mut rng = SplitMix64::new(cfg.seed);
    let k_lim = HalfInt::from_int(40);
    rep.push(
        "sixj0_to_clebsch_gordan",
        verify::sixj0::asymptot1_residual(ctx, cfg.max_spin, k_lim)?,
        0,
        1e-5,
    );
    rep.push(
        "sixj0_to_braiding",
        verify::sixj0::asymptot2_residual(ctx, cfg.max_spin.min(HalfInt::from_twice(3)), k_lim)?,
        0,
        1e-5,
    );

    let w = PrincipalWeight { m: ZERO, ..sampling::weight(&mut rng, ctx) };
    let mut diag = 0.0f64;
    for b in spins_up_to(cfg.max_spin) {
        if !y1(b, ZERO) {
            continue;
        }
        let v = lorentz::lambda_diag_limit_ratio(ctx, b, k_lim, &w);
        diag = diag.max((v - 1.0).norm());
    }
    rep.push("lambda_diagonal_limit", diag, 0, 1e-3);

    let env = lorentz::lambda_decay_envelope(ctx, ONE, ONE, ZERO, &w, 30)?;
    rep.push("lambda_decay_envelope", env, 30, 1.5);

    // large-T checks need m_Y = P >= 0 and integral m_Z at integer T
    let guard = 0.3;
    let half_period = ctx.rho_period() / 2.0;
    let rho = |rng: &mut SplitMix64| rng.uniform(-half_period + guard, half_period - guard).max(guard);
    let wx = PrincipalWeight::new(ctx, HALF, rho(&mut rng));
    let wy = PrincipalWeight::new(ctx, HALF, rho(&mut rng) + 0.7);
    let wz = PrincipalWeight::new(ctx, ONE, -rho(&mut rng));
    let t60 = HalfInt::from_int(60);
    let r = lorentz::reduced_asymptotic_ratio(ctx, &wx, &wy, &wz, t60)?;
    rep.push("reduced_element_large_t", (r - 1.0).norm(), 1, 0.02);
    let r = lorentz::sixj3_asymptotic_ratio(ctx, &wx, &wz, ONE, t60)?;
    rep.push("sixj3_large_t", (r - 1.0).norm(), 1, 0.02);

    let mut a_sum = 0.0f64;
    for m in [0u64, 2, 5, 9] {
        let alpha = Complex64::new(rng.uniform(0.2, 1.4), rng.uniform(-0.8, 0.8));
        let v = lorentz::w65_unit_sum(ctx, alpha, m)?;
        a_sum = a_sum.max((v - 1.0).norm());
    }
    rep.push("very_well_poised_unit_sum", a_sum, 4, 1e-10);
    Ok(rep)
}
