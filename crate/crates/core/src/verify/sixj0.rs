//! Identities of the discrete 6j(0) symbols: symmetries, orthogonality,
//! the Racah relation, the Biedenharn-Elliot (pentagon) identity, and the
//! large-spin limits towards Clebsch-Gordan coefficients and braiding
//! matrices.

use num_complex::Complex64;

use crate::error::QResult;
use crate::qnum::{spins_up_to, triangle_range, weight_range, y0, y1, HalfInt, QContext};
use crate::scalar::Real;
use crate::sixj;
use crate::su2q;

use super::{Ident, MaxResidual};

/// Eq. set: `{C D E; A B F} = {D C E; B A F} = {A B E; C D F} = {C B F; A D E}`.
pub fn trivsymm_residual<R: Real>(id: &Ident<R>, smax: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for e in triangle_range(a, b) {
                for c in spins_up_to(smax) {
                    for d in triangle_range(c, e).filter(|d| *d <= smax) {
                        for f in triangle_range(a, d) {
                            if !y0(b, c, f) {
                                continue;
                            }
                            let base = id.j0([c, d, e, a, b, f])?;
                            for other in [
                                id.j0([d, c, e, b, a, f])?,
                                id.j0([a, b, e, c, d, f])?,
                                id.j0([c, b, f, a, d, e])?,
                            ] {
                                max.push(&base.sub(&other));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Racah-Wigner symmetry:
/// `{B E F; A C D} = e^{i pi (C-F+E-D)} sqrt([d_F][d_D]/([d_C][d_E])) {B D C; A F E}`.
pub fn racah_wigner_residual<R: Real>(id: &Ident<R>, smax: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for c in spins_up_to(smax) {
            for f in triangle_range(a, c) {
                for e in spins_up_to(smax) {
                    for d in triangle_range(a, e).filter(|d| *d <= smax) {
                        for b in triangle_range(c, d) {
                            if !y0(b, e, f) {
                                continue;
                            }
                            let lhs = id.j0([b, e, f, a, c, d])?;
                            let rhs = id.j0([b, d, c, a, f, e])?;
                            let par = id.env().expi_pi_h(c - f + e - d);
                            let scale = id
                                .env()
                                .qdim(f)
                                .mul(&id.env().qdim(d))
                                .div(&id.env().qdim(c).mul(&id.env().qdim(e)))
                                .sqrt();
                            max.push(&lhs.sub(&rhs.mul(&par).mul_r(&scale)));
                        }
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Orthogonality: `sum_C {G H C; A B I}{G H C; A B J} = delta_{I,J} Y0(A,H,I) Y0(B,G,I)`.
pub fn ortho_residual<R: Real>(id: &Ident<R>, smax: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for g in spins_up_to(smax) {
                for h in spins_up_to(smax) {
                    for i in triangle_range(a, h) {
                        if !y0(b, g, i) {
                            continue;
                        }
                        for j in triangle_range(a, h) {
                            if !y0(b, g, j) {
                                continue;
                            }
                            let mut s = crate::scalar::Cx::<R>::zero();
                            for c in triangle_range(g, h) {
                                if !y0(a, b, c) {
                                    continue;
                                }
                                s = s.add(&id.j0([g, h, c, a, b, i])?.mul(&id.j0([g, h, c, a, b, j])?));
                            }
                            let want = if i == j { 1.0 } else { 0.0 };
                            max.push(&s.sub(&crate::scalar::Cx::from_f64(want, 0.0)));
                        }
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Racah relation, both braiding directions:
/// `sum_C {H G C; A B I}{G H C; A B J} (v_J v_I v_C / (v_G v_H v_A v_B))^{±1/2} = {B H I; A G J}`.
pub fn racah_residual<R: Real>(id: &Ident<R>, smax: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for g in spins_up_to(smax) {
                for h in spins_up_to(smax) {
                    for i in triangle_range(a, g).filter(|i| y0(b, h, *i)) {
                        for j in triangle_range(a, h).filter(|j| y0(b, g, *j)) {
                            for pm in [1i32, -1] {
                                let mut s = crate::scalar::Cx::<R>::zero();
                                for c in triangle_range(a, b) {
                                    let t1 = id.j0([h, g, c, a, b, i])?;
                                    let t2 = id.j0([g, h, c, a, b, j])?;
                                    let vr = id
                                        .ribbon_sqrt_h(j)
                                        .mul(&id.ribbon_sqrt_h(i))
                                        .mul(&id.ribbon_sqrt_h(c))
                                        .div(&id.ribbon_sqrt_h(g))
                                        .div(&id.ribbon_sqrt_h(h))
                                        .div(&id.ribbon_sqrt_h(a))
                                        .div(&id.ribbon_sqrt_h(b));
                                    let vr = if pm == 1 { vr } else { vr.inv() };
                                    s = s.add(&t1.mul(&t2).mul(&vr));
                                }
                                let rhs = id.j0([b, h, i, a, g, j])?;
                                max.push(&s.sub(&rhs));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Biedenharn-Elliot:
/// `sum_A {I G A; D F J}{E B A; D F C}{G H B; E A I} = {J H C; E F I}{H G B; D C J}`.
pub fn pentagon_residual<R: Real>(id: &Ident<R>, smax: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    let spins: Vec<HalfInt> = spins_up_to(smax).collect();
    for &d in &spins {
        for &f in &spins {
            for &e in &spins {
                for &b in &spins {
                    for &g in &spins {
                        for &h in &spins {
                            for j in triangle_range(d, f).filter(|j| y0(g, h, *j)) {
                                for i in triangle_range(e, f).filter(|i| *i <= smax + smax) {
                                    for c in triangle_range(d, h).filter(|c| y0(e, f, *c) && y0(b, g, *c)) {
                                        if !y0(j, h, c) || !y0(g, i, j) {
                                            continue;
                                        }
                                        let mut s = crate::scalar::Cx::<R>::zero();
                                        for aa in triangle_range(d, f) {
                                            s = s.add(
                                                &id.j0([i, g, aa, d, f, j])?
                                                    .mul(&id.j0([e, b, aa, d, f, c])?)
                                                    .mul(&id.j0([g, h, b, e, aa, i])?),
                                            );
                                        }
                                        let rhs =
                                            id.j0([j, h, c, e, f, i])?.mul(&id.j0([h, g, b, d, c, j])?);
                                        max.push(&s.sub(&rhs));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Large-K limit to Clebsch-Gordan coefficients:
/// `{K K+m+n C; A B K+n}(0) -> e^{i pi (A+B-C)} psi(A,B,C; m,n,m+n)`.
pub fn asymptot1_residual(ctx: &QContext, smax: HalfInt, k: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for c in triangle_range(a, b) {
                let blk = su2q::cg_block(ctx, a, b, c);
                for m in weight_range(a) {
                    for n in weight_range(b) {
                        if !y1(c, m + n) {
                            continue;
                        }
                        let v = sixj::sixj0(ctx, [k, k + m + n, c, a, b, k + n])?;
                        let par = (a + b - c).neg_one_pow()?;
                        max.push_f64(v - par * blk.get(m, n));
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// Large-K limit to the braiding matrices (both signs):
/// `{D K K+n2; A K+n1+n2 K+n1'}(0) (v-ratio)^{±1/2} -> R^{AD(±)}{}^{n1' n2'}_{n1 n2}`.
pub fn asymptot2_residual(ctx: &QContext, smax: HalfInt, k: HalfInt) -> QResult<f64> {
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for d in spins_up_to(smax) {
            let rp = su2q::rmatrix(ctx, a, d, su2q::BraidSign::Plus);
            let rm = su2q::rmatrix(ctx, a, d, su2q::BraidSign::Minus);
            for n1 in weight_range(a) {
                for n2 in weight_range(d) {
                    for n1p in weight_range(a) {
                        let n2p = n1 + n2 - n1p;
                        if !y1(d, n2p) {
                            continue;
                        }
                        let v = sixj::sixj0(ctx, [d, k, k + n2, a, k + n1 + n2, k + n1p])?;
                        // (v^{1/2}_{K+n2} v^{1/2}_{K+n1'} / (v^{1/2}_K v^{1/2}_{K+n1+n2}))^{±1},
                        // with the exponents combined so nothing overflows at large K
                        let e = |h: HalfInt| h.as_f64() * (h.as_f64() + 1.0);
                        let par = (n1p - n1).neg_one_pow()?;
                        let expo = e(k) + e(k + n1 + n2) - e(k + n2) - e(k + n1p);
                        let vr = par * (ctx.q().ln() * expo).exp();
                        max.push_f64(v * vr - rp.get(n1p, n2p, n1, n2));
                        max.push_f64(v / vr - rm.get(n1p, n2p, n1, n2));
                    }
                }
            }
        }
    }
    Ok(max.0)
}

/// One-spin-zero reductions: with the zero in the trivial direction the
/// value is exactly 1; with the zero in the coupled slot the symbol is the
/// delta pattern `(-1)^{A+B-E} sqrt([d_E]/([d_A][d_B]))`.
pub fn zero_spin_reduction_residual(ctx: &QContext, smax: HalfInt) -> QResult<f64> {
    let zero = HalfInt::from_int(0);
    let qd = |h: HalfInt| crate::qnum::qnumber(ctx, Complex64::new(h.as_f64() * 2.0 + 1.0, 0.0)).re;
    let mut max = MaxResidual::new();
    for a in spins_up_to(smax) {
        for b in spins_up_to(smax) {
            for c in triangle_range(a, b) {
                // {C 0 C; A B A} = 1
                max.push_f64(sixj::sixj0(ctx, [c, zero, c, a, b, a])? - 1.0);
                // delta pattern of {C F E; A B 0}
                for f in spins_up_to(smax) {
                    if f == a && c == b {
                        continue;
                    }
                    max.push_f64(sixj::sixj0(ctx, [c, f, a + b, a, b, zero])?);
                }
                let v = sixj::sixj0(ctx, [b, a, c, a, b, zero])?;
                let par = (a + b - c).neg_one_pow()?;
                max.push_f64(v - par * (qd(c) / (qd(a) * qd(b))).sqrt());
            }
        }
    }
    Ok(max.0)
}
