//! Reduced elements of the intertwiners `V(X) ⊗ V(Y) -> V(Z)` and the linear
//! systems that characterise them.
//!
//! The closed form is a finite sum of 6j(3) * 6j(1) * 6j(3):
//!
//! ```text
//! [R P T] = sum_{X2} {Y0 X0 Z0; T Z1 X2}(3) {X1 X0 R; T P X2}(1) {Z1 X2 Y0; P Y1 X1}(3)
//!           * v_P^{1/4} v_T^{1/4} v_{X0}^{1/4} v_{X1}^{1/4} [d_P]^{1/2}
//!             / (v_R^{1/4} v_{X2}^{1/2} e^{i pi P})
//! ```
//!
//! defined away from the degenerate rho lines.

use std::cell::RefCell;
use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::QResult;
use crate::qnum::{triangle_range, weight_range, y0, y1, ComplexSpin, HalfInt, QContext};
use crate::scalar::{Cx, Real, Sf64};
use crate::sixj::SixEval;

use super::lambda::LambdaTable;
use super::{require_regular, PrincipalWeight};

/// Generic-backend reduced element; `x/y/z` are the three weights as ordered
/// label spins `(X0, X1)` etc.
#[allow(clippy::too_many_arguments)]
pub fn reduced_element_kernel<R: Real>(
    ev: &SixEval<R>,
    x0: ComplexSpin,
    x1: ComplexSpin,
    y0c: ComplexSpin,
    y1c: ComplexSpin,
    z0: ComplexSpin,
    z1: ComplexSpin,
    r: HalfInt,
    p: HalfInt,
    t: HalfInt,
) -> QResult<Cx<R>> {
    let tol = ev.tol;
    let m_x = x0.halfint_diff(&x1, tol)?;
    if !y1(r, m_x) || !y0(t, p, r) {
        return Ok(Cx::zero());
    }
    let env = &ev.env;
    let mut sum = Cx::<R>::zero();
    for sh in weight_range(t) {
        let x2 = x0.shifted(-sh);
        if !y1(p, x1.halfint_diff(&x2, tol)?) {
            continue;
        }
        let j3a = ev.sixj3(y0c, x0, z0, t, z1, x2)?;
        if j3a.is_zero() {
            continue;
        }
        let j1 = ev.sixj1a(x1, x0, r, t, p, x2)?;
        if j1.is_zero() {
            continue;
        }
        let j3b = ev.sixj3(z1, x2, y0c, p, y1c, x1)?;
        let x2v = x2.value();
        let w = env
            .ribbon_root4_h(p)
            .mul(&env.ribbon_root4_h(t))
            .mul(&env.ribbon_root(&Cx::from_f64(x0.value().re, x0.value().im), 4))
            .mul(&env.ribbon_root(&Cx::from_f64(x1.value().re, x1.value().im), 4))
            .div(&env.ribbon_root4_h(r))
            .div(&env.ribbon_root(&Cx::from_f64(x2v.re, x2v.im), 2));
        sum = sum.add(&j3a.mul(&j1).mul(&j3b).mul(&w));
    }
    let dp = env.qdim(p).sqrt();
    let ph = env.expi_pi_h(-p);
    Ok(sum.mul_r(&dp).mul(&ph))
}

/// Reduced element of the intertwiner `V(X) ⊗ V(Y) -> V(Z)` at spins (R, P, T).
pub fn reduced_element(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    wz: &PrincipalWeight,
    r: HalfInt,
    p: HalfInt,
    t: HalfInt,
) -> QResult<Complex64> {
    require_regular(ctx, wx, wy, wz)?;
    if !y1(p, wy.m) || !y1(t, wz.m) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ev = SixEval::<Sf64>::new(ctx);
    Ok(reduced_element_kernel(&ev, wx.x0(), wx.x1(), wy.x0(), wy.x1(), wz.x0(), wz.x1(), r, p, t)?.to_c64())
}

/// Memoising table of reduced elements at fixed weights.
pub struct ReducedBlock<'a> {
    ctx: &'a QContext,
    wx: PrincipalWeight,
    wy: PrincipalWeight,
    wz: PrincipalWeight,
    map: RefCell<HashMap<[i64; 3], Complex64>>,
}

impl<'a> ReducedBlock<'a> {
    pub fn new(ctx: &'a QContext, wx: PrincipalWeight, wy: PrincipalWeight, wz: PrincipalWeight) -> QResult<Self> {
        require_regular(ctx, &wx, &wy, &wz)?;
        Ok(ReducedBlock { ctx, wx, wy, wz, map: RefCell::new(HashMap::new()) })
    }

    pub fn get(&self, r: HalfInt, p: HalfInt, t: HalfInt) -> QResult<Complex64> {
        let key = [r.twice(), p.twice(), t.twice()];
        if let Some(v) = self.map.borrow().get(&key) {
            return Ok(*v);
        }
        let v = reduced_element(self.ctx, &self.wx, &self.wy, &self.wz, r, p, t)?;
        self.map.borrow_mut().insert(key, v);
        Ok(v)
    }

    /// Theorem-1 support statement: for each admissible C there is a non-zero
    /// entry with A, B below `C + bound`.
    pub fn nonvanishing_at(&self, c: HalfInt, bound: HalfInt) -> QResult<f64> {
        let mut best = 0.0f64;
        for a in crate::qnum::spins_up_to(c + bound) {
            if !y1(a, self.wx.m) {
                continue;
            }
            for b in crate::qnum::spins_up_to(c + bound) {
                if !y1(b, self.wy.m) || !y0(a, b, c) {
                    continue;
                }
                best = best.max(self.get(a, b, c)?.norm());
            }
        }
        Ok(best)
    }
}

/// Residual of the defining intertwiner equation at one `(U, W, T, A, B, C)`:
///
/// ```text
/// sum_{QRSP} [R P T] L^{US}_{RA}(X) L^{UQ}_{PB}(Y)
///            {U W T; R P Q}{R W Q; B U S}{B W S; U A C} = [A B C] L^{UW}_{TC}(Z)
/// ```
#[allow(clippy::too_many_arguments)]
pub fn intertwiner_residual(
    ctx: &QContext,
    block: &ReducedBlock<'_>,
    lx: &LambdaTable<'_>,
    ly: &LambdaTable<'_>,
    lz: &LambdaTable<'_>,
    u: HalfInt,
    w: HalfInt,
    t: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> QResult<f64> {
    let ev = SixEval::<Sf64>::new(ctx);
    let j0 = |p: [HalfInt; 6]| -> QResult<f64> { Ok(ev.sixj0(p)?.to_c64().re) };
    let mut lhs = Complex64::new(0.0, 0.0);
    for s in triangle_range(u, a) {
        for r in triangle_range(u, s) {
            let lam_x = lx.get(u, s, r, a)?;
            if lam_x.norm() == 0.0 {
                continue;
            }
            for q in triangle_range(u, b) {
                for p in triangle_range(u, q) {
                    if !y0(r, p, t) {
                        continue;
                    }
                    let lam_y = ly.get(u, q, p, b)?;
                    if lam_y.norm() == 0.0 {
                        continue;
                    }
                    let red = block.get(r, p, t)?;
                    if red.norm() == 0.0 {
                        continue;
                    }
                    lhs += red
                        * lam_x
                        * lam_y
                        * j0([u, w, t, r, p, q])?
                        * j0([r, w, q, b, u, s])?
                        * j0([b, w, s, u, a, c])?;
                }
            }
        }
    }
    let rhs = block.get(a, b, c)? * lz.get(u, w, t, c)?;
    Ok((lhs - rhs).norm())
}

/// Residual of the spin-1/2 subsystem `S(sigma, tau)` at one `(A, B, C)`.
#[allow(clippy::too_many_arguments)]
pub fn intertwiner_subsystem_residual(
    ctx: &QContext,
    block: &ReducedBlock<'_>,
    lx: &LambdaTable<'_>,
    ly: &LambdaTable<'_>,
    lz: &LambdaTable<'_>,
    sigma: HalfInt,
    tau: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> QResult<f64> {
    let ev = SixEval::<Sf64>::new(ctx);
    let j0 = |p: [HalfInt; 6]| -> QResult<f64> { Ok(ev.sixj0(p)?.to_c64().re) };
    let h = crate::qnum::HALF;
    let half_shifts = [h, -h];
    let mut lhs = Complex64::new(0.0, 0.0);
    for nu in half_shifts {
        for rho in half_shifts {
            for eps in half_shifts {
                for mu in half_shifts {
                    let (an, ar) = (a + nu, a + nu + rho);
                    let (be, bm) = (b + eps, b + eps + mu);
                    let (cs, ct) = (c + sigma, c + sigma + tau);
                    if ar.is_negative() || bm.is_negative() || an.is_negative() || be.is_negative() {
                        continue;
                    }
                    let red = block.get(ar, bm, ct)?;
                    if red.norm() == 0.0 {
                        continue;
                    }
                    lhs += red
                        * lx.get(h, an, ar, a)?
                        * ly.get(h, be, bm, b)?
                        * j0([ar, cs, be, h, bm, ct])?
                        * j0([cs, ar, be, h, b, an])?
                        * j0([b, cs, an, h, a, c])?;
                }
            }
        }
    }
    let cs = c + sigma;
    let ct = c + sigma + tau;
    if cs.is_negative() || ct.is_negative() {
        return Ok(lhs.norm());
    }
    let rhs = block.get(a, b, c)? * lz.get(h, cs, ct, c)?;
    Ok((lhs - rhs).norm())
}
