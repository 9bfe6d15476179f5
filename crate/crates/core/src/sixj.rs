//! The 6j hierarchy: one common analytic core and its specialisations
//! 6j(0) (all spins discrete), the two 6j(1) families and 6j(3).
//!
//! Displayed symbols are written here in source order `(p1..p6)` for
//!
//! ```text
//!   p4 p5 | p3
//!   p1 p2 | p6
//! ```
//!
//! and the analytic core uses the slot roles `T=p4, U=p5, V=p3, X=p1, Y=p2,
//! Z=p6`. The value is `N * 4Phi3` where
//!
//! ```text
//! N = e^{i pi (T+Y-Z)} q^{(T+Y-Z)(U-T+Y-X+1) + (V+Y-X)(T+V-U)} nu_1(2Z+1) nu_1(2V+1)
//!     * (U-T+X-Y+1)_inf omega(Y;V,X) omega(T;Y,Z) omega(T;V,U)
//!       / ((T-U+X+Y+1)_inf (2T+1)_inf (1)_inf omega(U;X,Z))
//! 4Phi3[U-V-T, U+V-T+1, Z-Y-T, -Z-Y-T-1; -2T, U-T-X-Y, U-T+X-Y+1]
//! ```
//!
//! defined on the membership set `(2T, T+U-V, T+V-U, T+Y-Z, T+Z-Y) ∈ N^5`.
//! The numerator Eulerian product `(U-T+X-Y+1)_inf` equals the third series
//! denominator pattern, so it is folded into the sum term by term as
//! `(U-T+X-Y+1+k)_inf`; this removes the removable singularities that appear
//! on the half-integer lattice (a vanishing `(b)_k` against a vanishing
//! prefactor) without ever comparing floats against zero.

use num_complex::Complex64;

use crate::error::{QError, QResult};
use crate::qnum::kernel::{Kahan, QEnv, ZERO_EPS};
use crate::qnum::{y0, y1, ComplexSpin, HalfInt, PrecisionMode, QContext};
use crate::scalar::{Cx, RBig, Real, Sf64};

/// Role-labelled arguments of the analytic 6j core, with the exact
/// membership naturals.
#[derive(Clone, Copy, Debug)]
pub struct SixJArgs {
    pub t: HalfInt,
    pub u: ComplexSpin,
    pub v: ComplexSpin,
    pub x: ComplexSpin,
    pub y: ComplexSpin,
    pub z: ComplexSpin,
    /// T+V-U and T+Y-Z: the two terminating directions of the series.
    n_vu: i64,
    n_yz: i64,
}

impl SixJArgs {
    /// Validate membership: `(2T, T+U-V, T+V-U, T+Y-Z, T+Z-Y)` all in N.
    pub fn new(
        tol: f64,
        t: HalfInt,
        u: ComplexSpin,
        v: ComplexSpin,
        x: ComplexSpin,
        y: ComplexSpin,
        z: ComplexSpin,
    ) -> QResult<Self> {
        if t.is_negative() {
            return Err(QError::Domain(format!("2T = {} not in N", t.twice())));
        }
        let d_uv = u.halfint_diff(&v, tol)?;
        let d_yz = y.halfint_diff(&z, tol)?;
        let n_uv = (t + d_uv).as_int()?;
        let n_vu = (t - d_uv).as_int()?;
        let n_yz = (t + d_yz).as_int()?;
        let n_zy = (t - d_yz).as_int()?;
        if n_uv < 0 || n_vu < 0 || n_yz < 0 || n_zy < 0 {
            return Err(QError::Domain(format!(
                "not in the membership set: (T+U-V, T+V-U, T+Y-Z, T+Z-Y) = ({n_uv}, {n_vu}, {n_yz}, {n_zy})"
            )));
        }
        Ok(SixJArgs { t, u, v, x, y, z, n_vu, n_yz })
    }

    /// Arguments from the display order `(p1..p6)`; `p4` must be an exact
    /// half-integer.
    pub fn from_display(tol: f64, p: [ComplexSpin; 6]) -> QResult<Self> {
        let t = HalfInt::try_from_f64(p[3].value().re, tol)?;
        if p[3].value().im.abs() > tol {
            return Err(QError::Domain("slot p4 must be a half-integer spin".into()));
        }
        SixJArgs::new(tol, t, p[4], p[2], p[0], p[1], p[5])
    }
}

/// Generic evaluator over one scalar backend.
pub struct SixEval<R: Real> {
    pub env: QEnv<R>,
    pub tol: f64,
}

impl<R: Real> SixEval<R> {
    pub fn new(ctx: &QContext) -> Self {
        SixEval { env: ctx.env::<R>(), tol: ctx.tol() }
    }

    fn c(&self, s: &ComplexSpin) -> Cx<R> {
        let v = s.value();
        Cx::from_f64(v.re, v.im)
    }

    /// The normalisation prefactor without the folded Eulerian product
    /// `(U-T+X-Y+1)_inf`, which belongs to the series.
    fn norm_unfolded(&self, a: &SixJArgs) -> QResult<Cx<R>> {
        let env = &self.env;
        let one = Cx::<R>::one();
        let t = env.cx(a.t);
        let (u, v) = (self.c(&a.u), self.c(&a.v));
        let (x, y, z) = (self.c(&a.x), self.c(&a.y), self.c(&a.z));

        // e^{i pi (T+Y-Z)} = (-1)^{n_yz}
        let phase = if a.n_yz % 2 == 0 { one.clone() } else { one.neg() };
        // q^{(T+Y-Z)(U-T+Y-X+1) + (V+Y-X)(T+V-U)}
        let e1 = u.sub(&t).add(&y).sub(&x).add(&one).mul_r(&R::from_f64(a.n_yz as f64));
        let e2 = v.add(&y).sub(&x).mul_r(&R::from_f64(a.n_vu as f64));
        let qp = env.qpow(&e1.add(&e2));

        let nu1 = env.nu1(&z.add(&z).add(&one))?.mul(&env.nu1(&v.add(&v).add(&one))?);
        let om_num = env
            .omega(&y, &v, &x)?
            .mul(&env.omega(&t, &y, &z)?)
            .mul(&env.omega(&t, &v, &u)?);
        let om_den = env.omega(&u, &x, &z)?;
        let den = env.poch_inf(&t.sub(&u).add(&x).add(&y).add(&one))?;
        let den = den.mul(&env.poch_inf(&t.mul_r(&R::from_f64(2.0)).add(&one))?);
        let den = den.mul(&env.poch_inf(&one)?);
        Ok(phase.mul(&qp).mul(&nu1).mul(&om_num).div(&den).div(&om_den))
    }

    /// The full normalisation `N` of the symbol.
    pub fn norm6j(&self, a: &SixJArgs) -> QResult<Cx<R>> {
        let env = &self.env;
        let one = Cx::<R>::one();
        let (u, t) = (self.c(&a.u), env.cx(a.t));
        let (x, y) = (self.c(&a.x), self.c(&a.y));
        let pref = env.poch_inf(&u.sub(&t).add(&x).sub(&y).add(&one))?;
        Ok(self.norm_unfolded(a)?.mul(&pref))
    }

    /// The double-brace value: `N * 4Phi3`, with the Eulerian numerator
    /// folded into the terminating series.
    pub fn val6j(&self, a: &SixJArgs) -> QResult<Cx<R>> {
        let env = &self.env;
        let one = Cx::<R>::one();
        let n = a.n_vu.min(a.n_yz);
        let t = env.cx(a.t);
        let (u, v) = (self.c(&a.u), self.c(&a.v));
        let (x, y, z) = (self.c(&a.x), self.c(&a.y), self.c(&a.z));

        // series numerator parameters
        let a0 = u.sub(&v).sub(&t); // = -n_vu
        let a1 = u.add(&v).sub(&t).add(&one);
        let a2 = z.sub(&y).sub(&t); // = -n_yz
        let a3 = z.neg().sub(&y).sub(&t).sub(&one);
        // denominators: (1)_k, (-2T)_k, (U-T-X-Y)_k, and the folded third one
        let b1 = t.mul_r(&R::from_f64(-2.0));
        let b2 = u.sub(&t).sub(&x).sub(&y);
        let fold = u.sub(&t).add(&x).sub(&y).add(&one); // (U-T+X-Y+1)

        // F_k = (fold + k)_inf, built downward so zero factors only multiply
        let mut folded = vec![Cx::<R>::zero(); (n + 1) as usize];
        let top = env.poch_inf(&fold.add(&Cx::from_f64(n as f64, 0.0)))?;
        folded[n as usize] = top;
        for k in (0..n).rev() {
            let f = one.sub(&env.qpow(&fold.add(&Cx::from_f64(k as f64, 0.0)).mul_r(&R::from_f64(2.0))));
            folded[k as usize] = folded[(k + 1) as usize].mul(&f);
        }

        let zero2 = R::from_f64(ZERO_EPS * ZERO_EPS);
        let q2k = env.qpow(&Cx::from_f64(2.0, 0.0)); // the series argument is q^2
        let mut bracket = one.clone();
        let mut acc = Kahan::<R>::new();
        acc.add(&bracket.mul(&folded[0]));
        let mut w_a: Vec<Cx<R>> = [&a0, &a1, &a2, &a3].iter().map(|p| env.qpow(&p.add(p))).collect();
        let mut w_b: Vec<Cx<R>> = [&b1, &b2].iter().map(|p| env.qpow(&p.add(p))).collect();
        let mut w_one = env.qpow(&Cx::from_f64(2.0, 0.0));
        for k in 0..n {
            let mut ratio = q2k.clone();
            for w in w_a.iter_mut() {
                ratio = ratio.mul(&one.sub(w));
                *w = w.mul_r(&env.q2);
            }
            let f1 = one.sub(&w_one);
            w_one = w_one.mul_r(&env.q2);
            ratio = ratio.div(&f1);
            for w in w_b.iter_mut() {
                let f = one.sub(w);
                if f.abs2().lt(&zero2) {
                    return Err(QError::Pole(format!("6j series denominator vanishes at k = {}", k + 1)));
                }
                ratio = ratio.div(&f);
                *w = w.mul_r(&env.q2);
            }
            bracket = bracket.mul(&ratio);
            acc.add(&bracket.mul(&folded[(k + 1) as usize]));
        }
        Ok(self.norm_unfolded(a)?.mul(&acc.value()))
    }

    /// 6j(0): value times the four triangle rules.
    pub fn sixj0(&self, p: [HalfInt; 6]) -> QResult<Cx<R>> {
        let (x, y, v, t, u, z) = (p[0], p[1], p[2], p[3], p[4], p[5]);
        if !(y0(t, u, v) && y0(t, y, z) && y0(x, u, z) && y0(x, y, v)) {
            return Ok(Cx::zero());
        }
        let s = |h: HalfInt| ComplexSpin::from_halfint(h);
        let args = SixJArgs::new(self.tol, t, s(u), s(v), s(x), s(y), s(z))?;
        self.val6j(&args)
    }

    /// 6j(1), first family: display `{x1 x2 C; A B x3}`.
    pub fn sixj1a(
        &self,
        x1: ComplexSpin,
        x2: ComplexSpin,
        c: HalfInt,
        a: HalfInt,
        b: HalfInt,
        x3: ComplexSpin,
    ) -> QResult<Cx<R>> {
        let d23 = x2.halfint_diff(&x3, self.tol)?;
        let d13 = x1.halfint_diff(&x3, self.tol)?;
        let d12 = x1.halfint_diff(&x2, self.tol)?;
        if !(y1(a, d23) && y1(b, d13) && y1(c, d12) && y0(a, b, c)) {
            return Ok(Cx::zero());
        }
        let args = SixJArgs::new(self.tol, a, ComplexSpin::from_halfint(b), ComplexSpin::from_halfint(c), x1, x2, x3)?;
        self.val6j(&args)
    }

    /// 6j(1), second family: display `{B x1 x3; A x2 x4}`.
    pub fn sixj1b(
        &self,
        b: HalfInt,
        x1: ComplexSpin,
        x3: ComplexSpin,
        a: HalfInt,
        x2: ComplexSpin,
        x4: ComplexSpin,
    ) -> QResult<Cx<R>> {
        let d23 = x2.halfint_diff(&x3, self.tol)?;
        let d14 = x1.halfint_diff(&x4, self.tol)?;
        let d13 = x1.halfint_diff(&x3, self.tol)?;
        let d24 = x2.halfint_diff(&x4, self.tol)?;
        if !(y1(a, d23) && y1(a, d14) && y1(b, d13) && y1(b, d24)) {
            return Ok(Cx::zero());
        }
        let args = SixJArgs::new(self.tol, a, x2, x3, ComplexSpin::from_halfint(b), x1, x4)?;
        self.val6j(&args)
    }

    /// 6j(3): display `{z1 y1 x2; A x1 y2}`.
    pub fn sixj3(
        &self,
        z1: ComplexSpin,
        y1c: ComplexSpin,
        x2: ComplexSpin,
        a: HalfInt,
        x1: ComplexSpin,
        y2: ComplexSpin,
    ) -> QResult<Cx<R>> {
        let dx = x1.halfint_diff(&x2, self.tol)?;
        let dy = y1c.halfint_diff(&y2, self.tol)?;
        if !(y1(a, dx) && y1(a, dy)) {
            return Ok(Cx::zero());
        }
        let args = SixJArgs::new(self.tol, a, x1, x2, z1, y1c, y2)?;
        self.val6j(&args)
    }
}

macro_rules! six_dispatch {
    ($ctx:expr, $ev:ident, $body:expr) => {
        match $ctx.precision() {
            PrecisionMode::Standard => {
                let $ev = SixEval::<Sf64>::new($ctx);
                $body
            }
            PrecisionMode::Extended => {
                let $ev = SixEval::<RBig>::new($ctx);
                $body
            }
        }
    };
}

/// Normalisation prefactor of Definition 1.
pub fn norm6j(ctx: &QContext, args: &SixJArgs) -> QResult<Complex64> {
    six_dispatch!(ctx, ev, Ok(ev.norm6j(args)?.to_c64()))
}

/// Double-brace value of Definition 1.
pub fn val6j(ctx: &QContext, args: &SixJArgs) -> QResult<Complex64> {
    six_dispatch!(ctx, ev, Ok(ev.val6j(args)?.to_c64()))
}

/// 6j(0) with all six spins discrete, in display order.
pub fn sixj0(ctx: &QContext, p: [HalfInt; 6]) -> QResult<f64> {
    six_dispatch!(ctx, ev, Ok(ev.sixj0(p)?.to_c64().re))
}

/// 6j(1) first family `{x1 x2 C; A B x3}`.
pub fn sixj1_a(
    ctx: &QContext,
    x1: ComplexSpin,
    x2: ComplexSpin,
    c: HalfInt,
    a: HalfInt,
    b: HalfInt,
    x3: ComplexSpin,
) -> QResult<Complex64> {
    six_dispatch!(ctx, ev, Ok(ev.sixj1a(x1, x2, c, a, b, x3)?.to_c64()))
}

/// 6j(1) second family `{B x1 x3; A x2 x4}`.
pub fn sixj1_b(
    ctx: &QContext,
    b: HalfInt,
    x1: ComplexSpin,
    x3: ComplexSpin,
    a: HalfInt,
    x2: ComplexSpin,
    x4: ComplexSpin,
) -> QResult<Complex64> {
    six_dispatch!(ctx, ev, Ok(ev.sixj1b(b, x1, x3, a, x2, x4)?.to_c64()))
}

/// 6j(3) `{z1 y1 x2; A x1 y2}`.
pub fn sixj3(
    ctx: &QContext,
    z1: ComplexSpin,
    y1: ComplexSpin,
    x2: ComplexSpin,
    a: HalfInt,
    x1: ComplexSpin,
    y2: ComplexSpin,
) -> QResult<Complex64> {
    six_dispatch!(ctx, ev, Ok(ev.sixj3(z1, y1, x2, a, x1, y2)?.to_c64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::{nu_n, spins_up_to, triangle_range, weight_range, HALF, ZERO};
    use crate::su2q::cg_block;

    fn ctx() -> QContext {
        QContext::new(0.6).unwrap()
    }

    fn cs(re: f64, im: f64) -> ComplexSpin {
        ComplexSpin::new(Complex64::new(re, im))
    }

    #[test]
    fn zero_spin_value_is_one() {
        // {{A B C; 0 C B}} = 1 for arbitrary complex A, B, C
        let c = ctx();
        for k in 0..25 {
            let a = cs(0.31 * k as f64 - 1.2, 0.7 - 0.04 * k as f64);
            let b = cs(-0.8 + 0.17 * k as f64, 0.33 + 0.02 * k as f64);
            let cc = cs(0.45 - 0.09 * k as f64, -0.51 + 0.05 * k as f64);
            let args = SixJArgs::new(c.tol(), ZERO, cc, cc, a, b, b).unwrap();
            let v = val6j(&c, &args).unwrap();
            assert!((v - 1.0).norm() < 1e-11, "k={k}: {v}");
        }
    }

    #[test]
    fn half_spin_closed_forms() {
        let c = ctx();
        let n1 = |x: Complex64| nu_n(&c, x, 1).unwrap();
        for k in 0..20 {
            let a = Complex64::new(0.23 * k as f64 - 1.1, 0.4 + 0.03 * k as f64);
            let b = Complex64::new(-0.4 + 0.11 * k as f64, -0.2 - 0.04 * k as f64);
            let g = Complex64::new(0.8 - 0.06 * k as f64, 0.6 + 0.02 * k as f64);
            let (sa, sb, sg) = (ComplexSpin::new(a), ComplexSpin::new(b), ComplexSpin::new(g));
            let q = c.q();

            // {{A B C; 1/2 C+1/2 B+1/2}}
            let args = SixJArgs::new(c.tol(), HALF, sg.shifted(HALF), sg, sa, sb, sb.shifted(HALF)).unwrap();
            let got = val6j(&c, &args).unwrap();
            let want = n1(b + g - a + 1.0) * n1(a + b + g + 2.0) / (n1(2.0 * g + 2.0) * n1(2.0 * b + 1.0));
            assert!((got - want).norm() / want.norm() < 1e-11, "case 1, k={k}");

            // {{A B C; 1/2 C+1/2 B-1/2}} = -nu1(A+B-C) nu1(A+C-B+1)/(nu1(2C+2) nu1(2B+1)) q^{C+B-A+1}
            let args = SixJArgs::new(c.tol(), HALF, sg.shifted(HALF), sg, sa, sb, sb.shifted(-HALF)).unwrap();
            let got = val6j(&c, &args).unwrap();
            let want = -n1(a + b - g) * n1(a + g - b + 1.0) / (n1(2.0 * g + 2.0) * n1(2.0 * b + 1.0))
                * (Complex64::new(q.ln(), 0.0) * (g + b - a + 1.0)).exp();
            assert!((got - want).norm() / want.norm() < 1e-11, "case 2, k={k}");

            // {{A B C; 1/2 C-1/2 B+1/2}} = nu1(A+C-B) nu1(A+B-C+1)/(nu1(2C) nu1(2B+1)) q^{C+B-A}
            let args = SixJArgs::new(c.tol(), HALF, sg.shifted(-HALF), sg, sa, sb, sb.shifted(HALF)).unwrap();
            let got = val6j(&c, &args).unwrap();
            let want = n1(a + g - b) * n1(a + b - g + 1.0) / (n1(2.0 * g) * n1(2.0 * b + 1.0))
                * (Complex64::new(q.ln(), 0.0) * (g + b - a)).exp();
            assert!((got - want).norm() / want.norm() < 1e-11, "case 3, k={k}");

            // {{A B C; 1/2 C-1/2 B-1/2}} = nu1(A+B+C+1) nu1(C+B-A)/(nu1(2C) nu1(2B+1))
            let args = SixJArgs::new(c.tol(), HALF, sg.shifted(-HALF), sg, sa, sb, sb.shifted(-HALF)).unwrap();
            let got = val6j(&c, &args).unwrap();
            let want = n1(a + b + g + 1.0) * n1(g + b - a) / (n1(2.0 * g) * n1(2.0 * b + 1.0));
            assert!((got - want).norm() / want.norm() < 1e-11, "case 4, k={k}");
        }
    }

    #[test]
    fn norm_squared_is_rational() {
        // N^2 computed with nu replaced by Pochhammer ratios must agree exactly
        let c = ctx();
        let p = |x: Complex64| crate::qnum::poch_inf(&c, x).unwrap();
        let cap_omega = |a: Complex64, b: Complex64, g: Complex64| {
            p(a + b + g + 2.0) * p(a + b - g + 1.0) * p(a - b + g + 1.0) / p(b + g - a + 1.0)
        };
        for k in 0..15 {
            let t = HalfInt::from_twice(k % 5);
            let u = cs(0.37 + 0.11 * k as f64, 0.41);
            let v = u.shifted(HalfInt::from_twice((k % 3) - t.twice()).abs().min(t + t) - t); // keep T+V-U, T+U-V in N
            let x = cs(-0.61 + 0.07 * k as f64, -0.29);
            let y = cs(0.83 - 0.05 * k as f64, 0.57);
            let z = y.shifted(HalfInt::from_twice(t.twice() - 2 * ((k as i64) % (t.twice() + 1))));
            let args = match SixJArgs::new(c.tol(), t, u, v, x, y, z) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let n = norm6j(&c, &args).unwrap();
            let (tv, uv, vv) = (Complex64::new(t.as_f64(), 0.0), u.value(), v.value());
            let (xv, yv, zv) = (x.value(), y.value(), z.value());
            let n_yz = (tv + yv - zv).re.round();
            let n_vu = (tv + vv - uv).re.round();
            let lnq = Complex64::new(c.q().ln(), 0.0);
            let qp = (lnq * (n_yz * (uv - tv + yv - xv + 1.0) + (vv + yv - xv) * n_vu)).exp();
            let rat = qp.powu(2)
                * (1.0 - (lnq * 2.0 * (2.0 * zv + 1.0)).exp())
                * (1.0 - (lnq * 2.0 * (2.0 * vv + 1.0)).exp())
                * p(uv - tv + xv - yv + 1.0).powu(2)
                * cap_omega(yv, vv, xv)
                * cap_omega(tv, yv, zv)
                * cap_omega(tv, vv, uv)
                / (p(tv - uv + xv + yv + 1.0).powu(2)
                    * p(Complex64::new(2.0 * t.as_f64() + 1.0, 0.0)).powu(2)
                    * p(Complex64::new(1.0, 0.0)).powu(2)
                    * cap_omega(uv, xv, zv));
            assert!((n * n - rat).norm() / rat.norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn sixj0_matches_cg_contraction() {
        // {C F E; A B D}(0) delta_{F,H} Y1(H,p)
        //   = sum psi(A,B,E) psi(E,C,H) phi(B,C,D) phi(A,D,F)
        let cx = ctx();
        let max = HalfInt::from_int(2);
        for a in spins_up_to(max) {
            for b in spins_up_to(max) {
                for cc in spins_up_to(max) {
                    for e in triangle_range(a, b) {
                        for d in triangle_range(b, cc) {
                            for f in triangle_range(a, d) {
                                if !y0(e, cc, f) {
                                    continue;
                                }
                                let v6 = sixj0(&cx, [cc, f, e, a, b, d]).unwrap();
                                let babe = cg_block(&cx, a, b, e);
                                let bech = cg_block(&cx, e, cc, f);
                                let bbcd = cg_block(&cx, b, cc, d);
                                let badf = cg_block(&cx, a, d, f);
                                for p in weight_range(f) {
                                    let mut s = 0.0;
                                    for i in weight_range(a) {
                                        for j in weight_range(b) {
                                            let m = i + j;
                                            if !y1(e, m) {
                                                continue;
                                            }
                                            let k = p - m;
                                            if !y1(cc, k) {
                                                continue;
                                            }
                                            let l = j + k;
                                            if !y1(d, l) {
                                                continue;
                                            }
                                            s += babe.get(i, j) * bech.get(m, k) * bbcd.get(j, k) * badf.get(i, l);
                                        }
                                    }
                                    assert!(
                                        (s - v6).abs() < 1e-11,
                                        "6j0({cc},{f},{e};{a},{b},{d}) p={p}: contraction {s} vs {v6}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_lattice_points_are_finite() {
        // the folded series must survive points where the unfolded 4Phi3 has a
        // vanishing denominator against a vanishing prefactor
        let cx = ctx();
        let one = HalfInt::from_int(1);
        let v = sixj0(&cx, [ZERO, one, one, one, ZERO, ZERO]).unwrap();
        assert!(v.is_finite() && v.abs() > 1e-6);
        // spot check against the CG contraction covered in the broader sweep
        let w = sixj0(&cx, [one, ZERO, one, ZERO, one, ZERO]).unwrap();
        assert!(w.is_finite());
    }

    #[test]
    fn extended_matches_standard_on_6j() {
        let cx = ctx();
        let ex = ctx().with_precision(PrecisionMode::Extended);
        let x1 = cs(0.137, 0.293);
        let x2 = x1.shifted(HALF);
        let x3 = x1.shifted(-HALF);
        let a = HalfInt::from_twice(3);
        let b = HalfInt::from_int(1);
        let c = HalfInt::from_twice(3);
        let s = sixj1_a(&cx, x1, x2, c, a, b, x3).unwrap();
        let e = sixj1_a(&ex, x1, x2, c, a, b, x3).unwrap();
        assert!((s - e).norm() < 1e-12, "{s} vs {e}");
    }
}
