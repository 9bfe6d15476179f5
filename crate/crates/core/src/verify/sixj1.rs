//! The identity set of the 6j(1) symbols (one continuous direction):
//! symmetries, three orthogonality relations, the Racah relation, three
//! pentagon variants, the hexagon, and the underline symmetry.
//!
//! Continuous spins are passed as one base spin plus exact half-integer
//! offsets; every sum below is finite because of the selection rules.

use crate::error::QResult;
use crate::qnum::{triangle_range, y0, y1, ComplexSpin, HalfInt};
use crate::scalar::{Cx, Real};

use super::{shifts_of, Ident, MaxResidual};

/// First-family symmetries (symcont, line 1).
pub fn symcont_a_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3) = (x1.shifted(o2), x1.shifted(o3));
    let base = id.ev.sixj1a(x1, x2, c, a, b, x3)?;
    let scale = base.abs().to_f64();
    let mut max = MaxResidual::new();
    max.push(&base.sub(&id.ev.sixj1a(x2, x1, c, b, a, x3)?));
    // (e^{i pi} q)^{X1-X3+A-C} nu1(d_C) nu1(d_X3) / (nu1(d_A) nu1(d_X1)) {X3 X2 A; C B X1}
    let lam = -o3 + a - c;
    let scale_f = id
        .eipi_q_pow(lam)
        .mul(&id.nu1_dim(&ComplexSpin::from_halfint(c))?)
        .mul(&id.nu1_dim(&x3)?)
        .div(&id.nu1_dim(&ComplexSpin::from_halfint(a))?)
        .div(&id.nu1_dim(&x1)?);
    let rhs = scale_f.mul(&id.ev.sixj1a(x3, x2, a, c, b, x1)?);
    max.push(&base.sub(&rhs));
    Ok((max.0, scale))
}

/// Second-family symmetries (symcont, line 2).
pub fn symcont_b_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4));
    let base = id.ev.sixj1b(b, x1, x3, a, x2, x4)?;
    let scale = base.abs().to_f64();
    let mut max = MaxResidual::new();
    max.push(&base.sub(&id.ev.sixj1b(b, x2, x4, a, x1, x3)?));
    max.push(&base.sub(&id.ev.sixj1b(a, x2, x3, b, x1, x4)?));
    let lam = (-o3) + (o2 - o4);
    let scale_f = id
        .eipi_q_pow(lam)
        .mul(&id.nu1_dim(&x4)?)
        .mul(&id.nu1_dim(&x3)?)
        .div(&id.nu1_dim(&x2)?)
        .div(&id.nu1_dim(&x1)?);
    max.push(&base.sub(&scale_f.mul(&id.ev.sixj1b(b, x4, x2, a, x3, x1)?)));
    Ok((max.0, scale))
}

/// (ortho1cont): `sum_C {X1 X2 C; A B X3}{X1 X2 C; A B X4} = delta_{X3,X4} Y1 Y1`.
pub fn ortho1_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4));
    let mut s = Cx::<R>::zero();
    let mut scale = 0.0f64;
    for c in triangle_range(a, b) {
        let t = id.ev.sixj1a(x1, x2, c, a, b, x3)?.mul(&id.ev.sixj1a(x1, x2, c, a, b, x4)?);
        scale = scale.max(t.abs().to_f64());
        s = s.add(&t);
    }
    let want = if o3 == o4 && y1(a, o2 - o3) && y1(b, -o3) { 1.0 } else { 0.0 };
    Ok((s.sub(&Cx::from_f64(want, 0.0)).abs().to_f64(), scale.max(want)))
}

/// (ortho2cont): `sum_X3 {X1 X2 C; A B X3}{X1 X2 D; A B X3} = delta_{C,D} Y0 Y1`.
pub fn ortho2_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
) -> QResult<(f64, f64)> {
    let x2 = x1.shifted(o2);
    let mut s = Cx::<R>::zero();
    let mut scale = 0.0f64;
    for m in shifts_of(a) {
        let x3 = x2.shifted(-m);
        let t = id.ev.sixj1a(x1, x2, c, a, b, x3)?.mul(&id.ev.sixj1a(x1, x2, d, a, b, x3)?);
        scale = scale.max(t.abs().to_f64());
        s = s.add(&t);
    }
    let want = if c == d && y0(a, b, c) && y1(c, o2) { 1.0 } else { 0.0 };
    Ok((s.sub(&Cx::from_f64(want, 0.0)).abs().to_f64(), scale.max(want)))
}

/// (ortho3cont): `sum_X3 {B X1 X3; A X2 X4}{B X1 X3; A X2 X5} = delta_{X4,X5} Y1 Y1`.
pub fn ortho3_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o4: HalfInt,
    o5: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x4, x5) = (x1.shifted(o2), x1.shifted(o4), x1.shifted(o5));
    let mut s = Cx::<R>::zero();
    let mut scale = 0.0f64;
    for m in shifts_of(b) {
        let x3 = x1.shifted(-m);
        let t = id.ev.sixj1b(b, x1, x3, a, x2, x4)?.mul(&id.ev.sixj1b(b, x1, x3, a, x2, x5)?);
        scale = scale.max(t.abs().to_f64());
        s = s.add(&t);
    }
    let want = if o4 == o5 && y1(a, -o4) && y1(b, o2 - o4) { 1.0 } else { 0.0 };
    Ok((s.sub(&Cx::from_f64(want, 0.0)).abs().to_f64(), scale.max(want)))
}

/// (racahcont), both braiding directions.
pub fn racah_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4));
    let mut max = MaxResidual::new();
    let mut scale = 0.0f64;
    for pm in [1i32, -1] {
        let mut s = Cx::<R>::zero();
        for c in triangle_range(a, b) {
            let t = id.ev.sixj1a(x2, x1, c, a, b, x3)?.mul(&id.ev.sixj1a(x1, x2, c, a, b, x4)?);
            let vr = id
                .ribbon_sqrt_c(&x4)
                .mul(&id.ribbon_sqrt_c(&x3))
                .mul(&id.ribbon_sqrt_h(c))
                .div(&id.ribbon_sqrt_c(&x1))
                .div(&id.ribbon_sqrt_c(&x2))
                .div(&id.ribbon_sqrt_h(a))
                .div(&id.ribbon_sqrt_h(b));
            let vr = if pm == 1 { vr } else { vr.inv() };
            s = s.add(&t.mul(&vr));
        }
        let rhs = id.ev.sixj1b(b, x2, x3, a, x1, x4)?;
        scale = scale.max(rhs.abs().to_f64());
        max.push(&s.sub(&rhs));
    }
    Ok((max.0, scale))
}

/// (penta1cont).
pub fn penta1_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
    e: HalfInt,
    f: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4));
    let mut s = Cx::<R>::zero();
    for aa in triangle_range(d, f) {
        s = s.add(
            &id.ev
                .sixj1a(x3, x1, aa, d, f, x4)?
                .mul(&id.j0([e, b, aa, d, f, c])?)
                .mul(&id.ev.sixj1a(x1, x2, b, e, aa, x3)?),
        );
    }
    let rhs = id.ev.sixj1a(x4, x2, c, e, f, x3)?.mul(&id.ev.sixj1a(x2, x1, b, d, c, x4)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (penta2cont).
#[allow(clippy::too_many_arguments)]
pub fn penta2_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    o5: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    d: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4, x5) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4), x1.shifted(o5));
    let mut s = Cx::<R>::zero();
    for m in shifts_of(c) {
        let x6 = x2.shifted(m);
        s = s.add(
            &id.ev
                .sixj1b(d, x6, x4, c, x1, x2)?
                .mul(&id.ev.sixj1b(a, x5, x6, c, x2, x3)?)
                .mul(&id.ev.sixj1a(x4, x5, b, a, d, x6)?),
        );
    }
    let rhs = id.ev.sixj1b(b, x5, x4, c, x1, x3)?.mul(&id.ev.sixj1a(x1, x3, b, a, d, x2)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (penta3cont).
#[allow(clippy::too_many_arguments)]
pub fn penta3_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o4: HalfInt,
    a: HalfInt,
    b: HalfInt,
    p: HalfInt,
    q: HalfInt,
    m: HalfInt,
    n: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x4) = (x1.shifted(o2), x1.shifted(o4));
    let mut s = Cx::<R>::zero();
    for sh in shifts_of(b) {
        let x5 = x1.shifted(-sh);
        s = s.add(
            &id.ev
                .sixj1a(x2, x1, p, b, a, x5)?
                .mul(&id.ev.sixj1a(x4, x5, m, a, q, x2)?)
                .mul(&id.ev.sixj1a(x4, x1, n, b, m, x5)?),
        );
    }
    let rhs = id.j0([q, n, p, b, a, m])?.mul(&id.ev.sixj1a(x4, x1, n, p, q, x2)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (hexacont), both braiding directions.
#[allow(clippy::too_many_arguments)]
pub fn hexa_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    o4: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
    n: HalfInt,
    p: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, x3, x4) = (x1.shifted(o2), x1.shifted(o3), x1.shifted(o4));
    let mut max = MaxResidual::new();
    let mut scale = 0.0f64;
    for pm in [1i32, -1] {
        let mut lhs = Cx::<R>::zero();
        for m in triangle_range(a, p) {
            let t = id
                .ev
                .sixj1a(x4, x3, m, a, p, x2)?
                .mul(&id.j0([b, n, m, a, p, c])?)
                .mul(&id.ev.sixj1a(x4, x1, n, b, m, x3)?);
            let vr = id
                .ribbon_sqrt_h(p)
                .mul(&id.ribbon_sqrt_c(&x3))
                .div(&id.ribbon_sqrt_h(m))
                .div(&id.ribbon_sqrt_c(&x2));
            let vr = if pm == 1 { vr } else { vr.inv() };
            lhs = lhs.add(&t.mul(&vr));
        }
        let mut rhs = Cx::<R>::zero();
        for sh in shifts_of(b) {
            let x5 = x2.shifted(-sh);
            let t = id
                .ev
                .sixj1a(x4, x5, c, b, p, x2)?
                .mul(&id.ev.sixj1b(b, x1, x3, a, x2, x5)?)
                .mul(&id.ev.sixj1a(x4, x1, n, a, c, x5)?);
            let vr = id
                .ribbon_sqrt_h(c)
                .mul(&id.ribbon_sqrt_c(&x1))
                .div(&id.ribbon_sqrt_h(n))
                .div(&id.ribbon_sqrt_c(&x5));
            let vr = if pm == 1 { vr } else { vr.inv() };
            rhs = rhs.add(&t.mul(&vr));
        }
        scale = scale.max(lhs.abs().to_f64()).max(rhs.abs().to_f64());
        max.push(&lhs.sub(&rhs));
    }
    Ok((max.0, scale))
}

/// Underline symmetry: `{uX1 uX2 C; A B uX3} = (-1)^{A+B-C} {X1 X2 C; A B X3}`.
pub fn underline_residual<R: Real>(
    id: &Ident<R>,
    x1: ComplexSpin,
    o2: HalfInt,
    o3: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> QResult<(f64, f64)> {
    if !crate::qnum::y0(a, b, c) {
        return Ok((0.0, 0.0)); // both sides vanish by the triangle rule
    }
    let (x2, x3) = (x1.shifted(o2), x1.shifted(o3));
    let lhs = id.ev.sixj1a(x1.underline(), x2.underline(), c, a, b, x3.underline())?;
    let par = (a + b - c).neg_one_pow()?;
    let rhs = id.ev.sixj1a(x1, x2, c, a, b, x3)?.mul_r(&crate::scalar::Real::from_f64(par));
    Ok((lhs.sub(&rhs).abs().to_f64(), rhs.abs().to_f64()))
}
