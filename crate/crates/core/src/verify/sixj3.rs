//! The identity set of the 6j(3) symbols (three continuous directions):
//! symmetry, discrete orthogonality, four pentagon variants, the Racah
//! relation, the hexagon, and the underline symmetry with its fourth root of
//! unity.
//!
//! Samples carry three independent continuous lines (X, Y, Z); spins on one
//! line differ by exact half-integers.

use crate::error::QResult;
use crate::qnum::{triangle_range, y1, ComplexSpin, HalfInt};
use crate::scalar::{Cx, Real};

use super::{shifts_of, Ident, MaxResidual};

/// (sym6j3): both displayed forms.
pub fn sym_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    ox2: HalfInt,
    oy2: HalfInt,
    a: HalfInt,
) -> QResult<(f64, f64)> {
    let (x2, y2) = (x1.shifted(ox2), y1s.shifted(oy2));
    let base = id.ev.sixj3(z1, y1s, x2, a, x1, y2)?;
    let scale = base.abs().to_f64();
    let mut max = MaxResidual::new();
    max.push(&base.sub(&id.ev.sixj3(z1, x1, y2, a, y1s, x2)?));
    let lam = -ox2 - oy2; // X1-X2 + Y1-Y2
    let scale_f = id
        .eipi_q_pow(lam)
        .mul(&id.nu1_dim(&x2)?)
        .mul(&id.nu1_dim(&y2)?)
        .div(&id.nu1_dim(&x1)?)
        .div(&id.nu1_dim(&y1s)?);
    max.push(&base.sub(&scale_f.mul(&id.ev.sixj3(z1, y2, x1, a, x2, y1s)?)));
    Ok((max.0, scale))
}

/// (ortho16j3): `sum_X2 {Z1 Y1 X2; A X1 Y2}{Z1 Y1 X2; A X1 Y3} = delta_{Y2,Y3} Y1(A, Y1-Y2)`.
pub fn ortho_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy2: HalfInt,
    oy3: HalfInt,
    a: HalfInt,
) -> QResult<(f64, f64)> {
    let (y2, y3) = (y1s.shifted(oy2), y1s.shifted(oy3));
    let mut s = Cx::<R>::zero();
    let mut scale = 0.0f64;
    for m in shifts_of(a) {
        let x2 = x1.shifted(-m);
        let t = id.ev.sixj3(z1, y1s, x2, a, x1, y2)?.mul(&id.ev.sixj3(z1, y1s, x2, a, x1, y3)?);
        scale = scale.max(t.abs().to_f64());
        s = s.add(&t);
    }
    let want = if oy2 == oy3 && y1(a, -oy2) { 1.0 } else { 0.0 };
    Ok((s.sub(&Cx::from_f64(want, 0.0)).abs().to_f64(), scale.max(want)))
}

/// (penta1sixj3).
#[allow(clippy::too_many_arguments)]
pub fn penta1_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy2: HalfInt,
    oy3: HalfInt,
    ox2: HalfInt,
    ox3: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (y2, y3) = (y1s.shifted(oy2), y1s.shifted(oy3));
    let (x2, x3) = (x1.shifted(ox2), x1.shifted(ox3));
    let mut s = Cx::<R>::zero();
    for c in triangle_range(a, b) {
        s = s.add(
            &id.ev
                .sixj1a(y3, y2, c, a, b, y1s)?
                .mul(&id.ev.sixj1a(x1, x2, c, b, a, x3)?)
                .mul(&id.ev.sixj3(z1, y3, x2, c, x1, y2)?),
        );
    }
    let rhs = id.ev.sixj3(z1, y1s, x3, a, x1, y2)?.mul(&id.ev.sixj3(z1, y3, x2, b, x3, y1s)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (penta2sixj3).
#[allow(clippy::too_many_arguments)]
pub fn penta2_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy3: HalfInt,
    oz2: HalfInt,
    ox2: HalfInt,
    ox4: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (y3, z2) = (y1s.shifted(oy3), z1.shifted(oz2));
    let (x2, x4) = (x1.shifted(ox2), x1.shifted(ox4));
    let mut s = Cx::<R>::zero();
    for m in shifts_of(b) {
        let x3 = x2.shifted(m);
        s = s.add(
            &id.ev
                .sixj3(z1, y3, x3, b, x2, y1s)?
                .mul(&id.ev.sixj1b(b, x3, x2, a, x1, x4)?)
                .mul(&id.ev.sixj3(y3, z1, x3, a, x4, z2)?),
        );
    }
    let rhs = id.ev.sixj3(y1s, z1, x2, a, x1, z2)?.mul(&id.ev.sixj3(z2, y3, x4, b, x1, y1s)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (racah6j3), both braiding directions.
#[allow(clippy::too_many_arguments)]
pub fn racah_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oz2: HalfInt,
    ox2: HalfInt,
    a: HalfInt,
) -> QResult<(f64, f64)> {
    let (z2, x2) = (z1.shifted(oz2), x1.shifted(ox2));
    let mut max = MaxResidual::new();
    let mut scale = 0.0f64;
    for pm in [1i32, -1] {
        let mut s = Cx::<R>::zero();
        for m in shifts_of(a) {
            let y2 = y1s.shifted(-m);
            let t = id.ev.sixj3(z2, x1, y2, a, y1s, x2)?.mul(&id.ev.sixj3(x1, y1s, z1, a, z2, y2)?);
            let vr = id
                .ribbon_sqrt_c(&y2)
                .mul(&id.ribbon_sqrt_c(&z1))
                .mul(&id.ribbon_sqrt_c(&x2))
                .div(&id.ribbon_sqrt_c(&z2))
                .div(&id.ribbon_sqrt_c(&y1s))
                .div(&id.ribbon_sqrt_c(&x1))
                .div(&id.ribbon_sqrt_h(a));
            let vr = if pm == 1 { vr } else { vr.inv() };
            s = s.add(&t.mul(&vr));
        }
        let rhs = id.ev.sixj3(y1s, z2, x2, a, x1, z1)?;
        scale = scale.max(rhs.abs().to_f64());
        max.push(&s.sub(&rhs));
    }
    Ok((max.0, scale))
}

/// (penta36j3).
#[allow(clippy::too_many_arguments)]
pub fn penta3_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oz2: HalfInt,
    oz3: HalfInt,
    ox3: HalfInt,
    a: HalfInt,
    b: HalfInt,
    c: HalfInt,
) -> QResult<(f64, f64)> {
    let (z2, z3) = (z1.shifted(oz2), z1.shifted(oz3));
    let x3 = x1.shifted(ox3);
    let mut s = Cx::<R>::zero();
    for m in shifts_of(c) {
        let x2 = x1.shifted(-m);
        s = s.add(
            &id.ev
                .sixj3(y1s, z3, x2, c, x1, z2)?
                .mul(&id.ev.sixj1a(x1, x3, b, a, c, x2)?)
                .mul(&id.ev.sixj3(y1s, z1, x3, a, x2, z3)?),
        );
    }
    let rhs = id.ev.sixj3(y1s, z1, x3, b, x1, z2)?.mul(&id.ev.sixj1a(z1, z2, b, c, a, z3)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (penta46j3).
#[allow(clippy::too_many_arguments)]
pub fn penta4_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy2: HalfInt,
    ox2: HalfInt,
    ox3: HalfInt,
    ox4: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let y2 = y1s.shifted(oy2);
    let (x2, x3, x4) = (x1.shifted(ox2), x1.shifted(ox3), x1.shifted(ox4));
    let mut s = Cx::<R>::zero();
    for m in shifts_of(a) {
        let z2 = z1.shifted(m);
        s = s.add(
            &id.ev
                .sixj3(y1s, z1, x2, a, x4, z2)?
                .mul(&id.ev.sixj3(z2, y1s, x4, b, x1, y2)?)
                .mul(&id.ev.sixj3(y2, z1, x3, a, x1, z2)?),
        );
    }
    let rhs = id.ev.sixj1b(b, x2, x3, a, x1, x4)?.mul(&id.ev.sixj3(z1, y1s, x2, b, x3, y2)?);
    Ok((s.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(s.abs().to_f64())))
}

/// (hexa6j3).
#[allow(clippy::too_many_arguments)]
pub fn hexa_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy2: HalfInt,
    oy3: HalfInt,
    ox2: HalfInt,
    ox3: HalfInt,
    a: HalfInt,
    b: HalfInt,
) -> QResult<(f64, f64)> {
    let (y2, y3) = (y1s.shifted(oy2), y1s.shifted(oy3));
    let (x2, x3) = (x1.shifted(ox2), x1.shifted(ox3));
    let mut lhs = Cx::<R>::zero();
    for c in triangle_range(a, b) {
        let vr = id
            .ribbon_sqrt_h(c)
            .mul(&id.ribbon_sqrt_c(&y2))
            .div(&id.ribbon_sqrt_h(b))
            .div(&id.ribbon_sqrt_c(&y1s));
        lhs = lhs.add(
            &vr.mul(&id.ev.sixj3(z1, x1, y1s, c, y3, x2)?)
                .mul(&id.ev.sixj1a(y3, y1s, c, a, b, y2)?)
                .mul(&id.ev.sixj1a(x1, x2, c, a, b, x3)?),
        );
    }
    let mut rhs = Cx::<R>::zero();
    for m in shifts_of(a) {
        let z2 = z1.shifted(m);
        let vr = id
            .ribbon_sqrt_c(&x2)
            .mul(&id.ribbon_sqrt_c(&z2))
            .div(&id.ribbon_sqrt_c(&x3))
            .div(&id.ribbon_sqrt_c(&z1));
        rhs = rhs.add(
            &vr.mul(&id.ev.sixj3(y3, z1, x2, a, x3, z2)?)
                .mul(&id.ev.sixj3(x1, z1, y1s, a, y2, z2)?)
                .mul(&id.ev.sixj3(z2, y3, x3, b, x1, y2)?),
        );
    }
    Ok((lhs.sub(&rhs).abs().to_f64(), rhs.abs().to_f64().max(lhs.abs().to_f64())))
}

/// Underline symmetry (symbiz6j3) with the fourth root of unity `g`; also
/// returns `g` so callers can check `|g| = 1` and `g^4 = 1`.
#[allow(clippy::too_many_arguments)]
pub fn underline_residual<R: Real>(
    id: &Ident<R>,
    z1: ComplexSpin,
    y1s: ComplexSpin,
    x1: ComplexSpin,
    oy2: HalfInt,
    ox2: HalfInt,
    a: HalfInt,
) -> QResult<(f64, f64, Cx<R>)> {
    if !y1(a, ox2) || !y1(a, oy2) {
        return Ok((0.0, 0.0, Cx::one())); // off-support: both sides vanish
    }
    let (y2, x2) = (y1s.shifted(oy2), x1.shifted(ox2));
    let lhs = id.ev.sixj3(
        z1.underline(),
        y1s.underline(),
        x2.underline(),
        a,
        x1.underline(),
        y2.underline(),
    )?;
    let base = id.ev.sixj3(z1, y1s, x2, a, x1, y2)?;

    let env = id.env();
    let c = |s: &ComplexSpin| {
        let v = s.value();
        Cx::<R>::from_f64(v.re, v.im)
    };
    let (x1c, x2c, y1c, y2c, z1c) = (c(&x1), c(&x2), c(&y1s), c(&y2), c(&z1));
    let one = Cx::<R>::one();
    let two_a1 = HalfInt::from_twice(-2 * a.twice() - 2); // -2A - 1
    let num = env
        .phi(&y2c.neg().add(&x1c).add(&z1c), -ox2 - oy2)?
        .mul(&env.phi(&x1c.add(&y2c).add(&z1c).add(&one), -ox2 + oy2)?)
        .mul(&env.phi(&x1c.add(&y2c).sub(&z1c), -ox2 + oy2)?);
    let den = env
        .phi(&y2c.add(&y2c).add(&one), crate::qnum::ONE)?
        .mul(&env.phi(&x2c.add(&x2c).add(&one), crate::qnum::ONE)?)
        .mul(&env.phi(&y2c.add(&y1c).sub(&env.cx(a)), two_a1)?)
        .mul(&env.phi(&x1c.add(&x2c).sub(&env.cx(a)), two_a1)?)
        .mul(&env.phi(&y2c.add(&z1c).sub(&x1c), oy2 + ox2)?);
    let g = num.div(&den);
    let par = (-oy2 - ox2).neg_one_pow()?;
    let rhs = base.mul(&g).mul_r(&Real::from_f64(par));
    Ok((lhs.sub(&rhs).abs().to_f64(), rhs.abs().to_f64(), g))
}
