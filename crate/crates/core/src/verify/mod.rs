//! Residual checks for every identity the library claims.
//!
//! Each function evaluates one identity over supplied spins/samples and
//! returns the maximum absolute deviation between its two sides. The harness
//! turns these into suite reports; the acceptance tests pin their tolerances.

pub mod sixj0;
pub mod sixj1;
pub mod sixj3;

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::QResult;
use crate::qnum::kernel::QEnv;
use crate::qnum::{ComplexSpin, HalfInt, QContext};
use crate::scalar::{Cx, Real};
use crate::sixj::SixEval;

/// Shared evaluation state for identity sweeps: a 6j evaluator over one
/// backend plus a memo table for the discrete 6j(0).
pub struct Ident<R: Real> {
    pub ev: SixEval<R>,
    cache0: RefCell<HashMap<[i64; 6], Cx<R>>>,
}

impl<R: Real> Ident<R> {
    pub fn new(ctx: &QContext) -> Self {
        Ident { ev: SixEval::new(ctx), cache0: RefCell::new(HashMap::new()) }
    }

    pub fn env(&self) -> &QEnv<R> {
        &self.ev.env
    }

    /// Cached 6j(0) in display order.
    pub fn j0(&self, p: [HalfInt; 6]) -> QResult<Cx<R>> {
        let key = [p[0].twice(), p[1].twice(), p[2].twice(), p[3].twice(), p[4].twice(), p[5].twice()];
        if let Some(v) = self.cache0.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = self.ev.sixj0(p)?;
        self.cache0.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// `(e^{i pi} q)^lambda` for exact half-integer lambda.
    pub fn eipi_q_pow(&self, lam: HalfInt) -> Cx<R> {
        let ph = self.env().expi_pi_h(lam);
        ph.mul_r(&self.env().qpow_h(lam))
    }

    /// `nu_1(d_X) = sqrt(1 - q^{2(2X+1)})` for a complex spin.
    pub fn nu1_dim(&self, s: &ComplexSpin) -> QResult<Cx<R>> {
        let v = s.value();
        self.env().nu1(&Cx::from_f64(2.0 * v.re + 1.0, 2.0 * v.im))
    }

    /// `v_X^{1/2}` for a complex spin.
    pub fn ribbon_sqrt_c(&self, s: &ComplexSpin) -> Cx<R> {
        let v = s.value();
        self.env().ribbon_root(&Cx::from_f64(v.re, v.im), 2)
    }

    /// `v_K^{1/2}` for a discrete spin (exact phase).
    pub fn ribbon_sqrt_h(&self, k: HalfInt) -> Cx<R> {
        let ph = self.env().expi_pi_h(k);
        let mag = self
            .env()
            .qpow(&Cx::from_f64(-(k.twice() as f64) * (k.twice() as f64 + 2.0) / 4.0, 0.0));
        ph.mul(&mag)
    }

    /// `v_K^{1/4}` for a discrete spin (exact phase).
    pub fn ribbon_root4_h(&self, k: HalfInt) -> Cx<R> {
        self.env().ribbon_root4_h(k)
    }
}

/// Track a running maximum residual.
pub struct MaxResidual(pub f64);

impl MaxResidual {
    pub fn new() -> Self {
        MaxResidual(0.0)
    }

    pub fn push<R: Real>(&mut self, dev: &Cx<R>) {
        self.push_f64(dev.abs().to_f64());
    }

    pub fn push_f64(&mut self, d: f64) {
        if !d.is_finite() {
            self.0 = f64::INFINITY;
        } else if d.abs() > self.0 {
            self.0 = d.abs();
        }
    }
}

impl Default for MaxResidual {
    fn default() -> Self {
        Self::new()
    }
}

/// Shifts `m = -a, -a+1, ..., a` as exact half-integers.
pub fn shifts_of(a: HalfInt) -> impl Iterator<Item = HalfInt> {
    crate::qnum::weight_range(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::{HalfInt, HALF, ONE, ZERO};
    use crate::scalar::Sf64;
    use num_complex::Complex64;

    fn id() -> Ident<Sf64> {
        Ident::new(&QContext::new(0.6).unwrap())
    }

    fn xline(k: u32) -> ComplexSpin {
        ComplexSpin::new(Complex64::new(0.137 + 0.5 * k as f64, 0.293 + 0.05 * k as f64))
    }

    #[test]
    fn sixj0_identities_small() {
        let idt = id();
        let s = HalfInt::from_twice(2);
        assert!(sixj0::trivsymm_residual(&idt, s).unwrap() < 1e-12);
        assert!(sixj0::racah_wigner_residual(&idt, s).unwrap() < 1e-12);
        assert!(sixj0::ortho_residual(&idt, s).unwrap() < 1e-12);
        assert!(sixj0::racah_residual(&idt, s).unwrap() < 1e-12);
        assert!(sixj0::pentagon_residual(&idt, HalfInt::from_twice(2)).unwrap() < 1e-12);
    }

    #[test]
    fn sixj1_identities_spot() {
        let idt = id();
        let x1 = xline(0);
        let h = HalfInt::from_twice;
        for (o2, o3, o4, a, b, c, d) in [
            (h(1), h(-1), h(1), HALF, ONE, HALF, HALF),
            (h(2), h(0), h(-2), ONE, ONE, ONE, ZERO),
            (h(-1), h(1), h(1), HALF, HALF, ZERO, ONE),
        ] {
            assert!(sixj1::symcont_a_residual(&idt, x1, o2, o3, a, b, c).unwrap().0 < 1e-10);
            assert!(sixj1::symcont_b_residual(&idt, x1, o2, o3, o4, a, b).unwrap().0 < 1e-10);
            assert!(sixj1::ortho1_residual(&idt, x1, o2, o3, o4, a, b).unwrap().0 < 1e-10);
            assert!(sixj1::ortho2_residual(&idt, x1, o2, a, b, c, d).unwrap().0 < 1e-10);
            assert!(sixj1::ortho3_residual(&idt, x1, o2, o3, o4, a, b).unwrap().0 < 1e-10);
            assert!(sixj1::racah_residual(&idt, x1, o2, o3, o4, a, b).unwrap().0 < 1e-10);
            assert!(sixj1::underline_residual(&idt, x1, o2, o3, a, b, c).unwrap().0 < 1e-10);
        }
        assert!(sixj1::penta1_residual(&idt, x1, h(1), h(-1), h(0), HALF, HALF, ONE, HALF, ONE).unwrap().0 < 1e-10);
        assert!(sixj1::penta2_residual(&idt, x1, h(1), h(0), h(-1), h(1), HALF, HALF, ONE, HALF).unwrap().0 < 1e-10);
        assert!(sixj1::penta3_residual(&idt, x1, h(1), h(-1), HALF, HALF, ONE, HALF, ONE, HALF).unwrap().0 < 1e-10);
        assert!(sixj1::hexa_residual(&idt, x1, h(1), h(0), h(-1), HALF, HALF, ONE, HALF, ONE).unwrap().0 < 1e-10);
    }

    #[test]
    fn sixj3_identities_spot() {
        let idt = id();
        let (z1, y1s, x1) = (xline(1), xline(2), xline(3));
        let h = HalfInt::from_twice;
        assert!(sixj3::sym_residual(&idt, z1, y1s, x1, h(1), h(-1), ONE).unwrap().0 < 1e-10);
        assert!(sixj3::ortho_residual(&idt, z1, y1s, x1, h(0), h(0), ONE).unwrap().0 < 1e-10);
        assert!(sixj3::ortho_residual(&idt, z1, y1s, x1, h(2), h(-2), ONE).unwrap().0 < 1e-10);
        assert!(sixj3::penta1_residual(&idt, z1, y1s, x1, h(1), h(-1), h(1), h(0), HALF, HALF).unwrap().0 < 1e-10);
        assert!(sixj3::penta2_residual(&idt, z1, y1s, x1, h(1), h(-1), h(1), h(0), HALF, HALF).unwrap().0 < 1e-10);
        assert!(sixj3::racah_residual(&idt, z1, y1s, x1, h(1), h(-1), ONE).unwrap().0 < 1e-10);
        assert!(sixj3::penta3_residual(&idt, z1, y1s, x1, h(1), h(-1), h(0), HALF, HALF, ONE).unwrap().0 < 1e-10);
        assert!(sixj3::penta4_residual(&idt, z1, y1s, x1, h(1), h(-1), h(0), h(1), HALF, HALF).unwrap().0 < 1e-10);
        assert!(sixj3::hexa_residual(&idt, z1, y1s, x1, h(1), h(-1), h(0), h(1), HALF, HALF).unwrap().0 < 1e-10);
        let (res, _scale, g) = sixj3::underline_residual(&idt, z1, y1s, x1, h(1), h(-1), ONE).unwrap();
        assert!(res < 1e-10, "underline residual {res}");
        assert!((g.abs().to_f64() - 1.0).abs() < 1e-12);
        let g4 = g.powi(4).to_c64();
        assert!((g4 - 1.0).norm() < 1e-10, "g^4 = {g4}");
    }
}
