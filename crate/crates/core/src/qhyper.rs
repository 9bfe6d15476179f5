//! Basic hypergeometric series in base `q^2`.
//!
//! ```text
//! (n+1)Phi(n)[a_0..a_n; b_1..b_n; Z] = sum_k  prod_i (a_i)_k / ((1)_k prod_i (b_i)_k) q^{2kZ}
//! (n+3)W(n+2)(a_0; a_1..a_n; Z)     = sum_k  (1-q^{2a_0+4k})/(1-q^{2a_0}) * prod_i (a_i)_k / ((1)_k prod_i (1+a_0-a_i)_k) q^{2kZ}
//! ```
//!
//! Termination is structural: a series terminates iff some numerator
//! parameter is tagged as an exact non-positive integer. A parameter that is
//! merely numerically close to `-n` never terminates the sum.

use num_complex::Complex64;

use crate::error::{QError, QResult};
use crate::qnum::kernel::{Kahan, QEnv, ZERO_EPS};
use crate::qnum::{HalfInt, PrecisionMode, QContext};
use crate::scalar::{Cx, RBig, Real, Sf64};

/// One series parameter: its complex exponent plus the exact termination tag.
#[derive(Clone, Copy, Debug)]
pub struct QExp {
    pub value: Complex64,
    /// `Some(n)` iff the parameter is exactly `-n`, `n` a non-negative integer.
    pub neg_int: Option<u64>,
}

impl QExp {
    pub fn new(value: Complex64) -> Self {
        QExp { value, neg_int: None }
    }

    /// The terminating parameter `-n`.
    pub fn terminating(n: u64) -> Self {
        QExp { value: Complex64::new(-(n as f64), 0.0), neg_int: Some(n) }
    }

    /// Exact half-integer parameter; tags termination when it is a
    /// non-positive integer.
    pub fn from_halfint(h: HalfInt) -> Self {
        let neg_int = if h.is_integer() && h.twice() <= 0 { Some((-h.twice() / 2) as u64) } else { None };
        QExp { value: Complex64::new(h.as_f64(), 0.0), neg_int }
    }

    pub fn shift(&self, by: f64) -> Self {
        QExp::new(self.value + by)
    }
}

/// Parameters of an `(n+1)Phi(n)` series.
#[derive(Clone, Debug)]
pub struct PhiParams {
    pub numer: Vec<QExp>,
    pub denom: Vec<QExp>,
    /// Exponent of the argument `q^{2Z}`.
    pub z: Complex64,
}

impl PhiParams {
    pub fn new(numer: Vec<QExp>, denom: Vec<QExp>, z: Complex64) -> Self {
        PhiParams { numer, denom, z }
    }

    /// Smallest structural termination order, if any.
    pub fn termination(&self) -> Option<u64> {
        self.numer.iter().filter_map(|p| p.neg_int).min()
    }
}

fn eval_kernel<R: Real>(env: &QEnv<R>, p: &PhiParams, well_poised_a0: Option<Complex64>) -> QResult<Cx<R>> {
    let numer: Vec<Cx<R>> = p.numer.iter().map(|a| Cx::from_f64(a.value.re, a.value.im)).collect();
    let denom: Vec<Cx<R>> = p.denom.iter().map(|b| Cx::from_f64(b.value.re, b.value.im)).collect();
    let zq = env.qpow(&Cx::from_f64(2.0 * p.z.re, 2.0 * p.z.im));

    let n_term = p.termination();
    if n_term.is_none() {
        // convergence requires |q^{2Z}| < 1
        if zq.abs2().to_f64() >= 1.0 - 1e-12 {
            return Err(QError::Divergent(format!("non-terminating series with |q^2Z| = {}", zq.abs2().to_f64().sqrt())));
        }
    }

    // running products of the Pochhammer factors, advanced term by term
    let mut term = Cx::<R>::one();
    let mut acc = Kahan::new();
    acc.add(&term);

    let w0 = well_poised_a0.map(|a0| env.qpow(&Cx::from_f64(2.0 * a0.re, 2.0 * a0.im)));
    let q4 = env.q2.mul(&env.q2);

    let max_k: u64 = n_term.unwrap_or(200_000);
    let mut below = 0u8;
    let mut k: u64 = 0;
    let zero2 = R::from_f64(ZERO_EPS * ZERO_EPS);
    // w_a[i] = q^{2(a_i + k)}
    let mut w_num: Vec<Cx<R>> = numer.iter().map(|a| env.qpow(&a.add(a))).collect();
    let mut w_den: Vec<Cx<R>> = denom.iter().map(|b| env.qpow(&b.add(b))).collect();
    let mut w_one = env.qpow(&Cx::from_f64(2.0, 0.0));
    let mut w_vwp = w0.clone(); // q^{2a0 + 4k}

    while k < max_k {
        // ratio term_{k+1} / term_k
        let mut ratio = zq.clone();
        for w in w_num.iter_mut() {
            ratio = ratio.mul(&Cx::one().sub(w));
            *w = w.mul_r(&env.q2);
        }
        let f_one = Cx::one().sub(&w_one);
        w_one = w_one.mul_r(&env.q2);
        ratio = ratio.div(&f_one);
        for w in w_den.iter_mut() {
            let f = Cx::one().sub(w);
            if f.abs2().lt(&zero2) {
                return Err(QError::Pole(format!("denominator Pochhammer vanishes at k = {}", k + 1)));
            }
            ratio = ratio.div(&f);
            *w = w.mul_r(&env.q2);
        }
        term = term.mul(&ratio);
        k += 1;

        let weighted = if let Some(wv) = &mut w_vwp {
            let w0c = w0.as_ref().unwrap();
            *wv = wv.mul_r(&q4);
            let num = Cx::one().sub(wv);
            let den = Cx::one().sub(w0c);
            if den.abs2().lt(&zero2) {
                return Err(QError::Pole("very-well-poised weight has 1 - q^{2a_0} = 0".into()));
            }
            term.mul(&num).div(&den)
        } else {
            term.clone()
        };
        acc.add(&weighted);

        if n_term.is_none() {
            let s2 = acc.value().abs2().to_f64();
            if weighted.abs2().to_f64() < env.series_eps * env.series_eps * (s2 + 1e-300) {
                below += 1;
                if below >= 3 {
                    break;
                }
            } else {
                below = 0;
            }
        }
    }
    Ok(acc.value())
}

/// Evaluate an `(n+1)Phi(n)` series: exactly when terminating, otherwise to
/// the backend tolerance.
pub fn phi_eval(ctx: &QContext, p: &PhiParams) -> QResult<Complex64> {
    crate::qnum::dispatch!(ctx, env, Ok(eval_kernel(&env, p, None)?.to_c64()))
}

/// Evaluate a very-well-poised `(n+3)W(n+2)(a0; a1.., Z)` series.
pub fn w_eval(ctx: &QContext, a0: QExp, others: &[QExp], z: Complex64) -> QResult<Complex64> {
    let params = PhiParams::new(
        std::iter::once(a0).chain(others.iter().copied()).collect(),
        others.iter().map(|a| QExp::new(1.0 + a0.value - a.value)).collect(),
        z,
    );
    crate::qnum::dispatch!(ctx, env, Ok(eval_kernel(&env, &params, Some(a0.value))?.to_c64()))
}

/// Sears transformation of a balanced terminating `4Phi3` (argument 1):
///
/// ```text
/// 4Phi3[-n, a1, a2, a3; b1, b2, b3]
///   = q^{2n a1} (b2-a1)_n (b3-a1)_n / ((b2)_n (b3)_n)
///     * 4Phi3[-n, a1, b1-a2, b1-a3; b1, 1-n+a1-b2, 1-n+a1-b3]
/// ```
///
/// Returns the transformed parameter set and the prefactor, so that
/// `phi_eval(input) = prefactor * phi_eval(output)`.
pub fn sears_transform(ctx: &QContext, p: &PhiParams) -> QResult<(PhiParams, Complex64)> {
    if p.numer.len() != 4 || p.denom.len() != 3 {
        return Err(QError::Domain("Sears transform needs a 4Phi3".into()));
    }
    let n = match p.numer[0].neg_int {
        Some(n) => n,
        None => return Err(QError::Domain("Sears transform needs -n in the first numerator slot".into())),
    };
    let bal: Complex64 = p.numer.iter().map(|a| a.value).sum::<Complex64>() + 1.0
        - p.denom.iter().map(|b| b.value).sum::<Complex64>();
    if bal.norm() > 1e-8 {
        return Err(QError::Domain(format!("series is not balanced (defect {bal})")));
    }
    let (a1, a2, a3) = (p.numer[1], p.numer[2], p.numer[3]);
    let (b1, b2, b3) = (p.denom[0], p.denom[1], p.denom[2]);

    let out = PhiParams::new(
        vec![
            QExp::terminating(n),
            a1,
            QExp::new(b1.value - a2.value),
            QExp::new(b1.value - a3.value),
        ],
        vec![
            b1,
            QExp::new(1.0 - n as f64 + a1.value - b2.value),
            QExp::new(1.0 - n as f64 + a1.value - b3.value),
        ],
        p.z,
    );

    let ni = n as i64;
    let pref = crate::qnum::poch_n(ctx, b2.value - a1.value, ni)?
        * crate::qnum::poch_n(ctx, b3.value - a1.value, ni)?
        / (crate::qnum::poch_n(ctx, b2.value, ni)? * crate::qnum::poch_n(ctx, b3.value, ni)?)
        * (Complex64::new(ctx.q().ln(), 0.0) * 2.0 * n as f64 * a1.value).exp();
    Ok((out, pref))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qnum::poch_inf;

    fn ctx() -> QContext {
        QContext::new(0.6).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn terminating_order_zero_is_one() {
        let p = PhiParams::new(
            vec![QExp::terminating(0), QExp::new(c(0.3, 0.1))],
            vec![QExp::new(c(0.9, -0.2))],
            c(1.0, 0.0),
        );
        assert_eq!(phi_eval(&ctx(), &p).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn heine_summation() {
        // 2Phi1[a0, a1; b1; b1-a0-a1] = (b1-a0)_inf (b1-a1)_inf / ((b1)_inf (b1-a0-a1)_inf)
        let cx = ctx();
        for k in 0..40 {
            let a0 = c(0.4 + 0.05 * k as f64, 0.3 - 0.02 * k as f64);
            let a1 = c(0.8 - 0.03 * k as f64, -0.4 + 0.04 * k as f64);
            let b1 = c(2.5 + 0.02 * k as f64, 0.2);
            let z = b1 - a0 - a1;
            if (z.re * 2.0 * cx.q().ln()).exp() >= 0.97 {
                continue; // stay in the convergent regime
            }
            let p = PhiParams::new(vec![QExp::new(a0), QExp::new(a1)], vec![QExp::new(b1)], z);
            let lhs = phi_eval(&cx, &p).unwrap();
            let rhs = poch_inf(&cx, b1 - a0).unwrap() * poch_inf(&cx, b1 - a1).unwrap()
                / (poch_inf(&cx, b1).unwrap() * poch_inf(&cx, z).unwrap());
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12, "k={k} lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn very_well_poised_6w5() {
        // 6W5(a0; a1, a2, -n; 1+n+a0-a1-a2)
        //   = (1+a0)_n (1+a0-a1-a2)_n / ((1+a0-a1)_n (1+a0-a2)_n)
        let cx = ctx();
        for k in 0..30 {
            let a0 = c(1.1 + 0.07 * k as f64, 0.4 - 0.01 * k as f64);
            let a1 = c(0.6 - 0.02 * k as f64, 0.25);
            let a2 = c(0.9 + 0.01 * k as f64, -0.15);
            let n = 2 + (k % 5) as u64;
            let ni = n as i64;
            let z = 1.0 + n as f64 + a0 - a1 - a2;
            let lhs = w_eval(&cx, QExp::new(a0), &[QExp::new(a1), QExp::new(a2), QExp::terminating(n)], z).unwrap();
            let rhs = crate::qnum::poch_n(&cx, 1.0 + a0, ni).unwrap()
                * crate::qnum::poch_n(&cx, 1.0 + a0 - a1 - a2, ni).unwrap()
                / (crate::qnum::poch_n(&cx, 1.0 + a0 - a1, ni).unwrap()
                    * crate::qnum::poch_n(&cx, 1.0 + a0 - a2, ni).unwrap());
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn w_eval_matches_manual_weight() {
        let cx = ctx();
        let a0 = c(0.8, 0.3);
        let others = [QExp::new(c(0.5, -0.2)), QExp::new(c(1.2, 0.1)), QExp::terminating(6)];
        let z = c(1.3, 0.4);
        let w = w_eval(&cx, QExp::new(a0), &others, z).unwrap();
        // fold the weight in by hand: (1-q^{2a0+4k})/(1-q^{2a0}) =
        // (a0)_k-style two-term split via direct summation
        let lnq = cx.q().ln();
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..=6u64 {
            let mut t = Complex64::new(1.0, 0.0);
            let poch = |a: Complex64, k: u64| -> Complex64 {
                let mut p = Complex64::new(1.0, 0.0);
                for j in 0..k {
                    p *= 1.0 - (Complex64::new(lnq, 0.0) * 2.0 * (a + j as f64)).exp();
                }
                p
            };
            t *= poch(a0, k);
            for o in others {
                t *= poch(o.value, k);
                t /= poch(1.0 + a0 - o.value, k);
            }
            t /= poch(c(1.0, 0.0), k);
            t *= (Complex64::new(lnq, 0.0) * 2.0 * k as f64 * z).exp();
            t *= (1.0 - (Complex64::new(lnq, 0.0) * (2.0 * a0 + 4.0 * k as f64)).exp())
                / (1.0 - (Complex64::new(lnq, 0.0) * 2.0 * a0).exp());
            sum += t;
        }
        assert!((w - sum).norm() / sum.norm() < 1e-12);
    }

    #[test]
    fn sears_residual_random_balanced() {
        let cx = ctx();
        let mut fails = 0;
        for k in 0..100 {
            let n = 1 + (k % 8) as u64;
            let a1 = c(0.37 + 0.011 * k as f64, 0.21 - 0.007 * k as f64);
            let a2 = c(-0.53 + 0.013 * k as f64, 0.33);
            let a3 = c(0.91 - 0.009 * k as f64, -0.41 + 0.003 * k as f64);
            let b1 = c(1.23 + 0.017 * k as f64, 0.11);
            let b2 = c(0.77 - 0.005 * k as f64, -0.23);
            // balance: sum(numer) + 1 = sum(denom)
            let b3 = -(n as f64) + a1 + a2 + a3 + 1.0 - b1 - b2;
            let p = PhiParams::new(
                vec![QExp::terminating(n), QExp::new(a1), QExp::new(a2), QExp::new(a3)],
                vec![QExp::new(b1), QExp::new(b2), QExp::new(b3)],
                c(1.0, 0.0),
            );
            let lhs = phi_eval(&cx, &p).unwrap();
            let (out, pref) = sears_transform(&cx, &p).unwrap();
            let rhs = pref * phi_eval(&cx, &out).unwrap();
            if (lhs - rhs).norm() > 1e-9 * (1.0 + lhs.norm()) {
                fails += 1;
            }
        }
        assert_eq!(fails, 0);
    }

    #[test]
    fn sears_n_zero_trivial() {
        let cx = ctx();
        let p = PhiParams::new(
            vec![QExp::terminating(0), QExp::new(c(0.3, 0.2)), QExp::new(c(0.5, 0.0)), QExp::new(c(0.7, -0.1))],
            vec![QExp::new(c(0.4, 0.05)), QExp::new(c(0.6, 0.0)), QExp::new(c(1.5 + 0.3 + 0.5 + 0.7 - 1.0 - 0.4 - 0.6 - 0.5, 0.05))],
            c(1.0, 0.0),
        );
        // balance it exactly
        let mut p = p;
        p.denom[2] = QExp::new(
            p.numer.iter().map(|a| a.value).sum::<Complex64>() + 1.0 - p.denom[0].value - p.denom[1].value,
        );
        let (out, pref) = sears_transform(&cx, &p).unwrap();
        assert!((pref - 1.0).norm() < 1e-14);
        assert_eq!(phi_eval(&cx, &out).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn double_sears_composes() {
        let cx = ctx();
        let n = 5u64;
        let a1 = c(0.42, 0.17);
        let a2 = c(-0.31, 0.25);
        let a3 = c(0.83, -0.29);
        let b1 = c(1.11, 0.13);
        let b2 = c(0.67, -0.19);
        let b3 = -(n as f64) + a1 + a2 + a3 + 1.0 - b1 - b2;
        let p = PhiParams::new(
            vec![QExp::terminating(n), QExp::new(a1), QExp::new(a2), QExp::new(a3)],
            vec![QExp::new(b1), QExp::new(b2), QExp::new(b3)],
            c(1.0, 0.0),
        );
        let direct = phi_eval(&cx, &p).unwrap();
        let (p1, f1) = sears_transform(&cx, &p).unwrap();
        let (p2, f2) = sears_transform(&cx, &p1).unwrap();
        let via = f1 * f2 * phi_eval(&cx, &p2).unwrap();
        assert!((direct - via).norm() / direct.norm() < 1e-11);
    }

    #[test]
    fn divergent_input_flagged() {
        let cx = ctx();
        let p = PhiParams::new(vec![QExp::new(c(0.3, 0.0))], vec![], c(-1.0, 0.0));
        assert!(matches!(phi_eval(&cx, &p), Err(QError::Divergent(_))));
    }

    #[test]
    fn numerator_permutation_invariance() {
        let cx = ctx();
        let p = PhiParams::new(
            vec![QExp::terminating(4), QExp::new(c(0.3, 0.2)), QExp::new(c(0.6, -0.4)), QExp::new(c(0.1, 0.9))],
            vec![QExp::new(c(1.3, 0.2)), QExp::new(c(0.8, -0.1)), QExp::new(c(0.5, 0.3))],
            c(0.7, 0.1),
        );
        let mut q = p.clone();
        q.numer.swap(1, 3);
        q.denom.swap(0, 2);
        let a = phi_eval(&cx, &p).unwrap();
        let b = phi_eval(&cx, &q).unwrap();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }
}
