//! Generic kernels for the scalar q-functions.
//!
//! Conventions (`0 < q < 1`, `hbar = -ln q`):
//!
//! ```text
//! [x]            = (q^x - q^-x) / (q - q^-1)
//! (a)_inf        = prod_{k>=0} (1 - q^{2a+2k})
//! (a)_n          = (a)_inf / (a+n)_inf
//! nu_inf(a)      = prod_{k>=0} sqrt(1 - q^{2a+2k})        (principal roots)
//! omega(a;b,c)   = nu(a+b+c+2) nu(a+b-c+1) nu(a-b+c+1) / nu(-a+b+c+1)
//! phi_(a,n)      = nu(a-n+1) nu(n-a) / (nu(a+1) nu(-a)) * q^{-na + n(n-1)/2}
//! xi(z)          = (z)_inf (1-z)_inf
//! v_x^{1/4}      = e^{i pi x/2} q^{-x(x+1)/2}
//! ```
//!
//! Products iterate `w <- w q^2` from `w = q^{2a}`, so each factor costs one
//! multiply. The truncation index guarantees a relative tail below the
//! backend's product tolerance; any factor closer to zero than `ZERO_EPS` is
//! reported instead of silently multiplied in, because exact vanishing is
//! decided by the half-integer layer and never by floating point.

use super::halfint::HalfInt;
use super::QContext;
use crate::error::{QError, QResult};
use crate::scalar::{Cx, Real};

/// Flag threshold for a vanishing product factor.
pub const ZERO_EPS: f64 = 1e-14;

/// Immutable numerical environment for one scalar backend.
pub struct QEnv<R: Real> {
    /// q as a real scalar.
    pub q: R,
    /// ln q (negative).
    pub ln_q: R,
    /// q^2.
    pub q2: R,
    pub pi: R,
    /// Relative tolerance for infinite-product tails.
    pub prod_eps: f64,
    /// Minimum factor count before the tail test may stop a product.
    pub prod_floor: u32,
    /// Relative tolerance for series termination.
    pub series_eps: f64,
    /// ln(prod_eps * (1 - q^2)) / (2 ln q): products stop once `re(a) + k`
    /// exceeds this.
    prod_k: f64,
    zero_eps2: R,
}

impl<R: Real> QEnv<R> {
    pub fn new(ctx: &QContext) -> Self {
        let q = ctx.q();
        let digits = R::digits();
        // the raw epsilons underflow f64 above ~300 digits; the product cutoff
        // is computed in log space, and the series stop test saturates (it
        // only guards non-terminating sums)
        let prod_eps = 10f64.powi(-(digits as i32 + 3).min(300));
        let series_eps = 10f64.powi(-(digits as i32 + 2).min(300));
        let prod_k = (-(digits as f64 + 3.0) * std::f64::consts::LN_10 + (1.0 - q * q).ln()) / (2.0 * q.ln());
        let q_r = R::from_f64(q);
        QEnv {
            ln_q: q_r.ln(),
            q2: q_r.mul(&q_r),
            q: q_r,
            pi: R::pi(),
            prod_eps,
            prod_floor: ctx.prod_cutoff(),
            series_eps,
            prod_k,
            zero_eps2: R::from_f64(ZERO_EPS * ZERO_EPS),
        }
    }

    pub fn cx(&self, h: HalfInt) -> Cx<R> {
        Cx::from_f64(h.as_f64(), 0.0)
    }

    /// q^z for complex z.
    pub fn qpow(&self, z: &Cx<R>) -> Cx<R> {
        z.mul_r(&self.ln_q).exp()
    }

    /// q^x for real half-integer x.
    pub fn qpow_h(&self, x: HalfInt) -> R {
        self.ln_q.mul(&R::from_f64(x.as_f64())).exp()
    }

    /// e^{i pi z}.
    pub fn expi_pi(&self, z: &Cx<R>) -> Cx<R> {
        Cx::new(z.im.mul(&self.pi).neg(), z.re.mul(&self.pi)).exp()
    }

    /// e^{i pi x} for half-integer x (exactly a power of i).
    pub fn expi_pi_h(&self, x: HalfInt) -> Cx<R> {
        match x.twice().rem_euclid(4) {
            0 => Cx::one(),
            1 => Cx::i(),
            2 => Cx::one().neg(),
            _ => Cx::i().neg(),
        }
    }

    /// [z] = (q^z - q^{-z})/(q - q^{-1}).
    pub fn qnumber(&self, z: &Cx<R>) -> Cx<R> {
        let up = self.qpow(z);
        let dn = self.qpow(&z.neg());
        let den = self.q.sub(&R::one().div(&self.q));
        Cx::new(up.re.sub(&dn.re).div(&den), up.im.sub(&dn.im).div(&den))
    }

    /// [x] for half-integer x (real).
    pub fn qnumber_h(&self, x: HalfInt) -> R {
        let up = self.qpow_h(x);
        let den = self.q.sub(&R::one().div(&self.q));
        up.sub(&R::one().div(&up)).div(&den)
    }

    /// [d_x] = [2x + 1].
    pub fn qdim(&self, x: HalfInt) -> R {
        self.qnumber_h(x + x + super::halfint::ONE)
    }

    fn prod_len(&self, re_a: f64) -> u32 {
        let need = (self.prod_k - re_a).ceil();
        (need.max(0.0) as u32).max(self.prod_floor)
    }

    /// (a)_inf as a product of `1 - q^{2(a+k)}` factors.
    pub fn poch_inf(&self, a: &Cx<R>) -> QResult<Cx<R>> {
        let mut w = self.qpow(&a.add(a));
        let mut acc = Cx::one();
        for _ in 0..self.prod_len(a.re.to_f64()) {
            let f = Cx::one().sub(&w);
            if f.abs2().lt(&self.zero_eps2) {
                return Err(QError::ZeroFactor(format!(
                    "(a)_inf factor vanishes near a = {}",
                    a.to_c64()
                )));
            }
            acc = acc.mul(&f);
            w = w.mul_r(&self.q2);
        }
        Ok(acc)
    }

    /// (a)_n for any integer n, as a finite product (never a truncation ratio).
    pub fn poch_n(&self, a: &Cx<R>, n: i64) -> QResult<Cx<R>> {
        let mut acc = Cx::one();
        if n >= 0 {
            let mut w = self.qpow(&a.add(a));
            for _ in 0..n {
                acc = acc.mul(&Cx::one().sub(&w));
                w = w.mul_r(&self.q2);
            }
        } else {
            // (a)_{-m} = 1 / prod_{k=1..m} (1 - q^{2(a-k)})
            let mut w = self.qpow(&a.add(a)).div(&Cx::from_re(self.q2.clone()));
            for _ in 0..(-n) {
                let f = Cx::one().sub(&w);
                if f.abs2().lt(&self.zero_eps2) {
                    return Err(QError::Pole(format!("pole of (a)_n at a = {}, n = {n}", a.to_c64())));
                }
                acc = acc.mul(&f);
                w = w.div(&Cx::from_re(self.q2.clone()));
            }
            acc = acc.inv();
        }
        Ok(acc)
    }

    /// nu_inf(a): factor-by-factor principal square roots.
    ///
    /// Once `|q^{2a+2k}|` is small the factor arguments sum to less than pi,
    /// so the remaining tail takes a single square root of its plain product;
    /// this keeps large-spin evaluations from doing thousands of root
    /// extractions.
    pub fn nu_inf(&self, a: &Cx<R>) -> QResult<Cx<R>> {
        let mut w = self.qpow(&a.add(a));
        let mut acc = Cx::one();
        let len = self.prod_len(a.re.to_f64());
        let group = R::from_f64((0.2 * (1.0 - self.q2.to_f64())).powi(2));
        let mut k = 0u32;
        while k < len {
            if w.abs2().lt(&group) {
                break;
            }
            let f = Cx::one().sub(&w);
            if f.abs2().lt(&self.zero_eps2) {
                return Err(QError::ZeroFactor(format!(
                    "nu_inf factor vanishes near a = {}",
                    a.to_c64()
                )));
            }
            acc = acc.mul(&f.sqrt_principal());
            w = w.mul_r(&self.q2);
            k += 1;
        }
        let mut tail = Cx::one();
        for _ in k..len {
            tail = tail.mul(&Cx::one().sub(&w));
            w = w.mul_r(&self.q2);
        }
        Ok(acc.mul(&tail.sqrt_principal()))
    }

    /// nu_n(a) = nu_inf(a) / nu_inf(a+n) as a finite product of roots.
    pub fn nu_n(&self, a: &Cx<R>, n: i64) -> QResult<Cx<R>> {
        let mut acc = Cx::one();
        if n >= 0 {
            let mut w = self.qpow(&a.add(a));
            for _ in 0..n {
                let f = Cx::one().sub(&w);
                if f.abs2().lt(&self.zero_eps2) {
                    return Err(QError::ZeroFactor(format!("nu_n factor vanishes at a = {}", a.to_c64())));
                }
                acc = acc.mul(&f.sqrt_principal());
                w = w.mul_r(&self.q2);
            }
        } else {
            let shifted = a.add(&Cx::from_f64(n as f64, 0.0));
            acc = self.nu_n(&shifted, -n)?.inv();
        }
        Ok(acc)
    }

    /// nu_1(x) = sqrt(1 - q^{2x}), the first nu factor.
    pub fn nu1(&self, a: &Cx<R>) -> QResult<Cx<R>> {
        self.nu_n(a, 1)
    }

    /// omega(a; b, c), symmetric in b and c.
    pub fn omega(&self, a: &Cx<R>, b: &Cx<R>, c: &Cx<R>) -> QResult<Cx<R>> {
        let one = Cx::one();
        let two = Cx::from_f64(2.0, 0.0);
        let n1 = self.nu_inf(&a.add(b).add(c).add(&two))?;
        let n2 = self.nu_inf(&a.add(b).sub(c).add(&one))?;
        let n3 = self.nu_inf(&a.sub(b).add(c).add(&one))?;
        let d = self.nu_inf(&b.add(c).sub(a).add(&one))?;
        Ok(n1.mul(&n2).mul(&n3).div(&d))
    }

    /// phi_(a, n) for half-integer n.
    pub fn phi(&self, a: &Cx<R>, n: HalfInt) -> QResult<Cx<R>> {
        let one = Cx::one();
        let nc = self.cx(n);
        let num = self.nu_inf(&a.sub(&nc).add(&one))?.mul(&self.nu_inf(&nc.sub(a))?);
        let den = self.nu_inf(&a.add(&one))?.mul(&self.nu_inf(&a.neg())?);
        // q^{-na + n(n-1)/2}
        let expo = nc.mul(a).neg().add(&nc.mul(&nc.sub(&one)).mul_r(&R::from_f64(0.5)));
        Ok(num.div(&den).mul(&self.qpow(&expo)))
    }

    /// xi(z) = (z)_inf (1-z)_inf.
    pub fn xi(&self, z: &Cx<R>) -> QResult<Cx<R>> {
        Ok(self.poch_inf(z)?.mul(&self.poch_inf(&Cx::one().sub(z))?))
    }

    /// v_x^{1/k} for k in {1, 2, 4}, each by its own explicit formula.
    pub fn ribbon_root(&self, x: &Cx<R>, k: u32) -> Cx<R> {
        let xp1 = x.add(&Cx::one());
        match k {
            4 => {
                let half = R::from_f64(0.5);
                let ph = self.expi_pi(&x.mul_r(&half));
                ph.mul(&self.qpow(&x.mul(&xp1).mul_r(&half).neg()))
            }
            2 => self.expi_pi(x).mul(&self.qpow(&x.mul(&xp1).neg())),
            1 => {
                let two = R::from_f64(2.0);
                self.expi_pi(&x.mul_r(&two)).mul(&self.qpow(&x.mul(&xp1).mul_r(&two).neg()))
            }
            _ => panic!("ribbon root index must be 1, 2 or 4"),
        }
    }

    /// v_x^{1/4} for half-integer x, with the power of i taken exactly.
    pub fn ribbon_root4_h(&self, x: HalfInt) -> Cx<R> {
        // e^{i pi x / 2} q^{-x(x+1)/2}; 2x(2x+2)/8 = x(x+1)/2
        let ph = match x.twice().rem_euclid(8) {
            0 => Cx::one(),
            2 => Cx::i(),
            4 => Cx::one().neg(),
            6 => Cx::i().neg(),
            t => {
                // genuine eighth roots for half-odd spins
                let a = (t as f64) * std::f64::consts::PI / 4.0;
                Cx::from_f64(a.cos(), a.sin())
            }
        };
        let expo = (x.twice() * (x.twice() + 2)) as f64 / 8.0;
        ph.mul_r(&self.ln_q.mul(&R::from_f64(-expo)).exp())
    }

    /// Jacobi theta_j (j = 1..4) with nome q, truncated once terms are below
    /// the series tolerance.
    pub fn theta(&self, j: u8, z: &Cx<R>) -> QResult<Cx<R>> {
        // terms decay like q^{n^2}: n_max ~ sqrt(digits ln10 / hbar)
        let hbar = -self.ln_q.to_f64();
        let max_n: u32 = ((R::digits() as f64 * std::f64::consts::LN_10 / hbar).sqrt() + 12.0) as u32;
        let mut sum;
        match j {
            1 | 2 => {
                sum = Cx::zero();
                let mut sign = Cx::one();
                for n in 0..max_n {
                    // q^{(n+1/2)^2}
                    let e = (n as f64 + 0.5) * (n as f64 + 0.5);
                    let mag = self.ln_q.mul(&R::from_f64(e)).exp();
                    let trig = {
                        let arg = z.mul_r(&R::from_f64(2.0 * n as f64 + 1.0));
                        if j == 1 {
                            sin_c(&arg)
                        } else {
                            cos_c(&arg)
                        }
                    };
                    let term = trig.mul_r(&mag).mul(&sign).mul_r(&R::from_f64(2.0));
                    sum = sum.add(&term);
                    if j == 1 {
                        sign = sign.neg();
                    }
                    if term.abs2().to_f64() < self.series_eps * self.series_eps * (1.0 + sum.abs2().to_f64()) && n > 4 {
                        break;
                    }
                }
            }
            3 | 4 => {
                sum = Cx::one();
                let mut sign = if j == 4 { -1.0 } else { 1.0 };
                for n in 1..max_n {
                    let mag = self.ln_q.mul(&R::from_f64((n * n) as f64)).exp();
                    let trig = cos_c(&z.mul_r(&R::from_f64(2.0 * n as f64)));
                    let term = trig.mul_r(&mag).mul_r(&R::from_f64(2.0 * sign));
                    sum = sum.add(&term);
                    sign = -sign;
                    if term.abs2().to_f64() < self.series_eps * self.series_eps * (1.0 + sum.abs2().to_f64()) && n > 4 {
                        break;
                    }
                }
            }
            _ => return Err(QError::Domain(format!("theta index {j} not in 1..=4"))),
        }
        Ok(sum)
    }

    /// Generalized q-binomial `[x choose k] = prod_{t=1..k} [x-k+t]/[t]`.
    pub fn qbinom(&self, x: &Cx<R>, k: i64) -> Cx<R> {
        let mut acc = Cx::one();
        for t in 1..=k {
            let num = self.qnumber(&x.add(&Cx::from_f64((t - k) as f64, 0.0)));
            let den = self.qnumber_h(HalfInt::from_int(t));
            acc = acc.mul(&num);
            acc = Cx::new(acc.re.div(&den), acc.im.div(&den));
        }
        acc
    }
}

/// sin for complex argument via exponentials.
pub fn sin_c<R: Real>(z: &Cx<R>) -> Cx<R> {
    let iz = Cx::new(z.im.neg(), z.re.clone());
    let d = iz.exp().sub(&iz.neg().exp());
    // (a + bi) / (2i) = b/2 - (a/2) i
    Cx::new(d.im.mul(&R::from_f64(0.5)), d.re.mul(&R::from_f64(-0.5)))
}

/// cos for complex argument via exponentials.
pub fn cos_c<R: Real>(z: &Cx<R>) -> Cx<R> {
    let iz = Cx::new(z.im.neg(), z.re.clone());
    let s = iz.exp().add(&iz.neg().exp());
    s.mul_r(&R::from_f64(0.5))
}

/// Compensated (Kahan) accumulator for complex series.
pub struct Kahan<R: Real> {
    sum: Cx<R>,
    comp: Cx<R>,
}

impl<R: Real> Kahan<R> {
    pub fn new() -> Self {
        Kahan { sum: Cx::zero(), comp: Cx::zero() }
    }

    pub fn add(&mut self, term: &Cx<R>) {
        let y = term.sub(&self.comp);
        let t = self.sum.add(&y);
        self.comp = t.sub(&self.sum).sub(&y);
        self.sum = t;
    }

    pub fn value(&self) -> Cx<R> {
        self.sum.clone()
    }
}

impl<R: Real> Default for Kahan<R> {
    fn default() -> Self {
        Self::new()
    }
}
