//! Scalar backends for the numerical kernels.
//!
//! Every kernel in this crate is generic over [`Real`]. Two backends are
//! provided:
//!
//! - [`Sf64`]: an f64 mantissa with a separate binary exponent. Same 53-bit
//!   precision as f64 but an essentially unbounded exponent range, which the
//!   intermediate products of q-factorials need long before the final values
//!   (which are all of moderate size) do.
//! - [`RBig`]: an arbitrary-precision float (256 bits by default) for the
//!   extended mode. 6j sums cancel catastrophically above spin ~8 and the
//!   Pochhammer intermediates overflow binary64 range at the same point.
//!
//! [`Cx`] is the complex type over either backend. Its square root is the
//! principal branch with `Arg ∈ (-pi, pi]`: on the negative real axis the
//! root is `+i sqrt(|x|)`, which is what all sign conventions in the 6j layer
//! are built on.

use std::cell::{Cell, RefCell};

use astro_float::{BigFloat, Consts, RoundingMode};

const RM: RoundingMode = RoundingMode::ToEven;

/// Bits of mantissa used by the extended backend.
pub const EXTENDED_PRECISION_BITS: usize = 256;

thread_local! {
    static BIG_PREC: Cell<usize> = const { Cell::new(EXTENDED_PRECISION_BITS) };
    static BIG_CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Set the working precision (in bits) of the [`RBig`] backend on this thread.
pub fn set_big_precision(bits: usize) {
    BIG_PREC.with(|p| p.set(bits));
}

/// Current working precision (in bits) of the [`RBig`] backend on this thread.
pub fn big_precision() -> usize {
    BIG_PREC.with(|p| p.get())
}

/// Real scalar interface required by the kernels.
pub trait Real: Clone + std::fmt::Debug {
    /// Decimal digits the backend can resolve; drives series/product cutoffs.
    fn digits() -> u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn zero() -> Self;
    fn one() -> Self;
    fn pi() -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;

    /// Square root of a non-negative value.
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    /// Natural log of a positive value.
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(y: &Self, x: &Self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;

    /// `self < o`.
    fn lt(&self, o: &Self) -> bool {
        self.sub(o).is_negative()
    }
}

// ---------------------------------------------------------------------------
// Sf64: scaled f64
// ---------------------------------------------------------------------------

/// f64 mantissa in `±[0.5, 1)` with an explicit binary exponent.
#[derive(Clone, Copy, Debug)]
pub struct Sf64 {
    m: f64,
    e: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 {
        return (0.0, 0);
    }
    debug_assert!(x.is_finite(), "non-finite mantissa: {x}");
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    if exp_field == 0 {
        // subnormal: renormalise first
        let (m, e) = frexp(x * 2f64.powi(120));
        return (m, e - 120);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp_field - 1022)
}

fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    if e > 1024 {
        return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    if e < -1080 {
        return 0.0;
    }
    if e.abs() <= 1000 {
        m * 2f64.powi(e as i32)
    } else {
        let half = e / 2;
        m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }
}

impl Sf64 {
    fn norm(m: f64, e: i64) -> Self {
        if m == 0.0 {
            return Sf64 { m: 0.0, e: 0 };
        }
        let (m2, de) = frexp(m);
        Sf64 { m: m2, e: e + de }
    }

    /// Binary exponent, for overflow diagnostics in tests.
    pub fn exponent(&self) -> i64 {
        self.e
    }
}

impl Real for Sf64 {
    fn digits() -> u32 {
        15
    }

    fn from_f64(x: f64) -> Self {
        let (m, e) = frexp(x);
        Sf64 { m, e }
    }

    fn to_f64(&self) -> f64 {
        ldexp(self.m, self.e)
    }

    fn zero() -> Self {
        Sf64 { m: 0.0, e: 0 }
    }

    fn one() -> Self {
        Sf64 { m: 0.5, e: 1 }
    }

    fn pi() -> Self {
        Self::from_f64(std::f64::consts::PI)
    }

    fn add(&self, o: &Self) -> Self {
        if self.m == 0.0 {
            return *o;
        }
        if o.m == 0.0 {
            return *self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let de = hi.e - lo.e;
        if de > 1080 {
            return *hi;
        }
        Sf64::norm(hi.m + ldexp(lo.m, -de), hi.e)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        Sf64::norm(self.m * o.m, self.e + o.e)
    }

    fn div(&self, o: &Self) -> Self {
        assert!(o.m != 0.0, "division by zero");
        Sf64::norm(self.m / o.m, self.e - o.e)
    }

    fn neg(&self) -> Self {
        Sf64 { m: -self.m, e: self.e }
    }

    fn abs(&self) -> Self {
        Sf64 { m: self.m.abs(), e: self.e }
    }

    fn sqrt(&self) -> Self {
        debug_assert!(self.m >= 0.0);
        if self.m == 0.0 {
            return *self;
        }
        let (m, e) = if self.e & 1 != 0 { (self.m * 2.0, self.e - 1) } else { (self.m, self.e) };
        Sf64::norm(m.sqrt(), e / 2)
    }

    fn exp(&self) -> Self {
        let x = self.to_f64();
        debug_assert!(x.is_finite(), "exp argument out of range");
        // split off the power of two so the result never overflows f64
        let k = (x / std::f64::consts::LN_2).floor();
        let r = x - k * std::f64::consts::LN_2;
        Sf64::norm(r.exp(), k as i64)
    }

    fn ln(&self) -> Self {
        debug_assert!(self.m > 0.0);
        Self::from_f64(self.m.ln() + self.e as f64 * std::f64::consts::LN_2)
    }

    fn sin(&self) -> Self {
        Self::from_f64(self.to_f64().sin())
    }

    fn cos(&self) -> Self {
        Self::from_f64(self.to_f64().cos())
    }

    fn atan2(y: &Self, x: &Self) -> Self {
        if y.m == 0.0 && x.m == 0.0 {
            return Self::zero();
        }
        // atan2 is scale invariant: bring both to a common exponent
        let e = x.e.max(y.e);
        let xv = ldexp(x.m, x.e - e);
        let yv = ldexp(y.m, y.e - e);
        Self::from_f64(yv.atan2(xv))
    }

    fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    fn is_negative(&self) -> bool {
        self.m < 0.0
    }
}

// ---------------------------------------------------------------------------
// RBig: astro-float backend
// ---------------------------------------------------------------------------

/// Arbitrary-precision real, precision set per thread via [`set_big_precision`].
#[derive(Clone, Debug)]
pub struct RBig(pub BigFloat);

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    BIG_CONSTS.with(|c| f(&mut c.borrow_mut()))
}

impl Real for RBig {
    fn digits() -> u32 {
        // 256 bits ~ 77 decimal digits; stay a little conservative
        (big_precision() as f64 * 0.301) as u32 - 2
    }

    fn from_f64(x: f64) -> Self {
        RBig(BigFloat::from_f64(x, big_precision()))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        match self.0.as_raw_parts() {
            Some((words, _, sign, e, _)) => {
                let nw = words.len();
                let mut top = words[nw - 1] as u128;
                let mut bits = 64i32;
                if nw > 1 {
                    top = (top << 64) | words[nw - 2] as u128;
                    bits = 128;
                }
                let frac = (top as f64) * 2f64.powi(-bits);
                let mag = if e > 1080 {
                    f64::INFINITY
                } else if e < -1080 {
                    0.0
                } else {
                    ldexp(frac, e as i64)
                };
                if sign == astro_float::Sign::Neg {
                    -mag
                } else {
                    mag
                }
            }
            None => f64::NAN,
        }
    }

    fn zero() -> Self {
        RBig(BigFloat::from_f64(0.0, big_precision()))
    }

    fn one() -> Self {
        RBig(BigFloat::from_f64(1.0, big_precision()))
    }

    fn pi() -> Self {
        RBig(with_consts(|cc| cc.pi(big_precision(), RM)))
    }

    fn add(&self, o: &Self) -> Self {
        RBig(self.0.add(&o.0, big_precision(), RM))
    }

    fn sub(&self, o: &Self) -> Self {
        RBig(self.0.sub(&o.0, big_precision(), RM))
    }

    fn mul(&self, o: &Self) -> Self {
        RBig(self.0.mul(&o.0, big_precision(), RM))
    }

    fn div(&self, o: &Self) -> Self {
        RBig(self.0.div(&o.0, big_precision(), RM))
    }

    fn neg(&self) -> Self {
        RBig(self.0.neg())
    }

    fn abs(&self) -> Self {
        RBig(self.0.abs())
    }

    fn sqrt(&self) -> Self {
        RBig(self.0.sqrt(big_precision(), RM))
    }

    fn exp(&self) -> Self {
        RBig(with_consts(|cc| self.0.exp(big_precision(), RM, cc)))
    }

    fn ln(&self) -> Self {
        RBig(with_consts(|cc| self.0.ln(big_precision(), RM, cc)))
    }

    fn sin(&self) -> Self {
        RBig(with_consts(|cc| self.0.sin(big_precision(), RM, cc)))
    }

    fn cos(&self) -> Self {
        RBig(with_consts(|cc| self.0.cos(big_precision(), RM, cc)))
    }

    fn atan2(y: &Self, x: &Self) -> Self {
        // quadrant split on top of atan
        if x.is_zero() && y.is_zero() {
            return Self::zero();
        }
        if x.is_zero() {
            let half_pi = Self::pi().mul(&Self::from_f64(0.5));
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let base = RBig(with_consts(|cc| {
            y.0.div(&x.0, big_precision(), RM).atan(big_precision(), RM, cc)
        }));
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base.sub(&Self::pi())
        } else {
            // y >= 0 (including exactly zero): land on the +pi side of the cut
            base.add(&Self::pi())
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }
}

// ---------------------------------------------------------------------------
// Complex numbers over a Real backend
// ---------------------------------------------------------------------------

/// Complex number over a [`Real`] backend.
#[derive(Clone, Debug)]
pub struct Cx<R: Real> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn zero() -> Self {
        Cx::new(R::zero(), R::zero())
    }

    pub fn one() -> Self {
        Cx::new(R::one(), R::zero())
    }

    pub fn i() -> Self {
        Cx::new(R::zero(), R::one())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Cx::new(R::from_f64(re), R::from_f64(im))
    }

    pub fn from_re(re: R) -> Self {
        Cx::new(re, R::zero())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Self {
        Cx::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, o: &Self) -> Self {
        Cx::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Cx::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Cx::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn mul_r(&self, s: &R) -> Self {
        Cx::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        assert!(!d.is_zero(), "complex division by zero");
        let n = self.mul(&o.conj());
        Cx::new(n.re.div(&d), n.im.div(&d))
    }

    pub fn inv(&self) -> Self {
        Self::one().div(self)
    }

    pub fn abs2(&self) -> R {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> R {
        self.abs2().sqrt()
    }

    /// Argument in `(-pi, pi]`; anything with a zero imaginary part and a
    /// negative real part lands exactly on `+pi`.
    pub fn arg(&self) -> R {
        if self.im.is_zero() {
            return if self.re.is_negative() { R::pi() } else { R::zero() };
        }
        R::atan2(&self.im, &self.re)
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Cx::new(m.mul(&self.im.cos()), m.mul(&self.im.sin()))
    }

    /// Principal square root: `sqrt(|z|) e^{i Arg(z)/2}` with `Arg ∈ (-pi, pi]`
    /// (so the negative real axis maps to `+i sqrt|z|`), computed algebraically
    /// from real square roots only.
    pub fn sqrt_principal(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let r = self.abs();
        let half = R::from_f64(0.5);
        if !self.re.is_negative() {
            // u = sqrt((r + re)/2) > 0, v = im / (2u)
            let u = r.add(&self.re).mul(&half).sqrt();
            let v = self.im.div(&u.add(&u));
            Cx::new(u, v)
        } else {
            // d = sqrt((r - re)/2) > 0; sqrt(z) = (|im|/(2d), sign(im) d)
            // with sign(0) = +1 to land on the +i side of the cut
            let d = r.sub(&self.re).mul(&half).sqrt();
            let u = self.im.abs().div(&d.add(&d));
            if self.im.is_negative() {
                Cx::new(u, d.neg())
            } else {
                Cx::new(u, d)
            }
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sf64_roundtrip_and_range() {
        let a = Sf64::from_f64(1.5e300);
        let b = a.mul(&a).mul(&a); // 3.375e900, far outside f64
        let c = b.div(&a).div(&a);
        assert!((c.to_f64() - 1.5e300).abs() / 1.5e300 < 1e-15);
        assert!(b.exponent() > 2900);
    }

    #[test]
    fn sf64_add_across_scales() {
        let a = Sf64::from_f64(1.0);
        let b = Sf64::from_f64(1e-200);
        assert_eq!(a.add(&b).to_f64(), 1.0);
        let c = Sf64::from_f64(3.0).add(&Sf64::from_f64(4.0));
        assert_eq!(c.to_f64(), 7.0);
    }

    #[test]
    fn sqrt_principal_branch() {
        // negative real axis must give +i sqrt|x|
        let z = Cx::<Sf64>::from_f64(-4.0, 0.0);
        let r = z.sqrt_principal();
        assert!(r.re.to_f64().abs() < 1e-15);
        assert!((r.im.to_f64() - 2.0).abs() < 1e-15);

        let z = Cx::<RBig>::from_f64(-1.0, 0.0);
        let r = z.sqrt_principal().to_c64();
        assert!((r.im - 1.0).abs() < 1e-15 && r.re.abs() < 1e-30);
    }

    #[test]
    fn big_exp_matches_f64() {
        let x = RBig::from_f64(-0.75);
        assert!((x.exp().to_f64() - (-0.75f64).exp()).abs() < 1e-15);
        let y = RBig::from_f64(0.6);
        let pi = RBig::pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((RBig::atan2(&y, &x).to_f64() - 0.6f64.atan2(-0.75)).abs() < 1e-15);
    }

    #[test]
    fn complex_ops_consistency() {
        let z = Cx::<Sf64>::from_f64(0.3, -0.8);
        let w = z.mul(&z.inv());
        assert!((w.to_c64() - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-14);
        let s = z.sqrt_principal();
        assert!((s.mul(&s).to_c64() - z.to_c64()).norm() < 1e-14);
    }
}
