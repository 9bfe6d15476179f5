//! Verification harness: deterministic randomized sweeps over every identity
//! in the library, collected into machine-readable suite reports.

mod rng;
mod suites;

use serde::{Deserialize, Serialize};

use crate::error::{QError, QResult};
use crate::qnum::{HalfInt, QContext};

pub use rng::SplitMix64;

/// Knobs of one verification run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Quadrature nodes for the integral identities.
    pub nodes: u32,
    /// Largest discrete spin in sweeps.
    pub max_spin: HalfInt,
    /// Random samples per identity for the continued families.
    pub samples: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, nodes: 1024, max_spin: HalfInt::from_int(2), samples: 50 }
    }
}

/// One identity inside a suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub max_residual: f64,
    pub samples: u32,
    pub tol: f64,
    pub pass: bool,
}

/// Result of one suite run; deterministic for a given `(ctx, config)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub q: f64,
    pub hbar: f64,
    pub seed: u64,
    pub nodes: u32,
    pub max_spin: HalfInt,
    pub identities: Vec<IdentityReport>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, ctx: &QContext, cfg: &SuiteConfig) -> Self {
        SuiteReport {
            suite: suite.into(),
            q: ctx.q(),
            hbar: ctx.hbar(),
            seed: cfg.seed,
            nodes: cfg.nodes,
            max_spin: cfg.max_spin,
            identities: Vec::new(),
            pass: true,
        }
    }

    fn push(&mut self, name: &str, max_residual: f64, samples: u32, tol: f64) {
        let pass = max_residual.is_finite() && max_residual < tol;
        self.pass &= pass;
        self.identities.push(IdentityReport { name: name.into(), max_residual, samples, tol, pass });
    }

    /// The largest residual over all identities.
    pub fn max_residual(&self) -> f64 {
        self.identities.iter().map(|i| i.max_residual).fold(0.0, f64::max)
    }

    /// One line per identity, `PASS`/`FAIL` first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.identities {
            out.push_str(&format!(
                "{} {:<38} max residual {:.3e}  (tol {:.1e}, {} samples)\n",
                if i.pass { "PASS" } else { "FAIL" },
                format!("{}::{}", self.suite, i.name),
                i.max_residual,
                i.tol,
                i.samples
            ));
        }
        out
    }
}

/// Names understood by [`run_suite`].
pub const SUITES: [&str; 10] = [
    "cg",
    "sixj0",
    "sixj1",
    "sixj3",
    "lambda",
    "intertwiner",
    "entrela",
    "completeness",
    "askey",
    "asymptotics",
];

/// Run one named verification suite.
pub fn run_suite(name: &str, ctx: &QContext, cfg: &SuiteConfig) -> QResult<SuiteReport> {
    match name {
        "cg" => suites::cg(ctx, cfg),
        "sixj0" => suites::sixj0(ctx, cfg),
        "sixj1" => suites::sixj1(ctx, cfg),
        "sixj3" => suites::sixj3(ctx, cfg),
        "lambda" => suites::lambda(ctx, cfg),
        "intertwiner" => suites::intertwiner(ctx, cfg),
        "entrela" => suites::entrela(ctx, cfg),
        "completeness" => suites::completeness(ctx, cfg),
        "askey" => suites::askey(ctx, cfg),
        "asymptotics" => suites::asymptotics(ctx, cfg),
        _ => Err(QError::Domain(format!("unknown suite `{name}`; known: {}", SUITES.join(", ")))),
    }
}

/// Weight sampling shared by the suites: `m` uniform in a half-integer range,
/// `rho` uniform in the fundamental interval with a guard band around the
/// degenerate lines; triples are rejected until regular.
pub mod sampling {
    use super::rng::SplitMix64;
    use crate::error::{QError, QResult};
    use crate::lorentz::{degenerate_triple, PrincipalWeight};
    use crate::qnum::{ComplexSpin, HalfInt, QContext};
    use num_complex::Complex64;

    /// A generic continuous spin `s + 0.137 + 0.293 i`, `s` half-integer in
    /// `[-2, 2]`, deterministically off the half-integer lattice.
    pub fn generic_spin(rng: &mut SplitMix64) -> ComplexSpin {
        let s = rng.below(9) as i64 - 4;
        ComplexSpin::new(Complex64::new(s as f64 / 2.0 + 0.137, 0.293))
    }

    /// Uniform half-integer in `[-max, max]`.
    pub fn offset(rng: &mut SplitMix64, max: HalfInt) -> HalfInt {
        HalfInt::from_twice(rng.below(2 * max.twice() as u64 + 1) as i64 - max.twice())
    }

    /// Uniform spin in `[0, max]`.
    pub fn spin(rng: &mut SplitMix64, max: HalfInt) -> HalfInt {
        HalfInt::from_twice(rng.below(max.twice() as u64 + 1) as i64)
    }

    /// One principal weight with the rho guard band.
    pub fn weight(rng: &mut SplitMix64, ctx: &QContext) -> PrincipalWeight {
        let guard = 1e-3 * std::f64::consts::PI / ctx.hbar();
        let half = ctx.rho_period() / 2.0;
        loop {
            let m = HalfInt::from_twice(rng.below(9) as i64 - 4);
            let rho = rng.uniform(-half, half);
            if rho.abs() > guard && (rho.abs() - half).abs() > guard {
                return PrincipalWeight::new(ctx, m, rho);
            }
        }
    }

    /// A regular weight triple (no degenerate rho lines), with the total
    /// weight integral so the intertwiner space is non-trivial.
    pub fn weight_triple(
        rng: &mut SplitMix64,
        ctx: &QContext,
    ) -> QResult<(PrincipalWeight, PrincipalWeight, PrincipalWeight)> {
        for _ in 0..200 {
            let wx = weight(rng, ctx);
            let wy = weight(rng, ctx);
            let wz = weight(rng, ctx);
            if !(wx.m + wy.m + wz.m).is_integer() {
                continue;
            }
            if !degenerate_triple(ctx, &wx, &wy, &wz) {
                return Ok((wx, wy, wz));
            }
        }
        Err(QError::Degenerate("degenerate sample rejection exhausted".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism_and_unknown_suite() {
        let ctx = QContext::new(0.6).unwrap();
        let cfg = SuiteConfig { samples: 3, max_spin: HalfInt::from_int(1), ..Default::default() };
        let a = run_suite("sixj1", &ctx, &cfg).unwrap();
        let b = run_suite("sixj1", &ctx, &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.pass);
        assert!(run_suite("nope", &ctx, &cfg).is_err());
    }
}
