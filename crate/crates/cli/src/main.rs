//! `qlorentz`: evaluate continued 6j symbols, Lambda coefficients, reduced
//! intertwiner elements and the q-Racah/Askey-Wilson data, run verification
//! suites, and dump tables.
//!
//! Exit codes: 0 success, 1 residual failure, 2 usage error, 3 numerical
//! pole/degeneracy at the requested point.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qlorentz::harness::{run_suite, SuiteConfig};
use qlorentz::lorentz::{self, PrincipalWeight};
use qlorentz::qnum::{self, ComplexSpin, HalfInt};
use qlorentz::qpolys;
use qlorentz::sixj;
use qlorentz::{PrecisionMode, QContext, QError};

#[derive(Parser)]
#[command(name = "qlorentz", about = "Complex continuations of quantum 6j symbols and principal-series intertwiners", version)]
struct Cli {
    #[command(flatten)]
    ctx: CtxArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CtxArgs {
    /// Deformation parameter in (0, 1).
    #[arg(long, global = true, default_value_t = 0.6)]
    q: f64,
    /// Override hbar = -ln q (must be consistent with q).
    #[arg(long, global = true)]
    hbar: Option<f64>,
    /// Infinite-product truncation floor.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    /// Identity-residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Precision mode (also via QLORENTZ_PREC).
    #[arg(long, global = true, value_enum)]
    prec: Option<Prec>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prec {
    Std,
    Ext,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one quantity and print it as JSON with 17 significant digits.
    Eval {
        #[command(subcommand)]
        kind: EvalKind,
    },
    /// Run a verification suite and report per-identity residuals.
    Verify {
        /// One of: cg, sixj0, sixj1, sixj3, lambda, intertwiner, entrela,
        /// completeness, askey, asymptotics, all.
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1024)]
        nodes: u32,
        /// Largest spin in sweeps, e.g. 2 or 3/2.
        #[arg(long, default_value = "2")]
        max_spin: String,
        #[arg(long, default_value_t = 50)]
        samples: u32,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
    /// Emit a table over a spin/weight grid.
    Table {
        #[command(subcommand)]
        kind: TableKind,
    },
}

#[derive(Subcommand)]
enum EvalKind {
    /// [x] = (q^x - q^-x)/(q - q^-1).
    Qnum { x: String },
    /// (a)_inf, or (a)_n with --n.
    Poch {
        a: String,
        #[arg(long)]
        n: Option<i64>,
    },
    /// 6j(0) in display order: {p1 p2 p3; p4 p5 p6}.
    Sixj0 { p1: String, p2: String, p3: String, p4: String, p5: String, p6: String },
    /// 6j(1) first family {x1 x2 C; A B x3}.
    Sixj1a { x1: String, x2: String, c: String, a: String, b: String, x3: String },
    /// 6j(1) second family {B x1 x3; A x2 x4}.
    Sixj1b { b: String, x1: String, x3: String, a: String, x2: String, x4: String },
    /// 6j(3) {z1 y1 x2; A x1 y2}.
    Sixj3 { z1: String, y1: String, x2: String, a: String, x1: String, y2: String },
    /// Clebsch-Gordan coefficient phi(A,B,C; i,j,k).
    Cg { a: String, b: String, c: String, i: String, j: String, k: String },
    /// Lambda^{BC}_{AD} at a principal weight.
    Lambda {
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "0")]
        m: String,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
    },
    /// Reduced intertwiner element [R P T] at three principal weights.
    Reduced {
        #[arg(long)]
        r: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        t: String,
        #[arg(long, default_value = "0")]
        mx: String,
        #[arg(long)]
        rx: f64,
        #[arg(long, default_value = "0")]
        my: String,
        #[arg(long)]
        ry: f64,
        #[arg(long, default_value = "0")]
        mz: String,
        #[arg(long)]
        rz: f64,
    },
    /// Haar coefficient [A' B' C'; A B C] (truncated series).
    Entrela {
        #[arg(long)]
        ap: String,
        #[arg(long)]
        bp: String,
        #[arg(long)]
        cp: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long, default_value = "0")]
        mx: String,
        #[arg(long)]
        rx: f64,
        #[arg(long, default_value = "0")]
        my: String,
        #[arg(long)]
        ry: f64,
        #[arg(long, default_value = "0")]
        mz: String,
        #[arg(long)]
        rz: f64,
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Factorisation normalisation M at three principal weights.
    Mnorm {
        #[arg(long, default_value = "0")]
        mx: String,
        #[arg(long)]
        rx: f64,
        #[arg(long, default_value = "0")]
        my: String,
        #[arg(long)]
        ry: f64,
        #[arg(long, default_value = "0")]
        mz: String,
        #[arg(long)]
        rz: f64,
    },
    /// Gamma coefficient of the reformulated completeness identity.
    Gamma {
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "0")]
        mx: String,
        #[arg(long)]
        rx: f64,
        #[arg(long, default_value = "0")]
        my: String,
        #[arg(long)]
        ry: f64,
        #[arg(long, default_value = "0")]
        mz: String,
        #[arg(long)]
        rz: f64,
    },
    /// q-Racah polynomial p_n(mu(x)) with exponent parameters.
    Racah {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: u64,
    },
    /// Askey-Wilson polynomial p_n(tau(z)) with exponent parameters.
    Aw {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        z: String,
    },
    /// Plancherel density at a principal weight.
    Plancherel {
        #[arg(long, default_value = "0")]
        m: String,
        #[arg(long)]
        rho: f64,
    },
}

#[derive(Subcommand)]
enum TableKind {
    /// Reduced elements over all (A, B, C) up to --max-spin at fixed weights.
    Reduced {
        #[arg(long, default_value = "2")]
        max_spin: String,
        #[arg(long, default_value = "0")]
        mx: String,
        #[arg(long)]
        rx: f64,
        #[arg(long, default_value = "0")]
        my: String,
        #[arg(long)]
        ry: f64,
        #[arg(long, default_value = "0")]
        mz: String,
        #[arg(long)]
        rz: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Diagonal Lambda^{BC}_A over spins up to --max-spin at a fixed weight.
    Lambda {
        #[arg(long, default_value = "2")]
        max_spin: String,
        #[arg(long, default_value = "0")]
        m: String,
        #[arg(long)]
        rho: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Askey-Wilson polynomial samples over the spectral circle.
    Aw {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 4)]
        degree: u64,
        #[arg(long, default_value_t = 32)]
        nodes: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

fn parse_halfint(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| format!("bad half-integer `{s}`: {e}"))
}

/// Complex numbers as `a`, `a+bi`, `a-bi`, or `a,b`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if let Some((re, im)) = t.split_once(',') {
        let re: f64 = re.trim().parse().map_err(|_| format!("bad complex `{s}`"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad complex `{s}`"))?;
        return Ok(Complex64::new(re, im));
    }
    if let Some(body) = t.strip_suffix('i') {
        // find the sign splitting real and imaginary parts
        let b = body.as_bytes();
        for k in (1..b.len()).rev() {
            if (b[k] == b'+' || b[k] == b'-') && b[k - 1] != b'e' && b[k - 1] != b'E' {
                let re: f64 = body[..k].parse().map_err(|_| format!("bad complex `{s}`"))?;
                let im: f64 = match &body[k..] {
                    "+" => 1.0,
                    "-" => -1.0,
                    rest => rest.parse().map_err(|_| format!("bad complex `{s}`"))?,
                };
                return Ok(Complex64::new(re, im));
            }
        }
        let im: f64 = body.parse().map_err(|_| format!("bad complex `{s}`"))?;
        return Ok(Complex64::new(0.0, im));
    }
    let re: f64 = t.parse().map_err(|_| format!("bad complex `{s}`"))?;
    Ok(Complex64::new(re, 0.0))
}

fn spin_arg(s: &str) -> Result<ComplexSpin, String> {
    Ok(ComplexSpin::new(parse_complex(s)?))
}

fn json_value(v: Complex64) -> String {
    format!("{{\"re\": {:.16e}, \"im\": {:.16e}}}", v.re, v.im)
}

fn build_ctx(args: &CtxArgs) -> Result<QContext, String> {
    if let Some(h) = args.hbar {
        if ((-args.q.ln()) - h).abs() > 1e-12 {
            return Err(format!("--hbar {h} is inconsistent with q = {} (hbar = -ln q)", args.q));
        }
    }
    let mut ctx = QContext::new(args.q).map_err(|e| e.to_string())?.with_tol(args.tol);
    if let Some(t) = args.trunc {
        ctx = ctx.with_prod_cutoff(t);
    }
    let prec = match args.prec {
        Some(Prec::Ext) => PrecisionMode::Extended,
        Some(Prec::Std) => PrecisionMode::Standard,
        None => match std::env::var("QLORENTZ_PREC").ok().as_deref() {
            Some("ext") | Some("extended") => PrecisionMode::Extended,
            _ => PrecisionMode::Standard,
        },
    };
    Ok(ctx.with_precision(prec))
}

fn weight(ctx: &QContext, m: &str, rho: f64) -> Result<PrincipalWeight, String> {
    Ok(PrincipalWeight::new(ctx, parse_halfint(m)?, rho))
}

fn run_eval(ctx: &QContext, kind: &EvalKind) -> Result<String, QError> {
    let dom = QError::Domain;
    let v = match kind {
        EvalKind::Qnum { x } => Ok(qnum::qnumber(ctx, parse_complex(x).map_err(dom)?)),
        EvalKind::Poch { a, n } => {
            let a = parse_complex(a).map_err(dom)?;
            match n {
                Some(n) => qnum::poch_n(ctx, a, *n),
                None => qnum::poch_inf(ctx, a),
            }
        }
        EvalKind::Sixj0 { p1, p2, p3, p4, p5, p6 } => {
            let p: Result<Vec<HalfInt>, _> = [p1, p2, p3, p4, p5, p6].iter().map(|s| parse_halfint(s)).collect();
            let p = p.map_err(dom)?;
            sixj::sixj0(ctx, [p[0], p[1], p[2], p[3], p[4], p[5]]).map(|r| Complex64::new(r, 0.0))
        }
        EvalKind::Sixj1a { x1, x2, c, a, b, x3 } => sixj::sixj1_a(
            ctx,
            spin_arg(x1).map_err(dom)?,
            spin_arg(x2).map_err(dom)?,
            parse_halfint(c).map_err(dom)?,
            parse_halfint(a).map_err(dom)?,
            parse_halfint(b).map_err(dom)?,
            spin_arg(x3).map_err(dom)?,
        ),
        EvalKind::Sixj1b { b, x1, x3, a, x2, x4 } => sixj::sixj1_b(
            ctx,
            parse_halfint(b).map_err(dom)?,
            spin_arg(x1).map_err(dom)?,
            spin_arg(x3).map_err(dom)?,
            parse_halfint(a).map_err(dom)?,
            spin_arg(x2).map_err(dom)?,
            spin_arg(x4).map_err(dom)?,
        ),
        EvalKind::Sixj3 { z1, y1, x2, a, x1, y2 } => sixj::sixj3(
            ctx,
            spin_arg(z1).map_err(dom)?,
            spin_arg(y1).map_err(dom)?,
            spin_arg(x2).map_err(dom)?,
            parse_halfint(a).map_err(dom)?,
            spin_arg(x1).map_err(dom)?,
            spin_arg(y2).map_err(dom)?,
        ),
        EvalKind::Cg { a, b, c, i, j, k } => {
            let h: Result<Vec<HalfInt>, _> = [a, b, c, i, j, k].iter().map(|s| parse_halfint(s)).collect();
            let h = h.map_err(dom)?;
            Ok(Complex64::new(qlorentz::su2q::cg(ctx, h[0], h[1], h[2], h[3], h[4], h[5]), 0.0))
        }
        EvalKind::Lambda { b, c, a, d, m, rho } => {
            let w = weight(ctx, m, *rho).map_err(dom)?;
            lorentz::lambda_coeff(
                ctx,
                parse_halfint(b).map_err(dom)?,
                parse_halfint(c).map_err(dom)?,
                parse_halfint(a).map_err(dom)?,
                parse_halfint(d).map_err(dom)?,
                &w.label(),
            )
        }
        EvalKind::Reduced { r, p, t, mx, rx, my, ry, mz, rz } => lorentz::reduced_element(
            ctx,
            &weight(ctx, mx, *rx).map_err(dom)?,
            &weight(ctx, my, *ry).map_err(dom)?,
            &weight(ctx, mz, *rz).map_err(dom)?,
            parse_halfint(r).map_err(dom)?,
            parse_halfint(p).map_err(dom)?,
            parse_halfint(t).map_err(dom)?,
        ),
        EvalKind::Entrela { ap, bp, cp, a, b, c, mx, rx, my, ry, mz, rz, kmax } => {
            let spins = lorentz::EntrelaSpins {
                a_p: parse_halfint(ap).map_err(dom)?,
                b_p: parse_halfint(bp).map_err(dom)?,
                c_p: parse_halfint(cp).map_err(dom)?,
                a: parse_halfint(a).map_err(dom)?,
                b: parse_halfint(b).map_err(dom)?,
                c: parse_halfint(c).map_err(dom)?,
            };
            lorentz::entrela(
                ctx,
                &spins,
                &weight(ctx, mx, *rx).map_err(dom)?,
                &weight(ctx, my, *ry).map_err(dom)?,
                &weight(ctx, mz, *rz).map_err(dom)?,
                *kmax,
                ctx.tol(),
            )
        }
        EvalKind::Mnorm { mx, rx, my, ry, mz, rz } => lorentz::m_norm(
            ctx,
            &weight(ctx, mx, *rx).map_err(dom)?,
            &weight(ctx, my, *ry).map_err(dom)?,
            &weight(ctx, mz, *rz).map_err(dom)?,
        )
        .map(|r| Complex64::new(r, 0.0)),
        EvalKind::Gamma { b, mx, rx, my, ry, mz, rz } => lorentz::gamma_coeff(
            ctx,
            &weight(ctx, mx, *rx).map_err(dom)?,
            &weight(ctx, my, *ry).map_err(dom)?,
            &weight(ctx, mz, *rz).map_err(dom)?,
            parse_halfint(b).map_err(dom)?,
        ),
        EvalKind::Racah { alpha, beta, gamma, delta, n, x } => {
            let p = qpolys::RacahParams {
                alpha: parse_complex(alpha).map_err(dom)?,
                beta: parse_complex(beta).map_err(dom)?,
                gamma: parse_complex(gamma).map_err(dom)?,
                delta: parse_complex(delta).map_err(dom)?,
                n_lattice: (*n).max(*x),
            };
            qpolys::racah_p(ctx, &p, *n, *x)
        }
        EvalKind::Aw { alpha, beta, gamma, delta, n, z } => {
            let p = qpolys::AWParams {
                alpha: parse_complex(alpha).map_err(dom)?,
                beta: parse_complex(beta).map_err(dom)?,
                gamma: parse_complex(gamma).map_err(dom)?,
                delta: parse_complex(delta).map_err(dom)?,
            };
            qpolys::aw_p(ctx, &p, *n, parse_complex(z).map_err(dom)?)
        }
        EvalKind::Plancherel { m, rho } => {
            let w = weight(ctx, m, *rho).map_err(dom)?;
            Ok(Complex64::new(lorentz::plancherel_density(ctx, &w), 0.0))
        }
    }?;
    Ok(json_value(v))
}

fn write_table(
    rows: Vec<(String, Complex64)>,
    header: &str,
    format: Format,
    out: Option<std::path::PathBuf>,
) -> Result<(), String> {
    let mut text = String::new();
    match format {
        Format::Csv => {
            text.push_str(header);
            text.push_str(",re,im\n");
            for (key, v) in rows {
                text.push_str(&format!("{key},{:.16e},{:.16e}\n", v.re, v.im));
            }
        }
        Format::Jsonl => {
            let cols: Vec<&str> = header.split(',').collect();
            for (key, v) in rows {
                let keys: Vec<&str> = key.split(',').collect();
                let mut obj = String::from("{");
                for (c, k) in cols.iter().zip(&keys) {
                    obj.push_str(&format!("\"{c}\": \"{k}\", "));
                }
                obj.push_str(&format!("\"re\": {:.16e}, \"im\": {:.16e}}}", v.re, v.im));
                text.push_str(&obj);
                text.push('\n');
            }
        }
    }
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_table(ctx: &QContext, kind: &TableKind) -> Result<(), String> {
    match kind {
        TableKind::Reduced { max_spin, mx, rx, my, ry, mz, rz, format, out } => {
            let smax = parse_halfint(max_spin)?;
            let wx = weight(ctx, mx, *rx)?;
            let wy = weight(ctx, my, *ry)?;
            let wz = weight(ctx, mz, *rz)?;
            let block = lorentz::ReducedBlock::new(ctx, wx, wy, wz).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for a in qnum::spins_up_to(smax) {
                for b in qnum::spins_up_to(smax) {
                    for c in qnum::triangle_range(a, b).filter(|c| *c <= smax) {
                        let v = block.get(a, b, c).map_err(|e| e.to_string())?;
                        rows.push((format!("{a},{b},{c}"), v));
                    }
                }
            }
            write_table(rows, "A,B,C", *format, out.clone())
        }
        TableKind::Lambda { max_spin, m, rho, format, out } => {
            let smax = parse_halfint(max_spin)?;
            let w = weight(ctx, m, *rho)?;
            let label = w.label();
            let mut rows = Vec::new();
            for a in qnum::spins_up_to(smax) {
                for b in qnum::spins_up_to(smax) {
                    for c in qnum::triangle_range(a, b).filter(|c| *c <= smax) {
                        let v = lorentz::lambda_coeff(ctx, b, c, a, a, &label).map_err(|e| e.to_string())?;
                        rows.push((format!("{b},{c},{a}"), v));
                    }
                }
            }
            write_table(rows, "B,C,A", *format, out.clone())
        }
        TableKind::Aw { alpha, beta, gamma, delta, degree, nodes, format, out } => {
            let p = qpolys::AWParams {
                alpha: parse_complex(alpha)?,
                beta: parse_complex(beta)?,
                gamma: parse_complex(gamma)?,
                delta: parse_complex(delta)?,
            };
            let mut rows = Vec::new();
            for i in 0..*nodes {
                let rho = -std::f64::consts::PI / ctx.hbar() + ctx.rho_period() * (i as f64 + 0.5) / *nodes as f64;
                let z = Complex64::new(0.0, rho / 2.0);
                for n in 0..=*degree {
                    let v = qpolys::aw_p(ctx, &p, n, z).map_err(|e| e.to_string())?;
                    rows.push((format!("{n},{rho:.16e}"), v));
                }
            }
            write_table(rows, "n,rho", *format, out.clone())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match build_ctx(&cli.ctx) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.cmd {
        Cmd::Eval { kind } => match run_eval(&ctx, kind) {
            Ok(s) => {
                println!("{s}");
                ExitCode::SUCCESS
            }
            Err(e @ (QError::Pole(_) | QError::ZeroFactor(_) | QError::Degenerate(_))) => {
                println!("{{\"pole\": true, \"detail\": \"{e}\"}}");
                ExitCode::from(3)
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Verify { suite, seed, nodes, max_spin, samples, report } => {
            let max_spin = match parse_halfint(max_spin) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let cfg = SuiteConfig { seed: *seed, nodes: *nodes, max_spin, samples: *samples };
            let names: Vec<&str> =
                if suite == "all" { qlorentz::harness::SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut all_pass = true;
            let mut reports = Vec::new();
            for name in names {
                match run_suite(name, &ctx, &cfg) {
                    Ok(rep) => {
                        print!("{}", rep.render());
                        let _ = std::io::stdout().flush();
                        all_pass &= rep.pass;
                        reports.push(rep);
                    }
                    Err(QError::Domain(e)) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(3);
                    }
                }
            }
            if let Some(path) = report {
                let json = serde_json::to_string_pretty(&reports).expect("serialise report");
                if let Err(e) = std::fs::write(path, json) {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(2);
                }
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Table { kind } => match run_table(&ctx, kind) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
