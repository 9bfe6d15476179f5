//! Actions of the generators on a principal Harish-Chandra module and the
//! braiding on tensor products of principal representations.
//!
//! The module is `V = ⊕_{C, C-|m| ∈ N} V_C`; `L^{(±)B}{}^i_j` acts block
//! diagonally through the finite braiding matrices and `g^B{}^i_j` through
//! the Lambda coefficients.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{QError, QResult};
use crate::qnum::{triangle_range, weight_range, y1, HalfInt, QContext};
use crate::su2q::{self, BraidSign};

use super::lambda::LambdaTable;
use super::{PrincipalWeight, RepLabel};

/// A basis vector `e^C_r` of a principal module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    pub spin: HalfInt,
    pub weight: HalfInt,
}

impl BasisVector {
    pub fn in_module(&self, m: HalfInt) -> bool {
        y1(self.spin, m) && y1(self.spin, self.weight)
    }
}

/// `L^{(±)B}{}^i_j e^C_r = sum_n e^C_n R^{BC(±)}{}^{i n}_{j r}` (one term by
/// weight conservation).
pub fn rep_action_l(
    ctx: &QContext,
    b: HalfInt,
    sign: BraidSign,
    i: HalfInt,
    j: HalfInt,
    target: BasisVector,
) -> Vec<(BasisVector, Complex64)> {
    let n = j + target.weight - i;
    if !y1(target.spin, n) {
        return Vec::new();
    }
    let r = su2q::rmatrix(ctx, b, target.spin, sign);
    let v = r.get(i, n, j, target.weight);
    if v == 0.0 {
        return Vec::new();
    }
    vec![(BasisVector { spin: target.spin, weight: n }, Complex64::new(v, 0.0))]
}

/// `g^B{}^i_j e^C_r = sum_{D,E,p,x} e^E_p phi(E,B,D;p,i,x) psi(B,C,D;j,r,x)
/// Lambda^{BD}_{EC}(X0X1)`.
pub fn rep_action_g(
    ctx: &QContext,
    label: &RepLabel,
    b: HalfInt,
    i: HalfInt,
    j: HalfInt,
    target: BasisVector,
) -> QResult<Vec<(BasisVector, Complex64)>> {
    if !target.in_module(label.m) {
        return Err(QError::Domain(format!(
            "e^{}_{} is not in the module of weight m = {}",
            target.spin, target.weight, label.m
        )));
    }
    let lt = LambdaTable::new(ctx, *label);
    let x = j + target.weight;
    let mut out: HashMap<BasisVector, Complex64> = HashMap::new();
    for d in triangle_range(b, target.spin) {
        if !y1(d, x) {
            continue;
        }
        let bcd = su2q::cg_block(ctx, b, target.spin, d);
        let psi = bcd.get(j, target.weight);
        if psi == 0.0 {
            continue;
        }
        for e in triangle_range(b, d) {
            if !y1(e, label.m) {
                continue;
            }
            let p = x - i;
            if !y1(e, p) {
                continue;
            }
            let ebd = su2q::cg_block(ctx, e, b, d);
            let phi = ebd.get(p, i);
            if phi == 0.0 {
                continue;
            }
            let lam = lt.get(b, d, e, target.spin)?;
            if lam.norm() == 0.0 {
                continue;
            }
            *out.entry(BasisVector { spin: e, weight: p }).or_insert(Complex64::new(0.0, 0.0)) +=
                phi * psi * lam;
        }
    }
    Ok(out.into_iter().filter(|(_, v)| v.norm() > 0.0).collect())
}

/// A vector in `V(X) ⊗ V(Y)` as a sparse map.
pub type TensorVec = HashMap<(BasisVector, BasisVector), Complex64>;

/// Action of the universal braiding on the tensor product of two principal
/// modules:
/// `R (e^B_m ⊗ e^C_n) = sum_{D,F} e^B_j ⊗ e^F_p phi(F,B,D;p,j,x) psi(B,C,D;m,n,x)
///  Lambda^{BD}_{FC}`, with the Lambda of the representation the dual-part
/// generator acts on (the second slot).
pub fn rmatrix_action(
    ctx: &QContext,
    label_y: &RepLabel,
    b: HalfInt,
    m: HalfInt,
    c: HalfInt,
    n: HalfInt,
) -> QResult<TensorVec> {
    let lt = LambdaTable::new(ctx, *label_y);
    let x = m + n;
    let mut out: TensorVec = HashMap::new();
    for d in triangle_range(b, c) {
        if !y1(d, x) {
            continue;
        }
        let bcd = su2q::cg_block(ctx, b, c, d);
        let psi = bcd.get(m, n);
        if psi == 0.0 {
            continue;
        }
        for f in triangle_range(b, d) {
            if !y1(f, label_y.m) {
                continue;
            }
            let fbd = su2q::cg_block(ctx, f, b, d);
            for p in weight_range(f) {
                let j = x - p;
                if !y1(b, j) {
                    continue;
                }
                let phi = fbd.get(p, j);
                if phi == 0.0 {
                    continue;
                }
                let lam = lt.get(b, d, f, c)?;
                let key = (BasisVector { spin: b, weight: j }, BasisVector { spin: f, weight: p });
                *out.entry(key).or_insert(Complex64::new(0.0, 0.0)) += phi * psi * lam;
            }
        }
    }
    out.retain(|_, v| v.norm() > 1e-300);
    Ok(out)
}

fn tensor_apply_first(
    ctx: &QContext,
    vec: &TensorVec,
    op: &dyn Fn(&QContext, BasisVector) -> QResult<Vec<(BasisVector, Complex64)>>,
) -> QResult<TensorVec> {
    let mut out: TensorVec = HashMap::new();
    for (&(ea, eb), &coef) in vec {
        for (fa, v) in op(ctx, ea)? {
            *out.entry((fa, eb)).or_insert(Complex64::new(0.0, 0.0)) += coef * v;
        }
    }
    Ok(out)
}

fn tensor_apply_second(
    ctx: &QContext,
    vec: &TensorVec,
    op: &dyn Fn(&QContext, BasisVector) -> QResult<Vec<(BasisVector, Complex64)>>,
) -> QResult<TensorVec> {
    let mut out: TensorVec = HashMap::new();
    for (&(ea, eb), &coef) in vec {
        for (fb, v) in op(ctx, eb)? {
            *out.entry((ea, fb)).or_insert(Complex64::new(0.0, 0.0)) += coef * v;
        }
    }
    Ok(out)
}

fn tensor_diff_norm(a: &TensorVec, b: &TensorVec) -> f64 {
    let mut keys: Vec<_> = a.keys().chain(b.keys()).collect();
    keys.sort_by_key(|k| (k.0.spin, k.0.weight, k.1.spin, k.1.weight));
    keys.dedup();
    let z = Complex64::new(0.0, 0.0);
    keys.iter()
        .map(|k| (a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).norm())
        .fold(0.0, f64::max)
}

/// Quasitriangularity of the braiding on principal modules:
/// `R Δ(a) = Δ'(a) R` for `a` among the spin-1/2 generators `L^{(±)}` and `g`,
/// applied to `e^B_m ⊗ e^C_n`. Returns the maximum residual.
pub fn rmatrix_intertwines_residual(
    ctx: &QContext,
    wx: &PrincipalWeight,
    wy: &PrincipalWeight,
    b: HalfInt,
    m: HalfInt,
    c: HalfInt,
    n: HalfInt,
) -> QResult<f64> {
    let lx = wx.label();
    let ly = wy.label();
    let h = crate::qnum::HALF;
    let mut start: TensorVec = HashMap::new();
    start.insert((BasisVector { spin: b, weight: m }, BasisVector { spin: c, weight: n }), Complex64::new(1.0, 0.0));
    let r_start = rmatrix_action_vec(ctx, &ly, &start)?;

    let mut max = 0.0f64;
    for i in weight_range(h) {
        for j in weight_range(h) {
            // generators: L^{(±)1/2 i_j} with Delta(L^a_b) = sum_c L^c_b (x) L^a_c,
            // and g^{1/2 i_j} with Delta(g^a_b) = sum_c g^c_b (x) g^a_c
            for sign in [BraidSign::Plus, BraidSign::Minus] {
                let mut lhs: TensorVec = HashMap::new();
                let mut rhs: TensorVec = HashMap::new();
                for cmid in weight_range(h) {
                    // Delta: first slot gets lower pair (cmid, j), second (i, cmid)
                    let va = tensor_apply_first(ctx, &start, &|cx, t| {
                        Ok(rep_action_l(cx, h, sign, cmid, j, t))
                    })?;
                    let va = tensor_apply_second(ctx, &va, &|cx, t| Ok(rep_action_l(cx, h, sign, i, cmid, t)))?;
                    let va = rmatrix_action_vec(ctx, &ly, &va)?;
                    for (k, v) in va {
                        *lhs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += v;
                    }
                    // Delta': first slot gets (i, cmid), second (cmid, j)
                    let vb = tensor_apply_first(ctx, &r_start, &|cx, t| {
                        Ok(rep_action_l(cx, h, sign, i, cmid, t))
                    })?;
                    let vb = tensor_apply_second(ctx, &vb, &|cx, t| Ok(rep_action_l(cx, h, sign, cmid, j, t)))?;
                    for (k, v) in vb {
                        *rhs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += v;
                    }
                }
                max = max.max(tensor_diff_norm(&lhs, &rhs));
            }
            {
                let mut lhs: TensorVec = HashMap::new();
                let mut rhs: TensorVec = HashMap::new();
                for cmid in weight_range(h) {
                    let va = tensor_apply_first(ctx, &start, &|cx, t| rep_action_g(cx, &lx, h, cmid, j, t))?;
                    let va = tensor_apply_second(ctx, &va, &|cx, t| rep_action_g(cx, &ly, h, i, cmid, t))?;
                    let va = rmatrix_action_vec(ctx, &ly, &va)?;
                    for (k, v) in va {
                        *lhs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += v;
                    }
                    let vb = tensor_apply_first(ctx, &r_start, &|cx, t| rep_action_g(cx, &lx, h, i, cmid, t))?;
                    let vb = tensor_apply_second(ctx, &vb, &|cx, t| rep_action_g(cx, &ly, h, cmid, j, t))?;
                    for (k, v) in vb {
                        *rhs.entry(k).or_insert(Complex64::new(0.0, 0.0)) += v;
                    }
                }
                max = max.max(tensor_diff_norm(&lhs, &rhs));
            }
        }
    }
    Ok(max)
}

fn rmatrix_action_vec(ctx: &QContext, label_y: &RepLabel, vec: &TensorVec) -> QResult<TensorVec> {
    let mut out: TensorVec = HashMap::new();
    for (&(ea, eb), &coef) in vec {
        for (k, v) in rmatrix_action(ctx, label_y, ea.spin, ea.weight, eb.spin, eb.weight)? {
            *out.entry(k).or_insert(Complex64::new(0.0, 0.0)) += coef * v;
        }
    }
    Ok(out)
}

/// Gauss-Jordan inverse of a small complex matrix.
fn invert(mut m: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let n = m.len();
    let mut inv: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).unwrap();
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        assert!(d.norm() > 1e-250, "singular operator block");
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for row in 0..n {
            if row != col {
                let f = m[row][col];
                if f.norm() != 0.0 {
                    for j in 0..n {
                        let (a, b) = (m[col][j], inv[col][j]);
                        m[row][j] -= f * a;
                        inv[row][j] -= f * b;
                    }
                }
            }
        }
    }
    inv
}

/// Residual of the central characters: `Omega_± = tr(mu^{-1} L^{(∓)-1} g)`
/// acts on `e^C_r` as `omega_± = q^{±(2X_{0|1}+1)} + q^{∓(2X_{0|1}+1)}`.
pub fn center_residual(ctx: &QContext, w: &PrincipalWeight, target: BasisVector) -> QResult<f64> {
    let label = w.label();
    let h = crate::qnum::HALF;
    let lnq = Complex64::new(ctx.q().ln(), 0.0);
    let omega = |x: Complex64| (lnq * x).exp() + (lnq * -x).exp();
    let omega_p = omega(2.0 * label.first.value() + 1.0);
    let omega_m = omega(2.0 * label.second.value() + 1.0);

    let mut max = 0.0f64;
    for (sign, want) in [(BraidSign::Minus, omega_p), (BraidSign::Plus, omega_m)] {
        // Omega_+ uses L^{(-)-1}, Omega_- uses L^{(+)-1}
        let mut acc: HashMap<BasisVector, Complex64> = HashMap::new();
        for a in weight_range(h) {
            for b in weight_range(h) {
                // step 1: g^b_a
                let step1 = rep_action_g(ctx, &label, h, b, a, target)?;
                // step 2: (L^{(∓)-1})^a_b on each component, via the inverse of
                // the combined (aux ⊗ block) matrix
                for (mid, coef) in step1 {
                    let e = mid.spin;
                    let dim = (e.twice() + 1) as usize * 2;
                    let r = su2q::rmatrix(ctx, h, e, sign);
                    let idx = |aux: HalfInt, p: HalfInt| -> usize {
                        (((aux.twice() + 1) / 2) as usize) * (e.twice() as usize + 1)
                            + ((p.twice() + e.twice()) / 2) as usize
                    };
                    let mut big = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
                    for aa in weight_range(h) {
                        for nn in weight_range(e) {
                            for bb in weight_range(h) {
                                for pp in weight_range(e) {
                                    big[idx(aa, nn)][idx(bb, pp)] =
                                        Complex64::new(r.get(aa, nn, bb, pp), 0.0);
                                }
                            }
                        }
                    }
                    let inv = invert(big);
                    for nn in weight_range(e) {
                        let v = inv[idx(a, nn)][idx(b, mid.weight)];
                        if v.norm() == 0.0 {
                            continue;
                        }
                        let mu_inv = (ctx.q().ln() * -2.0 * a.as_f64()).exp();
                        *acc.entry(BasisVector { spin: e, weight: nn }).or_insert(Complex64::new(0.0, 0.0)) +=
                            mu_inv * v * coef;
                    }
                }
            }
        }
        // expect want * e^C_r
        for (k, v) in &acc {
            let expect = if *k == target { want } else { Complex64::new(0.0, 0.0) };
            max = max.max((v - expect).norm());
        }
        if !acc.contains_key(&target) {
            max = max.max(want.norm());
        }
    }
    Ok(max)
}
