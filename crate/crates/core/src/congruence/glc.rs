//! Generalized Lucas congruences for `P` supported in `{-1,0,1}^2` and
//! `Q = alpha + beta x + gamma y + delta xy`:
//!
//! `A(pn+k) = B(n) A(k) mod p` for `k < p-1`, and
//! `A(pn+p-1) = B(n) A(p-1) + Ã(n) mod p`,
//!
//! with `B = ct[P^n]` and `Ã = ct[P^n Q̃]`. Univariate input is embedded
//! in two variables with `y` absent.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use super::{kronecker_mod_p, lucas_check};
use crate::arith::{divides, Modulus, Prime};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::report::{CongruenceReport, Counterexample, ReportKind};
use crate::sequences::{catalog, CtSpec, DigitEvaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlcBranch {
    /// `p` odd and `p` does not divide `a_{1,1}`.
    OddPUnitA11,
    /// `p = 2` or `p | a_{1,1}`.
    P2OrPDividesA11,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlcData {
    pub p: Prime,
    pub sigma_x: i8,
    pub sigma_y: i8,
    pub q_hat: LaurentPoly,
    pub q_tilde: LaurentPoly,
    pub b_spec: CtSpec,
    pub a_tilde_spec: CtSpec,
    pub branch: GlcBranch,
    /// `alpha, beta, gamma, delta` of `Q`.
    pub q_coeffs: [BigInt; 4],
    pub a11: BigInt,
    /// True when neither `P` nor `Q` involves `y`.
    pub univariate: bool,
}

fn embed_2d(f: &LaurentPoly) -> Result<LaurentPoly> {
    match f.dim() {
        2 => Ok(f.clone()),
        1 => LaurentPoly::from_terms(
            2,
            f.terms().map(|(m, c)| (vec![m.exponents()[0], 0], c.clone())),
        ),
        d => Err(Error::SupportViolation(format!(
            "generalized Lucas congruences need one or two variables, got {d}"
        ))),
    }
}

fn coeff(f: &LaurentPoly, i: i32, j: i32) -> BigInt {
    f.coeff_at(&Monomial::new(&[i, j]).expect("dimension 2"))
        .expect("dimension 2")
}

fn in_box(f: &LaurentPoly, lo: i32, hi: i32) -> bool {
    f.support().all(|m| m.exponents().iter().all(|&e| lo <= e && e <= hi))
}

fn residue_poly(terms: &[((i32, i32), u64)]) -> LaurentPoly {
    LaurentPoly::from_terms(2, terms.iter().map(|&((i, j), c)| (vec![i, j], c)))
        .expect("dimension 2")
}

/// Signs, `Q̂`, `Q̃` and the companion specs for `(P, Q, p)`.
pub fn glc_data(p_poly: &LaurentPoly, q_poly: &LaurentPoly, p: Prime) -> Result<GlcData> {
    if p_poly.dim() != q_poly.dim() {
        return Err(Error::DimensionMismatch {
            left: p_poly.dim(),
            right: q_poly.dim(),
        });
    }
    let pp = embed_2d(p_poly)?;
    let qq = embed_2d(q_poly)?;
    if !in_box(&pp, -1, 1) {
        return Err(Error::SupportViolation("supp(P) must lie in {-1,0,1}^2".into()));
    }
    if !in_box(&qq, 0, 1) {
        return Err(Error::SupportViolation(
            "supp(Q) must lie in {0,1}^2 (reflect variables first)".into(),
        ));
    }
    let univariate = pp.support().chain(qq.support()).all(|m| m.exponents()[1] == 0);
    let m = p.modulus();
    let a = |i, j| coeff(&pp, i, j);
    let (a10, a01, a11, a1m1, am11) = (a(1, 0), a(0, 1), a(1, 1), a(1, -1), a(-1, 1));
    let four = BigInt::from(4);
    let sigma_x = kronecker_mod_p(&(&a10 * &a10 - &four * &a1m1 * &a11), p);
    let sigma_y = kronecker_mod_p(&(&a01 * &a01 - &four * &am11 * &a11), p);
    let r = |v: &BigInt| m.reduce(v);
    let sxy = m.reduce_i64(sigma_x as i64 * sigma_y as i64);

    let (branch, hat) = if p.is_odd() && !divides(p, &a11) {
        let inv = m.inv(m.mul(2, r(&a11))).expect("2 a11 is a unit");
        let cx = m.mul(m.mul(r(&a10), inv), m.reduce_i64(1 - sigma_x as i64));
        let cy = m.mul(m.mul(r(&a01), inv), m.reduce_i64(1 - sigma_y as i64));
        (GlcBranch::OddPUnitA11, [cx, cy, m.sub(1, sxy)])
    } else {
        let pow = |b: &BigInt| if p.is_odd() { m.pow(r(b), p.get() - 2) } else { 1 };
        let cx = m.neg(m.mul(r(&a1m1), pow(&a10)));
        let cy = m.neg(m.mul(r(&am11), pow(&a01)));
        (GlcBranch::P2OrPDividesA11, [cx, cy, m.sub(r(&a11), sxy)])
    };
    let q_hat = residue_poly(&[((1, 0), hat[0]), ((0, 1), hat[1]), ((1, 1), hat[2])]);

    let q_coeffs = [coeff(&qq, 0, 0), coeff(&qq, 1, 0), coeff(&qq, 0, 1), coeff(&qq, 1, 1)];
    let [_, beta, gamma, delta] = q_coeffs.clone().map(|c| m.reduce(&c));
    let sx = m.reduce_i64(sigma_x as i64);
    let sy = m.reduce_i64(sigma_y as i64);
    // Q(sx x, sy y) - alpha + delta Q̂
    let q_tilde = residue_poly(&[
        ((1, 0), m.add(m.mul(beta, sx), m.mul(delta, hat[0]))),
        ((0, 1), m.add(m.mul(gamma, sy), m.mul(delta, hat[1]))),
        ((1, 1), m.add(m.mul(delta, sxy), m.mul(delta, hat[2]))),
    ]);

    Ok(GlcData {
        p,
        sigma_x,
        sigma_y,
        q_hat,
        b_spec: CtSpec::unit(pp.clone())?,
        a_tilde_spec: CtSpec::new(pp, q_tilde.clone())?,
        q_tilde,
        branch,
        q_coeffs,
        a11,
        univariate,
    })
}

struct Windows {
    a: Vec<u64>,
    b: Vec<u64>,
}

fn windows(data: &GlcData, q2: &LaurentPoly, a_max: u64, b_max: u64) -> Result<(Windows, DigitEvaluator)> {
    let spec = data.b_spec.with_q(q2.clone())?;
    let ev = DigitEvaluator::new(&spec, data.p, 1)?;
    let a = ev.window(a_max);
    let b = ev.window_for(data.b_spec.q(), b_max)?;
    Ok((Windows { a, b }, ev))
}

fn base_report(kind: ReportKind, p_poly: &LaurentPoly, q_poly: &LaurentPoly, p: Prime, n_max: u64) -> CongruenceReport {
    CongruenceReport::new(kind)
        .param("P", p_poly.to_string())
        .param("Q", q_poly.to_string())
        .param("p", p.get())
        .param("n_max", n_max)
}

/// Checks the two-case congruence for `n <= n_max` and every digit `k`.
pub fn glc_verify(p_poly: &LaurentPoly, q_poly: &LaurentPoly, p: Prime, n_max: u64) -> Result<CongruenceReport> {
    let data = glc_data(p_poly, q_poly, p)?;
    let pv = p.get();
    let q2 = embed_2d(q_poly)?;
    let (w, ev) = windows(&data, &q2, pv * n_max + pv - 1, n_max)?;
    let at = ev.window_for(&data.q_tilde, n_max)?;
    let m = p.modulus();
    let mut report = base_report(ReportKind::Glc, p_poly, q_poly, p, n_max)
        .param("sigma_x", data.sigma_x)
        .param("sigma_y", data.sigma_y)
        .param("q_tilde", data.q_tilde.to_string());
    for n in 0..=n_max {
        for k in 0..pv {
            let mut want = m.mul(w.b[n as usize], w.a[k as usize]);
            if k == pv - 1 {
                want = m.add(want, at[n as usize]);
            }
            let got = w.a[(pv * n + k) as usize];
            report.checked += 1;
            if got != want {
                return Ok(report.fail(Counterexample::new(
                    &[("n", n as i64), ("k", k as i64)],
                    want,
                    got,
                )));
            }
        }
    }
    Ok(report)
}

/// Fails unless the simplified form `Ã(n) = A(n) - A(0) B(n)` is asserted.
pub fn check_simple_hypotheses(data: &GlcData) -> Result<()> {
    simple_gate(data).map_err(Error::HypothesisViolation)
}

fn simple_gate(data: &GlcData) -> std::result::Result<(), String> {
    let delta_zero = data.q_coeffs[3].is_zero();
    if !(delta_zero || (data.p.is_odd() && !divides(data.p, &data.a11))) {
        return Err(format!(
            "need delta = 0, or p odd with p not dividing a11 = {}",
            data.a11
        ));
    }
    if data.sigma_x != 1 {
        return Err(format!("sigma_x = {}", data.sigma_x));
    }
    if data.sigma_y != 1 && !data.univariate {
        return Err(format!("sigma_y = {}", data.sigma_y));
    }
    Ok(())
}

/// Checks `A(pn+k) = B(n) A(k)` for `k < p-1` and
/// `A(pn+p-1) = B(n) A(p-1) + A(n) - A(0) B(n)` modulo `p`.
///
/// Fails with [`Error::HypothesisViolation`] when the simplified form is not
/// asserted for the input; for univariate input only `p ∤ c` is required.
pub fn glc_simple_verify(p_poly: &LaurentPoly, q_poly: &LaurentPoly, p: Prime, n_max: u64) -> Result<CongruenceReport> {
    let data = glc_data(p_poly, q_poly, p)?;
    simple_gate(&data).map_err(Error::HypothesisViolation)?;
    let pv = p.get();
    let q2 = embed_2d(q_poly)?;
    let (w, _) = windows(&data, &q2, pv * n_max + pv - 1, n_max)?;
    let report = base_report(ReportKind::GlcSimple, p_poly, q_poly, p, n_max);
    Ok(simple_check(report, &w.a, &w.b, p, n_max))
}

fn simple_check(mut report: CongruenceReport, a: &[u64], b: &[u64], p: Prime, n_max: u64) -> CongruenceReport {
    let m = p.modulus();
    let pv = p.get();
    for n in 0..=n_max {
        for k in 0..pv {
            let (nu, ku) = (n as usize, k as usize);
            let mut want = m.mul(b[nu], a[ku]);
            if k == pv - 1 {
                want = m.add(want, m.sub(a[nu], m.mul(a[0], b[nu])));
            }
            let got = a[(pv * n + k) as usize];
            report.checked += 1;
            if got != want {
                return report.fail(Counterexample::new(
                    &[("n", n as i64), ("k", k as i64)],
                    want,
                    got,
                ));
            }
        }
    }
    report
}

fn rational_residue(q: &BigRational, m: Modulus) -> Option<u64> {
    let den = m.reduce(q.denom());
    Some(m.mul(m.reduce(q.numer()), m.inv(den)?))
}

/// Checks the simplified congruences for `A(n) = alpha B(n) + beta B(n+1)`.
///
/// `B` must satisfy the Lucas congruences mod `p` on the range used; when it
/// does not, or a denominator of `alpha, beta` is divisible by `p`, the
/// report is inapplicable.
pub fn shift_combination_check(
    b_spec: &CtSpec,
    alpha: &BigRational,
    beta: &BigRational,
    p: Prime,
    n_max: u64,
) -> Result<CongruenceReport> {
    let pv = p.get();
    let m = p.modulus();
    let top = pv * n_max + pv;
    let report = CongruenceReport::new(ReportKind::ShiftCombination)
        .param("P", b_spec.p().to_string())
        .param("alpha", alpha.to_string())
        .param("beta", beta.to_string())
        .param("p", pv)
        .param("n_max", n_max);
    let b = crate::sequences::ct_residues(b_spec, top, p, 1, crate::sequences::Method::Auto)?;
    if !lucas_check(&b, p, top).passed() {
        return Ok(report.inapplicable("B does not satisfy the Lucas congruences on the range"));
    }
    let (Some(al), Some(be)) = (rational_residue(alpha, m), rational_residue(beta, m)) else {
        return Ok(report.inapplicable("a coefficient has a denominator divisible by p"));
    };
    let a: Vec<u64> = (0..top as usize)
        .map(|n| m.add(m.mul(al, b[n]), m.mul(be, b[n + 1])))
        .collect();
    Ok(simple_check(report, &a, &b, p, n_max))
}

/// Finds rationals `(alpha, beta)` with `a[n] = alpha b[n] + beta b[n+1]`
/// for every `n < a.len()`, or `None` if the system is inconsistent.
pub fn shift_fit(a: &[BigInt], b: &[BigInt]) -> Result<Option<(BigRational, BigRational)>> {
    if b.len() < a.len() + 1 {
        return Err(Error::InvalidInput("need one more B value than A values".into()));
    }
    let mut rows: Vec<[BigRational; 3]> = a
        .iter()
        .enumerate()
        .map(|(n, an)| {
            [
                BigRational::from_integer(b[n].clone()),
                BigRational::from_integer(b[n + 1].clone()),
                BigRational::from_integer(an.clone()),
            ]
        })
        .collect();
    // Row reduction on the augmented matrix.
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(pr) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, pr);
        let piv = rows[row][col].clone();
        for c in 0..3 {
            rows[row][c] = &rows[row][c] / &piv;
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..3 {
                    let delta = &f * &rows[row][c];
                    rows[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.contains(&2) {
        return Ok(None);
    }
    let mut sol = [BigRational::zero(), BigRational::zero()];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = rows[r][2].clone();
    }
    let [alpha, beta] = sol;
    Ok(Some((alpha, beta)))
}

/// `A(n) = ct[(a/x + b + cx)^n (alpha + beta x)]`: the simplified congruences
/// when `p ∤ c`, else `A(pn+k) = B(n) A(k)` for every `k`.
#[allow(clippy::too_many_arguments)]
pub fn univariate_glc(
    a: i64,
    b: i64,
    c: i64,
    alpha: i64,
    beta: i64,
    p: Prime,
    n_max: u64,
) -> Result<CongruenceReport> {
    let spec = catalog::univariate(a, b, c, alpha, beta)?;
    let pv = p.get();
    let m = p.modulus();
    let c_unit = m.reduce_i64(c) != 0;
    let top = pv * n_max + pv - 1;
    let ev = DigitEvaluator::new(&spec, p, 1)?;
    let av = ev.window(top);
    let bv = ev.window_for(&LaurentPoly::one(1)?, n_max)?;
    let mut report = CongruenceReport::new(ReportKind::UnivariateGlc)
        .param("a", a)
        .param("b", b)
        .param("c", c)
        .param("alpha", alpha)
        .param("beta", beta)
        .param("p", pv)
        .param("n_max", n_max)
        .param("case", if c_unit { "c-unit" } else { "c-zero" });
    if c_unit {
        return Ok(simple_check(report, &av, &bv, p, n_max));
    }
    for n in 0..=n_max {
        for k in 0..pv {
            let want = m.mul(bv[n as usize], av[k as usize]);
            let got = av[(pv * n + k) as usize];
            report.checked += 1;
            if got != want {
                return Ok(report.fail(Counterexample::new(
                    &[("n", n as i64), ("k", k as i64)],
                    want,
                    got,
                )));
            }
        }
    }
    Ok(report)
}

impl GlcData {
    /// JSON summary of the signs and polynomials.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p.get(),
            "sigma_x": self.sigma_x,
            "sigma_y": self.sigma_y,
            "branch": self.branch,
            "q_hat": self.q_hat.to_string(),
            "q_tilde": self.q_tilde.to_string(),
        })
    }
}

/// Small helper for callers holding integer shift coefficients.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{self, LambdaWhich};
    use crate::parse::parse_str;
    use crate::sequences::ct_sequence;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn xy(s: &str) -> LaurentPoly {
        parse_str(s, "x,y").unwrap()
    }

    #[test]
    fn example_d_data() {
        let d = glc_data(&xy("x + y + x^-1 - y^-1"), &xy("1 + x + x*y"), pr(5)).unwrap();
        assert_eq!((d.sigma_x, d.sigma_y), (1, 1));
        assert_eq!(d.q_hat, xy("4*x*y"));
        assert_eq!(d.q_tilde, xy("x"));
        assert_eq!(d.branch, GlcBranch::P2OrPDividesA11);
    }

    #[test]
    fn unit_q_gives_zero_tilde() {
        let d = glc_data(&xy("2 + x - y + x*y^-1"), &xy("1"), pr(3)).unwrap();
        assert!(d.q_tilde.is_zero());
    }

    #[test]
    fn zagier_data() {
        let d = glc_data(&xy("4 + x + y + x^-1 + y^-1"), &xy("x"), pr(7)).unwrap();
        assert_eq!((d.sigma_x, d.sigma_y), (1, 1));
        assert_eq!(d.q_hat.coeff_at(&Monomial::new(&[1, 1]).unwrap()).unwrap(), BigInt::from(6));
        assert_eq!(d.q_tilde, xy("x"));
    }

    #[test]
    fn support_violations() {
        assert!(matches!(
            glc_data(&xy("x^2"), &xy("1"), pr(3)),
            Err(Error::SupportViolation(_))
        ));
        assert!(matches!(
            glc_data(&xy("x"), &xy("x^-1"), pr(3)),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn example_d_congruences() {
        for p in [2, 3, 5, 7] {
            let r = glc_verify(&xy("x + y + x^-1 - y^-1"), &xy("1 + x + x*y"), pr(p), 100).unwrap();
            assert!(r.passed(), "p={p}: {r:?}");
        }
    }

    #[test]
    fn unit_q_matches_lucas() {
        let p_poly = xy("1 + x + y + x^-1*y + x*y");
        for p in [2, 3, 5] {
            let g = glc_verify(&p_poly, &xy("1"), pr(p), 30).unwrap().passed();
            let spec = CtSpec::unit(p_poly.clone()).unwrap();
            let l = super::super::lucas_verify(super::super::Source::Spec(&spec), pr(p), 30 * p + p - 1)
                .unwrap()
                .passed();
            assert_eq!(g, l);
        }
    }

    #[test]
    fn zagier_simple() {
        for p in [3, 5, 7] {
            let r = glc_simple_verify(&xy("4 + x + y + x^-1 + y^-1"), &xy("x"), pr(p), 100).unwrap();
            assert!(r.passed());
        }
    }

    #[test]
    fn catalan_simple_univariate() {
        let p = parse_str("x^-1 + 2 + x", "x").unwrap();
        let q = parse_str("1 - x", "x").unwrap();
        for pv in [2, 3, 5, 7] {
            assert!(glc_simple_verify(&p, &q, pr(pv), 100).unwrap().passed());
        }
    }

    #[test]
    fn simple_gate_rejects_nonresidue() {
        // sigma_y = ((1 - 8)/3) = (2/3) = -1.
        let err = glc_simple_verify(&xy("x + y + x*y + 2*x^-1*y"), &xy("x"), pr(3), 10).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation(_)));
    }

    #[test]
    fn shift_combinations() {
        let b = catalog::zagier("1");
        for p in [3, 5, 7] {
            let r = shift_combination_check(&b, &rational(-1, 1), &rational(1, 4), pr(p), 60).unwrap();
            assert!(r.passed());
            let r = shift_combination_check(&b, &rational(1, 1), &rational(0, 1), pr(p), 60).unwrap();
            assert!(r.passed());
        }
        let r = shift_combination_check(&b, &rational(-1, 1), &rational(1, 4), pr(2), 10).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Inapplicable);
    }

    #[test]
    fn zagier_shift_fit() {
        let a = ct_sequence(&catalog::zagier("x"), 10, None).unwrap();
        let b = ct_sequence(&catalog::zagier("1"), 11, None).unwrap();
        let (al, be) = shift_fit(a.values(), b.values()).unwrap().unwrap();
        assert_eq!((al, be), (rational(-1, 1), rational(1, 4)));
    }

    #[test]
    fn lambda_family_has_no_shift_fit() {
        let a: Vec<BigInt> = (0..=10).map(|n| oracles::lambda_family(1, n, LambdaWhich::A)).collect();
        let b: Vec<BigInt> = (0..=11).map(|n| oracles::lambda_family(1, n, LambdaWhich::B)).collect();
        assert_eq!(shift_fit(&a, &b).unwrap(), None);
    }

    #[test]
    fn univariate_cases() {
        assert!(univariate_glc(1, 2, 1, 1, -1, pr(7), 200).unwrap().passed());
        let r = univariate_glc(1, 3, 5, 2, 1, pr(5), 100).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["case"], "c-zero");
        assert!(univariate_glc(2, 3, 1, 1, 0, pr(3), 100).unwrap().passed());
    }
}
