//! Lucas and Dwork congruences, and the generalized congruences built on
//! top of them.

pub mod catalan;
pub mod glc;
pub mod trinomial;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{primes_up_to, Prime};
use crate::error::{Error, Result};
use crate::oracles::NamedSequence;
use crate::report::{CongruenceReport, Counterexample, ReportKind};
use crate::sequences::{ct_residues, CtSpec, Method, SequenceWindow};

pub use catalan::{
    catalan_digit_formula, catalan_digit_split, catalan_iterated, catalan_mod3, catalan_mod5,
    catalan_step, CatalanDigitSplit,
};
pub use glc::{
    glc_data, glc_simple_verify, glc_verify, shift_combination_check, shift_fit, univariate_glc,
    GlcBranch, GlcData,
};
pub use trinomial::{trinomial_pm1, trinomial_pm1_x};

/// Base-p digits, least significant first; empty for zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    pub p: Prime,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.p.get() + d)
    }
}

pub fn digits(n: u64, p: Prime) -> DigitExpansion {
    let mut out = Vec::new();
    let mut n = n;
    while n > 0 {
        out.push(n % p.get());
        n /= p.get();
    }
    DigitExpansion { p, digits: out }
}

/// Product of `base[n_i]` over the base-p digits of `n`.
pub fn lucas_predict(base: &[u64], p: Prime, n: u64) -> Result<u64> {
    if base.len() != p.get() as usize {
        return Err(Error::InvalidInput(format!(
            "need {} base residues, got {}",
            p.get(),
            base.len()
        )));
    }
    let m = p.modulus();
    Ok(digits(n, p).digits.iter().fold(1, |acc, &d| m.mul(acc, base[d as usize])))
}

/// Where the terms of a sequence come from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Spec(&'a CtSpec),
    Window(&'a SequenceWindow),
    Named(&'a NamedSequence),
}

impl Source<'_> {
    /// Residues modulo `p^r` of `A(0..=n_max)`.
    pub fn residues(&self, n_max: u64, p: Prime, r: u32) -> Result<Vec<u64>> {
        let m = p.power(r)?;
        match self {
            Source::Spec(spec) => ct_residues(spec, n_max, p, r, Method::Auto),
            Source::Window(w) => {
                if (w.len() as u64) <= n_max {
                    return Err(Error::InvalidInput(format!(
                        "window has {} terms, need {}",
                        w.len(),
                        n_max + 1
                    )));
                }
                let mut v = w.residues(m)?;
                v.truncate(n_max as usize + 1);
                Ok(v)
            }
            Source::Named(s) => s.residues(n_max, m),
        }
    }

    fn describe(&self) -> String {
        match self {
            Source::Spec(s) => format!("ct[({})^n * ({})]", s.p(), s.q()),
            Source::Window(_) => "window".to_string(),
            Source::Named(s) => format!("{s:?}"),
        }
    }
}

/// Checks `A(pn+k) = A(n) A(k) mod p` for every `pn+k <= n_max`.
pub fn lucas_verify(source: Source<'_>, p: Prime, n_max: u64) -> Result<CongruenceReport> {
    let a = source.residues(n_max, p, 1)?;
    Ok(lucas_check(&a, p, n_max).param("sequence", source.describe()))
}

/// Lucas check on precomputed residues `a[0..=n_max]`.
pub fn lucas_check(a: &[u64], p: Prime, n_max: u64) -> CongruenceReport {
    let m = p.modulus();
    let pv = p.get();
    let mut report = CongruenceReport::new(ReportKind::Lucas)
        .param("p", pv)
        .param("n_max", n_max);
    if a[0] != 1 % pv {
        report.reason = Some("A(0) is not 1 mod p".into());
        return report.fail(Counterexample::new(&[("n", 0), ("k", 0)], 1, a[0]));
    }
    for big_n in 0..=n_max {
        let (n, k) = (big_n / pv, big_n % pv);
        let want = m.mul(a[n as usize], a[k as usize]);
        report.checked += 1;
        if a[big_n as usize] != want {
            return report.fail(Counterexample::new(
                &[("n", n as i64), ("k", k as i64)],
                want,
                a[big_n as usize],
            ));
        }
    }
    report
}

/// Checks `A(p^r m + n) A(n/p) = A(p^(r-1) m + n/p) A(n) mod p^r` on the
/// grid `m <= m_max`, `n <= n_max`.
pub fn dwork_verify(
    source: Source<'_>,
    p: Prime,
    r: u32,
    m_max: u64,
    n_max: u64,
) -> Result<CongruenceReport> {
    let modulus = p.power(r)?;
    let pr = modulus.get();
    let top = pr
        .checked_mul(m_max)
        .and_then(|v| v.checked_add(n_max))
        .ok_or_else(|| Error::InvalidInput("Dwork grid overflows".into()))?;
    let a = source.residues(top, p, r)?;
    let pr1 = pr / p.get();
    let mut report = CongruenceReport::new(ReportKind::Dwork)
        .param("p", p.get())
        .param("r", r)
        .param("m_max", m_max)
        .param("n_max", n_max)
        .param("sequence", source.describe());
    for m in 0..=m_max {
        for n in 0..=n_max {
            let q = n / p.get();
            let lhs = modulus.mul(a[(pr * m + n) as usize], a[q as usize]);
            let rhs = modulus.mul(a[(pr1 * m + q) as usize], a[n as usize]);
            report.checked += 1;
            if lhs != rhs {
                return Ok(report.fail(Counterexample::new(
                    &[("m", m as i64), ("n", n as i64)],
                    rhs,
                    lhs,
                )));
            }
        }
    }
    Ok(report)
}

/// `(d/p)` in `{-1, 0, 1}`; for `p = 2` this is `d mod 2`.
pub fn kronecker_mod_p(d: &BigInt, p: Prime) -> i8 {
    let pv = BigInt::from(p.get());
    let r = d.mod_floor(&pv);
    if !p.is_odd() {
        return r.to_i8().expect("residue mod 2");
    }
    if r.is_zero() {
        return 0;
    }
    let m = p.modulus();
    let e = m.pow(r.to_u64().expect("residue fits"), (p.get() - 1) / 2);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Primes `p <= bound` with `A(0), ..., A(p-1)` all nonzero mod `p`.
///
/// For a sequence with the Lucas property mod `p` this means `p` never
/// divides any term. The Lucas property is checked first on `n < 3p`;
/// primes where it fails are skipped.
pub fn never_divisible_primes(seq: &NamedSequence, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for p in primes_up_to(bound) {
        let pv = p.get();
        let a = seq.residues(3 * pv - 1, p.modulus())?;
        if !lucas_check(&a, p, 3 * pv - 1).passed() {
            continue;
        }
        if a[..pv as usize].iter().all(|&v| v != 0) {
            out.push(pv);
        }
    }
    Ok(out)
}

/// `(-1)^d mod 5` where `d` counts the digits 3, if every base-5 digit of
/// `n` is 0, 1 or 3; otherwise 0.
pub fn s_mod5(n: u64) -> u64 {
    let five = Prime::new(5).expect("5 is prime");
    let ds = digits(n, five).digits;
    if ds.iter().any(|d| !matches!(d, 0 | 1 | 3)) {
        return 0;
    }
    let threes = ds.iter().filter(|&&d| d == 3).count();
    if threes % 2 == 0 {
        1
    } else {
        4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Modulus;
    use crate::oracles::{self, SVariant};
    use crate::sequences::catalog;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(digits(11, pr(3)).digits, vec![2, 0, 1]);
        assert!(digits(0, pr(5)).digits.is_empty());
        assert_eq!(digits(7, pr(2)).digits, vec![1, 1, 1]);
        for n in 0..500 {
            assert_eq!(digits(n, pr(7)).value(), n);
        }
    }

    #[test]
    fn lucas_prediction() {
        let base = [1, 2, 0];
        assert_eq!(lucas_predict(&base, pr(3), 4).unwrap(), 1);
        assert_eq!(Modulus::new(3).unwrap().reduce(&oracles::central_binomial(4)), 1);
        assert_eq!(lucas_predict(&base, pr(3), 0).unwrap(), 1);
        assert_eq!(lucas_predict(&base, pr(3), 5).unwrap(), 0);
        assert!(lucas_predict(&base, pr(5), 3).is_err());
    }

    #[test]
    fn central_trinomial_is_lucas() {
        let spec = catalog::central_trinomial(1, 1, 1).unwrap();
        for p in [2, 3, 5] {
            assert!(lucas_verify(Source::Spec(&spec), pr(p), 1000).unwrap().passed());
        }
    }

    #[test]
    fn catalan_is_not_lucas_mod_3() {
        let spec = catalog::catalan();
        let r = lucas_verify(Source::Spec(&spec), pr(3), 30).unwrap();
        assert!(!r.passed());
        // C(3) = 5 = 2 mod 3 while C(1) C(0) = 1.
        let c = r.counterexample.unwrap();
        assert_eq!((c.index("n"), c.index("k")), (Some(1), Some(0)));
    }

    #[test]
    fn lucas_needs_unit_start() {
        let seq = NamedSequence::Constant(2);
        let r = lucas_verify(Source::Named(&seq), pr(3), 10).unwrap();
        assert!(!r.passed());
        assert!(r.reason.is_some());
    }

    #[test]
    fn apery_lucas_mod_5() {
        let seq = NamedSequence::Apery;
        assert!(lucas_verify(Source::Named(&seq), pr(5), 150).unwrap().passed());
    }

    #[test]
    fn dwork_central_binomial() {
        let spec = catalog::central_binomial();
        assert!(dwork_verify(Source::Spec(&spec), pr(3), 2, 40, 40).unwrap().passed());
        // m = 1, n = 4: A(13) A(1) = A(4) A(4) mod 9.
        let m9 = Modulus::new(9).unwrap();
        let lhs = m9.reduce(&(oracles::central_binomial(13) * oracles::central_binomial(1)));
        let rhs = m9.reduce(&(oracles::central_binomial(4) * oracles::central_binomial(4)));
        assert_eq!((lhs, rhs), (4, 4));
    }

    #[test]
    fn dwork_r1_matches_lucas() {
        for spec in [catalog::central_binomial(), catalog::catalan()] {
            for p in [2, 3, 5] {
                let l = lucas_verify(Source::Spec(&spec), pr(p), 40).unwrap().passed();
                let d = dwork_verify(Source::Spec(&spec), pr(p), 1, 40 / p, 40).unwrap().passed();
                assert_eq!(l, d, "p={p}");
            }
        }
    }

    #[test]
    fn kronecker_values() {
        let k = |d: i64, p: u64| kronecker_mod_p(&BigInt::from(d), pr(p));
        assert_eq!(k(2, 7), 1);
        assert_eq!(k(3, 5), -1);
        assert_eq!(k(6, 3), 0);
        assert_eq!(k(-3, 2), 1);
        assert_eq!(k(4, 2), 0);
    }

    #[test]
    fn s_mod5_values() {
        assert_eq!(s_mod5(3), 4);
        assert_eq!(s_mod5(2), 0);
        assert_eq!(s_mod5(8), 4);
        let m5 = Modulus::new(5).unwrap();
        assert_eq!(m5.reduce(&oracles::s_sequence(8, SVariant::Squared)), 4);
        for n in 0..300 {
            assert_eq!(s_mod5(n), m5.reduce(&oracles::s_sequence(n, SVariant::Squared)));
        }
    }

    #[test]
    fn never_divides() {
        let s = NamedSequence::S(SVariant::Squared);
        assert_eq!(never_divisible_primes(&s, 5).unwrap(), vec![2, 3]);
        assert_eq!(
            never_divisible_primes(&NamedSequence::Constant(1), 20).unwrap(),
            vec![2, 3, 5, 7, 11, 13, 17, 19]
        );
    }
}
