//! Constant-term sequences `A(n) = ct[P^n Q]`.
//!
//! Two evaluation routes are provided. [`ct_sequence`] multiplies out
//! successive powers of `P`, exactly or modulo `m`. [`DigitEvaluator`]
//! works modulo a prime power `p^r` and consumes the base-p digits of `n`,
//! so the polynomials it touches stay small; sweeps over large indices in two
//! or more variables go through it.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{Modulus, Prime};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ResiduePoly, DEFAULT_TERM_CAP};
use crate::oracles::NamedSequence;
use crate::parse::parse_str;
use crate::report::{CongruenceReport, Counterexample, ReportKind};

/// A pair `(P, Q)` describing `A(n) = ct[P^n Q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtSpec {
    p: LaurentPoly,
    q: LaurentPoly,
}

impl CtSpec {
    pub fn new(p: LaurentPoly, q: LaurentPoly) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::DimensionMismatch {
                left: p.dim(),
                right: q.dim(),
            });
        }
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(CtSpec { p, q })
    }

    /// `Q = 1`.
    pub fn unit(p: LaurentPoly) -> Result<Self> {
        let q = LaurentPoly::one(p.dim())?;
        CtSpec::new(p, q)
    }

    /// Parses `P` and optionally `Q` over the declared variables.
    pub fn parse(p: &str, q: Option<&str>, vars: &str) -> Result<Self> {
        let pp = parse_str(p, vars)?;
        let qq = match q {
            Some(q) => parse_str(q, vars)?,
            None => LaurentPoly::one(pp.dim())?,
        };
        CtSpec::new(pp, qq)
    }

    pub fn p(&self) -> &LaurentPoly {
        &self.p
    }

    pub fn q(&self) -> &LaurentPoly {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn with_q(&self, q: LaurentPoly) -> Result<Self> {
        CtSpec::new(self.p.clone(), q)
    }
}

/// Values `A(0), ..., A(n_max)`; canonical residues when a modulus is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    modulus: Option<Modulus>,
    values: Vec<BigInt>,
}

impl SequenceWindow {
    pub fn exact(values: Vec<BigInt>) -> Self {
        SequenceWindow { modulus: None, values }
    }

    pub fn from_residues(m: Modulus, residues: &[u64]) -> Self {
        SequenceWindow {
            modulus: Some(m),
            values: residues.iter().map(|&r| BigInt::from(r % m.get())).collect(),
        }
    }

    pub fn modulus(&self) -> Option<Modulus> {
        self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    /// Residues modulo `m`. Reducing a window already taken modulo `m'`
    /// only makes sense when `m | m'`.
    pub fn residues(&self, m: Modulus) -> Result<Vec<u64>> {
        if let Some(own) = self.modulus {
            if own.get() % m.get() != 0 {
                return Err(Error::InvalidInput(format!(
                    "window is taken mod {own}; cannot reduce mod {m}"
                )));
            }
        }
        Ok(self.values.iter().map(|v| m.reduce(v)).collect())
    }
}

fn ct_from_power(power: &LaurentPoly, q: &LaurentPoly) -> BigInt {
    q.terms().map(|(m, c)| power.coeff_of(&m.negated()) * c).sum()
}

fn ct_from_residue_power(power: &ResiduePoly, q: &ResiduePoly) -> u64 {
    let m = power.modulus;
    q.terms
        .iter()
        .fold(0, |acc, (mono, c)| m.add(acc, m.mul(power.coeff_of(&mono.negated()), *c)))
}

/// `ct[P^n Q]` for `n = 0..=n_max` by incremental powering.
pub fn ct_sequence(spec: &CtSpec, n_max: u64, modulus: Option<Modulus>) -> Result<SequenceWindow> {
    ct_sequence_capped(spec, n_max, modulus, DEFAULT_TERM_CAP)
}

/// As [`ct_sequence`], failing once a stored power exceeds `term_cap` terms.
pub fn ct_sequence_capped(
    spec: &CtSpec,
    n_max: u64,
    modulus: Option<Modulus>,
    term_cap: usize,
) -> Result<SequenceWindow> {
    let cap_check = |len: usize| {
        if len > term_cap {
            Err(Error::TermCap {
                terms: len,
                cap: term_cap,
            })
        } else {
            Ok(())
        }
    };
    match modulus {
        None => {
            let mut values = Vec::with_capacity(n_max as usize + 1);
            let mut power = LaurentPoly::one(spec.dim())?;
            for n in 0..=n_max {
                values.push(ct_from_power(&power, &spec.q));
                if n < n_max {
                    power = power.mul(&spec.p, None)?;
                    cap_check(power.len())?;
                }
            }
            Ok(SequenceWindow::exact(values))
        }
        Some(m) => {
            let base = spec.p.to_residues(m);
            let q = spec.q.to_residues(m);
            let mut power = ResiduePoly::one(spec.dim(), m);
            let mut values = Vec::with_capacity(n_max as usize + 1);
            for n in 0..=n_max {
                values.push(ct_from_residue_power(&power, &q));
                if n < n_max {
                    power = power.mul(&base);
                    cap_check(power.terms.len())?;
                }
            }
            Ok(SequenceWindow::from_residues(m, &values))
        }
    }
}

/// Evaluates `ct[P^n R] mod p^r` digit by digit.
///
/// With `e = p^(r-1)` and `G_{R,j}(n) = ct[P^(p^j n) R]`:
/// `G_{R,j}(pn+k) = G_{P^(p^j k) R, j+1}(n)` for `j < r-1`, and
/// `G_{R,r-1}(pn+k) = G_{L, r-1}(n) mod p^r` with `L = Λ_p[P^(e k) R]`,
/// which follows from `P(x)^(p^r) = P(x^p)^e mod p^r`. `A(n) = G_{Q,0}(n)`.
#[derive(Clone, Debug)]
pub struct DigitEvaluator {
    prime: Prime,
    r: u32,
    modulus: Modulus,
    /// `steps[j][k] = P^(p^j k) mod p^r`.
    steps: Vec<Vec<ResiduePoly>>,
    q: ResiduePoly,
}

impl DigitEvaluator {
    pub fn new(spec: &CtSpec, prime: Prime, r: u32) -> Result<Self> {
        let modulus = prime.power(r)?;
        let base = spec.p.to_residues(modulus);
        let p = prime.get() as usize;
        let mut steps = Vec::with_capacity(r as usize);
        let mut level_base = base;
        for _ in 0..r {
            let mut row = Vec::with_capacity(p);
            let mut acc = ResiduePoly::one(spec.dim(), modulus);
            for _ in 0..p {
                let next = acc.mul(&level_base);
                row.push(acc);
                acc = next;
            }
            // acc = level_base^p, the base of the next level.
            level_base = acc;
            steps.push(row);
        }
        Ok(DigitEvaluator {
            prime,
            r,
            modulus,
            steps,
            q: spec.q.to_residues(modulus),
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// One digit step at `level` (clamped to `r-1`).
    pub(crate) fn step(&self, state: &ResiduePoly, level: u32, k: u64) -> ResiduePoly {
        let j = level.min(self.r - 1);
        let next = self.steps[j as usize][k as usize].mul(state);
        if j == self.r - 1 {
            next.cartier(self.prime)
        } else {
            next
        }
    }

    /// `ct[P^n Q] mod p^r`.
    pub fn eval(&self, n: u64) -> u64 {
        self.eval_with(&self.q, n)
    }

    pub(crate) fn eval_with(&self, start: &ResiduePoly, mut n: u64) -> u64 {
        let p = self.prime.get();
        let mut state = start.clone();
        let mut level = 0u32;
        while n > 0 {
            if state.is_zero() {
                return 0;
            }
            state = self.step(&state, level, n % p);
            n /= p;
            level += 1;
        }
        state.constant_term()
    }

    /// `ct[P^n R] mod p^r` for another starting polynomial `R`.
    pub fn eval_poly(&self, r: &LaurentPoly, n: u64) -> Result<u64> {
        if r.dim() != self.q.dim {
            return Err(Error::DimensionMismatch {
                left: self.q.dim,
                right: r.dim(),
            });
        }
        Ok(self.eval_with(&r.to_residues(self.modulus), n))
    }

    /// `ct[P^n Q] mod p^r` for `n = 0..=n_max`.
    pub fn window(&self, n_max: u64) -> Vec<u64> {
        let mut memo = Memo::new(self);
        let start = memo.intern(self.q.clone());
        (0..=n_max).map(|n| memo.value(start, 0, n)).collect()
    }

    /// As [`DigitEvaluator::window`] with `R` in place of `Q`.
    pub fn window_for(&self, r: &LaurentPoly, n_max: u64) -> Result<Vec<u64>> {
        if r.dim() != self.q.dim {
            return Err(Error::DimensionMismatch {
                left: self.q.dim,
                right: r.dim(),
            });
        }
        let mut memo = Memo::new(self);
        let start = memo.intern(r.to_residues(self.modulus));
        Ok((0..=n_max).map(|n| memo.value(start, 0, n)).collect())
    }
}

/// Shares work between indices with common low digits: states are interned
/// and `G_{R,j}(n)` is cached per `(R, j, n)`.
struct Memo<'a> {
    ev: &'a DigitEvaluator,
    states: Vec<ResiduePoly>,
    ids: HashMap<ResiduePoly, usize>,
    moves: HashMap<(usize, u32, u64), usize>,
    values: HashMap<(usize, u32, u64), u64>,
}

impl<'a> Memo<'a> {
    fn new(ev: &'a DigitEvaluator) -> Self {
        Memo {
            ev,
            states: Vec::new(),
            ids: HashMap::new(),
            moves: HashMap::new(),
            values: HashMap::new(),
        }
    }

    fn intern(&mut self, poly: ResiduePoly) -> usize {
        if let Some(&id) = self.ids.get(&poly) {
            return id;
        }
        let id = self.states.len();
        self.states.push(poly.clone());
        self.ids.insert(poly, id);
        id
    }

    fn value(&mut self, state: usize, level: u32, n: u64) -> u64 {
        if n == 0 {
            return self.states[state].constant_term();
        }
        if self.states[state].is_zero() {
            return 0;
        }
        let level = level.min(self.ev.r - 1);
        if let Some(&v) = self.values.get(&(state, level, n)) {
            return v;
        }
        let p = self.ev.prime.get();
        let k = n % p;
        let next = match self.moves.get(&(state, level, k)) {
            Some(&id) => id,
            None => {
                let poly = self.ev.step(&self.states[state], level, k);
                let id = self.intern(poly);
                self.moves.insert((state, level, k), id);
                id
            }
        };
        let v = self.value(next, level + 1, n / p);
        self.values.insert((state, level, n), v);
        v
    }
}

/// Chooses an evaluation route for residue windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Powering in one variable or for short windows, digits otherwise.
    #[default]
    Auto,
    Powering,
    Digits,
}

/// Residues `ct[P^n Q] mod p^r` for `n = 0..=n_max`.
pub fn ct_residues(spec: &CtSpec, n_max: u64, prime: Prime, r: u32, method: Method) -> Result<Vec<u64>> {
    let m = prime.power(r)?;
    let powering = match method {
        Method::Powering => true,
        Method::Digits => false,
        Method::Auto => spec.dim() == 1 || n_max <= 40,
    };
    if powering {
        ct_sequence(spec, n_max, Some(m))?.residues(m)
    } else {
        Ok(DigitEvaluator::new(spec, prime, r)?.window(n_max))
    }
}

/// Compares the exact constant-term window with an oracle on `0..=n_max`.
pub fn cross_check(spec: &CtSpec, oracle: &NamedSequence, n_max: u64) -> Result<CongruenceReport> {
    let got = ct_sequence(spec, n_max, None)?;
    let want = oracle.window(n_max)?;
    let mut report = CongruenceReport::new(ReportKind::CrossCheck)
        .param("P", spec.p.to_string())
        .param("Q", spec.q.to_string())
        .param("oracle", format!("{oracle:?}"))
        .param("n_max", n_max);
    for (n, (a, b)) in got.values().iter().zip(&want).enumerate() {
        report.checked += 1;
        if a != b {
            return Ok(report.fail(Counterexample::new(
                &[("n", n as i64)],
                json!(b.to_string()),
                json!(a.to_string()),
            )));
        }
    }
    Ok(report)
}

/// Constant-term descriptions of the named sequences.
pub mod catalog {
    use super::CtSpec;
    use crate::error::{Error, Result};
    use crate::laurent::LaurentPoly;

    fn spec(p: &str, q: Option<&str>, vars: &str) -> CtSpec {
        CtSpec::parse(p, q, vars).expect("catalog expressions are valid")
    }

    /// `C(n) = ct[(1/x + 2 + x)^n (1 - x)]`.
    pub fn catalan() -> CtSpec {
        spec("x^-1 + 2 + x", Some("1 - x"), "x")
    }

    pub fn central_binomial() -> CtSpec {
        spec("x^-1 + 2 + x", None, "x")
    }

    /// `ct[(a/x + b + c x)^n]`.
    pub fn central_trinomial(a: i64, b: i64, c: i64) -> Result<CtSpec> {
        let p = LaurentPoly::from_terms(1, [(vec![-1], a), (vec![0], b), (vec![1], c)])?;
        CtSpec::unit(p)
    }

    /// `ct[(a/x + b + c x)^n (alpha + beta x)]`.
    pub fn univariate(a: i64, b: i64, c: i64, alpha: i64, beta: i64) -> Result<CtSpec> {
        let base = central_trinomial(a, b, c)?;
        let q = LaurentPoly::from_terms(1, [(vec![0], alpha), (vec![1], beta)])?;
        base.with_q(q)
    }

    pub fn apery() -> CtSpec {
        spec("(x + y)*(z + 1)*(x + y + z)*(y + z + 1)/(x*y*z)", None, "x,y,z")
    }

    /// `ct[((1 + x_1 + ... + x_{s-1})(1 + 1/x_1 + ... + 1/x_{s-1}))^n]`.
    pub fn abelian_squares(s: u32) -> Result<CtSpec> {
        if s == 0 || s > 5 {
            return Err(Error::InvalidInput(format!("abelian squares need 1 <= s <= 5, got {s}")));
        }
        let dim = (s as usize - 1).max(1);
        let mut up = vec![(vec![0; dim], 1i64)];
        let mut down = vec![(vec![0; dim], 1i64)];
        for i in 0..s as usize - 1 {
            let mut e = vec![0; dim];
            e[i] = 1;
            up.push((e.clone(), 1));
            e[i] = -1;
            down.push((e, 1));
        }
        let p = LaurentPoly::from_terms(dim, up)?.mul(&LaurentPoly::from_terms(dim, down)?, None)?;
        CtSpec::unit(p)
    }

    pub fn s_sequence() -> CtSpec {
        spec("(1 + x)*(1 + y + 1/(x*y))", None, "x,y")
    }

    /// `P = x + y + 1/x - 1/y` with `Q = 1 + x + xy`.
    pub fn hypergeometric_d() -> CtSpec {
        spec("x + y + x^-1 - y^-1", Some("1 + x + x*y"), "x,y")
    }

    /// `P = 4 + x + y + 1/x + 1/y` with the given `Q`.
    pub fn zagier(q: &str) -> CtSpec {
        spec("4 + x + y + x^-1 + y^-1", Some(q), "x,y")
    }

    /// `P = lambda + x + y + 1/x - 1/y` with `Q = x`.
    pub fn lambda_family(lambda: i64) -> Result<CtSpec> {
        let p = LaurentPoly::from_terms(
            2,
            [
                (vec![0, 0], lambda),
                (vec![1, 0], 1),
                (vec![0, 1], 1),
                (vec![-1, 0], 1),
                (vec![0, -1], -1),
            ],
        )?;
        CtSpec::new(p, LaurentPoly::var(2, 0)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{self, LambdaWhich};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn catalan_window() {
        let w = ct_sequence(&catalog::catalan(), 5, None).unwrap();
        assert_eq!(w.values(), ints(&[1, 1, 2, 5, 14, 42]).as_slice());
    }

    #[test]
    fn zagier_with_q_x() {
        let w = ct_sequence(&catalog::zagier("x"), 7, None).unwrap();
        assert_eq!(w.values(), ints(&[0, 1, 8, 57, 400, 2820, 20064, 144137]).as_slice());
    }

    #[test]
    fn empty_power() {
        for spec in [catalog::apery(), catalog::s_sequence(), catalog::central_binomial()] {
            assert_eq!(ct_sequence(&spec, 0, None).unwrap().values(), ints(&[1]).as_slice());
        }
    }

    #[test]
    fn spec_validation() {
        let x = LaurentPoly::var(1, 0).unwrap();
        let y2 = LaurentPoly::var(2, 1).unwrap();
        assert!(CtSpec::new(x.clone(), y2).is_err());
        assert!(CtSpec::unit(LaurentPoly::zero(1).unwrap()).is_err());
        assert!(CtSpec::unit(x).is_ok());
    }

    #[test]
    fn modular_window_matches_exact() {
        let specs = [
            catalog::catalan(),
            catalog::central_binomial(),
            catalog::s_sequence(),
            catalog::hypergeometric_d(),
            catalog::zagier("x"),
        ];
        for spec in &specs {
            let exact = ct_sequence(spec, 60, None).unwrap();
            for m in [2u64, 9, 25, 7] {
                let m = Modulus::new(m).unwrap();
                let red = ct_sequence(spec, 60, Some(m)).unwrap();
                assert_eq!(red.residues(m).unwrap(), exact.residues(m).unwrap());
            }
        }
    }

    #[test]
    fn digit_evaluator_matches_powering() {
        let specs = [
            catalog::catalan(),
            catalog::s_sequence(),
            catalog::hypergeometric_d(),
            catalog::zagier("x"),
            catalog::lambda_family(2).unwrap(),
            catalog::central_trinomial(2, -3, 5).unwrap(),
        ];
        for spec in &specs {
            let exact = ct_sequence(spec, 90, None).unwrap();
            for p in [2u64, 3, 5] {
                for r in 1..=3 {
                    let prime = Prime::new(p).unwrap();
                    let m = prime.power(r).unwrap();
                    let ev = DigitEvaluator::new(spec, prime, r).unwrap();
                    assert_eq!(ev.window(90), exact.residues(m).unwrap(), "{spec:?} p={p} r={r}");
                }
            }
        }
    }

    #[test]
    fn memoized_window_matches_single_evaluations() {
        let spec = catalog::zagier("x");
        let ev = DigitEvaluator::new(&spec, Prime::new(5).unwrap(), 2).unwrap();
        let w = ev.window(300);
        for n in (0..=300).step_by(7) {
            assert_eq!(w[n as usize], ev.eval(n));
        }
        let one = LaurentPoly::one(2).unwrap();
        let b = ev.window_for(&one, 50).unwrap();
        let exact = ct_sequence(&spec.with_q(one).unwrap(), 50, None).unwrap();
        assert_eq!(b, exact.residues(ev.modulus()).unwrap());
    }

    #[test]
    fn apery_small_window() {
        let w = ct_sequence(&catalog::apery(), 6, None).unwrap();
        let want: Vec<BigInt> = (0..=6).map(oracles::apery).collect();
        assert_eq!(w.values(), want.as_slice());
        let ev = DigitEvaluator::new(&catalog::apery(), Prime::new(3).unwrap(), 2).unwrap();
        assert_eq!(ev.eval(20), Modulus::new(9).unwrap().reduce(&oracles::apery(20)));
    }

    #[test]
    fn abelian_square_specs() {
        for s in 1..=3 {
            let spec = catalog::abelian_squares(s).unwrap();
            let got = ct_sequence(&spec, 12, None).unwrap();
            assert_eq!(
                got.values(),
                oracles::abelian_squares_window(s, 12).unwrap().as_slice()
            );
        }
    }

    #[test]
    fn cross_checks() {
        let r = cross_check(&catalog::catalan(), &NamedSequence::Catalan, 100).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 101);

        let wrong = catalog::central_binomial();
        let r = cross_check(&wrong, &NamedSequence::Catalan, 20).unwrap();
        assert!(!r.passed());
        // C(0) = C(1) = 1 = binom(0,0); binom(2,1) = 2 differs first.
        assert_eq!(r.counterexample.unwrap().index("n"), Some(1));
    }

    #[test]
    fn lambda_family_matches_oracle() {
        for lambda in [-2, 0, 1, 3] {
            let spec = catalog::lambda_family(lambda).unwrap();
            let a = NamedSequence::Lambda {
                lambda,
                which: LambdaWhich::A,
            };
            assert!(cross_check(&spec, &a, 30).unwrap().passed());
            let b = NamedSequence::Lambda {
                lambda,
                which: LambdaWhich::B,
            };
            let unit = spec.with_q(LaurentPoly::one(2).unwrap()).unwrap();
            assert!(cross_check(&unit, &b, 30).unwrap().passed());
        }
    }

    #[test]
    fn term_cap_is_enforced() {
        let err = ct_sequence_capped(&catalog::apery(), 10, None, 50).unwrap_err();
        assert!(matches!(err, Error::TermCap { cap: 50, .. }));
    }

    #[test]
    fn window_residue_guard() {
        let m9 = Modulus::new(9).unwrap();
        let w = ct_sequence(&catalog::catalan(), 10, Some(m9)).unwrap();
        assert!(w.residues(Modulus::new(3).unwrap()).is_ok());
        assert!(w.residues(Modulus::new(5).unwrap()).is_err());
    }
}
