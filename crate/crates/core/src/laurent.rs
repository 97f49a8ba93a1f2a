//! Exact sparse Laurent polynomials in up to four variables.
//!
//! Terms are kept as a vector of `(Monomial, coefficient)` pairs sorted in
//! graded-lexicographic order with no zero coefficients, so equality is
//! structural and printing is canonical. Shifting every exponent by a fixed
//! vector preserves this order, which lets multiplication run as a merge of
//! shifted copies instead of going through a hash map.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{residue_of, Modulus, Prime};
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

/// Default ceiling on stored terms for a single power.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// Exponent vector `x1^k1 ... xd^kd`; entries beyond `dim` are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [i32; MAX_DIM],
    dim: u8,
}

impl Monomial {
    pub fn new(exps: &[i32]) -> Result<Self> {
        check_dim(exps.len())?;
        let mut e = [0; MAX_DIM];
        e[..exps.len()].copy_from_slice(exps);
        Ok(Monomial {
            exps: e,
            dim: exps.len() as u8,
        })
    }

    pub fn one(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Monomial {
            exps: [0; MAX_DIM],
            dim: dim as u8,
        })
    }

    /// The variable `x_i` (zero based).
    pub fn var(dim: usize, i: usize) -> Result<Self> {
        let mut m = Monomial::one(dim)?;
        if i >= dim {
            return Err(Error::InvalidInput(format!("variable {i} out of range for dimension {dim}")));
        }
        m.exps[i] = 1;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps[..self.dim as usize]
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub(crate) fn shift(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        Monomial { exps, dim: self.dim }
    }

    pub(crate) fn negated(&self) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = -*e;
        }
        Monomial { exps, dim: self.dim }
    }

    pub(crate) fn scaled(&self, factor: i32) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e *= factor;
        }
        Monomial { exps, dim: self.dim }
    }

    /// Divides every exponent by `p` when all are divisible.
    pub(crate) fn contract(&self, p: i32) -> Option<Monomial> {
        if self.exps.iter().all(|e| e.rem_euclid(p) == 0) {
            let mut exps = self.exps;
            for e in exps.iter_mut() {
                *e /= p;
            }
            Some(Monomial { exps, dim: self.dim })
        } else {
            None
        }
    }

    pub(crate) fn max_abs_exponent(&self) -> i64 {
        self.exps.iter().map(|e| (*e as i64).abs()).max().unwrap_or(0)
    }
}

impl Ord for Monomial {
    /// Ascending total degree; within a degree, larger exponent vectors first
    /// (so `x` precedes `y`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Multiplies two sorted term lists by merging shifted copies of the longer
/// one, one copy per term of the shorter one.
pub(crate) fn product_terms<C, M, A, Z>(
    f: &[(Monomial, C)],
    g: &[(Monomial, C)],
    mul: M,
    add: A,
    is_zero: Z,
) -> Vec<(Monomial, C)>
where
    C: Clone,
    M: Fn(&C, &C) -> C,
    A: Fn(&C, &C) -> C + Copy,
    Z: Fn(&C) -> bool + Copy,
{
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let (long, short) = if f.len() >= g.len() { (f, g) } else { (g, f) };
    let mut runs: Vec<Vec<(Monomial, C)>> = short
        .iter()
        .map(|(ms, cs)| {
            long.iter()
                .filter_map(|(ml, cl)| {
                    let c = mul(cl, cs);
                    (!is_zero(&c)).then(|| (ml.shift(ms), c))
                })
                .collect()
        })
        .collect();
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge_terms(a, b, add, is_zero)),
                None => next.push(a),
            }
        }
        runs = next;
    }
    runs.pop().unwrap_or_default()
}

pub(crate) fn merge_terms<C, A, Z>(
    a: Vec<(Monomial, C)>,
    b: Vec<(Monomial, C)>,
    add: A,
    is_zero: Z,
) -> Vec<(Monomial, C)>
where
    A: Fn(&C, &C) -> C,
    Z: Fn(&C) -> bool,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (m, ca) = ia.next().unwrap();
                let (_, cb) = ib.next().unwrap();
                let c = add(&ca, &cb);
                if !is_zero(&c) {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

fn sort_and_combine<C, A, Z>(mut terms: Vec<(Monomial, C)>, add: A, is_zero: Z) -> Vec<(Monomial, C)>
where
    A: Fn(&C, &C) -> C,
    Z: Fn(&C) -> bool,
{
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = add(lc, &c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !is_zero(c));
    out
}

fn big_add(a: &BigInt, b: &BigInt) -> BigInt {
    a + b
}

fn big_mul(a: &BigInt, b: &BigInt) -> BigInt {
    a * b
}

fn big_zero(a: &BigInt) -> bool {
    a.is_zero()
}

/// Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(LaurentPoly {
            dim,
            terms: Vec::new(),
        })
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::constant(dim, BigInt::one())
    }

    pub fn constant(dim: usize, c: impl Into<BigInt>) -> Result<Self> {
        Self::monomial(Monomial::one(dim)?, c)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Result<Self> {
        let c = c.into();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Ok(LaurentPoly { dim: m.dim(), terms })
    }

    /// The variable `x_i` (zero based) in `dim` variables.
    pub fn var(dim: usize, i: usize) -> Result<Self> {
        Self::monomial(Monomial::var(dim, i)?, 1)
    }

    /// Builds a polynomial from arbitrary `(exponents, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
        C: Into<BigInt>,
    {
        check_dim(dim)?;
        let mut raw = Vec::new();
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: exps.len(),
                });
            }
            raw.push((Monomial::new(&exps)?, c.into()));
        }
        Ok(LaurentPoly {
            dim,
            terms: sort_and_combine(raw, big_add, big_zero),
        })
    }

    pub(crate) fn from_sorted(dim: usize, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    fn check_same_dim(&self, other: &LaurentPoly) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_dim(other)?;
        Ok(LaurentPoly {
            dim: self.dim,
            terms: merge_terms(self.terms.clone(), other.terms.clone(), big_add, big_zero),
        })
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly {
                dim: self.dim,
                terms: Vec::new(),
            };
        }
        LaurentPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Exact product, reduced to canonical residues when `modulus` is given.
    pub fn mul(&self, other: &LaurentPoly, modulus: Option<Modulus>) -> Result<LaurentPoly> {
        self.check_same_dim(other)?;
        let terms = product_terms(&self.terms, &other.terms, big_mul, big_add, big_zero);
        let out = LaurentPoly {
            dim: self.dim,
            terms,
        };
        Ok(match modulus {
            Some(m) => out.reduce_mod(m),
            None => out,
        })
    }

    /// `self^n`, computed by repeated multiplication (see [`Powers`]).
    pub fn pow(&self, n: u64, modulus: Option<Modulus>) -> LaurentPoly {
        let mut powers = Powers::new(self, modulus);
        let mut current = powers.next().expect("powers are infinite");
        for _ in 0..n {
            current = powers.next().expect("powers are infinite");
        }
        current
    }

    /// Cartier operator: keeps the terms whose exponents are all divisible
    /// by `p` and divides those exponents by `p`.
    pub fn cartier(&self, p: Prime) -> LaurentPoly {
        let p = p.get() as i32;
        // Contraction preserves the graded-lex order among surviving terms.
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.contract(p).map(|m| (m, c.clone())))
            .collect();
        LaurentPoly::from_sorted(self.dim, terms)
    }

    /// Substitutes `x_i -> x_i^p` for every variable.
    pub fn frobenius_substitute(&self, p: Prime) -> LaurentPoly {
        let p = p.get() as i32;
        let terms = self.terms.iter().map(|(m, c)| (m.scaled(p), c.clone())).collect();
        LaurentPoly::from_sorted(self.dim, terms)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff_of(&Monomial {
            exps: [0; MAX_DIM],
            dim: self.dim as u8,
        })
    }

    pub fn coeff_at(&self, k: &Monomial) -> Result<BigInt> {
        if k.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: k.dim(),
            });
        }
        Ok(self.coeff_of(k))
    }

    pub(crate) fn coeff_of(&self, k: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(m, _)| m.cmp(k))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Substitutes `x_i -> 1/x_i` for each flagged variable.
    pub fn reflect(&self, flags: &[bool]) -> Result<LaurentPoly> {
        if flags.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: flags.len(),
            });
        }
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps;
                for (e, &f) in exps.iter_mut().zip(flags) {
                    if f {
                        *e = -*e;
                    }
                }
                (Monomial { exps, dim: m.dim }, c.clone())
            })
            .collect();
        Ok(LaurentPoly {
            dim: self.dim,
            terms: sort_and_combine(raw, big_add, big_zero),
        })
    }

    /// Coefficients replaced by canonical residues in `0..m`; zeros dropped.
    pub fn reduce_mod(&self, m: Modulus) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(mono, c)| {
                let r = residue_of(c, m);
                (r != 0).then(|| (*mono, BigInt::from(r)))
            })
            .collect();
        LaurentPoly::from_sorted(self.dim, terms)
    }

    /// Largest absolute exponent over the support (0 for the zero polynomial).
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.max_abs_exponent()).max().unwrap_or(0)
    }

    /// Componentwise exponent range `(min, max)` per variable.
    pub fn exponent_box(&self) -> Vec<(i32, i32)> {
        let mut b = vec![(0, 0); self.dim];
        for (i, slot) in b.iter_mut().enumerate() {
            let it = self.terms.iter().map(|(m, _)| m.exps[i]);
            *slot = (it.clone().min().unwrap_or(0), it.max().unwrap_or(0));
        }
        b
    }

    pub(crate) fn to_residues(&self, m: Modulus) -> ResiduePoly {
        ResiduePoly {
            dim: self.dim,
            modulus: m,
            terms: self
                .terms
                .iter()
                .filter_map(|(mono, c)| {
                    let r = residue_of(c, m);
                    (r != 0).then_some((*mono, r))
                })
                .collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::to_canonical_string(self))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// Successive powers `f^0, f^1, f^2, ...`, each obtained from the previous
/// one by a single multiplication.
pub struct Powers<'a> {
    base: &'a LaurentPoly,
    modulus: Option<Modulus>,
    next: Option<LaurentPoly>,
}

impl<'a> Powers<'a> {
    pub fn new(base: &'a LaurentPoly, modulus: Option<Modulus>) -> Self {
        let one = LaurentPoly::one(base.dim).expect("dimension already validated");
        let one = match modulus {
            Some(m) => one.reduce_mod(m),
            None => one,
        };
        Powers {
            base,
            modulus,
            next: Some(one),
        }
    }
}

impl Iterator for Powers<'_> {
    type Item = LaurentPoly;

    fn next(&mut self) -> Option<LaurentPoly> {
        let current = self.next.take()?;
        self.next = Some(
            current
                .mul(self.base, self.modulus)
                .expect("same dimension by construction"),
        );
        Some(current)
    }
}

/// Laurent polynomial over `Z/mZ` with machine-word residues; used on the
/// modular hot paths.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ResiduePoly {
    pub(crate) dim: usize,
    pub(crate) modulus: Modulus,
    pub(crate) terms: Vec<(Monomial, u64)>,
}

impl ResiduePoly {
    pub(crate) fn one(dim: usize, modulus: Modulus) -> Self {
        ResiduePoly {
            dim,
            modulus,
            terms: vec![(
                Monomial {
                    exps: [0; MAX_DIM],
                    dim: dim as u8,
                },
                1 % modulus.get(),
            )],
        }
    }

    pub(crate) fn mul(&self, other: &ResiduePoly) -> ResiduePoly {
        let m = self.modulus;
        ResiduePoly {
            dim: self.dim,
            modulus: m,
            terms: product_terms(
                &self.terms,
                &other.terms,
                |a, b| m.mul(*a, *b),
                |a, b| m.add(*a, *b),
                |a| *a == 0,
            ),
        }
    }

    pub(crate) fn coeff_of(&self, k: &Monomial) -> u64 {
        self.terms
            .binary_search_by(|(mono, _)| mono.cmp(k))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub(crate) fn constant_term(&self) -> u64 {
        self.coeff_of(&Monomial {
            exps: [0; MAX_DIM],
            dim: self.dim as u8,
        })
    }

    pub(crate) fn cartier(&self, p: Prime) -> ResiduePoly {
        let p = p.get() as i32;
        ResiduePoly {
            dim: self.dim,
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .filter_map(|(mono, c)| mono.contract(p).map(|mono| (mono, *c)))
                .collect(),
        }
    }

    pub(crate) fn scale(&self, k: u64) -> ResiduePoly {
        let m = self.modulus;
        ResiduePoly {
            dim: self.dim,
            modulus: m,
            terms: self
                .terms
                .iter()
                .filter_map(|(mono, c)| {
                    let v = m.mul(*c, k);
                    (v != 0).then_some((*mono, v))
                })
                .collect(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn max_abs_exponent(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.max_abs_exponent()).max().unwrap_or(0)
    }

    pub(crate) fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_sorted(
            self.dim,
            self.terms.iter().map(|(m, c)| (*m, BigInt::from(*c))).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly1(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| (vec![e], c))).unwrap()
    }

    fn poly2(terms: &[((i32, i32), i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(2, terms.iter().map(|&((a, b), c)| (vec![a, b], c))).unwrap()
    }

    fn m(k: u64) -> Option<Modulus> {
        Some(Modulus::new(k).unwrap())
    }

    fn p(k: u64) -> Prime {
        Prime::new(k).unwrap()
    }

    fn central() -> LaurentPoly {
        poly1(&[(-1, 1), (0, 2), (1, 1)])
    }

    #[test]
    fn add_cancels() {
        let f = poly1(&[(1, 1), (0, 1)]);
        let g = poly1(&[(1, -1)]);
        assert_eq!(f.add(&g).unwrap(), poly1(&[(0, 1)]));
        assert_eq!(f.add(&LaurentPoly::zero(1).unwrap()).unwrap(), f);
        let h = poly1(&[(0, 1), (1, -1)]);
        assert_eq!(central().add(&h).unwrap(), poly1(&[(-1, 1), (0, 3)]));
    }

    #[test]
    fn add_dimension_mismatch() {
        let f = poly1(&[(1, 1)]);
        let g = poly2(&[((1, 0), 1)]);
        assert!(matches!(f.add(&g), Err(Error::DimensionMismatch { .. })));
        assert!(f.mul(&g, None).is_err());
    }

    #[test]
    fn mul_examples() {
        let f = poly1(&[(0, 1), (1, 1)]);
        assert_eq!(f.mul(&f, None).unwrap(), poly1(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(f.mul(&f, m(2)).unwrap(), poly1(&[(0, 1), (2, 1)]));
        let sq = poly1(&[(-2, 1), (-1, 4), (0, 6), (1, 4), (2, 1)]);
        assert_eq!(central().mul(&central(), None).unwrap(), sq);
    }

    #[test]
    fn pow_examples() {
        let any = poly2(&[((1, -1), 3), ((0, 0), -2)]);
        assert_eq!(any.pow(0, None), LaurentPoly::one(2).unwrap());
        assert_eq!(
            central().pow(2, None),
            poly1(&[(-2, 1), (-1, 4), (0, 6), (1, 4), (2, 1)])
        );
        let f = poly1(&[(0, 1), (1, 1)]);
        assert_eq!(f.pow(3, m(3)), poly1(&[(0, 1), (3, 1)]));
    }

    #[test]
    fn cartier_examples() {
        let f = poly1(&[(3, 1), (1, 2), (0, 5)]);
        assert_eq!(f.cartier(p(3)), poly1(&[(1, 1), (0, 5)]));
        let g = poly2(&[((-2, 0), 1), ((-1, 0), 3), ((2, 2), 1)]);
        assert_eq!(g.cartier(p(2)), poly2(&[((-1, 0), 1), ((1, 1), 1)]));
        assert_eq!(central().pow(2, None).cartier(p(3)), poly1(&[(0, 6)]));
    }

    #[test]
    fn frobenius_examples() {
        let f = poly1(&[(0, 1), (1, 1)]);
        assert_eq!(f.frobenius_substitute(p(2)), poly1(&[(0, 1), (2, 1)]));
        let g = poly2(&[((-1, 1), 1)]);
        assert_eq!(g.frobenius_substitute(p(3)), poly2(&[((-3, 3), 1)]));
        let c = poly2(&[((0, 0), 7)]);
        assert_eq!(c.frobenius_substitute(p(5)), c);
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(central().pow(2, None).constant_term(), BigInt::from(6));
        assert_eq!(poly2(&[((1, 0), 1), ((0, 1), 1)]).constant_term(), BigInt::from(0));
        assert_eq!(poly1(&[(0, 5)]).constant_term(), BigInt::from(5));

        let x = Monomial::new(&[1]).unwrap();
        assert_eq!(central().coeff_at(&x).unwrap(), BigInt::from(1));
        let xinv = Monomial::new(&[-1]).unwrap();
        assert_eq!(central().pow(4, None).coeff_at(&xinv).unwrap(), BigInt::from(56));
        let xy = Monomial::new(&[1, 1]).unwrap();
        assert_eq!(
            poly2(&[((1, 0), 1), ((0, 1), 1)]).coeff_at(&xy).unwrap(),
            BigInt::from(0)
        );
        assert!(central().coeff_at(&xy).is_err());
    }

    #[test]
    fn reflect_examples() {
        let inv_xy = poly2(&[((-1, -1), 1)]);
        assert_eq!(inv_xy.reflect(&[true, true]).unwrap(), poly2(&[((1, 1), 1)]));
        let f = poly2(&[((1, -1), 2), ((0, 0), 3)]);
        assert_eq!(f.reflect(&[false, false]).unwrap(), f);
        let x_over_y = poly2(&[((1, -1), 1)]);
        assert_eq!(x_over_y.reflect(&[false, true]).unwrap(), poly2(&[((1, 1), 1)]));
        assert!(f.reflect(&[true]).is_err());
    }

    #[test]
    fn reduce_mod_examples() {
        let f = poly1(&[(1, 3), (0, 5)]);
        assert_eq!(f.reduce_mod(Modulus::new(3).unwrap()), poly1(&[(0, 2)]));
        let g = poly1(&[(0, 1), (1, 2), (2, 1)]);
        assert_eq!(g.reduce_mod(Modulus::new(2).unwrap()), poly1(&[(0, 1), (2, 1)]));
        let h = poly1(&[(0, -1), (1, 1)]);
        assert_eq!(h.reduce_mod(Modulus::new(5).unwrap()), poly1(&[(0, 4), (1, 1)]));
    }

    #[test]
    fn graded_lex_order() {
        let f = poly2(&[((0, 1), 1), ((1, 0), 1), ((-1, 0), 1), ((0, 0), 1)]);
        let order: Vec<Vec<i32>> = f.support().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![-1, 0], vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(LaurentPoly::zero(0), Err(Error::UnsupportedDimension(0))));
        assert!(matches!(LaurentPoly::zero(5), Err(Error::UnsupportedDimension(5))));
        assert!(Monomial::new(&[1, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn residue_kernel_matches_bigint_kernel() {
        let f = poly2(&[((-1, 0), 3), ((0, 1), -2), ((1, 1), 5), ((0, 0), 1)]);
        let md = Modulus::new(9).unwrap();
        let mut r = ResiduePoly::one(2, md);
        let fr = f.to_residues(md);
        for n in 0..12 {
            assert_eq!(r.to_laurent(), f.pow(n, Some(md)));
            r = r.mul(&fr);
        }
    }
}
