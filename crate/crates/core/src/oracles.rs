//! Closed forms and binomial sums for the named sequences.
//!
//! Nothing here touches the Laurent polynomial kernel; these are the
//! independent routes that constant-term computations are checked against.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Modulus, Prime};
use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `n` of Pascal's triangle.
fn pascal_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// Binomial coefficient mod a prime by base-p digits of `n` and `k`.
pub fn binomial_mod_prime(n: u64, k: u64, p: Prime) -> u64 {
    if k > n {
        return 0;
    }
    let pm = p.modulus();
    let pv = p.get();
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % pv, k % pv);
        if kd > nd {
            return 0;
        }
        acc = pm.mul(acc, small_binomial_mod(nd, kd, pm));
        n /= pv;
        k /= pv;
    }
    acc
}

fn small_binomial_mod(n: u64, k: u64, m: Modulus) -> u64 {
    m.reduce(&binomial(n, k))
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

pub fn catalan(n: u64) -> BigInt {
    central_binomial(n) / (n + 1)
}

/// `C(0..=n_max)` by the ratio recurrence.
pub fn catalan_window(n_max: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut c = BigInt::one();
    for n in 0..=n_max {
        out.push(c.clone());
        c = c * (2 * (2 * n + 1)) / (n + 2);
    }
    out
}

pub fn central_binomial_window(n_max: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut c = BigInt::one();
    for n in 0..=n_max {
        out.push(c.clone());
        c = c * (2 * (2 * n + 1)) / (n + 1);
    }
    out
}

/// `sum_k C(n, 2k) C(2k, k) (ac)^k b^(n-2k)`.
pub fn central_trinomial(a: i64, b: i64, c: i64, n: u64) -> BigInt {
    let row = pascal_row(n);
    let ac = BigInt::from(a) * c;
    let b = BigInt::from(b);
    (0..=n / 2)
        .map(|k| &row[2 * k as usize] * central_binomial(k) * ac.pow(k as u32) * b.pow((n - 2 * k) as u32))
        .sum()
}

/// Apéry numbers `sum_k C(n,k)^2 C(n+k,k)^2`.
pub fn apery(n: u64) -> BigInt {
    let row = pascal_row(n);
    (0..=n)
        .map(|k| {
            let t = &row[k as usize] * binomial(n + k, k);
            &t * &t
        })
        .sum()
}

/// Sum of squared multinomials over compositions of `n` into `s` parts.
pub fn abelian_squares(s: u32, n: u64) -> Result<BigInt> {
    Ok(abelian_squares_window(s, n)?.pop().expect("nonempty"))
}

pub fn abelian_squares_window(s: u32, n_max: u64) -> Result<Vec<BigInt>> {
    if s == 0 {
        return Err(Error::InvalidInput("abelian squares need s >= 1".into()));
    }
    // A_1 = 1; A_s(n) = sum_k C(n,k)^2 A_{s-1}(n-k).
    let mut prev: Vec<BigInt> = vec![BigInt::one(); n_max as usize + 1];
    for _ in 1..s {
        let next = (0..=n_max)
            .map(|n| {
                let row = pascal_row(n);
                (0..=n)
                    .map(|k| &row[k as usize] * &row[k as usize] * &prev[(n - k) as usize])
                    .sum()
            })
            .collect();
        prev = next;
    }
    Ok(prev)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SVariant {
    /// `sum_k C(n,k)^2 C(n-k,k)`
    Squared,
    /// `sum_k C(n,k) C(n,2k) C(2k,k)`
    TrinomialStyle,
}

pub fn s_sequence(n: u64, variant: SVariant) -> BigInt {
    let row = pascal_row(n);
    match variant {
        SVariant::Squared => (0..=n / 2)
            .map(|k| &row[k as usize] * &row[k as usize] * binomial(n - k, k))
            .sum(),
        SVariant::TrinomialStyle => (0..=n / 2)
            .map(|k| &row[k as usize] * &row[2 * k as usize] * central_binomial(k))
            .sum(),
    }
}

/// `S(n) mod p` through binomials mod p, for ranges where exact values
/// get expensive.
pub fn s_sequence_mod_prime(n: u64, p: Prime) -> u64 {
    let m = p.modulus();
    (0..=n / 2).fold(0, |acc, k| {
        let b = binomial_mod_prime(n, k, p);
        let t = m.mul(m.mul(b, b), binomial_mod_prime(n - k, k, p));
        m.add(acc, t)
    })
}

/// `(-1)^(floor(n/2) + floor(n/4)) C(n, floor(n/2)) C(floor(n/2), floor(n/4))`.
pub fn hypergeometric_d(n: u64) -> BigInt {
    let (h, q) = (n / 2, n / 4);
    let v = binomial(n, h) * binomial(h, q);
    if (h + q) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Zagier's sequence E: `sum_k C(n,k) C(2k,k) C(2(n-k), n-k)`.
pub fn zagier_e(n: u64) -> BigInt {
    let row = pascal_row(n);
    (0..=n)
        .map(|k| &row[k as usize] * central_binomial(k) * central_binomial(n - k))
        .sum()
}

/// `E(n+1)/4 - E(n)`, with the division by four checked to be exact.
pub fn zagier_e_shift(n: u64) -> Result<BigInt> {
    let num = zagier_e(n + 1) - BigInt::from(4) * zagier_e(n);
    let (q, r) = num.div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(Error::Oracle(format!("E({}) - 4 E({}) not divisible by 4", n + 1, n)));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaWhich {
    /// `sum_{k odd} lambda^(n-k) C(n,k) D(k)`
    A,
    /// `sum_k (-1)^k lambda^(n-4k) C(n,4k) C(4k,2k) C(2k,k)`
    B,
}

pub fn lambda_family(lambda: i64, n: u64, which: LambdaWhich) -> BigInt {
    let row = pascal_row(n);
    let l = BigInt::from(lambda);
    match which {
        LambdaWhich::A => (1..=n)
            .step_by(2)
            .map(|k| l.pow((n - k) as u32) * &row[k as usize] * hypergeometric_d(k))
            .sum(),
        LambdaWhich::B => (0..=n / 4)
            .map(|k| {
                let t = l.pow((n - 4 * k) as u32)
                    * &row[4 * k as usize]
                    * binomial(4 * k, 2 * k)
                    * binomial(2 * k, k);
                if k % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .sum(),
    }
}

/// A sequence with an independent closed form or binomial sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSequence {
    Catalan,
    CentralBinomial,
    CentralTrinomial { a: i64, b: i64, c: i64 },
    Apery,
    AbelianSquares { s: u32 },
    S(SVariant),
    HypergeometricD,
    ZagierE,
    ZagierEShift,
    Lambda { lambda: i64, which: LambdaWhich },
    /// Constant sequence, mostly useful as a control.
    Constant(i64),
}

impl NamedSequence {
    /// Parses names such as `catalan`, `trinomial:1,1,1`, `abelian:3`,
    /// `lambda-a:2`.
    pub fn from_name(name: &str) -> Result<Self> {
        let (head, args) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let ints = |a: Option<&str>| -> Result<Vec<i64>> {
            a.unwrap_or("")
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad sequence argument {s:?}")))
                })
                .collect()
        };
        let args = ints(args)?;
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("sequence {head:?} takes {k} argument(s)")))
            }
        };
        Ok(match head {
            "catalan" => NamedSequence::Catalan,
            "central-binomial" => NamedSequence::CentralBinomial,
            "central-trinomial" => NamedSequence::CentralTrinomial { a: 1, b: 1, c: 1 },
            "trinomial" => {
                arity(3)?;
                NamedSequence::CentralTrinomial {
                    a: args[0],
                    b: args[1],
                    c: args[2],
                }
            }
            "apery" => NamedSequence::Apery,
            "abelian" => {
                arity(1)?;
                NamedSequence::AbelianSquares { s: args[0] as u32 }
            }
            "s" => NamedSequence::S(SVariant::Squared),
            "s-trinomial" => NamedSequence::S(SVariant::TrinomialStyle),
            "d" => NamedSequence::HypergeometricD,
            "zagier-e" => NamedSequence::ZagierE,
            "zagier-e-shift" => NamedSequence::ZagierEShift,
            "lambda-a" | "lambda-b" => {
                arity(1)?;
                NamedSequence::Lambda {
                    lambda: args[0],
                    which: if head == "lambda-a" {
                        LambdaWhich::A
                    } else {
                        LambdaWhich::B
                    },
                }
            }
            "one" => NamedSequence::Constant(1),
            _ => return Err(Error::InvalidInput(format!("unknown sequence {name:?}"))),
        })
    }

    pub fn value(&self, n: u64) -> Result<BigInt> {
        Ok(match self {
            NamedSequence::Catalan => catalan(n),
            NamedSequence::CentralBinomial => central_binomial(n),
            NamedSequence::CentralTrinomial { a, b, c } => central_trinomial(*a, *b, *c, n),
            NamedSequence::Apery => apery(n),
            NamedSequence::AbelianSquares { s } => abelian_squares(*s, n)?,
            NamedSequence::S(v) => s_sequence(n, *v),
            NamedSequence::HypergeometricD => hypergeometric_d(n),
            NamedSequence::ZagierE => zagier_e(n),
            NamedSequence::ZagierEShift => zagier_e_shift(n)?,
            NamedSequence::Lambda { lambda, which } => lambda_family(*lambda, n, *which),
            NamedSequence::Constant(c) => BigInt::from(*c),
        })
    }

    pub fn window(&self, n_max: u64) -> Result<Vec<BigInt>> {
        match self {
            NamedSequence::Catalan => Ok(catalan_window(n_max)),
            NamedSequence::CentralBinomial => Ok(central_binomial_window(n_max)),
            NamedSequence::AbelianSquares { s } => abelian_squares_window(*s, n_max),
            _ => (0..=n_max).map(|n| self.value(n)).collect(),
        }
    }

    /// Residues of the first `n_max + 1` terms.
    pub fn residues(&self, n_max: u64, m: Modulus) -> Result<Vec<u64>> {
        if let (NamedSequence::S(_), Ok(p)) = (self, Prime::new(m.get())) {
            return Ok((0..=n_max).map(|n| s_sequence_mod_prime(n, p)).collect());
        }
        Ok(self.window(n_max)?.iter().map(|v| m.reduce(v)).collect())
    }

    pub fn is_nonnegative(&self, n_max: u64) -> Result<bool> {
        Ok(self.window(n_max)?.iter().all(|v| !v.is_negative()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn catalan_and_central_binomial() {
        assert_eq!(central_binomial(4), big(70));
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(5), big(42));
        let w = catalan_window(10);
        assert_eq!(w, (0..=10).map(catalan).collect::<Vec<_>>());
        assert_eq!(
            central_binomial_window(12),
            (0..=12).map(central_binomial).collect::<Vec<_>>()
        );
    }

    #[test]
    fn catalan_ballot_recurrence() {
        let w = catalan_window(30);
        for n in 0..30usize {
            let conv: BigInt = (0..=n).map(|i| &w[i] * &w[n - i]).sum();
            assert_eq!(w[n + 1], conv);
        }
    }

    #[test]
    fn trinomials() {
        assert_eq!(central_trinomial(1, 1, 1, 4), big(19));
        assert_eq!(central_trinomial(7, -3, 2, 0), big(1));
        assert_eq!(central_trinomial(1, 2, 1, 4), big(70));
    }

    #[test]
    fn apery_values() {
        assert_eq!(apery(0), big(1));
        assert_eq!(apery(1), big(5));
        assert_eq!(apery(2), big(73));
        assert_eq!(apery(3), big(1445));
    }

    #[test]
    fn abelian_square_values() {
        assert_eq!(abelian_squares(1, 7).unwrap(), big(1));
        assert_eq!(abelian_squares(2, 2).unwrap(), big(6));
        assert_eq!(abelian_squares(3, 1).unwrap(), big(3));
        // s = 2 gives central binomials.
        for n in 0..15 {
            assert_eq!(abelian_squares(2, n).unwrap(), central_binomial(n));
        }
        assert!(abelian_squares(0, 3).is_err());
    }

    #[test]
    fn s_variants_agree() {
        assert_eq!(s_sequence(0, SVariant::Squared), big(1));
        assert_eq!(s_sequence(0, SVariant::TrinomialStyle), big(1));
        // 1 + C(2,1)^2 C(1,1) = 5
        assert_eq!(s_sequence(2, SVariant::Squared), big(5));
        assert_eq!(s_sequence(2, SVariant::TrinomialStyle), big(5));
        assert_eq!(s_sequence(3, SVariant::Squared), s_sequence(3, SVariant::TrinomialStyle));
        for n in 0..=200 {
            assert_eq!(s_sequence(n, SVariant::Squared), s_sequence(n, SVariant::TrinomialStyle));
        }
    }

    #[test]
    fn s_mod_prime_matches_exact() {
        for p in [2u64, 3, 5, 7, 11] {
            let pr = Prime::new(p).unwrap();
            for n in 0..120 {
                assert_eq!(
                    s_sequence_mod_prime(n, pr),
                    pr.modulus().reduce(&s_sequence(n, SVariant::Squared)),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn binomial_mod_prime_matches_exact() {
        for p in [2u64, 3, 5, 7] {
            let pr = Prime::new(p).unwrap();
            for n in 0..60 {
                for k in 0..=n + 1 {
                    assert_eq!(binomial_mod_prime(n, k, pr), pr.modulus().reduce(&binomial(n, k)));
                }
            }
        }
    }

    #[test]
    fn hypergeometric_d_values() {
        assert_eq!(hypergeometric_d(0), big(1));
        assert_eq!(hypergeometric_d(1), big(1));
        assert_eq!(hypergeometric_d(2), big(-2));
        assert_eq!(hypergeometric_d(4), big(-12));
    }

    #[test]
    fn zagier_values() {
        assert_eq!(zagier_e(0), big(1));
        assert_eq!(zagier_e(1), big(4));
        let shifts: Vec<BigInt> = (0..8).map(|n| zagier_e_shift(n).unwrap()).collect();
        let expected = [0, 1, 8, 57, 400, 2820, 20064, 144137].map(big);
        assert_eq!(shifts, expected);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_family(5, 0, LambdaWhich::A), big(0));
        assert_eq!(lambda_family(0, 1, LambdaWhich::A), big(1));
        assert_eq!(lambda_family(1, 4, LambdaWhich::B), big(-11));
        assert_eq!(lambda_family(-2, 0, LambdaWhich::B), big(1));
    }

    #[test]
    fn names() {
        assert_eq!(NamedSequence::from_name("catalan").unwrap(), NamedSequence::Catalan);
        assert_eq!(
            NamedSequence::from_name("trinomial:1,2,3").unwrap(),
            NamedSequence::CentralTrinomial { a: 1, b: 2, c: 3 }
        );
        assert!(NamedSequence::from_name("trinomial:1").is_err());
        assert!(NamedSequence::from_name("nope").is_err());
        assert_eq!(
            NamedSequence::Constant(1).window(3).unwrap(),
            vec![big(1), big(1), big(1), big(1)]
        );
    }
}
