//! Catalan numbers modulo a prime, digit by digit.

use super::digits;
use crate::arith::{Modulus, Prime};
use crate::oracles::{binomial_mod_prime, catalan};

fn small_catalan(k: u64, m: Modulus) -> u64 {
    m.reduce(&catalan(k))
}

fn central_mod(n: u64, p: Prime) -> u64 {
    binomial_mod_prime(2 * n, n, p)
}

/// `C(n) = C(2n, n) - C(2n, n+1) mod p`, from binomials alone.
fn catalan_via_binomials(n: u64, p: Prime) -> u64 {
    let m = p.modulus();
    m.sub(central_mod(n, p), binomial_mod_prime(2 * n, n + 1, p))
}

/// `C(pn + k) mod p`: `C(2n,n) C(k)` for `k < p-1`, `-(2n+1) C(n)` for
/// `k = p-1`.
pub fn catalan_step(p: Prime, n: u64, k: u64) -> u64 {
    assert!(k < p.get(), "digit out of range");
    let m = p.modulus();
    if k + 1 < p.get() {
        m.mul(central_mod(n, p), small_catalan(k, m))
    } else {
        let f = m.reduce_i64(-((2 * (n % p.get()) + 1) as i64));
        m.mul(f, catalan_via_binomials(n, p))
    }
}

/// `C(n) mod p` by applying the step rule recursively to `n = pq + k`.
pub fn catalan_iterated(n: u64, p: Prime) -> u64 {
    let m = p.modulus();
    let pv = p.get();
    if n < pv {
        return small_catalan(n, m);
    }
    let (q, k) = (n / pv, n % pv);
    if k + 1 < pv {
        m.mul(central_mod(q, p), small_catalan(k, m))
    } else {
        let f = m.reduce_i64(-((2 * (q % pv) + 1) as i64));
        m.mul(f, catalan_iterated(q, p))
    }
}

/// `n` written as `m` low digits equal to `p-1` followed by `tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanDigitSplit {
    pub m: u32,
    /// `n_0, n_1, ...` with `n_0 != p-1`; `[0]` when `n = p^m - 1`.
    pub tail: Vec<u64>,
}

pub fn catalan_digit_split(n: u64, p: Prime) -> CatalanDigitSplit {
    let ds = digits(n, p).digits;
    let m = ds.iter().take_while(|&&d| d == p.get() - 1).count();
    let mut tail = ds[m..].to_vec();
    if tail.is_empty() {
        tail.push(0);
    }
    CatalanDigitSplit { m: m as u32, tail }
}

/// `delta(n_0, m) C(n_0) C(2n_1, n_1) ... C(2n_r, n_r) mod p`.
pub fn catalan_digit_formula(n: u64, p: Prime) -> u64 {
    let m = p.modulus();
    let split = catalan_digit_split(n, p);
    let n0 = split.tail[0];
    let delta = if split.m == 0 {
        1
    } else {
        m.reduce_i64(-(2 * n0 as i64 + 1))
    };
    split.tail[1..]
        .iter()
        .fold(m.mul(delta, small_catalan(n0, m)), |acc, &d| {
            m.mul(acc, m.reduce(&crate::oracles::central_binomial(d)))
        })
}

/// `C(n) mod 3` from the ternary digits of `n + 1`.
pub fn catalan_mod3(n: u64) -> u64 {
    let three = Prime::new(3).expect("3 is prime");
    let ds = digits(n + 1, three).digits;
    let high = ds.iter().skip(1);
    if high.clone().any(|&d| d > 1) {
        return 0;
    }
    let ones = high.filter(|&&d| d == 1).count();
    if ones % 2 == 0 {
        1
    } else {
        2
    }
}

/// `C(n) mod 5`: zero on the set `Z`, otherwise `2^lambda(n)`.
pub fn catalan_mod5(n: u64) -> u64 {
    let five = Prime::new(5).expect("5 is prime");
    let split = catalan_digit_split(n, five);
    let n0 = split.tail[0];
    let rest = &split.tail[1..];
    let in_z = n0 == 3 || rest.iter().any(|d| matches!(d, 3 | 4)) || (n0 == 2 && split.m >= 1);
    if in_z {
        return 0;
    }
    let mut lambda = rest.iter().filter(|&&d| d == 1).count() as u64;
    if n0 == 2 || (n0 == 1 && split.m >= 1) {
        lambda += 1;
    }
    if n0 == 0 && split.m >= 1 {
        lambda += 2;
    }
    five.modulus().pow(2, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::catalan_window;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn step_examples() {
        assert_eq!(catalan_step(pr(3), 1, 2), 0);
        assert_eq!(catalan_step(pr(3), 2, 1), 0);
        for p in [2, 3, 5, 7] {
            assert_eq!(catalan_step(pr(p), 0, 0), 1);
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(
            catalan_digit_split(7, pr(3)),
            CatalanDigitSplit { m: 0, tail: vec![1, 2] }
        );
        assert_eq!(
            catalan_digit_split(5, pr(3)),
            CatalanDigitSplit { m: 1, tail: vec![1] }
        );
        assert_eq!(
            catalan_digit_split(8, pr(3)),
            CatalanDigitSplit { m: 2, tail: vec![0] }
        );
    }

    #[test]
    fn digit_formula_examples() {
        assert_eq!(catalan_digit_formula(7, pr(3)), 0);
        assert_eq!(catalan_digit_formula(5, pr(3)), 0);
        for p in [3, 5, 7, 11] {
            assert_eq!(catalan_digit_formula(1, pr(p)), 1);
        }
    }

    #[test]
    fn characterizations_examples() {
        assert_eq!(catalan_mod3(3), 2);
        assert_eq!(catalan_mod3(2), 2);
        assert_eq!(catalan_mod5(3), 0);
    }

    #[test]
    fn stack_agrees_with_direct() {
        let w = catalan_window(2000);
        for p in [2, 3, 5, 7] {
            let pp = pr(p);
            let m = pp.modulus();
            for (n, c) in w.iter().enumerate() {
                let n = n as u64;
                let direct = m.reduce(c);
                assert_eq!(catalan_iterated(n, pp), direct, "iterated n={n} p={p}");
                assert_eq!(catalan_digit_formula(n, pp), direct, "digits n={n} p={p}");
                assert_eq!(catalan_via_binomials(n, pp), direct);
                if n >= p {
                    assert_eq!(catalan_step(pp, n / p, n % p), direct, "step n={n} p={p}");
                }
                if p == 3 {
                    assert_eq!(catalan_mod3(n), direct, "mod3 n={n}");
                }
                if p == 5 {
                    assert_eq!(catalan_mod5(n), direct, "mod5 n={n}");
                }
            }
        }
    }
}
