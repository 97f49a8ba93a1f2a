//! Closed forms for `ct[(a/x + b + cx)^(p-1)]` and `ct[(a/x + b + cx)^(p-1) x]`
//! modulo `p`.

use num_bigint::BigInt;

use super::kronecker_mod_p;
use crate::arith::Prime;

fn discriminant(a: i64, b: i64, c: i64) -> BigInt {
    BigInt::from(b) * b - BigInt::from(4) * a * c
}

/// `((b^2 - 4ac)/p)` as a canonical residue.
pub fn trinomial_pm1(a: i64, b: i64, c: i64, p: Prime) -> u64 {
    let m = p.modulus();
    m.reduce_i64(kronecker_mod_p(&discriminant(a, b, c), p) as i64)
}

/// `b (2c)^-1 (1 - sigma)` for odd `p` not dividing `c`; `-a b^(p-2)`
/// otherwise, with `b^(p-2) = 1` when `p = 2`.
pub fn trinomial_pm1_x(a: i64, b: i64, c: i64, p: Prime) -> u64 {
    let m = p.modulus();
    let (a, b, c) = (m.reduce_i64(a), m.reduce_i64(b), m.reduce_i64(c));
    if p.is_odd() && c != 0 {
        let sigma = kronecker_mod_p(&discriminant(a as i64, b as i64, c as i64), p);
        let inv = m.inv(m.mul(2, c)).expect("2c is a unit");
        let one_minus = m.reduce_i64(1 - sigma as i64);
        m.mul(m.mul(b, inv), one_minus)
    } else {
        let bp = if p.is_odd() { m.pow(b, p.get() - 2) } else { 1 };
        m.neg(m.mul(a, bp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{LaurentPoly, Monomial};

    fn brute(a: i64, b: i64, c: i64, p: u64, shift: i32) -> u64 {
        let pr = Prime::new(p).unwrap();
        let f = LaurentPoly::from_terms(1, [(vec![-1], a), (vec![0], b), (vec![1], c)]).unwrap();
        let g = f.pow(p - 1, Some(pr.modulus()));
        pr.modulus().reduce(&g.coeff_at(&Monomial::new(&[-shift]).unwrap()).unwrap())
    }

    #[test]
    fn closed_form_examples() {
        let p5 = Prime::new(5).unwrap();
        assert_eq!(trinomial_pm1(1, 2, 1, p5), 0);
        assert_eq!(trinomial_pm1(1, 1, 1, p5), 4);
        assert_eq!(trinomial_pm1_x(1, 2, 1, p5), 1);
        assert_eq!(trinomial_pm1_x(1, 1, 1, p5), 1);
        let p2 = Prime::new(2).unwrap();
        for (a, b, c) in [(0, 1, 1), (1, 0, 1), (1, 1, 0), (3, 5, 7)] {
            assert_eq!(trinomial_pm1(a, b, c, p2), (b as u64) % 2);
            assert_eq!(trinomial_pm1_x(a, b, c, p2), (a as u64) % 2);
        }
    }

    #[test]
    fn agrees_with_expansion() {
        for p in [2u64, 3, 5, 7] {
            let pr = Prime::new(p).unwrap();
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    for c in 0..p as i64 {
                        assert_eq!(trinomial_pm1(a, b, c, pr), brute(a, b, c, p, 0), "{a} {b} {c} {p}");
                        assert_eq!(trinomial_pm1_x(a, b, c, pr), brute(a, b, c, p, 1), "{a} {b} {c} {p}");
                    }
                }
            }
        }
    }
}
