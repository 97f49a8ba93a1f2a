//! Strategies shared by the property tests and the acceptance harness.
#![allow(dead_code)]

use ctlucas::arith::Prime;
use ctlucas::LaurentPoly;
use proptest::prelude::*;

pub fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

pub fn poly(dim: usize, radius: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-radius..=radius, dim), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(move |terms| LaurentPoly::from_terms(dim, terms).unwrap())
}

pub fn nonzero_poly(dim: usize, radius: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(dim, radius, max_terms).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn any_dim_poly() -> impl Strategy<Value = LaurentPoly> {
    (1usize..=3).prop_flat_map(|d| poly(d, 3, 6))
}
