//! Shared helpers for unit tests.

use rand::Rng;

use crate::families::{build, FamilyKind, FamilySpec};
use crate::hopf::{HopfData, Tensor2};
use crate::linalg::SparseVec;
use crate::quasitriangular::{Lit, RSpec};
use crate::scalars::FieldSpec;

pub fn fam(k: FamilyKind) -> HopfData {
    build(&FamilySpec::default_field(k)).unwrap()
}

pub fn h8() -> HopfData {
    build(&FamilySpec::new(FamilyKind::H8, FieldSpec::cyclotomic(8).unwrap())).unwrap()
}

/// Six matrices per size: zero, identity, symmetric, antisymmetric, and two generic ones.
pub fn en_sample(n: usize) -> Vec<(Vec<Vec<i64>>, bool)> {
    let m = |f: &dyn Fn(usize, usize) -> i64| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect()
    };
    let sym = m(&|i, j| (i + j + 1) as i64 * if (i + j) % 2 == 0 { 1 } else { -1 });
    let anti = m(&|i, j| i as i64 - j as i64);
    let generic = m(&|i, j| ((3 * i + 5 * j + 2) % 7) as i64 - 3 + if j > i { 1 } else { 0 });
    let upper = m(&|i, j| if j > i { (i + 2 * j) as i64 } else { 0 });
    let sym_of = |a: &Vec<Vec<i64>>| (0..n).all(|i| (0..n).all(|j| a[i][j] == a[j][i]));
    [m(&|_, _| 0), m(&|i, j| i64::from(i == j)), sym, anti, generic, upper]
        .into_iter()
        .map(|a| {
            let s = sym_of(&a);
            (a, s)
        })
        .collect()
}

pub fn en_spec(a: &[Vec<i64>]) -> RSpec {
    RSpec::EnA(a.iter().map(|r| r.iter().map(|&v| Lit::from(v)).collect()).collect())
}

/// A tensor with a handful of small integer coefficients.
pub fn random_tensor(h: &HopfData, rng: &mut impl Rng) -> Tensor2 {
    let n = h.dim() * h.dim();
    let f = h.field();
    let terms = rng.gen_range(1..=6);
    let entries = (0..terms)
        .map(|_| (rng.gen_range(0..n), f.int(rng.gen_range(-3..=3))))
        .collect();
    h.tensor_from_vec(SparseVec::from_entries(f, n, entries)).unwrap()
}
