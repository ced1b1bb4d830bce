use super::{assemble, Draft, FamilyKind, GenData};
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::linalg::SparseVec;
use crate::scalars::FieldSpec;

/// Group algebra of `Z_{n1} × … × Z_{nk}`. Basis index is mixed radix with
/// the first factor least significant. Generators are `g` for a single factor,
/// `g1..gk` otherwise, unless `names` is given.
pub fn group_algebra(field: FieldSpec, invariants: &[u32], names: Option<&[&str]>) -> Result<HopfData> {
    let k = invariants.len();
    let names: Vec<String> = match names {
        Some(ns) if ns.len() == k => ns.iter().map(|s| s.to_string()).collect(),
        Some(_) => return Err(Error::Range("one generator name per invariant".into())),
        None if k == 1 => vec!["g".into()],
        None => (1..=k).map(|i| format!("g{i}")).collect(),
    };
    let radix: Vec<usize> = invariants.iter().map(|&n| n as usize).collect();
    if radix.contains(&0) {
        return Err(Error::Range("invariants must be positive".into()));
    }
    let d: usize = radix.iter().product();
    let digits = |mut i: usize| -> Vec<usize> {
        radix
            .iter()
            .map(|&n| {
                let r = i % n;
                i /= n;
                r
            })
            .collect()
    };
    let index = |ds: &[usize]| ds.iter().zip(&radix).rev().fold(0, |acc, (&a, &n)| acc * n + a % n);
    let mut labels = Vec::with_capacity(d);
    let mut words = Vec::with_capacity(d);
    let mut factors = Vec::with_capacity(d);
    for i in 0..d {
        let ds = digits(i);
        labels.push(if k == 0 {
            "1".to_string()
        } else {
            ds.iter()
                .zip(&names)
                .map(|(a, n)| format!("{n}^{a}"))
                .collect::<Vec<_>>()
                .join("*")
        });
        let w: Vec<String> = ds
            .iter()
            .zip(&names)
            .filter(|(a, _)| **a > 0)
            .map(|(a, n)| if *a == 1 { n.clone() } else { format!("{n}^{a}") })
            .collect();
        words.push(if w.is_empty() { "1".to_string() } else { w.join("*") });
        factors.push(
            ds.iter()
                .enumerate()
                .flat_map(|(g, &a)| std::iter::repeat_n(g, a))
                .collect(),
        );
    }
    let mut mult = Vec::with_capacity(d * d);
    for a in 0..d {
        let da = digits(a);
        for b in 0..d {
            let s: Vec<usize> = da.iter().zip(digits(b)).map(|(x, y)| x + y).collect();
            mult.push(SparseVec::unit(field, d, index(&s)));
        }
    }
    let gens: Vec<(String, usize)> = (0..k)
        .map(|g| {
            let mut ds = vec![0; k];
            ds[g] = 1;
            (names[g].clone(), index(&ds))
        })
        .collect();
    let gd = GenData {
        delta: gens
            .iter()
            .map(|(_, i)| SparseVec::unit(field, d * d, i * d + i))
            .collect(),
        counit: vec![field.one(); k],
        antipode: gens
            .iter()
            .enumerate()
            .map(|(g, _)| {
                let mut ds = vec![0; k];
                ds[g] = radix[g] - 1;
                SparseVec::unit(field, d, index(&ds))
            })
            .collect(),
    };
    let draft = Draft {
        field,
        family: FamilyKind::GroupAlgebra(invariants.to_vec()),
        labels,
        words,
        gens,
        factors,
        mult,
        unit: 0,
    };
    assemble(draft, gd, None, None)
}
