use super::{assemble, Draft, FamilyKind, GenData};
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::linalg::SparseVec;
use crate::scalars::{FieldSpec, Scalar};

/// Gaussian binomial `(m choose u)_Q` by the recurrence
/// `(m,u) = (m-1,u-1) + Q^u (m-1,u)`.
pub fn qbinomial(m: usize, u: usize, q: &Scalar) -> Result<Scalar> {
    if u > m {
        return Err(Error::Range(format!("qbinomial needs u <= m, got u={u}, m={m}")));
    }
    let f = q.field();
    let mut row = vec![f.one()];
    for k in 1..=m {
        let mut next = vec![f.one(); k + 1];
        for j in 1..k {
            next[j] = &row[j - 1] + &(&q.pow(j as u64) * &row[j]);
        }
        row = next;
    }
    Ok(row[u].clone())
}

pub(super) fn build(field: FieldSpec, r: usize, n: usize) -> Result<HopfData> {
    let big_m = r * n;
    let q = field.root(big_m as u64)?;
    let qq = q.pow(r as u64);
    let d = big_m * n;
    let idx = |l: usize, m: usize| m * big_m + l % big_m;
    let mut labels = vec![String::new(); d];
    let mut words = vec![String::new(); d];
    let mut factors = vec![Vec::new(); d];
    for m in 0..n {
        for l in 0..big_m {
            let i = idx(l, m);
            labels[i] = format!("g^{l}*x^{m}");
            let mut w = Vec::new();
            match l {
                0 => {}
                1 => w.push("g".to_string()),
                _ => w.push(format!("g^{l}")),
            }
            match m {
                0 => {}
                1 => w.push("x".to_string()),
                _ => w.push(format!("x^{m}")),
            }
            words[i] = if w.is_empty() { "1".into() } else { w.join("*") };
            factors[i] = std::iter::repeat_n(0, l).chain(std::iter::repeat_n(1, m)).collect();
        }
    }
    let mut mult = Vec::with_capacity(d * d);
    for a in 0..d {
        let (l, m) = (a % big_m, a / big_m);
        for b in 0..d {
            let (k, s) = (b % big_m, b / big_m);
            if m + s >= n {
                mult.push(SparseVec::zero(field, d));
            } else {
                mult.push(SparseVec::unit(field, d, idx(l + k, m + s)).scale(&q.pow((m * k) as u64)));
            }
        }
    }
    let g = idx(1, 0);
    let x = idx(0, 1);
    let e = |i: usize| SparseVec::unit(field, d, i);
    let e2 = |a: usize, b: usize| SparseVec::unit(field, d * d, a * d + b);
    // S(x) = -x g^{M-r}, and x g^k = q^k g^k x.
    let sx = e(idx(big_m - r, 1)).scale(&(-q.pow((big_m - r) as u64)));
    let gd = GenData {
        delta: vec![e2(g, g), e2(idx(0, 0), x).add(&e2(x, idx(r, 0)))],
        counit: vec![field.one(), field.zero()],
        antipode: vec![e(idx(big_m - 1, 0)), sx],
    };
    let mut comult = Vec::with_capacity(d);
    for i in 0..d {
        let (l, m) = (i % big_m, i / big_m);
        let mut entries = Vec::new();
        for u in 0..=m {
            let c = qbinomial(m, u, &qq)?;
            entries.push((idx(l, m - u) * d + idx(l + r * (m - u), u), c));
        }
        comult.push(SparseVec::from_entries(field, d * d, entries));
    }
    let draft = Draft {
        field,
        family: FamilyKind::Radford { r, n },
        labels,
        words,
        gens: vec![("g".into(), g), ("x".into(), x)],
        factors,
        mult,
        unit: idx(0, 0),
    };
    assemble(draft, gd, Some(comult), None)
}
