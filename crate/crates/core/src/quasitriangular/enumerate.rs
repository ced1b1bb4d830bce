use rayon::prelude::*;

use super::verify::is_quasitriangular;
use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::hopf::{Elem, HopfData, Tensor2};
use crate::scalars::Scalar;

/// Largest `n` the bicharacter search accepts (`n⁴` candidates).
pub const BICHAR_MAX_N: usize = 4;

fn kp_n(h: &HopfData) -> Result<usize> {
    match h.family() {
        Some(FamilyKind::H2n2(n)) => Ok(*n),
        Some(FamilyKind::H8) => Ok(2),
        other => Err(Error::WrongFamily {
            expected: "h2n2".into(),
            got: other.map_or("unnamed".into(), |f| f.to_string()),
        }),
    }
}

/// Idempotents `e_a = (1/n²) Σ q^{-(a₁i + a₂j)} x^i y^j`, indexed by `a₁·n + a₂`.
fn character_idempotents(h: &HopfData, n: usize) -> Result<Vec<Elem>> {
    let f = h.field();
    let q = f.root(n as u64)?;
    let qinv = q.inv()?;
    let c = f.int((n * n) as i64).inv()?;
    let (x, y) = (h.gen("x")?, h.gen("y")?);
    let monos: Vec<Elem> = (0..n * n)
        .map(|ij| h.mul(&h.pow(&x, (ij / n) as u32), &h.pow(&y, (ij % n) as u32)))
        .collect();
    Ok((0..n * n)
        .map(|a| {
            let (a1, a2) = (a / n, a % n);
            let mut e = h.zero::<1>();
            for (ij, m) in monos.iter().enumerate() {
                let (i, j) = (ij / n, ij % n);
                e = e + m.scale(&qinv.pow(((a1 * i + a2 * j) % n) as u64));
            }
            e.scale(&c)
        })
        .collect())
}

fn bichar_from(h: &HopfData, n: usize, es: &[Elem], q: &Scalar, m: &[[u32; 2]; 2]) -> Tensor2 {
    let mut r = h.zero::<2>();
    for a in 0..n * n {
        let (a1, a2) = (a / n, a % n);
        for b in 0..n * n {
            let (b1, b2) = (b / n, b % n);
            let m = |i: usize, j: usize| m[i][j] as usize % n;
            let e = a1 * m(0, 0) * b1 + a1 * m(0, 1) * b2 + a2 * m(1, 0) * b1 + a2 * m(1, 1) * b2;
            r = r + h.tensor2(&es[a], &es[b]).scale(&q.pow((e % n) as u64));
        }
    }
    r
}

/// `Σ_{a,b} q^{aᵀMb} e_a ⊗ e_b` on H_{2n²} (or H8 with `n = 2`).
pub fn bichar_r(h: &HopfData, n: usize, m: &[[u32; 2]; 2]) -> Result<Tensor2> {
    let hn = kp_n(h)?;
    if hn != n {
        return Err(Error::FamilyMismatch(format!("bicharacter of Z_{n}² on H_{{2·{hn}²}}")));
    }
    let es = character_idempotents(h, n)?;
    let q = h.field().root(n as u64)?;
    Ok(bichar_from(h, n, &es, &q, m))
}

/// A surviving bicharacter together with its R-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupR {
    pub matrix: [[u32; 2]; 2],
    pub r: Tensor2,
}

/// Every bicharacter R-matrix of `(Z_n)²` that is quasitriangular on the whole
/// of H_{2n²}, ordered lexicographically by matrix. Only group-supported
/// R-matrices are searched.
pub fn enumerate_group_rmatrices(h: &HopfData, n: usize) -> Result<Vec<GroupR>> {
    if !(1..=BICHAR_MAX_N).contains(&n) {
        return Err(Error::Range(format!(
            "bicharacter search supports 1 ≤ n ≤ {BICHAR_MAX_N}, got {n}"
        )));
    }
    let hn = kp_n(h)?;
    if hn != n {
        return Err(Error::FamilyMismatch(format!(
            "n = {n} but the algebra is H_{{2·{hn}²}}"
        )));
    }
    let es = character_idempotents(h, n)?;
    let q = h.field().root(n as u64)?;
    let nn = n as u32;
    let cands: Vec<[[u32; 2]; 2]> = (0..nn.pow(4))
        .map(|k| [[k / nn.pow(3), k / nn.pow(2) % nn], [k / nn % nn, k % nn]])
        .collect();
    Ok(cands
        .into_par_iter()
        .filter_map(|m| {
            let r = bichar_from(h, n, &es, &q, &m);
            is_quasitriangular(h, &r).then_some(GroupR { matrix: m, r })
        })
        .collect())
}

/// Number of candidates the search examines for `n`.
pub fn candidate_count(n: usize) -> usize {
    n.pow(4)
}
