use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{Check, HopfData, Leg, Tensor2, VerifyReport};
use crate::linalg::{solve, SparseMat, SparseVec};

/// Two-sided inverse of `r` in `H⊗H`, by solving `r·X = 1⊗1` and checking `X·r = 1⊗1`.
pub fn r_inverse(h: &HopfData, r: &Tensor2) -> Result<Tensor2> {
    let d = h.dim();
    let n = d * d;
    let f = h.field();
    let cols: Vec<SparseVec> = (0..n)
        .into_par_iter()
        .map(|j| h.mul_raw(2, r.coeffs(), &SparseVec::unit(f, n, j)))
        .collect();
    let m = SparseMat::from_columns(f, n, &cols);
    let one = h.one::<2>();
    let x = solve(&m, one.coeffs()).ok_or(Error::NotInvertible)?;
    let x = h.tensor_from_vec::<2>(x)?;
    if h.mul(&x, r) != one {
        return Err(Error::NotInvertible);
    }
    Ok(x)
}

fn basis_failures(h: &HopfData, r: &Tensor2, stop_early: bool) -> Vec<Option<String>> {
    let d = h.dim();
    let comult = h.comult_table();
    let check = |b: usize| -> Option<String> {
        let db = &comult[b];
        let left = h.mul_raw(2, r.coeffs(), db);
        let right = h.mul_raw(2, &h.permute(db, &[1, 0]), r.coeffs());
        (left != right).then(|| h.labels()[b].clone())
    };
    if stop_early {
        let mut out = Vec::with_capacity(d);
        for b in 0..d {
            let o = check(b);
            let bad = o.is_some();
            out.push(o);
            if bad {
                break;
            }
        }
        out
    } else {
        (0..d).into_par_iter().map(check).collect()
    }
}

fn qtr_report(h: &HopfData, r: &Tensor2, stop_early: bool) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let push = |rep: &mut VerifyReport, c: Check| -> bool {
        let ok = c.passed();
        rep.push(c);
        ok || !stop_early
    };

    if !push(
        &mut rep,
        Check::from_outcomes("r_delta_op", basis_failures(h, r, stop_early)),
    ) {
        return rep;
    }
    let one = h.one::<1>();
    let cl = h.counit_left(r);
    let cr = h.counit_right(r);
    if !push(&mut rep, Check::single("counit_left", cl == one, || h.format(&cl))) {
        return rep;
    }
    if !push(&mut rep, Check::single("counit_right", cr == one, || h.format(&cr))) {
        return rep;
    }
    let (r12, r13, r23) = (h.leg(r, Leg::L12), h.leg(r, Leg::L13), h.leg(r, Leg::L23));
    let lhs = h.delta_right(r);
    let rhs = h.mul(&r13, &r12);
    if !push(
        &mut rep,
        Check::single("hexagon_id_delta", lhs == rhs, || h.format(&(&lhs - &rhs))),
    ) {
        return rep;
    }
    let lhs = h.delta_left(r);
    let rhs = h.mul(&r13, &r23);
    if !push(
        &mut rep,
        Check::single("hexagon_delta_id", lhs == rhs, || h.format(&(&lhs - &rhs))),
    ) {
        return rep;
    }
    let inv = r_inverse(h, r);
    if !push(
        &mut rep,
        Check::single("invertible", inv.is_ok(), || "no two-sided inverse".into()),
    ) {
        return rep;
    }
    if let (Ok(inv), Ok(s)) = (&inv, h.antipode_left(r)) {
        let ok = &s == inv;
        if !push(
            &mut rep,
            Check::single("antipode_inverse", ok, || h.format(&(&s - inv))),
        ) {
            return rep;
        }
    }
    let a = h.product(&[&r12, &r13, &r23]);
    let b = h.product(&[&r23, &r13, &r12]);
    push(&mut rep, Check::single("qyb", a == b, || h.format(&(&a - &b))));
    rep
}

/// Checks `R Δ(b) = Δ^op(b) R` on every basis element, both hexagons,
/// invertibility, `(S⊗Id)(R) = R⁻¹`, the counit identities and QYB.
pub fn verify_qtr(h: &HopfData, r: &Tensor2) -> VerifyReport {
    qtr_report(h, r, false)
}

/// Like [`verify_qtr`] but stops at the first failing check.
pub(crate) fn is_quasitriangular(h: &HopfData, r: &Tensor2) -> bool {
    qtr_report(h, r, true).passed()
}

/// Quasitriangular and `R⁻¹ = R^op`.
pub fn is_triangular(h: &HopfData, r: &Tensor2) -> bool {
    h.mul(&h.flip(r), r) == h.one::<2>() && is_quasitriangular(h, r)
}
