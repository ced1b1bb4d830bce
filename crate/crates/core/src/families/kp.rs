use super::{assemble, Draft, FamilyKind, GenData};
use crate::error::{Error, Result};
use crate::hopf::{Elem, HopfData};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalars::{FieldSpec, Scalar};

fn idx(n: usize, i: usize, j: usize, t: usize) -> usize {
    t * n * n + (i % n) * n + (j % n)
}

/// Algebra part shared by H_{2n²} and H8: basis `x^i y^j z^t`, `z x = y z`,
/// `z y = x z`, and `z²` given by its coefficients on `x^a y^b`.
fn kp_draft(field: FieldSpec, n: usize, z2: &[Scalar], family: FamilyKind) -> Draft {
    let d = 2 * n * n;
    let mut labels = vec![String::new(); d];
    let mut words = vec![String::new(); d];
    let mut factors = vec![Vec::new(); d];
    let pw = |name: &str, e: usize| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    for t in 0..2 {
        for i in 0..n {
            for j in 0..n {
                let k = idx(n, i, j, t);
                labels[k] = format!("x^{i}*y^{j}*z^{t}");
                let w: Vec<String> = [pw("x", i), pw("y", j), pw("z", t)].into_iter().flatten().collect();
                words[k] = if w.is_empty() { "1".into() } else { w.join("*") };
                factors[k] = [(0, i), (1, j), (2, t)]
                    .iter()
                    .flat_map(|&(g, e)| std::iter::repeat_n(g, e))
                    .collect();
            }
        }
    }
    let mut mult = Vec::with_capacity(d * d);
    for a in 0..d {
        let (t, i, j) = (a / (n * n), (a / n) % n, a % n);
        for b in 0..d {
            let (s, c, e) = (b / (n * n), (b / n) % n, b % n);
            // z^t x^c y^e = x^? y^? z^t: z swaps the roles of x and y.
            let (c, e) = if t == 1 { (e, c) } else { (c, e) };
            let (i2, j2) = (i + c, j + e);
            if t + s < 2 {
                mult.push(SparseVec::unit(field, d, idx(n, i2, j2, t + s)));
            } else {
                let mut acc = Accumulator::new(field, d);
                for (ab, w) in z2.iter().enumerate() {
                    if !w.is_zero() {
                        acc.add(idx(n, i2 + ab / n, j2 + ab % n, 0), w.clone());
                    }
                }
                mult.push(acc.finish());
            }
        }
    }
    Draft {
        field,
        family,
        labels,
        words,
        gens: vec![
            ("x".into(), idx(n, 1, 0, 0)),
            ("y".into(), idx(n, 0, 1, 0)),
            ("z".into(), idx(n, 0, 0, 1)),
        ],
        factors,
        mult,
        unit: 0,
    }
}

/// `(1/n) Σ q^{-ij} x^i y^j` as coefficients on `x^i y^j`.
fn gauss_sum(field: FieldSpec, n: usize) -> Result<Vec<Scalar>> {
    let q = field.root(n as u64)?;
    let qinv = q.inv()?;
    let inv_n = field.int(n as i64).inv()?;
    Ok((0..n * n)
        .map(|ij| &qinv.pow(((ij / n) * (ij % n)) as u64) * &inv_n)
        .collect())
}

pub(super) fn h2n2(field: FieldSpec, n: usize) -> Result<HopfData> {
    field.require_invertible((2 * n * n) as u64, "H_{2n^2} needs 2n^2 invertible")?;
    let w = gauss_sum(field, n)?;
    let draft = kp_draft(field, n, &w, FamilyKind::H2n2(n));
    let d = 2 * n * n;
    let e = |i: usize| SparseVec::unit(field, d, i);
    let mut dz = Accumulator::new(field, d * d);
    for (ij, c) in w.iter().enumerate() {
        dz.add(idx(n, ij / n, 0, 1) * d + idx(n, 0, ij % n, 1), c.clone());
    }
    let (x, y, z) = (idx(n, 1, 0, 0), idx(n, 0, 1, 0), idx(n, 0, 0, 1));
    let gd = GenData {
        delta: vec![
            SparseVec::unit(field, d * d, x * d + x),
            SparseVec::unit(field, d * d, y * d + y),
            dz.finish(),
        ],
        counit: vec![field.one(); 3],
        antipode: vec![e(idx(n, n - 1, 0, 0)), e(idx(n, 0, n - 1, 0)), e(z)],
    };
    assemble(draft, gd, None, None)
}

pub(super) fn h8(field: FieldSpec) -> Result<HopfData> {
    field.require_invertible(2, "H8 needs characteristic other than 2")?;
    let half = field.frac(1, 2)?;
    let n = 2;
    // z² = ½(1 + x + y − xy), coefficients on 1, y, x, xy.
    let z2 = vec![half.clone(), half.clone(), half.clone(), -&half];
    let draft = kp_draft(field, n, &z2, FamilyKind::H8);
    let alg = draft.algebra();
    let d = 8;
    let (one, x, y, z) = (idx(n, 0, 0, 0), idx(n, 1, 0, 0), idx(n, 0, 1, 0), idx(n, 0, 0, 1));
    let e2 = |a: usize, b: usize| SparseVec::unit(field, d * d, a * d + b);
    // Δ(z) = ½(z⊗z)(1⊗1 + y⊗1 + 1⊗x − y⊗x)
    let inner = e2(one, one).add(&e2(y, one)).add(&e2(one, x)).sub(&e2(y, x));
    let dz = alg.mul_raw(2, &e2(z, z), &inner).scale(&half);
    let e = |i: usize| SparseVec::unit(field, d, i);
    let gd = GenData {
        delta: vec![e2(x, x), e2(y, y), dz],
        counit: vec![field.one(); 3],
        antipode: vec![e(x), e(y), e(z)],
    };
    assemble(draft, gd, None, None)
}

/// `e_1, e_x, e_y, e_{xy}`: the primitive idempotents of the group part of H8.
pub fn h8_idempotents(h: &HopfData) -> Result<[Elem; 4]> {
    if !h.family().is_some_and(FamilyKind::is_h8_like) {
        return Err(Error::WrongFamily {
            expected: "h8".into(),
            got: h.family().map_or("unnamed".into(), |f| f.to_string()),
        });
    }
    let f = h.field();
    let quarter = f.frac(1, 4)?;
    let one = h.one::<1>();
    let x = h.gen("x")?;
    let y = h.gen("y")?;
    let xy = h.mul(&x, &y);
    let comb = |sx: i64, sy: i64, sxy: i64| -> Elem {
        (&(&(&one + &x.scale(&f.int(sx))) + &y.scale(&f.int(sy))) + &xy.scale(&f.int(sxy))).scale(&quarter)
    };
    Ok([comb(1, 1, 1), comb(-1, 1, -1), comb(1, -1, -1), comb(-1, -1, 1)])
}
