use super::{assemble, group_algebra, tensor_product, transport, Draft, FamilyKind, GenData};
use crate::error::Result;
use crate::hopf::HopfData;
use crate::linalg::SparseVec;
use crate::scalars::FieldSpec;

/// Names of the group-like generators of A_{C2^n}: `g, h, g1, …, g{n-2}`.
pub(crate) fn ac2n_group_names(n: usize) -> Vec<String> {
    let mut v = vec!["g".to_string(), "h".to_string()];
    v.extend((1..=n - 2).map(|i| format!("g{i}")));
    v
}

/// Labels and words for the basis `x^m w`, index `m * 2^n + c` where bit 0 of
/// `c` is `g`, bit 1 is `h` and bit `k+1` is `g_k`.
fn ac2n_basis(n: usize) -> (Vec<String>, Vec<String>) {
    let names = ac2n_group_names(n);
    let half = 1usize << n;
    let mut labels = Vec::with_capacity(2 * half);
    let mut words = Vec::with_capacity(2 * half);
    for m in 0..2 {
        for c in 0..half {
            let mut l = vec![format!("x^{m}")];
            let mut w = Vec::new();
            if m == 1 {
                w.push("x".to_string());
            }
            for (k, name) in names.iter().enumerate() {
                let a = c >> k & 1;
                l.push(format!("{name}^{a}"));
                if a == 1 {
                    w.push(name.clone());
                }
            }
            labels.push(l.join("*"));
            words.push(if w.is_empty() { "1".into() } else { w.join("*") });
        }
    }
    (labels, words)
}

/// A_{C2^n} from its presentation: `x` anticommutes with every group-like
/// generator, `Δ(x) = 1⊗x + x⊗g`, `S(x) = -xg`.
pub(crate) fn ac2n_direct(field: FieldSpec, n: usize) -> Result<HopfData> {
    field.require_invertible(2, "A_{C2^n} needs characteristic other than 2")?;
    let half = 1usize << n;
    let d = 2 * half;
    let (labels, words) = ac2n_basis(n);
    let names = ac2n_group_names(n);
    let mut factors = Vec::with_capacity(d);
    for m in 0..2 {
        for c in 0..half {
            let mut f: Vec<usize> = if m == 1 { vec![n] } else { vec![] };
            f.extend((0..n).filter(|k| c >> k & 1 == 1));
            factors.push(f);
        }
    }
    let mut mult = Vec::with_capacity(d * d);
    for a in 0..d {
        let (m, c) = (a / half, a % half);
        for b in 0..d {
            let (m2, c2) = (b / half, b % half);
            if m + m2 >= 2 {
                mult.push(SparseVec::zero(field, d));
                continue;
            }
            let v = SparseVec::unit(field, d, (m + m2) * half + (c ^ c2));
            let odd = m2 == 1 && c.count_ones() % 2 == 1;
            mult.push(if odd { v.neg() } else { v });
        }
    }
    let mut gens: Vec<(String, usize)> = names.iter().enumerate().map(|(k, s)| (s.clone(), 1 << k)).collect();
    gens.push(("x".into(), half));
    let e = |i: usize| SparseVec::unit(field, d, i);
    let e2 = |a: usize, b: usize| SparseVec::unit(field, d * d, a * d + b);
    let mut gd = GenData {
        delta: (0..n).map(|k| e2(1 << k, 1 << k)).collect(),
        counit: vec![field.one(); n],
        antipode: (0..n).map(|k| e(1 << k)).collect(),
    };
    let (one, g, x, xg) = (0, 1, half, half + 1);
    gd.delta.push(e2(one, x).add(&e2(x, g)));
    gd.counit.push(field.zero());
    gd.antipode.push(e(xg).neg());
    let draft = Draft {
        field,
        family: FamilyKind::AC2n(n),
        labels,
        words,
        gens,
        factors,
        mult,
        unit: one,
    };
    assemble(draft, gd, None, None)
}

/// A_{C2^n} as A_{C2×C2} ⊗ kC2^{n-2}, relabelled along
/// `x^m g^a h^b ⊗ g^c ↦ x^m g^{a+|c|} h^b g^c`.
pub(crate) fn ac2n(field: FieldSpec, n: usize) -> Result<HopfData> {
    if n == 2 {
        return ac2n_direct(field, 2);
    }
    let base = ac2n_direct(field, 2)?;
    let k = n - 2;
    let gnames: Vec<String> = (1..=k).map(|i| format!("g{i}")).collect();
    let grefs: Vec<&str> = gnames.iter().map(String::as_str).collect();
    let grp = group_algebra(field, &vec![2; k], Some(&grefs))?;
    let t = tensor_product(&base, &grp)?;
    let db = 1usize << k;
    let half = 1usize << n;
    let perm: Vec<usize> = (0..t.dim())
        .map(|i| {
            let (ia, c) = (i / db, i % db);
            let (m, a, b) = (ia / 4, ia % 2, (ia / 2) % 2);
            let a2 = (a + c.count_ones() as usize) % 2;
            m * half + a2 + 2 * b + 4 * c
        })
        .collect();
    let (labels, words) = ac2n_basis(n);
    let d = 2 * half;
    let mut generators: Vec<(String, SparseVec)> = ac2n_group_names(n)
        .into_iter()
        .enumerate()
        .map(|(k, s)| (s, SparseVec::unit(field, d, 1 << k)))
        .collect();
    generators.push(("x".into(), SparseVec::unit(field, d, half)));
    Ok(transport(&t, &perm, FamilyKind::AC2n(n), labels, words, generators))
}

/// The dual of A''_{C4}: `g⁴ = 1`, `x² = 0`, `xg = ωgx`, basis `x^m g^a`.
pub(crate) fn ac4dual(field: FieldSpec) -> Result<HopfData> {
    field.require_invertible(2, "the dual of A''_{C4} needs characteristic other than 2")?;
    let w = field.root(4)?;
    let d = 8;
    let idx = |m: usize, a: usize| m * 4 + a % 4;
    let labels: Vec<String> = ["1", "g", "g^2", "g^3", "x", "x*g", "x*g^2", "x*g^3"]
        .map(String::from)
        .to_vec();
    let words = labels.clone();
    let factors: Vec<Vec<usize>> = (0..d)
        .map(|i| {
            std::iter::repeat_n(1, i / 4)
                .chain(std::iter::repeat_n(0, i % 4))
                .collect()
        })
        .collect();
    let winv = w.inv()?;
    let mut mult = Vec::with_capacity(d * d);
    for p in 0..d {
        let (m, a) = (p / 4, p % 4);
        for q in 0..d {
            let (k, b) = (q / 4, q % 4);
            if m + k >= 2 {
                mult.push(SparseVec::zero(field, d));
            } else {
                // g^a x^k = ω^{-ak} x^k g^a
                mult.push(SparseVec::unit(field, d, idx(m + k, a + b)).scale(&winv.pow((a * k) as u64)));
            }
        }
    }
    let (g, x) = (idx(0, 1), idx(1, 0));
    let draft = Draft {
        field,
        family: FamilyKind::AC4Dual,
        labels,
        words,
        gens: vec![("g".into(), g), ("x".into(), x)],
        factors,
        mult,
        unit: 0,
    };
    let alg = draft.algebra();
    let e = |i: usize| SparseVec::unit(field, d, i);
    let gx = alg.mul_raw(1, &e(g), &e(x));
    let g3x = alg.mul_raw(1, &e(idx(0, 3)), &e(x));
    let e2 = |a: usize, b: usize| SparseVec::unit(field, d * d, a * d + b);
    let gd = GenData {
        delta: vec![
            e2(g, g).sub(&alg.kron(&gx, &g3x).scale(&field.int(2))),
            e2(0, x).add(&e2(x, idx(0, 2))),
        ],
        counit: vec![field.one(), field.zero()],
        antipode: vec![e(idx(0, 3)), e(idx(1, 2)).neg()],
    };
    assemble(draft, gd, None, None)
}
