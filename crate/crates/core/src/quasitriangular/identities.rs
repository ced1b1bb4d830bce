use super::h8_omega_printed;
use super::verify::r_inverse;
use crate::error::{Error, Result};
use crate::families::{h8_idempotents, FamilyKind};
use crate::hopf::{Check, Elem, HopfData, Tensor2, VerifyReport};

fn require(h: &HopfData, ok: bool, expected: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::WrongFamily {
            expected: expected.into(),
            got: h.family().map_or("unnamed".into(), |f| f.to_string()),
        })
    }
}

/// Conjugation of `a ⊗ 1` by the tensor `R_ω` of [`h8_omega_printed`], for every
/// primitive 8th root `ω`:
///
/// ```text
/// conj_e1          R⁻¹(e1⊗1)R  = e1⊗1
/// conj_exy         R⁻¹(exy⊗1)R = exy⊗1
/// conj_ex          R⁻¹(ex⊗1)R  = ey⊗1 + (ex−ey)⊗(e1+exy)
/// conj_ey          R⁻¹(ey⊗1)R  = ex⊗1 − (ex−ey)⊗(e1+exy)
/// conj_z           R⁻¹(z⊗1)R   = (z⊗1)[1⊗1 − (ex+ey)⊗(ex+ey−2exy) − ω²(ex−ey)⊗(ex−ey)]
/// conj_z_plus      the same with +2exy
/// conj_ex_xy_form  R⁻¹(ex⊗1)R  = ½(ex+ey)⊗1 + ½(ex−ey)⊗xy
/// conj_ey_xy_form  R⁻¹(ey⊗1)R  = ½(ex+ey)⊗1 − ½(ex−ey)⊗xy
/// conj_group_part  R⁻¹(a⊗1)R ∈ A ⊗ (k1 ⊕ k·xy) for a in the group part A
/// ```
///
/// `conj_z` and `conj_z_plus` cannot both hold; both are reported so the sign
/// can be read off. It is `conj_z_plus` that holds.
pub fn conjugation_identities_h8(h: &HopfData) -> Result<VerifyReport> {
    require(h, h.family().is_some_and(FamilyKind::is_h8_like), "h8")?;
    let f = h.field();
    let roots = f.primitive_roots(8)?;
    let [e1, ex, ey, exy] = h8_idempotents(h)?;
    let one = h.one::<1>();
    let (x, y, z) = (h.gen("x")?, h.gen("y")?, h.gen("z")?);
    let xy = h.mul(&x, &y);
    let half = f.frac(1, 2)?;
    let two = f.int(2);
    let t = |a: &Elem, b: &Elem| h.tensor2(a, b);
    let group_part = [one.clone(), x.clone(), y.clone(), xy.clone()];
    let d = h.dim();
    let (u, ixy) = (h.unit_index(), xy.coeffs().leading().map(|(i, _)| i).unwrap_or(0));
    let in_group = |i: usize| i < d / 2;

    let mut outcomes: Vec<(&str, Vec<Option<String>>)> = [
        "conj_e1",
        "conj_exy",
        "conj_ex",
        "conj_ey",
        "conj_z",
        "conj_z_plus",
        "conj_ex_xy_form",
        "conj_ey_xy_form",
        "conj_group_part",
    ]
    .into_iter()
    .map(|n| (n, Vec::new()))
    .collect();

    for w in &roots {
        let r = h8_omega_printed(h, w)?;
        let rinv = r_inverse(h, &r)?;
        let conj = |a: &Elem| h.product(&[&rinv, &t(a, &one), &r]);
        let w2 = w.pow(2);
        let exmey = &ex - &ey;
        let expey = &ex + &ey;
        let e1pexy = &e1 + &exy;
        let zl = |s: &crate::scalars::Scalar| {
            let inner = h.one::<2>() - t(&expey, &(&expey + &exy.scale(s))) - t(&exmey, &exmey).scale(&w2);
            h.mul(&t(&z, &one), &inner)
        };
        let cases: [(Tensor2, Tensor2); 8] = [
            (conj(&e1), t(&e1, &one)),
            (conj(&exy), t(&exy, &one)),
            (conj(&ex), t(&ey, &one) + t(&exmey, &e1pexy)),
            (conj(&ey), t(&ex, &one) - t(&exmey, &e1pexy)),
            (conj(&z), zl(&-&two)),
            (conj(&z), zl(&two)),
            (conj(&ex), (t(&expey, &one) + t(&exmey, &xy)).scale(&half)),
            (conj(&ey), (t(&expey, &one) - t(&exmey, &xy)).scale(&half)),
        ];
        for (k, (lhs, rhs)) in cases.iter().enumerate() {
            outcomes[k]
                .1
                .push((lhs != rhs).then(|| format!("ω = {w}: {}", h.format(&(lhs - rhs)))));
        }
        for a in &group_part {
            let c = conj(a);
            let ok = c.coeffs().iter().all(|(idx, _)| {
                let (i, j) = (idx / d, idx % d);
                in_group(i) && (j == u || j == ixy)
            });
            outcomes[8]
                .1
                .push((!ok).then(|| format!("ω = {w}, a = {}: {}", h.format(a), h.format(&c))));
        }
    }
    let mut rep = VerifyReport::default();
    for (name, o) in outcomes {
        rep.push(Check::from_outcomes(name, o));
    }
    Ok(rep)
}

/// On E(n): `R(g⊗g) = (g⊗g)R`, `R(x_p⊗1) = (x_p⊗g)R` and `R(g⊗x_q) = (1⊗x_q)R`.
pub fn rswap_identities_en(h: &HopfData, r: &Tensor2) -> Result<VerifyReport> {
    let n = match h.family() {
        Some(FamilyKind::En(n)) => *n,
        _ => return require(h, false, "en").map(|_| VerifyReport::default()),
    };
    let one = h.one::<1>();
    let g = h.gen("g")?;
    let gg = h.tensor2(&g, &g);
    let mut rep = VerifyReport::default();
    let (a, b) = (h.mul(r, &gg), h.mul(&gg, r));
    rep.push(Check::single("rswap_gg", a == b, || h.format(&(&a - &b))));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 1..=n {
        let xi = h.gen(&format!("x{i}"))?;
        let (a, b) = (h.mul(r, &h.tensor2(&xi, &one)), h.mul(&h.tensor2(&xi, &g), r));
        left.push((a != b).then(|| format!("p = {i}: {}", h.format(&(&a - &b)))));
        let (a, b) = (h.mul(r, &h.tensor2(&g, &xi)), h.mul(&h.tensor2(&one, &xi), r));
        right.push((a != b).then(|| format!("q = {i}: {}", h.format(&(&a - &b)))));
    }
    rep.push(Check::from_outcomes("rswap_x_left", left));
    rep.push(Check::from_outcomes("rswap_x_right", right));
    Ok(rep)
}
