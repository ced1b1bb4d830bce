//! Deformations `R̃ = R·exp(ħχ)` for nilpotent `χ`, held as polynomials in `ħ`
//! with tensor coefficients and checked degree by degree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{Check, HopfData, Leg, Tensor, VerifyReport};
use crate::precartier::verify_infinitesimal;
use crate::quasitriangular::{r_inverse, verify_qtr};

/// `Σ_j ħʲ c_j` with tensor coefficients; trailing zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTensor<const K: usize> {
    coeffs: Vec<Tensor<K>>,
}

pub type PolyTensor2 = PolyTensor<2>;
pub type PolyTensor3 = PolyTensor<3>;

impl<const K: usize> PolyTensor<K> {
    /// Builds from coefficients in increasing degree; an empty list is not allowed.
    pub fn from_coeffs(mut coeffs: Vec<Tensor<K>>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        while coeffs.len() > 1 && coeffs.last().is_some_and(Tensor::is_zero) {
            coeffs.pop();
        }
        PolyTensor { coeffs }
    }

    pub fn constant(t: Tensor<K>) -> Self {
        PolyTensor { coeffs: vec![t] }
    }

    pub fn coeffs(&self) -> &[Tensor<K>] {
        &self.coeffs
    }

    /// Coefficient of `ħʲ`, `None` above the degree.
    pub fn coeff(&self, j: usize) -> Option<&Tensor<K>> {
        self.coeffs.get(j)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Applies a linear map to every coefficient.
    pub fn map<const M: usize>(&self, f: impl Fn(&Tensor<K>) -> Tensor<M> + Sync) -> PolyTensor<M> {
        PolyTensor::from_coeffs(self.coeffs.par_iter().map(&f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = self.coeffs[0].scale(&self.coeffs[0].coeffs().field().zero());
        PolyTensor::from_coeffs(
            (0..n)
                .map(|j| self.coeffs.get(j).unwrap_or(&zero) + o.coeffs.get(j).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.map(|c| -c))
    }

    /// Product in `H^{⊗K}[ħ]`: convolution of the coefficient sequences.
    pub fn mul(&self, h: &HopfData, o: &Self) -> Self {
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let out: Vec<Tensor<K>> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut acc = h.zero::<K>();
                for i in k.saturating_sub(o.coeffs.len() - 1)..=k.min(self.coeffs.len() - 1) {
                    acc = acc + h.mul(&self.coeffs[i], &o.coeffs[k - i]);
                }
                acc
            })
            .collect();
        PolyTensor::from_coeffs(out)
    }

    pub fn product(h: &HopfData, factors: &[&Self]) -> Self {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = acc.mul(h, f);
        }
        acc
    }
}

/// Smallest `k ≥ 1` with `χᵏ = 0`.
pub fn nilpotency_degree(h: &HopfData, chi: &Tensor<2>) -> Result<usize> {
    let bound = h.dim() * h.dim();
    let mut p = chi.clone();
    for k in 1..=bound {
        if p.is_zero() {
            return Ok(k);
        }
        p = h.mul(&p, chi);
    }
    if p.is_zero() {
        Ok(bound + 1)
    } else {
        Err(Error::NotNilpotent(bound))
    }
}

/// `Σ_{j<k} ħʲ χʲ / j!`, `k` the nilpotency degree of `χ`.
pub fn exp_hbar(h: &HopfData, chi: &Tensor<2>) -> Result<PolyTensor2> {
    let k = nilpotency_degree(h, chi)?;
    let f = h.field();
    let mut coeffs = vec![h.one::<2>()];
    let mut power = h.one::<2>();
    let mut fact = f.one();
    for j in 1..k {
        power = h.mul(&power, chi);
        fact = &fact * &f.int(j as i64);
        let inv = fact.inv().map_err(|_| Error::FactorialNotInvertible(j))?;
        coeffs.push(power.scale(&inv));
    }
    Ok(PolyTensor::from_coeffs(coeffs))
}

/// `χ₁₂(R₁₂⁻¹χ₁₃R₁₂) = (R₁₂⁻¹χ₁₃R₁₂)χ₁₂` and the same on legs 2 and 3.
pub fn check_commutation_hypotheses(h: &HopfData, r: &Tensor<2>, chi: &Tensor<2>) -> Result<VerifyReport> {
    let rinv = r_inverse(h, r)?;
    let mut rep = VerifyReport::default();
    for (name, leg) in [("commute_12", Leg::L12), ("commute_23", Leg::L23)] {
        let (rl, ril, cl) = (h.leg(r, leg), h.leg(&rinv, leg), h.leg(chi, leg));
        let conj = h.product(&[&ril, &h.leg(chi, Leg::L13), &rl]);
        let (a, b) = (h.mul(&cl, &conj), h.mul(&conj, &cl));
        rep.push(Check::single(name, a == b, || h.format(&(&a - &b))));
    }
    Ok(rep)
}

/// Hypotheses and outcome of one quantization check, kept apart.
#[derive(Clone, Debug)]
pub struct QuantizedReport {
    pub nilpotency: Option<usize>,
    pub hypotheses: VerifyReport,
    pub checks: VerifyReport,
    pub r_tilde: Option<PolyTensor2>,
}

impl QuantizedReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.passed()
    }

    pub fn passed(&self) -> bool {
        self.hypotheses.passed() && self.checks.passed()
    }
}

/// Evaluates the hypotheses and, when `χ` is nilpotent with invertible
/// factorials, checks for `R̃ = R·exp(ħχ)`:
///
/// ```text
/// qtr1          R̃ Δ(b) = Δ^op(b) R̃ for every basis element b
/// hexagon_id_delta  (Id⊗Δ)(R̃) = R̃₁₃R̃₁₂
/// hexagon_delta_id  (Δ⊗Id)(R̃) = R̃₁₃R̃₂₃
/// inverse       R̃ · exp(−ħχ)R⁻¹ = 1⊗1 = exp(−ħχ)R⁻¹ · R̃
/// qyb           R̃₁₂R̃₁₃R̃₂₃ = R̃₂₃R̃₁₃R̃₁₂
/// degree_one    the ħ¹ coefficient of R⁻¹R̃ is χ
/// ```
///
/// Failing hypotheses do not stop the checks, so counterexamples to their
/// necessity can be looked for.
pub fn evaluate_quantization(h: &HopfData, r: &Tensor<2>, chi: &Tensor<2>) -> Result<QuantizedReport> {
    let mut hyp = VerifyReport::default();
    let qtr = verify_qtr(h, r);
    hyp.push(Check::single("r_quasitriangular", qtr.passed(), || qtr.to_string()));
    if !qtr.passed() {
        return Ok(QuantizedReport {
            nilpotency: None,
            hypotheses: hyp,
            checks: VerifyReport::default(),
            r_tilde: None,
        });
    }
    let inf = verify_infinitesimal(h, r, chi)?;
    hyp.push(Check::single("chi_infinitesimal", inf.passed(), || inf.to_string()));
    let nil = nilpotency_degree(h, chi);
    hyp.push(Check::single("chi_nilpotent", nil.is_ok(), || {
        format!("{}", nil.clone().unwrap_err())
    }));
    hyp.extend(check_commutation_hypotheses(h, r, chi)?);
    let e = nil.as_ref().ok().map(|_| exp_hbar(h, chi));
    if let Some(Err(err)) = &e {
        hyp.push(Check::single("factorials_invertible", false, || err.to_string()));
    }
    let (Ok(k), Some(Ok(e))) = (nil, e) else {
        return Ok(QuantizedReport {
            nilpotency: None,
            hypotheses: hyp,
            checks: VerifyReport::default(),
            r_tilde: None,
        });
    };
    hyp.push(Check::single("factorials_invertible", true, String::new));

    let rp = PolyTensor::constant(r.clone());
    let rt = rp.mul(h, &e);
    let mut checks = VerifyReport::default();

    let fails: Vec<Option<String>> = (0..h.dim())
        .into_par_iter()
        .map(|b| {
            let db = h.delta(&h.basis(b));
            let dop = h.flip(&db);
            let lhs = rt.map(|c| h.mul(c, &db));
            let rhs = rt.map(|c| h.mul(&dop, c));
            (lhs != rhs).then(|| h.labels()[b].clone())
        })
        .collect();
    checks.push(Check::from_outcomes("qtr1", fails));

    let (r12, r13, r23) = (
        rt.map(|c| h.leg(c, Leg::L12)),
        rt.map(|c| h.leg(c, Leg::L13)),
        rt.map(|c| h.leg(c, Leg::L23)),
    );
    let lhs = rt.map(|c| h.delta_right(c));
    let rhs = r13.mul(h, &r12);
    checks.push(Check::single("hexagon_id_delta", lhs == rhs, || {
        poly_diff(h, &lhs, &rhs)
    }));
    let lhs = rt.map(|c| h.delta_left(c));
    let rhs = r13.mul(h, &r23);
    checks.push(Check::single("hexagon_delta_id", lhs == rhs, || {
        poly_diff(h, &lhs, &rhs)
    }));

    let rinv = r_inverse(h, r)?;
    let e_neg = exp_hbar(h, &-chi)?;
    let inv = e_neg.mul(h, &PolyTensor::constant(rinv.clone()));
    let one = PolyTensor::constant(h.one::<2>());
    let (a, b) = (rt.mul(h, &inv), inv.mul(h, &rt));
    checks.push(Check::single("inverse", a == one && b == one, || {
        format!("right: {}; left: {}", poly_diff(h, &a, &one), poly_diff(h, &b, &one))
    }));

    let a = PolyTensor::product(h, &[&r12, &r13, &r23]);
    let b = PolyTensor::product(h, &[&r23, &r13, &r12]);
    checks.push(Check::single("qyb", a == b, || poly_diff(h, &a, &b)));

    let lead = PolyTensor::constant(rinv).mul(h, &rt);
    let d1 = lead.coeff(1).cloned().unwrap_or_else(|| h.zero::<2>());
    checks.push(Check::single("degree_one", &d1 == chi, || h.format(&(&d1 - chi))));

    Ok(QuantizedReport {
        nilpotency: Some(k),
        hypotheses: hyp,
        checks,
        r_tilde: Some(rt),
    })
}

fn poly_diff<const K: usize>(h: &HopfData, a: &PolyTensor<K>, b: &PolyTensor<K>) -> String {
    let d = a.sub(b);
    let parts: Vec<String> = d
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| format!("ħ^{j}: {}", h.format(c)))
        .collect();
    parts.join("; ")
}

/// Like [`evaluate_quantization`], but refuses when a hypothesis fails.
pub fn verify_quantized_qtr(h: &HopfData, r: &Tensor<2>, chi: &Tensor<2>) -> Result<QuantizedReport> {
    let rep = evaluate_quantization(h, r, chi)?;
    if !rep.hypotheses_hold() {
        let names: Vec<&str> = rep.hypotheses.failed().map(|c| c.name.as_str()).collect();
        return Err(Error::HypothesisViolated(names.join(", ")));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilyKind, FamilySpec};
    use crate::quasitriangular::{build_r, Lit, RSpec};
    use crate::scalars::FieldSpec;
    use crate::testutil::{en_spec, fam};

    #[test]
    fn nilpotency() {
        let h = fam(FamilyKind::AC2n(2));
        assert_eq!(nilpotency_degree(&h, &h.zero::<2>()).unwrap(), 1);
        assert_eq!(nilpotency_degree(&h, &h.parse::<2>("x (x) x*g").unwrap()).unwrap(), 2);
        let h = fam(FamilyKind::En(2));
        let chi = h.parse::<2>("g*x1 (x) x1 + g*x2 (x) x2").unwrap();
        let k = nilpotency_degree(&h, &chi).unwrap();
        assert!(k <= 3);
        assert!(h.pow(&chi, k as u32).is_zero());
        assert!(!h.pow(&chi, k as u32 - 1).is_zero());
        assert!(matches!(
            nilpotency_degree(&h, &h.one::<2>()),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn exponentials() {
        let h = fam(FamilyKind::AC2n(2));
        assert_eq!(
            exp_hbar(&h, &h.zero::<2>()).unwrap(),
            PolyTensor::constant(h.one::<2>())
        );
        let chi = h.parse::<2>("x (x) x*g").unwrap();
        let e = exp_hbar(&h, &chi).unwrap();
        assert_eq!(e.coeffs(), &[h.one::<2>(), chi.clone()]);
        let h = fam(FamilyKind::En(2));
        let chi = h.parse::<2>("g*x1 (x) x1 + 3*g*x2 (x) x2 - g*x1 (x) x2").unwrap();
        let prod = exp_hbar(&h, &chi).unwrap().mul(&h, &exp_hbar(&h, &-&chi).unwrap());
        assert_eq!(prod, PolyTensor::constant(h.one::<2>()));
    }

    #[test]
    fn factorial_in_small_characteristic() {
        // In characteristic 3, (g-1)^9 = g^9 - 1 = 0 in kC9 while (g-1)^8 != 0.
        let h = build(&FamilySpec::new(
            FamilyKind::GroupAlgebra(vec![9]),
            FieldSpec::prime(3).unwrap(),
        ))
        .unwrap();
        let chi = h.parse::<2>("g (x) 1 - 1 (x) 1").unwrap();
        assert_eq!(nilpotency_degree(&h, &chi).unwrap(), 9);
        assert!(matches!(exp_hbar(&h, &chi), Err(Error::FactorialNotInvertible(3))));
    }

    #[test]
    fn hypotheses() {
        let h = fam(FamilyKind::AC2n(2));
        let r = build_r(&h, &RSpec::AC22 { q: 0, a: Lit::from(1) }).unwrap();
        assert!(check_commutation_hypotheses(&h, &r, &h.zero::<2>()).unwrap().passed());
        assert!(
            check_commutation_hypotheses(&h, &r, &h.parse::<2>("x (x) x*g").unwrap())
                .unwrap()
                .passed()
        );
        let h = fam(FamilyKind::En(2));
        let r = build_r(&h, &en_spec(&[vec![1, 2], vec![3, 4]])).unwrap();
        assert!(
            check_commutation_hypotheses(&h, &r, &h.parse::<2>("g*x1 (x) x2").unwrap())
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn quantized_structures() {
        let h = fam(FamilyKind::En(2));
        let r = build_r(&h, &en_spec(&[vec![1, 0], vec![0, 1]])).unwrap();
        let chi = h.parse::<2>("g*x1 (x) x2 - g*x2 (x) x1").unwrap();
        let rep = verify_quantized_qtr(&h, &r, &chi).unwrap();
        assert!(rep.passed(), "{}\n{}", rep.hypotheses, rep.checks);
        let chi = h.parse::<2>("-7/3*g*x1 (x) x1").unwrap();
        assert!(verify_quantized_qtr(&h, &r, &chi).unwrap().passed());

        let h = fam(FamilyKind::AC2n(2));
        let r = build_r(&h, &RSpec::AC22 { q: 0, a: Lit::from(1) }).unwrap();
        let chi = h.parse::<2>("x (x) x*g").unwrap();
        let rep = verify_quantized_qtr(&h, &r, &chi).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.r_tilde.unwrap().coeffs(), &[r.clone(), h.mul(&r, &chi)]);
    }

    #[test]
    fn hypothesis_failure_is_reported() {
        let h = fam(FamilyKind::En(1));
        let r = build_r(&h, &en_spec(&[vec![0]])).unwrap();
        let chi = h.parse::<2>("x1 (x) x1").unwrap();
        assert!(matches!(
            verify_quantized_qtr(&h, &r, &chi),
            Err(Error::HypothesisViolated(_))
        ));
        let rep = evaluate_quantization(&h, &r, &chi).unwrap();
        assert!(!rep.hypotheses.get("chi_infinitesimal").unwrap().passed());
    }

    #[test]
    fn polynomial_product_is_convolution() {
        let h = fam(FamilyKind::En(1));
        let t = |s: &str| h.parse::<2>(s).unwrap();
        let a = PolyTensor::from_coeffs(vec![t("1 (x) 1"), t("g (x) x1")]);
        let b = PolyTensor::from_coeffs(vec![t("x1 (x) g"), t("0"), t("g (x) g")]);
        let p = a.mul(&h, &b);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeff(0).unwrap(), &t("x1 (x) g"));
        assert_eq!(p.coeff(1).unwrap(), &h.mul(&t("g (x) x1"), &t("x1 (x) g")));
        assert_eq!(p.coeff(3).unwrap(), &h.mul(&t("g (x) x1"), &t("g (x) g")));
        assert_eq!(PolyTensor::from_coeffs(vec![t("0"), t("0")]).degree(), 0);
    }
}
