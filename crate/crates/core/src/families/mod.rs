//! Constructors for the Hopf algebras studied here, with canonical basis labels.
//!
//! | family | basis | labels |
//! |---|---|---|
//! | `group:n1,..` | `g1^a1 … gk^ak` | `g1^a1*g2^a2` (`g^a` for one factor) |
//! | `en:n` | `g^j x_P` | `g^j*x{P}` |
//! | `ac2n:n` | `x^m g^a h^b g1^c1 …` | `x^m*g^a*h^b*g1^c1…` |
//! | `h2n2:n`, `h8` | `x^i y^j z^t` | `x^i*y^j*z^t` |
//! | `radford:r,n` | `g^l x^m` | `g^l*x^m` |
//! | `ac4dual` | `x^m g^a` | `1, g, g^2, g^3, x, x*g, x*g^2, x*g^3` |

mod en;
mod group;
mod kp;
mod pointed;
mod radford;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hopf::{Check, Elem, HopfData, HopfTables, VerifyReport};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalars::{FieldSpec, Scalar};

pub use en::{en_index, SignTables};
pub use group::group_algebra;
pub use kp::h8_idempotents;
pub use radford::qbinomial;

/// Which Hopf algebra to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Group algebra of `Z_{n1} × … × Z_{nk}`.
    GroupAlgebra(Vec<u32>),
    En(usize),
    AC2n(usize),
    H2n2(usize),
    H8,
    Radford {
        r: usize,
        n: usize,
    },
    AC4Dual,
    TensorProduct(Box<FamilyKind>, Box<FamilyKind>),
}

impl FamilyKind {
    /// Orders of the roots of unity the construction needs.
    pub fn root_orders(&self) -> Vec<u64> {
        match self {
            FamilyKind::H2n2(n) => vec![*n as u64],
            FamilyKind::Radford { r, n } => vec![(r * n) as u64],
            FamilyKind::AC4Dual => vec![4],
            FamilyKind::TensorProduct(a, b) => {
                let mut v = a.root_orders();
                v.extend(b.root_orders());
                v
            }
            _ => vec![],
        }
    }

    /// Smallest cyclotomic field the construction can live in.
    pub fn default_field(&self) -> FieldSpec {
        FieldSpec::for_orders(&self.root_orders())
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilyKind::GroupAlgebra(v) => v.iter().map(|&n| n as usize).product(),
            FamilyKind::En(n) => 1 << (n + 1),
            FamilyKind::AC2n(n) => 1 << (n + 1),
            FamilyKind::H2n2(n) => 2 * n * n,
            FamilyKind::H8 => 8,
            FamilyKind::Radford { r, n } => r * n * n,
            FamilyKind::AC4Dual => 8,
            FamilyKind::TensorProduct(a, b) => a.dim() * b.dim(),
        }
    }

    /// True for the two presentations of the 8-dimensional Kac–Paljutkin algebra.
    pub fn is_h8_like(&self) -> bool {
        matches!(self, FamilyKind::H8 | FamilyKind::H2n2(2))
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::GroupAlgebra(v) => {
                let s: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, "group:{}", s.join(","))
            }
            FamilyKind::En(n) => write!(f, "en:{n}"),
            FamilyKind::AC2n(n) => write!(f, "ac2n:{n}"),
            FamilyKind::H2n2(n) => write!(f, "h2n2:{n}"),
            FamilyKind::H8 => write!(f, "h8"),
            FamilyKind::Radford { r, n } => write!(f, "radford:{r},{n}"),
            FamilyKind::AC4Dual => write!(f, "ac4dual"),
            FamilyKind::TensorProduct(a, b) => write!(f, "tensor({a},{b})"),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("family {s:?}: {why}"));
        if let Some(inner) = s.strip_prefix("tensor(").and_then(|r| r.strip_suffix(')')) {
            // A comma inside `group:2,2` or `radford:2,3` is not a separator,
            // so try every top-level comma until both halves parse.
            let mut depth = 0i32;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        if let (Ok(a), Ok(b)) = (inner[..i].parse::<FamilyKind>(), inner[i + 1..].parse::<FamilyKind>())
                        {
                            return Ok(FamilyKind::TensorProduct(Box::new(a), Box::new(b)));
                        }
                    }
                    _ => {}
                }
            }
            return Err(bad("expected tensor(<spec>,<spec>)"));
        }
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let nums = |a: Option<&str>| -> Result<Vec<usize>> {
            let a = a.ok_or_else(|| bad("missing parameters"))?;
            a.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad("bad integer")))
                .collect()
        };
        let one = |a: Option<&str>| -> Result<usize> {
            let v = nums(a)?;
            if v.len() != 1 {
                return Err(bad("expected one parameter"));
            }
            Ok(v[0])
        };
        let kind = match name {
            "group" => {
                let v = nums(args)?;
                if v.contains(&0) {
                    return Err(bad("invariants must be positive"));
                }
                FamilyKind::GroupAlgebra(v.into_iter().map(|n| n as u32).collect())
            }
            "en" => {
                let n = one(args)?;
                if n == 0 || n > 8 {
                    return Err(bad("n must be in 1..=8"));
                }
                FamilyKind::En(n)
            }
            "ac2n" => {
                let n = one(args)?;
                if !(2..=8).contains(&n) {
                    return Err(bad("n must be in 2..=8"));
                }
                FamilyKind::AC2n(n)
            }
            "h2n2" => {
                let n = one(args)?;
                if !(2..=8).contains(&n) {
                    return Err(bad("n must be in 2..=8"));
                }
                FamilyKind::H2n2(n)
            }
            "h8" if args.is_none() => FamilyKind::H8,
            "ac4dual" if args.is_none() => FamilyKind::AC4Dual,
            "radford" => {
                let v = nums(args)?;
                if v.len() != 2 || v[0] == 0 || v[1] < 2 {
                    return Err(bad("expected r>=1, n>=2"));
                }
                FamilyKind::Radford { r: v[0], n: v[1] }
            }
            _ => return Err(bad("unknown family")),
        };
        Ok(kind)
    }
}

/// A family together with the field it is built over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub field: FieldSpec,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, field: FieldSpec) -> Self {
        FamilySpec { kind, field }
    }

    /// Uses the smallest cyclotomic field the family needs.
    pub fn default_field(kind: FamilyKind) -> Self {
        let field = kind.default_field();
        FamilySpec { kind, field }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.kind, self.field)
    }
}

/// Builds the family and checks every Hopf axiom on basis tuples.
pub fn build(spec: &FamilySpec) -> Result<HopfData> {
    let h = build_unchecked(spec)?;
    let report = h.verify_hopf();
    if !report.passed() {
        let first: Vec<String> = report
            .failed()
            .map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default()))
            .collect();
        return Err(Error::AxiomsViolated(first.join("; ")));
    }
    Ok(h)
}

/// Builds the family without running the axiom checks.
pub fn build_unchecked(spec: &FamilySpec) -> Result<HopfData> {
    let f = spec.field;
    for m in spec.kind.root_orders() {
        if !f.has_root(m) {
            return Err(Error::OrderUnavailable {
                order: m,
                field: f.to_string(),
            });
        }
    }
    match &spec.kind {
        FamilyKind::GroupAlgebra(inv) => group::group_algebra(f, inv, None),
        FamilyKind::En(n) => en::build(f, *n),
        FamilyKind::AC2n(n) => pointed::ac2n(f, *n),
        FamilyKind::H2n2(n) => kp::h2n2(f, *n),
        FamilyKind::H8 => kp::h8(f),
        FamilyKind::Radford { r, n } => radford::build(f, *r, *n),
        FamilyKind::AC4Dual => pointed::ac4dual(f),
        FamilyKind::TensorProduct(a, b) => {
            let ha = build_unchecked(&FamilySpec::new((**a).clone(), f))?;
            let hb = build_unchecked(&FamilySpec::new((**b).clone(), f))?;
            tensor_product(&ha, &hb)
        }
    }
}

/// Description of a basis presented by generators, used by [`assemble`].
pub(crate) struct Draft {
    pub field: FieldSpec,
    pub family: FamilyKind,
    pub labels: Vec<String>,
    pub words: Vec<String>,
    /// Generator names and their basis indices.
    pub gens: Vec<(String, usize)>,
    /// Each basis element as a product of generators (indices into `gens`).
    pub factors: Vec<Vec<usize>>,
    pub mult: Vec<SparseVec>,
    pub unit: usize,
}

/// Generator data extended multiplicatively to the whole basis.
pub(crate) struct GenData {
    pub delta: Vec<SparseVec>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<SparseVec>,
}

impl Draft {
    /// An algebra-only stand-in used for products while the coalgebra tables are computed.
    pub fn algebra(&self) -> HopfData {
        let d = self.labels.len();
        HopfData::new(HopfTables {
            field: self.field,
            family: None,
            labels: self.labels.clone(),
            words: self.words.clone(),
            generators: vec![],
            mult: self.mult.clone(),
            unit: self.unit,
            comult: vec![SparseVec::zero(self.field, d * d); d],
            counit: vec![self.field.zero(); d],
            antipode: None,
        })
    }
}

/// Completes a [`Draft`]: Δ and ε are extended multiplicatively and S
/// anti-multiplicatively along each basis word, unless closed-form tables are supplied.
pub(crate) fn assemble(
    draft: Draft,
    gen_data: GenData,
    comult_override: Option<Vec<SparseVec>>,
    antipode_override: Option<Vec<SparseVec>>,
) -> Result<HopfData> {
    let alg = draft.algebra();
    let d = draft.labels.len();
    let field = draft.field;
    let (comult, counit, antipode) = extend_from_generators(&alg, &draft, &gen_data);
    // Every word must multiply out to its basis element.
    for (i, f) in draft.factors.iter().enumerate() {
        let mut acc = SparseVec::unit(field, d, draft.unit);
        for &g in f {
            acc = alg.mul_raw(1, &acc, &SparseVec::unit(field, d, draft.gens[g].1));
        }
        if acc != SparseVec::unit(field, d, i) {
            return Err(Error::AxiomsViolated(format!(
                "word for {} does not give the basis element",
                draft.labels[i]
            )));
        }
    }
    let generators = draft
        .gens
        .iter()
        .map(|(n, i)| (n.clone(), SparseVec::unit(field, d, *i)))
        .collect();
    Ok(HopfData::new(HopfTables {
        field,
        family: Some(draft.family),
        labels: draft.labels,
        words: draft.words,
        generators,
        mult: draft.mult,
        unit: draft.unit,
        comult: comult_override.unwrap_or(comult),
        counit,
        antipode: Some(antipode_override.unwrap_or(antipode)),
    }))
}

pub(crate) fn extend_from_generators(
    alg: &HopfData,
    draft: &Draft,
    g: &GenData,
) -> (Vec<SparseVec>, Vec<Scalar>, Vec<SparseVec>) {
    let d = draft.labels.len();
    let field = draft.field;
    let u = draft.unit;
    let mut comult = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    let mut antipode = Vec::with_capacity(d);
    for f in &draft.factors {
        let mut dl = SparseVec::unit(field, d * d, u * d + u);
        let mut e = field.one();
        let mut s = SparseVec::unit(field, d, u);
        for &k in f {
            dl = alg.mul_raw(2, &dl, &g.delta[k]);
            e = &e * &g.counit[k];
            s = alg.mul_raw(1, &g.antipode[k], &s);
        }
        comult.push(dl);
        counit.push(e);
        antipode.push(s);
    }
    (comult, counit, antipode)
}

/// Tensor product Hopf algebra. Generators of `b` whose names clash with
/// those of `a` get the suffix `_2`.
pub fn tensor_product(a: &HopfData, b: &HopfData) -> Result<HopfData> {
    if a.field() != b.field() {
        return Err(Error::MixedField(a.field().to_string(), b.field().to_string()));
    }
    let field = a.field();
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let ta = a.tables();
    let tb = b.tables();
    let a_names: Vec<&str> = a.generator_names();
    let rename = |n: &str| {
        if a_names.contains(&n) {
            format!("{n}_2")
        } else {
            n.to_string()
        }
    };
    let rename_word = |w: &str| -> String {
        w.split('*')
            .map(|tok| match tok.split_once('^') {
                Some((n, e)) => format!("{}^{e}", rename(n)),
                None => rename(tok),
            })
            .collect::<Vec<_>>()
            .join("*")
    };
    let idx = |i: usize, j: usize| i * db + j;
    let mut labels = Vec::with_capacity(d);
    let mut words = Vec::with_capacity(d);
    for i in 0..da {
        for j in 0..db {
            labels.push(format!("{}|{}", ta.labels[i], tb.labels[j]));
            let (wa, wb) = (&ta.words[i], &tb.words[j]);
            words.push(match (wa.as_str(), wb.as_str()) {
                ("1", "1") => "1".to_string(),
                (_, "1") => wa.clone(),
                ("1", _) => rename_word(wb),
                _ => format!("{wa}*{}", rename_word(wb)),
            });
        }
    }
    let mut mult = Vec::with_capacity(d * d);
    for i1 in 0..da {
        for j1 in 0..db {
            for i2 in 0..da {
                for j2 in 0..db {
                    mult.push(a.kron(&ta.mult[i1 * da + i2], &tb.mult[j1 * db + j2]));
                }
            }
        }
    }
    let mut comult = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for i in 0..da {
        for j in 0..db {
            let mut acc = Accumulator::new(field, d * d);
            for (ia, ca) in ta.comult[i].iter() {
                let (a1, a2) = (ia / da, ia % da);
                for (jb, cb) in tb.comult[j].iter() {
                    let (b1, b2) = (jb / db, jb % db);
                    acc.add(idx(a1, b1) * d + idx(a2, b2), ca * cb);
                }
            }
            comult.push(acc.finish());
            counit.push(&ta.counit[i] * &tb.counit[j]);
        }
    }
    let antipode = match (&ta.antipode, &tb.antipode) {
        (Some(sa), Some(sb)) => Some(
            (0..da)
                .flat_map(|i| (0..db).map(move |j| (i, j)))
                .map(|(i, j)| a.kron(&sa[i], &sb[j]))
                .collect(),
        ),
        _ => None,
    };
    let mut generators: Vec<(String, SparseVec)> = ta
        .generators
        .iter()
        .map(|(n, v)| (n.clone(), a.kron(v, &SparseVec::unit(field, db, tb.unit))))
        .collect();
    for (n, v) in &tb.generators {
        generators.push((rename(n), a.kron(&SparseVec::unit(field, da, ta.unit), v)));
    }
    let family = match (&ta.family, &tb.family) {
        (Some(x), Some(y)) => Some(FamilyKind::TensorProduct(Box::new(x.clone()), Box::new(y.clone()))),
        _ => None,
    };
    Ok(HopfData::new(HopfTables {
        field,
        family,
        labels,
        words,
        generators,
        mult,
        unit: idx(ta.unit, tb.unit),
        comult,
        counit,
        antipode,
    }))
}

/// Rebuilds `h` on a permuted basis: basis element `i` of `h` becomes
/// element `perm[i]` of the result.
pub(crate) fn transport(
    h: &HopfData,
    perm: &[usize],
    family: FamilyKind,
    labels: Vec<String>,
    words: Vec<String>,
    generators: Vec<(String, SparseVec)>,
) -> HopfData {
    let d = h.dim();
    let t = h.tables();
    let p1 = |v: &SparseVec| v.reindex(d, |i| perm[i]);
    let p2 = |v: &SparseVec| v.reindex(d * d, |i| perm[i / d] * d + perm[i % d]);
    let mut mult = vec![SparseVec::zero(h.field(), d); d * d];
    let mut comult = vec![SparseVec::zero(h.field(), d * d); d];
    let mut counit = vec![h.field().zero(); d];
    let mut antipode = t.antipode.as_ref().map(|_| vec![SparseVec::zero(h.field(), d); d]);
    for i in 0..d {
        for j in 0..d {
            mult[perm[i] * d + perm[j]] = p1(&t.mult[i * d + j]);
        }
        comult[perm[i]] = p2(&t.comult[i]);
        counit[perm[i]] = t.counit[i].clone();
        if let (Some(dst), Some(src)) = (antipode.as_mut(), t.antipode.as_ref()) {
            dst[perm[i]] = p1(&src[i]);
        }
    }
    HopfData::new(HopfTables {
        field: h.field(),
        family: Some(family),
        labels,
        words,
        generators,
        mult,
        unit: perm[t.unit],
        comult,
        counit,
        antipode,
    })
}

/// Projection of a pointed family onto its coradical group algebra, with the splitting inclusion.
#[derive(Debug)]
pub struct CoradicalProjection {
    pub group: HopfData,
    /// `pi[i]`: image of basis element `i` in the group algebra.
    pub pi: Vec<SparseVec>,
    /// `iota[k]`: group basis element `k` inside `H`.
    pub iota: Vec<SparseVec>,
}

/// The coradical projection π for E(n), A_{C2^n}, Radford algebras and group algebras.
pub fn coradical_projection(h: &HopfData) -> Result<CoradicalProjection> {
    let field = h.field();
    let kind = h
        .family()
        .cloned()
        .ok_or_else(|| Error::UnsupportedFamily("unnamed algebra".into()))?;
    let d = h.dim();
    // (group algebra, basis index in H -> Some(group index) if group-like)
    let (group, to_group): (HopfData, Box<dyn Fn(usize) -> Option<usize>>) = match kind {
        FamilyKind::En(_) => {
            let g = group::group_algebra(field, &[2], Some(&["g"]))?;
            (g, Box::new(|i: usize| (i < 2).then_some(i)))
        }
        FamilyKind::AC2n(n) => {
            let names = pointed::ac2n_group_names(n);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let g = group::group_algebra(field, &vec![2; n], Some(&refs))?;
            let half = 1usize << n;
            (g, Box::new(move |i: usize| (i < half).then_some(i)))
        }
        FamilyKind::Radford { r, n: _ } => {
            let m = (r * (d / r).isqrt()) as u32;
            let g = group::group_algebra(field, &[m], Some(&["g"]))?;
            let mm = m as usize;
            (g, Box::new(move |i: usize| (i < mm).then_some(i)))
        }
        FamilyKind::GroupAlgebra(ref inv) => {
            let g = group::group_algebra(field, inv, None)?;
            (g, Box::new(|i: usize| Some(i)))
        }
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    let k = group.dim();
    let mut iota = vec![SparseVec::zero(field, d); k];
    let pi = (0..d)
        .map(|i| match to_group(i) {
            Some(gi) => {
                iota[gi] = SparseVec::unit(field, d, i);
                SparseVec::unit(field, k, gi)
            }
            None => SparseVec::zero(field, k),
        })
        .collect();
    Ok(CoradicalProjection { group, pi, iota })
}

impl CoradicalProjection {
    pub fn apply(&self, h: &HopfData, a: &Elem) -> Elem {
        let mut acc = Accumulator::new(h.field(), self.group.dim());
        for (i, c) in a.coeffs().iter() {
            acc.add_vec(c, &self.pi[i]);
        }
        self.group.tensor_from_vec(acc.finish()).expect("dimension")
    }

    /// `(π ⊗ π)(t)` as a coefficient vector over the group algebra squared.
    pub fn apply2(&self, h: &HopfData, t: &crate::hopf::Tensor2) -> SparseVec {
        let d = h.dim();
        let k = self.group.dim();
        let mut acc = Accumulator::new(h.field(), k * k);
        for (idx, c) in t.coeffs().iter() {
            for (a, x) in self.pi[idx / d].iter() {
                for (b, y) in self.pi[idx % d].iter() {
                    acc.add(a * k + b, &(c * x) * y);
                }
            }
        }
        acc.finish()
    }

    /// Checks that π is an algebra and coalgebra morphism and that π∘ι = id.
    pub fn verify(&self, h: &HopfData) -> VerifyReport {
        let d = h.dim();
        let k = self.group.dim();
        let g = &self.group;
        let mut r = VerifyReport::default();
        let pi1 = |v: &SparseVec| {
            let mut acc = Accumulator::new(h.field(), k);
            for (i, c) in v.iter() {
                acc.add_vec(c, &self.pi[i]);
            }
            acc.finish()
        };
        let pi2 = |v: &SparseVec| self.apply2(h, &h.tensor_from_vec::<2>(v.clone()).unwrap());
        let mut mult_bad = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let lhs = pi1(&h.tables().mult[i * d + j]);
                let rhs = g.mul_raw(1, &self.pi[i], &self.pi[j]);
                mult_bad.push((lhs != rhs).then(|| format!("({})({})", h.labels()[i], h.labels()[j])));
            }
        }
        r.push(Check::from_outcomes("pi_multiplicative", mult_bad));
        let mut delta_bad = Vec::new();
        let mut eps_bad = Vec::new();
        for i in 0..d {
            let lhs = pi2(&h.tables().comult[i]);
            let rhs = g.map_slot(&self.pi[i], 1, 0, g.comult_table(), 2);
            delta_bad.push((lhs != rhs).then(|| h.labels()[i].clone()));
            let mut e = h.field().zero();
            for (a, c) in self.pi[i].iter() {
                e += &(c * &g.tables().counit[a]);
            }
            eps_bad.push((e != h.tables().counit[i]).then(|| h.labels()[i].clone()));
        }
        r.push(Check::from_outcomes("pi_comultiplicative", delta_bad));
        r.push(Check::from_outcomes("pi_counital", eps_bad));
        let split: Vec<Option<String>> = (0..k)
            .map(|a| (pi1(&self.iota[a]) != SparseVec::unit(h.field(), k, a)).then(|| g.labels()[a].clone()))
            .collect();
        r.push(Check::from_outcomes("pi_iota_identity", split));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_strings_round_trip() {
        for s in [
            "en:3",
            "ac2n:4",
            "h2n2:3",
            "h8",
            "radford:2,3",
            "ac4dual",
            "group:2,2,2",
            "tensor(ac2n:2,group:2)",
            "tensor(radford:2,2,tensor(h8,group:3,2))",
        ] {
            let k: FamilyKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        for s in ["en:0", "foo", "radford:2", "tensor(en:1)", "group:"] {
            assert!(s.parse::<FamilyKind>().is_err(), "{s}");
        }
    }

    #[test]
    fn dimensions() {
        let q = |k: FamilyKind| build(&FamilySpec::default_field(k)).unwrap().dim();
        assert_eq!(q(FamilyKind::En(3)), 16);
        assert_eq!(q(FamilyKind::H2n2(3)), 18);
        assert_eq!(q(FamilyKind::Radford { r: 2, n: 2 }), 8);
        assert_eq!(
            q(FamilyKind::TensorProduct(
                Box::new(FamilyKind::AC2n(2)),
                Box::new(FamilyKind::GroupAlgebra(vec![2]))
            )),
            16
        );
    }

    #[test]
    fn missing_root_is_reported() {
        let spec = FamilySpec::new(FamilyKind::H2n2(3), FieldSpec::RATIONAL);
        assert!(matches!(build(&spec), Err(Error::OrderUnavailable { order: 3, .. })));
    }

    const SAMPLE: &[&str] = &[
        "en:1",
        "en:2",
        "en:3",
        "en:4",
        "ac2n:2",
        "ac2n:3",
        "ac2n:4",
        "h2n2:2",
        "h2n2:3",
        "h2n2:4",
        "h8",
        "radford:1,2",
        "radford:2,2",
        "radford:2,3",
        "radford:3,2",
        "ac4dual",
        "group:2,3",
        "tensor(h8,group:2)",
    ];

    #[test]
    fn every_family_verifies_over_cyclotomic_and_prime_fields() {
        for s in SAMPLE {
            let kind: FamilyKind = s.parse().unwrap();
            let h = build(&FamilySpec::default_field(kind.clone())).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(h.dim(), kind.dim(), "{s}");
            // 73 - 1 = 72 is divisible by every root order used above.
            let hp = build(&FamilySpec::new(kind, FieldSpec::prime(73).unwrap()))
                .unwrap_or_else(|e| panic!("{s} mod 73: {e}"));
            assert_eq!(hp.dim(), h.dim());
        }
    }

    #[test]
    fn coradical_projection_is_a_split_morphism() {
        for s in [
            "en:1",
            "en:2",
            "en:3",
            "ac2n:2",
            "ac2n:3",
            "radford:2,2",
            "radford:2,3",
            "group:2,2",
        ] {
            let h = build(&FamilySpec::default_field(s.parse().unwrap())).unwrap();
            let p = coradical_projection(&h).unwrap();
            let r = p.verify(&h);
            assert!(r.passed(), "{s}\n{r}");
        }
        let h = build(&FamilySpec::default_field(FamilyKind::En(2))).unwrap();
        let p = coradical_projection(&h).unwrap();
        let gx1x2 = h.word(&["g", "x1", "x2"]).unwrap();
        assert!(p.apply(&h, &gx1x2).is_zero());
        assert_eq!(p.apply(&h, &h.gen("g").unwrap()), p.group.gen("g").unwrap());
        let h8 = build(&FamilySpec::default_field(FamilyKind::H8)).unwrap();
        assert!(matches!(coradical_projection(&h8), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn tensor_with_trivial_factor_is_the_same_algebra() {
        let h = build(&FamilySpec::default_field(FamilyKind::En(1))).unwrap();
        let k = group_algebra(h.field(), &[], None).unwrap();
        let t = tensor_product(&h, &k).unwrap();
        assert_eq!(t.tables().mult, h.tables().mult);
        assert_eq!(t.tables().comult, h.tables().comult);
        assert_eq!(t.words(), h.words());
        let q = build(&FamilySpec::default_field(FamilyKind::AC4Dual)).unwrap();
        assert!(matches!(tensor_product(&h, &q), Err(Error::MixedField(..))));
    }
}
