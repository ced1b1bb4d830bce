//! Universal R-matrices: construction, axiom checks, inverses, and the
//! bicharacter search on H_{2n²}.

mod enumerate;
mod identities;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::{h8_idempotents, FamilyKind};
use crate::hopf::{Elem, HopfData, Tensor2};
use crate::scalars::Scalar;

pub use enumerate::{bichar_r, candidate_count, enumerate_group_rmatrices, GroupR, BICHAR_MAX_N};
pub use identities::{conjugation_identities_h8, rswap_identities_en};
pub use verify::{is_triangular, r_inverse, verify_qtr};

/// A scalar written in the element grammar (`3`, `-1/2`, `z8^3`, `(1+z4)/2`),
/// resolved against the field of the algebra at build time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lit(pub String);

impl Lit {
    pub fn resolve(&self, h: &HopfData) -> Result<Scalar> {
        let v = h.parse_any(&self.0)?;
        if v.arity != 0 {
            return Err(Error::Parse(format!("{:?} is not a scalar", self.0)));
        }
        Ok(v.coeffs.coeff(0))
    }
}

impl From<i64> for Lit {
    fn from(n: i64) -> Self {
        Lit(n.to_string())
    }
}

impl From<&str> for Lit {
    fn from(s: &str) -> Self {
        Lit(s.to_string())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Which R-matrix to build.
#[derive(Clone, Debug, PartialEq)]
pub enum RSpec {
    /// `R_A` on E(n), `A` an `n × n` matrix.
    EnA(Vec<Vec<Lit>>),
    /// `R_a = R_q(1⊗1 + a x⊗gx)` on A_{C2^n}, `q ∈ {0, 1}`.
    AC22 { q: u8, a: Lit },
    /// `R_{α,β}` on H8, `α, β ∈ {1, -1}`.
    H8Pm { alpha: i8, beta: i8 },
    /// `R_ω` on H8, `ω` a primitive 8th root of unity, with legs exchanged
    /// (see [`h8_omega_printed`]).
    H8Omega(Lit),
    /// The unique R-matrix of the dual of A''_{C4}.
    AC4Dual,
    /// A tensor given directly.
    Explicit(Tensor2),
    /// A tensor written in the element grammar, parsed at build time.
    ExplicitText(String),
    /// `Σ q^{a·M·b} e_a ⊗ e_b` on H_{2n²}, entries of `M` taken mod `n`.
    GroupBicharacter([[u32; 2]; 2]),
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<String>>> {
    let bad = || Error::Parse(format!("bad matrix {s:?}, expected [[a,b],[c,d]]"));
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        rest = rest.trim_start();
        let body = rest.strip_prefix('[').ok_or_else(bad)?;
        let end = body.find(']').ok_or_else(bad)?;
        rows.push(body[..end].split(',').map(|e| e.trim().to_string()).collect::<Vec<_>>());
        rest = body[end + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(bad)?;
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n || r.iter().any(String::is_empty)) {
        return Err(Error::Parse(format!("matrix {s:?} is not square")));
    }
    Ok(rows)
}

fn parse_sign(s: &str) -> Result<i8> {
    match s.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(Error::Parse(format!("expected +1 or -1, got {other:?}"))),
    }
}

impl FromStr for RSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = s.split_once(':').map_or((s, ""), |(h, a)| (h.trim(), a.trim()));
        match head {
            "en-a" => Ok(RSpec::EnA(
                parse_matrix(arg)?.into_iter().map(|r| r.into_iter().map(Lit).collect()).collect(),
            )),
            "ac22" => {
                let mut q = None;
                let mut a = None;
                for part in arg.split(',') {
                    match part.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
                        Some(("q", v)) => {
                            q = Some(match v {
                                "0" => 0,
                                "1" => 1,
                                _ => return Err(Error::Parse(format!("q must be 0 or 1, got {v:?}"))),
                            })
                        }
                        Some(("a", v)) if !v.is_empty() => a = Some(Lit(v.to_string())),
                        _ => return Err(Error::Parse(format!("bad ac22 parameter {part:?}"))),
                    }
                }
                match (q, a) {
                    (Some(q), Some(a)) => Ok(RSpec::AC22 { q, a }),
                    _ => Err(Error::Parse("ac22 needs q=0|1,a=<scalar>".into())),
                }
            }
            "h8pm" => {
                let (a, b) = arg.split_once(',').ok_or_else(|| Error::Parse("h8pm needs two signs".into()))?;
                Ok(RSpec::H8Pm { alpha: parse_sign(a)?, beta: parse_sign(b)? })
            }
            "h8omega" if !arg.is_empty() => Ok(RSpec::H8Omega(Lit(arg.to_string()))),
            "ac4dual" if arg.is_empty() => Ok(RSpec::AC4Dual),
            "explicit" if !arg.is_empty() => Ok(RSpec::ExplicitText(arg.to_string())),
            "bichar" => {
                let m = parse_matrix(arg)?;
                if m.len() != 2 {
                    return Err(Error::Parse("bichar needs a 2x2 matrix".into()));
                }
                let mut out = [[0u32; 2]; 2];
                for (i, row) in m.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        out[i][j] = e.parse().map_err(|_| Error::Parse(format!("bad bichar entry {e:?}")))?;
                    }
                }
                Ok(RSpec::GroupBicharacter(out))
            }
            _ => Err(Error::Parse(format!(
                "unknown R-matrix {s:?}; expected en-a:[[..]], ac22:q=..,a=.., h8pm:±1,±1, h8omega:<root>, ac4dual, bichar:[[..]] or explicit:<expr>"
            ))),
        }
    }
}

impl fmt::Display for RSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: i8| if s > 0 { "+1" } else { "-1" };
        match self {
            RSpec::EnA(a) => {
                let rows: Vec<String> = a
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|e| e.0.as_str()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "en-a:[{}]", rows.join(","))
            }
            RSpec::AC22 { q, a } => write!(f, "ac22:q={q},a={a}"),
            RSpec::H8Pm { alpha, beta } => write!(f, "h8pm:{},{}", sign(*alpha), sign(*beta)),
            RSpec::H8Omega(w) => write!(f, "h8omega:{w}"),
            RSpec::AC4Dual => write!(f, "ac4dual"),
            RSpec::Explicit(t) => write!(f, "explicit:<tensor with {} terms>", t.coeffs().nnz()),
            RSpec::ExplicitText(s) => write!(f, "explicit:{s}"),
            RSpec::GroupBicharacter(m) => write!(f, "bichar:[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1]),
        }
    }
}

fn mismatch(spec: &RSpec, h: &HopfData) -> Error {
    Error::FamilyMismatch(format!(
        "{spec} does not apply to {}",
        h.family().map_or("an unnamed algebra".into(), |f| f.to_string())
    ))
}

/// Builds the R-matrix described by `spec` on `h`.
pub fn build_r(h: &HopfData, spec: &RSpec) -> Result<Tensor2> {
    let fam = h.family().cloned();
    match (spec, fam) {
        (RSpec::EnA(a), Some(FamilyKind::En(n))) => {
            if a.len() != n || a.iter().any(|r| r.len() != n) {
                return Err(Error::FamilyMismatch(format!("{spec}: E({n}) needs an {n}x{n} matrix")));
            }
            let m: Vec<Vec<Scalar>> = a
                .iter()
                .map(|r| r.iter().map(|e| e.resolve(h)).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            en_r(h, &m)
        }
        (RSpec::AC22 { q, a }, Some(FamilyKind::AC2n(_))) => ac22_r(h, *q, &a.resolve(h)?),
        (RSpec::H8Pm { alpha, beta }, Some(f)) if f.is_h8_like() => h8_pm(h, *alpha, *beta),
        (RSpec::H8Omega(w), Some(f)) if f.is_h8_like() => Ok(h.flip(&h8_omega_printed(h, &w.resolve(h)?)?)),
        (RSpec::AC4Dual, Some(FamilyKind::AC4Dual)) => Ok(h.parse::<2>(
            "1/2*(1 (x) 1 + g^2 (x) 1 + 1 (x) g^2 - g^2 (x) g^2) \
             - x (x) x - x (x) g^2*x + g^2*x (x) x - g^2*x (x) g^2*x",
        )?),
        (RSpec::Explicit(t), _) => h.tensor_from_vec(t.coeffs().clone()),
        (RSpec::ExplicitText(s), _) => h.parse::<2>(s),
        (RSpec::GroupBicharacter(m), Some(FamilyKind::H2n2(n))) => bichar_r(h, n, m),
        (RSpec::GroupBicharacter(m), Some(FamilyKind::H8)) => bichar_r(h, 2, m),
        _ => Err(mismatch(spec, h)),
    }
}

/// Determinant by cofactor expansion; the matrices here are at most `n × n` for small `n`.
fn det(m: &[Vec<Scalar>]) -> Scalar {
    match m.len() {
        0 => unreachable!("empty minor"),
        1 => m[0][0].clone(),
        k => {
            let mut acc = m[0][0].field().zero();
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &det(&minor);
                if j % 2 == 0 {
                    acc += &t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1..1usize << n)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// `R_A` on E(n): the group term plus, for each pair `(P, F)` with `|P| = |F| = k ≥ 1`,
/// `½ (-1)^{k(k-1)/2} det(A[P,F]) (g^k x_F⊗x_P + g^k x_F⊗g x_P + g^{k+1} x_F⊗x_P − g^{k+1} x_F⊗g x_P)`.
fn en_r(h: &HopfData, a: &[Vec<Scalar>]) -> Result<Tensor2> {
    let n = a.len();
    let f = h.field();
    let half = f.frac(1, 2)?;
    let one = h.one::<1>();
    let g = h.gen("g")?;
    let xs: Vec<Elem> = (1..=n).map(|i| h.gen(&format!("x{i}"))).collect::<Result<_>>()?;
    let x_of = |s: &[usize]| -> Elem { s.iter().fold(one.clone(), |acc, &i| h.mul(&acc, &xs[i])) };
    let gp = |k: usize| {
        if k.is_multiple_of(2) {
            one.clone()
        } else {
            g.clone()
        }
    };
    let mut r = h.tensor2(&one, &one) + h.tensor2(&one, &g) + h.tensor2(&g, &one) - h.tensor2(&g, &g);
    let subs = subsets(n);
    for p in &subs {
        let k = p.len();
        let xp = x_of(p);
        let gxp = h.mul(&g, &xp);
        for fset in subs.iter().filter(|s| s.len() == k) {
            let minor: Vec<Vec<Scalar>> = p
                .iter()
                .map(|&i| fset.iter().map(|&j| a[i][j].clone()).collect())
                .collect();
            let mut c = det(&minor);
            if c.is_zero() {
                continue;
            }
            if (k * (k - 1) / 2) % 2 == 1 {
                c = -c;
            }
            let xf = x_of(fset);
            let l0 = h.mul(&gp(k), &xf);
            let l1 = h.mul(&gp(k + 1), &xf);
            let term = h.tensor2(&l0, &xp) + h.tensor2(&l0, &gxp) + h.tensor2(&l1, &xp) - h.tensor2(&l1, &gxp);
            r = r + term.scale(&c);
        }
    }
    Ok(r.scale(&half))
}

/// `R_q (1⊗1 + a x⊗gx)` with `R_q = ¼ Σ (-1)^{ij+kl} g^i h^k ⊗ g^{j+q(j+l)} h^{q(j+l)}`.
fn ac22_r(h: &HopfData, q: u8, a: &Scalar) -> Result<Tensor2> {
    let f = h.field();
    let one = h.one::<1>();
    let g = h.gen("g")?;
    let hh = h.gen("h")?;
    let x = h.gen("x")?;
    let gpow = |e: usize| {
        if e.is_multiple_of(2) {
            one.clone()
        } else {
            g.clone()
        }
    };
    let hpow = |e: usize| {
        if e.is_multiple_of(2) {
            one.clone()
        } else {
            hh.clone()
        }
    };
    let q = q as usize;
    let mut rq = h.zero::<2>();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let left = h.mul(&gpow(i), &hpow(k));
                    let right = h.mul(&gpow(j + q * (j + l)), &hpow(q * (j + l)));
                    let t = h.tensor2(&left, &right);
                    rq = if (i * j + k * l) % 2 == 0 { rq + t } else { rq - t };
                }
            }
        }
    }
    let rq = rq.scale(&f.frac(1, 4)?);
    let twist = h.one::<2>() + h.tensor2(&x, &h.mul(&g, &x)).scale(a);
    Ok(h.mul(&rq, &twist))
}

fn h8_pm(h: &HopfData, alpha: i8, beta: i8) -> Result<Tensor2> {
    let f = h.field();
    let [e1, ex, ey, exy] = h8_idempotents(h)?;
    let (al, be, ab) = (f.int(alpha as i64), f.int(beta as i64), f.int((alpha * beta) as i64));
    let comb = |c: [&Scalar; 4]| -> Elem { e1.scale(c[0]) + ex.scale(c[1]) + ey.scale(c[2]) + exy.scale(c[3]) };
    let one = f.one();
    let (mone, mbe, mab) = (-&one, -&be, -&ab);
    Ok(h.tensor2(&e1, &comb([&one, &one, &one, &one]))
        + h.tensor2(&ex, &comb([&one, &al, &be, &ab]))
        + h.tensor2(&ey, &comb([&one, &mbe, &al, &mab]))
        + h.tensor2(&exy, &comb([&one, &mab, &ab, &mone])))
}

/// The four z-free blocks `[R⁰⁰, R¹⁰, R⁰¹, R¹¹]` of `R_ω`.
pub(crate) fn h8_omega_blocks(h: &HopfData, w: &Scalar) -> Result<[Tensor2; 4]> {
    let f = h.field();
    if w.pow(4) != f.int(-1) {
        return Err(Error::Range(format!("{w} is not a primitive 8th root of unity")));
    }
    let [e1, ex, ey, exy] = h8_idempotents(h)?;
    let w2 = w.pow(2);
    let winv = w.inv()?;
    let t = |a: &Elem, b: &Elem| h.tensor2(a, b);
    let r00 = t(&e1, &e1) + t(&e1, &exy) + t(&exy, &e1) - t(&exy, &exy);
    let r10 = t(&e1, &ex) + t(&e1, &ey) - t(&exy, &ex).scale(&w2) + t(&exy, &ey).scale(&w2);
    let r01 = t(&ex, &e1) + t(&ey, &e1) + t(&ex, &exy).scale(&w2) - t(&ey, &exy).scale(&w2);
    let r11 = t(&ex, &ex).scale(&winv) + t(&ex, &ey).scale(w) + t(&ey, &ex).scale(w) + t(&ey, &ey).scale(&winv);
    Ok([r00, r10, r01, r11])
}

/// `R⁰⁰ + R¹⁰(z⊗1) + R⁰¹(1⊗z) + R¹¹(z⊗z)` term for term. With
/// `Δ(z) = ½(z⊗z)(1⊗1 + y⊗1 + 1⊗x − y⊗x)` this tensor satisfies the axioms
/// for `Δ^op`, not `Δ`; [`build_r`] returns its flip.
pub fn h8_omega_printed(h: &HopfData, w: &Scalar) -> Result<Tensor2> {
    let [r00, r10, r01, r11] = h8_omega_blocks(h, w)?;
    let one = h.one::<1>();
    let z = h.gen("z")?;
    Ok(r00 + h.mul(&r10, &h.tensor2(&z, &one)) + h.mul(&r01, &h.tensor2(&one, &z)) + h.mul(&r11, &h.tensor2(&z, &z)))
}


/// The R-matrices iterated over when a family is classified without a fixed R:
/// three matrices `A` on E(n), `q, a ∈ {0, 1}` on A_{C2^n}, every `R_{α,β}`
/// and (when the field has ζ8) every `R_ω` on H8, the bicharacter R-matrices
/// on H_{2n²}, the unique R of the dual of A''_{C4}, and `1⊗1` on group algebras.
pub fn registered_r(h: &HopfData) -> Result<Vec<RSpec>> {
    let Some(kind) = h.family() else {
        return Ok(Vec::new());
    };
    let out = match kind {
        FamilyKind::En(n) => {
            let n = *n;
            let mat = |f: &dyn Fn(usize, usize) -> i64| {
                RSpec::EnA((0..n).map(|i| (0..n).map(|j| Lit::from(f(i, j))).collect()).collect())
            };
            vec![
                mat(&|_, _| 0),
                mat(&|i, j| i64::from(i == j)),
                mat(&|i, j| (i * n + j + 2) as i64),
            ]
        }
        FamilyKind::AC2n(_) => (0..2u8)
            .flat_map(|q| (0..2i64).map(move |a| RSpec::AC22 { q, a: Lit::from(a) }))
            .collect(),
        k if k.is_h8_like() => {
            let mut v: Vec<RSpec> = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .map(|(alpha, beta)| RSpec::H8Pm { alpha, beta })
                .collect();
            if h.field().has_root(8) {
                v.extend([1, 3, 5, 7].map(|e| RSpec::H8Omega(Lit(format!("z8^{e}")))));
            }
            v
        }
        FamilyKind::H2n2(n) => enumerate_group_rmatrices(h, *n)?
            .into_iter()
            .map(|g| RSpec::GroupBicharacter(g.matrix))
            .collect(),
        FamilyKind::AC4Dual => vec![RSpec::AC4Dual],
        FamilyKind::GroupAlgebra(_) => vec![RSpec::ExplicitText("1 (x) 1".into())],
        _ => Vec::new(),
    };
    Ok(out)
}
