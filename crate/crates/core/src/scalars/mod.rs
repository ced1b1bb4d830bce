//! Exact scalars: rationals, cyclotomic fields Q(ζ_M), and prime fields F_p.
//!
//! A session works in one ambient field described by [`FieldSpec`]. In
//! cyclotomic mode ζ_M is the class of `t^(order/M)` in Q[t]/(Φ_order); in
//! prime mode it is `g^((p-1)/M)` for the smallest generator `g` of F_p^*,
//! so roots of different orders are compatible in both modes.

mod cyclotomic;
mod prime;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use cyclotomic::{cyclotomic_poly, totient};
pub use prime::{is_prime, primitive_root};
pub use rational::Rational;

use crate::error::{Error, Result};
use cyclotomic::Coeffs;

/// The ambient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// Q(ζ_order); `order = 1` is Q itself.
    Cyclotomic { order: u32 },
    /// F_p with the smallest primitive root as generator.
    Prime { p: u64 },
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec::Cyclotomic { order: 1 };

    pub fn cyclotomic(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidField("cyclotomic order must be positive".into()));
        }
        // Q(ζ_2) is Q.
        Ok(FieldSpec::Cyclotomic {
            order: if order == 2 { 1 } else { order },
        })
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !prime::is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime { p })
    }

    /// Smallest cyclotomic field containing roots of all the given orders.
    pub fn for_orders(orders: &[u64]) -> Self {
        let l = orders.iter().fold(1u64, |acc, &m| num_integer::lcm(acc, m.max(1)));
        FieldSpec::Cyclotomic {
            order: if l == 2 { 1 } else { l as u32 },
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Cyclotomic { .. } => 0,
            FieldSpec::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Cyclotomic { order } => Scalar::Cyc {
                order,
                c: Coeffs::new(),
            },
            FieldSpec::Prime { p } => Scalar::Prime { p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.rational(&Rational::from_int(n))
            .expect("integers embed in every field")
    }

    /// Image of a rational number; fails in characteristic p when p divides the denominator.
    pub fn rational(&self, r: &Rational) -> Result<Scalar> {
        match *self {
            FieldSpec::Cyclotomic { order } => {
                let mut c = Coeffs::new();
                if !r.is_zero() {
                    c.push(r.clone());
                }
                Ok(Scalar::Cyc { order, c })
            }
            FieldSpec::Prime { p } => Ok(Scalar::Prime { p, v: r.mod_p(p)? }),
        }
    }

    pub fn frac(&self, n: i64, d: i64) -> Result<Scalar> {
        self.rational(&Rational::new(n, d)?)
    }

    /// True when a primitive `m`-th root of unity exists in this field.
    pub fn has_root(&self, m: u64) -> bool {
        match *self {
            _ if m == 1 => true,
            FieldSpec::Cyclotomic { order } => m == 2 || (order as u64).is_multiple_of(m),
            FieldSpec::Prime { p } => (p - 1) % m == 0,
        }
    }

    /// The distinguished primitive `m`-th root of unity ζ_m.
    pub fn root(&self, m: u64) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::Range("root order must be positive".into()));
        }
        if !self.has_root(m) {
            return Err(Error::OrderUnavailable {
                order: m,
                field: self.to_string(),
            });
        }
        match *self {
            FieldSpec::Cyclotomic { .. } if m <= 2 => Ok(self.int(if m == 1 { 1 } else { -1 })),
            FieldSpec::Cyclotomic { order } => {
                let k = (order as u64 / m) as usize;
                let mut c = vec![Rational::zero(); k + 1];
                c[k] = Rational::one();
                Ok(Scalar::Cyc {
                    order,
                    c: cyclotomic::reduce(order, c),
                })
            }
            FieldSpec::Prime { p } => {
                let g = prime::primitive_root(p);
                Ok(Scalar::Prime {
                    p,
                    v: prime::pow_mod(g, (p - 1) / m, p),
                })
            }
        }
    }

    /// All primitive `m`-th roots ζ_m^a, gcd(a, m) = 1, in increasing order of a.
    pub fn primitive_roots(&self, m: u64) -> Result<Vec<Scalar>> {
        let z = self.root(m)?;
        Ok((1..=m)
            .filter(|&a| num_integer::gcd(a, m) == 1)
            .map(|a| z.pow(a))
            .collect())
    }

    /// Fails unless `n` is invertible in this field.
    pub fn require_invertible(&self, n: u64, why: &str) -> Result<()> {
        let c = self.characteristic();
        if c != 0 && n.is_multiple_of(c) {
            return Err(Error::CharacteristicConflict(format!(
                "{why}: characteristic {c} divides {n}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Cyclotomic { order: 1 | 2 } => f.write_str("rational"),
            FieldSpec::Cyclotomic { order } => write!(f, "cyclotomic:{order}"),
            FieldSpec::Prime { p } => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("unrecognised field {s:?}"));
        if s == "rational" || s == "q" {
            return Ok(FieldSpec::RATIONAL);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "cyclotomic" => FieldSpec::cyclotomic(arg.trim().parse().map_err(|_| bad())?),
            "prime" => FieldSpec::prime(arg.trim().parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An element of the ambient field.
///
/// Cyclotomic coefficients are stored reduced and with trailing zeros
/// trimmed, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Cyc { order: u32, c: Coeffs },
    Prime { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Cyc { order, .. } => FieldSpec::Cyclotomic { order: *order },
            Scalar::Prime { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyc { c, .. } => c.is_empty(),
            Scalar::Prime { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Cyc { c, .. } => c.len() == 1 && c[0].is_one(),
            Scalar::Prime { v, .. } => *v == 1,
        }
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Cyc { c, .. } if c.len() <= 1 => Some(c.first().cloned().unwrap_or_default()),
            _ => None,
        }
    }

    /// Coordinates in the power basis 1, t, t², … (cyclotomic mode only).
    pub fn coords(&self) -> Option<Vec<Rational>> {
        match self {
            Scalar::Cyc { c, .. } => Some(c.to_vec()),
            Scalar::Prime { .. } => None,
        }
    }

    /// Same field, integer value `n`.
    pub fn int_like(&self, n: i64) -> Scalar {
        self.field().int(n)
    }

    fn mismatch(&self, o: &Scalar) -> Error {
        Error::MixedField(self.field().to_string(), o.field().to_string())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Cyc { order: a, c: x }, Scalar::Cyc { order: b, c: y }) if a == b => Ok(Scalar::Cyc {
                order: *a,
                c: cyclotomic::add(x, y),
            }),
            (Scalar::Prime { p, v: x }, Scalar::Prime { p: q, v: y }) if p == q => {
                Ok(Scalar::Prime { p: *p, v: (x + y) % p })
            }
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Cyc { order: a, c: x }, Scalar::Cyc { order: b, c: y }) if a == b => Ok(Scalar::Cyc {
                order: *a,
                c: cyclotomic::mul(*a, x, y),
            }),
            (Scalar::Prime { p, v: x }, Scalar::Prime { p: q, v: y }) if p == q => Ok(Scalar::Prime {
                p: *p,
                v: prime::mul_mod(*x, *y, *p),
            }),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        if self.field() != o.field() {
            return Err(self.mismatch(o));
        }
        self.try_mul(&o.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Cyc { order, c } => Ok(Scalar::Cyc {
                order: *order,
                c: cyclotomic::inv(*order, c)?,
            }),
            Scalar::Prime { p, v } => {
                if *v == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Prime {
                        p: *p,
                        v: prime::inv_mod(*v, *p),
                    })
                }
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Cyc { order, c } => Scalar::Cyc {
                order: *order,
                c: cyclotomic::neg(c),
            },
            Scalar::Prime { p, v } => Scalar::Prime { p: *p, v: (p - v) % p },
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.int_like(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Signed power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Image under the ring morphism Q(ζ_N) → F_p sending ζ_N to the
    /// distinguished order-N element of F_p.
    pub fn to_prime(&self, p: u64) -> Result<Scalar> {
        let target = FieldSpec::prime(p)?;
        match self {
            Scalar::Prime { p: q, .. } if *q == p => Ok(self.clone()),
            Scalar::Prime { .. } => Err(Error::MixedField(self.field().to_string(), target.to_string())),
            Scalar::Cyc { order, c } => {
                let z = target.root(*order as u64)?;
                let mut acc = target.zero();
                let mut zp = target.one();
                for r in c.iter() {
                    acc = &acc + &(&target.rational(r)? * &zp);
                    zp = &zp * &z;
                }
                Ok(acc)
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$try(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    /// Literal syntax: `3`, `-1/2`, `z8^3`, `(1/2+1/2*z8^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { v, .. } => write!(f, "{v}"),
            Scalar::Cyc { order, c } => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r.is_zero())
                    .map(|(k, r)| {
                        if k == 0 {
                            return r.to_string();
                        }
                        let root = if k == 1 {
                            format!("z{order}")
                        } else {
                            format!("z{order}^{k}")
                        };
                        if r.is_one() {
                            root
                        } else if *r == Rational::from_int(-1) {
                            format!("-{root}")
                        } else {
                            format!("{r}*{root}")
                        }
                    })
                    .collect();
                match terms.len() {
                    0 => write!(f, "0"),
                    1 => write!(f, "{}", terms[0]),
                    _ => {
                        let mut s = terms[0].clone();
                        for t in &terms[1..] {
                            if t.starts_with('-') {
                                s.push_str(t);
                            } else {
                                s.push('+');
                                s.push_str(t);
                            }
                        }
                        write!(f, "({s})")
                    }
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parse a scalar literal (`3`, `-1/2`, `z8^3`, `-1/2*z4`) into `field`.
pub fn parse_scalar(field: &FieldSpec, text: &str) -> Result<Scalar> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t.strip_prefix('+').unwrap_or(t).trim()),
    };
    let mut acc = field.one();
    for factor in body.split('*') {
        let factor = factor.trim();
        let v = if let Some(root) = factor.strip_prefix('z') {
            let (m, k) = match root.split_once('^') {
                Some((m, k)) => (m, k),
                None => (root, "1"),
            };
            let m: u64 = m.parse().map_err(|_| Error::Parse(format!("bad root {factor:?}")))?;
            let k: i64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {factor:?}")))?;
            field.root(m)?.powi(k)?
        } else {
            field.rational(&factor.parse::<Rational>()?)?
        };
        acc = &acc * &v;
    }
    Ok(if neg { -acc } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(order: u32) -> FieldSpec {
        FieldSpec::cyclotomic(order).unwrap()
    }

    #[test]
    fn roots_have_exact_order() {
        let f = cyc(24);
        for m in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            let z = f.root(m).unwrap();
            assert!(z.pow(m).is_one());
            for d in 1..m {
                if m % d == 0 {
                    assert!(!z.pow(d).is_one(), "order {m} root has power {d} = 1");
                }
            }
        }
        assert_eq!(cyc(8).root(2).unwrap(), cyc(8).int(-1));
        assert_eq!(cyc(8).root(8).unwrap().pow(4), cyc(8).int(-1));
        assert!(cyc(4).root(8).is_err());
    }

    #[test]
    fn primitive_root_lists() {
        assert_eq!(cyc(8).primitive_roots(2).unwrap(), vec![cyc(8).int(-1)]);
        let r8 = cyc(8).primitive_roots(8).unwrap();
        assert_eq!(r8.len(), 4);
        for w in &r8 {
            assert_eq!(w.pow(4), cyc(8).int(-1));
        }
        let r4 = cyc(4).primitive_roots(4).unwrap();
        assert_eq!(r4.len(), 2);
        assert!(r4.iter().all(|w| w.pow(2) == cyc(4).int(-1)));
        assert_ne!(r4[0], r4[1]);
    }

    #[test]
    fn small_identities() {
        let f = cyc(4);
        let z = f.root(4).unwrap();
        let one = f.one();
        assert_eq!(&(&one + &z) * &(&one - &z), f.int(2));
        assert_eq!(f.int(2).inv().unwrap(), f.frac(1, 2).unwrap());
        let f7 = cyc(7);
        let z7 = f7.root(7).unwrap();
        assert!((&z7 * &z7.pow(6)).is_one());
    }

    #[test]
    fn inverse_of_general_element() {
        let f = cyc(12);
        let z = f.root(12).unwrap();
        let a = &(&f.int(3) + &z) - &z.pow(5);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = cyc(4).one();
        let b = cyc(8).one();
        assert!(matches!(a.try_add(&b), Err(Error::MixedField(..))));
        let c = FieldSpec::prime(17).unwrap().one();
        assert!(a.try_mul(&c).is_err());
    }

    #[test]
    fn prime_mode() {
        let f = FieldSpec::prime(17).unwrap();
        let z = f.root(8).unwrap();
        assert_eq!(z.pow(4), f.int(-1));
        assert!(f.root(3).is_err());
        assert_eq!(f.frac(1, 2).unwrap(), f.int(9));
        let q = cyc(8);
        let w = q.root(8).unwrap();
        let e = &(&w * &w) + &q.frac(1, 3).unwrap();
        let img = e.to_prime(17).unwrap();
        assert_eq!(img, &(&z * &z) + &f.frac(1, 3).unwrap());
    }

    #[test]
    fn literals() {
        let f = cyc(8);
        let z = f.root(8).unwrap();
        assert_eq!(parse_scalar(&f, "z8^3").unwrap(), z.pow(3));
        assert_eq!(
            parse_scalar(&f, "-1/2*z4").unwrap(),
            -(&f.frac(1, 2).unwrap() * &f.root(4).unwrap())
        );
        assert_eq!(parse_scalar(&f, "3").unwrap(), f.int(3));
        assert!(parse_scalar(&f, "z3").is_err());
        for s in [
            f.int(0),
            f.int(-3),
            f.frac(5, 7).unwrap(),
            z.clone(),
            &z.pow(3) * &f.frac(-2, 3).unwrap(),
            &f.one() + &z.pow(2),
        ] {
            let printed = s.to_string();
            let inner = printed.trim_start_matches('(').trim_end_matches(')');
            let mut acc = f.zero();
            for term in split_signed(inner) {
                acc = &acc + &parse_scalar(&f, &term).unwrap();
            }
            assert_eq!(acc, s, "{printed}");
        }
    }

    fn split_signed(s: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('/') {
                out.push(std::mem::take(&mut cur));
            }
            if ch != '+' {
                cur.push(ch);
            }
        }
        out.push(cur);
        out
    }

    #[test]
    fn field_spec_text() {
        for s in ["cyclotomic:8", "prime:97"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("prime:91".parse::<FieldSpec>().is_err());
        assert!("foo".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::for_orders(&[4, 8, 3]), cyc(24));
    }
}
