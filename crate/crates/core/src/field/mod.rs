//! Exact scalars and dense linear algebra over F_p and Q(ζ_n).

mod cyclotomic;
mod matrix;
mod prime;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, Cyc, CyclotomicField, MAX_ROOT_ORDER};
pub use matrix::{Matrix, Solution};
pub use prime::{is_prime, PrimeField, MAX_PRIME};

use crate::error::{Error, Result};

/// Arithmetic of a concrete field on its native element type.
pub trait FieldOps {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    /// acc -= a * b
    fn mul_sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.sub(acc, &t);
    }

    /// acc += a * b
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let t = self.mul(a, b);
        *acc = self.add(acc, &t);
    }
}

/// A scalar field: a prime field or a cyclotomic number field.
#[derive(Clone, Debug)]
pub enum Field {
    Prime(PrimeField),
    Cyclotomic(Arc<CyclotomicField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Prime(a), Field::Prime(b)) => a == b,
            (Field::Cyclotomic(a), Field::Cyclotomic(b)) => a.n() == b.n(),
            _ => false,
        }
    }
}
impl Eq for Field {}

/// Element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Prime(u32),
    Cyclo(Cyc),
}

macro_rules! scalar_binop {
    ($name:ident) => {
        pub fn $name(&self, a: &Scalar, b: &Scalar) -> Scalar {
            match (self, a, b) {
                (Field::Prime(f), Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime(f.$name(x, y)),
                (Field::Cyclotomic(f), Scalar::Cyclo(x), Scalar::Cyclo(y)) => Scalar::Cyclo(f.$name(x, y)),
                _ => panic!("scalar does not belong to {self}"),
            }
        }
    };
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        Ok(Field::Prime(PrimeField::new(p)?))
    }

    pub fn cyclotomic(n: u32) -> Result<Field> {
        Ok(Field::Cyclotomic(Arc::new(CyclotomicField::new(n)?)))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(f) => f.p(),
            Field::Cyclotomic(_) => 0,
        }
    }

    /// Order of the distinguished root of unity ζ (1 for prime fields).
    pub fn root_order(&self) -> u32 {
        match self {
            Field::Prime(_) => 1,
            Field::Cyclotomic(f) => f.n(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Prime(0),
            Field::Cyclotomic(f) => Scalar::Cyclo(f.zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(f) => Scalar::Prime(f.from_i64(v)),
            Field::Cyclotomic(f) => Scalar::Cyclo(f.from_i64(v)),
        }
    }

    /// a/b as a field element; fails when b vanishes in the field.
    pub fn from_ratio(&self, a: &BigInt, b: &BigInt) -> Result<Scalar> {
        match self {
            Field::Prime(f) => {
                let p = BigInt::from(f.p());
                let red = |x: &BigInt| -> u32 {
                    let r = ((x % &p) + &p) % &p;
                    u32::try_from(r).expect("residue fits")
                };
                let den = f.inv(&red(b)).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime(f.mul(&red(a), &den)))
            }
            Field::Cyclotomic(f) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Cyclo(f.from_rational(BigRational::new(a.clone(), b.clone()))))
            }
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(f), Scalar::Prime(x)) => *x < f.p(),
            (Field::Cyclotomic(f), Scalar::Cyclo(c)) => c.coeffs().len() <= f.degree(),
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Prime(x) => *x == 0,
            Scalar::Cyclo(c) => c.coeffs().is_empty(),
        }
    }

    scalar_binop!(add);
    scalar_binop!(sub);
    scalar_binop!(mul);

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(f), Scalar::Prime(x)) => Scalar::Prime(f.neg(x)),
            (Field::Cyclotomic(f), Scalar::Cyclo(x)) => Scalar::Cyclo(f.neg(x)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (Field::Prime(f), Scalar::Prime(x)) => f.inv(x).map(Scalar::Prime).ok_or(Error::DivisionByZero),
            (Field::Cyclotomic(f), Scalar::Cyclo(x)) => f.inv(x).map(Scalar::Cyclo).ok_or(Error::DivisionByZero),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// ζ^k for the field's primitive root; prime fields only have ζ = 1.
    pub fn zeta_pow(&self, k: i64) -> Scalar {
        match self {
            Field::Prime(_) => self.one(),
            Field::Cyclotomic(f) => Scalar::Cyclo(f.zeta_pow(k)),
        }
    }

    /// Parse a scalar literal: integers or `a/b` in any field, polynomials in `z` for
    /// cyclotomic fields.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        let bad = || Error::Parse(format!("bad scalar literal {text:?}"));
        let mut acc = self.zero();
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                // a '-' right after '^' belongs to the exponent
                i += 1;
                if i < bytes.len() && bytes[i] == '-' && bytes[i - 1] == '^' {
                    i += 1;
                }
            }
            let term: String = bytes[start..i].iter().collect();
            if term.is_empty() {
                return Err(bad());
            }
            let (coef_txt, power) = match term.find('z') {
                None => (term.as_str(), None),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let k: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    let c = term[..pos].trim_end_matches('*');
                    (c, Some(k))
                }
            };
            let (num, den) = if coef_txt.is_empty() {
                (BigInt::one(), BigInt::one())
            } else {
                let mut parts = coef_txt.splitn(2, '/');
                let a: BigInt = parts.next().unwrap().parse().map_err(|_| bad())?;
                let b: BigInt = match parts.next() {
                    Some(t) => t.parse().map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                (a, b)
            };
            let mut c = self.from_ratio(&(num * sign), &den)?;
            if let Some(k) = power {
                if matches!(self, Field::Prime(_)) {
                    return Err(Error::Parse(format!("root of unity {text:?} not available in {self}")));
                }
                c = self.mul(&c, &self.zeta_pow(k));
            }
            acc = self.add(&acc, &c);
        }
        Ok(acc)
    }

    /// Canonical literal; `parse_scalar` inverts it.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Prime(x) => x.to_string(),
            Scalar::Cyclo(c) => format_cyc(c),
        }
    }
}

fn format_cyc(c: &Cyc) -> String {
    let mut out = String::new();
    for (k, q) in c.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let neg = q.is_negative();
        let mag = q.abs();
        let body = match k {
            0 => mag.to_string(),
            _ => {
                let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                if mag.is_one() {
                    z
                } else {
                    format!("{mag}*{z}")
                }
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{}", p.p()),
            Field::Cyclotomic(c) => write!(f, "Q(z_{})", c.n()),
        }
    }
}
