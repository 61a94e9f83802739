use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FieldOps;
use crate::error::{Error, Result};

pub const MAX_ROOT_ORDER: u32 = 128;

/// Q(ζ_n) realised as Q[x]/Φ_n(x).
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u32,
    modulus: Vec<BigInt>,
}

/// Element of a cyclotomic field: coefficients of 1, ζ, ζ², … with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cyc(pub(crate) Vec<BigRational>);

impl Cyc {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn trimmed(mut v: Vec<BigRational>) -> Cyc {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Cyc(v)
    }
}

/// Integer polynomial coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        // den is monic
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

impl CyclotomicField {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("root order {n} < 2")));
        }
        if n > MAX_ROOT_ORDER {
            return Err(Error::BoundExceeded(format!("root order {n} > {MAX_ROOT_ORDER}")));
        }
        let modulus = cyclotomic_polynomial(n);
        Ok(CyclotomicField { n, modulus })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduce an arbitrary rational polynomial in ζ.
    pub fn reduce_poly(&self, coeffs: &[BigRational]) -> Cyc {
        let deg = self.degree();
        let mut v = coeffs.to_vec();
        for k in (deg..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[k], BigRational::zero());
            for (i, m) in self.modulus[..deg].iter().enumerate() {
                if !m.is_zero() {
                    v[k - deg + i] -= &c * BigRational::from_integer(m.clone());
                }
            }
        }
        v.truncate(deg);
        Cyc::trimmed(v)
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let e = k.rem_euclid(self.n as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        self.reduce_poly(&v)
    }

    pub fn from_rational(&self, r: BigRational) -> Cyc {
        Cyc::trimmed(vec![r])
    }

    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
}

// Rational polynomial helpers for the extended Euclidean inverse.
fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    (q, rem)
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let prod = CyclotomicField::poly_mul(q, b);
    let mut out = a.to_vec();
    if out.len() < prod.len() {
        out.resize(prod.len(), BigRational::zero());
    }
    for (i, c) in prod.into_iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

impl FieldOps for CyclotomicField {
    type Elem = Cyc;

    fn zero(&self) -> Cyc {
        Cyc::default()
    }
    fn one(&self) -> Cyc {
        Cyc(vec![BigRational::one()])
    }
    fn is_zero(&self, a: &Cyc) -> bool {
        a.0.is_empty()
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let (long, short) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        let mut v = long.0.clone();
        for (i, c) in short.0.iter().enumerate() {
            v[i] += c;
        }
        Cyc::trimmed(v)
    }
    fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|c| -c).collect())
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.0.is_empty() || b.0.is_empty() {
            return Cyc::default();
        }
        if a.0.len() == 1 {
            return Cyc::trimmed(b.0.iter().map(|c| c * &a.0[0]).collect());
        }
        if b.0.len() == 1 {
            return Cyc::trimmed(a.0.iter().map(|c| c * &b.0[0]).collect());
        }
        self.reduce_poly(&Self::poly_mul(&a.0, &b.0))
    }
    fn inv(&self, a: &Cyc) -> Option<Cyc> {
        if a.0.is_empty() {
            return None;
        }
        if a.0.len() == 1 {
            return Some(Cyc(vec![a.0[0].recip()]));
        }
        // s*a + t*Φ = g with g a nonzero constant since Φ is irreducible
        let phi: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (phi, a.0.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r1.is_empty() {
            return None;
        }
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Some(self.reduce_poly(&inv))
    }
    fn from_i64(&self, v: i64) -> Cyc {
        Cyc::trimmed(vec![BigRational::from_integer(BigInt::from(v))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_has_exact_order() {
        for n in 2..=16 {
            let f = CyclotomicField::new(n).unwrap();
            assert_eq!(f.zeta_pow(n as i64), f.one());
            for k in 1..n as i64 {
                assert_ne!(f.zeta_pow(k), f.one(), "n={n} k={k}");
            }
            assert_eq!(f.mul(&f.zeta_pow(3), &f.zeta_pow(-3)), f.one());
        }
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let f = CyclotomicField::new(5).unwrap();
        let a = f.add(&f.one(), &f.zeta_pow(1));
        let b = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &b), f.one());
    }
}
