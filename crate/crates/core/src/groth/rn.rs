use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::cyclotomic_polynomial;
use crate::grmod::{decompose, GradedModule};

/// Element of R_n = Z[q]/(1 + q + ... + q^{n-1}), stored by its coefficients
/// on 1, q, ..., q^{n-2}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RnElem {
    n: usize,
    coeffs: Vec<i64>,
}

impl RnElem {
    pub fn zero(n: usize) -> Result<RnElem> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("R_n needs n >= 2, got {n}")));
        }
        Ok(RnElem {
            n,
            coeffs: vec![0; n - 1],
        })
    }

    pub fn one(n: usize) -> Result<RnElem> {
        Self::monomial(n, 0, 1)
    }

    /// c·q^k for any integer k (q^n = 1 in R_n).
    pub fn monomial(n: usize, k: i64, c: i64) -> Result<RnElem> {
        let mut out = Self::zero(n)?;
        out.add_term(k, c);
        Ok(out)
    }

    /// Reduce Σ c_k q^k with arbitrary integer exponents.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (i64, i64)>) -> Result<RnElem> {
        let mut out = Self::zero(n)?;
        for (k, c) in terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, k: i64, c: i64) {
        let n = self.n as i64;
        let e = k.rem_euclid(n) as usize;
        if e == self.n - 1 {
            // q^{n-1} = -(1 + q + ... + q^{n-2})
            for x in &mut self.coeffs {
                *x -= c;
            }
        } else {
            self.coeffs[e] += c;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &RnElem) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidParameter(format!("R_{} vs R_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &RnElem) -> Result<RnElem> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RnElem { n: self.n, coeffs })
    }

    pub fn neg(&self) -> RnElem {
        RnElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &RnElem) -> Result<RnElem> {
        self.add(&other.neg())
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> RnElem {
        let mut out = RnElem {
            n: self.n,
            coeffs: vec![0; self.n - 1],
        };
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_term(e as i64 + k, c);
            }
        }
        out
    }

    /// Reduction of the representative modulo the n-th cyclotomic polynomial.
    /// Agrees with R_n only for prime n.
    pub fn reduce_mod_cyclotomic(&self) -> Result<Vec<i64>> {
        let phi: Vec<i64> = cyclotomic_polynomial(self.n as u32)
            .iter()
            .map(|c: &BigInt| c.to_i64().expect("small cyclotomic coefficient"))
            .collect();
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > deg {
            let lead = rem.pop().expect("nonempty");
            let top = rem.len();
            // subtract lead·q^{top-deg}·Φ_n (monic)
            for (k, &c) in phi.iter().enumerate().take(deg) {
                rem[top - deg + k] -= lead * c;
            }
        }
        rem.resize(deg, 0);
        Ok(rem)
    }
}

/// Product in R_n.
pub fn rn_mul(a: &RnElem, b: &RnElem) -> Result<RnElem> {
    a.check(b)?;
    let mut out = RnElem::zero(a.n)?;
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            if y != 0 {
                out.add_term((i + j) as i64, x * y);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for RnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// [M] in R_n: each V_i{j} contributes q^j(1 + q + ... + q^i).
pub fn class_of(m: &GradedModule) -> Result<RnElem> {
    let n = m.family().order();
    let mut out = RnElem::zero(n)?;
    for (i, j, mult) in decompose(m).iter() {
        let j = j
            .as_integer()
            .ok_or_else(|| Error::FractionalShift(format!("class of a summand in degree {j}")))?;
        for r in 0..=i as i64 {
            out.add_term(j + r, mult as i64);
        }
    }
    Ok(out)
}
