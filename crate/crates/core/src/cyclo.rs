//! Exact arithmetic in cyclotomic fields Q(xi_N).
//!
//! Elements are polynomials in a fixed primitive N-th root of unity xi,
//! reduced modulo the N-th cyclotomic polynomial, with rational
//! coefficients. Everything is exact; there is no floating point here.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cochain::UnitRoot;
use crate::{Error, Result};

/// Euler's totient of `n`.
pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

fn trim_int(poly: &mut Vec<BigInt>) {
    while poly.len() > 1 && poly.last().map(|c| c.is_zero()).unwrap_or(false) {
        poly.pop();
    }
}

/// Exact quotient of integer polynomials (coefficients low to high);
/// `den` must be monic and divide `num` exactly.
fn div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    trim_int(&mut rem);
    let dd = den.len() - 1;
    assert!(rem.len() - 1 >= dd);
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                let entry = &rem[k + i] - &c * d;
                rem[k + i] = entry;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, low to high, monic.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut cache: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for d in divisors(n) {
        // x^d - 1 divided by all Phi_e with e | d, e < d.
        let mut poly = vec![BigInt::zero(); d + 1];
        poly[0] = -BigInt::one();
        poly[d] = BigInt::one();
        for (e, phi_e) in &cache {
            if d % e == 0 {
                poly = div_exact_int(&poly, phi_e);
            }
        }
        cache.push((d, poly));
    }
    cache.pop().unwrap().1
}

/// Shared description of one cyclotomic field: the level N, the degree
/// phi(N), and a table of xi^k reduced modulo Phi_N for every exponent a
/// product of two reduced elements can produce.
#[derive(Debug)]
pub struct CycField {
    level: usize,
    degree: usize,
    modulus: Vec<BigInt>,
    pow_table: Vec<Vec<BigRational>>,
}

impl CycField {
    /// Build the field Q(xi_N). The power table covers exponents up to
    /// max(N - 1, 2 * phi - 2), enough for both root embedding and
    /// products of reduced elements.
    pub fn new(level: usize) -> Arc<Self> {
        assert!(level >= 1, "level must be positive");
        let modulus = cyclotomic_polynomial(level);
        let degree = modulus.len() - 1;
        let max_pow = (level - 1).max(2 * degree.max(1) - 2);
        let mut pow_table: Vec<Vec<BigRational>> = Vec::with_capacity(max_pow + 1);
        for k in 0..=max_pow {
            let row = if k < degree {
                let mut row = vec![BigRational::zero(); degree];
                row[k] = BigRational::one();
                row
            } else {
                // xi^k = xi * xi^(k-1), then substitute
                // xi^degree = -(c_0 + c_1 xi + ...).
                let prev = &pow_table[k - 1];
                let mut row = vec![BigRational::zero(); degree];
                let top = prev[degree - 1].clone();
                for i in 1..degree {
                    row[i] = prev[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..degree {
                        let c = BigRational::from(self_coeff(&modulus, i));
                        row[i] -= &top * c;
                    }
                }
                row
            };
            pow_table.push(row);
        }
        Arc::new(CycField { level, degree, modulus, pow_table })
    }

    /// The level N of the field.
    pub fn level(&self) -> usize {
        self.level
    }

    /// The degree phi(N) of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic minimal polynomial Phi_N, coefficients low to high.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

fn self_coeff(modulus: &[BigInt], i: usize) -> BigInt {
    modulus[i].clone()
}

/// One element of a cyclotomic field: rational coefficients of
/// 1, xi, ..., xi^(phi-1).
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    /// The zero element.
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycScalar { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree] }
    }

    /// The multiplicative identity.
    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    /// Embed a rational number.
    pub fn from_rational(field: &Arc<CycField>, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree];
        coeffs[0] = q;
        CycScalar { field: field.clone(), coeffs }
    }

    /// Embed the root of unity e^(2 pi i q). Fails with `LevelMismatch`
    /// when the denominator of `q` does not divide the field level.
    pub fn root_of_unity(field: &Arc<CycField>, root: &UnitRoot) -> Result<Self> {
        let q = root.exponent();
        let den: usize = match q.denom().try_into() {
            Ok(d) => d,
            Err(_) => usize::MAX,
        };
        if den == 0 || field.level % den != 0 {
            return Err(Error::LevelMismatch {
                num: q.numer().to_string(),
                den: q.denom().to_string(),
                level: field.level,
            });
        }
        let num: usize = (q.numer() % BigInt::from(q.denom().clone())
            + BigInt::from(q.denom().clone()))
        .try_into()
        .map(|n: usize| n % den)
        .unwrap_or(0);
        let exp = (num * (field.level / den)) % field.level;
        Ok(CycScalar { field: field.clone(), coeffs: field.pow_table[exp].clone() })
    }

    /// The field this element lives in.
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Whether this is the multiplicative identity.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.level == other.field.level,
            "mixed cyclotomic levels {} and {}",
            self.field.level,
            other.field.level
        );
    }

    /// Sum of two elements of the same field.
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycScalar { field: self.field.clone(), coeffs }
    }

    /// Difference of two elements of the same field.
    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        CycScalar { field: self.field.clone(), coeffs }
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        CycScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Product of two elements of the same field.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let d = self.field.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] += c;
            } else {
                for (i, t) in self.field.pow_table[k].iter().enumerate() {
                    if !t.is_zero() {
                        out[i] += &c * t;
                    }
                }
            }
        }
        CycScalar { field: self.field.clone(), coeffs: out }
    }

    /// Multiplicative inverse of a nonzero element, by the extended
    /// Euclidean algorithm against Phi_N (irreducible over Q, so any
    /// nonzero remainder chain ends in a nonzero constant).
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let modulus: Vec<BigRational> =
            self.field.modulus.iter().map(|c| BigRational::from(c.clone())).collect();
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        assert!(!c.is_zero(), "modulus shares a factor with a nonzero element");
        let mut inv_coeffs: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        // Degree of s1 stays below phi, but normalize defensively.
        inv_coeffs.resize(self.field.degree, BigRational::zero());
        CycScalar { field: self.field.clone(), coeffs: inv_coeffs }
    }

    /// Integer power.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.level == other.field.level && self.coeffs == other.coeffs
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar(level {}; ", self.field.level)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_deg(p: &[BigRational]) -> usize {
    p.len() - 1
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    if poly_deg(&rem) < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); poly_deg(&rem) - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate() {
                let entry = &rem[k + i] - &c * d;
                rem[k + i] = entry;
            }
        }
        quot[k] = c;
    }
    poly_trim(&mut rem);
    (quot, rem)
}

/// Field operations needed by Gaussian elimination, implemented by both
/// `BigRational` and `CycScalar`.
pub(crate) trait EliminationField: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn inv_elem(&self) -> Self;
}

impl EliminationField for BigRational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn inv_elem(&self) -> Self {
        self.recip()
    }
}

impl EliminationField for CycScalar {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv_elem(&self) -> Self {
        self.inverse()
    }
}

/// Rank of a dense matrix over a field, by Gaussian elimination.
/// Consumes the row data.
pub(crate) fn matrix_rank<F: EliminationField>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero_elem()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv_elem();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero_elem() {
                continue;
            }
            let factor = rows[r][col].mul_elem(&inv);
            for c in col..ncols {
                let delta = factor.mul_elem(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub_elem(&delta);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the right nullspace of a dense matrix over a field.
pub(crate) fn nullspace_dim<F: EliminationField>(rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    ncols - matrix_rank(rows)
}
