//! Normalized cochains on finite groups with values in Q/Z.
//!
//! A value is a root of unity stored as its exponent: a rational q taken mod 1
//! stands for exp(2*pi*i*q). Multiplying roots of unity is adding exponents,
//! so cochain "products" below are exponent sums. Cochains carry an explicit
//! support subgroup of an ambient group and are normalized: any argument equal
//! to the identity evaluates to zero. All arithmetic is exact.

use crate::group::{GroupMorphism, GroupTable, Subgroup};
use crate::snf::{frac, solve_mod1, IntMatrix};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A root of unity, stored as its exponent in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitRoot {
    q: BigRational,
}

impl UnitRoot {
    pub fn new(q: BigRational) -> Self {
        UnitRoot { q: frac(&q) }
    }

    /// Exponent num/den, reduced mod 1.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        UnitRoot {
            q: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn exponent(&self) -> &BigRational {
        &self.q
    }

    /// Denominator of the reduced exponent (1 for the trivial root).
    pub fn denominator(&self) -> BigInt {
        self.q.denom().abs()
    }

    /// Exponent multiplied by an integer, mod 1 (the k-th power of the root).
    pub fn mul_int(&self, k: i64) -> Self {
        Self::new(&self.q * BigRational::from(BigInt::from(k)))
    }
}

impl Add for &UnitRoot {
    type Output = UnitRoot;
    fn add(self, rhs: &UnitRoot) -> UnitRoot {
        UnitRoot::new(&self.q + &rhs.q)
    }
}

impl Sub for &UnitRoot {
    type Output = UnitRoot;
    fn sub(self, rhs: &UnitRoot) -> UnitRoot {
        UnitRoot::new(&self.q - &rhs.q)
    }
}

impl Neg for &UnitRoot {
    type Output = UnitRoot;
    fn neg(self) -> UnitRoot {
        UnitRoot::new(-&self.q)
    }
}

impl fmt::Display for UnitRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q.numer(), self.q.denom())
    }
}

impl Serialize for UnitRoot {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A normalized cochain supported on a subgroup of an ambient group.
/// Arguments to `eval` are ambient indices and must lie in the support.
#[derive(Clone, Debug)]
pub struct Cochain {
    support: Subgroup,
    arity: u8,
    /// Row-major table over local support indices; None means identically zero.
    values: Option<Vec<UnitRoot>>,
}

impl Cochain {
    pub fn trivial(support: &Subgroup, arity: u8) -> Self {
        assert!((1..=3).contains(&arity));
        Cochain {
            support: support.clone(),
            arity,
            values: None,
        }
    }

    /// Tabulates `f` over the support. Values at tuples containing the
    /// identity are forced to zero, so the result is always normalized.
    pub fn from_fn<F>(support: &Subgroup, arity: u8, f: F) -> Self
    where
        F: Fn(&[usize]) -> UnitRoot,
    {
        assert!((1..=3).contains(&arity));
        let n = support.order();
        let e = support.parent().identity();
        let total = n.pow(arity as u32);
        let mut values = Vec::with_capacity(total);
        let mut args = vec![0usize; arity as usize];
        for flat in 0..total {
            let mut rest = flat;
            for slot in (0..arity as usize).rev() {
                args[slot] = support.members()[rest % n];
                rest /= n;
            }
            if args.contains(&e) {
                values.push(UnitRoot::zero());
            } else {
                values.push(f(&args));
            }
        }
        Cochain {
            support: support.clone(),
            arity,
            values: Some(values),
        }
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn group(&self) -> &GroupTable {
        self.support.parent()
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    fn flat_index(&self, args: &[usize]) -> usize {
        let n = self.support.order();
        let mut idx = 0usize;
        for &a in args {
            let local = self
                .support
                .local_index(a)
                .expect("cochain argument outside the support");
            idx = idx * n + local;
        }
        idx
    }

    pub fn eval(&self, args: &[usize]) -> UnitRoot {
        debug_assert_eq!(args.len(), self.arity as usize);
        match &self.values {
            None => UnitRoot::zero(),
            Some(v) => v[self.flat_index(args)].clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match &self.values {
            None => true,
            Some(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    /// Least common multiple of the value denominators (1 when trivial).
    pub fn denominator_lcm(&self) -> BigInt {
        match &self.values {
            None => BigInt::from(1),
            Some(v) => v.iter().fold(BigInt::from(1), |l, x| {
                num_integer::lcm(l, x.denominator())
            }),
        }
    }

    fn same_shape(&self, other: &Cochain) -> bool {
        self.arity == other.arity && self.support == other.support
    }

    /// Pointwise product (exponent sum).
    pub fn product(&self, other: &Cochain) -> Result<Cochain> {
        if !self.same_shape(other) {
            return Err(Error::SupportMismatch);
        }
        Ok(self.zip(other, |a, b| a + b))
    }

    /// Pointwise quotient (exponent difference).
    pub fn quotient(&self, other: &Cochain) -> Result<Cochain> {
        if !self.same_shape(other) {
            return Err(Error::SupportMismatch);
        }
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn inverse(&self) -> Cochain {
        match &self.values {
            None => self.clone(),
            Some(v) => Cochain {
                support: self.support.clone(),
                arity: self.arity,
                values: Some(v.iter().map(|x| -x).collect()),
            },
        }
    }

    fn zip<F: Fn(&UnitRoot, &UnitRoot) -> UnitRoot>(&self, other: &Cochain, f: F) -> Cochain {
        let zero = UnitRoot::zero();
        let n = self.support.order().pow(self.arity as u32);
        let values: Vec<UnitRoot> = (0..n)
            .map(|i| {
                let a = self.values.as_ref().map_or(&zero, |v| &v[i]);
                let b = other.values.as_ref().map_or(&zero, |v| &v[i]);
                f(a, b)
            })
            .collect();
        Cochain {
            support: self.support.clone(),
            arity: self.arity,
            values: Some(values),
        }
    }

    /// Coboundary: arity 1 -> 2 or 2 -> 3 (inhomogeneous convention).
    pub fn coboundary(&self) -> Result<Cochain> {
        let g = self.group().clone();
        match self.arity {
            1 => {
                if self.values.is_none() {
                    return Ok(Cochain::trivial(&self.support, 2));
                }
                Ok(Cochain::from_fn(&self.support, 2, |a| {
                    let (x, y) = (a[0], a[1]);
                    &(&self.eval(&[x]) + &self.eval(&[y])) - &self.eval(&[g.mul(x, y)])
                }))
            }
            2 => {
                if self.values.is_none() {
                    return Ok(Cochain::trivial(&self.support, 3));
                }
                Ok(Cochain::from_fn(&self.support, 3, |a| {
                    let (x, y, z) = (a[0], a[1], a[2]);
                    let t1 = self.eval(&[y, z]);
                    let t2 = self.eval(&[g.mul(x, y), z]);
                    let t3 = self.eval(&[x, g.mul(y, z)]);
                    let t4 = self.eval(&[x, y]);
                    &(&(&t1 - &t2) + &t3) - &t4
                }))
            }
            a => Err(Error::ArityUnsupported(a)),
        }
    }

    /// Cocycle test: vanishing coboundary (arity 1 and 2) or the four-variable
    /// identity (arity 3), checked exhaustively over the support.
    pub fn is_cocycle(&self) -> bool {
        if self.values.is_none() {
            return true;
        }
        let g = self.group().clone();
        let mem = self.support.members();
        match self.arity {
            1 | 2 => self
                .coboundary()
                .map(|d| d.is_trivial())
                .unwrap_or(false),
            3 => {
                for &x in mem {
                    for &y in mem {
                        for &z in mem {
                            for &w in mem {
                                let lhs = &(&(&self.eval(&[y, z, w])
                                    - &self.eval(&[g.mul(x, y), z, w]))
                                    + &self.eval(&[x, g.mul(y, z), w]))
                                    - &self.eval(&[x, y, g.mul(z, w)]);
                                if !(&lhs + &self.eval(&[x, y, z])).is_zero() {
                                    return false;
                                }
                            }
                        }
                    }
                }
                true
            }
            _ => false,
        }
    }

    /// Restriction to a smaller support.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Cochain> {
        if sub.parent() != self.group()
            || sub.members().iter().any(|&m| !self.support.contains(m))
        {
            return Err(Error::SupportMismatch);
        }
        if self.values.is_none() {
            return Ok(Cochain::trivial(sub, self.arity));
        }
        let arity = self.arity;
        Ok(Cochain::from_fn(sub, arity, |args| self.eval(args)))
    }

    /// Pullback along a bijective endomorphism t of the ambient group:
    /// (t* c)(x, ...) = c(t x, ...), supported on the preimage of the support.
    pub fn pullback(&self, t: &GroupMorphism) -> Result<Cochain> {
        if t.source() != self.group() || t.target() != self.group() || !t.is_bijective() {
            return Err(Error::SupportMismatch);
        }
        let members: Vec<usize> = (0..self.group().order())
            .filter(|&x| self.support.contains(t.apply(x)))
            .collect();
        let new_support = Subgroup::new(self.group().clone(), members)
            .expect("preimage of a subgroup under an automorphism is a subgroup");
        let arity = self.arity;
        if self.values.is_none() {
            return Ok(Cochain::trivial(&new_support, arity));
        }
        Ok(Cochain::from_fn(&new_support, arity, |args| {
            let mapped: Vec<usize> = args.iter().map(|&x| t.apply(x)).collect();
            self.eval(&mapped)
        }))
    }

    /// Transport along conjugation: the result lives on g S g^{-1} and takes
    /// the value of `self` at the conjugated-back arguments.
    pub fn conj_transport(&self, g: usize) -> Cochain {
        let parent = self.group().clone();
        let new_support = self.support.conjugate(g);
        let arity = self.arity;
        if self.values.is_none() {
            return Cochain::trivial(&new_support, arity);
        }
        let ginv = parent.inv(g);
        Cochain::from_fn(&new_support, arity, |args| {
            let back: Vec<usize> = args.iter().map(|&x| parent.conj(ginv, x)).collect();
            self.eval(&back)
        })
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        if !self.same_shape(other) {
            return false;
        }
        let zero = UnitRoot::zero();
        let n = self.support.order().pow(self.arity as u32);
        (0..n).all(|i| {
            let a = self.values.as_ref().map_or(&zero, |v| &v[i]);
            let b = other.values.as_ref().map_or(&zero, |v| &v[i]);
            a == b
        })
    }
}
impl Eq for Cochain {}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.support.order().pow(self.arity as u32);
        let zero = UnitRoot::zero();
        let values: Vec<UnitRoot> = (0..n)
            .map(|i| self.values.as_ref().map_or(zero.clone(), |v| v[i].clone()))
            .collect();
        let mut s = serializer.serialize_struct("Cochain", 2)?;
        s.serialize_field("arity", &self.arity)?;
        s.serialize_field("values", &values)?;
        s.end()
    }
}

/// Finds a cochain `x` of one lower arity with coboundary equal to `target`
/// (arity 2 or 3). Works over Q/Z via the integer congruence solver; the
/// witness is re-verified by applying the coboundary before returning.
pub fn trivializing_witness(target: &Cochain) -> Result<Option<Cochain>> {
    let arity = target.arity();
    if !(arity == 2 || arity == 3) {
        return Err(Error::ArityUnsupported(arity));
    }
    if target.is_trivial() {
        return Ok(Some(Cochain::trivial(target.support(), arity - 1)));
    }
    let g = target.group().clone();
    let support = target.support().clone();
    let e = g.identity();
    let non_id: Vec<usize> = support.members().iter().copied().filter(|&m| m != e).collect();
    let k = non_id.len();
    let unknown = |args: &[usize]| -> Option<usize> {
        // Position of a normalized unknown; None when any argument is the
        // identity (those values are pinned to zero).
        let mut idx = 0usize;
        for &a in args {
            let pos = non_id.binary_search(&a).ok()?;
            idx = idx * k + pos;
        }
        Some(idx)
    };
    let cols = k.pow((arity - 1) as u32);
    let mut rows_data: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut rhs = Vec::new();
    match arity {
        2 => {
            for &x in &non_id {
                for &y in &non_id {
                    // v(x) + v(y) - v(xy) = target(x, y)
                    let mut row = Vec::new();
                    if let Some(i) = unknown(&[x]) {
                        row.push((i, 1));
                    }
                    if let Some(i) = unknown(&[y]) {
                        row.push((i, 1));
                    }
                    if let Some(i) = unknown(&[g.mul(x, y)]) {
                        row.push((i, -1));
                    }
                    rows_data.push(row);
                    rhs.push(target.eval(&[x, y]).exponent().clone());
                }
            }
        }
        3 => {
            for &x in &non_id {
                for &y in &non_id {
                    for &z in &non_id {
                        // v(y,z) - v(xy,z) + v(x,yz) - v(x,y) = target(x,y,z)
                        let mut row = Vec::new();
                        for (args, sign) in [
                            ([y, z], 1i64),
                            ([g.mul(x, y), z], -1),
                            ([x, g.mul(y, z)], 1),
                            ([x, y], -1),
                        ] {
                            if let Some(i) = unknown(&args) {
                                row.push((i, sign));
                            }
                        }
                        rows_data.push(row);
                        rhs.push(target.eval(&[x, y, z]).exponent().clone());
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    let mut a = IntMatrix::zeros(rows_data.len(), cols);
    for (r, row) in rows_data.iter().enumerate() {
        for &(c, v) in row {
            a.add_to(r, c, BigInt::from(v));
        }
    }
    let Some(solution) = solve_mod1(a, rhs) else {
        return Ok(None);
    };
    let witness = Cochain::from_fn(&support, arity - 1, |args| {
        match unknown(args) {
            Some(i) => UnitRoot::new(solution[i].clone()),
            None => UnitRoot::zero(),
        }
    });
    let check = witness.coboundary()?;
    assert!(
        check == *target,
        "congruence solver returned a witness whose coboundary disagrees"
    );
    Ok(Some(witness))
}

/// Tests whether two cocycles of equal arity on the same support differ by a
/// coboundary; returns the connecting witness when they do.
pub fn cohomologous(c1: &Cochain, c2: &Cochain) -> Result<Option<Cochain>> {
    if c1.arity() != c2.arity() || c1.support() != c2.support() {
        return Err(Error::SupportMismatch);
    }
    debug_assert!(c1.is_cocycle() && c2.is_cocycle());
    trivializing_witness(&c1.quotient(c2)?)
}

/// True iff the class of `mu` is fixed by every morphism in `action`
/// (pullback cohomologous to the original). Pass generators of the action.
pub fn is_invariant_class(mu: &Cochain, action: &[GroupMorphism]) -> Result<bool> {
    for t in action {
        let pulled = mu.pullback(t)?;
        if pulled.support() != mu.support() {
            return Err(Error::SupportMismatch);
        }
        if cohomologous(&pulled, mu)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A function S x S -> Q/Z on an abelian support, tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    support: Subgroup,
    values: Vec<UnitRoot>,
}

impl BilinearForm {
    pub fn from_fn<F: Fn(usize, usize) -> UnitRoot>(support: &Subgroup, f: F) -> Result<Self> {
        if !support.is_abelian() {
            return Err(Error::NonAbelian);
        }
        let n = support.order();
        let mut values = Vec::with_capacity(n * n);
        for &x in support.members() {
            for &y in support.members() {
                values.push(f(x, y));
            }
        }
        Ok(BilinearForm {
            support: support.clone(),
            values,
        })
    }

    pub fn support(&self) -> &Subgroup {
        &self.support
    }

    pub fn eval(&self, x: usize, y: usize) -> UnitRoot {
        let n = self.support.order();
        let i = self.support.local_index(x).expect("argument outside support");
        let j = self.support.local_index(y).expect("argument outside support");
        self.values[i * n + j].clone()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.support.order();
        (0..n).all(|i| (i..n).all(|j| self.values[i * n + j] == self.values[j * n + i]))
    }

    /// Checks B(xy, z) = B(x, z) + B(y, z) and B(x, yz) = B(x, y) + B(x, z)
    /// on all triples.
    pub fn is_bimultiplicative(&self) -> bool {
        let g = self.support.parent().clone();
        let mem = self.support.members();
        for &x in mem {
            for &y in mem {
                for &z in mem {
                    let left = self.eval(g.mul(x, y), z);
                    if left != &self.eval(x, z) + &self.eval(y, z) {
                        return false;
                    }
                    let right = self.eval(x, g.mul(y, z));
                    if right != &self.eval(x, y) + &self.eval(x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements pairing trivially with everything.
    pub fn radical(&self) -> Vec<usize> {
        self.support
            .members()
            .iter()
            .copied()
            .filter(|&x| self.support.members().iter().all(|&y| self.eval(x, y).is_zero()))
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }
}

impl Serialize for BilinearForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BilinearForm", 1)?;
        s.serialize_field("values", &self.values)?;
        s.end()
    }
}

/// The alternating form of a 2-cochain on an abelian support:
/// Alt(mu)(x, y) = mu(y, x) - mu(x, y). A class invariant.
pub fn alt_form(mu: &Cochain) -> Result<BilinearForm> {
    if mu.arity() != 2 {
        return Err(Error::ArityUnsupported(mu.arity()));
    }
    BilinearForm::from_fn(mu.support(), |x, y| &mu.eval(&[y, x]) - &mu.eval(&[x, y]))
}

/// Nondegeneracy of a 2-cochain class on an abelian support: trivial radical
/// of its alternating form. The trivial group counts as nondegenerate.
pub fn is_nondegenerate(mu: &Cochain) -> Result<bool> {
    Ok(alt_form(mu)?.is_nondegenerate())
}

/// Coordinates of an elementary abelian rank-2 support: a fixed basis (a, b)
/// and the map member -> (i, j) with member = a^i b^j.
pub(crate) struct Rank2Coords {
    pub p: usize,
    /// coords[local index] = (i, j)
    pub coords: Vec<(usize, usize)>,
}

pub(crate) fn rank2_coords(support: &Subgroup) -> Result<Rank2Coords> {
    let g = support.parent().clone();
    let e = g.identity();
    let p = support.exponent();
    if support.order() != p * p || !support.is_elementary_abelian(p) {
        return Err(Error::UnsupportedShape(format!(
            "expected an elementary abelian group of rank 2, got order {}",
            support.order()
        )));
    }
    // Deterministic basis: the lowest non-identity member spans the second
    // coordinate, the lowest member outside its line spans the first. For a
    // literal direct product Z/p x Z/p this reproduces the natural
    // coordinates (element (x1, x2) at index x1 * p + x2).
    let a = support.members().iter().copied().find(|&m| m != e).unwrap();
    let line = Subgroup::generated(&g, &[a]);
    let b = support
        .members()
        .iter()
        .copied()
        .find(|&m| !line.contains(m))
        .expect("rank 2 group has a member outside any line");
    let mut table = vec![(0usize, 0usize); support.order()];
    for i in 0..p {
        for j in 0..p {
            let elem = g.mul(g.pow(b, i), g.pow(a, j));
            let local = support.local_index(elem).expect("span stays inside");
            table[local] = (i, j);
        }
    }
    Ok(Rank2Coords { p, coords: table })
}

/// Representatives of the 2-cocycle classes on a supported shape:
/// - trivial or cyclic support: the trivial class only;
/// - elementary abelian rank 2 of prime exponent p: the p classes
///   mu_c((x1,x2),(y1,y2)) = xi^(c * x2 * y1 / p), c = 0..p-1, in that order.
pub fn h2_representatives(support: &Subgroup) -> Result<Vec<Cochain>> {
    if !support.is_abelian() {
        return Err(Error::NonAbelian);
    }
    if support.order() == 1 || support.is_cyclic() {
        return Ok(vec![Cochain::trivial(support, 2)]);
    }
    let rc = rank2_coords(support)?;
    let p = rc.p;
    if !super_is_prime(p) {
        return Err(Error::UnsupportedShape(format!(
            "exponent {p} is not prime"
        )));
    }
    let mut out = Vec::with_capacity(p);
    for c in 0..p {
        let coords = rc.coords.clone();
        let sup = support.clone();
        out.push(Cochain::from_fn(support, 2, move |args| {
            let (_, x2) = coords[sup.local_index(args[0]).unwrap()];
            let (y1, _) = coords[sup.local_index(args[1]).unwrap()];
            UnitRoot::from_frac((c * x2 * y1) as i64, p as i64)
        }));
    }
    Ok(out)
}

fn super_is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Matches `mu` against class representatives by comparing alternating forms
/// (a faithful class invariant on elementary abelian rank-2 supports).
pub fn identify_class_by_alt(mu: &Cochain, reps: &[Cochain]) -> Result<Option<usize>> {
    let target = alt_form(mu)?;
    for (i, rep) in reps.iter().enumerate() {
        if alt_form(rep)? == target {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// The 2-cocycle on H1 intersect g H2 g^{-1} twisting the composition of
/// bimodule functors between two module category descriptors:
///
/// mu^g(h, h') = mu1(h, h') * mu2(g'h'^{-1}g', g'h^{-1}g')
///             * omega(h h' g, g'h'^{-1}g', g'h^{-1}g')^{-1}
///             * omega(h, h', g) * omega(h, h' g, g'h'^{-1}g')
///
/// written multiplicatively, where conjugation shorthand g'x g' means
/// g^{-1} x g. `omega` must be supported on the whole ambient group.
pub fn twisted_intersection_cocycle(
    omega: &Cochain,
    mu1: &Cochain,
    mu2: &Cochain,
    g: usize,
) -> Result<Cochain> {
    let grp = omega.group().clone();
    if omega.arity() != 3 || !omega.support().is_whole() {
        return Err(Error::SupportMismatch);
    }
    if mu1.arity() != 2 || mu2.arity() != 2 || mu1.group() != &grp || mu2.group() != &grp {
        return Err(Error::SupportMismatch);
    }
    let h2_conj = mu2.support().conjugate(g);
    let overlap_members: Vec<usize> = mu1
        .support()
        .members()
        .iter()
        .copied()
        .filter(|&m| h2_conj.contains(m))
        .collect();
    let overlap = Subgroup::new(grp.clone(), overlap_members)
        .expect("intersection of subgroups is a subgroup");
    let ginv = grp.inv(g);
    let back = |h: usize| grp.mul(grp.mul(ginv, grp.inv(h)), g); // g^{-1} h^{-1} g
    Ok(Cochain::from_fn(&overlap, 2, |args| {
        let (h, hp) = (args[0], args[1]);
        let bh = back(h);
        let bhp = back(hp);
        let t_mu1 = mu1.eval(&[h, hp]);
        let t_mu2 = mu2.eval(&[bhp, bh]);
        let t_o1 = omega.eval(&[grp.mul(grp.mul(h, hp), g), bhp, bh]);
        let t_o2 = omega.eval(&[h, hp, g]);
        let t_o3 = omega.eval(&[h, grp.mul(hp, g), bhp]);
        &(&(&(&t_mu1 + &t_mu2) - &t_o1) + &t_o2) + &t_o3
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{rank2_elementary, subgroups, GroupTable};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn whole(g: &GroupTable) -> Subgroup {
        Subgroup::whole(g)
    }

    fn random_one_cochain(support: &Subgroup, den: i64, rng: &mut StdRng) -> Cochain {
        let picks: Vec<i64> = (0..support.order()).map(|_| rng.gen_range(0..den)).collect();
        let sup = support.clone();
        Cochain::from_fn(support, 1, move |args| {
            let local = sup.local_index(args[0]).unwrap();
            UnitRoot::from_frac(picks[local], den)
        })
    }

    #[test]
    fn unit_root_arithmetic() {
        let a = UnitRoot::from_frac(2, 3);
        let b = UnitRoot::from_frac(2, 3);
        assert_eq!(&a + &b, UnitRoot::from_frac(1, 3));
        assert_eq!(&a - &b, UnitRoot::zero());
        assert_eq!(-&a, UnitRoot::from_frac(1, 3));
        assert_eq!(a.mul_int(3), UnitRoot::zero());
        assert_eq!(UnitRoot::from_frac(-1, 4), UnitRoot::from_frac(3, 4));
        assert_eq!(a.to_string(), "2/3");
    }

    #[test]
    fn coboundary_on_z2_matches_closed_form() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let w = whole(&z2);
        let f = Cochain::from_fn(&w, 1, |_| UnitRoot::from_frac(1, 4));
        let d = f.coboundary().unwrap();
        // df(g, h) = f(g) + f(h) - f(gh)
        for x in 0..2 {
            for y in 0..2 {
                let expect = &(&f.eval(&[x]) + &f.eval(&[y])) - &f.eval(&[z2.mul(x, y)]);
                assert_eq!(d.eval(&[x, y]), expect);
            }
        }
        assert_eq!(d.eval(&[1, 1]), UnitRoot::from_frac(1, 2));
    }

    #[test]
    fn double_coboundary_vanishes_on_small_groups() {
        let mut rng = StdRng::seed_from_u64(11);
        let d6 = GroupTable::dihedral(6).unwrap();
        let z3 = GroupTable::cyclic(3).unwrap();
        let groups = vec![
            GroupTable::cyclic(6).unwrap(),
            d6.clone(),
            rank2_elementary(3).unwrap(),
            GroupTable::direct_product(&d6, &z3).unwrap(),
            GroupTable::dihedral(10).unwrap(),
            GroupTable::direct_product(&GroupTable::dihedral(10).unwrap(), &GroupTable::cyclic(5).unwrap()).unwrap(),
        ];
        for g in groups {
            let w = whole(&g);
            let f = random_one_cochain(&w, 12, &mut rng);
            let dd = f.coboundary().unwrap().coboundary().unwrap();
            assert!(dd.is_trivial(), "d(d f) != 0 on group of order {}", g.order());
            assert!(f.coboundary().unwrap().is_cocycle());
        }
    }

    #[test]
    fn canonical_classes_are_cocycles_and_distinct() {
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let reps = h2_representatives(&w).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps[0].is_trivial());
        for r in &reps {
            assert!(r.is_cocycle());
        }
        // Pairwise non-cohomologous.
        for i in 0..3 {
            for j in 0..3 {
                let witness = cohomologous(&reps[i], &reps[j]).unwrap();
                assert_eq!(witness.is_some(), i == j, "classes {i} vs {j}");
            }
        }
    }

    #[test]
    fn class_count_matches_alternating_form_census() {
        // Independent count of H^2 for (Z/p)^2: classes biject with
        // alternating bicharacters. A bicharacter is fixed by its values on
        // basis pairs; alternating forces the diagonal to vanish and the two
        // off-diagonal values to be opposite, leaving exactly p forms.
        for p in [3usize, 5] {
            let a = rank2_elementary(p).unwrap();
            let w = whole(&a);
            let mut census = 0usize;
            // Every bicharacter valued in Q/Z on (Z/p)^2 takes values of
            // order dividing p and is fixed by its four basis values; run
            // over all of them and keep the alternating ones.
            for basis in 0..p.pow(4) {
                let (d1, rest) = (basis % p, basis / p);
                let (d2, rest) = (rest % p, rest / p);
                let (u, v) = (rest % p, rest / p);
                let b = |x: usize, y: usize| -> UnitRoot {
                    let (x1, x2) = (x / p, x % p);
                    let (y1, y2) = (y / p, y % p);
                    UnitRoot::from_frac(
                        (d1 * x1 * y1 + u * x1 * y2 + v * x2 * y1 + d2 * x2 * y2) as i64,
                        p as i64,
                    )
                };
                if (0..p * p).all(|x| b(x, x).is_zero()) {
                    census += 1;
                }
            }
            assert_eq!(census, p);
            let reps = h2_representatives(&w).unwrap();
            assert_eq!(reps.len(), p);
            // The representatives hit pairwise distinct alternating forms.
            let alts: Vec<BilinearForm> =
                reps.iter().map(|r| alt_form(r).unwrap()).collect();
            for i in 0..p {
                for j in i + 1..p {
                    assert_ne!(alts[i], alts[j]);
                }
            }
        }
    }

    #[test]
    fn alt_of_canonical_class_closed_form() {
        let p = 3usize;
        let a = rank2_elementary(p).unwrap();
        let w = whole(&a);
        let reps = h2_representatives(&w).unwrap();
        for (c, rep) in reps.iter().enumerate() {
            let alt = alt_form(rep).unwrap();
            assert!(alt.is_bimultiplicative());
            for x in 0..p * p {
                for y in 0..p * p {
                    let (x1, x2) = (x / p, x % p);
                    let (y1, y2) = (y / p, y % p);
                    // Alt(mu_c)(x, y) = c (x1 y2 - x2 y1) / p.
                    let expect = UnitRoot::from_frac(
                        (c * x1 * y2) as i64 - (c * x2 * y1) as i64,
                        p as i64,
                    );
                    assert_eq!(alt.eval(x, y), expect);
                }
            }
        }
    }

    #[test]
    fn alt_is_a_class_invariant_under_perturbation() {
        let mut rng = StdRng::seed_from_u64(23);
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let reps = h2_representatives(&w).unwrap();
        for _ in 0..100 {
            let c = rng.gen_range(0..reps.len());
            let f = random_one_cochain(&w, 9, &mut rng);
            let perturbed = reps[c].product(&f.coboundary().unwrap()).unwrap();
            assert_eq!(alt_form(&perturbed).unwrap(), alt_form(&reps[c]).unwrap());
            assert!(perturbed.is_cocycle());
            let id = identify_class_by_alt(&perturbed, &reps).unwrap();
            assert_eq!(id, Some(c));
        }
    }

    #[test]
    fn nondegenerate_iff_nontrivial_class() {
        for p in [3usize, 5, 7] {
            let a = rank2_elementary(p).unwrap();
            let w = whole(&a);
            let reps = h2_representatives(&w).unwrap();
            for (c, rep) in reps.iter().enumerate() {
                assert_eq!(is_nondegenerate(rep).unwrap(), c != 0, "p={p}, c={c}");
            }
        }
        // Trivial group: nondegenerate by convention.
        let z1 = GroupTable::cyclic(1).unwrap();
        let t = Cochain::trivial(&whole(&z1), 2);
        assert!(is_nondegenerate(&t).unwrap());
    }

    #[test]
    fn order_two_cocycle_trivializes_with_denominator_four() {
        // On Z/2 the cocycle with value 1/2 at (g, g) is a coboundary over
        // Q/Z (witness 1/4) even though no Z/2-valued witness exists.
        let z2 = GroupTable::cyclic(2).unwrap();
        let w = whole(&z2);
        let mu = Cochain::from_fn(&w, 2, |args| {
            if args[0] == 1 && args[1] == 1 {
                UnitRoot::from_frac(1, 2)
            } else {
                UnitRoot::zero()
            }
        });
        assert!(mu.is_cocycle());
        let witness = trivializing_witness(&mu).unwrap().expect("must trivialize");
        assert_eq!(witness.coboundary().unwrap(), mu);
        assert_eq!(witness.eval(&[1]).denominator(), BigInt::from(4));
    }

    #[test]
    fn cohomologous_finds_planted_witnesses() {
        let mut rng = StdRng::seed_from_u64(31);
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let reps = h2_representatives(&w).unwrap();
        for c in 0..reps.len() {
            let f = random_one_cochain(&w, 6, &mut rng);
            let shifted = reps[c].product(&f.coboundary().unwrap()).unwrap();
            let witness = cohomologous(&shifted, &reps[c]).unwrap();
            assert!(witness.is_some());
        }
    }

    #[test]
    fn trivializing_witness_arity_three() {
        let mut rng = StdRng::seed_from_u64(37);
        let g = rank2_elementary(3).unwrap();
        let w = whole(&g);
        // A coboundary of a random 2-cochain must trivialize.
        let picks: Vec<i64> = (0..81).map(|_| rng.gen_range(0..6)).collect();
        let sup = w.clone();
        let kappa = Cochain::from_fn(&w, 2, move |args| {
            let i = sup.local_index(args[0]).unwrap() * 9 + sup.local_index(args[1]).unwrap();
            UnitRoot::from_frac(picks[i], 6)
        });
        let omega = kappa.coboundary().unwrap();
        assert!(omega.is_cocycle());
        let witness = trivializing_witness(&omega).unwrap().expect("coboundary trivializes");
        assert_eq!(witness.coboundary().unwrap(), omega);
    }

    #[test]
    fn conj_transport_by_reflection_inverts_the_class() {
        // In D_6 x Z/3 the rotation-plus-center Sylow subgroup is (Z/3)^2;
        // conjugating a class by a reflection negates the rotation coordinate.
        let d6 = GroupTable::dihedral(6).unwrap();
        let z3 = GroupTable::cyclic(3).unwrap();
        let g = GroupTable::direct_product(&d6, &z3).unwrap();
        let subs = subgroups(&g).unwrap();
        let sylow = subs.iter().find(|s| s.order() == 9).unwrap().clone();
        assert!(sylow.is_elementary_abelian(3));
        let reps = h2_representatives(&sylow).unwrap();
        // Reflection: (sr0, 0) = dihedral index 3, product index 3 * 3 + 0.
        let refl = 9;
        assert_eq!(g.element_order(refl), 2);
        for c in 0..3 {
            let moved = reps[c].conj_transport(refl);
            assert_eq!(moved.support(), &sylow, "Sylow subgroup is normal");
            let id = identify_class_by_alt(&moved, &reps).unwrap().unwrap();
            assert_eq!(id, (3 - c) % 3, "reflection sends class c to -c");
            // Cross-check the alternating-form match with the solver.
            assert!(cohomologous(&moved, &reps[(3 - c) % 3]).unwrap().is_some());
        }
    }

    #[test]
    fn swap_action_invariance_only_for_trivial_class() {
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let reps = h2_representatives(&w).unwrap();
        let swap_image: Vec<usize> = (0..9).map(|xy| (xy % 3) * 3 + xy / 3).collect();
        let swap = GroupMorphism::new(a.clone(), a.clone(), swap_image).unwrap();
        for (c, rep) in reps.iter().enumerate() {
            let invariant = is_invariant_class(rep, std::slice::from_ref(&swap)).unwrap();
            assert_eq!(invariant, c == 0, "class {c}");
            let pulled = rep.pullback(&swap).unwrap();
            let id = identify_class_by_alt(&pulled, &reps).unwrap().unwrap();
            assert_eq!(id, (3 - c) % 3, "swap sends class c to -c");
        }
    }

    #[test]
    fn twisted_intersection_identity_element_closed_form() {
        // With trivial omega and g = e the twist collapses to
        // mu1(h, h') + mu2(h'^{-1}, h^{-1}).
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let omega = Cochain::trivial(&w, 3);
        let reps = h2_representatives(&w).unwrap();
        let (mu1, mu2) = (&reps[1], &reps[2]);
        let tw = twisted_intersection_cocycle(&omega, mu1, mu2, a.identity()).unwrap();
        assert!(tw.is_cocycle());
        for &h in w.members() {
            for &hp in w.members() {
                let expect =
                    &mu1.eval(&[h, hp]) + &mu2.eval(&[a.inv(hp), a.inv(h)]);
                assert_eq!(tw.eval(&[h, hp]), expect);
            }
        }
    }

    #[test]
    fn twisted_intersection_with_nontrivial_omega_is_a_cocycle() {
        let mut rng = StdRng::seed_from_u64(41);
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        // omega = coboundary of a random 2-cochain: a nontrivial table that
        // exercises all three omega terms of the twist formula.
        let picks: Vec<i64> = (0..81).map(|_| rng.gen_range(0..12)).collect();
        let sup = w.clone();
        let kappa = Cochain::from_fn(&w, 2, move |args| {
            let i = sup.local_index(args[0]).unwrap() * 9 + sup.local_index(args[1]).unwrap();
            UnitRoot::from_frac(picks[i], 12)
        });
        let omega = kappa.coboundary().unwrap();
        assert!(!omega.is_trivial());
        // The twist formula expects module-compatible inputs: each mu must
        // satisfy coboundary(mu) = omega on its support. Multiplying class
        // representatives by kappa arranges exactly that.
        let reps = h2_representatives(&w).unwrap();
        let mu1 = reps[1].product(&kappa).unwrap();
        let mu2 = reps[2].product(&kappa).unwrap();
        assert_eq!(mu1.coboundary().unwrap(), omega);
        assert!(!mu1.is_cocycle());
        for g in 0..9 {
            let tw = twisted_intersection_cocycle(&omega, &mu1, &mu2, g).unwrap();
            assert!(tw.is_cocycle(), "twist at g = {g}");
        }
    }

    #[test]
    fn restriction_and_pullback_shapes() {
        let g = GroupTable::direct_product(
            &GroupTable::dihedral(6).unwrap(),
            &GroupTable::cyclic(3).unwrap(),
        )
        .unwrap();
        let subs = subgroups(&g).unwrap();
        let sylow = subs.iter().find(|s| s.order() == 9).unwrap();
        let reps = h2_representatives(sylow).unwrap();
        let line = subs
            .iter()
            .find(|s| s.order() == 3 && s.members().iter().all(|&m| sylow.contains(m)))
            .unwrap();
        let restricted = reps[1].restrict(line).unwrap();
        assert_eq!(restricted.support(), line);
        // Restriction of a bilinear-form cochain to a line is a cocycle too.
        assert!(restricted.is_cocycle());
        // Pullback along conjugation by an element of the subgroup is the
        // identity on values (abelian support).
        let inner = GroupMorphism::conjugation(&g, sylow.members()[3]);
        let pulled = reps[1].pullback(&inner).unwrap();
        assert_eq!(pulled, reps[1]);
    }

    #[test]
    fn serialization_shapes() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let w = whole(&z2);
        let mu = Cochain::from_fn(&w, 2, |args| {
            if args[0] == 1 && args[1] == 1 {
                UnitRoot::from_frac(1, 2)
            } else {
                UnitRoot::zero()
            }
        });
        let json = serde_json::to_value(&mu).unwrap();
        assert_eq!(json["arity"], 2);
        assert_eq!(json["values"].as_array().unwrap().len(), 4);
        assert_eq!(json["values"][3], "1/2");
    }
}
