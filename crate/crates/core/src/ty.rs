//! Tambara-Yamagami categories: associator tables for a finite abelian
//! group with a symmetric nondegenerate bicharacter, a pentagon checker,
//! symmetry actions on the associated pointed module categories, and the
//! resulting group-theoreticity verdict for the order-two
//! equivariantization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::sync::Arc;

use crate::cochain::{
    alt_form, h2_representatives, identify_class_by_alt, rank2_coords, BilinearForm, Cochain,
    UnitRoot,
};
use crate::cyclo::{CycField, CycScalar};
use crate::fusion::{
    dimension_profile, equivariantization_simples, ty_ring, RingAction,
};
use crate::group::{rank2_elementary, GroupMorphism, GroupTable, Subgroup};
use crate::par;
use crate::{Error, Result};

/// The data of a Tambara-Yamagami category: a finite abelian group, a
/// symmetric nondegenerate bicharacter on it, and a sign choice that fixes
/// the scale of the one non-monomial associator family at +-1/sqrt|A|.
/// The group order must be a perfect square so the scale is rational.
#[derive(Clone, Debug)]
pub struct TYData {
    group: GroupTable,
    chi: BilinearForm,
    tau: BigRational,
}

impl TYData {
    pub fn new(group: GroupTable, chi: BilinearForm, positive_sign: bool) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::NonAbelian);
        }
        if chi.support().parent() != &group || chi.support().order() != group.order() {
            return Err(Error::SupportMismatch);
        }
        if !chi.is_symmetric() {
            return Err(Error::InvalidTY("the bicharacter must be symmetric".into()));
        }
        if !chi.is_bimultiplicative() {
            return Err(Error::InvalidTY(
                "the bicharacter must be multiplicative in each slot".into(),
            ));
        }
        if !chi.is_nondegenerate() {
            return Err(Error::InvalidTY("the bicharacter must be nondegenerate".into()));
        }
        let s = isqrt_exact(group.order()).ok_or_else(|| {
            Error::InvalidTY(format!(
                "group order {} is not a perfect square",
                group.order()
            ))
        })?;
        let mut tau = BigRational::new(BigInt::one(), BigInt::from(s));
        if !positive_sign {
            tau = -tau;
        }
        Ok(TYData { group, chi, tau })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn bicharacter(&self) -> &BilinearForm {
        &self.chi
    }

    pub fn tau(&self) -> &BigRational {
        &self.tau
    }

    /// Object index of the non-invertible object; group elements sit at
    /// their own indices below it.
    pub fn m_index(&self) -> usize {
        self.group.order()
    }

    pub fn object_count(&self) -> usize {
        self.group.order() + 1
    }
}

/// Integer square root when the input is a perfect square.
fn isqrt_exact(n: usize) -> Option<usize> {
    let mut s = (n as f64).sqrt().round() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    if s * s == n {
        Some(s)
    } else {
        None
    }
}

/// The rank-2 elementary abelian group of exponent p with the hyperbolic
/// pairing xi^((x1 y2 + x2 y1) / p). Nondegenerate for every odd prime,
/// and its Lagrangian subgroups (order p, form restricting trivially) are the two coordinate axes.
pub fn canonical_hyperbolic_form(p: usize) -> Result<(GroupTable, BilinearForm)> {
    let g = rank2_elementary(p)?;
    let whole = Subgroup::whole(&g);
    let chi = BilinearForm::from_fn(&whole, |x, y| {
        let (x1, x2) = (x / p, x % p);
        let (y1, y2) = (y / p, y % p);
        UnitRoot::from_frac(((x1 * y2 + x2 * y1) % p) as i64, p as i64)
    })?;
    Ok((g, chi))
}

/// The diagonal pairing xi^((x1 y1 + x2 y2) / p) on the same group. Also
/// symmetric and nondegenerate, but for p = 3 mod 4 it has no Lagrangian
/// subgroup.
pub fn diagonal_form(p: usize) -> Result<(GroupTable, BilinearForm)> {
    let g = rank2_elementary(p)?;
    let whole = Subgroup::whole(&g);
    let chi = BilinearForm::from_fn(&whole, |x, y| {
        let (x1, x2) = (x / p, x % p);
        let (y1, y2) = (y / p, y % p);
        UnitRoot::from_frac(((x1 * y1 + x2 * y2) % p) as i64, p as i64)
    })?;
    Ok((g, chi))
}

/// A root of unity scaled by a nonzero rational: the shape of every
/// associator entry. Sums of these live in a cyclotomic field; a single
/// one stays exactly comparable without leaving monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledRoot {
    pub scale: BigRational,
    pub root: UnitRoot,
}

impl ScaledRoot {
    pub fn one() -> Self {
        ScaledRoot {
            scale: BigRational::one(),
            root: UnitRoot::zero(),
        }
    }

    pub fn from_root(root: UnitRoot) -> Self {
        ScaledRoot {
            scale: BigRational::one(),
            root,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ScaledRoot {
            scale: &self.scale * &other.scale,
            root: UnitRoot::new(self.root.exponent() + other.root.exponent()),
        }
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.root.is_zero()
    }
}

impl std::fmt::Display for ScaledRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.root.is_zero() {
            write!(f, "{}", self.scale)
        } else {
            write!(f, "{} * e({})", self.scale, self.root.exponent())
        }
    }
}

/// Associator table of a Tambara-Yamagami category over objects
/// 0..n-1 (the group) and n (the non-invertible object m). Entries are
/// indexed by (x, y, z, target d, left intermediate e in x tensor y,
/// right intermediate f in y tensor z); inadmissible positions are zero
/// and `get` returns None for them.
///
/// The eight shape families and their storage:
/// - (a,b,c)  -> a+b+c   : n^3 entries, index ((a n + b) n + c);
/// - (a,b,m)  -> m       : n^2 entries, index (a n + b);
/// - (a,m,b)  -> m       : n^2 entries, index (a n + b);
/// - (m,a,b)  -> m       : n^2 entries, index (a n + b);
/// - (a,m,m)  -> b       : n^2 entries, index (a n + b), right
///   intermediate forced to b - a;
/// - (m,a,m)  -> b       : n^2 entries, index (a n + b);
/// - (m,m,a)  -> b       : n^2 entries, index (a n + b), left
///   intermediate forced to b - a;
/// - (m,m,m)  -> m       : n^2 entries, index (e n + f) over the two
///   intermediate group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSymbolTable {
    group: GroupTable,
    n: usize,
    fam_ggg: Vec<ScaledRoot>,
    fam_ggm: Vec<ScaledRoot>,
    fam_gmg: Vec<ScaledRoot>,
    fam_mgg: Vec<ScaledRoot>,
    fam_gmm: Vec<ScaledRoot>,
    fam_mgm: Vec<ScaledRoot>,
    fam_mmg: Vec<ScaledRoot>,
    fam_mmm: Vec<ScaledRoot>,
}

impl FSymbolTable {
    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn object_count(&self) -> usize {
        self.n + 1
    }

    fn slot(&self, x: usize, y: usize, z: usize, d: usize, e: usize, f: usize) -> Option<usize> {
        let n = self.n;
        let g = &self.group;
        let grp = |o: usize| o < n;
        match (grp(x), grp(y), grp(z)) {
            (true, true, true) => {
                let sum = g.mul(g.mul(x, y), z);
                if d == sum && e == g.mul(x, y) && f == g.mul(y, z) {
                    Some(((x * n + y) * n + z, 0))
                } else {
                    None
                }
            }
            (true, true, false) => {
                if d == n && e == g.mul(x, y) && f == n {
                    Some((x * n + y, 1))
                } else {
                    None
                }
            }
            (true, false, true) => {
                if d == n && e == n && f == n {
                    Some((x * n + z, 2))
                } else {
                    None
                }
            }
            (false, true, true) => {
                if d == n && e == n && f == g.mul(y, z) {
                    Some((y * n + z, 3))
                } else {
                    None
                }
            }
            (true, false, false) => {
                if d < n && e == n && f == g.mul(d, g.inv(x)) {
                    Some((x * n + d, 4))
                } else {
                    None
                }
            }
            (false, true, false) => {
                if d < n && e == n && f == n {
                    Some((y * n + d, 5))
                } else {
                    None
                }
            }
            (false, false, true) => {
                if d < n && e == g.mul(d, g.inv(z)) && f == n {
                    Some((z * n + d, 6))
                } else {
                    None
                }
            }
            (false, false, false) => {
                if d == n && e < n && f < n {
                    Some((e * n + f, 7))
                } else {
                    None
                }
            }
        }
        .map(|(idx, fam)| idx * 8 + fam)
    }

    fn family(&self, tag: usize) -> &Vec<ScaledRoot> {
        match tag {
            0 => &self.fam_ggg,
            1 => &self.fam_ggm,
            2 => &self.fam_gmg,
            3 => &self.fam_mgg,
            4 => &self.fam_gmm,
            5 => &self.fam_mgm,
            6 => &self.fam_mmg,
            _ => &self.fam_mmm,
        }
    }

    fn family_mut(&mut self, tag: usize) -> &mut Vec<ScaledRoot> {
        match tag {
            0 => &mut self.fam_ggg,
            1 => &mut self.fam_ggm,
            2 => &mut self.fam_gmg,
            3 => &mut self.fam_mgg,
            4 => &mut self.fam_gmm,
            5 => &mut self.fam_mgm,
            6 => &mut self.fam_mmg,
            _ => &mut self.fam_mmm,
        }
    }

    /// Entry at a sextuple, None when the position is inadmissible (the
    /// associator component there is zero or absent).
    pub fn get(
        &self,
        x: usize,
        y: usize,
        z: usize,
        d: usize,
        e: usize,
        f: usize,
    ) -> Option<&ScaledRoot> {
        self.slot(x, y, z, d, e, f)
            .map(|packed| &self.family(packed % 8)[packed / 8])
    }

    /// Overwrites an admissible entry; errors on inadmissible positions.
    pub fn set(
        &mut self,
        x: usize,
        y: usize,
        z: usize,
        d: usize,
        e: usize,
        f: usize,
        value: ScaledRoot,
    ) -> Result<()> {
        match self.slot(x, y, z, d, e, f) {
            Some(packed) => {
                self.family_mut(packed % 8)[packed / 8] = value;
                Ok(())
            }
            None => Err(Error::InvalidTY(format!(
                "position ({x}, {y}, {z}) -> {d} via ({e}, {f}) is inadmissible"
            ))),
        }
    }

    /// All admissible positions as [x, y, z, d, e, f] sextuples.
    pub fn admissible(&self) -> Vec<[usize; 6]> {
        let n = self.n;
        let g = &self.group;
        let m = n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push([a, b, c, g.mul(g.mul(a, b), c), g.mul(a, b), g.mul(b, c)]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                out.push([a, b, m, m, g.mul(a, b), m]);
                out.push([a, m, b, m, m, m]);
                out.push([m, a, b, m, m, g.mul(a, b)]);
                out.push([a, m, m, b, m, g.mul(b, g.inv(a))]);
                out.push([m, a, m, b, m, m]);
                out.push([m, m, a, b, g.mul(b, g.inv(a)), m]);
                out.push([m, m, m, m, a, b]);
            }
        }
        out
    }

    /// Least common level of the roots appearing in the table.
    pub fn root_level(&self) -> usize {
        let mut level = BigInt::one();
        for tag in 0..8 {
            for entry in self.family(tag) {
                level = level.lcm(&entry.root.denominator());
            }
        }
        let level: usize = level
            .try_into()
            .expect("root levels stay within machine range");
        level.max(1)
    }

    /// Fusion product of two objects, written into `out`.
    fn fuse(&self, x: usize, y: usize, out: &mut Vec<usize>) {
        out.clear();
        match (x < self.n, y < self.n) {
            (true, true) => out.push(self.group.mul(x, y)),
            (false, false) => out.extend(0..self.n),
            _ => out.push(self.n),
        }
    }
}

/// The associator table of the category for the given data: entries are 1
/// except chi(a, b) on the two mixed families (a, m, b) -> m and
/// (m, a, m) -> b, and tau / chi(e, f) on (m, m, m) -> m.
pub fn f_symbols(ty: &TYData) -> FSymbolTable {
    let n = ty.group.order();
    let ones = |len: usize| vec![ScaledRoot::one(); len];
    let mut fam_gmg = ones(n * n);
    let mut fam_mgm = ones(n * n);
    let mut fam_mmm = ones(n * n);
    for a in 0..n {
        for b in 0..n {
            fam_gmg[a * n + b] = ScaledRoot::from_root(ty.chi.eval(a, b));
            fam_mgm[a * n + b] = ScaledRoot::from_root(ty.chi.eval(a, b));
            let inv = UnitRoot::new(-ty.chi.eval(a, b).exponent().clone());
            fam_mmm[a * n + b] = ScaledRoot {
                scale: ty.tau.clone(),
                root: inv,
            };
        }
    }
    FSymbolTable {
        group: ty.group.clone(),
        n,
        fam_ggg: ones(n * n * n),
        fam_ggm: ones(n * n),
        fam_gmg,
        fam_mgg: ones(n * n),
        fam_gmm: ones(n * n),
        fam_mgm,
        fam_mmg: ones(n * n),
        fam_mmm,
    }
}

/// One failed pentagon equation: the outer quadruple, the five edge
/// labels, and both sides rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonViolation {
    pub objects: [usize; 4],
    pub e: usize,
    pub f: usize,
    pub g: usize,
    pub k: usize,
    pub l: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Result of a full pentagon sweep: how many equations were checked and
/// which ones failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonOutcome {
    pub equations: usize,
    pub violations: Vec<PentagonViolation>,
}

impl Serialize for PentagonOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PentagonOutcome", 2)?;
        s.serialize_field("equations", &self.equations)?;
        let rows: Vec<(Vec<usize>, String, String)> = self
            .violations
            .iter()
            .map(|v| {
                let mut ids = v.objects.to_vec();
                ids.extend([v.e, v.f, v.g, v.k, v.l]);
                (ids, v.lhs.clone(), v.rhs.clone())
            })
            .collect();
        s.serialize_field("violations", &rows)?;
        s.end()
    }
}

struct PentagonCtx<'a> {
    table: &'a FSymbolTable,
    field: Arc<CycField>,
    roots: Vec<CycScalar>,
}

impl<'a> PentagonCtx<'a> {
    fn new(table: &'a FSymbolTable) -> Self {
        let level = table.root_level();
        let field = CycField::new(level);
        let roots = (0..level)
            .map(|k| {
                let root = UnitRoot::new(BigRational::new(BigInt::from(k), BigInt::from(level)));
                CycScalar::root_of_unity(&field, &root).expect("exponent divides the field level")
            })
            .collect();
        PentagonCtx { table, field, roots }
    }

    fn embed(&self, sr: &ScaledRoot) -> CycScalar {
        let level = self.field.level();
        let q = sr.root.exponent();
        let num: usize = (q.numer() * BigInt::from(level) / q.denom())
            .try_into()
            .expect("normalized exponent");
        let root = self.roots[num % level].clone();
        if sr.scale.is_one() {
            root
        } else {
            root.mul(&CycScalar::from_rational(&self.field, sr.scale.clone()))
        }
    }

    /// Checks every pentagon equation whose outer objects are the given
    /// quadruple. Returns the equation count and any violations; with
    /// `early_exit` set, stops at the first failure and skips rendering.
    fn check_quadruple(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        early_exit: bool,
    ) -> (usize, Vec<PentagonViolation>, bool) {
        let t = self.table;
        let mut fs = Vec::new();
        let mut gs = Vec::new();
        let mut ls = Vec::new();
        let mut ks = Vec::new();
        let mut es = Vec::new();
        let mut hs = Vec::new();
        let mut equations = 0usize;
        let mut violations = Vec::new();
        t.fuse(a, b, &mut fs);
        t.fuse(c, d, &mut ls);
        for &f in &fs {
            t.fuse(f, c, &mut gs);
            for &g in &gs {
                for &l in &ls {
                    t.fuse(b, l, &mut ks);
                    for &k in &ks {
                        t.fuse(g, d, &mut es);
                        for &e in &es {
                            equations += 1;
                            let lhs = t
                                .get(f, c, d, e, g, l)
                                .and_then(|u| t.get(a, b, l, e, f, k).map(|v| u.mul(v)));
                            t.fuse(b, c, &mut hs);
                            let mut terms: Vec<ScaledRoot> = Vec::new();
                            for &h in &hs {
                                let term = t.get(a, b, c, g, f, h).and_then(|u| {
                                    t.get(a, h, d, e, g, k).and_then(|v| {
                                        t.get(b, c, d, k, h, l).map(|w| u.mul(v).mul(w))
                                    })
                                });
                                if let Some(term) = term {
                                    terms.push(term);
                                }
                            }
                            let holds = match (&lhs, terms.len()) {
                                (None, 0) => true,
                                (Some(lv), 1) => *lv == terms[0],
                                _ => {
                                    let mut sum = CycScalar::zero(&self.field);
                                    for term in &terms {
                                        sum = sum.add(&self.embed(term));
                                    }
                                    let lv = match &lhs {
                                        Some(lv) => self.embed(lv),
                                        None => CycScalar::zero(&self.field),
                                    };
                                    sum == lv
                                }
                            };
                            if !holds {
                                if early_exit {
                                    return (equations, violations, false);
                                }
                                let lhs_str = match &lhs {
                                    Some(lv) => lv.to_string(),
                                    None => "0".into(),
                                };
                                let rhs_str = if terms.is_empty() {
                                    "0".into()
                                } else {
                                    terms
                                        .iter()
                                        .map(|t| t.to_string())
                                        .collect::<Vec<_>>()
                                        .join(" + ")
                                };
                                violations.push(PentagonViolation {
                                    objects: [a, b, c, d],
                                    e,
                                    f,
                                    g,
                                    k,
                                    l,
                                    lhs: lhs_str,
                                    rhs: rhs_str,
                                });
                            }
                        }
                    }
                }
            }
        }
        (equations, violations, true)
    }
}

fn decode_quadruple(qi: usize, objects: usize) -> [usize; 4] {
    let a = qi / (objects * objects * objects);
    let b = (qi / (objects * objects)) % objects;
    let c = (qi / objects) % objects;
    let d = qi % objects;
    [a, b, c, d]
}

/// Full pentagon sweep over all object quadruples, one parallel work item
/// per quadruple.
pub fn pentagon_check(table: &FSymbolTable) -> PentagonOutcome {
    let ctx = PentagonCtx::new(table);
    let objects = table.object_count();
    let per_quad = par::flat_map_indices(objects * objects * objects * objects, |qi| {
        let [a, b, c, d] = decode_quadruple(qi, objects);
        let (equations, violations, _) = ctx.check_quadruple(a, b, c, d, false);
        vec![(equations, violations)]
    });
    let mut outcome = PentagonOutcome {
        equations: 0,
        violations: Vec::new(),
    };
    for (equations, violations) in per_quad {
        outcome.equations += equations;
        outcome.violations.extend(violations);
    }
    outcome
}

/// Sequential variant of the full sweep; same result, one thread.
pub fn pentagon_check_sequential(table: &FSymbolTable) -> PentagonOutcome {
    let ctx = PentagonCtx::new(table);
    let objects = table.object_count();
    let mut outcome = PentagonOutcome {
        equations: 0,
        violations: Vec::new(),
    };
    for qi in 0..objects * objects * objects * objects {
        let [a, b, c, d] = decode_quadruple(qi, objects);
        let (equations, violations, _) = ctx.check_quadruple(a, b, c, d, false);
        outcome.equations += equations;
        outcome.violations.extend(violations);
    }
    outcome
}

/// Whether every pentagon equation holds, stopping at the first failure.
pub fn pentagon_holds(table: &FSymbolTable) -> bool {
    let ctx = PentagonCtx::new(table);
    let objects = table.object_count();
    for qi in 0..objects * objects * objects * objects {
        let [a, b, c, d] = decode_quadruple(qi, objects);
        let (_, _, ok) = ctx.check_quadruple(a, b, c, d, true);
        if !ok {
            return false;
        }
    }
    true
}

/// Coordinates on a rank-2 elementary abelian group: the deterministic
/// basis together with lookup in both directions.
struct Coords {
    p: usize,
    coords: Vec<(usize, usize)>,
    member_at: Vec<usize>,
}

fn coords_of(group: &GroupTable) -> Result<Coords> {
    let whole = Subgroup::whole(group);
    let r2 = rank2_coords(&whole)?;
    let p = r2.p;
    let mut member_at = vec![0usize; p * p];
    for (local, &(i, j)) in r2.coords.iter().enumerate() {
        member_at[i * p + j] = whole.members()[local];
    }
    Ok(Coords {
        p,
        coords: r2.coords,
        member_at,
    })
}

/// Automorphisms of the group preserving the bicharacter. Requires a
/// rank-2 elementary abelian group; candidates are the invertible
/// 2 x 2 matrices over Z/p in the deterministic basis, filtered by
/// preservation on basis pairs.
pub fn aut_chi(group: &GroupTable, chi: &BilinearForm) -> Result<Vec<GroupMorphism>> {
    let co = coords_of(group)?;
    let p = co.p;
    let b1 = co.member_at[p];
    let b2 = co.member_at[1];
    let mut out = Vec::new();
    for alpha in 0..p {
        for beta in 0..p {
            for gamma in 0..p {
                for delta in 0..p {
                    if (alpha * delta) % p == (beta * gamma) % p {
                        continue;
                    }
                    let tb1 = co.member_at[alpha * p + gamma];
                    let tb2 = co.member_at[beta * p + delta];
                    if chi.eval(tb1, tb1) != chi.eval(b1, b1)
                        || chi.eval(tb1, tb2) != chi.eval(b1, b2)
                        || chi.eval(tb2, tb1) != chi.eval(b2, b1)
                        || chi.eval(tb2, tb2) != chi.eval(b2, b2)
                    {
                        continue;
                    }
                    let image: Vec<usize> = (0..p * p)
                        .map(|x| {
                            let (x1, x2) = co.coords[x];
                            let i = (alpha * x1 + beta * x2) % p;
                            let j = (gamma * x1 + delta * x2) % p;
                            co.member_at[i * p + j]
                        })
                        .collect();
                    out.push(GroupMorphism::new(group.clone(), group.clone(), image)?);
                }
            }
        }
    }
    Ok(out)
}

/// The automorphism exchanging the two basis coordinates.
pub fn coordinate_swap(group: &GroupTable) -> Result<GroupMorphism> {
    let co = coords_of(group)?;
    let p = co.p;
    let image: Vec<usize> = (0..p * p)
        .map(|x| {
            let (x1, x2) = co.coords[x];
            co.member_at[x2 * p + x1]
        })
        .collect();
    GroupMorphism::new(group.clone(), group.clone(), image)
}

/// Whether relabeling group objects by the automorphism (fixing the
/// non-invertible object) carries every associator entry to the entry at
/// the relabeled position.
pub fn action_invariance_check(table: &FSymbolTable, t: &GroupMorphism) -> bool {
    let m = table.n;
    let relabel = |o: usize| if o < m { t.apply(o) } else { o };
    for [x, y, z, d, e, f] in table.admissible() {
        let moved = table.get(relabel(x), relabel(y), relabel(z), relabel(d), relabel(e), relabel(f));
        match moved {
            Some(v) if *v == *table.get(x, y, z, d, e, f).unwrap() => {}
            _ => return false,
        }
    }
    true
}

/// Subgroups of order sqrt|A| on which the bicharacter restricts
/// trivially, in deterministic member order.
pub fn lagrangian_subgroups(group: &GroupTable, chi: &BilinearForm) -> Result<Vec<Subgroup>> {
    let s = isqrt_exact(group.order()).ok_or_else(|| {
        Error::InvalidTY(format!(
            "group order {} is not a perfect square",
            group.order()
        ))
    })?;
    let all = crate::group::subgroups(group)?;
    Ok(all
        .into_iter()
        .filter(|l| {
            l.order() == s
                && l.members()
                    .iter()
                    .all(|&x| l.members().iter().all(|&y| chi.eval(x, y).is_zero()))
        })
        .collect())
}

/// A second Lagrangian meeting `l` only in the identity, if one exists.
/// For the hyperbolic form the two coordinate axes are complements of
/// each other.
pub fn hyperbolic_complement(
    group: &GroupTable,
    chi: &BilinearForm,
    l: &Subgroup,
) -> Result<Option<Subgroup>> {
    for cand in lagrangian_subgroups(group, chi)? {
        if cand.intersection(l).order() == 1 {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// A pointed module category over the Tambara-Yamagami category: either a
/// Lagrangian subgroup, or the whole group equipped with a 2-cocycle class
/// tied to the bicharacter.
#[derive(Clone, Debug)]
pub enum TYModCat {
    Lagrangian(Subgroup),
    Whole { class_index: usize, mu: Cochain },
}

impl Serialize for TYModCat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TYModCat::Lagrangian(l) => {
                let mut s = serializer.serialize_struct("TYModCat", 2)?;
                s.serialize_field("kind", "lagrangian")?;
                s.serialize_field("members", l.members())?;
                s.end()
            }
            TYModCat::Whole { class_index, .. } => {
                let mut s = serializer.serialize_struct("TYModCat", 2)?;
                s.serialize_field("kind", "whole")?;
                s.serialize_field("class", class_index)?;
                s.end()
            }
        }
    }
}

/// The companion of a 2-cocycle class on the whole group: solve
/// Alt(mu)(x, iota(a)) = chi(x, a) for an additive iota, pull the inverse
/// cochain back along it, and identify the resulting class. Defined
/// exactly when Alt(mu) is nondegenerate.
pub fn companion_class(
    group: &GroupTable,
    chi: &BilinearForm,
    mu: &Cochain,
    reps: &[Cochain],
) -> Result<usize> {
    let co = coords_of(group)?;
    let p = co.p;
    let alt = alt_form(mu)?;
    if !alt.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let whole = Subgroup::whole(group);
    let members = whole.members();
    let solve = |target: usize| -> Result<usize> {
        let mut found = None;
        for &y in members {
            if members
                .iter()
                .all(|&x| alt.eval(x, y) == chi.eval(x, target))
            {
                if found.is_some() {
                    return Err(Error::Degenerate);
                }
                found = Some(y);
            }
        }
        found.ok_or(Error::Degenerate)
    };
    let ib1 = solve(co.member_at[p])?;
    let ib2 = solve(co.member_at[1])?;
    let iota: Vec<usize> = (0..p * p)
        .map(|x| {
            let (x1, x2) = co.coords[x];
            group.mul(group.pow(ib1, x1), group.pow(ib2, x2))
        })
        .collect();
    debug_assert!({
        let mut seen = vec![false; iota.len()];
        iota.iter().for_each(|&v| seen[v] = true);
        seen.iter().all(|&s| s)
    });
    let transported = Cochain::from_fn(&whole, 2, |args| {
        UnitRoot::new(-mu.eval(&[iota[args[0]], iota[args[1]]]).exponent().clone())
    });
    identify_class_by_alt(&transported, reps)?.ok_or(Error::Degenerate)
}

/// The pointed module categories over the category: every Lagrangian
/// subgroup, then the whole group with each self-companion nontrivial class.
pub fn pointed_ty_modcats(ty: &TYData) -> Result<Vec<TYModCat>> {
    let whole = Subgroup::whole(&ty.group);
    let reps = h2_representatives(&whole)?;
    let mut out: Vec<TYModCat> = lagrangian_subgroups(&ty.group, &ty.chi)?
        .into_iter()
        .map(TYModCat::Lagrangian)
        .collect();
    for (c, mu) in reps.iter().enumerate().skip(1) {
        if companion_class(&ty.group, &ty.chi, mu, &reps)? == c {
            out.push(TYModCat::Whole {
                class_index: c,
                mu: mu.clone(),
            });
        }
    }
    Ok(out)
}

/// How the automorphism permutes the pointed module categories: Lagrangian
/// subgroups map to their images, whole-group classes to the class of the
/// pullback cochain.
pub fn modcat_permutation(
    ty: &TYData,
    modcats: &[TYModCat],
    t: &GroupMorphism,
) -> Result<Vec<usize>> {
    let whole = Subgroup::whole(&ty.group);
    let reps = h2_representatives(&whole)?;
    let position = |target: &TYModCat| -> Result<usize> {
        for (i, cand) in modcats.iter().enumerate() {
            let hit = match (cand, target) {
                (TYModCat::Lagrangian(a), TYModCat::Lagrangian(b)) => a.members() == b.members(),
                (
                    TYModCat::Whole { class_index: a, .. },
                    TYModCat::Whole { class_index: b, .. },
                ) => a == b,
                _ => false,
            };
            if hit {
                return Ok(i);
            }
        }
        Err(Error::UnsupportedShape(
            "automorphism image is not among the listed module categories".into(),
        ))
    };
    let mut perm = Vec::with_capacity(modcats.len());
    for mc in modcats {
        let image = match mc {
            TYModCat::Lagrangian(l) => {
                let members: Vec<usize> = {
                    let mut v: Vec<usize> = l.members().iter().map(|&x| t.apply(x)).collect();
                    v.sort_unstable();
                    v
                };
                TYModCat::Lagrangian(Subgroup::new(ty.group.clone(), members)?)
            }
            TYModCat::Whole { mu, .. } => {
                let pulled = mu.pullback(t)?;
                let class = identify_class_by_alt(&pulled, &reps)?.ok_or_else(|| {
                    Error::UnsupportedShape("pullback class is not among the representatives".into())
                })?;
                TYModCat::Whole {
                    class_index: class,
                    mu: reps[class].clone(),
                }
            }
        };
        perm.push(position(&image)?);
    }
    Ok(perm)
}

/// The verdict on the order-two equivariantization under the given
/// automorphism: the pointed module categories and how they are permuted,
/// whether any is fixed (equivalently, whether the equivariantization is
/// group-theoretical), the simple-object dimension profile, and the
/// pentagon violation count when the sweep was requested.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub p: usize,
    pub modcats: Vec<TYModCat>,
    pub permutation: Vec<usize>,
    pub fixed_points: Vec<usize>,
    pub group_theoretical: bool,
    pub profile: Vec<(usize, usize)>,
    pub global_dim: usize,
    pub pentagon_violations: Option<usize>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self
            .permutation
            .iter()
            .enumerate()
            .map(|(from, &to)| [from, to])
            .collect();
        let mut s = serializer.serialize_struct("Verdict", 7)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("group_theoretical", &self.group_theoretical)?;
        s.serialize_field("modcat_permutation", &pairs)?;
        s.serialize_field("fixed_points", &self.fixed_points)?;
        s.serialize_field("dimension_profile", &self.profile)?;
        s.serialize_field("fpdim_total", &self.global_dim)?;
        s.serialize_field("pentagon_violations", &self.pentagon_violations)?;
        s.end()
    }
}

/// Runs the full chain for the category and an order-two automorphism:
/// optional pentagon sweep, module-category permutation and fixed points,
/// and the dimension profile of the order-two equivariantization.
pub fn group_theoretical_verdict(
    ty: &TYData,
    t: &GroupMorphism,
    check_pentagon: bool,
) -> Result<Verdict> {
    let pentagon_violations = if check_pentagon {
        let table = f_symbols(ty);
        if !action_invariance_check(&table, t) {
            return Err(Error::NotAnAction(
                "the automorphism does not preserve the associator".into(),
            ));
        }
        Some(pentagon_check(&table).violations.len())
    } else {
        None
    };
    let modcats = pointed_ty_modcats(ty)?;
    let permutation = modcat_permutation(ty, &modcats, t)?;
    let fixed_points: Vec<usize> = permutation
        .iter()
        .enumerate()
        .filter(|&(i, &img)| i == img)
        .map(|(i, _)| i)
        .collect();
    let group_theoretical = !fixed_points.is_empty();
    let ring = ty_ring(&ty.group)?;
    let order_two = GroupTable::cyclic(2)?;
    let m = ty.group.order();
    let mut swap_perm: Vec<usize> = (0..m).map(|x| t.apply(x)).collect();
    swap_perm.push(m);
    let ident: Vec<usize> = (0..=m).collect();
    let action = RingAction::new(&ring, &order_two, vec![ident, swap_perm])?;
    let simples = equivariantization_simples(&action)?;
    let profile = dimension_profile(&simples);
    let global_dim = simples.iter().map(|s| s.dim * s.dim).sum();
    let p = isqrt_exact(m).expect("validated on construction");
    Ok(Verdict {
        p,
        modcats,
        permutation,
        fixed_points,
        group_theoretical,
        pentagon_violations,
        profile,
        global_dim,
    })
}
