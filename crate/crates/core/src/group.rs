//! Finite groups as explicit multiplication tables.
//!
//! Every group here is a table: elements are indices `0..n`, multiplication is
//! a lookup, and labels are stable human-readable strings. Constructors verify
//! the group axioms exhaustively up to order 256 and by seeded random sampling
//! above that. Tables are immutable and cheaply clonable (shared storage), so
//! everything downstream can treat groups as values.

use crate::{Error, Result};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::HashSet;
use std::sync::Arc;

/// Largest order for which associativity is checked on all triples.
const EXHAUSTIVE_ASSOC_CAP: usize = 256;
/// Number of random triples sampled when the exhaustive check is skipped.
const SAMPLED_ASSOC_TRIPLES: usize = 20_000;
/// Default cap on group order for subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 2000;

#[derive(Debug, PartialEq, Eq)]
struct GroupInner {
    order: usize,
    /// Flattened row-major table: `mult[x * order + y] = x * y`.
    mult: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Vec<String>,
}

/// An immutable finite group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    inner: Arc<GroupInner>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for GroupTable {}

impl GroupTable {
    /// Builds a group from labels and a nested multiplication table, verifying
    /// identity, inverses, and associativity.
    pub fn from_table(labels: Vec<String>, mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!(
                "table must be {n}x{n} to match {n} labels"
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &mult {
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        Self::from_flat(labels, flat)
    }

    fn from_flat(labels: Vec<String>, mult: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        debug_assert_eq!(mult.len(), n * n);
        // Identity: the unique e with e*x = x*e = x for all x.
        let mut identity = None;
        'outer: for e in 0..n {
            for x in 0..n {
                if mult[e * n + x] != x || mult[x * n + e] != x {
                    continue 'outer;
                }
            }
            identity = Some(e);
            break;
        }
        let identity =
            identity.ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        // Inverses: for each x a y with x*y = y*x = e.
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if mult[x * n + y] == identity && mult[y * n + x] == identity {
                    inv[x] = y;
                    break;
                }
            }
            if inv[x] == usize::MAX {
                return Err(Error::InvalidTable(format!(
                    "element {} has no two-sided inverse",
                    labels[x]
                )));
            }
        }
        // Associativity: exhaustive for small orders, seeded sampling above.
        let check = |x: usize, y: usize, z: usize| -> bool {
            mult[mult[x * n + y] * n + z] == mult[x * n + mult[y * n + z]]
        };
        if n <= EXHAUSTIVE_ASSOC_CAP {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !check(x, y, z) {
                            return Err(Error::InvalidTable(format!(
                                "({} {}) {} != {} ({} {})",
                                labels[x], labels[y], labels[z], labels[x], labels[y], labels[z]
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_a550c);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(x, y, z) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at sampled triple ({x}, {y}, {z})"
                    )));
                }
            }
        }
        Ok(GroupTable {
            inner: Arc::new(GroupInner {
                order: n,
                mult,
                identity,
                inv,
                labels,
            }),
        })
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.inner.mult[x * self.inner.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inner.inv[x]
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    /// x * y * x^{-1}
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity() {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1usize, |l, x| num_integer::lcm(l, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// True iff the group is (Z/p)^k for the given prime p (including k = 0).
    pub fn is_elementary_abelian(&self, p: usize) -> bool {
        self.is_abelian()
            && (0..self.order())
                .all(|x| x == self.identity() || self.element_order(x) == p)
    }

    /// Cyclic group Z/n with labels "0".."n-1".
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut mult = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                mult.push((i + j) % n);
            }
        }
        Self::from_flat(labels, mult)
    }

    /// Dihedral group of order `two_p` (even, >= 2). Elements are rotations
    /// `r{k}` and reflections `sr{k}`; the defining relation is s r s = r^{-1}.
    pub fn dihedral(two_p: usize) -> Result<Self> {
        if two_p < 2 || two_p % 2 != 0 {
            return Err(Error::InvalidTable(format!(
                "dihedral order must be even and >= 2, got {two_p}"
            )));
        }
        let p = two_p / 2;
        let idx = |eps: usize, k: usize| eps * p + k;
        let mut labels = vec![String::new(); two_p];
        for k in 0..p {
            labels[idx(0, k)] = format!("r{k}");
            labels[idx(1, k)] = format!("sr{k}");
        }
        let mut mult = vec![0usize; two_p * two_p];
        for a in 0..2 {
            for i in 0..p {
                for b in 0..2 {
                    for j in 0..p {
                        // (s^a r^i)(s^b r^j) = s^{a+b} r^{(-1)^b i + j}
                        let eps = (a + b) % 2;
                        let k = if b == 0 { (i + j) % p } else { (p - i + j) % p };
                        mult[idx(a, i) * two_p + idx(b, j)] = idx(eps, k);
                    }
                }
            }
        }
        Self::from_flat(labels, mult)
    }

    /// Direct product; element (a, b) has index `a * |b-group| + b` and label
    /// "(la,lb)".
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut labels = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                labels.push(format!("({},{})", a.label(i), b.label(j)));
            }
        }
        let mut mult = vec![0usize; n * n];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        let x = i1 * nb + j1;
                        let y = i2 * nb + j2;
                        mult[x * n + y] = a.mul(i1, i2) * nb + b.mul(j1, j2);
                    }
                }
            }
        }
        Self::from_flat(labels, mult)
    }

    /// Semidirect product N x| H for an action of `h` on `n` by automorphisms:
    /// `act[x]` is the automorphism of `n` attached to the H-element `x`.
    /// Multiplication: (a, x)(b, y) = (a * act[x](b), x y).
    pub fn semidirect(n: &GroupTable, h: &GroupTable, act: &[GroupMorphism]) -> Result<Self> {
        if act.len() != h.order() {
            return Err(Error::NotAnAction(format!(
                "need one automorphism per element of the acting group ({} given, {} needed)",
                act.len(),
                h.order()
            )));
        }
        for (x, m) in act.iter().enumerate() {
            if m.source() != n || m.target() != n {
                return Err(Error::NotAnAction(format!(
                    "automorphism for element {x} does not act on the normal factor"
                )));
            }
            if !m.is_bijective() {
                return Err(Error::NotAnAction(format!(
                    "map for element {x} is not bijective"
                )));
            }
        }
        for a in 0..n.order() {
            if act[h.identity()].apply(a) != a {
                return Err(Error::NotAnAction(
                    "identity of the acting group must act trivially".into(),
                ));
            }
        }
        for x in 0..h.order() {
            for y in 0..h.order() {
                let xy = h.mul(x, y);
                for a in 0..n.order() {
                    if act[xy].apply(a) != act[x].apply(act[y].apply(a)) {
                        return Err(Error::NotAnAction(format!(
                            "action is not a homomorphism at pair ({x}, {y})"
                        )));
                    }
                }
            }
        }
        let (nn, nh) = (n.order(), h.order());
        let total = nn * nh;
        let idx = |a: usize, x: usize| a * nh + x;
        let mut labels = Vec::with_capacity(total);
        for a in 0..nn {
            for x in 0..nh {
                labels.push(format!("({},{})", n.label(a), h.label(x)));
            }
        }
        let mut mult = vec![0usize; total * total];
        for a in 0..nn {
            for x in 0..nh {
                for b in 0..nn {
                    for y in 0..nh {
                        let prod = idx(n.mul(a, act[x].apply(b)), h.mul(x, y));
                        mult[idx(a, x) * total + idx(b, y)] = prod;
                    }
                }
            }
        }
        Self::from_flat(labels, mult)
    }

    /// Closure of a subset under multiplication (a subgroup, since the group
    /// is finite). Returns sorted member indices; the empty set closes to {e}.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut member = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();
        let push = |member: &mut Vec<bool>,
                        members: &mut Vec<usize>,
                        frontier: &mut Vec<usize>,
                        x: usize| {
            if !member[x] {
                member[x] = true;
                members.push(x);
                frontier.push(x);
            }
        };
        push(&mut member, &mut members, &mut frontier, self.identity());
        for &g in gens {
            push(&mut member, &mut members, &mut frontier, g);
        }
        while let Some(f) = frontier.pop() {
            // Snapshot length: products with elements added later are reached
            // when those elements leave the frontier themselves.
            for i in 0..members.len() {
                let m = members[i];
                for p in [self.mul(f, m), self.mul(m, f)] {
                    push(&mut member, &mut members, &mut frontier, p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut closed = self.closure(&[]);
        for x in 0..self.order() {
            if closed.binary_search(&x).is_err() {
                gens.push(x);
                closed = self.closure(&gens);
                if closed.len() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Conjugacy classes as sorted element lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Centralizer of `x` as a subgroup.
    pub fn centralizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&y| self.mul(x, y) == self.mul(y, x))
            .collect();
        Subgroup::from_members_unchecked(self.clone(), members)
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&y| (0..self.order()).all(|x| self.mul(x, y) == self.mul(y, x)))
            .collect();
        Subgroup::from_members_unchecked(self.clone(), members)
    }
}

impl Serialize for GroupTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.order();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| self.mul(x, y)).collect())
            .collect();
        let mut s = serializer.serialize_struct("GroupTable", 3)?;
        s.serialize_field("order", &n)?;
        s.serialize_field("mult", &rows)?;
        s.serialize_field("labels", &self.inner.labels)?;
        s.end()
    }
}

/// A subgroup, stored as the parent table plus sorted member indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupTable,
    members: Vec<usize>,
    /// Dense map parent index -> position in `members`, usize::MAX if absent.
    local: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps a member list known to be closed (callers inside this module).
    fn from_members_unchecked(parent: GroupTable, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut local = vec![usize::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        Subgroup {
            parent,
            members,
            local,
        }
    }

    /// Builds a subgroup from a member list, verifying closure under
    /// multiplication and inverses.
    pub fn new(parent: GroupTable, members: Vec<usize>) -> Result<Self> {
        let sg = Self::from_members_unchecked(parent, members);
        if sg.members.is_empty() {
            return Err(Error::NotASubgroup("empty member set".into()));
        }
        for &x in &sg.members {
            if x >= sg.parent.order() {
                return Err(Error::NotASubgroup(format!("index {x} out of range")));
            }
            if !sg.contains(sg.parent.inv(x)) {
                return Err(Error::NotASubgroup(format!(
                    "missing inverse of {}",
                    sg.parent.label(x)
                )));
            }
            for &y in &sg.members {
                if !sg.contains(sg.parent.mul(x, y)) {
                    return Err(Error::NotASubgroup(format!(
                        "not closed: {} * {} falls outside",
                        sg.parent.label(x),
                        sg.parent.label(y)
                    )));
                }
            }
        }
        Ok(sg)
    }

    pub fn generated(parent: &GroupTable, gens: &[usize]) -> Self {
        let members = parent.closure(gens);
        Self::from_members_unchecked(parent.clone(), members)
    }

    pub fn trivial(parent: &GroupTable) -> Self {
        Self::from_members_unchecked(parent.clone(), vec![parent.identity()])
    }

    pub fn whole(parent: &GroupTable) -> Self {
        Self::from_members_unchecked(parent.clone(), (0..parent.order()).collect())
    }

    pub fn parent(&self) -> &GroupTable {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.local[x] != usize::MAX
    }

    /// Position of a parent element within the sorted member list.
    #[inline]
    pub fn local_index(&self, x: usize) -> Option<usize> {
        match self.local[x] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.members.iter().all(|&x| {
            self.members
                .iter()
                .all(|&y| self.parent.mul(x, y) == self.parent.mul(y, x))
        })
    }

    pub fn is_cyclic(&self) -> bool {
        self.members
            .iter()
            .any(|&x| self.parent.element_order(x) == self.order())
    }

    pub fn is_elementary_abelian(&self, p: usize) -> bool {
        self.is_abelian()
            && self
                .members
                .iter()
                .all(|&x| x == self.parent.identity() || self.parent.element_order(x) == p)
    }

    pub fn exponent(&self) -> usize {
        self.members
            .iter()
            .fold(1usize, |l, &x| num_integer::lcm(l, self.parent.element_order(x)))
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order())
            .all(|g| self.members.iter().all(|&x| self.contains(self.parent.conj(g, x))))
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let members: Vec<usize> = self.members.iter().map(|&x| self.parent.conj(g, x)).collect();
        Self::from_members_unchecked(self.parent.clone(), members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        debug_assert!(self.parent == other.parent);
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Self::from_members_unchecked(self.parent.clone(), members)
    }

    /// The set {h k : h in self, k in other}, sorted and deduplicated.
    pub fn set_product(&self, other: &Subgroup) -> Vec<usize> {
        debug_assert!(self.parent == other.parent);
        let mut out: Vec<usize> = self
            .members
            .iter()
            .flat_map(|&h| other.members.iter().map(move |&k| (h, k)))
            .map(|(h, k)| self.parent.mul(h, k))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Conjugacy classes of this subgroup as an abstract group (conjugation by
    /// members only), as sorted parent-index lists.
    pub fn conjugacy_classes_within(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for (i, &x) in self.members.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut class: Vec<usize> =
                self.members.iter().map(|&g| self.parent.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[self.local_index(y).expect("class stays inside the subgroup")] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Members commuting with `x` (an element of the subgroup).
    pub fn centralizer_within(&self, x: usize) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&y| self.parent.mul(x, y) == self.parent.mul(y, x))
            .collect()
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subgroup", 1)?;
        s.serialize_field("members", &self.members)?;
        s.end()
    }
}

/// Enumerates all subgroups with the default order cap.
pub fn subgroups(g: &GroupTable) -> Result<Vec<Subgroup>> {
    subgroups_with_cap(g, SUBGROUP_ENUM_CAP)
}

/// Enumerates all subgroups of `g` by closing generator sets, smallest first.
/// Deterministic: sorted by (order, member list).
pub fn subgroups_with_cap(g: &GroupTable, cap: usize) -> Result<Vec<Subgroup>> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "group order for subgroup enumeration",
            actual: g.order(),
            limit: cap,
        });
    }
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let trivial = g.closure(&[]);
    found.insert(trivial.clone());
    let mut work = vec![trivial];
    while let Some(current) = work.pop() {
        for x in 0..g.order() {
            if current.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = current.clone();
            gens.push(x);
            let bigger = g.closure(&gens);
            if found.insert(bigger.clone()) {
                work.push(bigger);
            }
        }
    }
    let mut lists: Vec<Vec<usize>> = found.into_iter().collect();
    lists.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(lists
        .into_iter()
        .map(|members| Subgroup::from_members_unchecked(g.clone(), members))
        .collect())
}

/// All normal abelian subgroups, in the same deterministic order as
/// [`subgroups`].
pub fn normal_abelian_subgroups(g: &GroupTable) -> Result<Vec<Subgroup>> {
    Ok(subgroups(g)?
        .into_iter()
        .filter(|s| s.is_abelian() && s.is_normal())
        .collect())
}

/// (H1, H2)-double cosets as sorted element lists. Cosets are ordered by their
/// smallest element, which is also the representative.
pub fn double_cosets(g: &GroupTable, h1: &Subgroup, h2: &Subgroup) -> Vec<Vec<usize>> {
    debug_assert!(h1.parent() == g && h2.parent() == g);
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut cosets = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut coset: Vec<usize> = h1
            .members()
            .iter()
            .flat_map(|&a| h2.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(a, x), b))
            .collect();
        coset.sort_unstable();
        coset.dedup();
        for &y in &coset {
            assigned[y] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// A homomorphism between explicit groups, stored as the image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    source: GroupTable,
    target: GroupTable,
    image: Vec<usize>,
}

impl GroupMorphism {
    /// Verifies the homomorphism property on all pairs.
    pub fn new(source: GroupTable, target: GroupTable, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.order() || image.iter().any(|&v| v >= target.order()) {
            return Err(Error::InvalidTable(
                "image list does not match the source/target orders".into(),
            ));
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if image[source.mul(x, y)] != target.mul(image[x], image[y]) {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(GroupMorphism {
            source,
            target,
            image,
        })
    }

    pub fn identity(g: &GroupTable) -> Self {
        GroupMorphism {
            source: g.clone(),
            target: g.clone(),
            image: (0..g.order()).collect(),
        }
    }

    /// Conjugation y -> g y g^{-1} as an automorphism of the whole group.
    pub fn conjugation(g: &GroupTable, x: usize) -> Self {
        GroupMorphism {
            source: g.clone(),
            target: g.clone(),
            image: (0..g.order()).map(|y| g.conj(x, y)).collect(),
        }
    }

    pub fn source(&self) -> &GroupTable {
        &self.source
    }

    pub fn target(&self) -> &GroupTable {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.image {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.image.len() == self.target.order()
    }

    /// self after other: x -> self(other(x)).
    pub fn compose(&self, other: &GroupMorphism) -> Result<GroupMorphism> {
        if other.target != self.source {
            return Err(Error::SupportMismatch);
        }
        Ok(GroupMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Result<GroupMorphism> {
        if !self.is_bijective() {
            return Err(Error::InvalidTable("morphism is not bijective".into()));
        }
        let mut image = vec![0usize; self.target.order()];
        for (x, &v) in self.image.iter().enumerate() {
            image[v] = x;
        }
        Ok(GroupMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            image,
        })
    }
}

/// The elementary abelian group (Z/p)^2 with element (x, y) at index x*p + y.
pub fn rank2_elementary(p: usize) -> Result<GroupTable> {
    let zp = GroupTable::cyclic(p)?;
    GroupTable::direct_product(&zp, &zp)
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// All automorphisms of (Z/p)^2 for an odd prime p, i.e. GL(2, p) acting by
/// (x, y) -> (a x + b y, c x + d y). Order (p^2 - 1)(p^2 - p).
pub fn automorphisms_rank2_elementary(p: usize) -> Result<Vec<GroupMorphism>> {
    if !is_odd_prime(p) {
        return Err(Error::NotAnOddPrime(p));
    }
    let g = rank2_elementary(p)?;
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d) % p == (b * c) % p {
                        // det = ad - bc = 0 mod p: singular, skip.
                        continue;
                    }
                    let image: Vec<usize> = (0..p * p)
                        .map(|xy| {
                            let (x, y) = (xy / p, xy % p);
                            ((a * x + b * y) % p) * p + (c * x + d * y) % p
                        })
                        .collect();
                    let m = GroupMorphism {
                        source: g.clone(),
                        target: g.clone(),
                        image,
                    };
                    debug_assert!(m.is_bijective());
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}
