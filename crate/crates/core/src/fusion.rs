//! Fusion rings: based rings with nonnegative structure constants, unit
//! and duality, verified on construction. Includes Frobenius-Perron
//! dimensions with exact certification, group rings, the two-orbit ring of
//! an abelian group with one extra object, crossed products by a group
//! action, and the simple-object bookkeeping of equivariantization.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::group::{GroupTable, Subgroup};
use crate::par;
use crate::{Error, Result};

/// Relative tolerance for power iteration convergence.
const FP_TOL: f64 = 1e-9;
/// Iteration cap for the power method.
const FP_MAX_ITERS: usize = 100_000;
/// How close a float dimension must be to an integer before exact
/// certification is attempted.
const FP_INT_TOL: f64 = 1e-6;

/// A fusion ring: finitely many basis objects with structure constants
/// N(x, y; z), a unit, and an involutive duality. All axioms are checked
/// at construction time; associativity exhaustively, in parallel when the
/// `parallel` feature is on.
#[derive(Clone, Debug)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    // Row (x, y) holds the sorted sparse list of (z, N(x, y; z)).
    rows: Vec<Vec<(u32, u32)>>,
}

impl FusionRing {
    /// Build a ring from a structure-constant function returning the
    /// sparse list of (z, multiplicity) pairs for each product x * y.
    pub fn from_fn<F>(labels: Vec<String>, unit: usize, dual: Vec<usize>, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Vec<(usize, u32)>,
    {
        let rank = labels.len();
        if rank == 0 || unit >= rank || dual.len() != rank {
            return Err(Error::RingAxiom("empty ring or malformed unit/duality data".into()));
        }
        for x in 0..rank {
            if dual[x] >= rank || dual[dual[x]] != x {
                return Err(Error::RingAxiom(format!("duality is not an involution at {x}")));
            }
        }
        if dual[unit] != unit {
            return Err(Error::RingAxiom("unit must be self-dual".into()));
        }
        let mut rows = Vec::with_capacity(rank * rank);
        for x in 0..rank {
            for y in 0..rank {
                let mut row: Vec<(u32, u32)> = Vec::new();
                for (z, n) in f(x, y) {
                    if z >= rank {
                        return Err(Error::RingAxiom(format!(
                            "product of {x} and {y} mentions object {z} outside the ring"
                        )));
                    }
                    if n == 0 {
                        continue;
                    }
                    row.push((z as u32, n));
                }
                row.sort_unstable();
                for pair in row.windows(2) {
                    if pair[0].0 == pair[1].0 {
                        return Err(Error::RingAxiom(format!(
                            "duplicate target in product of {x} and {y}"
                        )));
                    }
                }
                rows.push(row);
            }
        }
        let ring = FusionRing { labels, unit, dual, rows };
        ring.check_unit()?;
        ring.check_duality()?;
        ring.check_associativity()?;
        Ok(ring)
    }

    fn check_unit(&self) -> Result<()> {
        for x in 0..self.rank() {
            let left = self.row(self.unit, x);
            let right = self.row(x, self.unit);
            let want = [(x as u32, 1u32)];
            if left != want || right != want {
                return Err(Error::RingAxiom(format!("unit does not act trivially on {x}")));
            }
        }
        Ok(())
    }

    fn check_duality(&self) -> Result<()> {
        for x in 0..self.rank() {
            for y in 0..self.rank() {
                let at_unit = self.coeff(x, y, self.unit);
                let want = u32::from(y == self.dual[x]);
                if at_unit != want {
                    return Err(Error::RingAxiom(format!(
                        "unit multiplicity in product of {x} and {y} is {at_unit}, expected {want}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let rank = self.rank();
        let ok = par::all_indices(rank, |x| {
            let mut lhs = vec![0u64; rank];
            let mut rhs = vec![0u64; rank];
            for y in 0..rank {
                for z in 0..rank {
                    lhs.iter_mut().for_each(|v| *v = 0);
                    rhs.iter_mut().for_each(|v| *v = 0);
                    for &(w, a) in self.row(x, y) {
                        for &(u, b) in self.row(w as usize, z) {
                            lhs[u as usize] += a as u64 * b as u64;
                        }
                    }
                    for &(v, a) in self.row(y, z) {
                        for &(u, b) in self.row(x, v as usize) {
                            rhs[u as usize] += a as u64 * b as u64;
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        });
        if ok {
            Ok(())
        } else {
            Err(Error::RingAxiom("associativity fails".into()))
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual(&self, x: usize) -> usize {
        self.dual[x]
    }

    /// Sparse row of (z, multiplicity) pairs for the product x * y.
    pub fn row(&self, x: usize, y: usize) -> &[(u32, u32)] {
        &self.rows[x * self.rank() + y]
    }

    /// Multiplicity of z in the product x * y.
    pub fn coeff(&self, x: usize, y: usize, z: usize) -> u32 {
        self.row(x, y)
            .iter()
            .find(|&&(w, _)| w as usize == z)
            .map(|&(_, n)| n)
            .unwrap_or(0)
    }

    /// Frobenius-Perron dimensions: the common positive eigenvector of all
    /// left-multiplication matrices, found by power iteration on their sum
    /// (shifted by the identity so periodic rings converge too), then
    /// certified exactly when the float values sit on integers.
    pub fn fp_dims(&self) -> FpDims {
        let rank = self.rank();
        let mut v = vec![1.0f64; rank];
        let mut converged = false;
        for _ in 0..FP_MAX_ITERS {
            let mut next = v.clone();
            for x in 0..rank {
                for j in 0..rank {
                    for &(z, n) in self.row(x, j) {
                        next[j] += n as f64 * v[z as usize];
                    }
                }
            }
            let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
            for a in &mut next {
                *a /= norm;
            }
            let delta = next
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            v = next;
            if delta < FP_TOL {
                converged = true;
                break;
            }
        }
        debug_assert!(converged, "power iteration did not converge");
        let j_star = (0..rank)
            .max_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap())
            .unwrap();
        let approx: Vec<f64> = (0..rank)
            .map(|x| {
                let mut acc = 0.0;
                for &(z, n) in self.row(x, j_star) {
                    acc += n as f64 * v[z as usize];
                }
                acc / v[j_star]
            })
            .collect();
        let exact = self.certify_integer_dims(&approx);
        FpDims { approx, exact }
    }

    /// Exact check that the rounded dimension vector really is the common
    /// positive eigenvector: for all x, j the relation
    /// sum_z N(x, j; z) k_z = k_x k_j must hold in integers.
    fn certify_integer_dims(&self, approx: &[f64]) -> Option<Vec<usize>> {
        let rank = self.rank();
        let mut k = Vec::with_capacity(rank);
        for &d in approx {
            let r = d.round();
            if (d - r).abs() > FP_INT_TOL || r < 1.0 {
                return None;
            }
            k.push(r as u64);
        }
        if k[self.unit] != 1 {
            return None;
        }
        for x in 0..rank {
            for j in 0..rank {
                let lhs: u128 = self
                    .row(x, j)
                    .iter()
                    .map(|&(z, n)| n as u128 * k[z as usize] as u128)
                    .sum();
                if lhs != k[x] as u128 * k[j] as u128 {
                    return None;
                }
            }
        }
        Some(k.into_iter().map(|d| d as usize).collect())
    }
}

/// Frobenius-Perron dimensions of a ring: float estimates for every
/// object, plus the exactly certified integer vector when one exists.
#[derive(Clone, Debug)]
pub struct FpDims {
    pub approx: Vec<f64>,
    pub exact: Option<Vec<usize>>,
}

impl Serialize for FusionRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tuples: Vec<(usize, usize, usize, u32)> = Vec::new();
        for x in 0..self.rank() {
            for y in 0..self.rank() {
                for &(z, n) in self.row(x, y) {
                    tuples.push((x, y, z as usize, n));
                }
            }
        }
        let mut s = serializer.serialize_struct("FusionRing", 4)?;
        s.serialize_field("labels", &self.labels)?;
        s.serialize_field("unit", &self.unit)?;
        s.serialize_field("dual", &self.dual)?;
        s.serialize_field("N", &tuples)?;
        s.end()
    }
}

/// The based ring of a finite group: one invertible object per element.
pub fn group_ring(g: &GroupTable) -> Result<FusionRing> {
    let labels = g.labels().to_vec();
    let unit = g.identity();
    let dual = (0..g.order()).map(|x| g.inv(x)).collect();
    FusionRing::from_fn(labels, unit, dual, |x, y| vec![(g.mul(x, y), 1)])
}

/// The fusion ring with one basis object per element of an abelian group
/// plus a single extra object m: group elements multiply in the group,
/// a * m = m * a = m, and m * m is the sum of all group elements.
pub fn ty_ring(a: &GroupTable) -> Result<FusionRing> {
    if !a.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let n = a.order();
    let mut labels = a.labels().to_vec();
    labels.push("m".into());
    let mut dual: Vec<usize> = (0..n).map(|x| a.inv(x)).collect();
    dual.push(n);
    FusionRing::from_fn(labels, a.identity(), dual, |x, y| {
        if x < n && y < n {
            vec![(a.mul(x, y), 1)]
        } else if x == n && y == n {
            (0..n).map(|z| (z, 1)).collect()
        } else {
            vec![(n, 1)]
        }
    })
}

/// An action of a finite group on a fusion ring by ring automorphisms,
/// stored as one basis permutation per group element.
#[derive(Clone, Debug)]
pub struct RingAction {
    ring: FusionRing,
    group: GroupTable,
    perms: Vec<Vec<usize>>,
}

impl RingAction {
    /// Validate that every permutation is a ring automorphism and that the
    /// assignment is a group homomorphism with the identity acting
    /// trivially.
    pub fn new(ring: &FusionRing, group: &GroupTable, perms: Vec<Vec<usize>>) -> Result<Self> {
        let rank = ring.rank();
        if perms.len() != group.order() {
            return Err(Error::NotAnAction("one permutation per group element required".into()));
        }
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != rank {
                return Err(Error::NotAnAction(format!("permutation {g} has the wrong length")));
            }
            let mut seen = vec![false; rank];
            for &image in perm {
                if image >= rank || seen[image] {
                    return Err(Error::NotAnAction(format!("entry {g} is not a permutation")));
                }
                seen[image] = true;
            }
            for x in 0..rank {
                for y in 0..rank {
                    for &(z, n) in ring.row(x, y) {
                        if ring.coeff(perm[x], perm[y], perm[z as usize]) != n {
                            return Err(Error::NotAnAction(format!(
                                "permutation {g} does not preserve structure constants"
                            )));
                        }
                    }
                }
            }
        }
        let e = group.identity();
        if perms[e] != (0..rank).collect::<Vec<usize>>() {
            return Err(Error::NotAnAction("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for x in 0..rank {
                    if perms[gh][x] != perms[g][perms[h][x]] {
                        return Err(Error::NotAnAction(format!(
                            "permutations are not a homomorphism at ({g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(RingAction { ring: ring.clone(), group: group.clone(), perms })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    /// Orbit of a basis object under the whole group, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.perms[g][x]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// Stabilizer of a basis object, as a subgroup of the acting group.
    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> =
            (0..self.group.order()).filter(|&g| self.perms[g][x] == x).collect();
        Subgroup::new(self.group.clone(), members).expect("stabilizers are subgroups")
    }
}

/// The crossed product ring of an action: basis objects are pairs
/// (x, g), with (x, g) * (y, h) = sum over z of N(x, g(y); z) (z, gh) and
/// dual (x, g)* = (g^{-1}(x*), g^{-1}).
pub fn crossed_product_ring(action: &RingAction) -> Result<FusionRing> {
    let r = action.ring();
    let grp = action.group();
    let rank = r.rank();
    let mut labels = Vec::with_capacity(rank * grp.order());
    for g in 0..grp.order() {
        for x in 0..rank {
            labels.push(format!("({}, {})", r.label(x), grp.label(g)));
        }
    }
    let unit = grp.identity() * rank + r.unit();
    let dual: Vec<usize> = (0..rank * grp.order())
        .map(|i| {
            let (g, x) = (i / rank, i % rank);
            let ginv = grp.inv(g);
            ginv * rank + action.apply(ginv, r.dual(x))
        })
        .collect();
    FusionRing::from_fn(labels, unit, dual, |i, j| {
        let (g, x) = (i / rank, i % rank);
        let (h, y) = (j / rank, j % rank);
        let gh = grp.mul(g, h);
        r.row(x, action.apply(g, y))
            .iter()
            .map(|&(z, n)| (gh * rank + z as usize, n))
            .collect()
    })
}

/// One simple object of an equivariantization, before any categorical
/// data: an orbit of basis objects together with a character of the
/// (abelian) stabilizer, each contributing dimension orbit length times
/// the dimension of the underlying object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivSimple {
    /// Smallest object in the orbit.
    pub orbit_rep: usize,
    pub orbit_len: usize,
    pub stabilizer_order: usize,
    pub dim: usize,
}

impl Serialize for EquivSimple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EquivSimple", 4)?;
        s.serialize_field("orbit_rep", &self.orbit_rep)?;
        s.serialize_field("orbit_len", &self.orbit_len)?;
        s.serialize_field("stabilizer_order", &self.stabilizer_order)?;
        s.serialize_field("dim", &self.dim)?;
        s.end()
    }
}

/// Simple objects of the equivariantization of a ring action: one per
/// (orbit, stabilizer character) pair, with exact dimensions. Requires
/// every stabilizer to be abelian and the ring dimensions to certify as
/// integers. The squared dimensions are checked to sum to group order
/// times ring global dimension; any failure is a hard error.
pub fn equivariantization_simples(action: &RingAction) -> Result<Vec<EquivSimple>> {
    let ring = action.ring();
    let dims = ring
        .fp_dims()
        .exact
        .ok_or_else(|| Error::UnsupportedShape("ring dimensions are not integers".into()))?;
    let mut seen = vec![false; ring.rank()];
    let mut simples = Vec::new();
    for x in 0..ring.rank() {
        if seen[x] {
            continue;
        }
        let orbit = action.orbit(x);
        for &y in &orbit {
            seen[y] = true;
        }
        let stab = action.stabilizer(x);
        if !stab.is_abelian() {
            return Err(Error::StabilizerUnsupported);
        }
        for _ in 0..stab.order() {
            simples.push(EquivSimple {
                orbit_rep: x,
                orbit_len: orbit.len(),
                stabilizer_order: stab.order(),
                dim: orbit.len() * dims[x],
            });
        }
    }
    let total: usize = simples.iter().map(|s| s.dim * s.dim).sum();
    let ring_global: usize = dims.iter().map(|d| d * d).sum();
    let expected = action.group().order() * ring_global;
    if total != expected {
        return Err(Error::ProfileMismatch(format!(
            "squared dimensions sum to {total}, expected {expected}"
        )));
    }
    Ok(simples)
}

/// Multiset of dimensions as sorted (dim, count) pairs.
pub fn dimension_profile(simples: &[EquivSimple]) -> Vec<(usize, usize)> {
    let mut dims: Vec<usize> = simples.iter().map(|s| s.dim).collect();
    dims.sort_unstable();
    let mut profile: Vec<(usize, usize)> = Vec::new();
    for d in dims {
        match profile.last_mut() {
            Some((dim, count)) if *dim == d => *count += 1,
            _ => profile.push((d, 1)),
        }
    }
    profile
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::rank2_elementary;

    #[test]
    fn group_ring_has_unit_dimensions() {
        let g = GroupTable::dihedral(6).unwrap();
        let ring = group_ring(&g).unwrap();
        assert_eq!(ring.rank(), 6);
        let dims = ring.fp_dims();
        assert_eq!(dims.exact, Some(vec![1; 6]));
        for (x, d) in dims.approx.iter().enumerate() {
            assert!((d - 1.0).abs() < 1e-7, "object {x}");
        }
    }

    #[test]
    fn two_orbit_ring_shape_and_dims() {
        for p in [3usize, 5] {
            let a = rank2_elementary(p).unwrap();
            let ring = ty_ring(&a).unwrap();
            let n = p * p;
            assert_eq!(ring.rank(), n + 1);
            assert_eq!(ring.label(n), "m");
            // m * m covers the group once.
            assert_eq!(ring.row(n, n).len(), n);
            assert!((0..n).all(|z| ring.coeff(n, n, z) == 1));
            let dims = ring.fp_dims();
            let mut expected = vec![1usize; n];
            expected.push(p);
            assert_eq!(dims.exact, Some(expected));
            // Float estimates satisfy the product relation.
            for x in 0..=n {
                for y in 0..=n {
                    let sum: f64 = ring
                        .row(x, y)
                        .iter()
                        .map(|&(z, c)| c as f64 * dims.approx[z as usize])
                        .sum();
                    assert!((sum - dims.approx[x] * dims.approx[y]).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn golden_ring_dims_are_irrational() {
        // Two objects with x * x = 1 + x: dimensions 1 and the golden
        // ratio, so no integer certification.
        let ring = FusionRing::from_fn(
            vec!["1".into(), "x".into()],
            0,
            vec![0, 1],
            |x, y| match (x, y) {
                (1, 1) => vec![(0, 1), (1, 1)],
                (0, z) | (z, 0) => vec![(z, 1)],
                _ => unreachable!(),
            },
        )
        .unwrap();
        let dims = ring.fp_dims();
        assert!(dims.exact.is_none());
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((dims.approx[1] - golden).abs() < 1e-7);
    }

    #[test]
    fn broken_axioms_are_rejected() {
        // Non-involutive duality.
        let err = FusionRing::from_fn(vec!["1".into()], 0, vec![1], |_, _| vec![(0, 1)]);
        assert!(matches!(err, Err(Error::RingAxiom(_))));
        // Unit not acting trivially.
        let err = FusionRing::from_fn(
            vec!["1".into(), "x".into()],
            0,
            vec![0, 1],
            |_, _| vec![(1, 1)],
        );
        assert!(matches!(err, Err(Error::RingAxiom(_))));
        // Duality inconsistent with the unit coefficient.
        let err = FusionRing::from_fn(
            vec!["1".into(), "x".into()],
            0,
            vec![0, 1],
            |x, y| match (x, y) {
                (1, 1) => vec![(1, 1)],
                (0, z) | (z, 0) => vec![(z, 1)],
                _ => unreachable!(),
            },
        );
        assert!(matches!(err, Err(Error::RingAxiom(_))));
        // Associativity failure: x * x = 1 + 2x is inconsistent.
        let err = FusionRing::from_fn(
            vec!["1".into(), "x".into(), "y".into()],
            0,
            vec![0, 2, 1],
            |x, y| match (x, y) {
                (0, z) | (z, 0) => vec![(z, 1)],
                (1, 2) | (2, 1) => vec![(0, 1)],
                (1, 1) => vec![(2, 1), (1, 1)],
                (2, 2) => vec![(1, 1)],
                _ => unreachable!(),
            },
        );
        assert!(matches!(err, Err(Error::RingAxiom(_))));
    }

    fn swap_action(p: usize) -> RingAction {
        let a = rank2_elementary(p).unwrap();
        let ring = ty_ring(&a).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let n = p * p;
        let ident: Vec<usize> = (0..=n).collect();
        let mut swap: Vec<usize> = (0..n).map(|i| (i % p) * p + i / p).collect();
        swap.push(n);
        RingAction::new(&ring, &z2, vec![ident, swap]).unwrap()
    }

    #[test]
    fn action_validation_rejects_non_automorphisms() {
        let a = rank2_elementary(3).unwrap();
        let ring = ty_ring(&a).unwrap();
        let z2 = GroupTable::cyclic(2).unwrap();
        let ident: Vec<usize> = (0..10).collect();
        // Swapping the unit with another group element breaks the unit row.
        let mut bad = ident.clone();
        bad.swap(0, 1);
        assert!(matches!(
            RingAction::new(&ring, &z2, vec![ident.clone(), bad]),
            Err(Error::NotAnAction(_))
        ));
        // An order-4 permutation under a Z/2 label set is not a
        // homomorphism even though each entry is an automorphism.
        let a4 = GroupTable::cyclic(4).unwrap();
        let ring4 = group_ring(&a4).unwrap();
        let shift: Vec<usize> = (0..4).map(|i| (i + 1) % 4).collect();
        let ident4: Vec<usize> = (0..4).collect();
        assert!(matches!(
            RingAction::new(&ring4, &z2, vec![ident4, shift]),
            Err(Error::NotAnAction(_))
        ));
    }

    #[test]
    fn crossed_product_doubles_the_ring() {
        let action = swap_action(3);
        let crossed = crossed_product_ring(&action).unwrap();
        assert_eq!(crossed.rank(), 20);
        let dims = crossed.fp_dims();
        let exact = dims.exact.unwrap();
        let mut sorted = exact.clone();
        sorted.sort_unstable();
        let mut expected = vec![1usize; 18];
        expected.extend([3, 3]);
        assert_eq!(sorted, expected);
        // Global dimension doubles: 2 * (9 + 9) = 36.
        assert_eq!(exact.iter().map(|d| d * d).sum::<usize>(), 36);
    }

    #[test]
    fn equivariantization_profile_matches_orbit_count() {
        for p in [3usize, 5] {
            let action = swap_action(p);
            let simples = equivariantization_simples(&action).unwrap();
            let profile = dimension_profile(&simples);
            assert_eq!(
                profile,
                vec![(1, 2 * p), (2, p * (p - 1) / 2), (p, 2)],
                "p = {p}"
            );
            let total: usize = simples.iter().map(|s| s.dim * s.dim).sum();
            assert_eq!(total, 4 * p * p);
        }
    }

    #[test]
    fn nonabelian_stabilizers_are_refused() {
        let unit_ring =
            FusionRing::from_fn(vec!["1".into()], 0, vec![0], |_, _| vec![(0, 1)]).unwrap();
        let d6 = GroupTable::dihedral(6).unwrap();
        let perms = vec![vec![0usize]; 6];
        let action = RingAction::new(&unit_ring, &d6, perms).unwrap();
        assert!(matches!(
            equivariantization_simples(&action).unwrap_err(),
            Error::StabilizerUnsupported
        ));
    }
}
