//! Module categories over a based group with associator, described by a
//! subgroup and a compatible 2-cochain, and the invariants built from them:
//! functor category ranks by double coset, simples of the dual category,
//! fiber functor search, and the census of pointed module categories of the
//! dual together with their ranks.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::cochain::{
    h2_representatives, is_invariant_class, is_nondegenerate, trivializing_witness,
    twisted_intersection_cocycle, Cochain,
};
use crate::group::{
    double_cosets, normal_abelian_subgroups, subgroups, GroupMorphism, GroupTable, Subgroup,
};
use crate::par;
use crate::projrep::{count_proj_irreps, proj_irrep_degrees_abelian};
use crate::{Error, Result};

/// One module category over a fixed base: the ambient group with a
/// 3-cocycle associator, a subgroup, and a 2-cochain on the subgroup whose
/// coboundary matches the restricted associator.
#[derive(Clone, Debug)]
pub struct ModCatDescriptor {
    group: GroupTable,
    omega: Cochain,
    subgroup: Subgroup,
    mu: Cochain,
}

impl ModCatDescriptor {
    /// Validate and build a descriptor. The associator must be a 3-cochain
    /// on the whole group, the 2-cochain must live on `subgroup`, and the
    /// compatibility condition (coboundary of mu) = (omega restricted to
    /// the subgroup) must hold exactly.
    pub fn new(
        group: &GroupTable,
        omega: &Cochain,
        subgroup: &Subgroup,
        mu: &Cochain,
    ) -> Result<Self> {
        if omega.arity() != 3 || !omega.support().is_whole() || omega.group() != group {
            return Err(Error::SupportMismatch);
        }
        if mu.arity() != 2 || mu.support() != subgroup || subgroup.parent() != group {
            return Err(Error::SupportMismatch);
        }
        let delta = mu.coboundary()?;
        let target = omega.restrict(subgroup)?;
        if delta != target {
            let args = first_mismatch(&delta, &target, subgroup);
            return Err(Error::NotACocycle { args });
        }
        Ok(ModCatDescriptor {
            group: group.clone(),
            omega: omega.clone(),
            subgroup: subgroup.clone(),
            mu: mu.clone(),
        })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn multiplier(&self) -> &Cochain {
        &self.mu
    }

    fn same_base(&self, other: &ModCatDescriptor) -> bool {
        self.group == other.group && self.omega == other.omega
    }
}

fn first_mismatch(delta: &Cochain, target: &Cochain, subgroup: &Subgroup) -> Vec<usize> {
    for &x in subgroup.members() {
        for &y in subgroup.members() {
            for &z in subgroup.members() {
                if delta.eval(&[x, y, z]) != target.eval(&[x, y, z]) {
                    return vec![x, y, z];
                }
            }
        }
    }
    Vec::new()
}

impl Serialize for ModCatDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ModCatDescriptor", 3)?;
        s.serialize_field("subgroup", &self.subgroup)?;
        s.serialize_field("mu", &self.mu)?;
        if self.omega.is_trivial() {
            s.serialize_field("omega", "trivial")?;
        } else {
            s.serialize_field("omega", &self.omega)?;
        }
        s.end()
    }
}

/// Whether two descriptors over the same base present equivalent module
/// categories: some ambient element conjugates one subgroup onto the other
/// carrying the first 2-cochain, up to coboundary and associator
/// correction, onto the second. Returns that element as the witness, or
/// `None` when no element works. Descriptors over different bases are not
/// comparable.
pub fn equivalent_descriptors(
    a: &ModCatDescriptor,
    b: &ModCatDescriptor,
) -> Result<Option<usize>> {
    if !a.same_base(b) {
        return Err(Error::SupportMismatch);
    }
    if a.subgroup.order() != b.subgroup.order() {
        return Ok(None);
    }
    for g in 0..a.group.order() {
        if b.subgroup.conjugate(g) != a.subgroup {
            continue;
        }
        // Full overlap: the twisted intersection cochain lives on all of
        // a's subgroup and measures the difference of the two descriptors
        // after transport; a trivial class means they match.
        let twist = twisted_intersection_cocycle(&a.omega, &a.mu, &b.mu, g)?;
        debug_assert_eq!(twist.support(), &a.subgroup);
        if trivializing_witness(&twist)?.is_some() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Contribution of one double coset to a functor category rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTerm {
    /// Smallest element of the double coset.
    pub rep: usize,
    /// Number of group elements in the double coset.
    pub size: usize,
    /// Projective irreducible count of the overlap subgroup at `rep` with
    /// the twisted intersection multiplier.
    pub irreps: usize,
}

impl Serialize for CosetTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CosetTerm", 3)?;
        s.serialize_field("rep", &self.rep)?;
        s.serialize_field("size", &self.size)?;
        s.serialize_field("irreps", &self.irreps)?;
        s.end()
    }
}

/// Rank of a functor category between two module categories, with the
/// per-double-coset breakdown that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBreakdown {
    pub rank: usize,
    pub cosets: Vec<CosetTerm>,
}

impl Serialize for RankBreakdown {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RankBreakdown", 2)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("cosets", &self.cosets)?;
        s.end()
    }
}

/// Number of simple module functors between the two described module
/// categories: the sum over double cosets (first subgroup, ambient group,
/// second subgroup) of the projective irreducible count of the overlap at
/// each coset representative, twisted by the intersection cochain. Cosets
/// are processed in parallel when the `parallel` feature is on.
pub fn rank_functor_category(
    a: &ModCatDescriptor,
    b: &ModCatDescriptor,
) -> Result<RankBreakdown> {
    if !a.same_base(b) {
        return Err(Error::SupportMismatch);
    }
    let cosets = double_cosets(&a.group, &a.subgroup, &b.subgroup);
    let terms = par::flat_map_indices(cosets.len(), |i| {
        let rep = cosets[i][0];
        let twist = twisted_intersection_cocycle(&a.omega, &a.mu, &b.mu, rep)
            .expect("validated descriptors produce a twist cochain");
        let irreps =
            count_proj_irreps(&twist).expect("twist cochain has arity 2 by construction");
        vec![CosetTerm { rep, size: cosets[i].len(), irreps }]
    });
    Ok(RankBreakdown { rank: terms.iter().map(|t| t.irreps).sum(), cosets: terms })
}

/// One simple object of the dual category of a module category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSimple {
    /// Representative of the double coset the simple comes from.
    pub coset_rep: usize,
    /// Degree of the underlying projective irreducible, when the overlap
    /// subgroup is abelian; `None` otherwise.
    pub degree: Option<usize>,
    /// Frobenius-Perron dimension: degree times (coset size / subgroup
    /// order). `None` when the degree is unknown.
    pub fp_dim: Option<usize>,
}

impl Serialize for DualSimple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DualSimple", 3)?;
        s.serialize_field("coset_rep", &self.coset_rep)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("fp_dim", &self.fp_dim)?;
        s.end()
    }
}

/// Census of the simple objects of the dual category of one module
/// category: everything `rank_functor_category` sees for the pair
/// (descriptor, itself), refined with dimensions where available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCensus {
    pub simples: Vec<DualSimple>,
    pub rank: usize,
    /// True when every overlap subgroup was abelian, so every simple
    /// carries an exact dimension.
    pub degrees_complete: bool,
}

impl DualCensus {
    /// Sum of squared dimensions, available when degrees are complete.
    /// Equals the ambient group order for a valid descriptor.
    pub fn global_dim(&self) -> Option<usize> {
        self.simples
            .iter()
            .map(|s| s.fp_dim.map(|d| d * d))
            .sum()
    }
}

impl Serialize for DualCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DualCensus", 4)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("degrees_complete", &self.degrees_complete)?;
        s.serialize_field("global_dim", &self.global_dim())?;
        s.serialize_field("simples", &self.simples)?;
        s.end()
    }
}

/// Simple objects of the dual category of the described module category,
/// one per (double coset, projective irreducible of the overlap) pair.
pub fn dual_simples(d: &ModCatDescriptor) -> Result<DualCensus> {
    let cosets = double_cosets(&d.group, &d.subgroup, &d.subgroup);
    let mut simples = Vec::new();
    let mut degrees_complete = true;
    for coset in &cosets {
        let rep = coset[0];
        let twist = twisted_intersection_cocycle(&d.omega, &d.mu, &d.mu, rep)?;
        let cosets_inside = coset.len() / d.subgroup.order();
        if twist.support().is_abelian() {
            for degree in proj_irrep_degrees_abelian(&twist)? {
                simples.push(DualSimple {
                    coset_rep: rep,
                    degree: Some(degree),
                    fp_dim: Some(degree * cosets_inside),
                });
            }
        } else {
            degrees_complete = false;
            for _ in 0..count_proj_irreps(&twist)? {
                simples.push(DualSimple { coset_rep: rep, degree: None, fp_dim: None });
            }
        }
    }
    let rank = simples.len();
    Ok(DualCensus { simples, rank, degrees_complete })
}

/// A subgroup and 2-cochain witnessing a fiber functor on the dual
/// category of a module category descriptor.
#[derive(Clone, Debug)]
pub struct FiberFunctorPair {
    pub subgroup: Subgroup,
    pub psi: Cochain,
}

impl Serialize for FiberFunctorPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FiberFunctorPair", 2)?;
        s.serialize_field("subgroup", &self.subgroup)?;
        s.serialize_field("psi", &self.psi)?;
        s.end()
    }
}

/// Result of a fiber functor search: the pairs found, plus any subgroups
/// whose 2-cochain classes could not be enumerated (so the search may have
/// missed pairs there). `exhaustive` is true when nothing was skipped.
#[derive(Clone, Debug)]
pub struct FiberFunctorSearch {
    pub pairs: Vec<FiberFunctorPair>,
    pub unresolved: Vec<Subgroup>,
    pub exhaustive: bool,
}

impl Serialize for FiberFunctorSearch {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FiberFunctorSearch", 3)?;
        s.serialize_field("pairs", &self.pairs)?;
        s.serialize_field("unresolved", &self.unresolved)?;
        s.serialize_field("exhaustive", &self.exhaustive)?;
        s.end()
    }
}

fn square_free(n: usize) -> bool {
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Complete list of 2-cochain class representatives on `l`, when the
/// shape of `l` admits one: cyclic groups and rank-2 elementary abelian
/// groups are classified directly, and any group of square-free order has
/// only the trivial class.
fn multiplier_classes(l: &Subgroup) -> Option<Vec<Cochain>> {
    if let Ok(reps) = h2_representatives(l) {
        return Some(reps);
    }
    if square_free(l.order()) {
        return Some(vec![Cochain::trivial(l, 2)]);
    }
    None
}

/// Whether the pair condition holds on the overlap of the descriptor
/// subgroup with a candidate: the difference form must have a single
/// projective irreducible there (equivalently, be nondegenerate).
fn overlap_condition(form: &Cochain) -> Result<bool> {
    if form.support().order() == 1 {
        return Ok(true);
    }
    if form.support().is_abelian() {
        is_nondegenerate(form)
    } else {
        Ok(count_proj_irreps(form)? == 1)
    }
}

/// Search for fiber functors on the dual category of `d`: subgroups L
/// with (subgroup of d) * L covering the whole group, carrying a 2-cochain
/// psi compatible with the associator, such that the difference of the two
/// cochains is nondegenerate on the overlap.
pub fn fiber_functor_pairs(d: &ModCatDescriptor) -> Result<FiberFunctorSearch> {
    let mut pairs = Vec::new();
    let mut unresolved = Vec::new();
    for l in subgroups(&d.group)? {
        if d.subgroup.set_product(&l).len() != d.group.order() {
            continue;
        }
        let overlap = d.subgroup.intersection(&l);
        // A nontrivial cyclic overlap kills every candidate: all 2-cochain
        // classes on a cyclic group are trivial, and the trivial class is
        // degenerate there.
        if overlap.order() > 1 && overlap.is_cyclic() {
            continue;
        }
        let Some(witness) = trivializing_witness(&d.omega.restrict(&l)?)? else {
            continue;
        };
        let Some(classes) = multiplier_classes(&l) else {
            unresolved.push(l.clone());
            continue;
        };
        for rep in classes {
            let psi = witness.product(&rep)?;
            let form = d
                .mu
                .restrict(&overlap)?
                .product(&psi.restrict(&overlap)?.inverse())?;
            if overlap_condition(&form)? {
                pairs.push(FiberFunctorPair { subgroup: l.clone(), psi });
            }
        }
    }
    let exhaustive = unresolved.is_empty();
    Ok(FiberFunctorSearch { pairs, unresolved, exhaustive })
}

/// Census of module category descriptors whose functor categories from
/// the base are pointed: normal abelian subgroups with an
/// associator-compatible 2-cochain whose class is invariant under the
/// whole group's conjugation action.
#[derive(Clone, Debug)]
pub struct PointedSearch {
    /// One descriptor per equivalence class found.
    pub descriptors: Vec<ModCatDescriptor>,
    /// Number of (subgroup, class) candidates before deduplication.
    pub raw_count: usize,
    /// Normal abelian subgroups whose 2-cochain classes could not be
    /// enumerated.
    pub unresolved: Vec<Subgroup>,
    pub exhaustive: bool,
}

impl Serialize for PointedSearch {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PointedSearch", 4)?;
        s.serialize_field("descriptors", &self.descriptors)?;
        s.serialize_field("raw_count", &self.raw_count)?;
        s.serialize_field("unresolved", &self.unresolved)?;
        s.serialize_field("exhaustive", &self.exhaustive)?;
        s.end()
    }
}

/// Find the pointed module categories of the dual category of the base
/// descriptor's ambient: pairs (N, rho) with N normal abelian, rho
/// compatible with the associator on N, and the class of rho fixed by
/// conjugation. Deduplicates equivalent descriptors; reports the raw
/// candidate count alongside.
pub fn pointed_modcats_of_dual(d: &ModCatDescriptor) -> Result<PointedSearch> {
    let action: Vec<GroupMorphism> = d
        .group
        .generating_set()
        .into_iter()
        .map(|g| GroupMorphism::conjugation(&d.group, g))
        .collect();
    let mut raw: Vec<ModCatDescriptor> = Vec::new();
    let mut unresolved = Vec::new();
    for n in normal_abelian_subgroups(&d.group)? {
        let Some(witness) = trivializing_witness(&d.omega.restrict(&n)?)? else {
            continue;
        };
        let Some(classes) = multiplier_classes(&n) else {
            unresolved.push(n.clone());
            continue;
        };
        for rep in classes {
            let rho = witness.product(&rep)?;
            if !is_invariant_class(&rho, &action)? {
                continue;
            }
            raw.push(ModCatDescriptor::new(&d.group, &d.omega, &n, &rho)?);
        }
    }
    let raw_count = raw.len();
    let mut descriptors: Vec<ModCatDescriptor> = Vec::new();
    for cand in raw {
        let mut duplicate = false;
        for kept in &descriptors {
            if equivalent_descriptors(kept, &cand)?.is_some() {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            descriptors.push(cand);
        }
    }
    let exhaustive = unresolved.is_empty();
    Ok(PointedSearch { descriptors, raw_count, unresolved, exhaustive })
}

/// Ranks of the functor categories from the base descriptor to each
/// pointed descriptor found, in the same order.
pub fn pointed_modcat_ranks(
    base: &ModCatDescriptor,
    search: &PointedSearch,
) -> Result<Vec<usize>> {
    search
        .descriptors
        .iter()
        .map(|d| rank_functor_category(base, d).map(|b| b.rank))
        .collect()
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (3..p).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The base configuration studied throughout: ambient group
/// (dihedral of order 2p) x (cyclic of order p) with trivial associator,
/// and the diagonal line generated by (rotation, 1), which is not normal.
/// Its dual category has rank p^2 + 1.
pub fn skew_diagonal_descriptor(p: usize) -> Result<ModCatDescriptor> {
    if !is_odd_prime(p) {
        return Err(Error::NotAnOddPrime(p));
    }
    let g = GroupTable::direct_product(
        &GroupTable::dihedral(2 * p)?,
        &GroupTable::cyclic(p)?,
    )?;
    // In the product indexing, (rotation r, 1) sits at index p + 1.
    let k = Subgroup::generated(&g, &[p + 1]);
    let whole = Subgroup::whole(&g);
    let omega = Cochain::trivial(&whole, 3);
    let mu = Cochain::trivial(&k, 2);
    ModCatDescriptor::new(&g, &omega, &k, &mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::UnitRoot;
    use crate::group::rank2_elementary;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn whole(g: &GroupTable) -> Subgroup {
        Subgroup::whole(g)
    }

    fn trivial_descriptor(g: &GroupTable, sub: &Subgroup) -> ModCatDescriptor {
        let omega = Cochain::trivial(&whole(g), 3);
        let mu = Cochain::trivial(sub, 2);
        ModCatDescriptor::new(g, &omega, sub, &mu).unwrap()
    }

    #[test]
    fn descriptor_validation_enforces_compatibility() {
        let g = rank2_elementary(3).unwrap();
        let w = whole(&g);
        let mut rng = StdRng::seed_from_u64(5);
        let picks: Vec<i64> = (0..81).map(|_| rng.gen_range(0..6)).collect();
        let sup = w.clone();
        let kappa = Cochain::from_fn(&w, 2, move |args| {
            let i = sup.local_index(args[0]).unwrap() * 9 + sup.local_index(args[1]).unwrap();
            UnitRoot::from_frac(picks[i], 6)
        });
        let omega = kappa.coboundary().unwrap();
        assert!(!omega.is_trivial());
        // kappa itself is compatible with its own coboundary.
        assert!(ModCatDescriptor::new(&g, &omega, &w, &kappa).is_ok());
        // The trivial cochain is not.
        let err = ModCatDescriptor::new(&g, &omega, &w, &Cochain::trivial(&w, 2)).unwrap_err();
        assert!(matches!(err, Error::NotACocycle { .. }));
    }

    #[test]
    fn self_functor_rank_matches_frozen_census() {
        for p in [3usize, 5] {
            let d = skew_diagonal_descriptor(p).unwrap();
            let breakdown = rank_functor_category(&d, &d).unwrap();
            assert_eq!(breakdown.rank, p * p + 1, "p = {p}");
            // p double cosets of size p contribute p irreducibles each;
            // one of size p^2 contributes a single one.
            assert_eq!(breakdown.cosets.len(), p + 1);
            let mut sizes: Vec<usize> = breakdown.cosets.iter().map(|t| t.size).collect();
            sizes.sort_unstable();
            let mut expected = vec![p; p];
            expected.push(p * p);
            assert_eq!(sizes, expected);
            for term in &breakdown.cosets {
                let want = if term.size == p { p } else { 1 };
                assert_eq!(term.irreps, want);
            }
        }
    }

    #[test]
    fn dual_census_has_expected_dimensions() {
        for p in [3usize, 5] {
            let d = skew_diagonal_descriptor(p).unwrap();
            let census = dual_simples(&d).unwrap();
            assert_eq!(census.rank, p * p + 1);
            assert!(census.degrees_complete);
            let mut dims: Vec<usize> = census.simples.iter().map(|s| s.fp_dim.unwrap()).collect();
            dims.sort_unstable();
            let mut expected = vec![1; p * p];
            expected.push(p);
            assert_eq!(dims, expected, "p = {p}");
            // Squared dimensions sum to the ambient order 2 p^2.
            assert_eq!(census.global_dim(), Some(2 * p * p));
        }
    }

    #[test]
    fn equivalence_distinguishes_classes_and_follows_conjugation() {
        // Same abelian ambient, whole support: equivalence is exactly the
        // cohomology class (conjugation is trivial).
        let a = rank2_elementary(3).unwrap();
        let w = whole(&a);
        let omega = Cochain::trivial(&w, 3);
        let reps = h2_representatives(&w).unwrap();
        let d1 = ModCatDescriptor::new(&a, &omega, &w, &reps[1]).unwrap();
        let d2 = ModCatDescriptor::new(&a, &omega, &w, &reps[2]).unwrap();
        assert!(equivalent_descriptors(&d1, &d2).unwrap().is_none());
        // Perturbing by a coboundary keeps the class.
        let mut rng = StdRng::seed_from_u64(11);
        let picks: Vec<i64> = (0..9).map(|_| rng.gen_range(0..9)).collect();
        let sup = w.clone();
        let f = Cochain::from_fn(&w, 1, move |args| {
            UnitRoot::from_frac(picks[sup.local_index(args[0]).unwrap()], 9)
        });
        let shifted = reps[1].product(&f.coboundary().unwrap()).unwrap();
        let d1b = ModCatDescriptor::new(&a, &omega, &w, &shifted).unwrap();
        assert!(equivalent_descriptors(&d1, &d1b).unwrap().is_some());

        // Conjugate subgroups with matching cochains are equivalent.
        let d = skew_diagonal_descriptor(3).unwrap();
        let g = d.group().clone();
        let k = d.subgroup().clone();
        let s = 9; // a reflection: conjugation moves the diagonal line
        let k_conj = k.conjugate(s);
        assert_ne!(k_conj, k);
        let d_conj = trivial_descriptor(&g, &k_conj);
        let d_base = trivial_descriptor(&g, &k);
        let witness = equivalent_descriptors(&d_base, &d_conj)
            .unwrap()
            .expect("conjugate descriptors match");
        assert_eq!(k_conj.conjugate(witness), k);
        // A normal line is not equivalent to the diagonal one.
        let center_line = Subgroup::generated(&g, &[1]);
        assert_ne!(center_line, k);
        let d_center = trivial_descriptor(&g, &center_line);
        assert!(equivalent_descriptors(&d_base, &d_center).unwrap().is_none());
    }

    #[test]
    fn fiber_functor_search_finds_complement_pairs() {
        let d = skew_diagonal_descriptor(3).unwrap();
        let search = fiber_functor_pairs(&d).unwrap();
        assert!(search.exhaustive);
        assert!(!search.pairs.is_empty());
        // The dihedral factor with the trivial cochain qualifies: it meets
        // the diagonal line trivially and covers the group with it.
        let found_dihedral = search.pairs.iter().any(|pair| {
            pair.subgroup.order() == 6 && !pair.subgroup.is_abelian() && pair.psi.is_trivial()
        });
        assert!(found_dihedral);
        // Every pair covers the group and meets the line trivially.
        for pair in &search.pairs {
            assert_eq!(d.subgroup().set_product(&pair.subgroup).len(), 18);
            assert_eq!(d.subgroup().intersection(&pair.subgroup).order(), 1);
        }
    }

    #[test]
    fn pointed_census_matches_frozen_ranks() {
        let d = skew_diagonal_descriptor(3).unwrap();
        let search = pointed_modcats_of_dual(&d).unwrap();
        assert!(search.exhaustive);
        // Candidates: trivial subgroup, two normal lines, and the Sylow
        // subgroup with its unique invariant (trivial) class.
        assert_eq!(search.raw_count, 4);
        assert_eq!(search.descriptors.len(), 4);
        let mut orders: Vec<usize> =
            search.descriptors.iter().map(|m| m.subgroup().order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 3, 3, 9]);
        // Every multiplier in the census is trivial: the nontrivial classes
        // on the Sylow subgroup are flipped by conjugation.
        assert!(search.descriptors.iter().all(|m| m.multiplier().is_trivial()));
        let mut ranks = pointed_modcat_ranks(&d, &search).unwrap();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![2, 2, 6, 6]);
    }

    #[test]
    fn skew_descriptor_rejects_bad_primes() {
        assert!(matches!(skew_diagonal_descriptor(2), Err(Error::NotAnOddPrime(2))));
        assert!(matches!(skew_diagonal_descriptor(9), Err(Error::NotAnOddPrime(9))));
        assert!(skew_diagonal_descriptor(3).is_ok());
    }
}
