//! Counting irreducible projective representations of a finite group
//! with a fixed 2-cocycle multiplier.
//!
//! Two independent routes are provided. `count_proj_irreps` counts
//! multiplier-regular conjugacy classes. `twisted_center_dim` sets up the
//! centering equations of the twisted group algebra and measures their
//! solution space over a cyclotomic field; it is slower and capped, and
//! exists to cross-check the first route on small inputs.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::cochain::{alt_form, Cochain};
use crate::cyclo::{nullspace_dim, CycField, CycScalar};
use crate::{Error, Result};

/// Largest support order accepted by `twisted_center_dim`.
pub const TWISTED_CENTER_CAP: usize = 64;

/// Number of irreducible projective representations of the support of
/// `mu` with multiplier `mu`: the number of conjugacy classes whose
/// elements commute with their centralizers up to matching multiplier
/// values, i.e. classes of h with mu(h, x) = mu(x, h) for all x in C(h).
pub fn count_proj_irreps(mu: &Cochain) -> Result<usize> {
    if mu.arity() != 2 {
        return Err(Error::ArityUnsupported(mu.arity()));
    }
    debug_assert!(mu.is_cocycle(), "multiplier must be a 2-cocycle");
    let h = mu.support();
    let regular = |x: usize| {
        h.centralizer_within(x)
            .into_iter()
            .all(|y| mu.eval(&[x, y]) == mu.eval(&[y, x]))
    };
    let mut count = 0;
    for class in h.conjugacy_classes_within() {
        let rep = class[0];
        let is_regular = regular(rep);
        debug_assert!(
            class.iter().all(|&x| regular(x) == is_regular),
            "regularity must be constant on a conjugacy class"
        );
        if is_regular {
            count += 1;
        }
    }
    Ok(count)
}

/// Dimension of the center of the group algebra twisted by `mu`, computed
/// directly: basis vectors u_h multiply as u_x u_y = mu(x, y) u_xy, and an
/// element sum a_h u_h is central iff for every y and every w the
/// coefficient of u_w on both sides of the commuting relation agrees:
/// a at y^-1 w times mu(y, y^-1 w) equals a at w y^-1 times mu(w y^-1, y).
/// The equations are solved over Q(xi_N), N the least common denominator
/// of the multiplier values.
pub fn twisted_center_dim(mu: &Cochain) -> Result<usize> {
    if mu.arity() != 2 {
        return Err(Error::ArityUnsupported(mu.arity()));
    }
    let h = mu.support();
    let n = h.order();
    if n > TWISTED_CENTER_CAP {
        return Err(Error::CapExceeded {
            what: "twisted center support order".into(),
            actual: n,
            limit: TWISTED_CENTER_CAP,
        });
    }
    let level: usize = mu
        .denominator_lcm()
        .try_into()
        .map_err(|_| Error::UnsupportedShape("cyclotomic level too large".into()))?;
    let field = CycField::new(level.max(1));
    let g = h.parent().clone();
    let zero = CycScalar::zero(&field);
    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for &y in h.members() {
        for &w in h.members() {
            let lhs_elem = g.mul(g.inv(y), w);
            let rhs_elem = g.mul(w, g.inv(y));
            let alpha = CycScalar::root_of_unity(&field, &mu.eval(&[y, lhs_elem]))?;
            let beta = CycScalar::root_of_unity(&field, &mu.eval(&[rhs_elem, y]))?;
            let u1 = h.local_index(lhs_elem).expect("closed under products");
            let u2 = h.local_index(rhs_elem).expect("closed under products");
            let mut row = vec![zero.clone(); n];
            row[u1] = row[u1].add(&alpha);
            row[u2] = row[u2].sub(&beta);
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(if rows.is_empty() { n } else { nullspace_dim(rows) })
}

/// Degrees of the irreducible projective representations of an abelian
/// support, sorted: with r the order of the radical of the alternating
/// form of `mu`, there are r of them, all of degree sqrt(|H| / r).
pub fn proj_irrep_degrees_abelian(mu: &Cochain) -> Result<Vec<usize>> {
    if mu.arity() != 2 {
        return Err(Error::ArityUnsupported(mu.arity()));
    }
    let h = mu.support();
    if !h.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let r = alt_form(mu)?.radical().len();
    let quotient = h.order() / r;
    let degree = (1..).find(|d| d * d >= quotient).unwrap();
    assert_eq!(
        degree * degree,
        quotient,
        "abelian group modulo an alternating-form radical has square order"
    );
    Ok(vec![degree; r])
}

/// The count of irreducible projective representations for a multiplier,
/// with their degrees when the support is abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjRepProfile {
    pub count: usize,
    pub degrees: Option<Vec<usize>>,
}

impl Serialize for ProjRepProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ProjRepProfile", 2)?;
        s.serialize_field("count", &self.count)?;
        s.serialize_field("degrees", &self.degrees)?;
        s.end()
    }
}

pub fn proj_rep_profile(mu: &Cochain) -> Result<ProjRepProfile> {
    let count = count_proj_irreps(mu)?;
    let degrees = match proj_irrep_degrees_abelian(mu) {
        Ok(d) => Some(d),
        Err(Error::NonAbelian) => None,
        Err(e) => return Err(e),
    };
    Ok(ProjRepProfile { count, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::h2_representatives;
    use crate::cochain::UnitRoot;
    use crate::group::{rank2_elementary, subgroups, GroupTable, Subgroup};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn whole(g: &GroupTable) -> Subgroup {
        Subgroup::whole(g)
    }

    #[test]
    fn trivial_multiplier_counts_conjugacy_classes() {
        let cases: Vec<(GroupTable, usize)> = vec![
            (GroupTable::cyclic(6).unwrap(), 6),
            (GroupTable::dihedral(6).unwrap(), 3),
            (GroupTable::dihedral(10).unwrap(), 4),
            (rank2_elementary(3).unwrap(), 9),
        ];
        for (g, expected) in cases {
            let mu = Cochain::trivial(&whole(&g), 2);
            assert_eq!(count_proj_irreps(&mu).unwrap(), expected);
            assert_eq!(twisted_center_dim(&mu).unwrap(), expected);
        }
    }

    #[test]
    fn nondegenerate_classes_have_a_single_irrep() {
        for p in [3usize, 5] {
            let g = rank2_elementary(p).unwrap();
            let w = whole(&g);
            let reps = h2_representatives(&w).unwrap();
            for (c, mu) in reps.iter().enumerate() {
                let count = count_proj_irreps(mu).unwrap();
                let expected = if c == 0 { p * p } else { 1 };
                assert_eq!(count, expected, "p = {p}, class {c}");
                assert_eq!(twisted_center_dim(mu).unwrap(), expected, "p = {p}, class {c}");
                let degrees = proj_irrep_degrees_abelian(mu).unwrap();
                if c == 0 {
                    assert_eq!(degrees, vec![1; p * p]);
                } else {
                    assert_eq!(degrees, vec![p]);
                }
                assert_eq!(
                    degrees.iter().map(|d| d * d).sum::<usize>(),
                    g.order(),
                    "degree squares sum to the group order"
                );
            }
        }
    }

    #[test]
    fn counts_are_invariant_under_coboundary_perturbation() {
        let mut rng = StdRng::seed_from_u64(23);
        let g = rank2_elementary(3).unwrap();
        let w = whole(&g);
        let reps = h2_representatives(&w).unwrap();
        for trial in 0..10 {
            let picks: Vec<i64> = (0..9).map(|_| rng.gen_range(0..9)).collect();
            let sup = w.clone();
            let f = Cochain::from_fn(&w, 1, move |args| {
                UnitRoot::from_frac(picks[sup.local_index(args[0]).unwrap()], 9)
            });
            let shift = f.coboundary().unwrap();
            for (c, rep) in reps.iter().enumerate() {
                let perturbed = rep.product(&shift).unwrap();
                let expected = if c == 0 { 9 } else { 1 };
                assert_eq!(
                    count_proj_irreps(&perturbed).unwrap(),
                    expected,
                    "trial {trial}, class {c}"
                );
                assert_eq!(
                    twisted_center_dim(&perturbed).unwrap(),
                    expected,
                    "trial {trial}, class {c}"
                );
            }
        }
    }

    #[test]
    fn subgroup_supports_use_ambient_indices() {
        let g = GroupTable::direct_product(
            &GroupTable::dihedral(6).unwrap(),
            &GroupTable::cyclic(3).unwrap(),
        )
        .unwrap();
        let subs = subgroups(&g).unwrap();
        let sylow = subs.iter().find(|s| s.order() == 9).unwrap();
        let reps = h2_representatives(sylow).unwrap();
        assert_eq!(count_proj_irreps(&reps[0]).unwrap(), 9);
        for mu in &reps[1..] {
            assert_eq!(count_proj_irreps(mu).unwrap(), 1);
            assert_eq!(twisted_center_dim(mu).unwrap(), 1);
            assert_eq!(proj_irrep_degrees_abelian(mu).unwrap(), vec![3]);
        }
        // Nonabelian subgroups still count classes with a trivial multiplier.
        let d6 = subs
            .iter()
            .find(|s| s.order() == 6 && !s.is_abelian())
            .unwrap();
        let mu = Cochain::trivial(d6, 2);
        assert_eq!(count_proj_irreps(&mu).unwrap(), 3);
        assert_eq!(twisted_center_dim(&mu).unwrap(), 3);
        assert!(matches!(
            proj_irrep_degrees_abelian(&mu).unwrap_err(),
            Error::NonAbelian
        ));
    }

    #[test]
    fn center_dimension_cap_is_enforced() {
        let g = GroupTable::direct_product(
            &GroupTable::cyclic(9).unwrap(),
            &GroupTable::cyclic(9).unwrap(),
        )
        .unwrap();
        let mu = Cochain::trivial(&whole(&g), 2);
        assert!(matches!(
            twisted_center_dim(&mu).unwrap_err(),
            Error::CapExceeded { actual: 81, limit: TWISTED_CENTER_CAP, .. }
        ));
        // The class-counting route has no such cap.
        assert_eq!(count_proj_irreps(&mu).unwrap(), 81);
    }

    #[test]
    fn wrong_arity_is_rejected() {
        let g = GroupTable::cyclic(4).unwrap();
        let mu = Cochain::trivial(&whole(&g), 3);
        assert!(matches!(count_proj_irreps(&mu).unwrap_err(), Error::ArityUnsupported(3)));
        assert!(matches!(twisted_center_dim(&mu).unwrap_err(), Error::ArityUnsupported(3)));
        assert!(matches!(
            proj_irrep_degrees_abelian(&mu).unwrap_err(),
            Error::ArityUnsupported(3)
        ));
    }

    #[test]
    fn profile_reports_degrees_only_for_abelian_supports() {
        let a = rank2_elementary(3).unwrap();
        let trivial = Cochain::trivial(&whole(&a), 2);
        assert_eq!(
            proj_rep_profile(&trivial).unwrap(),
            ProjRepProfile { count: 9, degrees: Some(vec![1; 9]) }
        );
        let reps = h2_representatives(&whole(&a)).unwrap();
        assert_eq!(
            proj_rep_profile(&reps[1]).unwrap(),
            ProjRepProfile { count: 1, degrees: Some(vec![3]) }
        );
        let d6 = GroupTable::dihedral(6).unwrap();
        let profile = proj_rep_profile(&Cochain::trivial(&whole(&d6), 2)).unwrap();
        assert_eq!(profile.count, 3);
        assert_eq!(profile.degrees, None);
        let text = serde_json::to_string(&profile).unwrap();
        assert_eq!(text, r#"{"count":3,"degrees":null}"#);
    }
}
