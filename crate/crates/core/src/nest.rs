//! Spider nest identities: homogeneous gadget circuits proportional to the
//! identity, their closed-form T-counts, and brute-force verification.
//!
//! The basic family N_S on a support of size n >= 4 carries, in units of
//! pi/4: (n-2)(n-3)/2 on each singleton, -(n-3) on each pair, +1 on each
//! triple, and -1 on the full set. Composites N_S * N_{S\{r}}^-1 trade a
//! second large gadget for far fewer small ones.

use crate::error::PhageError;
use crate::parity::{subsets_lex, ParitySet};
use crate::poly::PhasePolynomial;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A phase polynomial proportional to the identity, with construction
/// metadata for reporting and tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiderNestIdentity {
    pub poly: PhasePolynomial,
    pub support: ParitySet,
    pub descriptor: String,
}

/// Closed-form T-count of N_S over its size-<=3 terms for n = |S| >= 4.
/// The full-set n-gadget is excluded by the formula's convention.
pub fn t_count_formula(n: u32) -> Result<u64, PhageError> {
    if n < 4 {
        return Err(PhageError::SupportTooSmall { min: 4, got: n });
    }
    let n = n as u64;
    Ok(match n % 4 {
        0 => n * (n * n + 5) / 6,
        1 => n * (n * n - 3 * n + 8) / 6,
        2 => n * (n * n - 1) / 6,
        _ => n * (n * n - 3 * n + 2) / 6,
    })
}

/// Closed-form T-count of the composite N_S * N_{S\{r}}^-1 for n = |S| >= 5,
/// including both large gadgets.
pub fn composite_t_count_formula(n: u32) -> Result<u64, PhageError> {
    if n < 5 {
        return Err(PhageError::SupportTooSmall { min: 5, got: n });
    }
    let delta = u64::from(n % 4 <= 1);
    let n = n as u64;
    Ok(if n.is_multiple_of(2) {
        n * n - n + 2 + delta
    } else {
        n * n - 3 * n + 4 + delta
    })
}

/// The spider nest identity N_S.
pub fn gen_nest(s: &ParitySet) -> Result<SpiderNestIdentity, PhageError> {
    let n = s.len();
    if n < 4 {
        return Err(PhageError::SupportTooSmall { min: 4, got: n });
    }
    let width = s.width();
    let idx = s.indices();
    let single = (((n as u64 - 2) * (n as u64 - 3) / 2) % 8) as u8;
    let pair = ((16 - (n as u64 - 3) % 8) % 8) as u8;

    let mut poly = PhasePolynomial::new(width);
    for &q in &idx {
        poly.add(ParitySet::singleton(width, q), single);
    }
    for sub in subsets_lex(n, 2) {
        poly.add(
            ParitySet::from_indices(width, sub.iter().map(|i| idx[*i as usize])),
            pair,
        );
    }
    for sub in subsets_lex(n, 3) {
        poly.add(
            ParitySet::from_indices(width, sub.iter().map(|i| idx[*i as usize])),
            1,
        );
    }
    poly.add(s.clone(), 7);

    Ok(SpiderNestIdentity {
        poly,
        support: s.clone(),
        descriptor: format!("nest{}", n),
    })
}

/// The subset-product identity: a (-1)^|S|-signed unit on every nonempty
/// subset S of V, proportional to the identity whenever |V| > k. Only the
/// k = 3 (pi/4) level is representable here.
pub fn gen_subset_parity_identity(v: &ParitySet, k: u32) -> Result<SpiderNestIdentity, PhageError> {
    assert_eq!(k, 3, "only the k = 3 coefficient ring is built");
    let n = v.len();
    if n <= k {
        return Err(PhageError::SubsetTooSmall { k, got: n });
    }
    let width = v.width();
    let idx = v.indices();
    let mut poly = PhasePolynomial::new(width);
    for size in 1..=n {
        let coeff = if size % 2 == 0 { 1 } else { 7 };
        for sub in subsets_lex(n, size) {
            poly.add(
                ParitySet::from_indices(width, sub.iter().map(|i| idx[*i as usize])),
                coeff,
            );
        }
    }
    Ok(SpiderNestIdentity {
        poly,
        support: v.clone(),
        descriptor: format!("subset{}", n),
    })
}

/// The composite N_S * N_{S\{r}}^-1, fused.
pub fn gen_composite(s: &ParitySet, r: u32) -> Result<SpiderNestIdentity, PhageError> {
    let n = s.len();
    if n < 5 {
        return Err(PhageError::SupportTooSmall { min: 5, got: n });
    }
    assert!(s.contains(r), "r must lie in the support");
    let mut sub = s.clone();
    sub.toggle(r);
    let mut poly = gen_nest(s)?.poly;
    poly.fuse_all(&gen_nest(&sub)?.poly.negated());
    Ok(SpiderNestIdentity {
        poly,
        support: s.clone(),
        descriptor: format!("nest{}-nest{}inv@{}", n, n - 1, r),
    })
}

/// Brute-force check that the polynomial applies one constant phase to every
/// basis state of its support. Exact Z8 arithmetic, 2^|support| evaluations.
pub fn verify_identity(id: &SpiderNestIdentity) -> Result<bool, PhageError> {
    verify_constant(&id.poly)
}

/// True when eval is the same value mod 8 across all basis states of the
/// union of term supports.
pub fn verify_constant(poly: &PhasePolynomial) -> Result<bool, PhageError> {
    let mut support = ParitySet::empty(poly.width());
    for (s, _) in poly.terms() {
        for i in s.iter() {
            support.insert(i);
        }
    }
    let wires = support.indices();
    let m = wires.len() as u32;
    if m > 20 {
        return Err(PhageError::SupportTooLarge { max: 20, got: m });
    }
    let width = poly.width();
    let reference = poly.eval_on_basis(&ParitySet::empty(width));

    let check = |mask: u64| {
        let z = ParitySet::from_indices(
            width,
            wires
                .iter()
                .enumerate()
                .filter(|(b, _)| (mask >> b) & 1 == 1)
                .map(|(_, w)| *w),
        );
        poly.eval_on_basis(&z) == reference
    };

    #[cfg(feature = "parallel")]
    {
        Ok((0u64..1 << m).into_par_iter().all(check))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0u64..1 << m).all(check))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_set(n: u32) -> ParitySet {
        ParitySet::from_indices(n, 0..n)
    }

    #[test]
    fn formula_values_from_branches() {
        assert_eq!(t_count_formula(4).unwrap(), 14);
        assert_eq!(t_count_formula(5).unwrap(), 15);
        assert_eq!(t_count_formula(6).unwrap(), 35);
        assert_eq!(t_count_formula(7).unwrap(), 35);
        assert_eq!(t_count_formula(8).unwrap(), 92);
        assert!(t_count_formula(3).is_err());
    }

    #[test]
    fn composite_formula_values() {
        assert_eq!(composite_t_count_formula(5).unwrap(), 15);
        assert_eq!(composite_t_count_formula(6).unwrap(), 32);
        assert_eq!(composite_t_count_formula(8).unwrap(), 59);
        assert!(composite_t_count_formula(4).is_err());
    }

    #[test]
    fn nest_coefficients_small_cases() {
        let id4 = gen_nest(&full_set(4)).unwrap();
        let p = &id4.poly;
        assert_eq!(p.coeff(&ParitySet::singleton(4, 0)), 1);
        assert_eq!(p.coeff(&ParitySet::from_indices(4, [0, 1])), 7);
        assert_eq!(p.coeff(&ParitySet::from_indices(4, [0, 1, 2])), 1);
        assert_eq!(p.coeff(&full_set(4)), 7);

        let id5 = gen_nest(&full_set(5)).unwrap();
        assert_eq!(id5.poly.coeff(&ParitySet::singleton(5, 2)), 3);
        assert_eq!(id5.poly.coeff(&ParitySet::from_indices(5, [1, 3])), 6);
        assert_eq!(id5.poly.coeff(&full_set(5)), 7);

        let id6 = gen_nest(&full_set(6)).unwrap();
        assert_eq!(id6.poly.coeff(&ParitySet::singleton(6, 0)), 6);
        assert_eq!(id6.poly.coeff(&ParitySet::from_indices(6, [4, 5])), 5);
        assert_eq!(id6.poly.coeff(&ParitySet::from_indices(6, [0, 2, 4])), 1);
    }

    #[test]
    fn nests_verify_as_identities() {
        for n in 4..=8 {
            let id = gen_nest(&full_set(n)).unwrap();
            assert!(verify_identity(&id).unwrap(), "nest {} failed", n);
        }
    }

    #[test]
    fn single_t_gadget_is_not_an_identity() {
        let mut p = PhasePolynomial::new(2);
        p.add(ParitySet::singleton(2, 1), 1);
        let id = SpiderNestIdentity {
            poly: p,
            support: ParitySet::singleton(2, 1),
            descriptor: "t".into(),
        };
        assert!(!verify_identity(&id).unwrap());
    }

    #[test]
    fn perturbed_nest_fails_verification() {
        let mut id = gen_nest(&full_set(5)).unwrap();
        id.poly.add(ParitySet::singleton(5, 0), 1);
        assert!(!verify_identity(&id).unwrap());
    }

    #[test]
    fn subset_parity_identity_verifies() {
        let id = gen_subset_parity_identity(&full_set(4), 3).unwrap();
        assert_eq!(id.poly.len(), 15);
        assert!(verify_identity(&id).unwrap());
        assert!(gen_subset_parity_identity(&full_set(3), 3).is_err());
    }

    #[test]
    fn subset_parity_matches_nest_up_to_global_phase() {
        // Both are identities, so their quotient must be a constant-phase
        // polynomial; check by fusing one with the other's negation.
        let a = gen_subset_parity_identity(&full_set(4), 3).unwrap();
        let b = gen_nest(&full_set(4)).unwrap();
        let mut q = a.poly.clone();
        q.fuse_all(&b.poly.negated());
        assert!(verify_constant(&q).unwrap());
        assert_eq!(q.t_count(), 0);
    }

    #[test]
    fn composite_t_counts_match_formula() {
        for n in 5..=10u32 {
            let id = gen_composite(&full_set(n), 0).unwrap();
            assert_eq!(
                id.poly.t_count() as u64,
                composite_t_count_formula(n).unwrap(),
                "composite {}",
                n
            );
        }
    }

    #[test]
    fn composites_verify_as_identities() {
        for n in 5..=8u32 {
            for r in 0..n {
                let id = gen_composite(&full_set(n), r).unwrap();
                assert!(verify_identity(&id).unwrap(), "composite {} @ {}", n, r);
            }
        }
    }

    #[test]
    fn formula_matches_small_term_odd_count() {
        for n in 4..=12u32 {
            let id = gen_nest(&full_set(n)).unwrap();
            let small_odd = id
                .poly
                .terms()
                .filter(|(s, c)| s.len() <= 3 && c % 2 == 1)
                .count() as u64;
            assert_eq!(small_odd, t_count_formula(n).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn nest_fused_with_negation_is_empty() {
        let id = gen_nest(&full_set(6)).unwrap();
        let mut p = id.poly.clone();
        p.fuse_all(&id.poly.negated());
        assert!(p.is_empty());
    }

    #[test]
    fn nest_coefficients_depend_only_on_size() {
        let a = gen_nest(&ParitySet::from_indices(9, [0, 2, 4, 6, 8])).unwrap();
        let b = gen_nest(&ParitySet::from_indices(9, [1, 3, 5, 7, 8])).unwrap();
        let map = |id: &SpiderNestIdentity| {
            let mut by_size: Vec<Vec<u8>> = vec![Vec::new(); 6];
            for (s, c) in id.poly.terms() {
                by_size[s.len() as usize].push(c);
            }
            for v in &mut by_size {
                v.sort_unstable();
            }
            by_size
        };
        assert_eq!(map(&a), map(&b));
    }
}
