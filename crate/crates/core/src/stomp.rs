//! Phase Gadget Elimination (PHAGE) tactics: fuse a candidate identity (or
//! its inverse) into the body polynomial and keep the result iff the T-count
//! strictly drops. STOMP 4 deploys the single nest N_S over all 4-subsets;
//! STOMP 5 deploys the 63 composites N_S^p0 N_S1^p1 ... N_S5^p5 over all
//! 5-subsets.

use crate::nest::{gen_nest, SpiderNestIdentity};
use crate::parity::{subsets_lex, ParitySet};
use crate::poly::PhasePolynomial;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A family of candidate identities, stored on canonical wires 0..arity and
/// relabeled onto each concrete subset.
pub struct TacticFamily {
    pub name: String,
    pub arity: u32,
    /// (canonical polynomial, t-count, descriptor)
    members: Vec<(PhasePolynomial, usize, String)>,
    min_t: usize,
}

impl TacticFamily {
    /// F1 = { N_S } on 4-subsets.
    pub fn stomp4() -> Self {
        let s = ParitySet::from_indices(4, 0..4);
        let nest = gen_nest(&s).expect("|S| = 4");
        let t = nest.poly.t_count();
        TacticFamily {
            name: "STOMP4".into(),
            arity: 4,
            min_t: t,
            members: vec![(nest.poly, t, "nest4".into())],
        }
    }

    /// F2: the 63 identities N_S^p0 N_S1^p1 ... N_S5^p5 with p nonzero
    /// (S_j = S minus its j-th element), each pre-fused. With `dedup` the
    /// five bare N_Sj members (already covered by STOMP 4) are dropped,
    /// leaving 58.
    pub fn stomp5(dedup: bool) -> Self {
        let s = ParitySet::from_indices(5, 0..5);
        let full = gen_nest(&s).expect("|S| = 5").poly;
        let subnests: Vec<PhasePolynomial> = (0..5)
            .map(|j| {
                let mut sub = s.clone();
                sub.toggle(j);
                gen_nest(&sub).expect("|S| = 4").poly
            })
            .collect();
        let mut members = Vec::new();
        for mask in 1u32..64 {
            let p0 = mask & 1 == 1;
            let sub_bits: Vec<usize> = (0..5).filter(|j| (mask >> (j + 1)) & 1 == 1).collect();
            if dedup && !p0 && sub_bits.len() == 1 {
                continue;
            }
            let mut poly = PhasePolynomial::new(5);
            if p0 {
                poly.fuse_all(&full);
            }
            for j in &sub_bits {
                poly.fuse_all(&subnests[*j]);
            }
            let t = poly.t_count();
            let desc = format!("p={:06b}", mask);
            members.push((poly, t, desc));
        }
        let min_t = members.iter().map(|(_, t, _)| *t).min().unwrap_or(0);
        TacticFamily {
            name: if dedup {
                "STOMP5/58".into()
            } else {
                "STOMP5/63".into()
            },
            arity: 5,
            min_t,
            members,
        }
    }

    /// The identities relabeled onto `s` (|s| must equal the arity).
    pub fn generate(&self, s: &ParitySet) -> Vec<SpiderNestIdentity> {
        assert_eq!(s.len(), self.arity);
        let wires = s.indices();
        self.members
            .iter()
            .map(|(poly, _, desc)| SpiderNestIdentity {
                poly: relabel(poly, &wires, s.width()),
                support: s.clone(),
                descriptor: desc.clone(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn relabel(p: &PhasePolynomial, wires: &[u32], width: u32) -> PhasePolynomial {
    let mut out = PhasePolynomial::new(width);
    for (set, c) in p.terms() {
        out.add(
            ParitySet::from_indices(width, set.iter().map(|i| wires[i as usize])),
            c,
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TacticOutcome {
    pub applied: bool,
    pub chosen_identity: Option<String>,
    pub t_before: usize,
    pub t_after: usize,
}

/// Score of fusing member (or its inverse) into p: exact T-count after
/// fusion, computed from parity matches without materializing.
fn score(
    p: &PhasePolynomial,
    member: &PhasePolynomial,
    member_t: usize,
    wires: &[u32],
    t0: usize,
) -> Option<usize> {
    let width = p.width();
    let mut matched = 0usize;
    for (set, c) in member.terms() {
        if c % 2 == 1 {
            let rel = ParitySet::from_indices(width, set.iter().map(|i| wires[i as usize]));
            if p.coeff(&rel) % 2 == 1 {
                matched += 1;
            }
        }
    }
    // candidate filter: the body must contain at least half of the
    // T-gadgets of the identity (or of its inverse, which match identically)
    if 2 * matched < member_t {
        return None;
    }
    Some(t0 + member_t - 2 * matched)
}

/// Run one PHAGE tactic on subset `s`: every identity of the family and its
/// coefficient-negated inverse is a candidate; the best strict improvement
/// is fused in. Ties go to the earliest candidate in enumeration order.
pub fn phage_apply(
    p: &PhasePolynomial,
    family: &TacticFamily,
    s: &ParitySet,
) -> (PhasePolynomial, TacticOutcome) {
    let t0 = p.t_count();
    let wires = s.indices();

    let scores: Vec<Option<usize>> = {
        let eval = |(poly, t, _): &(PhasePolynomial, usize, String)| score(p, poly, *t, &wires, t0);
        #[cfg(feature = "parallel")]
        {
            if family.members.len() >= 16 {
                family.members.par_iter().map(eval).collect()
            } else {
                family.members.iter().map(eval).collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            family.members.iter().map(eval).collect()
        }
    };

    let mut best: Option<(usize, usize, bool)> = None; // (t_after, idx, inverted)
    for (idx, sc) in scores.iter().enumerate() {
        let Some(t_after) = sc else { continue };
        // the inverse variant scores identically; the non-inverted candidate
        // is enumerated first and therefore wins the tie
        for inverted in [false, true] {
            if best.is_none_or(|(bt, _, _)| *t_after < bt) {
                best = Some((*t_after, idx, inverted));
            }
        }
    }

    match best {
        Some((t_after, idx, inverted)) if t_after < t0 => {
            let (poly, _, desc) = &family.members[idx];
            let rel = relabel(poly, &wires, p.width());
            let mut out = p.clone();
            out.fuse_all(&if inverted { rel.negated() } else { rel });
            debug_assert_eq!(out.t_count(), t_after);
            (
                out,
                TacticOutcome {
                    applied: true,
                    chosen_identity: Some(format!(
                        "{}{}@{:?}",
                        desc,
                        if inverted { "^-1" } else { "" },
                        wires
                    )),
                    t_before: t0,
                    t_after,
                },
            )
        }
        _ => (
            p.clone(),
            TacticOutcome {
                applied: false,
                chosen_identity: None,
                t_before: t0,
                t_after: t0,
            },
        ),
    }
}

pub fn stomp4(p: &PhasePolynomial, s: &ParitySet) -> (PhasePolynomial, TacticOutcome) {
    assert_eq!(s.len(), 4);
    phage_apply(p, &TacticFamily::stomp4(), s)
}

pub fn stomp5(p: &PhasePolynomial, s: &ParitySet) -> (PhasePolynomial, TacticOutcome) {
    assert_eq!(s.len(), 5);
    phage_apply(p, &TacticFamily::stomp5(false), s)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PassStats {
    pub subsets_examined: u64,
    pub rewrites_accepted: u64,
    pub t_count_trajectory: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StompStats {
    pub passes: Vec<PassStats>,
}

#[derive(Clone, Debug)]
pub struct StompOptions {
    /// Number of STOMP 4 + STOMP 5 sweeps; sweeps stop early at a fixpoint.
    pub passes: u32,
    pub skip_stomp5: bool,
    /// Use the 58-identity deduplicated family instead of the full 63.
    pub family58: bool,
}

impl Default for StompOptions {
    fn default() -> Self {
        StompOptions {
            passes: 1,
            skip_stomp5: false,
            family58: false,
        }
    }
}

/// Odd-coefficient masks of p for the subset prefilter (width <= 64 fast
/// path; wider polynomials fall back to set tests).
fn odd_masks(p: &PhasePolynomial) -> Option<Vec<u64>> {
    if p.width() > 64 {
        return None;
    }
    Some(
        p.terms()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(s, _)| s.low_word())
            .collect(),
    )
}

fn sweep(p: &mut PhasePolynomial, family: &TacticFamily, stats: &mut PassStats) -> bool {
    let width = p.width();
    let mut changed = false;
    let mut masks = odd_masks(p);
    // improvement needs at least ceil((min_t+1)/2) odd terms inside S
    let need = (family.min_t + 2) / 2;
    for idx in subsets_lex(width, family.arity) {
        stats.subsets_examined += 1;
        let s = ParitySet::from_indices(width, idx.iter().copied());
        let inside = match &masks {
            Some(ms) => {
                let smask = s.low_word();
                ms.iter().filter(|m| *m & !smask == 0).count()
            }
            None => p
                .terms()
                .filter(|(set, c)| c % 2 == 1 && set.is_subset_of(&s))
                .count(),
        };
        if inside < need {
            continue;
        }
        let (next, outcome) = phage_apply(p, family, &s);
        if outcome.applied {
            debug_assert!(outcome.t_after < outcome.t_before);
            *p = next;
            masks = odd_masks(p);
            stats.rewrites_accepted += 1;
            stats.t_count_trajectory.push(outcome.t_after);
            changed = true;
        }
    }
    changed
}

/// The deployment strategy: per pass, STOMP 4 over all 4-subsets in
/// lexicographic order, then STOMP 5 over all 5-subsets likewise. The
/// T-count never increases; passes stop early once a full pass accepts
/// nothing.
pub fn run_strategy(p: &PhasePolynomial, opts: &StompOptions) -> (PhasePolynomial, StompStats) {
    let f4 = TacticFamily::stomp4();
    let f5 = if opts.skip_stomp5 {
        None
    } else {
        Some(TacticFamily::stomp5(opts.family58))
    };
    let mut out = p.clone();
    let mut stats = StompStats::default();
    for _ in 0..opts.passes.max(1) {
        let mut pass = PassStats {
            t_count_trajectory: vec![out.t_count()],
            ..Default::default()
        };
        let mut changed = sweep(&mut out, &f4, &mut pass);
        if let Some(f5) = &f5 {
            changed |= sweep(&mut out, f5, &mut pass);
        }
        stats.passes.push(pass);
        if !changed {
            break;
        }
    }
    (out, stats)
}

/// Exact nonnegative rational, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub num: u64,
    pub den: u64,
}

impl Density {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0);
        let g = gcd(num.max(1), den);
        if num == 0 {
            Density { num: 0, den: 1 }
        } else {
            Density {
                num: num / g,
                den: den / g,
            }
        }
    }

    fn add(self, other: Density) -> Density {
        Density::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }
}

impl std::fmt::Display for Density {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Density of T-phase gadgets at wire q: sum over k of (number of
/// odd-coefficient k-gadgets containing q) / k.
pub fn density(p: &PhasePolynomial, q: u32) -> Density {
    let mut d = Density::new(0, 1);
    for (s, c) in p.terms() {
        if c % 2 == 1 && s.contains(q) {
            d = d.add(Density::new(1, s.len() as u64));
        }
    }
    d
}

/// The 3-max density: the same sum restricted to gadgets of size <= 3.
pub fn density3(p: &PhasePolynomial, q: u32) -> Density {
    let mut d = Density::new(0, 1);
    for (s, c) in p.terms() {
        if c % 2 == 1 && s.contains(q) && s.len() <= 3 {
            d = d.add(Density::new(1, s.len() as u64));
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nest::{gen_composite, verify_constant};

    fn full_set(n: u32) -> ParitySet {
        ParitySet::from_indices(n, 0..n)
    }

    #[test]
    fn empty_polynomial_is_left_alone() {
        let p = PhasePolynomial::new(4);
        let (q, out) = stomp4(&p, &full_set(4));
        assert!(!out.applied);
        assert!(q.is_empty());
    }

    #[test]
    fn nest_itself_is_cancelled_to_zero() {
        let nest = gen_nest(&full_set(4)).unwrap();
        let (q, out) = stomp4(&nest.poly, &full_set(4));
        assert!(out.applied);
        assert_eq!(q.t_count(), 0);
        assert!(verify_constant(&q).unwrap());
    }

    #[test]
    fn partial_match_follows_the_half_rule() {
        // negate 8 of the 14 small T-gadgets of N_S: fusing N_S cancels
        // those 8 and introduces the remaining 6 small odd terms plus the
        // 4-gadget, so the T-count goes 8 -> 7
        let nest = gen_nest(&full_set(4)).unwrap();
        let mut p = PhasePolynomial::new(4);
        let mut taken = 0;
        for (s, c) in nest.poly.sorted_terms() {
            if taken == 8 {
                break;
            }
            if c % 2 == 1 && s.len() <= 3 {
                p.add(s.clone(), (8 - c) % 8);
                taken += 1;
            }
        }
        assert_eq!(p.t_count(), 8);
        let (q, out) = stomp4(&p, &full_set(4));
        assert!(out.applied);
        assert_eq!(out.t_before, 8);
        assert_eq!(out.t_after, 7);
        assert_eq!(q.t_count(), 7);
    }

    #[test]
    fn stomp5_family_sizes() {
        assert_eq!(TacticFamily::stomp5(false).len(), 63);
        assert_eq!(TacticFamily::stomp5(true).len(), 58);
    }

    #[test]
    fn stomp5_empties_a_composite() {
        let comp = gen_composite(&full_set(5), 2).unwrap();
        let (q, out) = stomp5(&comp.poly, &full_set(5));
        assert!(out.applied);
        assert_eq!(q.t_count(), 0);
    }

    #[test]
    fn all_stomp5_members_are_identities() {
        let fam = TacticFamily::stomp5(false);
        for id in fam.generate(&full_set(5)) {
            assert!(verify_constant(&id.poly).unwrap(), "{}", id.descriptor);
        }
    }

    #[test]
    fn strategy_is_monotone_and_deterministic() {
        let mut p = PhasePolynomial::new(6);
        // a composite on one 5-subset plus noise terms
        p.fuse_all(
            &gen_composite(&ParitySet::from_indices(6, [0, 1, 2, 4, 5]), 4)
                .unwrap()
                .poly,
        );
        p.add(ParitySet::from_indices(6, [3]), 1);
        p.add(ParitySet::from_indices(6, [2, 3]), 3);
        let before = p.t_count();
        let opts = StompOptions {
            passes: 4,
            ..Default::default()
        };
        let (q1, stats) = run_strategy(&p, &opts);
        let (q2, _) = run_strategy(&p, &opts);
        assert_eq!(q1, q2);
        assert!(q1.t_count() <= before);
        for w in stats
            .passes
            .iter()
            .flat_map(|ps| ps.t_count_trajectory.windows(2))
        {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn density_examples() {
        let mut p = PhasePolynomial::new(3);
        p.add(ParitySet::from_indices(3, [0]), 1);
        assert_eq!(density(&p, 0), Density::new(1, 1));

        let mut q = PhasePolynomial::new(3);
        q.add(ParitySet::from_indices(3, [0, 1]), 1);
        q.add(ParitySet::from_indices(3, [0]), 2);
        assert_eq!(density(&q, 0), Density::new(1, 2));

        let ccz = PhasePolynomial::decompose_ccz(3, 0, 1, 2);
        assert_eq!(density(&ccz, 0), Density::new(7, 3));
        assert_eq!(density3(&ccz, 0), Density::new(7, 3));
    }
}
