//! Parity sets: nonempty subsets of wires, the support of a phase gadget.
//!
//! Widths up to 64 use a single machine word; wider circuits fall back to a
//! boxed word vector. Benchmarks in this repository stay well below 64 wires,
//! the wide path exists for generality.

use std::fmt;

/// A set of wire indices, stored as a bitset of fixed width.
///
/// The empty set is representable (it arises transiently during conjugation,
/// when a gadget collapses to a global phase) but is never stored in a
/// [`crate::poly::PhasePolynomial`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParitySet {
    width: u32,
    bits: Bits,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Bits {
    Small(u64),
    Wide(Box<[u64]>),
}

impl ParitySet {
    pub fn empty(width: u32) -> Self {
        let bits = if width <= 64 {
            Bits::Small(0)
        } else {
            Bits::Wide(vec![0u64; width.div_ceil(64) as usize].into_boxed_slice())
        };
        ParitySet { width, bits }
    }

    pub fn singleton(width: u32, wire: u32) -> Self {
        let mut s = Self::empty(width);
        s.insert(wire);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(width: u32, indices: I) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn insert(&mut self, wire: u32) {
        assert!(
            wire < self.width,
            "wire {} out of range {}",
            wire,
            self.width
        );
        match &mut self.bits {
            Bits::Small(w) => *w |= 1 << wire,
            Bits::Wide(v) => v[(wire / 64) as usize] |= 1 << (wire % 64),
        }
    }

    pub fn contains(&self, wire: u32) -> bool {
        if wire >= self.width {
            return false;
        }
        match &self.bits {
            Bits::Small(w) => (w >> wire) & 1 == 1,
            Bits::Wide(v) => (v[(wire / 64) as usize] >> (wire % 64)) & 1 == 1,
        }
    }

    /// Toggle membership of `wire`; this is the symmetric difference with {wire}.
    pub fn toggle(&mut self, wire: u32) {
        assert!(wire < self.width);
        match &mut self.bits {
            Bits::Small(w) => *w ^= 1 << wire,
            Bits::Wide(v) => v[(wire / 64) as usize] ^= 1 << (wire % 64),
        }
    }

    pub fn len(&self) -> u32 {
        match &self.bits {
            Bits::Small(w) => w.count_ones(),
            Bits::Wide(v) => v.iter().map(|w| w.count_ones()).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.bits {
            Bits::Small(w) => *w == 0,
            Bits::Wide(v) => v.iter().all(|w| *w == 0),
        }
    }

    pub fn xor(&self, other: &ParitySet) -> ParitySet {
        assert_eq!(self.width, other.width, "parity set width mismatch");
        let bits = match (&self.bits, &other.bits) {
            (Bits::Small(a), Bits::Small(b)) => Bits::Small(a ^ b),
            (Bits::Wide(a), Bits::Wide(b)) => {
                Bits::Wide(a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect())
            }
            _ => unreachable!("width fixed per representation"),
        };
        ParitySet {
            width: self.width,
            bits,
        }
    }

    pub fn is_subset_of(&self, other: &ParitySet) -> bool {
        match (&self.bits, &other.bits) {
            (Bits::Small(a), Bits::Small(b)) => a & !b == 0,
            (Bits::Wide(a), Bits::Wide(b)) => a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0),
            _ => false,
        }
    }

    /// Parity of the overlap with a basis state given as a bitset of the same width.
    pub fn odd_overlap(&self, assignment: &ParitySet) -> bool {
        match (&self.bits, &assignment.bits) {
            (Bits::Small(a), Bits::Small(b)) => (a & b).count_ones() % 2 == 1,
            (Bits::Wide(a), Bits::Wide(b)) => {
                a.iter()
                    .zip(b.iter())
                    .map(|(x, y)| (x & y).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            }
            _ => unreachable!(),
        }
    }

    /// Parity of overlap with a basis state packed into a u64 (width <= 64 only).
    pub fn odd_overlap_u64(&self, z: u64) -> bool {
        match &self.bits {
            Bits::Small(w) => (w & z).count_ones() % 2 == 1,
            Bits::Wide(v) => (v[0] & z).count_ones() % 2 == 1,
        }
    }

    /// Ascending wire indices.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let width = self.width;
        (0..width).filter(move |i| self.contains(*i))
    }

    pub fn indices(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Widen to `width`, keeping members; used when ancillas extend a circuit.
    pub fn widened(&self, width: u32) -> ParitySet {
        assert!(width >= self.width);
        let mut s = ParitySet::empty(width);
        for i in self.iter() {
            s.insert(i);
        }
        s
    }

    /// Low word of the bitset; complete only when width <= 64.
    pub fn low_word(&self) -> u64 {
        match &self.bits {
            Bits::Small(w) => *w,
            Bits::Wide(v) => v[0],
        }
    }
}

impl fmt::Debug for ParitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}")
    }
}

/// All size-`k` subsets of `0..n` in lexicographic order of their index lists.
pub fn subsets_lex(n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<u32> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to next combination
        let mut i = k as i64 - 1;
        while i >= 0 && cur[i as usize] == n - k + i as u32 {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        cur[i as usize] += 1;
        for j in (i as usize + 1)..k as usize {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_toggle() {
        let mut s = ParitySet::empty(5);
        assert!(s.is_empty());
        s.insert(3);
        assert!(s.contains(3));
        assert!(!s.contains(2));
        s.toggle(3);
        assert!(s.is_empty());
    }

    #[test]
    fn xor_is_symmetric_difference() {
        let a = ParitySet::from_indices(6, [0, 2, 4]);
        let b = ParitySet::from_indices(6, [2, 3]);
        assert_eq!(a.xor(&b).indices(), vec![0, 3, 4]);
    }

    #[test]
    fn wide_widths_behave_like_small() {
        let mut s = ParitySet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert_eq!(s.indices(), vec![0, 64, 129]);
        let t = ParitySet::singleton(130, 64);
        assert_eq!(s.xor(&t).indices(), vec![0, 129]);
    }

    #[test]
    fn odd_overlap_counts_intersection_parity() {
        let s = ParitySet::from_indices(4, [0, 1]);
        let z11 = ParitySet::from_indices(4, [0, 1]);
        let z10 = ParitySet::from_indices(4, [0]);
        assert!(!s.odd_overlap(&z11));
        assert!(s.odd_overlap(&z10));
    }

    #[test]
    fn subsets_lex_order() {
        let subs = subsets_lex(4, 2);
        assert_eq!(
            subs,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets_lex(5, 5).len(), 1);
        assert!(subsets_lex(3, 4).is_empty());
    }
}
