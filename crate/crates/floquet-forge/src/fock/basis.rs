use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Spin::Up => "up",
            Spin::Down => "dn",
        }
    }
}

/// Optional restriction of a sector to a subset of occupation patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    None,
    /// Keep patterns with at least `min` set bits inside `mask`.
    MinOccupied {
        mask: u64,
        min: u32,
    },
}

impl Restriction {
    fn keeps(&self, state: u64) -> bool {
        match *self {
            Restriction::None => true,
            Restriction::MinOccupied { mask, min } => (state & mask).count_ones() >= min,
        }
    }
}

/// Occupation basis of `n_orb` spatial orbitals per spin at fixed particle
/// numbers. Spin-up occupations live in the low `n_orb` bits of each pattern,
/// spin-down in the next `n_orb` bits. Patterns are stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    n_orb: usize,
    n_up: usize,
    n_down: usize,
    restriction: Restriction,
    states: Vec<u64>,
}

pub fn build_sector_basis(l: usize, n_up: usize, n_down: usize) -> Result<SectorBasis> {
    SectorBasis::new(l, n_up, n_down, Restriction::None)
}

/// Binomial coefficient, exact for the sizes a 64-bit pattern admits.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All `n`-bit-set patterns below `1 << width`, ascending (Gosper's hack).
fn combinations(width: usize, n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(width, n));
    let limit = 1u64 << width;
    let mut x: u64 = (1u64 << n) - 1;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

impl SectorBasis {
    pub fn new(n_orb: usize, n_up: usize, n_down: usize, restriction: Restriction) -> Result<Self> {
        if n_orb == 0 || n_orb > 32 {
            return Err(Error::domain(format!(
                "orbital count {n_orb} outside 1..=32"
            )));
        }
        if n_up > n_orb || n_down > n_orb {
            return Err(Error::domain(format!(
                "particle numbers ({n_up}, {n_down}) exceed orbital count {n_orb}"
            )));
        }
        let ups = combinations(n_orb, n_up);
        let downs = combinations(n_orb, n_down);
        let mut states = Vec::with_capacity(ups.len() * downs.len());
        for &d in &downs {
            for &u in &ups {
                let s = u | (d << n_orb);
                if restriction.keeps(s) {
                    states.push(s);
                }
            }
        }
        Ok(SectorBasis {
            n_orb,
            n_up,
            n_down,
            restriction,
            states,
        })
    }

    pub fn n_orb(&self) -> usize {
        self.n_orb
    }

    pub fn n_up(&self) -> usize {
        self.n_up
    }

    pub fn n_down(&self) -> usize {
        self.n_down
    }

    pub fn restriction(&self) -> &Restriction {
        &self.restriction
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn state(&self, i: usize) -> u64 {
        self.states[i]
    }

    pub fn index(&self, pattern: u64) -> Option<usize> {
        self.states.binary_search(&pattern).ok()
    }

    /// Bit position of orbital `orb` with spin `s`.
    pub fn mode(&self, orb: usize, s: Spin) -> usize {
        orb + self.n_orb * s.index()
    }

    pub fn occupied(&self, state: u64, orb: usize, s: Spin) -> bool {
        state >> self.mode(orb, s) & 1 == 1
    }

    /// Build a pattern from lists of occupied orbitals (0-based).
    pub fn pattern(&self, up: &[usize], down: &[usize]) -> u64 {
        let mut p = 0u64;
        for &o in up {
            p |= 1 << o;
        }
        for &o in down {
            p |= 1 << (o + self.n_orb);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(build_sector_basis(2, 1, 1).unwrap().dim(), 4);
        assert_eq!(build_sector_basis(6, 3, 3).unwrap().dim(), 400);
        assert_eq!(build_sector_basis(10, 5, 5).unwrap().dim(), 63504);
        assert_eq!(build_sector_basis(4, 0, 4).unwrap().dim(), 1);
    }

    #[test]
    fn index_is_bijective_and_sorted() {
        let b = build_sector_basis(5, 2, 3).unwrap();
        assert!(b.states().windows(2).all(|w| w[0] < w[1]));
        for (i, &s) in b.states().iter().enumerate() {
            assert_eq!(b.index(s), Some(i));
            assert_eq!((s & 0b11111).count_ones(), 2);
            assert_eq!((s >> 5).count_ones(), 3);
        }
        assert_eq!(b, build_sector_basis(5, 2, 3).unwrap());
    }

    #[test]
    fn rejects_overfull_sector() {
        assert!(matches!(build_sector_basis(3, 4, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn restriction_filters() {
        let mask = 0b0011 | (0b0011 << 4);
        let b = SectorBasis::new(4, 2, 2, Restriction::MinOccupied { mask, min: 3 }).unwrap();
        assert!(b.states().iter().all(|s| (s & mask).count_ones() >= 3));
        // full lower pair plus single excitations: 1 + 2 * (2 * 2)
        assert_eq!(b.dim(), 9);
    }
}
