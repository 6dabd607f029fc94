//! xorshift64*, the single pseudo-random source used for randomized splitting
//! and for battery generation, so that runs are reproducible bit for bit.

pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

const MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    /// A zero seed would lock the generator at zero; it is replaced by [`DEFAULT_SEED`].
    pub fn new(seed: u64) -> Self {
        XorShift64Star {
            state: if seed == 0 { DEFAULT_SEED } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(MULTIPLIER)
    }

    /// Top 32 bits of the output reduced mod `m`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0);
        (self.next_u64() >> 32) % m
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_outputs_are_pinned() {
        // reference values computed independently with Python big integers masked to 64 bits
        let mut r = XorShift64Star::new(1);
        assert_eq!(r.next_u64(), 0x47e4_ce4b_896c_dd1d);
        assert_eq!(r.next_u64(), 0xabcf_a6a8_e079_651d);
        assert_eq!(r.next_u64(), 0xb9d1_0d8f_eb73_1f57);
    }

    #[test]
    fn zero_seed_maps_to_default() {
        let mut a = XorShift64Star::new(0);
        let mut b = XorShift64Star::new(DEFAULT_SEED);
        for _ in 0..8 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = XorShift64Star::new(42);
        for _ in 0..1000 {
            assert!(r.below(7) < 7);
        }
    }
}
