//! Small deterministic PRNG for seeded sampling.
//!
//! SplitMix64: portable, allocation-free, and stable across platforms, which
//! keeps seeded verification reports byte-identical between runs.

use crate::scalar::{FieldElement, Rational};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small rational with numerator in `-bound..=bound` and denominator in `1..=den_bound`.
    pub fn rational(&mut self, bound: i64, den_bound: i64) -> Rational {
        Rational::new(self.int_in(-bound, bound), self.int_in(1, den_bound))
    }

    pub fn nonzero_rational(&mut self, bound: i64, den_bound: i64) -> Rational {
        loop {
            let q = self.rational(bound, den_bound);
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn element(&mut self, bound: i64, den_bound: i64) -> FieldElement {
        FieldElement::from_rational(self.rational(bound, den_bound))
    }

    pub fn nonzero_element(&mut self, bound: i64, den_bound: i64) -> FieldElement {
        FieldElement::from_rational(self.nonzero_rational(bound, den_bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
