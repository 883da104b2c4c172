// SPDX-License-Identifier: Apache-2.0
//! Keyed random streams and `T_p` subset sampling.
//!
//! A stream is addressed by `(seed, tag, trial)`; the first two pick a ChaCha
//! key and the trial picks the ChaCha stream, so trial `i` draws the same bits
//! no matter which thread runs it or in what order.

use crate::set::{SetRef, VertexSet};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type StreamRng = ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, used to turn string labels into stream tags.
pub fn tag_of(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub seed: u64,
    pub tag: u64,
    pub trial: u64,
}

impl StreamKey {
    pub fn new(seed: u64, label: &str, trial: u64) -> Self {
        StreamKey {
            seed,
            tag: tag_of(label),
            trial,
        }
    }

    /// A child key with the same trial and a tag mixed with `label`.
    pub fn derive(&self, label: &str) -> Self {
        let mut s = self.tag ^ tag_of(label).rotate_left(17);
        StreamKey {
            seed: self.seed,
            tag: splitmix64(&mut s),
            trial: self.trial,
        }
    }

    pub fn rng(&self) -> StreamRng {
        let mut state = self.seed ^ self.tag.rotate_left(32);
        let mut key = [0u8; 32];
        for chunk in key.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.trial);
        rng
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("sampling probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Draws from `T_p(universe)`: every member kept independently with probability `p`.
pub fn sample_subset<R: RngCore + ?Sized>(
    universe: SetRef<'_>,
    p: f64,
    rng: &mut R,
) -> Result<VertexSet, SampleError> {
    let mut out = VertexSet::empty(universe.universe());
    sample_into(universe, p, rng, out.words_mut())?;
    Ok(out)
}

/// As [`sample_subset`], writing into zeroed words of the same stride.
pub fn sample_into<R: RngCore + ?Sized>(
    universe: SetRef<'_>,
    p: f64,
    rng: &mut R,
    out: &mut [u64],
) -> Result<(), SampleError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SampleError::BadProbability(p));
    }
    let n = universe.universe();
    let uw = universe.words();
    if p == 0.0 || n == 0 {
        return Ok(());
    }
    if p == 1.0 {
        out.copy_from_slice(uw);
    } else if p == 0.5 {
        for (o, &u) in out.iter_mut().zip(uw) {
            *o = rng.next_u64() & u;
        }
    } else if p < 0.25 {
        // Geometric skips over [0, n), then intersect with the universe.
        let ln_q = (-p).ln_1p();
        let mut pos = 0usize;
        loop {
            let u: f64 = 1.0 - rng.gen::<f64>();
            let skip = (u.ln() / ln_q).floor();
            if skip >= (n - pos) as f64 {
                break;
            }
            pos += skip as usize;
            out[pos >> 6] |= 1 << (pos & 63);
            pos += 1;
            if pos >= n {
                break;
            }
        }
        for (o, &u) in out.iter_mut().zip(uw) {
            *o &= u;
        }
    } else {
        let threshold = (p * 2f64.powi(64)) as u64;
        for v in universe.iter() {
            if rng.next_u64() < threshold {
                out[v >> 6] |= 1 << (v & 63);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rates() {
        let u = VertexSet::full(100);
        let mut rng = StreamKey::new(1, "t", 0).rng();
        assert!(sample_subset(u.as_ref(), 0.0, &mut rng).unwrap().is_empty());
        assert_eq!(sample_subset(u.as_ref(), 1.0, &mut rng).unwrap(), u);
        assert_eq!(
            sample_subset(u.as_ref(), 1.5, &mut rng),
            Err(SampleError::BadProbability(1.5))
        );
        assert!(sample_subset(u.as_ref(), -0.1, &mut rng).is_err());
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4)
            .map(|t| StreamKey::new(9, "x", t).rng().next_u64())
            .collect();
        let b: Vec<u64> = (0..4)
            .rev()
            .map(|t| StreamKey::new(9, "x", t).rng().next_u64())
            .collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
        assert_ne!(
            StreamKey::new(9, "x", 0).rng().next_u64(),
            StreamKey::new(9, "y", 0).rng().next_u64()
        );
    }

    #[test]
    fn respects_universe() {
        let u = VertexSet::from_members(300, (0..300).filter(|v| v % 3 == 0));
        let mut rng = StreamKey::new(2, "u", 0).rng();
        for p in [0.01, 0.1, 0.3, 0.5, 0.9] {
            let s = sample_subset(u.as_ref(), p, &mut rng).unwrap();
            assert!(s.as_ref().is_subset(u.as_ref()));
        }
    }
}
