//! Index-addressable random streams.
//!
//! Sample `i` consumes a fixed number of 64-bit draws starting at word
//! position `i * words_per_sample` of a ChaCha8 keystream keyed by the seed,
//! so it is a pure function of `(seed, i)`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Samples generated per work unit.
const CHUNK: usize = 8192;

/// ChaCha words consumed by one `next_u64`.
const WORDS_PER_U64: u128 = 2;

/// Generator positioned at the first draw of sample `index`.
pub fn stream_at(seed: u64, index: u64, uniforms_per_sample: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(index as u128 * uniforms_per_sample as u128 * WORDS_PER_U64);
    rng
}

/// Uniform on `[0, 1)` with 53 random bits.
#[inline]
pub fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Builds `n` samples in parallel. `make` receives the sample's
/// `uniforms_per_sample` uniforms in `[0, 1)`.
pub fn generate<T, F>(n: usize, seed: u64, uniforms_per_sample: usize, make: F) -> Vec<T>
where
    T: Send + Copy + Default,
    F: Fn(&[f64]) -> T + Sync,
{
    let mut out = vec![T::default(); n];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let start = (c * CHUNK) as u64;
            let mut rng = stream_at(seed, start, uniforms_per_sample);
            let mut u = vec![0.0; uniforms_per_sample];
            for slot in chunk.iter_mut() {
                for v in u.iter_mut() {
                    *v = uniform01(&mut rng);
                }
                *slot = make(&u);
            }
        });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_depends_only_on_seed_and_index() {
        let all = generate(20_000, 7, 3, |u| u[0] + 10.0 * u[1] + 100.0 * u[2]);
        for &i in &[0usize, 1, 8191, 8192, 12_345, 19_999] {
            let mut rng = stream_at(7, i as u64, 3);
            let u: Vec<f64> = (0..3).map(|_| uniform01(&mut rng)).collect();
            assert_eq!(all[i], u[0] + 10.0 * u[1] + 100.0 * u[2]);
        }
    }

    #[test]
    fn independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| generate(50_000, 42, 2, |u| u[0] * u[1]))
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn seeds_differ() {
        assert_ne!(generate(4, 1, 1, |u| u[0]), generate(4, 2, 1, |u| u[0]));
    }

    #[test]
    fn uniforms_in_unit_interval() {
        let v = generate(100_000, 3, 1, |u| u[0]);
        assert!(v.iter().all(|&x| (0.0..1.0).contains(&x)));
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        assert!((mean - 0.5).abs() < 3.0 * (1.0f64 / 12.0 / 1e5).sqrt());
    }
}
