//! Deterministic parallel loss/gradient accumulation.

use rayon::prelude::*;

/// Chunk size for parallel gradient accumulation. Fixed (not derived from the
/// thread count) so results are bit-identical on any machine.
const CHUNK: usize = 32;

/// Sums `f(item, grad_buffer)` over `items` in parallel.
///
/// Each chunk accumulates into its own buffer sequentially; chunk results are
/// reduced in index order, so the float summation order never depends on
/// scheduling. Returns `(Σ loss, Σ grads)`.
pub fn parallel_loss_grad_sum<T, F>(items: &[T], grad_len: usize, f: F) -> (f64, Vec<f64>)
where
    T: Sync,
    F: Fn(&T, &mut [f64]) -> f64 + Sync,
{
    let partials: Vec<(f64, Vec<f64>)> = items
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut grads = vec![0.0; grad_len];
            let mut loss = 0.0;
            for item in chunk {
                loss += f(item, &mut grads);
            }
            (loss, grads)
        })
        .collect();
    let mut total_loss = 0.0;
    let mut total_grads = vec![0.0; grad_len];
    for (loss, grads) in partials {
        total_loss += loss;
        for (t, g) in total_grads.iter_mut().zip(grads.iter()) {
            *t += g;
        }
    }
    (total_loss, total_grads)
}

/// Order-preserving parallel map with the same fixed chunking.
pub fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    items.par_chunks(CHUNK).flat_map_iter(|chunk| chunk.iter().map(&f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_sequential_sum() {
        let items: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let (loss, grads) = parallel_loss_grad_sum(&items, 2, |x, g| {
            g[0] += x;
            g[1] += x * x;
            x.sin()
        });
        let seq_loss: f64 = items.chunks(32).map(|c| c.iter().map(|x| x.sin()).sum::<f64>()).sum();
        let seq0: f64 = items.chunks(32).map(|c| c.iter().sum::<f64>()).sum();
        assert_eq!(loss.to_bits(), seq_loss.to_bits());
        assert_eq!(grads[0].to_bits(), seq0.to_bits());
    }

    #[test]
    fn parallel_map_preserves_order() {
        let items: Vec<usize> = (0..500).collect();
        let out = parallel_map(&items, |&i| i * 2);
        assert!(out.iter().enumerate().all(|(i, &v)| v == i * 2));
    }
}
