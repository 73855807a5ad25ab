use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// ChaCha20 keyed by `seed`, positioned on the independent stream `stream`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Label and draw streams owned by replication `r`.
pub fn replication_rngs(seed: u64, replication: usize) -> (ChaCha20Rng, ChaCha20Rng) {
    let base = 2 * (replication as u64 + 1);
    (stream_rng(seed, base), stream_rng(seed, base + 1))
}
