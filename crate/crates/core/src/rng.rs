use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifies one independent random stream: ChaCha8 keyed by `master_seed`,
/// with `stream_id` selecting the 64-bit stream (nonce).
///
/// Streams are independent of each other and of the order in which they are
/// consumed, so trajectory `i` of an ensemble draws the same variates no
/// matter how the ensemble is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub const fn new(master_seed: u64, stream_id: u64) -> Self {
        RngStream {
            master_seed,
            stream_id,
        }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a seed for a cell of an experiment grid from the master seed and
/// the cell's indices. A pure function of its inputs.
pub fn derive_seed(master_seed: u64, indices: &[u64]) -> u64 {
    indices
        .iter()
        .fold(splitmix64(master_seed), |acc, &i| splitmix64(acc ^ splitmix64(i)))
}
