//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CfpError, Result};
use crate::instance::CfpInstance;
use crate::matrix::BoolMatrix;
use crate::rational::Rational;

/// Random `m x p` instance where each entry is 1 with probability `density`.
///
/// Entries are drawn row-major from a ChaCha8 stream seeded with `seed`, so
/// the output is identical across platforms and thread counts.
pub fn generate(m: usize, p: usize, density: Rational, seed: u64) -> Result<CfpInstance> {
    if density < Rational::ZERO || density > Rational::ONE {
        return Err(CfpError::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    let den = u64::try_from(density.den()).map_err(|_| CfpError::Overflow)?;
    let num = u64::try_from(density.num()).map_err(|_| CfpError::Overflow)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrix = BoolMatrix::from_fn(m, p, |_, _| rng.gen_range(0..den) < num)?;
    Ok(CfpInstance::new(matrix))
}
