//! Exhaustive set-partition enumeration, the combinatorial ground truth for
//! the m = 1 (r-Stirling) specialization. Partitions of {1, ..., n+r} are
//! walked in restricted-growth order; a partition is counted when it has
//! exactly k+r blocks and the elements 1, ..., r sit in pairwise-distinct
//! blocks.

use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Bell(12) is about 4.2 million partitions; past that the oracle adds no
/// confidence per unit time.
pub const ORACLE_GUARD: u32 = 12;

/// Counts partitions of an (n+r)-set into k+r nonempty blocks with the
/// first r elements in distinct blocks. Equals rstirling2(n, k, r).
pub fn partition_oracle(n: u32, k: u32, r: u32) -> Result<Rat> {
    if n + r > ORACLE_GUARD {
        return Err(Error::OracleGuard(n + r, ORACLE_GUARD));
    }
    let size = n + r;
    let target = k + r;
    if target > size || (size > 0 && target == 0) {
        return Ok(rat(0));
    }
    if size == 0 {
        return Ok(rat(1));
    }
    let mut block_of = vec![0u32; size as usize];
    let count = assign(&mut block_of, 0, 0, r, target);
    Ok(rat(count as i64))
}

/// Restricted-growth walk: element `pos` joins one of the `used` open
/// blocks or opens block `used`. The first r elements may only open new
/// blocks, which forces them pairwise distinct without any bookkeeping.
fn assign(block_of: &mut [u32], pos: usize, used: u32, r: u32, target: u32) -> u64 {
    if pos == block_of.len() {
        return u64::from(used == target);
    }
    let remaining = (block_of.len() - pos) as u32;
    if used + remaining < target {
        return 0;
    }
    let mut count = 0;
    if (pos as u32) >= r {
        for b in 0..used {
            block_of[pos] = b;
            count += assign(block_of, pos + 1, used, r, target);
        }
    }
    if used < target {
        block_of[pos] = used;
        count += assign(block_of, pos + 1, used + 1, r, target);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitney::rstirling2;

    #[test]
    fn listed_examples() {
        assert_eq!(partition_oracle(3, 1, 0).unwrap(), rat(1));
        assert_eq!(partition_oracle(3, 2, 0).unwrap(), rat(3));
        assert_eq!(partition_oracle(2, 1, 1).unwrap(), rat(3));
        assert_eq!(partition_oracle(0, 0, 0).unwrap(), rat(1));
        assert_eq!(partition_oracle(4, 2, 0).unwrap(), rat(7));
    }

    #[test]
    fn guard_rejects_large_inputs() {
        assert!(partition_oracle(10, 3, 3).is_err());
        assert!(partition_oracle(12, 3, 0).is_ok());
    }

    #[test]
    fn matches_rstirling_on_small_grid() {
        for r in 0..=2u32 {
            for n in 0..=7 - r {
                for k in 0..=n {
                    assert_eq!(
                        partition_oracle(n, k, r).unwrap(),
                        rstirling2(n, k, r),
                        "mismatch at n={n} k={k} r={r}"
                    );
                }
            }
        }
    }
}
