//! Constructive speedup transformations: given restriction or degeneration
//! data, manufacture new verified degenerations with extra direct summands.

pub mod compress;
pub mod decomp;
pub mod direct_sum;
pub mod families;
pub mod free_lunch;
pub mod generic333;
pub mod generic_square;
pub mod iterate;
pub mod multi_slice;
pub mod one_slice;
pub mod partition;
pub mod random;

pub use compress::{compress_one_slice_sum, Compression};
pub use decomp::{
    cw2_prime_decomposition, cw2_prime_scalars, cw_border_decomposition, cw_minrank_scalars,
    slice_matrix, RankOneDecomposition, RankOneTerm, SliceScalars,
};
pub use direct_sum::{direct_sum_identity, DirectSumIdentity};
pub use families::{kron_family, remove_target_block};
pub use free_lunch::{free_lunch, free_lunch_degen, FreeLunchOutput};
pub use generic333::{generic_333_restriction, rational_roots, seeded_333, Generic333};
pub use generic_square::{
    generic_square_oneslice, generic_square_partitioned, rect_restriction_of_square,
    GenericSquareSpeedup,
};
pub use iterate::{iterate_speedup, IterateRecord};
pub use one_slice::{add_one_slice, one_slice_speedup, OneSliceExtension, OneSliceSpeedup};
pub use partition::{partitioned_speedup, Partition, PartitionedSpeedup};

/// Symbolic verification is skipped above this total coefficient count;
/// operations then return bookkeeping-only records.
pub const VERIFICATION_COEFF_CAP: usize = 1_000_000;
