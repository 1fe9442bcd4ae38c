//! Order-3 tensors and the verification semantics of restriction and
//! degeneration.

pub mod block;
pub mod build;
pub mod degen;
pub mod tensor3;

pub use block::BlockSpec3;
pub use build::{cw_tensor, diagonal, mm_kron_regroup, mm_tensor, one_slice, reindex, CwVariant};
pub use degen::{
    fullness_index, is_isolated, verify_degeneration, DegenFamily, DegenReport, Restriction,
};
pub use tensor3::{
    apply_restriction, direct_sum, kron, permute, promote_mat, promote_tensor, Tensor3,
};
