//! Exact linear algebra over a [`Field`](crate::Field): dense matrices, sparse
//! linear maps, row reduction and labelled tensor contraction.
//!
//! Tensor legs are flattened row-major everywhere: the multi-index
//! (i_1, ..., i_r) with dimensions (d_1, ..., d_r) sits at
//! ((i_1 d_2 + i_2) d_3 + ...) + i_r.

mod matrix;
mod solve;
mod sparse;
mod tensor;

pub use matrix::Matrix;
pub use solve::{coordinates, same_column_space, solve_linear, Reduced, RowReducer, Solution};
pub use sparse::{apply_kron, eval_chain, flatten, unflatten, Accumulator, LinMap, SparseVec};
pub use tensor::{contract, SparseTensor, Tensor3, Term};
