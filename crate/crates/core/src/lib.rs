pub mod affine;
pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod permutation;
pub mod wangsun;
