//! Exact computations with finite symplectic reflection groups.
//!
//! Scalars are cyclotomic numbers ([`cyclo`]); matrices, subspaces and
//! symplectic forms live in [`linalg`]; finite matrix groups with orbit,
//! stabilizer and stabilizer-chain machinery in [`matgroup`]; reflection
//! detection, parabolic classification and recognition in [`reflection`];
//! concrete groups in [`catalogue`].

pub mod cyclo;
pub mod linalg;
pub mod matgroup;
pub mod catalogue;
pub mod reflection;
