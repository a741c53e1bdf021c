//! Permutation groups: Schreier–Sims stabilizer chains, cosets, conjugate
//! containment, `C₂ ≀ S_k`, the transitive-group table for degrees 2–8, and
//! invariant subspaces of `F₂^k`.

mod f2;
mod group;
mod perm;
mod table;

pub use f2::{invariant_subspaces, permute_bits, F2Subspace};
pub use group::{block_action, wreath_c2_sk, PermGroup};
pub use perm::Perm;
pub use table::{compute_maximal_subgroups, MaximalSubgroup, TransitiveTable, TransitiveTableEntry};

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("group is not transitive")]
    Intransitive,
    #[error("no table entry matches; the transitive table is incomplete")]
    NoMatch,
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("parse error: {0}")]
    Parse(String),
}
