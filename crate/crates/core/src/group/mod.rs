//! Finite groups, subgroup lattices and norm idempotents in `Q[G]`.

pub mod algebra;
pub mod finite;
pub mod subgroups;

pub use algebra::{
    find_relations, norm_idempotent, relation_coefficient_sum, verify_relation,
    GroupAlgebraElement, IdempotentRelation,
};
pub use finite::{build_group, parse_cycles, FiniteGroup};
pub use subgroups::{subgroups, Subgroup};
