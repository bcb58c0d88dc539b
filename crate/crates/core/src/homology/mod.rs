//! Exact integer homology, `Z/p` Betti numbers, and fundamental-group
//! presentations.

pub mod chain;
pub mod groups;
pub mod presentation;
pub mod snf;

pub use chain::{simplicial_chain_complex, ChainComplex, SparseMatrix};
pub use groups::{
    chain_homology, chain_homology_mod_p, homology, homology_mod_p, is_acyclic, is_homology_ball,
    is_homology_sphere, is_pseudomanifold, AbelianGroup, Coefficients, HomologyGroups,
};
pub use presentation::{
    abelianization, edge_path_presentation, tietze_simplify, GroupPresentation, Letter,
    TietzeOutcome, TietzeStatus, Word, DEFAULT_TIETZE_BUDGET,
};
pub use snf::{rank_mod_p, smith_normal_form, SnfResult};
