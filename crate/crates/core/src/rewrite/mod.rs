//! Morphisms, matchings, reaction schemes, double-pushout rewriting and the
//! category of reactions.

mod dpo;
mod morphism;
mod reaction;
mod scheme;

pub use dpo::{dpo_apply, Dpo};
pub use morphism::{compose_maps, enumerate_matchings, is_matching, is_morphism, morphism_defect};
pub use reaction::{
    alpha_closure, compose_reactions, is_chemical_subgraph, reaction_from_dpo, reaction_to_dpo, smallest_chemical_subgraph, Reaction,
};
pub use scheme::{intersection_along_bijection, labelled_bijection_defect, scheme_from_span, scheme_to_span, ReactionScheme, Span};
