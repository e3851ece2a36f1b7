//! The extended affine Weyl group `P(R^vee) ⋊ Aut(R)`, its action on
//! alcoves, lengths, and Bruhat orders.

pub mod alcove;
pub mod bruhat;
pub mod element;
pub mod formula;

pub use alcove::{
    extended_word, in_affine_weyl, length, length_ball, omega_decompose, omega_group, omega_part, reduced_word,
    separating_walls, stabilizes, word_labels, word_product, Alcove, Generator, GeneratorLabel,
};
pub use bruhat::{
    bruhat_leq, bruhat_leq_subword, double_coset_min, double_coset_min_in, element_label, facet_group, hasse_dot,
    lower_closure, lower_covers, lower_interval, weak_bruhat_leq,
};
pub use element::{Element, ElementJson, LinearJson};
pub use formula::{case_count, length_formula, r_f_theta, theta_fixes_facet, wall_count_contribution};
