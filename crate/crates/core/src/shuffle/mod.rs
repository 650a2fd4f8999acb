//! The `(b, n, p)`-shuffle and its correspondence with carries.
//!
//! A shuffle step is encoded by a GSR word `A ∈ D(b)^n`: card `i` gets label
//! `a_i`, cards are sorted stably by label, and the label's residue mod `p`
//! becomes the card's color shift. [`gsr_to_permutation`] turns such a word
//! into an element `π_b[A]` of `G_{p,n}`.
//!
//! Multi-step runs compose through the star and sharp maps, and the two
//! bijections [`bijection_plus`] and [`bijection_minus`] send summand digits to
//! shuffle words so that carries become descents step by step.

mod bijection;
mod counting;
mod maps;
mod words;

pub use bijection::{
    bijection_minus, bijection_minus_stages, bijection_plus, bijection_plus_stages,
    sample_sequence, sample_sequence_from, BijectionStages, ShuffleKind, ShuffleTrace,
};
pub use counting::{
    gessel_coefficients, gsr_counts, one_shuffle_descent_law, shuffle_probability,
    GesselMismatch, GesselTable, GESSEL_LIMIT,
};
pub use maps::{bar_map, bar_map_inverse, f_map, f_word, sharp_compose, sharp_word, star_map, unstar};
pub use words::{
    gsr_to_permutation, stable_ranks, word_descents, DigitWord, MultiDigitWord, WordDescentVariant,
};
