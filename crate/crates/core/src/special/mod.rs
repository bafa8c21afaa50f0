//! Special functions needed by the Weber mode evaluator.

mod dd;
mod gamma;
mod kummer;

pub use gamma::{gamma, ln_gamma, recip_gamma};
pub use kummer::{
    kummer_1f1, kummer_1f1_traced, kummer_1f1_with_derivatives, KummerMethod,
    ASYMPTOTIC_MIN_ABS_Z, ASYMPTOTIC_TOL,
};
