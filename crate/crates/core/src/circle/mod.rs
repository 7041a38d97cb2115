//! Dedekind sums, alpha-Kloosterman sums and the exact circle-method
//! series for p_alpha(n).

mod dedekind;
mod exact;
mod functional;
mod kloosterman;
mod series;

pub use dedekind::{dedekind_sum, dedekind_sum_naive, inverse_neg};
pub use exact::{empirical_min_terms, exact_recovery, exact_value, guaranteed_terms, ExactRecovery, MAX_DIGITS};
pub use functional::{functional_equation_residual, transformation_points};
pub use kloosterman::kloosterman;
pub use series::{
    asymptotic, m_term_delta, partial_series, partial_series_terms, tail_bound, Asymptotic, CirclePoint,
    SeriesApproximation, SeriesRecord, TailBound,
};
