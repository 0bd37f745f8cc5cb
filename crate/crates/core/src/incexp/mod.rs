//! Incomplete exponential functions of matrix argument, their generalized forms, and the
//! quadrature-based integral representations used to cross-check them.

mod integral;
mod series;

pub use integral::{
    e_bessel_form, e_integral, fractional_one_sided, fractional_two_sided, gamma_type_integral, gen_integral,
    gen_upper_beta, pe_q_integral, prq_beta, prq_gamma_kernel, Range,
};
#[allow(non_snake_case)]
pub use series::{
    delta_augmented, delta_params, e_dx, e_lower, e_upper, exponential_kernel_closed, fractional_one_sided_rhs,
    fractional_two_sided_rhs, gamma_shift_ratio, gen_half, gen_pE_q, gen_pE_q_addition, gen_pE_q_derivative,
    gen_pE_q_dx, gen_pE_q_first_derivative, gen_pE_q_multiplication, gen_pe_q, pE_q, pe_q, pe_q_half, prq_derivative,
    shifted_params, Half,
};

#[cfg(test)]
mod tests;
