//! Suite registry. Each check draws its own inputs from a [`Case`] and returns one or more
//! `(lhs, rhs)` pairs; the case residual is the largest pair residual.

mod basics;
mod exponential;
mod generalized;

use crate::error::Result;
use crate::matcore::{CMatrix, SpectralBox};

use super::case::Case;
use super::claims::Claim;

pub type Pairs = Vec<(CMatrix, CMatrix)>;

/// When a check is scheduled within a suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Every trial at every dimension.
    Every,
    /// Once per dimension (degenerate cases whose inputs barely matter).
    Once,
    /// Every trial, but only at dimension 1.
    ScalarOnly,
}

pub struct Check {
    pub name: &'static str,
    pub claim: Claim,
    pub tolerance: f64,
    pub schedule: Schedule,
    pub run: fn(&mut Case) -> Result<Pairs>,
}

pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    /// Runs at `r = 1` regardless of the requested dimensions.
    pub scalar_only: bool,
    pub checks: &'static [Check],
}

impl Suite {
    pub fn claims(&self) -> Vec<Claim> {
        let mut c: Vec<Claim> = self.checks.iter().map(|k| k.claim).collect();
        c.sort();
        c.dedup();
        c
    }
}

pub(crate) const STD: SpectralBox = SpectralBox::STANDARD;
/// Spectra for `A` when a fixed split point must sit far out in the tail of every weight.
pub(crate) const NARROW: SpectralBox = SpectralBox::new((0.8, 1.3), (-0.1, 0.1));
pub(crate) const X_RANGE: (f64, f64) = (0.25, 8.0);
pub(crate) const ARG_RADIUS: f64 = 0.9;

macro_rules! check {
    ($name:literal, $claim:ident, $tol:expr, $sched:ident, $f:path) => {
        Check { name: $name, claim: Claim::$claim, tolerance: $tol, schedule: Schedule::$sched, run: $f }
    };
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "preliminaries",
        description: "gamma, beta, Pochhammer and incomplete gamma matrix functions against their defining integrals and products",
        scalar_only: false,
        checks: &[
            check!("gamma_recurrence", GammaRecurrence, 1e-10, Every, basics::gamma_recurrence),
            check!("gamma_limit", GammaLimit, 1e-6, Every, basics::gamma_limit),
            check!("beta_integral", BetaIntegral, 1e-8, Every, basics::beta_integral),
            check!("pochhammer_gamma", PochhammerGamma, 1e-10, Every, basics::pochhammer_gamma),
            check!("pochhammer_multiplication", PochhammerMultiplication, 1e-10, Every, basics::pochhammer_multiplication),
            check!("incomplete_gamma_integral", IncompleteGammaIntegral, 1e-8, Every, basics::incomplete_gamma_integral),
        ],
    },
    Suite {
        name: "decompositions",
        description: "lower plus upper incomplete functions recover the complete function",
        scalar_only: false,
        checks: &[
            check!("incomplete_gamma", IncompleteGammaSplit, 1e-9, Every, basics::incomplete_gamma_split),
            check!("incomplete_pochhammer", IncompletePochhammerSplit, 1e-9, Every, basics::incomplete_pochhammer_split),
            check!("incomplete_gauss", IncompleteGaussSplit, 1e-9, Every, basics::incomplete_gauss_split),
            check!("exponential", ExponentialSplit, 1e-9, Every, basics::exponential_split),
            check!("hypergeometric_exponential", HypergeometricExponentialSplit, 1e-9, Every, basics::hypergeometric_exponential_split),
            check!("generalized", GeneralizedSplit, 1e-9, Every, basics::generalized_split),
            check!("generalized_saturation", GeneralizedSplit, 1e-9, Every, basics::generalized_saturation),
            check!("generalized_reduction", GeneralizedReduction, 1e-9, Every, basics::generalized_reduction),
        ],
    },
    Suite {
        name: "exponential_integrals",
        description: "incomplete exponentials: series against quadrature of the 0F1 integral representation",
        scalar_only: false,
        checks: &[
            check!("dual_engine", ExponentialIntegral, 1e-7, Every, exponential::dual_engine),
            check!("zero_argument", ExponentialIntegral, 1e-10, Once, exponential::zero_argument),
        ],
    },
    Suite {
        name: "bessel_connection",
        description: "incomplete exponentials as integrals against Bessel matrix functions",
        scalar_only: false,
        checks: &[
            check!("modified", BesselConnection, 1e-7, Every, exponential::bessel_modified),
            check!("oscillatory", BesselConnection, 1e-7, Every, exponential::bessel_oscillatory),
            check!("scalar_kernel", BesselConnection, 1e-9, ScalarOnly, exponential::bessel_scalar_kernel),
        ],
    },
    Suite {
        name: "exponential_derivatives",
        description: "t- and x-derivatives of the incomplete exponentials against central differences",
        scalar_only: false,
        checks: &[
            check!("first_t", ExponentialDerivatives, 1e-6, Every, exponential::first_t),
            check!("second_t", ExponentialDerivatives, 1e-4, Every, exponential::second_t),
            check!("x_derivative", ExponentialDerivatives, 1e-6, Every, exponential::x_derivative),
        ],
    },
    Suite {
        name: "hypergeometric_exponential_integrals",
        description: "pe_q and pE_q integral representations and their confluent, exponential and Gauss kernel cases",
        scalar_only: false,
        checks: &[
            check!("dual_engine", HypergeometricExponentialIntegral, 1e-7, Every, exponential::pe_q_dual_engine),
            check!("confluent_sum", ConfluentKernel, 1e-8, Every, exponential::confluent_sum),
            check!("confluent_integrals", ConfluentKernel, 1e-7, Every, exponential::confluent_integrals),
            check!("exponential_kernel", ExponentialKernel, 1e-7, Every, exponential::exponential_kernel),
            check!("gauss_kernel", GaussKernel, 1e-7, Every, exponential::gauss_kernel),
        ],
    },
    Suite {
        name: "generalized_integrals",
        description: "generalized upper function and pRq against their gamma-type integral representations",
        scalar_only: false,
        checks: &[
            check!("matrix_argument", GeneralizedUpperIntegral, 1e-7, Every, generalized::matrix_argument),
            check!("vanishing_split", GeneralizedUpperIntegral, 1e-7, Once, generalized::vanishing_split),
            check!("confluent_upper", ConfluentUpperIntegral, 1e-7, Every, generalized::confluent_upper),
            check!("gamma_kernel", GammaKernel, 1e-7, Every, generalized::gamma_kernel),
        ],
    },
    Suite {
        name: "euler_beta",
        description: "generalized upper function and pRq as Euler beta integrals of one order lower",
        scalar_only: false,
        checks: &[
            check!("generalized", EulerBetaReduction, 1e-7, Every, generalized::euler_beta_generalized),
            check!("prq", EulerBetaReductionPrq, 1e-7, Every, generalized::euler_beta_prq),
        ],
    },
    Suite {
        name: "generalized_derivatives",
        description: "v- and x-derivatives of the generalized upper function and of pRq against central differences",
        scalar_only: false,
        checks: &[
            check!("first_v", GeneralizedDerivative, 1e-6, Every, generalized::first_v),
            check!("second_v", GeneralizedDerivative, 1e-4, Every, generalized::second_v),
            check!("prq_first_v", PrqDerivative, 1e-6, Every, generalized::prq_first_v),
            check!("prq_second_v", PrqDerivative, 1e-4, Every, generalized::prq_second_v),
            check!("parameter_shift", GeneralizedPartials, 1e-6, Every, generalized::parameter_shift),
            check!("x_derivative", GeneralizedPartials, 1e-6, Every, generalized::x_derivative),
        ],
    },
    Suite {
        name: "addition_multiplication",
        description: "addition and multiplication formulas as truncated 30-term expansions",
        scalar_only: false,
        checks: &[
            check!("addition", Addition, 1e-8, Every, generalized::addition),
            check!("addition_at_zero", Addition, 1e-8, Once, generalized::addition_at_zero),
            check!("multiplication", Multiplication, 1e-8, Every, generalized::multiplication),
            check!("multiplication_at_one", Multiplication, 1e-12, Once, generalized::multiplication_at_one),
        ],
    },
    Suite {
        name: "fractional_integrals",
        description: "one- and two-sided fractional integrals against Delta(k, .)-augmented series for k = 1, 2",
        scalar_only: false,
        checks: &[
            check!("one_sided_k1", FractionalOneSided, 1e-6, Every, generalized::one_sided_k1),
            check!("one_sided_k2", FractionalOneSided, 1e-6, Every, generalized::one_sided_k2),
            check!("one_sided_zero_lambda", FractionalOneSided, 1e-6, Once, generalized::one_sided_zero_lambda),
            check!("two_sided_k1", FractionalTwoSided, 1e-6, Every, generalized::two_sided_k1),
            check!("two_sided_k2", FractionalTwoSided, 1e-6, Every, generalized::two_sided_k2),
        ],
    },
    Suite {
        name: "gauss_value",
        description: "generalized 2E1 at v = 1 against the Gauss summation value minus the lower part",
        scalar_only: false,
        checks: &[
            check!("gauss_value", GaussValue, 1e-6, Every, generalized::gauss_value),
            check!("zero_numerator", GaussValue, 1e-6, Once, generalized::gauss_zero_numerator),
        ],
    },
    Suite {
        name: "recurrence",
        description: "contiguous recurrence of the generalized 2E1 in E1 and F1",
        scalar_only: false,
        checks: &[
            check!("recurrence", Recurrence, 1e-9, Every, generalized::recurrence),
            check!("degenerate", Recurrence, 1e-9, Once, generalized::recurrence_degenerate),
        ],
    },
    Suite {
        name: "scalar_collapse",
        description: "every series engine at r = 1 against an independent direct scalar summation",
        scalar_only: true,
        checks: &[
            check!("gamma_functions", ScalarCollapse, 1e-11, Every, basics::scalar_gamma_functions),
            check!("exponentials", ScalarCollapse, 1e-11, Every, basics::scalar_exponentials),
            check!("hypergeometric_exponentials", ScalarCollapse, 1e-11, Every, basics::scalar_hypergeometric_exponentials),
            check!("generalized", ScalarCollapse, 1e-11, Every, basics::scalar_generalized),
            check!("hypergeometric", ScalarCollapse, 1e-11, Every, basics::scalar_hypergeometric),
            check!("incomplete_gauss", ScalarCollapse, 1e-11, Every, basics::scalar_incomplete_gauss),
        ],
    },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

use num_complex::Complex64;

use crate::hyperseries::{ParamSet, SeriesControl};
use crate::quad::QuadratureControl;

/// Series accuracy used by every suite; well below the loosest tolerance.
pub(crate) const SER: SeriesControl = SeriesControl { tol: 1e-14, max_terms: 5000, stall_window: 5 };

pub(crate) fn qctrl() -> QuadratureControl {
    QuadratureControl::default()
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Draws a `(p, q)` shape from `choices`.
pub(crate) fn shape(case: &mut Case, choices: &[(usize, usize)]) -> (usize, usize) {
    let i = case.index("shape", 0, choices.len() - 1);
    choices[i]
}

pub(crate) fn matrices(case: &mut Case, prefix: &str, n: usize, bx: SpectralBox) -> Vec<CMatrix> {
    (0..n).map(|i| case.matrix(&format!("{prefix}{}", i + 1), bx)).collect()
}

/// `(A, B; E_1..E_p; F_1..F_q)` with `A` from `a_box` and everything else from the standard box.
pub(crate) fn gen_params(case: &mut Case, a_box: SpectralBox, p: usize, q: usize) -> ParamSet {
    let a = case.matrix("A", a_box);
    let b = case.matrix("B", STD);
    let e = matrices(case, "E", p, STD);
    let f = matrices(case, "F", q, STD);
    ParamSet { a: Some(a), b: Some(b), e, f }
}

/// `pFq(E; F; z)`, with `0F0 = e^z I` when there is no parameter to fix the dimension.
pub(crate) fn complete(e: &[CMatrix], f: &[CMatrix], z: Complex64, dim: usize) -> Result<CMatrix> {
    if e.is_empty() && f.is_empty() {
        return Ok(CMatrix::scalar(dim, z.exp()));
    }
    Ok(crate::hyperseries::pfq(e, f, z, &SER)?.value)
}

/// Central difference of `f` at `z` along the real axis.
pub(crate) fn central<F: FnMut(Complex64) -> Result<CMatrix>>(mut f: F, z: Complex64, h: f64) -> Result<CMatrix> {
    Ok((f(z + h)? - f(z - h)?).scale_re(0.5 / h))
}

/// Second central difference of `f` at `z` along the real axis.
pub(crate) fn central2<F: FnMut(Complex64) -> Result<CMatrix>>(mut f: F, z: Complex64, h: f64) -> Result<CMatrix> {
    let mid = f(z)?.scale_re(2.0);
    Ok((f(z + h)? - mid + f(z - h)?).scale_re(1.0 / (h * h)))
}
