//! Static registry of the identities the harness checks, used for the coverage assertion.

/// One mathematical claim. Each is checked by exactly one suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    GammaRecurrence,
    GammaLimit,
    BetaIntegral,
    PochhammerGamma,
    PochhammerMultiplication,
    IncompleteGammaIntegral,
    IncompleteGammaSplit,
    IncompletePochhammerSplit,
    IncompleteGaussSplit,
    ExponentialSplit,
    HypergeometricExponentialSplit,
    GeneralizedSplit,
    GeneralizedReduction,
    ExponentialIntegral,
    BesselConnection,
    ExponentialDerivatives,
    HypergeometricExponentialIntegral,
    ConfluentKernel,
    ExponentialKernel,
    GaussKernel,
    GeneralizedUpperIntegral,
    ConfluentUpperIntegral,
    GammaKernel,
    EulerBetaReduction,
    EulerBetaReductionPrq,
    GeneralizedDerivative,
    PrqDerivative,
    GeneralizedPartials,
    Addition,
    Multiplication,
    FractionalOneSided,
    FractionalTwoSided,
    GaussValue,
    Recurrence,
    ScalarCollapse,
}

impl Claim {
    pub const ALL: [Claim; 35] = [
        Claim::GammaRecurrence,
        Claim::GammaLimit,
        Claim::BetaIntegral,
        Claim::PochhammerGamma,
        Claim::PochhammerMultiplication,
        Claim::IncompleteGammaIntegral,
        Claim::IncompleteGammaSplit,
        Claim::IncompletePochhammerSplit,
        Claim::IncompleteGaussSplit,
        Claim::ExponentialSplit,
        Claim::HypergeometricExponentialSplit,
        Claim::GeneralizedSplit,
        Claim::GeneralizedReduction,
        Claim::ExponentialIntegral,
        Claim::BesselConnection,
        Claim::ExponentialDerivatives,
        Claim::HypergeometricExponentialIntegral,
        Claim::ConfluentKernel,
        Claim::ExponentialKernel,
        Claim::GaussKernel,
        Claim::GeneralizedUpperIntegral,
        Claim::ConfluentUpperIntegral,
        Claim::GammaKernel,
        Claim::EulerBetaReduction,
        Claim::EulerBetaReductionPrq,
        Claim::GeneralizedDerivative,
        Claim::PrqDerivative,
        Claim::GeneralizedPartials,
        Claim::Addition,
        Claim::Multiplication,
        Claim::FractionalOneSided,
        Claim::FractionalTwoSided,
        Claim::GaussValue,
        Claim::Recurrence,
        Claim::ScalarCollapse,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Claim::GammaRecurrence => "gamma recurrence Gamma(E+I) = E Gamma(E) and its reciprocal",
            Claim::GammaLimit => "limit formula (n-1)! (E)_n^{-1} n^E -> Gamma(E)",
            Claim::BetaIntegral => "beta function as the integral of t^{E-I} (1-t)^{F-I}",
            Claim::PochhammerGamma => "Pochhammer symbol as Gamma(E+nI) Gamma(E)^{-1}",
            Claim::PochhammerMultiplication => "Pochhammer split (E)_{kn} = k^{kn} prod ((E+jI)/k)_n",
            Claim::IncompleteGammaIntegral => "lower incomplete gamma as a truncated gamma integral",
            Claim::IncompleteGammaSplit => "gamma(E,x) + Gamma(E,x) = Gamma(E)",
            Claim::IncompletePochhammerSplit => "(E;x)_n + [E;x]_n = (E)_n",
            Claim::IncompleteGaussSplit => "incomplete Gauss functions sum to 2F1",
            Claim::ExponentialSplit => "lower plus upper incomplete exponential equals e^t I",
            Claim::HypergeometricExponentialSplit => "pe_q + pE_q equals the (p-1)F(q-1) function",
            Claim::GeneralizedSplit => "generalized lower plus upper equals pFq",
            Claim::GeneralizedReduction => "generalized functions with A = I, p = q = 0 reduce to the incomplete exponentials",
            Claim::ExponentialIntegral => "incomplete exponentials as integrals against 0F1(-; A; vt)",
            Claim::BesselConnection => "incomplete exponentials as integrals against Bessel functions I_A and J_A",
            Claim::ExponentialDerivatives => "t-derivatives shift A by nI; x-derivatives are the 0F1 kernel",
            Claim::HypergeometricExponentialIntegral => "pe_q and pE_q as integrals against (p-1)Fq over [0,x], [x,inf), [0,inf)",
            Claim::ConfluentKernel => "confluent kernel case: 2e1 + 2E1 = (1-t)^{-A} and its 1F1 integrals",
            Claim::ExponentialKernel => "exponential kernel case: 2e1(x;-t|C,C;C) as an integral of e^{-(1+t)v}",
            Claim::GaussKernel => "Gauss kernel case: 3e1 as an integral against 2F1(A,B;C;vt)",
            Claim::GeneralizedUpperIntegral => "generalized upper function as an integral of pRq at matrix argument v t^A",
            Claim::ConfluentUpperIntegral => "1E0(x,I,C;v|A) as an integral against 1F1(A;C;vt)",
            Claim::GammaKernel => "pRq as a gamma-kernel integral of (p-1)Rq",
            Claim::EulerBetaReduction => "generalized upper function as an Euler beta integral of one order lower",
            Claim::EulerBetaReductionPrq => "pRq as an Euler beta integral of one order lower",
            Claim::GeneralizedDerivative => "n-th v-derivative of the generalized upper function",
            Claim::PrqDerivative => "n-th v-derivative of pRq",
            Claim::GeneralizedPartials => "first v-derivative in parameter-shift form and the x-derivative",
            Claim::Addition => "addition formula in the argument",
            Claim::Multiplication => "multiplication formula in the argument",
            Claim::FractionalOneSided => "one-sided fractional integral with Delta(k, .) parameter arrays",
            Claim::FractionalTwoSided => "two-sided fractional integral with Delta(k, .) parameter arrays",
            Claim::GaussValue => "value at v = 1 via the Gauss summation formula",
            Claim::Recurrence => "contiguous recurrence in E1 and F1",
            Claim::ScalarCollapse => "1x1 matrices reproduce direct scalar summation",
        }
    }
}
