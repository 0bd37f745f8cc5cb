use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use imexp_core::hyperseries::{
    incomplete_gauss_lower, incomplete_gauss_upper, pfq, prq, zero_f_one, EvalResult, ParamSet, SeriesControl,
};
use imexp_core::incexp::{
    e_integral, fractional_one_sided, fractional_one_sided_rhs, gen_half, gen_integral, gen_pE_q_derivative,
    pe_q_half, pe_q_integral, prq_derivative, prq_gamma_kernel, Half, Range,
};
use imexp_core::matspecial::{
    beta_matrix, gamma_matrix, gamma_matrix_inverse, incomplete_pochhammer_lower, incomplete_pochhammer_upper,
    lower_incomplete_gamma_matrix, pochhammer_matrix, upper_incomplete_gamma_matrix,
};
use imexp_core::quad::QuadratureControl;
use imexp_core::scalarfn::BesselOrder;
use imexp_core::{matrix_exp, CMatrix, Complex64, SpectralData};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// Gamma(A)
    Gamma,
    /// Gamma(A)^{-1}
    GammaInv,
    /// gamma(A, x)
    LowerGamma,
    /// Gamma(A, x)
    UpperGamma,
    /// B(A, B)
    Beta,
    /// (A)_n
    Pochhammer,
    /// (A; x)_n
    PochhammerLower,
    /// [A; x]_n
    PochhammerUpper,
    /// exp(A)
    Expm,
    /// J_A(z), argument from --t
    BesselJ,
    /// I_A(z), argument from --t
    BesselI,
    /// pFq(E; F; t)
    Pfq,
    /// 0F1(-; A; t)
    ZeroFOne,
    /// pRq(E; F | A, B; v), n-th v-derivative with --n
    Prq,
    /// Lower incomplete exponential e(x, t; A)
    ELower,
    /// Upper incomplete exponential E(x, t; A)
    EUpper,
    /// Lower hypergeometric exponential with leading pair (A; A) and the given E, F
    HypELower,
    /// Upper hypergeometric exponential with leading pair (A; A) and the given E, F
    HypEUpper,
    /// Lower generalized function with weight P(mA + B, x)
    GenLower,
    /// Upper generalized function with weight Q(mA + B, x), n-th v-derivative with --n
    GenUpper,
    /// Lower incomplete Gauss function, E = [E, F], F = [G]
    GaussLower,
    /// Upper incomplete Gauss function, E = [E, F], F = [G]
    GaussUpper,
    /// Integral of v^{A-I} (t-v)^{B-I} against the upper generalized function at lambda v^k
    FractionalOneSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Series,
    Quadrature,
}

/// Scalars and controls for one evaluation.
pub struct EvalInput {
    pub x: Option<f64>,
    pub t: Complex64,
    pub n: usize,
    pub lambda: Complex64,
    pub k: u32,
    pub series: SeriesControl,
    pub quad: QuadratureControl,
}

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub value: CMatrix,
    pub terms_used: Option<usize>,
    pub est_error: Option<f64>,
}

impl From<EvalResult> for EvalOutput {
    fn from(r: EvalResult) -> Self {
        EvalOutput { value: r.value, terms_used: Some(r.terms_used), est_error: Some(r.est_error) }
    }
}

impl From<CMatrix> for EvalOutput {
    fn from(value: CMatrix) -> Self {
        EvalOutput { value, terms_used: None, est_error: None }
    }
}

fn single(f: Function, name: &str, m: Option<&CMatrix>) -> Result<CMatrix> {
    m.cloned().with_context(|| format!("{f:?} needs parameter {name} in the parameter file"))
}

fn x_of(f: Function, input: &EvalInput) -> Result<f64> {
    match input.x {
        Some(x) => Ok(x),
        None => bail!("{f:?} needs --x"),
    }
}

fn real_t(f: Function, t: Complex64) -> Result<f64> {
    if t.im != 0.0 {
        bail!("{f:?} needs a real --t");
    }
    Ok(t.re)
}

fn series_only(f: Function, engine: Engine) -> Result<()> {
    if engine == Engine::Quadrature {
        bail!("{f:?} has no quadrature form; use --engine series");
    }
    Ok(())
}

fn first_e(f: Function, p: &ParamSet, index: usize) -> Result<CMatrix> {
    p.e.get(index).cloned().with_context(|| format!("{f:?} needs at least {} entries in E", index + 1))
}

pub fn evaluate(f: Function, engine: Engine, p: &ParamSet, input: &EvalInput) -> Result<EvalOutput> {
    use Function::*;
    p.dim()?;
    let a = || single(f, "A", p.a.as_ref());
    let b = || single(f, "B", p.b.as_ref());
    let (sc, qc, t) = (&input.series, &input.quad, input.t);
    let has_quadrature = match f {
        ELower | EUpper | HypELower | HypEUpper | GenLower | FractionalOneSided => true,
        GenUpper | Prq => input.n == 0,
        _ => false,
    };
    if !has_quadrature {
        series_only(f, engine)?;
    }
    let out = match f {
        Gamma => gamma_matrix(&a()?)?.into(),
        GammaInv => gamma_matrix_inverse(&a()?)?.into(),
        LowerGamma => lower_incomplete_gamma_matrix(&a()?, x_of(f, input)?)?.into(),
        UpperGamma => upper_incomplete_gamma_matrix(&a()?, x_of(f, input)?)?.into(),
        Beta => beta_matrix(&a()?, &b()?)?.into(),
        Pochhammer => pochhammer_matrix(&a()?, input.n).into(),
        PochhammerLower => incomplete_pochhammer_lower(&a()?, x_of(f, input)?, input.n)?.into(),
        PochhammerUpper => incomplete_pochhammer_upper(&a()?, x_of(f, input)?, input.n)?.into(),
        Expm => matrix_exp(&a()?)?.into(),
        BesselJ | BesselI => SpectralData::new(&a()?)?.apply(&BesselOrder { z: t, modified: f == BesselI })?.into(),
        Pfq => pfq(&p.e, &p.f, t, sc)?.into(),
        ZeroFOne => zero_f_one(&a()?, t, sc)?.into(),
        Prq => match engine {
            Engine::Series if input.n > 0 => prq_derivative(t, p, input.n, sc)?.into(),
            Engine::Series => prq(&p.e, &p.f, &a()?, &b()?, t, sc)?.into(),
            Engine::Quadrature => prq_gamma_kernel(t, p, qc)?.into(),
        },
        ELower | EUpper => {
            let half = if f == ELower { Half::Lower } else { Half::Upper };
            let x = x_of(f, input)?;
            match engine {
                Engine::Series => pe_q_half(half, x, t, &a()?, &[], &[], sc)?.into(),
                Engine::Quadrature => e_integral(half.into(), x, t, &a()?, qc)?.into(),
            }
        }
        HypELower | HypEUpper => {
            let half = if f == HypELower { Half::Lower } else { Half::Upper };
            let x = x_of(f, input)?;
            match engine {
                Engine::Series => pe_q_half(half, x, t, &a()?, &p.e, &p.f, sc)?.into(),
                Engine::Quadrature => pe_q_integral(half.into(), x, t, &a()?, &p.e, &p.f, qc)?.into(),
            }
        }
        GenLower | GenUpper => {
            let half = if f == GenLower { Half::Lower } else { Half::Upper };
            let x = x_of(f, input)?;
            match engine {
                Engine::Series if f == GenUpper && input.n > 0 => gen_pE_q_derivative(x, t, p, input.n, sc)?.into(),
                Engine::Series => gen_half(half, x, t, p, sc)?.into(),
                Engine::Quadrature => gen_integral(Range::from(half), x, t, p, qc)?.into(),
            }
        }
        GaussLower | GaussUpper => {
            let (e, ff) = (first_e(f, p, 0)?, first_e(f, p, 1)?);
            let g = p.f.first().cloned().context("incomplete Gauss functions need G as the first entry of F")?;
            let x = x_of(f, input)?;
            if f == GaussLower {
                incomplete_gauss_lower(&e, &ff, &g, x, t, sc)?.into()
            } else {
                incomplete_gauss_upper(&e, &ff, &g, x, t, sc)?.into()
            }
        }
        FractionalOneSided => {
            let x = x_of(f, input)?;
            let upper = real_t(f, t)?;
            match engine {
                Engine::Series => fractional_one_sided_rhs(x, input.lambda, input.k, upper, p, sc)?.into(),
                Engine::Quadrature => fractional_one_sided(x, input.lambda, input.k, upper, p, qc)?.into(),
            }
        }
    };
    Ok(out)
}
