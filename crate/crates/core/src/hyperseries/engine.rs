use num_complex::Complex64;

use super::params::{EvalResult, SeriesControl};
use crate::error::{Error, Result};
use crate::matcore::{margin_of_matrix, matrix_power_real_base, CMatrix, SpectralData};
use crate::scalarfn::{Affine, RecipGamma, RegularizedLower, RegularizedUpper, ScalarFn};

/// A matrix times `exp(log)`, renormalized so the mantissa has unit max-entry.
#[derive(Clone, Debug)]
pub(crate) struct Scaled {
    pub m: CMatrix,
    pub log: f64,
}

impl Scaled {
    pub fn identity(n: usize) -> Self {
        Scaled { m: CMatrix::identity(n), log: 0.0 }
    }

    pub fn new(m: CMatrix, log: f64) -> Self {
        Scaled { m, log }.normalized()
    }

    fn normalized(mut self) -> Self {
        let s = self.m.max_abs();
        if s > 0.0 && s.is_finite() {
            self.m = self.m.scale_re(1.0 / s);
            self.log += s.ln();
        }
        self
    }

    pub fn mul(&self, rhs: &Scaled) -> Scaled {
        Scaled::new(&self.m * &rhs.m, self.log + rhs.log)
    }

    /// `self * rhs^{-1}`.
    pub fn div(&self, rhs: &Scaled) -> Result<Scaled> {
        Ok(Scaled::new(rhs.m.solve_right(&self.m)?, self.log - rhs.log))
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.log < -745.0 {
            return Ok(CMatrix::zeros(self.m.dim()));
        }
        let v = self.m.scale_re(self.log.exp());
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow("series term exceeds double range".into()))
        }
    }
}

/// Scalar function applied to `mA + B` in every term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    None,
    /// `Gamma(mA + B)^{-1}`.
    RecipGamma,
    /// `P(mA + B, x)`, regularized lower incomplete gamma.
    Lower { x: f64 },
    /// `Q(mA + B, x)`, regularized upper incomplete gamma.
    Upper { x: f64 },
}

/// Structure of `sum_m W_m (E_1)_m ... (E_p)_m (F_1)_m^{-1} ... (F_q)_m^{-1} z^m / m!`.
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub weight: Weight,
    /// Step `A` of the weight argument; ignored for `Weight::None`.
    pub step: Option<CMatrix>,
    /// Offset `B` of the weight argument; ignored for `Weight::None`.
    pub offset: Option<CMatrix>,
    pub numerators: Vec<CMatrix>,
    pub denominators: Vec<CMatrix>,
}

impl SeriesSpec {
    pub fn plain(numerators: Vec<CMatrix>, denominators: Vec<CMatrix>) -> Self {
        SeriesSpec { weight: Weight::None, step: None, offset: None, numerators, denominators }
    }

    pub fn weighted(weight: Weight, step: CMatrix, offset: CMatrix, numerators: Vec<CMatrix>, denominators: Vec<CMatrix>) -> Self {
        SeriesSpec { weight, step: Some(step), offset: Some(offset), numerators, denominators }
    }
}

fn scalar_multiple_of_identity(m: &CMatrix) -> Option<Complex64> {
    let n = m.dim();
    let d = m[(0, 0)];
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { d } else { Complex64::new(0.0, 0.0) };
            if m[(i, j)] != want {
                return None;
            }
        }
    }
    Some(d)
}

/// How the weight matrices `f(mA + B)` are produced.
enum WeightPlan {
    None,
    /// `A = alpha I`: one Schur form of `B`, arguments shifted by `m alpha`.
    ShiftedOffset { spec: SpectralData, alpha: Complex64, offset_mean: Complex64 },
    /// `B = beta I`: one Schur form of `A`, arguments scaled by `m`.
    ScaledStep { spec: SpectralData, beta: Complex64, step_mean: Complex64 },
    /// General commuting or non-commuting pair: a fresh Schur form for every term.
    General { step: CMatrix, offset: CMatrix },
}

impl WeightPlan {
    fn build(spec: &SeriesSpec) -> Result<Self> {
        if spec.weight == Weight::None {
            return Ok(WeightPlan::None);
        }
        let (Some(a), Some(b)) = (&spec.step, &spec.offset) else {
            return Err(Error::ShapeError("weighted series needs both A and B".into()));
        };
        let n = a.dim() as f64;
        if let Some(alpha) = scalar_multiple_of_identity(a) {
            return Ok(WeightPlan::ShiftedOffset { spec: SpectralData::new(b)?, alpha, offset_mean: b.trace() / n });
        }
        if let Some(beta) = scalar_multiple_of_identity(b) {
            return Ok(WeightPlan::ScaledStep { spec: SpectralData::new(a)?, beta, step_mean: a.trace() / n });
        }
        Ok(WeightPlan::General { step: a.clone(), offset: b.clone() })
    }

    /// `t^{mA+B} f(mA + B)` when `ln_base = ln t` is nonzero, else `f(mA + B)`.
    fn weight(&self, kind: Weight, m: usize, ln_base: f64) -> Result<Option<Scaled>> {
        let mf = m as f64;
        let center = match self {
            WeightPlan::None => return Ok(None),
            WeightPlan::ShiftedOffset { alpha, offset_mean, .. } => alpha * mf + offset_mean,
            WeightPlan::ScaledStep { beta, step_mean, .. } => step_mean * mf + beta,
            WeightPlan::General { step, offset } => (step.trace() * mf + offset.trace()) / step.dim() as f64,
        };
        let (kernel, shift): (Box<dyn ScalarFn>, f64) = match kind {
            Weight::None => return Ok(None),
            Weight::RecipGamma => {
                let k = RecipGamma::scaled_at(center);
                (Box::new(k), k.shift)
            }
            Weight::Lower { x } => {
                let k = RegularizedLower::scaled_at(x, center);
                (Box::new(k), k.shift)
            }
            Weight::Upper { x } => {
                let k = RegularizedUpper::scaled_at(x, center);
                (Box::new(k), k.shift)
            }
        };
        let tilted = Tilted { inner: kernel.as_ref(), ln_base, center: center.re };
        let (k, shift): (&dyn ScalarFn, f64) =
            if ln_base == 0.0 { (kernel.as_ref(), shift) } else { (&tilted, shift + center.re * ln_base) };
        let w = match self {
            WeightPlan::None => unreachable!(),
            WeightPlan::ShiftedOffset { spec, alpha, .. } => {
                spec.apply(&Affine { inner: k, scale: Complex64::new(1.0, 0.0), offset: alpha * mf })?
            }
            WeightPlan::ScaledStep { spec, beta, .. } => {
                spec.apply(&Affine { inner: k, scale: Complex64::new(mf, 0.0), offset: *beta })?
            }
            WeightPlan::General { step, offset } => SpectralData::new(&(step.scale_re(mf) + offset))?.apply(&k)?,
        };
        Ok(Some(Scaled::new(w, shift)))
    }
}

/// `z -> exp((z - center) ln_base) inner(z)` with a real `center`.
struct Tilted<'a> {
    inner: &'a dyn ScalarFn,
    ln_base: f64,
    center: f64,
}

impl ScalarFn for Tilted<'_> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.inner.eval(z)? * ((z - self.center) * self.ln_base).exp())
    }
    fn is_singular(&self, z: Complex64) -> bool {
        self.inner.is_singular(z)
    }
    fn analytic_radius(&self, z: Complex64) -> f64 {
        self.inner.analytic_radius(z)
    }
    fn max_derivative_order(&self) -> usize {
        self.inner.max_derivative_order()
    }
}

/// Lazily extended coefficients `c_m = W_m N_m D_m / m!` of a series, reusable across arguments.
pub struct HyperSeries {
    spec: SeriesSpec,
    dim: usize,
    plan: WeightPlan,
    num_poch: Vec<Scaled>,
    den_poch: Vec<Scaled>,
    log_factorial: f64,
    /// `N_m D_m / m!` without the weight.
    pochs: Vec<Scaled>,
    coeffs: Vec<Scaled>,
}

/// Smallest admissible distance between a denominator eigenvalue and `-k`.
pub const DENOMINATOR_MARGIN: f64 = 1e-8;

impl HyperSeries {
    pub fn new(spec: SeriesSpec, max_terms: usize) -> Result<Self> {
        let mut all = spec.numerators.iter().chain(&spec.denominators).chain(spec.step.iter()).chain(spec.offset.iter());
        let Some(first) = all.next() else {
            return Err(Error::ShapeError("series has no matrix parameter to fix its dimension".into()));
        };
        let dim = first.dim();
        if all.any(|m| m.dim() != dim) {
            return Err(Error::ShapeError("series parameters differ in dimension".into()));
        }
        for f in &spec.denominators {
            let (margin, eig) = margin_of_matrix(f, max_terms)?;
            if margin <= DENOMINATOR_MARGIN {
                return Err(Error::Pole(eig));
            }
        }
        let plan = WeightPlan::build(&spec)?;
        let num_poch = vec![Scaled::identity(dim); spec.numerators.len()];
        let den_poch = vec![Scaled::identity(dim); spec.denominators.len()];
        Ok(HyperSeries { spec, dim, plan, num_poch, den_poch, log_factorial: 0.0, pochs: Vec::new(), coeffs: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    fn extend(&mut self) -> Result<()> {
        let m = self.coeffs.len();
        if m > 0 {
            // Each Pochhammer factor carries its own 1/m! so the running logs stay small.
            let step = Complex64::new((m - 1) as f64, 0.0);
            let inv = 1.0 / m as f64;
            for (p, e) in self.num_poch.iter_mut().zip(&self.spec.numerators) {
                *p = p.mul(&Scaled::new(e.shift(step).scale_re(inv), 0.0));
            }
            for (p, f) in self.den_poch.iter_mut().zip(&self.spec.denominators) {
                *p = p.mul(&Scaled::new(f.shift(step).scale_re(inv), 0.0));
            }
            self.log_factorial += (m as f64).ln();
        }
        let excess = self.spec.numerators.len() as f64 - self.spec.denominators.len() as f64 - 1.0;
        let mut c = Scaled::identity(self.dim);
        for p in &self.num_poch {
            c = c.mul(p);
        }
        for p in &self.den_poch {
            c = c.div(p)?;
        }
        c.log += excess * self.log_factorial;
        let coeff = match self.plan.weight(self.spec.weight, m, 0.0)? {
            Some(w) => w.mul(&c),
            None => c.clone(),
        };
        self.pochs.push(c);
        self.coeffs.push(coeff);
        Ok(())
    }

    pub(crate) fn coefficient(&mut self, m: usize) -> Result<&Scaled> {
        while self.coeffs.len() <= m {
            self.extend()?;
        }
        Ok(&self.coeffs[m])
    }

    /// Coefficient `c_m` as a plain matrix.
    pub fn coefficient_matrix(&mut self, m: usize) -> Result<CMatrix> {
        self.coefficient(m)?.to_matrix()
    }

    /// `sum_m c_m z^m`.
    pub fn eval_scalar(&mut self, z: Complex64, ctrl: &SeriesControl) -> Result<EvalResult> {
        let (lnr, phase) = if z == Complex64::new(0.0, 0.0) {
            (f64::NEG_INFINITY, Complex64::new(1.0, 0.0))
        } else {
            (z.norm().ln(), z / z.norm())
        };
        let mut ph = Complex64::new(1.0, 0.0);
        sum_terms(ctrl, self.dim, |m| {
            let c = self.coefficient(m)?;
            let log = if m == 0 { c.log } else { c.log + m as f64 * lnr };
            let t = Scaled { m: c.m.scale(ph), log }.to_matrix();
            ph *= phase;
            t
        })
    }

    /// `sum_m c_m Z^m` for a matrix argument, multiplied on the right.
    pub fn eval_matrix(&mut self, z: &CMatrix, ctrl: &SeriesControl) -> Result<EvalResult> {
        if z.dim() != self.dim {
            return Err(Error::ShapeError("series argument has the wrong dimension".into()));
        }
        let zs = Scaled::new(z.clone(), 0.0);
        let mut power = Scaled::identity(self.dim);
        sum_terms(ctrl, self.dim, |m| {
            if m > 0 {
                power = power.mul(&zs);
            }
            self.coefficient(m)?.mul(&power).to_matrix()
        })
    }
}

impl HyperSeries {
    /// `sum_m c_m (v t^A)^m` for a weighted series whose `A` and `B` commute.
    ///
    /// For `t > 1`, `t^{mA}` is folded into the weight as `t^{mA+B} f(mA + B) t^{-B}`, so no term
    /// multiplies two matrices whose eigenvalue scales pull in opposite directions. For `t <= 1`
    /// both factors favour the same eigenvalues and the plain powers are used, as they are for
    /// unweighted series and non-commuting `A, B`.
    pub fn eval_power(&mut self, t: f64, v: Complex64, ctrl: &SeriesControl) -> Result<EvalResult> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::DomainError(format!("power base must be positive and finite, got {t}")));
        }
        let (Some(a), Some(b)) = (self.spec.step.clone(), self.spec.offset.clone()) else {
            return Err(Error::ShapeError("matrix power argument needs a step matrix A".into()));
        };
        if t <= 1.0 || self.spec.weight == Weight::None || !commutes(&a, &b) {
            return self.eval_matrix(&matrix_power_real_base(t, &a)?.scale(v), ctrl);
        }
        let ln_t = t.ln();
        let (lnr, phase) = if v == Complex64::new(0.0, 0.0) {
            (f64::NEG_INFINITY, Complex64::new(1.0, 0.0))
        } else {
            (v.norm().ln(), v / v.norm())
        };
        let kind = self.spec.weight;
        let mut ph = Complex64::new(1.0, 0.0);
        let mut r = sum_terms(ctrl, self.dim, |m| {
            if m > 0 && lnr == f64::NEG_INFINITY {
                return Ok(CMatrix::zeros(self.dim));
            }
            self.coefficient(m)?;
            let w = self.plan.weight(kind, m, ln_t)?.expect("weighted series");
            let mut term = w.mul(&self.pochs[m]);
            if m > 0 {
                term.log += m as f64 * lnr;
            }
            term.m = term.m.scale(ph);
            ph *= phase;
            term.to_matrix()
        })?;
        let tail = matrix_power_real_base(t, &b.scale_re(-1.0))?;
        r.est_error *= tail.max_abs() * tail.dim() as f64;
        r.value = &r.value * &tail;
        Ok(r)
    }
}

fn commutes(a: &CMatrix, b: &CMatrix) -> bool {
    let gap = (&(a * b) - &(b * a)).frobenius_norm();
    gap <= 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm())
}

/// Sums terms until `stall_window` consecutive ones are negligible.
pub(crate) fn sum_terms(
    ctrl: &SeriesControl,
    dim: usize,
    mut term: impl FnMut(usize) -> Result<CMatrix>,
) -> Result<EvalResult> {
    let mut sum = CMatrix::zeros(dim);
    let mut quiet = 0usize;
    let mut window_max = 0.0f64;
    for m in 0..ctrl.max_terms {
        let t = term(m)?;
        sum += &t;
        let tn = t.frobenius_norm();
        let sn = sum.frobenius_norm();
        if !sn.is_finite() || sn > 1e300 {
            return Err(Error::Overflow(format!("partial sum overflowed after {} terms", m + 1)));
        }
        if tn <= ctrl.tol * (1.0 + sn) {
            quiet += 1;
            window_max = window_max.max(tn);
            if quiet >= ctrl.stall_window.max(1) {
                return Ok(EvalResult { value: sum, terms_used: m + 1, est_error: window_max });
            }
        } else {
            quiet = 0;
            window_max = 0.0;
        }
    }
    Err(Error::ConvergenceFailure { what: "hypergeometric-type series", iterations: ctrl.max_terms })
}
