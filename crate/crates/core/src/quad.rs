//! Adaptive Gauss-Kronrod (7/15) quadrature of matrix-valued integrands.

use crate::error::{Error, Result};
use crate::matcore::CMatrix;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights paired with the odd-indexed Kronrod nodes.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Tolerances and subdivision budget for the adaptive integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureControl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureControl {
    fn default() -> Self {
        QuadratureControl { abs_tol: 1e-11, rel_tol: 1e-10, max_subdivisions: 2000 }
    }
}

/// Evaluation point handed to integrands that care about distances to the ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub at: f64,
    /// `at - a`, computed without cancellation.
    pub from_a: f64,
    /// `b - at`, computed without cancellation.
    pub to_b: f64,
}

/// Which ends of the interval carry an integrable singularity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Endpoints {
    pub left: bool,
    pub right: bool,
}

impl Endpoints {
    pub const LEFT: Endpoints = Endpoints { left: true, right: false };
    pub const RIGHT: Endpoints = Endpoints { left: false, right: true };
    pub const BOTH: Endpoints = Endpoints { left: true, right: true };
    pub const NONE: Endpoints = Endpoints { left: false, right: false };
}

struct Segment {
    a: f64,
    b: f64,
    value: CMatrix,
    err: f64,
}

fn checked(m: CMatrix, at: f64) -> Result<CMatrix> {
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::SingularEndpoint(at))
    }
}

fn gk15<F: FnMut(f64) -> Result<CMatrix>>(f: &mut F, a: f64, b: f64) -> Result<(CMatrix, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = checked(f(c)?, c)?;
    let mut kron = fc.scale_re(WGK[7]);
    let mut gauss = fc.scale_re(WG[3]);
    for j in 0..7 {
        let x1 = c - h * XGK[j];
        let x2 = c + h * XGK[j];
        let s = checked(f(x1)?, x1)? + checked(f(x2)?, x2)?;
        kron += &s.scale_re(WGK[j]);
        if j % 2 == 1 {
            gauss += &s.scale_re(WG[j / 2]);
        }
    }
    let kron = kron.scale_re(h);
    let gauss = gauss.scale_re(h);
    let err = (&kron - &gauss).max_abs();
    Ok((kron, err))
}

fn adaptive<F: FnMut(f64) -> Result<CMatrix>>(
    mut f: F,
    a: f64,
    b: f64,
    ctrl: &QuadratureControl,
) -> Result<(CMatrix, f64)> {
    if a == b {
        let probe = f(a)?;
        return Ok((CMatrix::zeros(probe.dim()), 0.0));
    }
    let (value, err) = gk15(&mut f, a, b)?;
    let mut segs = vec![Segment { a, b, value, err }];
    loop {
        let total = segs.iter().fold(CMatrix::zeros(segs[0].value.dim()), |mut acc, s| {
            acc += &s.value;
            acc
        });
        let err: f64 = segs.iter().map(|s| s.err).sum();
        let target = ctrl.abs_tol.max(ctrl.rel_tol * total.max_abs());
        if err <= target {
            // Sum in interval order so the result does not depend on refinement history.
            segs.sort_by(|x, y| x.a.total_cmp(&y.a));
            let mut sum = CMatrix::zeros(total.dim());
            for s in &segs {
                sum += &s.value;
            }
            return Ok((sum, err));
        }
        if segs.len() >= ctrl.max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "subdivision limit {} reached with error estimate {err:.3e} above {target:.3e}",
                ctrl.max_subdivisions
            )));
        }
        let worst = (0..segs.len())
            .max_by(|&i, &j| segs[i].err.total_cmp(&segs[j].err))
            .expect("at least one segment");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if !(mid > s.a && mid < s.b) || (s.b - s.a) <= 4.0 * f64::EPSILON * s.a.abs().max(s.b.abs()) {
            return Err(Error::QuadratureFailure(format!(
                "interval [{:e}, {:e}] cannot be refined further (error {:.3e})",
                s.a, s.b, s.err
            )));
        }
        let (v1, e1) = gk15(&mut f, s.a, mid)?;
        let (v2, e2) = gk15(&mut f, mid, s.b)?;
        segs.push(Segment { a: s.a, b: mid, value: v1, err: e1 });
        segs.push(Segment { a: mid, b: s.b, value: v2, err: e2 });
    }
}

/// `int_a^b f(t) dt` with its error estimate.
pub fn integrate_finite_estimate<F: FnMut(f64) -> Result<CMatrix>>(
    f: F,
    a: f64,
    b: f64,
    ctrl: &QuadratureControl,
) -> Result<(CMatrix, f64)> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::DomainError("finite integration needs finite limits".into()));
    }
    if b < a {
        let (v, e) = adaptive(f, b, a, ctrl)?;
        return Ok((-v, e));
    }
    adaptive(f, a, b, ctrl)
}

/// `int_a^b f(t) dt`.
pub fn integrate_finite<F: FnMut(f64) -> Result<CMatrix>>(
    f: F,
    a: f64,
    b: f64,
    ctrl: &QuadratureControl,
) -> Result<CMatrix> {
    integrate_finite_estimate(f, a, b, ctrl).map(|(v, _)| v)
}

/// Fraction of the observed peak below which a decaying integrand is treated as zero.
pub const DECAY_CUTOFF: f64 = 1e-18;

/// Scans `a + 2^k - 1` for the point past which `||f||` stays below `DECAY_CUTOFF` of its peak.
/// If the integrand overflows before it is seen to decay (a kernel growing more slowly than
/// `e^{-t}` decays), the scan backs off and continues with steps an eighth as long.
fn decay_horizon<F: FnMut(f64) -> Result<CMatrix>>(f: &mut F, a: f64) -> Result<f64> {
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut last_small = f64::INFINITY;
    let (mut prev, mut step) = (a, 1.0);
    let mut shrinks = 0;
    let mut v = a;
    for _ in 0..200 {
        let norm = match f(v) {
            Ok(m) if m.is_finite() => m.max_abs(),
            Ok(_) | Err(Error::Overflow(_)) if v > a && shrinks < 4 => {
                shrinks += 1;
                step /= 8.0;
                v = prev + step;
                continue;
            }
            Ok(_) => return Err(Error::SingularEndpoint(v)),
            Err(e) => return Err(e),
        };
        peak = peak.max(norm);
        if v - a >= 7.0 && norm <= DECAY_CUTOFF * peak {
            if quiet == 0 {
                last_small = v;
            }
            quiet += 1;
            if quiet == 2 {
                return Ok(last_small);
            }
        } else {
            quiet = 0;
        }
        prev = v;
        if shrinks == 0 && v > a {
            step *= 2.0;
        }
        v = prev + step;
        if v - a > 1e6 {
            break;
        }
    }
    Err(Error::QuadratureFailure(format!("integrand does not decay on [{a}, inf)")))
}

/// `int_a^inf f(t) dt` via `t = a + s / (1 - s)`. The integrand must decay; it is
/// cut off past the point where its norm has fallen below `DECAY_CUTOFF` of its peak.
pub fn integrate_semi_infinite<F: FnMut(f64) -> Result<CMatrix>>(
    mut f: F,
    a: f64,
    ctrl: &QuadratureControl,
) -> Result<CMatrix> {
    if !a.is_finite() {
        return Err(Error::DomainError("lower limit must be finite".into()));
    }
    let horizon = decay_horizon(&mut f, a)?;
    let span = horizon - a;
    let s_max = span / (1.0 + span);
    let g = |s: f64| -> Result<CMatrix> {
        let one_minus = 1.0 - s;
        let t = a + s / one_minus;
        Ok(f(t)?.scale_re(1.0 / (one_minus * one_minus)))
    };
    integrate_finite(g, 0.0, s_max, ctrl)
}

/// Width of the piece near a flagged end that is integrated after `v = end +- u^2`.
pub const SINGULAR_PIECE: f64 = 1e-3;

/// `int_a^b f(node) dt` for integrands with integrable power singularities at flagged ends.
pub fn integrate_endpoint_singular<F: FnMut(Node) -> Result<CMatrix>>(
    mut f: F,
    a: f64,
    b: f64,
    ends: Endpoints,
    ctrl: &QuadratureControl,
) -> Result<CMatrix> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::DomainError(format!("need finite a < b, got [{a}, {b}]")));
    }
    let len = b - a;
    let w = SINGULAR_PIECE.min(0.5 * len);
    let lo = if ends.left { w } else { 0.0 };
    let hi = if ends.right { w } else { 0.0 };
    let mut total: Option<CMatrix> = None;
    let mut add = |m: CMatrix| match total.as_mut() {
        Some(t) => *t += &m,
        None => total = Some(m),
    };
    if ends.left {
        let piece = integrate_finite(
            |u: f64| {
                let d = u * u;
                Ok(f(Node { at: a + d, from_a: d, to_b: len - d })?.scale_re(2.0 * u))
            },
            0.0,
            w.sqrt(),
            ctrl,
        )?;
        add(piece);
    }
    if len - lo - hi > 0.0 {
        let piece = integrate_finite(
            |v: f64| f(Node { at: v, from_a: v - a, to_b: b - v }),
            a + lo,
            b - hi,
            ctrl,
        )?;
        add(piece);
    }
    if ends.right {
        let piece = integrate_finite(
            |u: f64| {
                let d = u * u;
                Ok(f(Node { at: b - d, from_a: len - d, to_b: d })?.scale_re(2.0 * u))
            },
            0.0,
            w.sqrt(),
            ctrl,
        )?;
        add(piece);
    }
    Ok(total.expect("at least one piece is integrated"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn scalar(v: f64) -> CMatrix {
        CMatrix::scalar(1, Complex64::new(v, 0.0))
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_22() {
        for deg in 0..=22 {
            let (v, _) = gk15(&mut |t: f64| Ok(scalar(t.powi(deg))), -1.0, 1.0).unwrap();
            let want = if deg % 2 == 0 { 2.0 / (deg + 1) as f64 } else { 0.0 };
            assert!((v[(0, 0)].re - want).abs() < 1e-15, "degree {deg}");
        }
        let gsum: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((gsum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_and_singular_integrals() {
        let ctrl = QuadratureControl::default();
        let pi = integrate_finite(|t| Ok(scalar(4.0 / (1.0 + t * t))), 0.0, 1.0, &ctrl).unwrap();
        assert!((pi[(0, 0)].re - std::f64::consts::PI).abs() < 1e-13);
        let root = integrate_finite(|t: f64| Ok(scalar(t.powf(-0.5))), 0.0, 1.0, &ctrl).unwrap();
        assert!((root[(0, 0)].re - 2.0).abs() < 1e-9);
        let beta = integrate_endpoint_singular(
            |n: Node| Ok(scalar(n.from_a.powf(-0.7) * n.to_b.powf(-0.6))),
            0.0,
            1.0,
            Endpoints::BOTH,
            &ctrl,
        )
        .unwrap();
        // B(0.3, 0.4) from mpmath.
        assert!((beta[(0, 0)].re - 5.1120912444573516).abs() < 1e-8, "{}", beta[(0, 0)].re);
    }

    #[test]
    fn semi_infinite_decay() {
        let ctrl = QuadratureControl::default();
        let v = integrate_semi_infinite(|t: f64| Ok(scalar((-t).exp())), 0.0, &ctrl).unwrap();
        assert!((v[(0, 0)].re - 1.0).abs() < 1e-12);
        let v = integrate_semi_infinite(|t: f64| Ok(scalar(t * t * (-0.1 * t).exp())), 2.0, &ctrl).unwrap();
        let want = (-0.2f64).exp() * (4.0 / 0.1 + 4.0 / 0.01 + 2.0 / 0.001);
        assert!((v[(0, 0)].re - want).abs() < 1e-10 * want);
        // The growing factor overflows at t = 1023 before the scan sees two quiet points.
        let v = integrate_semi_infinite(|t: f64| Ok(scalar((0.93 * t).exp() * (-t).exp())), 0.0, &ctrl).unwrap();
        assert!((v[(0, 0)].re - 1.0 / 0.07).abs() < 1e-10 / 0.07);
    }

    #[test]
    fn failures_are_reported() {
        let tight = QuadratureControl { max_subdivisions: 4, ..Default::default() };
        let r = integrate_finite(|t: f64| Ok(scalar((50.0 * t).sin())), 0.0, 10.0, &tight);
        assert!(matches!(r, Err(Error::QuadratureFailure(_))));
        let r = integrate_finite(|t: f64| Ok(scalar(1.0 / (t - 0.3))), 0.0, 1.0, &QuadratureControl::default());
        assert!(r.is_err());
        let r = integrate_finite(|_| Ok(scalar(f64::NAN)), 0.0, 1.0, &QuadratureControl::default());
        assert!(matches!(r, Err(Error::SingularEndpoint(_))));
    }
}
