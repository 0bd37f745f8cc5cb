use imexp_core::Complex64;

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`-free reals, e.g. `0.5`, `0.5-0.2i`, `-1e-3+2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let Some(body) = t.strip_suffix('i') else {
        return finite(parse_real(t)?, 0.0, s);
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, parse_imag(&body[k..])?),
        None => (0.0, parse_imag(body)?),
    };
    finite(re, im, s)
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
}

fn parse_imag(s: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s),
    }
}

fn finite(re: f64, im: f64, s: &str) -> Result<Complex64, String> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(format!("not a finite complex number: {s:?}"))
    }
}

/// Finite real flag value.
pub fn parse_finite(s: &str) -> Result<f64, String> {
    let v = parse_real(s.trim())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}
