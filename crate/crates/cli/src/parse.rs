//! Parsing of `--x`, `--lambda` and λ-list files.

use num_complex::Complex64;

fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let x: f64 = t.parse().map_err(|_| format!("'{t}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{t}' is not finite"))
    }
}

/// "re,im;re,im;re,im;re,im"
pub fn ball_coords(s: &str) -> Result<Vec<Complex64>, String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 4 {
        return Err(format!("--x needs 4 complex coordinates separated by ';', got {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| {
            let c: Vec<&str> = p.split(',').collect();
            match c.as_slice() {
                [re, im] => Ok(Complex64::new(real(re)?, real(im)?)),
                _ => Err(format!("coordinate '{}' is not of the form re,im", p.trim())),
            }
        })
        .collect()
}

/// "l1,l2,l3,l4,l5,l6"
pub fn sextuple(s: &str) -> Result<[f64; 6], String> {
    let v: Vec<f64> = s.split(',').map(real).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 6 branch points, got {}", v.len()))
}

/// One sextuple per line; blank lines and lines starting with '#' are skipped.
pub fn sextuples(text: &str) -> Result<Vec<[f64; 6]>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(sextuple(t).map_err(|e| format!("line {}: {e}", n + 1))?);
    }
    if out.is_empty() {
        return Err("no branch data in file".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords() {
        let x = ball_coords("0,0; 0.5,-1;0,0;1,0").unwrap();
        assert_eq!(x[1], Complex64::new(0.5, -1.0));
        assert!(ball_coords("0,0;0,0;1,0").is_err());
        assert!(ball_coords("0;0,0;0,0;1,0").is_err());
        assert!(ball_coords("a,0;0,0;0,0;1,0").is_err());
    }

    #[test]
    fn lambdas() {
        assert_eq!(sextuple("0,1,2,3,4,5").unwrap(), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(sextuple("0,1,2").is_err());
        assert!(sextuple("0,1,2,3,4,inf").is_err());
        let v = sextuples("# header\n0,1,2,3,4,5\n\n1,2,3,4,5,6\n").unwrap();
        assert_eq!(v.len(), 2);
        assert!(sextuples("0,1\n").unwrap_err().starts_with("line 1"));
    }
}
