//! Plain-text rendering of polynomials and symbol matrices.
//!
//! A polynomial is written as terms in lexicographic exponent order joined by
//! `" + "`, each term `(re, im) * z1^a1 z2^a2` with zero exponents omitted and
//! coefficients in shortest round-trip scientific notation, e.g.
//!
//! ```text
//! (1e0, 0e0) * z1^-1 + (-1e0, 0e0)
//! ```
//!
//! The zero polynomial is `0`. Parsing the rendered text gives back the
//! identical polynomial.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{LaurentError, LaurentPoly, SymbolMatrix};

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:e}, {:e})", c.re, c.im)?;
            let mut first = true;
            for (q, &e) in a.iter().enumerate() {
                if e != 0 {
                    write!(f, "{}z{}^{}", if first { " * " } else { " " }, q + 1, e)?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the [`Display`](fmt::Display) form; `dim` fixes the number of
    /// variables since constant terms do not reveal it.
    pub fn parse(text: &str, dim: usize) -> Result<Self, LaurentError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero(dim));
        }
        let mut terms = Vec::new();
        for raw in text.split(" + ") {
            terms.push(parse_term(raw.trim(), dim)?);
        }
        Self::from_terms(dim, terms)
    }
}

fn bad(msg: impl Into<String>) -> LaurentError {
    LaurentError::Parse(msg.into())
}

fn parse_term(raw: &str, dim: usize) -> Result<(Vec<i32>, Complex64), LaurentError> {
    let rest = raw.strip_prefix('(').ok_or_else(|| bad(format!("term `{raw}` must start with `(`")))?;
    let close = rest.find(')').ok_or_else(|| bad(format!("unclosed coefficient in `{raw}`")))?;
    let (re, im) = rest[..close]
        .split_once(',')
        .ok_or_else(|| bad(format!("coefficient in `{raw}` needs `re, im`")))?;
    let re = f64::from_str(re.trim()).map_err(|e| bad(format!("`{re}`: {e}")))?;
    let im = f64::from_str(im.trim()).map_err(|e| bad(format!("`{im}`: {e}")))?;
    let mut exponent = vec![0; dim];
    let tail = rest[close + 1..].trim();
    if !tail.is_empty() {
        let vars = tail.strip_prefix('*').ok_or_else(|| bad(format!("expected `*` in `{raw}`")))?;
        for factor in vars.split_whitespace() {
            let (var, e) = factor.split_once('^').ok_or_else(|| bad(format!("factor `{factor}` lacks `^`")))?;
            let q: usize = var
                .strip_prefix('z')
                .and_then(|n| n.parse().ok())
                .filter(|&q| (1..=dim).contains(&q))
                .ok_or_else(|| bad(format!("unknown variable `{var}`")))?;
            exponent[q - 1] += e.parse::<i32>().map_err(|err| bad(format!("`{e}`: {err}")))?;
        }
    }
    Ok((exponent, Complex64::new(re, im)))
}

impl fmt::Display for SymbolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "symbol {}x{} d={}", self.rows(), self.cols(), self.dimension())?;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                let p = self.get(r, c);
                if !p.is_zero() {
                    write!(f, "\n[{r},{c}] {p}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SymbolMatrix {
    type Err = LaurentError;

    fn from_str(text: &str) -> Result<Self, LaurentError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty symbol text"))?;
        let dims = header
            .trim()
            .strip_prefix("symbol ")
            .ok_or_else(|| bad(format!("bad header `{header}`")))?;
        let (shape, d) = dims.split_once(" d=").ok_or_else(|| bad(format!("bad header `{header}`")))?;
        let (r, c) = shape.split_once('x').ok_or_else(|| bad(format!("bad shape `{shape}`")))?;
        let parse_usize = |s: &str| s.trim().parse::<usize>().map_err(|e| bad(format!("`{s}`: {e}")));
        let (rows, cols, dim) = (parse_usize(r)?, parse_usize(c)?, parse_usize(d)?);
        let mut m = SymbolMatrix::zeros(rows, cols, dim);
        for line in lines {
            let line = line.trim();
            let body = line.strip_prefix('[').ok_or_else(|| bad(format!("bad entry line `{line}`")))?;
            let (idx, poly) = body.split_once("] ").ok_or_else(|| bad(format!("bad entry line `{line}`")))?;
            let (i, j) = idx.split_once(',').ok_or_else(|| bad(format!("bad index `{idx}`")))?;
            let (i, j) = (parse_usize(i)?, parse_usize(j)?);
            if i >= rows || j >= cols {
                return Err(bad(format!("entry [{i},{j}] outside {rows}x{cols}")));
            }
            m.set(i, j, LaurentPoly::parse(poly, dim)?)?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        let p = LaurentPoly::from_terms(
            2,
            [
                (vec![-1, 0], Complex64::new(1.0, 0.0)),
                (vec![0, 0], Complex64::new(-1.0, 0.0)),
                (vec![2, -3], Complex64::new(0.1, -1.0 / 3.0)),
            ],
        )
        .unwrap();
        let text = p.to_string();
        assert_eq!(text, "(1e0, 0e0) * z1^-1 + (-1e0, 0e0) + (1e-1, -3.333333333333333e-1) * z1^2 z2^-3");
        assert_eq!(LaurentPoly::parse(&text, 2).unwrap(), p);
        assert_eq!(LaurentPoly::zero(3).to_string(), "0");
        assert!(LaurentPoly::parse("(1, 0) * z3^1", 2).is_err());
    }
}
