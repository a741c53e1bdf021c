use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{parse_rational, PolyError, QPoly};

/// Parses either a coefficient list `c0,c1,...,cn` (lowest degree first,
/// entries `p` or `p/q`) or a human-readable sum such as `5t^4+10t^3-3/2t+1`.
/// The variable may be written `t` or `x`.
pub fn parse_poly(s: &str) -> Result<QPoly, PolyError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    if !s.contains(['t', 'x']) {
        let coeffs = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(QPoly::new(coeffs));
    }
    parse_human(&s)
}

fn parse_human(s: &str) -> Result<QPoly, PolyError> {
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let bytes = s.as_bytes();
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => {
                if i > start {
                    terms.push((neg, &s[start..i]));
                }
                neg = b == b'-';
                start = i + 1;
            }
            b'-' if i == 0 => {
                neg = true;
                start = 1;
            }
            b'+' if i == 0 => start = 1,
            _ => {}
        }
    }
    if start < s.len() {
        terms.push((neg, &s[start..]));
    } else {
        return Err(PolyError::Parse(format!("dangling sign in {s:?}")));
    }

    let mut coeffs: Vec<BigRational> = Vec::new();
    for (neg, term) in terms {
        let (c, e) = parse_term(term)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigRational::zero());
        }
        coeffs[e] += if neg { -c } else { c };
    }
    Ok(QPoly::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigRational, usize), PolyError> {
    let bad = || PolyError::Parse(format!("bad term {term:?}"));
    let Some(pos) = term.find(['t', 'x']) else {
        return Ok((parse_coeff(term)?, 0));
    };
    let coeff_part = term[..pos].trim_end_matches('*');
    let coeff = if coeff_part.is_empty() {
        BigRational::one()
    } else {
        parse_coeff(coeff_part)?
    };
    let rest = &term[pos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?
    };
    Ok((coeff, exp))
}

fn parse_coeff(s: &str) -> Result<BigRational, PolyError> {
    let s = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s);
    parse_rational(s)
}
