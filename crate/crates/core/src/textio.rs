//! Plain-text formats for algebras, bases, slice specifications and
//! polynomials. One record per line, `#` starts a comment.
//!
//! ```text
//! # complex numbers
//! p 1
//! q 0
//! label 0 1
//! label 1 i
//! gamma 0 0 0 1
//! gamma 0 1 1 1
//! gamma 1 0 1 1
//! gamma 1 1 0 -1
//! ```
//!
//! Numbers are integers, decimal fractions or ratios `a/b`, all read exactly.

use crate::algebra::{AlgebraElement, StructureTable};
use crate::conditions::SliceSpec;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::superfunc::{QsPoly, RealPoly, Superspace};

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| err(line, format!("not a number: `{s}`")))
}

fn index(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| err(line, format!("not an index: `{s}`")))
}

fn vector(line: usize, tokens: &[&str], dim: usize) -> Result<AlgebraElement<Rational>> {
    if tokens.len() != dim {
        return Err(err(line, format!("expected {dim} coefficients, found {}", tokens.len())));
    }
    Ok(AlgebraElement::new(tokens.iter().map(|t| number(line, t)).collect::<Result<_>>()?))
}

fn single(line: usize, tokens: &[&str]) -> Result<usize> {
    match tokens {
        [_, v] => index(line, v),
        _ => Err(err(line, format!("`{}` takes one value", tokens[0]))),
    }
}

/// Reads `p`, `q`, optional `label i name` and `gamma i j k value` lines.
pub fn parse_algebra(text: &str) -> Result<StructureTable<Rational>> {
    let (mut p, mut q) = (None, None);
    let mut entries = Vec::new();
    let mut labels = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "p" => p = Some(single(line, &tokens)?),
            "q" => q = Some(single(line, &tokens)?),
            "label" if tokens.len() == 3 => labels.push((line, index(line, tokens[1])?, tokens[2].to_string())),
            "gamma" if tokens.len() == 5 => {
                let ijk = [index(line, tokens[1])?, index(line, tokens[2])?, index(line, tokens[3])?];
                entries.push((line, ijk, number(line, tokens[4])?));
            }
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| err(0, "missing `p`"))?;
    let q = q.ok_or_else(|| err(0, "missing `q`"))?;
    let d = p + q + 1;
    for (line, ijk, _) in &entries {
        if ijk.iter().any(|&i| i >= d) {
            return Err(err(*line, format!("index out of range for dimension {d}")));
        }
    }
    let mut table = StructureTable::from_entries(p, q, entries.into_iter().map(|(_, [i, j, k], v)| (i, j, k, v)))?;
    if !labels.is_empty() {
        let mut names = table.labels().to_vec();
        for (line, i, name) in labels {
            *names.get_mut(i).ok_or_else(|| err(line, format!("label index {i} out of range")))? = name;
        }
        table = table.with_labels(names);
    }
    Ok(table)
}

pub fn format_algebra(t: &StructureTable<Rational>) -> String {
    let d = t.dim();
    let mut out = format!("p {}\nq {}\n", t.p(), t.q());
    for (i, l) in t.labels().iter().enumerate() {
        out += &format!("label {i} {l}\n");
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = t.gamma(i, j, k);
                if !num_traits::Zero::is_zero(v) {
                    out += &format!("gamma {i} {j} {k} {}\n", format_rational(v));
                }
            }
        }
    }
    out
}

/// Reads `vector c_0 ... c_{d-1}` lines.
pub fn parse_basis(text: &str, dim: usize) -> Result<Vec<AlgebraElement<Rational>>> {
    records(text)
        .map(|(line, tokens)| match tokens[0] {
            "vector" => vector(line, &tokens[1..], dim),
            other => Err(err(line, format!("unexpected record `{other}`"))),
        })
        .collect()
}

/// A slice file: `breakpoints s_1 ... s_r`, one `multiplier` per odd index
/// and optionally an odd basis given by `odd` lines.
#[derive(Clone, Debug)]
pub struct SliceFile {
    pub spec: SliceSpec<Rational>,
    pub odd_basis: Option<Vec<AlgebraElement<Rational>>>,
}

pub fn parse_slices(text: &str, t: &StructureTable<Rational>) -> Result<SliceFile> {
    let mut breakpoints = None;
    let mut multipliers = Vec::new();
    let mut odd = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "breakpoints" => breakpoints = Some(tokens[1..].iter().map(|s| index(line, s)).collect::<Result<Vec<_>>>()?),
            "multiplier" => multipliers.push(vector(line, &tokens[1..], t.dim())?),
            "odd" => odd.push(vector(line, &tokens[1..], t.dim())?),
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let breakpoints = breakpoints.ok_or_else(|| err(0, "missing `breakpoints`"))?;
    let spec = SliceSpec::new(t, breakpoints, multipliers)?;
    Ok(SliceFile { spec, odd_basis: (!odd.is_empty()).then_some(odd) })
}

pub fn format_slices(s: &SliceSpec<Rational>) -> String {
    let bp: Vec<String> = s.breakpoints()[..s.r()].iter().map(|b| b.to_string()).collect();
    let mut out = format!("breakpoints {}\n", bp.join(" "));
    for a in s.multipliers() {
        out += &format!("multiplier {}\n", join(a.coeffs()));
    }
    out
}

fn join(c: &[Rational]) -> String {
    c.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn tuple(line: usize, s: &str, len: usize) -> Result<Vec<u32>> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected a tuple `(a,b,...)`, found `{s}`")))?;
    let parts: Vec<u32> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|v| v.trim().parse().map_err(|_| err(line, format!("bad exponent `{v}`")))).collect::<Result<_>>()?
    };
    if parts.len() != len {
        return Err(err(line, format!("tuple `{s}` should have {len} entries")));
    }
    Ok(parts)
}

fn fmt_tuple(v: &[u32]) -> String {
    format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

/// Reads `coef <I> <J_1> ... <J_r> c_0 ... c_{d-1}` lines, with `I` an
/// `n`-tuple and each `J_k` an `m`-tuple. Repeated keys add up.
pub fn parse_qs_poly(text: &str, space: &Superspace<Rational>) -> Result<QsPoly<Rational>> {
    let (n, m, r, d) = (space.n(), space.m(), space.r(), space.table().dim());
    let mut out = QsPoly::zero(space);
    for (line, tokens) in records(text) {
        if tokens[0] != "coef" {
            return Err(err(line, format!("unexpected record `{}`", tokens[0])));
        }
        if tokens.len() != 2 + r + d {
            return Err(err(line, format!("expected {} tuples and {d} coefficients", 1 + r)));
        }
        let mut key = tuple(line, tokens[1], n)?;
        for k in 0..r {
            key.extend(tuple(line, tokens[2 + k], m)?);
        }
        out.add_term(key, vector(line, &tokens[2 + r..], d)?);
    }
    Ok(out)
}

pub fn format_qs_poly(f: &QsPoly<Rational>) -> String {
    let (n, m) = (f.n(), f.m());
    let mut out = String::new();
    for (key, c) in f.terms() {
        let mut parts = vec![fmt_tuple(&key[..n])];
        parts.extend((0..f.r()).map(|k| fmt_tuple(&key[n + k * m..n + (k + 1) * m])));
        out += &format!("coef {} {}\n", parts.join(" "), join(c.coeffs()));
    }
    out
}

/// Reads `term <exponents> c_0 ... c_{d-1}` lines over `nvars` real
/// coordinates.
pub fn parse_real_poly(text: &str, nvars: usize, dim: usize) -> Result<RealPoly<Rational>> {
    let mut out = RealPoly::zero(nvars, dim);
    for (line, tokens) in records(text) {
        if tokens[0] != "term" || tokens.len() != 2 + dim {
            return Err(err(line, format!("expected `term <exponents>` and {dim} coefficients")));
        }
        out.add_term(tuple(line, tokens[1], nvars)?, vector(line, &tokens[2..], dim)?);
    }
    Ok(out)
}

pub fn format_real_poly(f: &RealPoly<Rational>) -> String {
    f.terms().iter().map(|(k, c)| format!("term {} {}\n", fmt_tuple(k), join(c.coeffs()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{complex, complex_grassmann, paper_table_example, Builtin};
    use crate::scalar::rational;

    #[test]
    fn algebra_roundtrip() {
        for t in [complex(), complex_grassmann(2), paper_table_example()] {
            assert_eq!(parse_algebra(&format_algebra(&t)).unwrap(), t);
        }
    }

    #[test]
    fn algebra_errors() {
        assert!(matches!(parse_algebra("p 1\nq 0\ngamma 0 0 2 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_algebra("p 1\ngamma 0 0 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_algebra("p 1\nq 0\ngamma 0 0 0 x\n"), Err(Error::Parse { line: 3, .. })));
        let t = parse_algebra("p 1 # even\nq 0\ngamma 0 0 0 1\ngamma 1 1 0 -0.5\n").unwrap();
        assert_eq!(t.gamma(1, 1, 0), &rational(-1, 2));
    }

    #[test]
    fn slice_file_roundtrip() {
        let t = complex_grassmann(2);
        let s = crate::conditions::default_slices(Builtin::ComplexGrassmann(2), &t).unwrap();
        let back = parse_slices(&format_slices(&s), &t).unwrap();
        assert_eq!(back.spec, s);
        assert!(back.odd_basis.is_none());
    }

    #[test]
    fn polynomial_roundtrip() {
        use rand::SeedableRng;
        let sp = Superspace::builtin(Builtin::ComplexGrassmann(2), 1, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let f = QsPoly::random(&sp, 3, 6, &mut rng);
        assert_eq!(parse_qs_poly(&format_qs_poly(&f), &sp).unwrap(), f);
        let real = crate::superfunc::qs_to_real(&sp, &f, &crate::superfunc::SuperPoint::origin(&sp)).unwrap();
        assert_eq!(parse_real_poly(&format_real_poly(&real), sp.real_dim(), 8).unwrap(), real);
    }

    #[test]
    fn polynomial_line_format() {
        let sp = Superspace::builtin(Builtin::ComplexGrassmann(1), 1, 1).unwrap();
        let f = parse_qs_poly("coef (1) (1) 1 0 0 0\ncoef (0) (2) 1 0 0 0\n", &sp).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert!(parse_qs_poly("coef (1,0) (1) 1 0 0 0\n", &sp).is_err());
        assert!(parse_qs_poly("coef (1) (1) 1 0 0\n", &sp).is_err());
    }
}
