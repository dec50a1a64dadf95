//! Textual formats shared by the catalog and the CLI: the algebra file
//! format, the `D<i><j>` bilinear-form syntax, matrix bodies for morphism
//! files, and extension-spec files. Pure string <-> value conversions; all
//! file IO lives in the companion crate.
//!
//! Algebra file grammar (bit-exact, `#` starts a comment):
//!
//! ```text
//! dim 3
//! field x^2 - 2        # optional; scalars may then use poly(c0,c1,...)
//! e1*e2 = 1 e3
//! e2*e1 = -1 e3
//! ```
//!
//! Omitted products are zero. Bilinear forms are linear combinations of
//! `D<i><j>` tokens, e.g. `1 D12 + 2 D21 + 1 D33`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::cohomology::BilinearForm;
use crate::linalg::Matrix;
use crate::poly;
use crate::scalar::{parse_scalar, FieldElement, NumberField, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Scalar(ScalarError),
    Malformed { line: usize, message: String },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Scalar(e) => write!(f, "{e}"),
            FormatError::Malformed { line, message } => {
                write!(f, "line {line}: {message}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FormatError {}

impl From<ScalarError> for FormatError {
    fn from(e: ScalarError) -> Self {
        FormatError::Scalar(e)
    }
}

fn bad(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parse `e<i>` into a 1-based index.
fn parse_basis_index(tok: &str, line: usize, dim: usize) -> Result<usize, FormatError> {
    let idx: usize = tok
        .strip_prefix('e')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(line, alloc::format!("expected basis vector, got `{tok}`")))?;
    if idx == 0 || idx > dim {
        return Err(bad(line, alloc::format!("basis index out of range: `{tok}`")));
    }
    Ok(idx)
}

pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let mut dim: Option<usize> = None;
    let mut field: Option<Arc<NumberField>> = None;
    let mut products: Vec<(usize, usize, usize, FieldElement)> = Vec::new();
    let mut name: Option<String> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| bad(lineno, "invalid dimension"))?;
            if d == 0 || d > 64 {
                return Err(bad(lineno, "dimension out of range"));
            }
            dim = Some(d);
            continue;
        }
        if let Some(rest) = line.strip_prefix("field") {
            let coeffs = poly::parse(rest.trim())?;
            field = Some(NumberField::new(coeffs)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("name") {
            name = Some(rest.trim().to_string());
            continue;
        }
        // product line: e<i>*e<j> = <scalar> e<k> [+ <scalar> e<k'> ...]
        let d = dim.ok_or_else(|| bad(lineno, "product line before `dim`"))?;
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| bad(lineno, "expected `=` in product line"))?;
        let (ei, ej) = lhs
            .split_once('*')
            .ok_or_else(|| bad(lineno, "expected `e<i>*e<j>` on the left"))?;
        let i = parse_basis_index(ei.trim(), lineno, d)?;
        let j = parse_basis_index(ej.trim(), lineno, d)?;
        for term in split_terms(rhs) {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad(lineno, "empty term"));
            }
            let (coeff_text, basis_text) = match term.rfind(' ') {
                Some(pos) => (&term[..pos], &term[pos + 1..]),
                None => ("1", term),
            };
            let k = parse_basis_index(basis_text.trim(), lineno, d)?;
            let coeff = parse_scalar(coeff_text.trim(), field.as_ref())?;
            products.push((i, j, k, coeff));
        }
    }
    let d = dim.ok_or_else(|| bad(0, "missing `dim` header"))?;
    let a = Algebra::from_products(d, &products);
    Ok(match name {
        Some(n) => a.with_name(&n),
        None => a,
    })
}

/// Split `1 e3 + -1 e4 - 2 e5` into signed terms (sign folded into the term).
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            '+' if depth == 0 && !cur.trim().is_empty() && !ends_in_operator(&cur) => {
                out.push(cur.clone());
                cur.clear();
            }
            '-' if depth == 0 && !cur.trim().is_empty() && !ends_in_operator(&cur) => {
                out.push(cur.clone());
                cur.clear();
                cur.push('-');
            }
            _ => {
                cur.push(c);
            }
        }
        let _ = i;
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn ends_in_operator(s: &str) -> bool {
    matches!(s.trim_end().chars().last(), Some('+' | '-' | '*' | '/' | '^' | '(' | ','))
}

pub fn render_algebra(a: &Algebra) -> String {
    let mut out = String::new();
    if let Some(n) = a.name() {
        out.push_str(&alloc::format!("name {n}\n"));
    }
    out.push_str(&alloc::format!("dim {}\n", a.dim()));
    if let Some(f) = a.field() {
        out.push_str(&alloc::format!("field {f}\n"));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.basis_product(i, j);
            if p.iter().all(FieldElement::is_zero) {
                continue;
            }
            out.push_str(&alloc::format!("e{}*e{} =", i + 1, j + 1));
            let mut first = true;
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    out.push_str(" +");
                }
                out.push_str(&alloc::format!(" {} e{}", c, k + 1));
                first = false;
            }
            out.push('\n');
        }
    }
    out
}

/// Parse the `D<i><j>` linear-combination syntax into a bilinear form.
pub fn parse_form(
    text: &str,
    dim: usize,
    field: Option<&Arc<NumberField>>,
) -> Result<BilinearForm, FormatError> {
    let mut acc = BilinearForm::zero(dim);
    for term in split_terms(text) {
        let term = term.trim().to_string();
        if term.is_empty() {
            continue;
        }
        let dpos = term
            .rfind('D')
            .ok_or_else(|| bad(0, alloc::format!("missing D token in `{term}`")))?;
        let idx = term[dpos + 1..].trim();
        if idx.len() != 2 || !idx.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad(0, alloc::format!("bad D token in `{term}` (use D<i><j> with single digits)")));
        }
        let i = idx[0..1].parse::<usize>().unwrap();
        let j = idx[1..2].parse::<usize>().unwrap();
        if i == 0 || i > dim || j == 0 || j > dim {
            return Err(bad(0, alloc::format!("D index out of range in `{term}`")));
        }
        let coeff_text = term[..dpos].trim().trim_end_matches('*').trim();
        let coeff = match coeff_text {
            "" => FieldElement::one(),
            "-" => FieldElement::from_int(-1),
            t => parse_scalar(t, field)?,
        };
        acc = acc.add(&BilinearForm::delta(dim, i, j).scale(&coeff));
    }
    Ok(acc)
}

pub fn render_form(f: &BilinearForm) -> String {
    let mut out = String::new();
    for i in 0..f.dim() {
        for j in 0..f.dim() {
            let v = f.value_at(i, j);
            if v.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&alloc::format!("{} D{}{}", v, i + 1, j + 1));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse a matrix body: one row per line, whitespace-separated scalars.
/// An optional `field <m(x)>` header line declares the scalar field.
pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let mut field: Option<Arc<NumberField>> = None;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("field") {
            field = Some(NumberField::new(poly::parse(rest.trim())?)?);
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            row.push(parse_scalar(tok, field.as_ref())?);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(bad(lineno, "ragged matrix rows"));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(bad(0, "empty matrix"));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn render_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&alloc::format!("{}", m.at(i, j)));
        }
        out.push('\n');
    }
    out
}

/// Extension-spec file: a `base: <reference>` line (normally a path to an
/// algebra file) plus one `cocycle: <form>` line per V basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpecFile {
    pub base_ref: String,
    pub cocycles: Vec<String>,
}

pub fn parse_extension_spec(text: &str) -> Result<ExtensionSpecFile, FormatError> {
    let mut base_ref: Option<String> = None;
    let mut cocycles = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("base:") {
            base_ref = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("cocycle:") {
            cocycles.push(rest.trim().to_string());
        } else {
            return Err(bad(lineno, "expected `base:` or `cocycle:`"));
        }
    }
    Ok(ExtensionSpecFile {
        base_ref: base_ref.ok_or_else(|| bad(0, "missing `base:` line"))?,
        cocycles,
    })
}

pub fn render_extension_spec(spec: &ExtensionSpecFile) -> String {
    let mut out = alloc::format!("base: {}\n", spec.base_ref);
    for c in &spec.cocycles {
        out.push_str(&alloc::format!("cocycle: {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        let text = "dim 3\ne1*e2 = 1 e3\ne2*e1 = -1 e3\n";
        let a = parse_algebra(text).unwrap();
        let expected = Algebra::from_products(
            3,
            &[(1, 2, 3, FieldElement::from_int(1)), (2, 1, 3, FieldElement::from_int(-1))],
        );
        assert_eq!(a, expected);
        assert_eq!(parse_algebra(&render_algebra(&a)).unwrap(), a);
    }

    #[test]
    fn algebra_with_field_and_fractions() {
        let text = "# Z1\ndim 3\ne1*e1 = 1 e2\ne1*e2 = 1/2 e3\ne2*e1 = 1 e3\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(*a.sc(0, 1, 2), FieldElement::from_ratio(1, 2));

        let text = "dim 2\nfield x^2 - 2\ne1*e1 = poly(0,1) e2\n";
        let a = parse_algebra(text).unwrap();
        let f = NumberField::adjoin_root(2, crate::scalar::Rational::from_int(2)).unwrap();
        assert_eq!(*a.sc(0, 0, 1), f.generator());
        assert_eq!(parse_algebra(&render_algebra(&a)).unwrap(), a);
    }

    #[test]
    fn multi_term_products() {
        let text = "dim 4\ne1*e3 = 1 e2 + 2 e4\ne3*e1 = 1 e2 - 2 e4\n";
        let a = parse_algebra(text).unwrap();
        assert_eq!(*a.sc(0, 2, 3), FieldElement::from_int(2));
        assert_eq!(*a.sc(2, 0, 3), FieldElement::from_int(-2));
    }

    #[test]
    fn form_syntax() {
        let f = parse_form("1 D12 + 2 D21 + 1 D33", 3, None).unwrap();
        assert_eq!(*f.value_at(1, 0), FieldElement::from_int(2));
        assert_eq!(*f.value_at(2, 2), FieldElement::from_int(1));
        let f2 = parse_form("D12 - D21", 3, None).unwrap();
        assert_eq!(*f2.value_at(1, 0), FieldElement::from_int(-1));
        let shown = render_form(&f);
        assert_eq!(parse_form(&shown, 3, None).unwrap(), f);
        assert!(parse_form("1 D99", 3, None).is_err());
    }

    #[test]
    fn matrix_and_spec_files() {
        let m = parse_matrix("1 0\n1/2 -3\n").unwrap();
        assert_eq!(*m.at(1, 0), FieldElement::from_ratio(1, 2));
        assert_eq!(parse_matrix(&render_matrix(&m)).unwrap(), m);

        let spec = parse_extension_spec("base: n1.alg\ncocycle: 1 D13\ncocycle: 1 D22\n").unwrap();
        assert_eq!(spec.base_ref, "n1.alg");
        assert_eq!(spec.cocycles.len(), 2);
        assert_eq!(parse_extension_spec(&render_extension_spec(&spec)).unwrap(), spec);
    }
}
