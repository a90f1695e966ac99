//! Text, JSON and LaTeX emitters.

use std::collections::BTreeMap;

use schubert_core::{Basis, IndexSeq, Poly, SchubertOp, WedgeElement};
use serde::Serialize;

/// `y3^2 - 2*y1` -> `y_{3}^{2} - 2 y_{1}`.
pub fn latex_poly(p: &Poly) -> String {
    let s = p.to_string();
    let mut out = String::with_capacity(s.len() * 2);
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            'y' | 'c' | 'x' | '^' => {
                out.push(ch);
                if ch != '^' {
                    out.push('_');
                }
                out.push('{');
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    out.push(*d);
                    chars.next();
                }
                out.push('}');
            }
            '*' => out.push(' '),
            _ => out.push(ch),
        }
    }
    out
}

fn latex_wedge(basis: Basis, index: &IndexSeq) -> String {
    let symbol = match basis {
        Basis::Epsilon => "\\varepsilon",
        Basis::Mu => "\\mu",
    };
    index.entries().iter().map(|i| format!("{symbol}^{{{i}}}")).collect::<Vec<_>>().join("\\wedge ")
}

fn latex_coeff(c: &Poly) -> String {
    if c.is_one() {
        String::new()
    } else if c.num_terms() == 1 {
        format!("{}\\,", latex_poly(c))
    } else {
        format!("({})\\,", latex_poly(c))
    }
}

pub fn latex_element(w: &WedgeElement) -> String {
    if w.is_zero() {
        return "0".into();
    }
    w.terms()
        .map(|(i, c)| format!("{}{}", latex_coeff(c), latex_wedge(w.basis(), i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Rows and columns in basis order, labels in a leading comment.
pub fn latex_matrix(op: &SchubertOp) -> String {
    let labels: Vec<String> = op.indices().iter().map(|i| i.to_string()).collect();
    let mut out = format!("% rows and columns: {}\n\\begin{{pmatrix}}\n", labels.join(" "));
    for r in 0..op.dim() {
        let row: Vec<String> = (0..op.dim()).map(|c| latex_poly(op.get(r, c))).collect();
        out.push_str(&row.join(" & "));
        out.push_str(if r + 1 < op.dim() { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{pmatrix}");
    out
}

#[derive(Serialize)]
struct ConstantJson<'a> {
    #[serde(rename = "K")]
    k: &'a [usize],
    coeff: String,
}

#[derive(Serialize)]
struct ProductJson<'a> {
    #[serde(rename = "I")]
    i: &'a [usize],
    #[serde(rename = "J")]
    j: &'a [usize],
    basis: Basis,
    terms: Vec<ConstantJson<'a>>,
}

pub fn product_json(i: &IndexSeq, j: &IndexSeq, basis: Basis, terms: &BTreeMap<IndexSeq, Poly>) -> String {
    let json = ProductJson {
        i: i.entries(),
        j: j.entries(),
        basis,
        terms: terms.iter().map(|(k, c)| ConstantJson { k: k.entries(), coeff: c.to_string() }).collect(),
    };
    serde_json::to_string(&json).expect("serializable")
}

pub fn product_text(terms: &BTreeMap<IndexSeq, Poly>) -> String {
    let width = terms.keys().map(|k| k.to_string().len()).max().unwrap_or(0);
    terms.iter().map(|(k, c)| format!("{:>width$}  {c}", k.to_string())).collect::<Vec<_>>().join("\n")
}

pub fn product_latex(basis: Basis, terms: &BTreeMap<IndexSeq, Poly>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let class = match basis {
        Basis::Epsilon => "\\Delta",
        Basis::Mu => "G",
    };
    terms
        .iter()
        .map(|(k, c)| {
            let label: String = k.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            format!("{}{class}_{{{label}}}", latex_coeff(c))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// One line of the structure-constant table.
#[derive(Serialize)]
pub struct TableRow<'a> {
    #[serde(rename = "I")]
    pub i: &'a [usize],
    #[serde(rename = "J")]
    pub j: &'a [usize],
    #[serde(rename = "K")]
    pub k: &'a [usize],
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use schubert_core::VarSpec;

    #[test]
    fn latex_polynomials() {
        let p = Poly::parse("y3^2 - 2*y1*y4 + 1", VarSpec::torus(4)).unwrap();
        assert_eq!(latex_poly(&p), "-2 y_{1} y_{4} + y_{3}^{2} + 1");
        let c = Poly::parse("c1*c2", VarSpec::generic(2)).unwrap();
        assert_eq!(latex_poly(&c), "c_{1} c_{2}");
    }

    #[test]
    fn latex_wedges() {
        let spec = VarSpec::torus(4);
        let w = WedgeElement::from_terms(
            Basis::Mu,
            2,
            [
                ("1,3".parse().unwrap(), Poly::parse("y3 - y2", spec).unwrap()),
                ("2,3".parse().unwrap(), Poly::one(spec)),
            ],
        );
        assert_eq!(
            latex_element(&w),
            "(y_{3} - y_{2})\\,\\mu^{1}\\wedge \\mu^{3} + \\mu^{2}\\wedge \\mu^{3}"
        );
    }
}
