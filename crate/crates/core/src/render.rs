//! Human-readable renderings. Terms are listed by descending `L` degree,
//! then descending `M` degree, then descending `x` degree.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::poly::{Monomial, Poly, Var};

fn display_order(p: &Poly) -> Vec<&(Monomial, BigInt)> {
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by_key(|t| std::cmp::Reverse(t.0 .0));
    terms
}

fn render(p: &Poly, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in display_order(p).into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        for v in Var::ALL {
            let e = m.exp(v);
            match (e, latex) {
                (0, _) => {}
                (1, _) => factors.push(v.name().to_string()),
                (_, true) => factors.push(format!("{}^{{{}}}", v.name(), e)),
                (_, false) => factors.push(format!("{}^{}", v.name(), e)),
            }
        }
        let sep = if latex { " " } else { "*" };
        if factors.is_empty() || !abs.is_one() {
            write!(out, "{abs}").unwrap();
            if !factors.is_empty() {
                out.push_str(sep);
            }
        }
        out.push_str(&factors.join(sep));
    }
    out
}

/// Plain text, e.g. `L^4*M^8 - 2*L^3*M^12 + 1`.
pub fn to_text(p: &Poly) -> String {
    render(p, false)
}

/// LaTeX math-mode body, e.g. `L^{4} M^{8} - 2 L^{3} M^{12} + 1`.
pub fn to_latex(p: &Poly) -> String {
    render(p, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_latex() {
        let p = Poly::from_rows(&[(0, 0, 0, 1), (3, 12, 0, -2), (4, 8, 0, 1), (0, -2, 1, 1)]);
        assert_eq!(to_text(&p), "L^4*M^8 - 2*L^3*M^12 + 1 + M^-2*x");
        assert_eq!(to_latex(&p), "L^{4} M^{8} - 2 L^{3} M^{12} + 1 + M^{-2} x");
        assert_eq!(to_text(&Poly::zero()), "0");
        assert_eq!(to_text(&Poly::constant(-3)), "-3");
    }
}
