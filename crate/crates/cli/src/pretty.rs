use std::fmt::Write;

use num_traits::Zero;
use unf_core::{Mat, Poly};

use crate::report::{AnalysisReport, DiagramEntry};

fn matrix(out: &mut String, name: &str, m: &Mat) {
    let _ = writeln!(out, "{name}:");
    for line in m.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn poly(out: &mut String, name: &str, p: &Poly) {
    let _ = writeln!(out, "{name}: {}", p.pretty());
}

fn diagram(out: &mut String, name: &str, d: &DiagramEntry) {
    let lengths: Vec<String> = d.chains.iter().map(|c| c.length.to_string()).collect();
    let counts: Vec<String> = d.row_counts.iter().map(ToString::to_string).collect();
    let _ = writeln!(
        out,
        "  {name}: row counts [{}], chain lengths [{}]",
        counts.join(", "),
        lengths.join(", ")
    );
}

fn factor(p: &Poly, exponent: usize) -> String {
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    let base = if terms > 1 || (exponent > 1 && p.degree() > Some(1)) { format!("({})", p.pretty()) } else { p.pretty() };
    if exponent == 1 {
        base
    } else {
        format!("{base}^{exponent}")
    }
}

/// Human-readable rendering; polynomials in descending degree.
pub fn render(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input_dim: {}", r.input_dim);
    if let Some(p) = &r.char_poly {
        poly(&mut out, "char_poly", p);
    }
    if let Some(p) = &r.d {
        poly(&mut out, "d", p);
    }
    if let Some(p) = &r.p {
        poly(&mut out, "p", p);
    }
    if let Some(m) = r.big_m {
        let _ = writeln!(out, "M: {m}");
    }
    if let Some(ss) = r.semisimple {
        let _ = writeln!(out, "semisimple: {ss}");
    }
    if let Some(w) = &r.witness {
        matrix(&mut out, "witness p(A)", w);
    }
    if let Some(s) = &r.s {
        matrix(&mut out, "S", s);
    }
    if let Some(n) = &r.n {
        matrix(&mut out, "N", n);
    }
    if let Some(p) = &r.s_polynomial {
        poly(&mut out, "s_polynomial", p);
    }
    if let Some(y) = &r.young {
        let _ = writeln!(out, "young:");
        diagram(&mut out, "ker_S", &y.ker_s);
        diagram(&mut out, "im_S", &y.im_s);
    }
    if let Some(p) = &r.p_basis {
        matrix(&mut out, "P", p);
    }
    if let Some(b) = &r.b {
        matrix(&mut out, "B", b);
    }
    if let Some(blocks) = &r.blocks {
        let _ = writeln!(out, "blocks:");
        for b in blocks {
            let polys: Vec<String> = b.companion_polys.iter().map(Poly::pretty).collect();
            let _ = writeln!(out, "  {}  m={}  q={}  [{}]", b.part, b.m, b.q, polys.join(", "));
        }
    }
    if let Some(f) = &r.factorization {
        let parts: Vec<String> = f.iter().map(|e| factor(&e.poly, e.exponent)).collect();
        let _ = writeln!(out, "factorization: {}", parts.join(" · "));
    }
    let _ = writeln!(out, "verified: {}", r.verified);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{run_command, Options, Stage};

    #[test]
    fn descending_polynomials() {
        assert_eq!(Poly::from_ints(&[1, -2, 1]).pretty(), "λ^2 - 2λ + 1");
        assert_eq!(factor(&Poly::from_ints(&[-1, 1]), 2), "(λ - 1)^2");
        assert_eq!(factor(&Poly::from_ints(&[0, 0, 1]), 1), "λ^2");
        assert_eq!(factor(&Poly::from_ints(&[0, 1]), 3), "λ^3");
        assert_eq!(factor(&Poly::from_ints(&[0, 0, 1]), 2), "(λ^2)^2");
    }

    #[test]
    fn one_line_per_block() {
        let a = Mat::from_i64(3, 3, &[0, -1, 0, 1, 0, 0, 0, 0, 0]);
        let text = render(&run_command(Stage::Analyze, Options::default(), &a).unwrap());
        let lines: Vec<&str> = text.lines().filter(|l| l.contains("m=")).collect();
        assert_eq!(lines, vec!["  kernel-of-S  m=1  q=1  [λ]", "  image-of-S  m=1  q=2  [λ^2 + 1]"]);
        assert!(text.contains("factorization: λ · (λ^2 + 1)"));
        assert!(text.ends_with("verified: true\n"));
    }
}
