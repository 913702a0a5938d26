//! Independent re-verification of a serialized report against its input.
//!
//! Only the report's JSON and the input matrix are used, so a report edited
//! after the fact is caught the same way as a faulty computation.

use num_traits::Zero;
use unf_core::uniform::{d_block, expand_factorization};
use unf_core::{Mat, Poly, Rational};

use crate::report::{AnalysisReport, DiagramEntry};
use crate::CliError;

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn check_diagram(name: &str, n: &Mat, d: &DiagramEntry, out: &mut Vec<String>) -> Vec<Vec<Rational>> {
    let dim = n.rows();
    let mut vectors = Vec::new();
    for (i, c) in d.chains.iter().enumerate() {
        let well_formed = c.length == c.vectors.len()
            && c.length > 0
            && c.vectors.iter().all(|v| v.len() == dim)
            && c.vectors.windows(2).all(|w| n.mul_vec(&w[0]) == w[1])
            && c.vectors
                .last()
                .is_some_and(|t| !is_zero_vec(t) && is_zero_vec(&n.mul_vec(t)));
        if !well_formed {
            out.push(format!("young.{name}: chain {i} is not a Jordan chain of N"));
            return Vec::new();
        }
        vectors.extend(c.vectors.iter().cloned());
    }
    let height = d.chains.iter().map(|c| c.length).max().unwrap_or(0);
    let counts: Vec<usize> = (1..=height)
        .map(|l| d.chains.iter().filter(|c| c.length >= l).count())
        .collect();
    if counts != d.row_counts {
        out.push(format!("young.{name}: row_counts disagree with chain lengths"));
    }
    vectors
}

/// Lists every identity the report fails; empty means fully verified.
pub fn recheck(a: &Mat, r: &AnalysisReport, input_is_nilpotent: bool) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    let dim = a.rows();
    let chi = a.char_poly()?;
    if r.input_dim != dim {
        out.push("input_dim differs from the input".into());
    }
    if let Some(c) = &r.char_poly {
        if *c != chi {
            out.push("char_poly differs from the characteristic polynomial".into());
        }
    }
    if let (Some(d), Some(p)) = (&r.d, &r.p) {
        if d * p != chi {
            out.push("d·p differs from char_poly".into());
        }
        if !p.gcd_monic(&p.derivative()).is_ok_and(|g| g.is_one()) {
            out.push("p is not square-free".into());
        }
        if let Some(m) = r.big_m {
            let m = m as u32;
            if m == 0 || !chi.divides(&p.pow(m)) || (m > 1 && chi.divides(&p.pow(m - 1))) {
                out.push("M is not the least power with char_poly | p^M".into());
            }
        }
        let p_of_a = a.eval_poly(p)?;
        if let Some(ss) = r.semisimple {
            if ss != p_of_a.is_zero() {
                out.push("semisimple flag disagrees with p(A)".into());
            }
        }
        if let Some(w) = &r.witness {
            if *w != p_of_a {
                out.push("witness differs from p(A)".into());
            }
        }
    }

    if let (Some(s), Some(n)) = (&r.s, &r.n) {
        if s.rows() != dim || n.rows() != dim || !s.is_square() || !n.is_square() {
            out.push("S or N has the wrong shape".into());
            return Ok(out);
        }
        if &(s + n) != a {
            out.push("S + N differs from A".into());
        }
        if s * n != n * s {
            out.push("S and N do not commute".into());
        }
        if !n.pow(dim as u32).is_zero() {
            out.push("N is not nilpotent".into());
        }
        if let Some(p) = &r.p {
            if !s.eval_poly(p)?.is_zero() {
                out.push("p(S) is not zero".into());
            }
        }
        if let Some(sp) = &r.s_polynomial {
            if a.eval_poly(sp)? != *s {
                out.push("s_polynomial(A) differs from S".into());
            }
        }
    }

    if let Some(y) = &r.young {
        let n = match (&r.n, input_is_nilpotent) {
            (_, true) => a.clone(),
            (Some(n), false) => n.clone(),
            (None, false) => {
                out.push("young present without N".into());
                return Ok(out);
            }
        };
        let s = r.s.clone().unwrap_or_else(|| Mat::zeros(dim, dim));
        let ker_vectors = check_diagram("ker_S", &n, &y.ker_s, &mut out);
        let im_vectors = check_diagram("im_S", &n, &y.im_s, &mut out);
        if ker_vectors.iter().any(|v| !is_zero_vec(&s.mul_vec(v))) {
            out.push("young.ker_S: chain vector outside ker S".into());
        }
        let im_s = s.image_basis();
        if im_vectors.iter().any(|v| !im_s.contains(v)) {
            out.push("young.im_S: chain vector outside im S".into());
        }
        let mut all = ker_vectors;
        all.extend(im_vectors);
        if all.len() != dim || Mat::from_columns(dim, &all).rank() != dim {
            out.push("young: chains do not form a basis".into());
        }
    }

    if let (Some(p_basis), Some(b)) = (&r.p_basis, &r.b) {
        let square = p_basis.rows() == dim && p_basis.cols() == dim && b.rows() == dim && b.cols() == dim;
        if !square || p_basis.rank() != dim {
            out.push("P is not an invertible dim×dim matrix".into());
            return Ok(out);
        }
        if a * p_basis != p_basis * b {
            out.push("A·P differs from P·B".into());
        }
        if let Some(blocks) = &r.blocks {
            let mut offset = 0;
            let mut ds = Vec::with_capacity(blocks.len());
            for (i, bl) in blocks.iter().enumerate() {
                let c = Mat::block_diag(&bl.companion_polys.iter().map(Mat::companion).collect::<Vec<_>>());
                let monic = bl.companion_polys.iter().all(|p| p.is_monic() && !p.is_constant());
                if !monic || c.rows() != bl.q || bl.m == 0 || bl.basis.len() != bl.m * bl.q {
                    out.push(format!("block {i}: q or m disagrees with its data"));
                    return Ok(out);
                }
                let cols = p_basis.column_range(offset, (offset + bl.basis.len()).min(dim)).columns();
                if cols != bl.basis {
                    out.push(format!("block {i}: basis differs from its columns of P"));
                }
                let kernel_part = bl.part == "kernel-of-S";
                if kernel_part && !c.is_zero() {
                    out.push(format!("block {i}: kernel-of-S block has a nonzero companion"));
                }
                if !kernel_part && bl.part != "image-of-S" {
                    out.push(format!("block {i}: unknown part {:?}", bl.part));
                }
                offset += bl.basis.len();
                ds.push(d_block(&c, bl.m));
            }
            if offset != dim || Mat::block_diag(&ds) != *b {
                out.push("B does not match the block layout".into());
            }
            if let Some(f) = &r.factorization {
                let expected: Vec<(Poly, usize)> = blocks
                    .iter()
                    .map(|bl| (bl.companion_polys.iter().fold(Poly::one(), |acc, p| &acc * p), bl.m))
                    .collect();
                let given: Vec<(Poly, usize)> = f.iter().map(|e| (e.poly.clone(), e.exponent)).collect();
                if given != expected {
                    out.push("factorization disagrees with the blocks".into());
                }
                if expand_factorization(&given) != chi {
                    out.push("product of the factorization differs from char_poly".into());
                }
            }
        }
    }
    Ok(out)
}

/// [`recheck`] on a report given as JSON text.
pub fn recheck_json(a: &Mat, json: &str, input_is_nilpotent: bool) -> Result<Vec<String>, CliError> {
    let r: AnalysisReport =
        serde_json::from_str(json).map_err(|e| CliError::Parse(format!("invalid report: {e}")))?;
    recheck(a, &r, input_is_nilpotent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{run_command, Options, Stage};
    use unf_core::rat;

    fn report(a: &Mat) -> AnalysisReport {
        run_command(Stage::Analyze, Options::default(), a).unwrap()
    }

    #[test]
    fn honest_reports_pass() {
        for a in [
            Mat::from_i64(2, 2, &[1, 1, 0, 1]),
            Mat::from_i64(2, 2, &[0, -1, 1, 0]),
            Mat::scalar(2, &rat(2)),
            Mat::zeros(3, 3),
        ] {
            assert!(recheck(&a, &report(&a), false).unwrap().is_empty());
        }
    }

    #[test]
    fn tampering_is_detected() {
        let a = Mat::from_i64(2, 2, &[1, 1, 0, 1]);

        let mut r = report(&a);
        r.s = Some(Mat::from_i64(2, 2, &[1, 1, 0, 1]));
        assert!(!recheck(&a, &r, false).unwrap().is_empty());

        let mut r = report(&a);
        r.b = Some(Mat::from_i64(2, 2, &[1, 1, 0, 1]));
        assert!(!recheck(&a, &r, false).unwrap().is_empty());

        let mut r = report(&a);
        r.factorization.as_mut().unwrap()[0].exponent = 1;
        assert!(!recheck(&a, &r, false).unwrap().is_empty());

        let mut r = report(&a);
        r.big_m = Some(3);
        assert!(!recheck(&a, &r, false).unwrap().is_empty());

        let mut r = report(&a);
        r.young.as_mut().unwrap().im_s.row_counts = vec![2];
        assert!(!recheck(&a, &r, false).unwrap().is_empty());
    }

    #[test]
    fn malformed_report_is_a_parse_error() {
        let a = Mat::identity(1);
        assert_eq!(recheck_json(&a, "{", false).unwrap_err().exit_code(), 2);
    }
}
