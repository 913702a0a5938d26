use serde::{Deserialize, Serialize};
use unf_core::nilpotent::diagram_is_valid;
use unf_core::uniform::split_ker_im;
use unf_core::{
    assemble, is_semisimple, jordan_chevalley, verify_decomposition, verify_uniform, young_basis, Mat, Poly,
    Rational, Subspace, UniformNormalForm, YoungDiagram,
};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Analyze,
    Semisimple,
    Jc,
    Nilpotent,
    Uniform,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub verify: bool,
    pub input_is_nilpotent: bool,
}

/// Everything the pipeline produced for one matrix. Keys of stages that were
/// not run are omitted from the JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Poly>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub big_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    /// `p(A)`, present only when it is nonzero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Mat>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Mat>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_polynomial: Option<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub young: Option<YoungEntry>,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p_basis: Option<Mat>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Mat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Vec<FactorEntry>>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungEntry {
    #[serde(rename = "ker_S")]
    pub ker_s: DiagramEntry,
    #[serde(rename = "im_S")]
    pub im_s: DiagramEntry,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEntry {
    pub row_counts: Vec<usize>,
    pub chains: Vec<ChainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub length: usize,
    /// `[v, Nv, …, N^{length−1}v]`.
    pub vectors: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub part: String,
    pub m: usize,
    pub q: usize,
    pub companion_polys: Vec<Poly>,
    /// The block's columns of `P`.
    pub basis: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub poly: Poly,
    pub exponent: usize,
}

impl From<&YoungDiagram> for DiagramEntry {
    fn from(d: &YoungDiagram) -> Self {
        DiagramEntry {
            row_counts: d.row_counts.clone(),
            chains: d
                .chains
                .iter()
                .map(|c| ChainEntry {
                    length: c.length,
                    vectors: c.vectors.clone(),
                })
                .collect(),
        }
    }
}

/// Young diagram of `n` restricted to the invariant subspace `part`, in ambient
/// coordinates, and whether it passed its own consistency checks.
fn diagram_on(n: &Mat, part: &Subspace) -> Result<(DiagramEntry, bool), CliError> {
    if part.is_zero() {
        return Ok((DiagramEntry::default(), true));
    }
    let local = n.restrict(part)?;
    let d = young_basis(&local)?;
    let ok = diagram_is_valid(&local, &d);
    Ok((DiagramEntry::from(&d.lift(part.basis())), ok))
}

fn fill_uniform(r: &mut AnalysisReport, unf: &UniformNormalForm) {
    r.blocks = Some(
        unf.blocks
            .iter()
            .map(|b| BlockEntry {
                part: b.part.as_str().to_string(),
                m: b.chain_length,
                q: b.q,
                companion_polys: b.companion_polys.clone(),
                basis: unf.p_basis.column_range(b.offset, b.offset + b.size()).columns(),
            })
            .collect(),
    );
    r.factorization = Some(
        unf.factorization
            .iter()
            .map(|(poly, m)| FactorEntry {
                poly: poly.clone(),
                exponent: *m,
            })
            .collect(),
    );
    r.p_basis = Some(unf.p_basis.clone());
    r.b = Some(unf.b.clone());
}

/// Runs the pipeline up to `stage`. `verified` is the conjunction of every
/// internal check, and with `opts.verify` also of [`crate::recheck`] applied to
/// the serialized report.
pub fn run_command(stage: Stage, opts: Options, a: &Mat) -> Result<AnalysisReport, CliError> {
    let mut r = AnalysisReport {
        input_dim: a.rows(),
        ..AnalysisReport::default()
    };

    if stage == Stage::Nilpotent && opts.input_is_nilpotent {
        let (diagram, ok) = diagram_on(a, &Subspace::full(a.rows()))?;
        r.young = Some(YoungEntry {
            ker_s: diagram,
            im_s: DiagramEntry::default(),
        });
        r.verified = ok;
        return finish(r, opts, a);
    }

    let ss = is_semisimple(a)?;
    let mut ok = ss.squarefree.is_consistent();
    r.char_poly = Some(ss.squarefree.chi.clone());
    r.d = Some(ss.squarefree.d.clone());
    r.p = Some(ss.squarefree.p.clone());
    r.big_m = Some(ss.squarefree.big_m);
    r.semisimple = Some(ss.semisimple);
    if !ss.semisimple {
        r.witness = Some(ss.witness);
    }
    if stage == Stage::Semisimple {
        r.verified = ok;
        return finish(r, opts, a);
    }

    let dec = jordan_chevalley(a)?;
    ok &= verify_decomposition(a, &dec).all_passed();
    r.s = Some(dec.s.clone());
    r.n = Some(dec.n.clone());
    r.s_polynomial = Some(dec.s_polynomial.clone());
    if stage == Stage::Jc {
        r.verified = ok;
        return finish(r, opts, a);
    }

    let (ker, im) = split_ker_im(&dec.s)?;
    let (ker_s, ok_ker) = diagram_on(&dec.n, &ker)?;
    let (im_s, ok_im) = diagram_on(&dec.n, &im)?;
    ok &= ok_ker && ok_im;
    r.young = Some(YoungEntry { ker_s, im_s });
    if stage == Stage::Nilpotent {
        r.verified = ok;
        return finish(r, opts, a);
    }

    let unf = assemble(a, &dec)?;
    ok &= verify_uniform(&unf, a, &dec).all_passed();
    fill_uniform(&mut r, &unf);
    r.verified = ok;
    finish(r, opts, a)
}

fn finish(mut r: AnalysisReport, opts: Options, a: &Mat) -> Result<AnalysisReport, CliError> {
    if opts.verify {
        let json = serde_json::to_string(&r).map_err(|e| CliError::Parse(e.to_string()))?;
        let failures = crate::recheck_json(a, &json, opts.input_is_nilpotent)?;
        r.verified &= failures.is_empty();
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, d: &[i64]) -> Mat {
        Mat::from_i64(rows, rows, d)
    }

    #[test]
    fn analyze_jordan_block() {
        let r = run_command(Stage::Analyze, Options { verify: true, ..Options::default() }, &m(2, &[1, 1, 0, 1])).unwrap();
        assert_eq!(r.semisimple, Some(false));
        assert_eq!(r.s, Some(Mat::identity(2)));
        assert_eq!(r.n, Some(Mat::from_i64(2, 2, &[0, 1, 0, 0])));
        assert_eq!(r.b, Some(Mat::from_i64(2, 2, &[1, 0, 1, 1])));
        assert_eq!(
            r.factorization,
            Some(vec![FactorEntry {
                poly: Poly::from_ints(&[-1, 1]),
                exponent: 2
            }])
        );
        assert!(r.verified);
    }

    #[test]
    fn semisimple_stage_stops_early() {
        let r = run_command(Stage::Semisimple, Options::default(), &m(2, &[0, -1, 1, 0])).unwrap();
        assert_eq!(r.semisimple, Some(true));
        assert!(r.witness.is_none() && r.s.is_none() && r.young.is_none());
        assert!(r.verified);
    }

    #[test]
    fn jc_on_scalar() {
        let r = run_command(Stage::Jc, Options::default(), &m(1, &[5])).unwrap();
        assert_eq!(r.s, Some(m(1, &[5])));
        assert_eq!(r.n, Some(Mat::zeros(1, 1)));
        assert!(r.blocks.is_none());
    }

    #[test]
    fn nilpotent_input_flag() {
        let a = Mat::block_diag(&[Mat::jordan_block(3), Mat::zeros(1, 1)]);
        let opts = Options {
            verify: true,
            input_is_nilpotent: true,
        };
        let r = run_command(Stage::Nilpotent, opts, &a).unwrap();
        let y = r.young.unwrap();
        assert_eq!(y.ker_s.row_counts, vec![2, 1, 1]);
        assert!(y.im_s.chains.is_empty());
        assert!(r.verified && r.s.is_none());

        let err = run_command(Stage::Nilpotent, opts, &Mat::identity(2)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn json_key_order() {
        let r = run_command(Stage::Analyze, Options::default(), &m(2, &[1, 1, 0, 1])).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let keys = [
            "input_dim", "char_poly", "\"d\"", "\"p\"", "\"M\"", "semisimple", "witness", "\"S\"", "\"N\"",
            "s_polynomial", "young", "\"P\"", "\"B\"", "blocks", "factorization", "verified",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
    }
}
