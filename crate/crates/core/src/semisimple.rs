//! Square-free part of the characteristic polynomial and the
//! factorization-free semisimplicity test `p(A) = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;

/// `χ = d·p` with `d = gcd(χ, χ′)`, `p` square-free, and `M` the least
/// exponent with `χ | p^M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeData {
    pub chi: Poly,
    pub d: Poly,
    pub p: Poly,
    #[serde(rename = "M")]
    pub big_m: usize,
}

impl SquarefreeData {
    /// Computes every field from a monic characteristic polynomial.
    pub fn of(chi: &Poly) -> Result<SquarefreeData> {
        let (d, p) = squarefree_part(chi)?;
        let big_m = multiplicity(chi, &p)?;
        Ok(SquarefreeData {
            chi: chi.clone(),
            d,
            p,
            big_m,
        })
    }

    /// Re-checks `χ = d·p`, `gcd(p, p′) = 1`, minimality of `M` and `M ≤ deg χ`.
    pub fn is_consistent(&self) -> bool {
        let deg = self.chi.degree().unwrap_or(0);
        let squarefree = self
            .p
            .gcd_monic(&self.p.derivative())
            .map(|g| g.is_one())
            .unwrap_or(false);
        let m = self.big_m as u32;
        let divides_m = self.chi.divides(&self.p.pow(m));
        let minimal = self.big_m <= 1 || !self.chi.divides(&self.p.pow(m - 1));
        &self.d * &self.p == self.chi
            && squarefree
            && divides_m
            && minimal
            && (1..=deg.max(1)).contains(&self.big_m)
    }
}

/// `(d, p)` with `d = gcd(χ, χ′)` and `p = χ / d`, both monic.
pub fn squarefree_part(chi: &Poly) -> Result<(Poly, Poly)> {
    if !chi.is_monic() || chi.degree() == Some(0) {
        return Err(Error::NotMonicNonConstant);
    }
    let d = chi.gcd_monic(&chi.derivative())?;
    let p = chi.div_exact(&d)?;
    Ok((d, p))
}

/// Smallest `M ≥ 1` with `χ | p^M`, found by successive powers reduced mod `χ`.
pub fn multiplicity(chi: &Poly, p: &Poly) -> Result<usize> {
    if !p.divides(chi) || p.is_constant() {
        return Err(Error::InconsistentSquarefree);
    }
    let bound = chi.degree().unwrap_or(0);
    let mut power = p.rem(chi)?;
    for m in 1..=bound {
        if power.is_zero() {
            return Ok(m);
        }
        power = (&power * p).rem(chi)?;
    }
    Err(Error::InconsistentSquarefree)
}

/// Outcome of the semisimplicity test: `witness = p(A)` and
/// `semisimple ⇔ witness = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semisimplicity {
    pub semisimple: bool,
    pub witness: Mat,
    pub squarefree: SquarefreeData,
}

pub fn is_semisimple(a: &Mat) -> Result<Semisimplicity> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let squarefree = SquarefreeData::of(&a.char_poly()?)?;
    let witness = a.eval_poly(&squarefree.p)?;
    Ok(Semisimplicity {
        semisimple: witness.is_zero(),
        witness,
        squarefree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[1, -2, 1])).unwrap(), (p(&[-1, 1]), p(&[-1, 1])));
        assert_eq!(squarefree_part(&p(&[1, 0, 1])).unwrap(), (Poly::one(), p(&[1, 0, 1])));
        assert_eq!(squarefree_part(&p(&[0, 0, -1, 1])).unwrap(), (p(&[0, 1]), p(&[0, -1, 1])));
        assert_eq!(squarefree_part(&p(&[-5, 1])).unwrap(), (Poly::one(), p(&[-5, 1])));
        assert_eq!(squarefree_part(&p(&[1, 2])), Err(Error::NotMonicNonConstant));
        assert_eq!(squarefree_part(&Poly::one()), Err(Error::NotMonicNonConstant));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&p(&[1, -2, 1]), &p(&[-1, 1])).unwrap(), 2);
        assert_eq!(multiplicity(&p(&[1, 0, 1]), &p(&[1, 0, 1])).unwrap(), 1);
        assert_eq!(multiplicity(&p(&[0, 0, -1, 1]), &p(&[0, -1, 1])).unwrap(), 2);
        assert_eq!(multiplicity(&p(&[-5, 1]), &p(&[-5, 1])).unwrap(), 1);
        // λ does not share the roots of λ²−2λ+1.
        assert!(multiplicity(&p(&[1, -2, 1]), &p(&[0, 1])).is_err());
    }

    #[test]
    fn semisimple_examples() {
        let j = is_semisimple(&Mat::from_i64(2, 2, &[1, 1, 0, 1])).unwrap();
        assert!(!j.semisimple);
        assert_eq!(j.witness, Mat::from_i64(2, 2, &[0, 1, 0, 0]));

        let rot = is_semisimple(&Mat::from_i64(2, 2, &[0, -1, 1, 0])).unwrap();
        assert!(rot.semisimple && rot.witness.is_zero());
        assert_eq!(rot.squarefree.big_m, 1);

        let diag = is_semisimple(&Mat::from_i64(2, 2, &[1, 0, 0, 2])).unwrap();
        assert!(diag.semisimple);
        assert_eq!(diag.squarefree.p, p(&[2, -3, 1]));

        assert!(is_semisimple(&Mat::zeros(2, 3)).is_err());
        assert_eq!(is_semisimple(&Mat::zeros(0, 0)), Err(Error::EmptyMatrix));
    }

    #[test]
    fn jordan_blocks_are_not_semisimple() {
        for n in 2..6 {
            let mut a = Mat::jordan_block(n);
            for i in 0..n {
                a[(i, i)] = crate::rat(3);
            }
            assert!(!is_semisimple(&a).unwrap().semisimple);
        }
    }

    #[test]
    fn squarefree_data_consistency() {
        let d = SquarefreeData::of(&p(&[0, 0, -1, 1])).unwrap();
        assert!(d.is_consistent());
        let bad = SquarefreeData { big_m: 3, ..d };
        assert!(!bad.is_consistent());
    }
}
