//! Uniform normal form of a linear map from its Jordan–Chevalley parts.
//!
//! `V = ker S ⊕ im S`, both pieces invariant under `S` and `N`. On each piece
//! the space of chain generators of a fixed length `m` is chosen as an
//! `S`-invariant complement `F_m`, `S|F_m` is split into cyclic subspaces, and
//! the basis `u, Nu, …, N^{m−1}u` puts `A` into the block form
//!
//! ```text
//! D = [ C  0  …  0 ]
//!     [ I  C  …  0 ]
//!     [ …  …  …  … ]
//!     [ 0  …  I  C ]
//! ```
//!
//! with `C` the (block-)companion matrix of `S|F_m`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jordan_chevalley::JcDecomposition;
use crate::linalg::{Mat, Subspace};
use crate::nilpotent::nilpotency_index;
use crate::poly::Poly;
use crate::semisimple::squarefree_part;

/// Which summand of `V = ker S ⊕ im S` a block lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    KernelOfS,
    ImageOfS,
}

impl Part {
    pub fn as_str(self) -> &'static str {
        match self {
            Part::KernelOfS => "kernel-of-S",
            Part::ImageOfS => "image-of-S",
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformBlock {
    pub part: Part,
    /// Common length `m` of the Jordan chains in this block.
    pub chain_length: usize,
    /// The `S`-invariant generator space `F`, in ambient coordinates.
    pub f_basis: Subspace,
    /// `dim F`.
    pub q: usize,
    /// Annihilators of the cyclic pieces of `S|F`; degrees sum to `q`.
    pub companion_polys: Vec<Poly>,
    /// Block-companion matrix of `S|F`.
    pub c_matrix: Mat,
    /// The `mq × mq` block with `c_matrix` on the diagonal and identities below.
    pub d_matrix: Mat,
    /// First column of this block in `UniformNormalForm::p_basis`.
    pub offset: usize,
}

impl UniformBlock {
    pub fn size(&self) -> usize {
        self.chain_length * self.q
    }

    /// `χ_{S|F}`, the product of the companion polynomials.
    pub fn char_poly(&self) -> Poly {
        self.companion_polys.iter().fold(Poly::one(), |acc, p| &acc * p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformNormalForm {
    /// Columns form the normal-form basis.
    pub p_basis: Mat,
    /// `p_basis⁻¹ · A · p_basis`.
    pub b: Mat,
    pub blocks: Vec<UniformBlock>,
    /// `(χ_{S|F}, m)` per block; the product of the powers is `χ_A`.
    pub factorization: Vec<(Poly, usize)>,
    pub kernel_s_dim: usize,
}

/// `D_{mq}`: `c` repeated on the block diagonal, identity blocks below it.
pub fn d_block(c: &Mat, m: usize) -> Mat {
    let q = c.rows();
    let mut d = Mat::zeros(m * q, m * q);
    for k in 0..m {
        d.set_block(k * q, k * q, c);
        if k + 1 < m {
            d.set_block((k + 1) * q, k * q, &Mat::identity(q));
        }
    }
    d
}

fn assert_semisimple(s: &Mat) -> Result<()> {
    if s.rows() == 0 {
        return Ok(());
    }
    let (_, p) = squarefree_part(&s.char_poly()?)?;
    if s.eval_poly(&p)?.is_zero() {
        Ok(())
    } else {
        Err(Error::NotSemisimple)
    }
}

/// `(ker S, im S)`, checked to be complementary.
pub fn split_ker_im(s: &Mat) -> Result<(Subspace, Subspace)> {
    if !s.is_square() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    assert_semisimple(s)?;
    let ker = s.kernel_basis();
    let im = s.image_basis();
    if !ker.is_complement_of(&im) {
        return Err(Error::NotDirectSum);
    }
    Ok((ker, im))
}

/// An `S`-invariant `F` with `w = w_sub ⊕ F`.
///
/// Works in the coordinates of `w`: with `Φ` the projection onto the quotient
/// `Q = w / w_sub` and `S̄` the induced map on `Q`, the section `σ: Q → w` is
/// the solution of the linear system `Φσ = 1`, `S_w σ = σ S̄` (free variables
/// zero), and `F = im σ`.
pub fn invariant_complement(s: &Mat, w: &Subspace, w_sub: &Subspace) -> Result<Subspace> {
    let ambient = s.rows();
    if w.ambient_dim() != ambient || w_sub.ambient_dim() != ambient {
        return Err(Error::DimensionMismatch("invariant_complement: ambient dimensions differ".into()));
    }
    if !w_sub.is_subspace_of(w) {
        return Err(Error::NotContained);
    }
    let k = w.dim();
    let k0 = w_sub.dim();
    let q = k - k0;
    if q == 0 {
        return Ok(Subspace::zero(ambient));
    }

    let s_w = s.restrict(w)?;
    let sub_coords = w.coordinates(w_sub.basis())?;

    // Extend w_sub's coordinates to a basis of Q^k with unit vectors.
    let mut cols = sub_coords.columns();
    let mut reps = Vec::with_capacity(q);
    for i in 0..k {
        if reps.len() == q {
            break;
        }
        let mut unit = vec![crate::Rational::zero(); k];
        unit[i] = crate::Rational::one();
        cols.push(unit.clone());
        if Mat::from_columns(k, &cols).rank() == cols.len() {
            reps.push(unit);
        } else {
            cols.pop();
        }
    }
    let full = Mat::from_columns(k, &cols).inverse()?;
    let phi = full.block(k0, 0, q, k);
    let reps = Mat::from_columns(k, &reps);
    let s_bar = &(&phi * &s_w) * &reps;

    // Unknown σ is k×q, entry (i, j) at index i*q + j.
    let unknowns = k * q;
    let var = |i: usize, j: usize| i * q + j;
    let mut coeff = Mat::zeros(q * q + k * q, unknowns);
    let mut rhs = Mat::zeros(q * q + k * q, 1);
    let mut row = 0;
    for a in 0..q {
        for j in 0..q {
            for i in 0..k {
                coeff[(row, var(i, j))] = phi[(a, i)].clone();
            }
            if a == j {
                rhs[(row, 0)] = crate::Rational::one();
            }
            row += 1;
        }
    }
    for i in 0..k {
        for j in 0..q {
            for l in 0..k {
                coeff[(row, var(l, j))] += &s_w[(i, l)];
            }
            for l in 0..q {
                coeff[(row, var(i, l))] -= &s_bar[(l, j)];
            }
            row += 1;
        }
    }
    let solution = coeff.solve(&rhs).map_err(|e| match e {
        Error::NoSolution => Error::NoInvariantComplement,
        other => other,
    })?;
    let mut sigma = Mat::zeros(k, q);
    for i in 0..k {
        for j in 0..q {
            sigma[(i, j)] = solution[(var(i, j), 0)].clone();
        }
    }
    let f = Subspace::from_spanning(&(w.basis() * &sigma));
    if f.dim() != q {
        return Err(Error::Verification("invariant complement has wrong dimension".into()));
    }
    Ok(f)
}

/// Generator spaces `(m, F_m)` for chain lengths `m` from the nilpotency index
/// down to 1, keeping only nonzero ones.
///
/// `F_m` is an `S`-invariant complement of `ker N^{m−1} + (im N ∩ ker N^m)`
/// inside `ker N^m`, so its nonzero vectors generate chains of length exactly `m`.
pub fn generator_spaces(n: &Mat, s: &Mat) -> Result<Vec<(usize, Subspace)>> {
    if n.rows() != s.rows() || !s.is_square() {
        return Err(Error::DimensionMismatch("generator_spaces: N and S differ in shape".into()));
    }
    if n * s != s * n {
        return Err(Error::Verification("S and N do not commute".into()));
    }
    let index = nilpotency_index(n)?;
    let dim = n.rows();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let image = n.image_basis();
    // kernels[m] = ker N^m
    let mut kernels = vec![Subspace::zero(dim)];
    let mut power = Mat::identity(dim);
    for _ in 1..=index {
        power = &power * n;
        kernels.push(power.kernel_basis());
    }
    let mut spaces = Vec::new();
    for m in (1..=index).rev() {
        let c_m = kernels[m - 1].sum(&image.intersection(&kernels[m]));
        let f = invariant_complement(s, &kernels[m], &c_m)?;
        if !f.is_zero() {
            spaces.push((m, f));
        }
    }
    Ok(spaces)
}

/// Monic annihilator of `v` under `s` and the cyclic basis `v, sv, …`.
fn annihilator(s: &Mat, v: &[crate::Rational]) -> Result<(Poly, Vec<Vec<crate::Rational>>)> {
    let mut krylov = vec![v.to_vec()];
    loop {
        let next = s.mul_vec(krylov.last().expect("nonempty"));
        let basis = Mat::from_columns(s.rows(), &krylov);
        if let Ok(c) = basis.solve_vec(&next) {
            let r = krylov.len();
            let mut coeffs: Vec<crate::Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(crate::Rational::one());
            debug_assert_eq!(coeffs.len(), r + 1);
            return Ok((Poly::new(coeffs), krylov));
        }
        krylov.push(next);
    }
}

/// Greedy cyclic decomposition of a semisimple `s_f`.
///
/// Returns the concatenated cyclic bases, the annihilator of each cyclic
/// piece, and `basis⁻¹·s_f·basis`, the block diagonal of their companions.
pub fn cyclic_companion_basis(s_f: &Mat) -> Result<(Mat, Vec<Poly>, Mat)> {
    if !s_f.is_square() {
        return Err(Error::NotSquare {
            rows: s_f.rows(),
            cols: s_f.cols(),
        });
    }
    let q = s_f.rows();
    let mut working = Subspace::full(q);
    let mut columns = Vec::with_capacity(q);
    let mut polys = Vec::new();
    while !working.is_zero() {
        let v = working.basis().column(0);
        let (mu, krylov) = annihilator(s_f, &v)?;
        let cyclic = Subspace::from_vectors(q, &krylov);
        working = invariant_complement(s_f, &working, &cyclic).map_err(|e| match e {
            Error::NoInvariantComplement => Error::NotSemisimple,
            other => other,
        })?;
        columns.extend(krylov);
        polys.push(mu);
    }
    let basis = Mat::from_columns(q, &columns);
    let c_matrix = &(&basis.inverse()? * s_f) * &basis;
    let expected = Mat::block_diag(&polys.iter().map(Mat::companion).collect::<Vec<_>>());
    if c_matrix != expected {
        return Err(Error::Verification("cyclic basis does not give companion blocks".into()));
    }
    let product = polys.iter().fold(Poly::one(), |acc, p| &acc * p);
    if product != s_f.char_poly()? {
        return Err(Error::Verification("companion polynomials do not multiply to χ".into()));
    }
    Ok((basis, polys, c_matrix))
}

/// Builds the normal-form basis and block matrix for `a` from a verified
/// decomposition.
pub fn assemble(a: &Mat, dec: &JcDecomposition) -> Result<UniformNormalForm> {
    let dim = a.rows();
    let (ker, im) = split_ker_im(&dec.s)?;
    let mut columns: Vec<Vec<crate::Rational>> = Vec::with_capacity(dim);
    let mut blocks = Vec::new();

    for (part, space) in [(Part::KernelOfS, &ker), (Part::ImageOfS, &im)] {
        if space.is_zero() {
            continue;
        }
        // Both summands are N-invariant because S and N commute.
        let n_part = dec.n.restrict(space)?;
        let s_part = dec.s.restrict(space)?;
        for (m, f_local) in generator_spaces(&n_part, &s_part)? {
            let s_f = s_part.restrict(&f_local)?;
            let (cyc, companion_polys, c_matrix) = cyclic_companion_basis(&s_f)?;
            let u = space.basis() * &(f_local.basis() * &cyc);
            let q = u.cols();
            let offset = columns.len();
            let mut layer = u;
            for _ in 0..m {
                columns.extend(layer.columns());
                layer = &dec.n * &layer;
            }
            if part == Part::KernelOfS && !c_matrix.is_zero() {
                return Err(Error::Verification("kernel block has nonzero companion".into()));
            }
            blocks.push(UniformBlock {
                part,
                chain_length: m,
                f_basis: space.lift(&f_local),
                q,
                d_matrix: d_block(&c_matrix, m),
                companion_polys,
                c_matrix,
                offset,
            });
        }
    }

    let p_basis = Mat::from_columns(dim, &columns);
    if p_basis.cols() != dim {
        return Err(Error::Verification(format!(
            "normal-form basis has {} columns for dimension {dim}",
            p_basis.cols()
        )));
    }
    let b = &(&p_basis.inverse()? * a) * &p_basis;
    let expected = Mat::block_diag(&blocks.iter().map(|bl| bl.d_matrix.clone()).collect::<Vec<_>>());
    if b != expected {
        return Err(Error::Verification("P⁻¹AP does not match the block layout".into()));
    }
    let mut unf = UniformNormalForm {
        p_basis,
        b,
        blocks,
        factorization: Vec::new(),
        kernel_s_dim: ker.dim(),
    };
    unf.factorization = factor_charpoly(&unf);
    Ok(unf)
}

/// `(χ_{S|F}, m)` for each block in order.
pub fn factor_charpoly(unf: &UniformNormalForm) -> Vec<(Poly, usize)> {
    unf.blocks.iter().map(|b| (b.char_poly(), b.chain_length)).collect()
}

/// Expands `Π χ^m` over a factorization.
pub fn expand_factorization(factors: &[(Poly, usize)]) -> Poly {
    factors
        .iter()
        .fold(Poly::one(), |acc, (p, m)| &acc * &p.pow(*m as u32))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport {
    /// `N^{m−1} U ≠ 0`
    pub top_nonzero: bool,
    /// `N^m U = 0`
    pub annihilated: bool,
    /// `ker N^{m−1} ∩ U = N U`
    pub kernel_is_image: bool,
    /// `S F ⊆ F` and `χ_{S|F} = Π companion polynomials`
    pub s_invariant: bool,
    /// `χ_{S|U} = χ_{S|F}^m`
    pub u_char_poly: bool,
}

impl BlockReport {
    pub fn all_passed(&self) -> bool {
        self.top_nonzero && self.annihilated && self.kernel_is_image && self.s_invariant && self.u_char_poly
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformReport {
    pub p_invertible: bool,
    /// `A·P = P·B`
    pub conjugation: bool,
    /// `B` and every `D`, `C` block match the documented layout entrywise.
    pub layout: bool,
    /// `Π χ_{S|F}^m = χ_A`
    pub factorization: bool,
    /// Kernel blocks contribute exactly `λ^{dim ker S}`; image blocks have `χ(0) ≠ 0`.
    pub kernel_power: bool,
    pub blocks: Vec<BlockReport>,
}

impl UniformReport {
    pub fn all_passed(&self) -> bool {
        self.p_invertible
            && self.conjugation
            && self.layout
            && self.factorization
            && self.kernel_power
            && self.blocks.iter().all(BlockReport::all_passed)
    }
}

fn check_block(block: &UniformBlock, unf: &UniformNormalForm, dec: &JcDecomposition) -> BlockReport {
    let m = block.chain_length as u32;
    let n = &dec.n;
    let u_cols = unf.p_basis.column_range(block.offset, block.offset + block.size());
    let u = Subspace::from_spanning(&u_cols);
    let top = n.pow(m - 1);
    let top_nonzero = !(&top * &u_cols).is_zero();
    let annihilated = (&n.pow(m) * &u_cols).is_zero();
    let kernel_is_image = top.kernel_basis().intersection(&u) == u.image_under(n);
    let s_invariant = dec
        .s
        .restrict(&block.f_basis)
        .and_then(|r| r.char_poly())
        .is_ok_and(|chi| chi == block.char_poly());
    let u_char_poly = dec
        .s
        .restrict(&u)
        .and_then(|r| r.char_poly())
        .is_ok_and(|chi| chi == block.char_poly().pow(m));
    BlockReport {
        top_nonzero,
        annihilated,
        kernel_is_image,
        s_invariant,
        u_char_poly,
    }
}

/// Re-checks every defining identity of the normal form against `a`.
pub fn verify_uniform(unf: &UniformNormalForm, a: &Mat, dec: &JcDecomposition) -> UniformReport {
    let dim = a.rows();
    let shapes = unf.p_basis.rows() == dim && unf.p_basis.cols() == dim && unf.b.rows() == dim && unf.b.cols() == dim;
    if !shapes {
        return UniformReport {
            p_invertible: false,
            conjugation: false,
            layout: false,
            factorization: false,
            kernel_power: false,
            blocks: Vec::new(),
        };
    }
    let p_invertible = unf.p_basis.rank() == dim;
    let conjugation = p_invertible && a * &unf.p_basis == &unf.p_basis * &unf.b;

    let mut offset = 0;
    let mut layout = true;
    for bl in &unf.blocks {
        let companions = Mat::block_diag(&bl.companion_polys.iter().map(Mat::companion).collect::<Vec<_>>());
        layout &= bl.offset == offset
            && bl.c_matrix == companions
            && bl.d_matrix == d_block(&bl.c_matrix, bl.chain_length)
            && (bl.part == Part::ImageOfS || bl.c_matrix.is_zero());
        offset += bl.size();
    }
    layout &= offset == dim
        && unf.b == Mat::block_diag(&unf.blocks.iter().map(|b| b.d_matrix.clone()).collect::<Vec<_>>());

    let factorization = a
        .char_poly()
        .is_ok_and(|chi| expand_factorization(&unf.factorization) == chi)
        && unf.factorization == factor_charpoly(unf);

    let kernel_factors: Vec<(Poly, usize)> = unf
        .blocks
        .iter()
        .filter(|b| b.part == Part::KernelOfS)
        .map(|b| (b.char_poly(), b.chain_length))
        .collect();
    let image_ok = unf
        .blocks
        .iter()
        .filter(|b| b.part == Part::ImageOfS)
        .all(|b| !b.char_poly().coeff(0).is_zero());
    let kernel_power = expand_factorization(&kernel_factors) == Poly::monomial(crate::Rational::one(), unf.kernel_s_dim)
        && dec.s.kernel_basis().dim() == unf.kernel_s_dim
        && image_ok;

    let blocks = unf.blocks.iter().map(|b| check_block(b, unf, dec)).collect();
    UniformReport {
        p_invertible,
        conjugation,
        layout,
        factorization,
        kernel_power,
        blocks,
    }
}
