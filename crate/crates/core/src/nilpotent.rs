//! Young diagrams of nilpotent maps.
//!
//! A basis of Jordan chains is built recursively: find chains for `N`
//! restricted to `im N`, pull each generator back through one linear solve,
//! then complete the chain tails to a basis of `ker N` with extra length-1
//! chains.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::Rational;

/// `v, Nv, …, N^{ℓ−1}v` with `N^ℓ v = 0 ≠ N^{ℓ−1} v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChain {
    pub generator: Vec<Rational>,
    pub length: usize,
    /// `[v, Nv, …, N^{ℓ−1}v]`.
    pub vectors: Vec<Vec<Rational>>,
}

impl JordanChain {
    fn trivial(v: Vec<Rational>) -> JordanChain {
        JordanChain {
            generator: v.clone(),
            length: 1,
            vectors: vec![v],
        }
    }

    /// Maps every vector through `basis` (coordinates to ambient space).
    pub fn lift(&self, basis: &Mat) -> JordanChain {
        JordanChain {
            generator: basis.mul_vec(&self.generator),
            length: self.length,
            vectors: self.vectors.iter().map(|v| basis.mul_vec(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    /// Sorted by length descending, ties in construction order.
    pub chains: Vec<JordanChain>,
    /// `r_ℓ` = number of chains of length at least `ℓ`, for `ℓ = 1..=index`.
    pub row_counts: Vec<usize>,
    pub ambient_dim: usize,
}

impl YoungDiagram {
    fn from_chains(chains: Vec<JordanChain>, ambient_dim: usize) -> YoungDiagram {
        let height = chains.first().map_or(0, |c| c.length);
        let row_counts = (1..=height)
            .map(|l| chains.iter().filter(|c| c.length >= l).count())
            .collect();
        YoungDiagram {
            chains,
            row_counts,
            ambient_dim,
        }
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c.length).collect()
    }

    /// All chain vectors as matrix columns, chain by chain.
    pub fn chain_matrix(&self) -> Mat {
        let cols: Vec<Vec<Rational>> = self.chains.iter().flat_map(|c| c.vectors.clone()).collect();
        Mat::from_columns(self.ambient_dim, &cols)
    }

    /// Re-expresses a diagram computed in subspace coordinates in the ambient
    /// space spanned by `basis`'s columns.
    pub fn lift(&self, basis: &Mat) -> YoungDiagram {
        YoungDiagram {
            chains: self.chains.iter().map(|c| c.lift(basis)).collect(),
            row_counts: self.row_counts.clone(),
            ambient_dim: basis.rows(),
        }
    }
}

fn require_nilpotent(n: &Mat) -> Result<()> {
    if !n.is_square() {
        return Err(Error::NotSquare {
            rows: n.rows(),
            cols: n.cols(),
        });
    }
    if !n.pow(n.rows() as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// Smallest `k ≥ 1` with `N^k = 0`.
pub fn nilpotency_index(n: &Mat) -> Result<usize> {
    require_nilpotent(n)?;
    let mut k = 1;
    let mut power = n.clone();
    while !power.is_zero() {
        power = &power * n;
        k += 1;
    }
    Ok(k)
}

/// `dims[ℓ−1] = dim ker N^ℓ` and `row_counts[ℓ−1] = dims[ℓ−1] − dims[ℓ−2]`
/// for `ℓ = 1..=index`. Both are empty for a zero-dimensional space.
pub fn kernel_filtration(n: &Mat) -> Result<(Vec<usize>, Vec<usize>)> {
    let index = nilpotency_index(n)?;
    if n.rows() == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let dim = n.rows();
    let mut dims = Vec::with_capacity(index);
    let mut power = n.clone();
    for _ in 0..index {
        dims.push(dim - power.rank());
        power = &power * n;
    }
    let rows = dims
        .iter()
        .scan(0, |prev, &d| {
            let r = d - *prev;
            *prev = d;
            Some(r)
        })
        .collect();
    Ok((dims, rows))
}

/// A basis of Jordan chains realizing the Young diagram of `n`.
pub fn young_basis(n: &Mat) -> Result<YoungDiagram> {
    require_nilpotent(n)?;
    let chains = build_chains(n)?;
    Ok(YoungDiagram::from_chains(chains, n.rows()))
}

fn build_chains(n: &Mat) -> Result<Vec<JordanChain>> {
    let dim = n.rows();
    let kernel = n.kernel_basis();
    if n.is_zero() {
        return Ok(kernel.basis().columns().into_iter().map(JordanChain::trivial).collect());
    }

    let image = n.image_basis();
    let inner = build_chains(&n.restrict(&image)?)?;

    let mut chains = Vec::with_capacity(inner.len());
    let mut tails = Vec::with_capacity(inner.len());
    for c in &inner {
        let lifted = c.lift(image.basis());
        let v = n.solve_vec(&lifted.generator)?;
        tails.push(lifted.vectors.last().cloned().expect("chains are nonempty"));
        let mut vectors = Vec::with_capacity(c.length + 1);
        vectors.push(v.clone());
        vectors.extend(lifted.vectors);
        chains.push(JordanChain {
            generator: v,
            length: c.length + 1,
            vectors,
        });
    }

    // Complete {N^{m_i} w_i} to a basis of ker N, leftmost kernel columns first.
    let mut spanning = tails;
    let mut rank = Mat::from_columns(dim, &spanning).rank();
    for y in kernel.basis().columns() {
        if rank == kernel.dim() {
            break;
        }
        spanning.push(y.clone());
        let next = Mat::from_columns(dim, &spanning).rank();
        if next > rank {
            rank = next;
            chains.push(JordanChain::trivial(y));
        } else {
            spanning.pop();
        }
    }

    let total: usize = chains.iter().map(|c| c.length).sum();
    if total != image.dim() + kernel.dim() || total != dim {
        return Err(Error::Verification(format!(
            "Jordan chains cover {total} of {dim} dimensions"
        )));
    }
    chains.sort_by_key(|c| std::cmp::Reverse(c.length));
    Ok(chains)
}

/// Basis of chain vectors in standard order `N^{ℓ−1}v, …, Nv, v` per chain,
/// and the block-diagonal matrix of nilpotent Jordan blocks it produces.
pub fn jordan_block_matrix(diagram: &YoungDiagram) -> (Mat, Mat) {
    let cols: Vec<Vec<Rational>> = diagram
        .chains
        .iter()
        .flat_map(|c| c.vectors.iter().rev().cloned())
        .collect();
    let basis = Mat::from_columns(diagram.ambient_dim, &cols);
    let blocks: Vec<Mat> = diagram.chains.iter().map(|c| Mat::jordan_block(c.length)).collect();
    (basis, Mat::block_diag(&blocks))
}

/// Exact sanity checks on a diagram for `n`: chain relations, independence
/// and agreement with the kernel filtration.
pub fn diagram_is_valid(n: &Mat, diagram: &YoungDiagram) -> bool {
    let chains_ok = diagram.chains.iter().all(|c| {
        c.vectors.len() == c.length
            && c.vectors[0] == c.generator
            && c.vectors.windows(2).all(|w| n.mul_vec(&w[0]) == w[1])
            && c.vectors
                .last()
                .is_some_and(|t| !t.iter().all(Zero::is_zero) && n.mul_vec(t).iter().all(Zero::is_zero))
    });
    let filtration_ok = kernel_filtration(n).is_ok_and(|(_, rows)| rows == diagram.row_counts);
    let sorted = diagram.chains.windows(2).all(|w| w[0].length >= w[1].length);
    let m = diagram.chain_matrix();
    chains_ok && filtration_ok && sorted && m.cols() == diagram.ambient_dim && m.rank() == diagram.ambient_dim
}
