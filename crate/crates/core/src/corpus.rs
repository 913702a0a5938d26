//! Seeded generators for test matrices.
//!
//! Every generator takes an explicit RNG so a corpus is reproducible from its
//! seed alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Mat;
use crate::poly::Poly;
use crate::rational::{rat, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `dim × dim` matrix with entries uniform in `lo..=hi`.
pub fn random_integer_matrix<R: Rng>(rng: &mut R, dim: usize, lo: i64, hi: i64) -> Mat {
    let data: Vec<i64> = (0..dim * dim).map(|_| rng.gen_range(lo..=hi)).collect();
    Mat::from_i64(dim, dim, &data)
}

/// `count` matrices of sizes `1..=max_dim` with entries in `[−3, 3]`.
///
/// A third of them are biased towards repeated eigenvalues (sparse, or with a
/// small-integer spectrum) so that non-semisimple inputs are well represented.
pub fn integer_corpus(seed: u64, count: usize, max_dim: usize) -> Vec<Mat> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let dim = rng.gen_range(1..=max_dim);
            match i % 3 {
                0 | 1 => random_integer_matrix(&mut rng, dim, -3, 3),
                _ => sparse_integer_matrix(&mut rng, dim),
            }
        })
        .collect()
}

fn sparse_integer_matrix<R: Rng>(rng: &mut R, dim: usize) -> Mat {
    let mut m = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if j >= i && rng.gen_bool(0.5) {
                m[(i, j)] = rat(rng.gen_range(-3..=3));
            }
        }
    }
    // Upper triangular with a shared diagonal value on some entries, then
    // conjugated by a unimodular matrix so it is not visibly triangular.
    let shared = rat(rng.gen_range(-2..=2));
    for i in 0..dim {
        if rng.gen_bool(0.6) {
            m[(i, i)] = shared.clone();
        }
    }
    let (t, t_inv) = unimodular(rng, dim, 2);
    clamp_conjugate(&m, &t, &t_inv)
}

fn clamp_conjugate(m: &Mat, t: &Mat, t_inv: &Mat) -> Mat {
    let c = &(t * m) * t_inv;
    if c.entries().iter().all(|x| x.abs() <= rat(3)) {
        c
    } else {
        m.clone()
    }
}

/// Unimodular `T` and its inverse, as a product of elementary row operations
/// with multipliers in `[−bound, bound]` followed by a row permutation.
pub fn unimodular<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> (Mat, Mat) {
    let mut t = Mat::identity(dim);
    let mut t_inv = Mat::identity(dim);
    if dim < 2 {
        return (t, t_inv);
    }
    for _ in 0..2 * dim {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-bound..=bound);
        if c == 0 {
            continue;
        }
        let mut e = Mat::identity(dim);
        e[(i, j)] = rat(c);
        let mut e_inv = Mat::identity(dim);
        e_inv[(i, j)] = rat(-c);
        t = &e * &t;
        t_inv = &t_inv * &e_inv;
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut p = Mat::zeros(dim, dim);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = rat(1);
    }
    let p_inv = p.transpose();
    (&p * &t, &t_inv * &p_inv)
}

/// A matrix `T(D + N₀)T⁻¹` with known semisimple part `T D T⁻¹`.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub a: Mat,
    pub s: Mat,
    pub n: Mat,
    /// Diagonal of `D`.
    pub eigenvalues: Vec<i64>,
}

/// `D` has integer eigenvalues in `[−3, 3]` with deliberate repeats, and `N₀`
/// is a random upper shift inside each run of equal eigenvalues.
pub fn oracle_case<R: Rng>(rng: &mut R, dim: usize) -> OracleCase {
    let distinct = rng.gen_range(1..=dim.min(3));
    let values: Vec<i64> = (0..distinct).map(|_| rng.gen_range(-3..=3)).collect();
    let mut eigenvalues: Vec<i64> = (0..dim).map(|_| *values.choose(rng).expect("nonempty")).collect();
    eigenvalues.sort_unstable();
    let d = Mat::diag(&eigenvalues.iter().map(|&x| rat(x)).collect::<Vec<_>>());
    let mut n0 = Mat::zeros(dim, dim);
    for i in 1..dim {
        if eigenvalues[i] == eigenvalues[i - 1] && rng.gen_bool(0.7) {
            n0[(i - 1, i)] = rat(1);
        }
    }
    let (t, t_inv) = unimodular(rng, dim, 2);
    let a = &(&t * &(&d + &n0)) * &t_inv;
    let s = &(&t * &d) * &t_inv;
    let n = &(&t * &n0) * &t_inv;
    OracleCase { a, s, n, eigenvalues }
}

pub fn oracle_corpus(seed: u64, count: usize, max_dim: usize) -> Vec<OracleCase> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let dim = rng.gen_range(1..=max_dim);
            oracle_case(&mut rng, dim)
        })
        .collect()
}

/// A random partition of `dim`.
pub fn random_partition<R: Rng>(rng: &mut R, dim: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = dim;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A nilpotent matrix with Jordan type `partition`, conjugated by a random
/// unimodular matrix.
pub fn conjugated_nilpotent<R: Rng>(rng: &mut R, partition: &[usize]) -> Mat {
    let dim: usize = partition.iter().sum();
    let blocks: Vec<Mat> = partition.iter().map(|&k| Mat::jordan_block(k)).collect();
    let j = Mat::block_diag(&blocks);
    let (t, t_inv) = unimodular(rng, dim, 1);
    &(&t * &j) * &t_inv
}

/// Monic factors that are distinct and irreducible over ℚ.
pub fn irreducible_factor_pool() -> Vec<Poly> {
    [
        &[0, 1][..],
        &[-1, 1],
        &[1, 1],
        &[-2, 1],
        &[3, 1],
        &[1, 0, 1],
        &[-2, 0, 1],
        &[2, 0, 1],
        &[1, 1, 1],
        &[-3, 0, 1],
        &[1, -1, 1],
    ]
    .iter()
    .map(|c| Poly::from_ints(c))
    .collect()
}

/// Companion matrix of a product of 1 to 3 distinct factors from the pool,
/// together with the factors used.
pub fn squarefree_companion<R: Rng>(rng: &mut R) -> (Mat, Vec<Poly>) {
    let pool = irreducible_factor_pool();
    let k = rng.gen_range(1..=3);
    let factors: Vec<Poly> = pool.choose_multiple(rng, k).cloned().collect();
    let product = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
    (Mat::companion(&product), factors)
}

/// Structured matrices that the random corpus rarely produces: Jordan blocks
/// over irreducible quadratics, mixed kernel and image parts, and
/// non-cyclic semisimple parts.
pub fn structured_corpus() -> Vec<Mat> {
    let quad = Mat::companion(&Poly::from_ints(&[1, 0, 1]));
    let quad2 = Mat::companion(&Poly::from_ints(&[-2, 0, 1]));
    let lift = |c: &Mat, m: usize| {
        let q = c.rows();
        let mut d = Mat::zeros(q * m, q * m);
        for k in 0..m {
            d.set_block(k * q, k * q, c);
            if k + 1 < m {
                d.set_block(k * q, (k + 1) * q, &Mat::identity(q));
            }
        }
        d
    };
    let scalar_block = |v: i64, k: usize| {
        let mut j = Mat::jordan_block(k);
        for i in 0..k {
            j[(i, i)] = rat(v);
        }
        j
    };
    vec![
        lift(&quad, 2),
        lift(&quad, 3),
        Mat::block_diag(&[lift(&quad, 2), quad.clone()]),
        Mat::block_diag(&[lift(&quad2, 2), scalar_block(0, 2)]),
        Mat::block_diag(&[scalar_block(0, 3), scalar_block(0, 1), scalar_block(2, 2), scalar_block(2, 2)]),
        Mat::block_diag(&[scalar_block(1, 2), Mat::scalar(2, &rat(1))]),
        Mat::companion(&Poly::from_ints(&[1, 0, 1]).pow(2)),
        Mat::companion(&Poly::from_ints(&[0, -1, 1]).pow(3)),
        Mat::scalar(3, &Rational::new(-1, 2)),
        Mat::from_i64(3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]),
    ]
}

/// The fixed inputs with hand-derived outputs.
pub fn worked_fixtures() -> Vec<(&'static str, Mat)> {
    vec![
        ("jordan2", Mat::from_i64(2, 2, &[1, 1, 0, 1])),
        ("rotation", Mat::from_i64(2, 2, &[0, -1, 1, 0])),
        ("scalar2", Mat::scalar(2, &rat(2))),
        ("zero2", Mat::zeros(2, 2)),
        ("one_by_one", Mat::from_i64(1, 1, &[5])),
        ("diag12", Mat::from_i64(2, 2, &[1, 0, 0, 2])),
        ("shift3_plus_zero", Mat::block_diag(&[Mat::jordan_block(3), Mat::zeros(1, 1)])),
        ("unipotent3", Mat::from_i64(3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1])),
    ]
}
