//! Jordan–Chevalley decomposition `A = S + N` computed from the square-free
//! part `p` of `χ_A` alone.
//!
//! `S` is sought as `A + Σ_{j=1}^{M−1} r_j(A)·p(A)^j` with `deg r_j < deg p`.
//! Expanding `p(S)` in Taylor form around `A` shows that `p(S) = 0` whenever
//!
//! ```text
//! r_i·p′ + e_i = b_i·p − b_{i−1},   b_0 = 1,  e_1 = 0,
//! e_i = Σ_{j=2}^{i} c_{i,j}·p^{(j)},  c_{k,j} = [z^k] (r_1 z + r_2 z² + …)^j
//! ```
//!
//! for `1 ≤ i ≤ M−1`, because the left sides then telescope to `−p` modulo
//! `p^M`. With `g·p − h·p′ = 1` the unknowns are produced one index at a time:
//!
//! ```text
//! r_1 = h, b_1 = g,
//! σ_n = g^{n−1} + Σ_{i=1}^{n} g^{n−i}·e_i
//! d_n = q_{n−1} + h·σ_n,   d_n = q_n·p + r_n,   b_n = −p′·q_n + g·σ_n.
//! ```
//!
//! The `g^{n−1}` term carries the `b_0 = 1` contribution through the
//! recursion; without it the identity above fails at `n = 2` whenever `g ≠ 0`.


use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::semisimple::SquarefreeData;

/// Every polynomial sequence produced by the recursion.
///
/// Sequences are indexed by their mathematical subscript: `r[i]` is `r_i`,
/// `b[i]` is `b_i`, and so on. Slot 0 of `r`, `e` and `d` is zero padding
/// since those sequences start at index 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JcState {
    pub p: Poly,
    /// `p^{(0)}, …, p^{(M−1)}` (scaled derivatives).
    pub p_derivs: Vec<Poly>,
    pub g: Poly,
    pub h: Poly,
    pub r: Vec<Poly>,
    pub b: Vec<Poly>,
    pub q: Vec<Poly>,
    pub e: Vec<Poly>,
    pub d: Vec<Poly>,
}

impl JcState {
    fn new(p: &Poly, big_m: usize) -> Result<JcState> {
        let (g, h) = bezout_pair(p)?;
        let p_derivs = p.scaled_derivatives(big_m.max(2) - 1);
        Ok(JcState {
            p: p.clone(),
            p_derivs,
            r: vec![Poly::zero(), h.clone()],
            b: vec![Poly::one(), g.clone()],
            q: vec![Poly::zero(), Poly::zero()],
            e: vec![Poly::zero(), Poly::zero()],
            d: vec![Poly::zero(), Poly::zero()],
            g,
            h,
        })
    }

    /// Highest index computed so far.
    pub fn last_index(&self) -> usize {
        self.r.len() - 1
    }

    fn p_deriv(&self, j: usize) -> Poly {
        self.p_derivs.get(j).cloned().unwrap_or_else(Poly::zero)
    }

    /// Runs one step of the recursion, producing index `n = last_index() + 1`.
    fn step(&mut self) -> Result<()> {
        let n = self.r.len();
        let e_n = correction_term(self, n)?;
        self.e.push(e_n);

        let mut sigma = Poly::zero();
        let mut g_pow = Poly::one();
        for i in (1..=n).rev() {
            sigma = &sigma + &(&g_pow * &self.e[i]);
            g_pow = &g_pow * &self.g;
        }
        // g_pow is now g^n; the b_0 term needs g^{n−1}.
        sigma = &sigma + &self.g.pow(n as u32 - 1);

        let d_n = &self.q[n - 1] + &(&self.h * &sigma);
        let (q_n, r_n) = d_n.div_rem(&self.p)?;
        let b_n = &(&self.g * &sigma) - &(&self.p_deriv(1) * &q_n);
        self.d.push(d_n);
        self.q.push(q_n);
        self.r.push(r_n);
        self.b.push(b_n);
        Ok(())
    }

    /// Checks `r_i·p′ + e_i = b_i·p − b_{i−1}` for every computed `i`,
    /// returning the first index that fails.
    pub fn first_recurrence_failure(&self) -> Option<usize> {
        let dp = self.p_deriv(1);
        (1..=self.last_index()).find(|&i| {
            &(&self.r[i] * &dp) + &self.e[i] != &(&self.b[i] * &self.p) - &self.b[i - 1]
        })
    }

    /// Checks `Σ_{i=1}^{M−1} (b_i·p − b_{i−1})·p^i ≡ −p (mod p^M)`.
    pub fn telescopes(&self, big_m: usize) -> bool {
        let mut total = self.p.clone();
        let mut p_pow = self.p.clone();
        for i in 1..big_m.min(self.last_index() + 1) {
            let term = &(&self.b[i] * &self.p) - &self.b[i - 1];
            total = &total + &(&term * &p_pow);
            p_pow = &p_pow * &self.p;
        }
        total
            .rem(&self.p.pow(big_m as u32))
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    /// Checks `g·p − h·p′ = 1` and `deg h < deg p`.
    pub fn bezout_holds(&self) -> bool {
        (&(&self.g * &self.p) - &(&self.h * &self.p_deriv(1))).is_one() && self.h.degree() < self.p.degree()
    }

    /// `deg r_i < deg p` for every computed index.
    pub fn remainders_reduced(&self) -> bool {
        self.r.iter().all(|r| r.degree() < self.p.degree())
    }
}

/// `(g, h)` with `g·p − h·p′ = 1` and `deg h < deg p`.
pub fn bezout_pair(p: &Poly) -> Result<(Poly, Poly)> {
    if !p.is_monic() || p.is_constant() {
        return Err(Error::NotMonicNonConstant);
    }
    let ext = p.ext_gcd(&p.derivative())?;
    if !ext.g.is_one() {
        return Err(Error::NotSquareFree);
    }
    Ok((ext.u, -ext.v))
}

/// `e_n = Σ_{j=2}^{n} c_{n,j}·p^{(j)}`, where `c_{n,j}` is the `z^n`
/// coefficient of `T(z)^j` and `T(z) = Σ_{m=1}^{n−1} r_m z^m`.
///
/// The series is truncated at `z^n`: terms `r_m` with `m ≥ n` cannot reach
/// `z^n` once `j ≥ 2`.
pub fn correction_term(state: &JcState, n: usize) -> Result<Poly> {
    if n < 2 || state.r.len() < n {
        return Err(Error::InvalidIndex(n));
    }
    let mut series = vec![Poly::zero(); n + 1];
    for (m, slot) in series.iter_mut().enumerate().take(n).skip(1) {
        *slot = state.r[m].clone();
    }
    let mut e_n = Poly::zero();
    let mut power = series.clone();
    for j in 2..=n {
        power = truncated_product(&power, &series, n);
        let dj = state.p_deriv(j);
        if !dj.is_zero() {
            e_n = &e_n + &(&power[n] * &dj);
        }
    }
    Ok(e_n)
}

fn truncated_product(a: &[Poly], b: &[Poly], max_deg: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); max_deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(max_deg + 1 - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// The decomposition together with every intermediate quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JcDecomposition {
    pub s: Mat,
    pub n: Mat,
    /// `λ + Σ r_j·p^j` reduced modulo `χ_A`; `S = s_polynomial(A)`.
    pub s_polynomial: Poly,
    pub state: JcState,
    pub squarefree: SquarefreeData,
}

/// Computes `S` and `N = A − S`, then re-verifies `S + N = A`, `SN = NS` and
/// `p(S) = 0` before returning.
pub fn jordan_chevalley(a: &Mat) -> Result<JcDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let chi = a.char_poly()?;
    let squarefree = SquarefreeData::of(&chi)?;
    let big_m = squarefree.big_m;
    let p = &squarefree.p;
    let mut state = JcState::new(p, big_m)?;

    let (s, s_poly_full) = if big_m == 1 || chi.degree() == Some(1) {
        (a.clone(), Poly::lambda())
    } else {
        while state.last_index() < big_m - 1 {
            state.step()?;
        }
        let p_of_a = a.eval_poly(p)?;
        // Horner in p(A): Σ_{j≥1} r_j(A) P^j = P·(r_1(A) + P·(r_2(A) + …)).
        let mut acc = Mat::zeros(a.rows(), a.cols());
        for j in (1..big_m).rev() {
            acc = &a.eval_poly(&state.r[j])? + &(&p_of_a * &acc);
        }
        let s = a + &(&p_of_a * &acc);

        let mut s_poly = Poly::lambda();
        let mut p_pow = Poly::one();
        for j in 1..big_m {
            p_pow = &p_pow * p;
            s_poly = &s_poly + &(&state.r[j] * &p_pow);
        }
        (s, s_poly)
    };
    let s_polynomial = s_poly_full.rem(&chi)?;
    let n = a - &s;

    let dec = JcDecomposition {
        s,
        n,
        s_polynomial,
        state,
        squarefree,
    };
    let report = verify_decomposition(a, &dec);
    if !(report.sum_ok && report.commute_ok && report.annihilated) {
        return Err(Error::Verification(format!("Jordan-Chevalley identities: {report:?}")));
    }
    Ok(dec)
}

/// Exact checks on a decomposition. Fields are independent booleans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JcReport {
    /// `S + N = A`
    pub sum_ok: bool,
    /// `SN = NS`
    pub commute_ok: bool,
    /// `p(S) = 0`
    pub annihilated: bool,
    /// `N^dim = 0`
    pub nilpotent: bool,
    /// `S = s_polynomial(A)`
    pub polynomial_in_a: bool,
}

impl JcReport {
    pub fn all_passed(&self) -> bool {
        self.sum_ok && self.commute_ok && self.annihilated && self.nilpotent && self.polynomial_in_a
    }
}

pub fn verify_decomposition(a: &Mat, dec: &JcDecomposition) -> JcReport {
    let shapes_ok = a.is_square()
        && [&dec.s, &dec.n]
            .iter()
            .all(|m| m.rows() == a.rows() && m.cols() == a.cols());
    if !shapes_ok {
        return JcReport {
            sum_ok: false,
            commute_ok: false,
            annihilated: false,
            nilpotent: false,
            polynomial_in_a: false,
        };
    }
    let dim = a.rows() as u32;
    JcReport {
        sum_ok: &(&dec.s + &dec.n) == a,
        commute_ok: &dec.s * &dec.n == &dec.n * &dec.s,
        annihilated: dec
            .s
            .eval_poly(&dec.squarefree.p)
            .map(|m| m.is_zero())
            .unwrap_or(false),
        nilpotent: dec.n.pow(dim).is_zero(),
        polynomial_in_a: a
            .eval_poly(&dec.s_polynomial)
            .map(|m| m == dec.s)
            .unwrap_or(false),
    }
}
