//! Exact solvers for the imprimitive families.
//!
//! All of them rest on one reduction. If `A ⊕ B` is the ambient space and
//! `C, D` are graphs of isomorphisms `φ_C, φ_D : A → B`, a subspace spanned
//! by `v ∈ A` and `v φ_C` meets `D` exactly when `v` is an eigenvector of
//! `ψ = φ_C φ_D^{-1}`. So the solutions are read off the eigenvectors of `ψ`,
//! and the factor degrees of its characteristic polynomial describe how
//! Frobenius permutes them. Vectors are rows and maps act on the right.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Gr48Error;
use crate::fieldlinalg::{factor_degrees, random_subspace, roots, FactorDegrees, Fe, Fq, Matrix, Poly, Subspace};

fn gp(msg: impl Into<String>) -> Gr48Error {
    Gr48Error::GeneralPosition(msg.into())
}

fn expect_dim(s: &Subspace, d: usize, what: &str) -> Result<(), Gr48Error> {
    if s.dim() != d {
        return Err(gp(format!("{what} has dimension {}, expected {d}", s.dim())));
    }
    Ok(())
}

/// The map `φ` with `graph = {(v, v φ) : v ∈ a}` in the splitting
/// `a ⊕ b`; fails unless the graph meets both `a` and `b` trivially.
fn graph_map(f: &Fq, a: &Subspace, b: &Subspace, graph: &Subspace) -> Result<Matrix, Gr48Error> {
    let d = a.dim();
    let mut rows = a.basis().to_vec();
    rows.extend(b.basis().iter().cloned());
    let ab = Matrix::from_rows(&rows, a.ambient());
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for g in graph.basis() {
        let c = ab
            .solve_left(f, g)
            .ok_or_else(|| gp("graph leaves the splitting space"))?;
        alpha.push(c[..d].to_vec());
        beta.push(c[d..].to_vec());
    }
    let alpha = Matrix::from_rows(&alpha, d);
    let beta = Matrix::from_rows(&beta, b.dim());
    let inv = alpha.inverse(f).ok_or_else(|| gp("graph meets the second summand"))?;
    if beta.rank(f) < b.dim() {
        return Err(gp("graph meets the first summand"));
    }
    Ok(inv.mul(f, &beta))
}

/// Left eigenvector `v ψ = λ v` for a simple eigenvalue.
fn eigenrow(f: &Fq, psi: &Matrix, lambda: &Fe) -> Result<Vec<Fe>, Gr48Error> {
    let n = psi.rows();
    let shifted = psi.sub(f, &Matrix::identity(f, n).scale(f, lambda));
    let ker = shifted.transpose().kernel(f);
    if ker.len() != 1 {
        return Err(gp(format!("eigenspace of dimension {}", ker.len())));
    }
    Ok(ker.into_iter().next().unwrap())
}

/// `⟨v · a, (v φ) · b⟩` for coordinates `v` on the basis of `a`.
fn paired_plane(f: &Fq, a: &Subspace, b: &Subspace, phi: &Matrix, v: &[Fe]) -> Subspace {
    let x = a.as_matrix().apply_row(f, v);
    let y = b.as_matrix().apply_row(f, &phi.apply_row(f, v));
    Subspace::span_of(f, a.ambient(), &[x, y])
}

/// The eigen-reduction shared by all solvers: `ψ`, the planes attached to
/// the eigenvalues found in `f`, and the eliminant `char_poly(ψ)`.
struct EigenSplit {
    phi_c: Matrix,
    psi: Matrix,
    eliminant: Poly,
    degrees: FactorDegrees,
}

fn eigen_split(f: &Fq, a: &Subspace, b: &Subspace, c: &Subspace, d: &Subspace) -> Result<EigenSplit, Gr48Error> {
    if a.meet_dim(f, b) != 0 {
        return Err(gp("the two base spaces meet"));
    }
    let phi_c = graph_map(f, a, b, c)?;
    let phi_d = graph_map(f, a, b, d)?;
    let psi = phi_c.mul(f, &phi_d.inverse(f).expect("graph maps are invertible"));
    let eliminant = psi.char_poly(f);
    let degrees = factor_degrees(f, &eliminant)?;
    if !degrees.squarefree {
        return Err(Gr48Error::NotSquarefree);
    }
    Ok(EigenSplit {
        phi_c,
        psi,
        eliminant,
        degrees,
    })
}

/// Solutions of `σ_1^4 = 2` in `Gr(2, W)` for four 2-planes spanning `W`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gr24Solution {
    /// Degree 2; its factor degrees over the base field give Frobenius on
    /// the two solutions.
    pub eliminant: Poly,
    pub degrees: FactorDegrees,
    /// Solutions rational over the field used, ordered by eigenvalue.
    pub solutions: Vec<Subspace>,
}

/// Requires `ℓ_1 ⊕ ℓ_2 = W` and `ℓ_3, ℓ_4` graphs over it.
pub fn solve_gr24_four_lines(f: &Fq, lines: [&Subspace; 4]) -> Result<Gr24Solution, Gr48Error> {
    for (i, l) in lines.iter().enumerate() {
        expect_dim(l, 2, &format!("line {}", i + 1))?;
    }
    let split = eigen_split(f, lines[0], lines[1], lines[2], lines[3])?;
    let mut solutions = Vec::new();
    for lambda in roots(f, &split.eliminant) {
        let v = eigenrow(f, &split.psi, &lambda)?;
        let h = paired_plane(f, lines[0], lines[1], &split.phi_c, &v);
        for l in lines {
            if h.meet_dim(f, l) == 0 {
                return Err(Gr48Error::Verification("a solution misses a line".into()));
            }
        }
        solutions.push(h);
    }
    Ok(Gr24Solution {
        eliminant: split.eliminant,
        degrees: split.degrees,
        solutions,
    })
}

/// The six solutions of `σ_{2,2}^4` built from the four lines `h_a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerksenSolution {
    /// `char_poly(ψ)` over `F_p`.
    pub eliminant: Poly,
    pub degrees: FactorDegrees,
    /// The splitting field of the eliminant, where everything below lives.
    pub field: Fq,
    pub lines: Vec<Subspace>,
    /// `H_{ab} = h_a ⊕ h_b` in the order of [`DerksenSolution::PAIRS`].
    pub solutions: Vec<Subspace>,
}

impl DerksenSolution {
    pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    /// `{H_12, H_34}, {H_13, H_24}, {H_14, H_23}` as indices into `solutions`.
    pub const BLOCKS: [[usize; 2]; 3] = [[0, 5], [1, 4], [2, 3]];
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Solves `σ_{2,2}^4 = 6` for four 4-planes in `F_p^8`.
///
/// The auxiliary problem `σ_3^4` in `Gr(2, 8)` has the four solutions
/// `h_a = ⟨v_a, v_a φ_3⟩` over the eigenvectors `v_a` of `ψ`; they are built
/// in the splitting field of `char_poly(ψ)`, drawn from `rng`.
pub fn solve_derksen<R: Rng + ?Sized>(
    base: &Fq,
    ks: &[Subspace; 4],
    rng: &mut R,
) -> Result<DerksenSolution, Gr48Error> {
    for (i, k) in ks.iter().enumerate() {
        expect_dim(k, 4, &format!("K{}", i + 1))?;
        for k2 in &ks[i + 1..] {
            if k.meet_dim(base, k2) != 0 {
                return Err(gp("two of the K_i meet"));
            }
        }
    }
    let split = eigen_split(base, &ks[0], &ks[1], &ks[2], &ks[3])?;
    let l = split.degrees.degrees.iter().fold(1, |acc, &d| lcm(acc, d));
    let field = Fq::extension(base.p(), l, rng)?;
    let big: Vec<Subspace> = ks.iter().map(|k| k.lift_prime(&field)).collect();
    let phi3 = graph_map(&field, &big[0], &big[1], &big[2])?;
    let psi = split.psi.lift_prime(&field);
    let eliminant_big = split.eliminant.coeffs().iter().map(|c| field.lift_prime(c)).collect();
    let lambdas = roots(&field, &Poly::new(eliminant_big));
    if lambdas.len() != 4 {
        return Err(Gr48Error::Verification(format!(
            "{} eigenvalues in the splitting field",
            lambdas.len()
        )));
    }
    let mut lines = Vec::new();
    for lambda in &lambdas {
        let v = eigenrow(&field, &psi, lambda)?;
        lines.push(paired_plane(&field, &big[0], &big[1], &phi3, &v));
    }
    let mut solutions = Vec::new();
    for (a, b) in DerksenSolution::PAIRS {
        let h = lines[a].span(&field, &lines[b])?;
        if h.dim() != 4 {
            return Err(gp("two auxiliary lines meet"));
        }
        for k in &big {
            if h.meet_dim(&field, k) != 2 {
                return Err(Gr48Error::Verification(format!(
                    "H_{}{} does not meet a K_i in a 2-plane",
                    a + 1,
                    b + 1
                )));
            }
        }
        solutions.push(h);
    }
    Ok(DerksenSolution {
        eliminant: split.eliminant,
        degrees: split.degrees,
        field,
        lines,
        solutions,
    })
}

/// Four solutions `H_{i,j}` in two blocks `{H_{1,*}}, {H_{2,*}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D4Solution {
    /// The two solutions `h_1, h_2` of the outer `Gr(2, 4)` problem.
    pub outer: Vec<Subspace>,
    /// `H_{1,1}, H_{1,2}, H_{2,1}, H_{2,2}`.
    pub solutions: Vec<Subspace>,
    /// Factor degrees of the outer eliminant over `F_p`.
    pub outer_degrees: FactorDegrees,
}

impl D4Solution {
    pub const BLOCKS: [[usize; 2]; 2] = [[0, 1], [2, 3]];
}

/// An instance of `σ_{2,2}^2 σ_{1,1,1} σ_3 σ_1^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAData {
    /// 2-plane
    pub ell: Subspace,
    /// 4-planes for the `(2,2)` conditions
    pub k: [Subspace; 2],
    /// 6-plane
    pub lambda: Subspace,
    /// 4-planes for the `(1)` conditions
    pub l: [Subspace; 2],
}

impl FamilyAData {
    pub fn random<R: Rng + ?Sized>(f: &Fq, rng: &mut R) -> Self {
        FamilyAData {
            ell: random_subspace(f, 2, 8, rng),
            k: [random_subspace(f, 4, 8, rng), random_subspace(f, 4, 8, rng)],
            lambda: random_subspace(f, 6, 8, rng),
            l: [random_subspace(f, 4, 8, rng), random_subspace(f, 4, 8, rng)],
        }
    }

    pub fn lift_prime(&self, big: &Fq) -> Self {
        FamilyAData {
            ell: self.ell.lift_prime(big),
            k: [self.k[0].lift_prime(big), self.k[1].lift_prime(big)],
            lambda: self.lambda.lift_prime(big),
            l: [self.l[0].lift_prime(big), self.l[1].lift_prime(big)],
        }
    }

    /// The conditions `dim H ∩ K_i >= 2`, `dim H ∩ Λ >= 3`, `dim H ∩ ℓ >= 1`,
    /// `dim H ∩ L_i >= 1`.
    pub fn satisfied_by(&self, f: &Fq, h: &Subspace) -> bool {
        h.dim() == 4
            && self.k.iter().all(|k| h.meet_dim(f, k) >= 2)
            && h.meet_dim(f, &self.lambda) >= 3
            && h.meet_dim(f, &self.ell) >= 1
            && self.l.iter().all(|l| h.meet_dim(f, l) >= 1)
    }
}

/// Solves family A over `f`, which must contain the splitting fields of
/// both stages (`F_{p^4}` always does).
pub fn solve_d4_family_a(f: &Fq, d: &FamilyAData) -> Result<D4Solution, Gr48Error> {
    let m = d.k[0].span(f, &d.ell)?.intersect(f, &d.k[1].span(f, &d.ell)?)?;
    expect_dim(&m, 4, "M")?;
    let mk1 = m.intersect(f, &d.k[0])?;
    let mk2 = m.intersect(f, &d.k[1])?;
    let ml = m.intersect(f, &d.lambda)?;
    for (s, what) in [(&mk1, "M ∩ K1"), (&mk2, "M ∩ K2"), (&ml, "M ∩ Λ")] {
        expect_dim(s, 2, what)?;
    }
    let first = solve_gr24_four_lines(f, [&d.ell, &mk1, &mk2, &ml])?;
    if first.solutions.len() != 2 {
        return Err(Gr48Error::Verification("outer problem does not split".into()));
    }
    let lk1 = d.lambda.intersect(f, &d.k[0])?;
    let lk2 = d.lambda.intersect(f, &d.k[1])?;
    let m2 = lk1.span(f, &lk2)?;
    expect_dim(&m2, 4, "M'")?;
    if m.span(f, &m2)?.dim() != 8 {
        return Err(gp("M + M' is not everything"));
    }
    let mut solutions = Vec::new();
    for h in &first.solutions {
        let a1 = m2.intersect(f, &h.span(f, &d.l[0])?)?;
        let a2 = m2.intersect(f, &h.span(f, &d.l[1])?)?;
        expect_dim(&a1, 2, "M' ∩ ⟨h, L1⟩")?;
        expect_dim(&a2, 2, "M' ∩ ⟨h, L2⟩")?;
        let second = solve_gr24_four_lines(f, [&lk1, &lk2, &a1, &a2])?;
        if second.solutions.len() != 2 {
            return Err(Gr48Error::Verification("inner problem does not split".into()));
        }
        for mm in &second.solutions {
            let big = h.span(f, mm)?;
            if !d.satisfied_by(f, &big) {
                return Err(Gr48Error::Verification(format!("solution fails a condition: {big:?}")));
            }
            solutions.push(big);
        }
    }
    check_distinct(&solutions)?;
    Ok(D4Solution {
        outer: first.solutions,
        solutions,
        outer_degrees: first.degrees,
    })
}

/// An instance of `σ_{1,1,1}^2 σ_3^2 σ_1^4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBData {
    /// 6-planes
    pub big: [Subspace; 2],
    /// 2-planes
    pub ell: [Subspace; 2],
    /// 4-planes
    pub k: [Subspace; 4],
}

impl FamilyBData {
    pub fn random<R: Rng + ?Sized>(f: &Fq, rng: &mut R) -> Self {
        FamilyBData {
            big: [random_subspace(f, 6, 8, rng), random_subspace(f, 6, 8, rng)],
            ell: [random_subspace(f, 2, 8, rng), random_subspace(f, 2, 8, rng)],
            k: std::array::from_fn(|_| random_subspace(f, 4, 8, rng)),
        }
    }

    pub fn lift_prime(&self, big: &Fq) -> Self {
        FamilyBData {
            big: [self.big[0].lift_prime(big), self.big[1].lift_prime(big)],
            ell: [self.ell[0].lift_prime(big), self.ell[1].lift_prime(big)],
            k: std::array::from_fn(|i| self.k[i].lift_prime(big)),
        }
    }

    /// `dim H ∩ L_i >= 3`, `dim H ∩ ℓ_i >= 1`, `dim H ∩ K_j >= 1`.
    pub fn satisfied_by(&self, f: &Fq, h: &Subspace) -> bool {
        h.dim() == 4
            && self.big.iter().all(|l| h.meet_dim(f, l) >= 3)
            && self.ell.iter().all(|l| h.meet_dim(f, l) >= 1)
            && self.k.iter().all(|k| h.meet_dim(f, k) >= 1)
    }
}

/// Solves family B over `f` (see [`solve_d4_family_a`] for the field).
pub fn solve_d4_family_b(f: &Fq, d: &FamilyBData) -> Result<D4Solution, Gr48Error> {
    let lambda = d.ell[0].span(f, &d.ell[1])?;
    expect_dim(&lambda, 4, "Λ")?;
    let l3 = lambda.intersect(f, &d.big[0])?;
    let l4 = lambda.intersect(f, &d.big[1])?;
    expect_dim(&l3, 2, "Λ ∩ L1")?;
    expect_dim(&l4, 2, "Λ ∩ L2")?;
    let first = solve_gr24_four_lines(f, [&d.ell[0], &d.ell[1], &l3, &l4])?;
    if first.solutions.len() != 2 {
        return Err(Gr48Error::Verification("outer problem does not split".into()));
    }
    let lambda2 = d.big[0].intersect(f, &d.big[1])?;
    expect_dim(&lambda2, 4, "Λ'")?;
    if lambda.meet_dim(f, &lambda2) != 0 {
        return Err(gp("Λ meets Λ'"));
    }
    let mut solutions = Vec::new();
    for h in &first.solutions {
        let mut mus = Vec::new();
        for k in &d.k {
            let mu = h.span(f, k)?.intersect(f, &lambda2)?;
            expect_dim(&mu, 2, "μ_j")?;
            mus.push(mu);
        }
        let second = solve_gr24_four_lines(f, [&mus[0], &mus[1], &mus[2], &mus[3]])?;
        if second.solutions.len() != 2 {
            return Err(Gr48Error::Verification("inner problem does not split".into()));
        }
        for mm in &second.solutions {
            let big = h.span(f, mm)?;
            if !d.satisfied_by(f, &big) {
                return Err(Gr48Error::Verification(format!("solution fails a condition: {big:?}")));
            }
            solutions.push(big);
        }
    }
    check_distinct(&solutions)?;
    Ok(D4Solution {
        outer: first.solutions,
        solutions,
        outer_degrees: first.degrees,
    })
}

fn check_distinct(solutions: &[Subspace]) -> Result<(), Gr48Error> {
    for (i, a) in solutions.iter().enumerate() {
        if solutions[i + 1..].contains(a) {
            return Err(gp("two solutions coincide"));
        }
    }
    Ok(())
}
