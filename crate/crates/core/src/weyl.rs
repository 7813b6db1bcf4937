//! Root systems from Cartan matrices, Weyl groups, and the Weyl character,
//! denominator, dimension and integration formulas.
//!
//! Roots are integer vectors in the simple-root basis, weights integer vectors
//! in the fundamental-weight basis (`c_i = ⟨λ, α_i^∨⟩`). A torus point `H` is
//! given by angles `h` in the simple-coroot basis, so `λ(H) = Σ h_i c_i`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default largest Weyl group that will be enumerated (the order of `W(F4)`).
pub const DEFAULT_WEYL_CAP: usize = 1152;
/// Distance (in units of `2π`) below which `α(H)` counts as lying on a wall.
pub const SINGULAR_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: String,
    pub rank: usize,
    /// `a_ij = ⟨α_i^∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `B(α_i, α_j)`, long roots of squared length 2.
    pub gram: Vec<Vec<Rational64>>,
    /// Positive roots in the simple-root basis, ordered by height then lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// `d_i = B(α_i, α_i)/2`.
    symmetrizer: Vec<Rational64>,
    /// Inverse Cartan matrix, root coordinates of fundamental weights as columns.
    cartan_inverse: Vec<Vec<Rational64>>,
}

fn cartan_matrix(cartan_type: &str) -> Result<Vec<Vec<i64>>> {
    let unsupported = || Error::UnsupportedType(cartan_type.to_string());
    let mut chars = cartan_type.chars();
    let family = chars.next().ok_or_else(unsupported)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unsupported())?;
    let chain = |n: usize| {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    Ok(match (family, n) {
        ('A', 1..=4) => chain(n),
        ('B', 2..=4) => {
            let mut a = chain(n);
            a[n - 1][n - 2] = -2;
            a
        }
        ('C', 2..=4) => {
            let mut a = chain(n);
            a[n - 2][n - 1] = -2;
            a
        }
        ('D', 4) => vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]],
        ('G', 2) => vec![vec![2, -3], vec![-1, 2]],
        ('F', 4) => {
            let mut a = chain(4);
            a[2][1] = -2;
            a
        }
        _ => return Err(unsupported()),
    })
}

/// `d_i` with `d_i a_ij = d_j a_ji`, scaled so that the largest is 1.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<Rational64> {
    let n = a.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    d[0] = Some(Rational64::one());
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if a[i][j] != 0 && d[j].is_none() {
                d[j] = Some(d[i].unwrap() * Rational64::new(a[i][j], a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational64> = d.into_iter().map(|x| x.unwrap_or_else(Rational64::one)).collect();
    let max = d.iter().copied().max().unwrap_or_else(Rational64::one);
    d.into_iter().map(|x| x / max).collect()
}

fn rational_inverse(a: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&v| Rational64::from_integer(v)).collect();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrices are invertible");
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..2 * n {
                    let t = f * m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Builds the root system of a type such as `"A2"`, `"B3"`, `"G2"`, `"F4"`.
pub fn build_root_system(cartan_type: &str) -> Result<RootSystem> {
    let cartan = cartan_matrix(cartan_type)?;
    let rank = cartan.len();
    let d = symmetrizer(&cartan);
    let gram = (0..rank).map(|i| (0..rank).map(|j| d[i] * Rational64::from_integer(cartan[i][j])).collect()).collect();
    let simple: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..rank {
            let image = reflect_root(&cartan, i, &beta);
            if image.iter().all(|&c| c >= 0) && seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().collect();
    positive_roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
    let cartan_inverse = rational_inverse(&cartan);
    Ok(RootSystem {
        cartan_type: cartan_type.to_ascii_uppercase(),
        rank,
        cartan,
        gram,
        positive_roots,
        symmetrizer: d,
        cartan_inverse,
    })
}

/// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` on simple-root coordinates.
fn reflect_root(a: &[Vec<i64>], i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = (0..beta.len()).map(|j| a[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// A dominant or arbitrary integral weight in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coords: vec![0; rank] }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    fn plus(&self, other: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }
}

impl RootSystem {
    /// `Φ = Φ⁺ ⊔ −Φ⁺`.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        all
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    /// `B(v, u)` for vectors in the simple-root basis.
    pub fn bilinear(&self, v: &[Rational64], u: &[Rational64]) -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += v[i] * self.gram[i][j] * u[j];
            }
        }
        s
    }

    /// Fundamental-weight coordinates `A v` of a root-basis vector.
    pub fn to_weight_coords(&self, v: &[Rational64]) -> Vec<Rational64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| Rational64::from_integer(self.cartan[i][j]) * v[j]).sum())
            .collect()
    }

    /// Simple-root coordinates `A⁻¹ c` of a weight.
    pub fn to_root_coords(&self, weight: &Weight) -> Vec<Rational64> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank).map(|j| self.cartan_inverse[i][j] * Rational64::from_integer(weight.coords[j])).sum()
            })
            .collect()
    }

    /// `B(λ, α) = Σ_j c_j v_j d_j` for a weight and a root-basis vector.
    fn pair_weight_root(&self, weight: &[Rational64], root: &[i64]) -> Rational64 {
        (0..self.rank).map(|j| weight[j] * Rational64::from_integer(root[j]) * self.symmetrizer[j]).sum()
    }

    /// `α(H)` for a root-basis vector: `Σ_i h_i (A v)_i`.
    fn root_angle(&self, root: &[i64], h: &[f64]) -> f64 {
        (0..self.rank).map(|i| h[i] * (0..self.rank).map(|j| (self.cartan[i][j] * root[j]) as f64).sum::<f64>()).sum()
    }

    fn rho(&self) -> Weight {
        Weight { coords: vec![1; self.rank] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroupElement {
    /// A reduced word in the simple reflections.
    pub word: Vec<usize>,
    /// Action on simple-root coordinates.
    pub matrix: Vec<Vec<i64>>,
    /// Action on fundamental-weight coordinates.
    pub weight_matrix: Vec<Vec<i64>>,
    pub length: usize,
    pub det: i64,
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

impl WeylGroupElement {
    pub fn apply_root(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, v)
    }

    pub fn apply_weight(&self, w: &Weight) -> Weight {
        Weight { coords: mat_vec(&self.weight_matrix, &w.coords) }
    }

    /// Coroot coordinates of `wH`, using `μ(wH) = (w⁻¹μ)(H)`.
    pub fn apply_torus(&self, r: &RootSystem, h: &[f64]) -> Vec<f64> {
        let inv = inverse_weight_matrix(r, &self.word);
        (0..r.rank).map(|k| (0..r.rank).map(|i| inv[i][k] as f64 * h[i]).sum()).collect()
    }
}

fn simple_root_matrix(a: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut m = identity(n);
    for j in 0..n {
        m[i][j] -= a[i][j];
    }
    m
}

/// `s_i(c) = c − c_i α_i`, where `α_i` is column `i` of the Cartan matrix.
fn simple_weight_matrix(a: &[Vec<i64>], i: usize) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut m = identity(n);
    for k in 0..n {
        m[k][i] -= a[k][i];
    }
    m
}

fn inverse_weight_matrix(r: &RootSystem, word: &[usize]) -> Vec<Vec<i64>> {
    word.iter().rev().fold(identity(r.rank), |m, &i| mat_mul(&m, &simple_weight_matrix(&r.cartan, i)))
}

/// All elements of `W`, by breadth-first growth of words `w s_i`.
pub fn weyl_group(r: &RootSystem, cap: usize) -> Result<Vec<WeylGroupElement>> {
    let n = r.rank;
    let root_gens: Vec<_> = (0..n).map(|i| simple_root_matrix(&r.cartan, i)).collect();
    let weight_gens: Vec<_> = (0..n).map(|i| simple_weight_matrix(&r.cartan, i)).collect();
    let e = WeylGroupElement { word: vec![], matrix: identity(n), weight_matrix: identity(n), length: 0, det: 1 };
    let mut seen: HashMap<Vec<Vec<i64>>, usize> = HashMap::from([(e.matrix.clone(), 0)]);
    let mut elements = vec![e];
    let mut head = 0;
    while head < elements.len() {
        for i in 0..n {
            let w = &elements[head];
            let matrix = mat_mul(&w.matrix, &root_gens[i]);
            if seen.contains_key(&matrix) {
                continue;
            }
            if elements.len() == cap {
                return Err(Error::SizeCap { cap });
            }
            let mut word = w.word.clone();
            word.push(i);
            let length = word.len();
            let next = WeylGroupElement {
                weight_matrix: mat_mul(&w.weight_matrix, &weight_gens[i]),
                matrix: matrix.clone(),
                det: if length % 2 == 0 { 1 } else { -1 },
                length,
                word,
            };
            seen.insert(matrix, elements.len());
            elements.push(next);
        }
        head += 1;
    }
    Ok(elements)
}

/// `ρ` as the half-sum of positive roots and as `ω₁ + ⋯ + ω_ℓ`.
#[derive(Clone, Debug)]
pub struct RhoData {
    /// `½ Σ_{α>0} α` in the simple-root basis.
    pub half_sum_root_coords: Vec<Rational64>,
    /// The half-sum converted to fundamental-weight coordinates.
    pub half_sum: Vec<Rational64>,
    /// `Σ ω_i`, that is `(1, …, 1)`.
    pub fundamental_sum: Weight,
    /// `ω_i` in the simple-root basis (columns of `A⁻¹`).
    pub fundamental_root_coords: Vec<Vec<Rational64>>,
    pub fundamental_weights: Vec<Weight>,
    pub agree: bool,
}

pub fn rho_and_fundamental_weights(r: &RootSystem) -> RhoData {
    let n = r.rank;
    let half = Rational64::new(1, 2);
    let half_sum_root_coords: Vec<Rational64> = (0..n)
        .map(|i| r.positive_roots.iter().map(|a| Rational64::from_integer(a[i])).sum::<Rational64>() * half)
        .collect();
    let half_sum = r.to_weight_coords(&half_sum_root_coords);
    let fundamental_weights: Vec<Weight> =
        (0..n).map(|i| Weight { coords: (0..n).map(|j| i64::from(i == j)).collect() }).collect();
    let fundamental_root_coords = fundamental_weights.iter().map(|w| r.to_root_coords(w)).collect();
    let fundamental_sum = fundamental_weights.iter().fold(Weight::zero(n), |acc, w| acc.plus(w));
    let agree = half_sum.iter().zip(&fundamental_sum.coords).all(|(a, &b)| *a == Rational64::from_integer(b));
    RhoData { half_sum_root_coords, half_sum, fundamental_sum, fundamental_root_coords, fundamental_weights, agree }
}

fn check_weight(r: &RootSystem, lambda: &Weight) -> Result<()> {
    if lambda.coords.len() != r.rank {
        return Err(Error::Input(format!("weight has {} coordinates, rank is {}", lambda.coords.len(), r.rank)));
    }
    Ok(())
}

/// `Π_{α>0} B(λ+ρ, α) / Π_{α>0} B(ρ, α)`.
pub fn weyl_dimension(r: &RootSystem, lambda: &Weight) -> Result<u64> {
    check_weight(r, lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.coords.clone()));
    }
    let shifted: Vec<Rational64> = lambda.plus(&r.rho()).coords.iter().map(|&c| Rational64::from_integer(c)).collect();
    let rho: Vec<Rational64> = vec![Rational64::one(); r.rank];
    let mut d = Rational64::one();
    for alpha in &r.positive_roots {
        d *= r.pair_weight_root(&shifted, alpha) / r.pair_weight_root(&rho, alpha);
    }
    if !d.is_integer() || !d.is_positive() {
        return Err(Error::Computation(format!("dimension product {d} is not a positive integer")));
    }
    Ok(*d.numer() as u64)
}

fn weight_angle(mu: &Weight, h: &[f64]) -> f64 {
    mu.coords.iter().zip(h).map(|(&c, &x)| c as f64 * x).sum()
}

/// Neumaier-compensated complex sum.
fn compensated_sum(terms: impl Iterator<Item = Complex64>) -> Complex64 {
    let (mut s, mut c) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for t in terms {
        let sum = s + t;
        let re = if s.re.abs() >= t.re.abs() { (s.re - sum.re) + t.re } else { (t.re - sum.re) + s.re };
        let im = if s.im.abs() >= t.im.abs() { (s.im - sum.im) + t.im } else { (t.im - sum.im) + s.im };
        c += Complex64::new(re, im);
        s = sum;
    }
    s + c
}

/// `Σ_w det(w) e^{i w(μ)(H)}`.
pub fn alternating_sum(w: &[WeylGroupElement], mu: &Weight, h: &[f64]) -> Complex64 {
    compensated_sum(w.iter().map(|e| Complex64::from_polar(e.det as f64, weight_angle(&e.apply_weight(mu), h))))
}

/// `Π_{α>0} (e^{iα(H)/2} − e^{−iα(H)/2})`.
pub fn weyl_denominator_product(r: &RootSystem, h: &[f64]) -> Complex64 {
    r.positive_roots.iter().map(|a| Complex64::new(0.0, 2.0 * (r.root_angle(a, h) / 2.0).sin())).product()
}

/// `(Π_{α>0} (e^{α/2} − e^{−α/2}), Σ_w det(w) e^{wρ})` at `H`.
pub fn weyl_denominator_check(r: &RootSystem, w: &[WeylGroupElement], h: &[f64]) -> Result<(Complex64, Complex64)> {
    check_point(r, h)?;
    Ok((weyl_denominator_product(r, h), alternating_sum(w, &r.rho(), h)))
}

fn check_point(r: &RootSystem, h: &[f64]) -> Result<()> {
    if h.len() != r.rank {
        return Err(Error::Input(format!("torus point has {} coordinates, rank is {}", h.len(), r.rank)));
    }
    Ok(())
}

/// Number of positive roots with `α(H) ∈ 2πℤ`.
pub fn singular_order(r: &RootSystem, h: &[f64]) -> usize {
    r.positive_roots
        .iter()
        .filter(|a| {
            let t = r.root_angle(a, h) / (2.0 * PI);
            (t - t.round()).abs() < SINGULAR_TOL
        })
        .count()
}

/// `ch_λ(H) = Σ_w det(w) e^{w(λ+ρ)(H)} / Δ(H)`.
///
/// On walls the quotient is replaced by its limit along `H + tX`, where
/// `α_i(X) = 1` for each simple root: the ratio of the `k`-th `t`-derivatives,
/// `k` being the number of vanishing denominator factors.
pub fn weyl_character_value(r: &RootSystem, w: &[WeylGroupElement], lambda: &Weight, h: &[f64]) -> Result<Complex64> {
    check_weight(r, lambda)?;
    check_point(r, h)?;
    let shifted = lambda.plus(&r.rho());
    let k = singular_order(r, h);
    if k == 0 {
        return Ok(alternating_sum(w, &shifted, h) / alternating_sum(w, &r.rho(), h));
    }
    // μ(X) is the sum of the simple-root coordinates of μ
    let height = |mu: &Weight| r.to_root_coords(mu).iter().map(|q| *q.numer() as f64 / *q.denom() as f64).sum::<f64>();
    let derivative = |mu: &Weight| {
        compensated_sum(w.iter().map(|e| {
            let image = e.apply_weight(mu);
            Complex64::from_polar(e.det as f64 * height(&image).powi(k as i32), weight_angle(&image, h))
        }))
    };
    Ok(derivative(&shifted) / derivative(&r.rho()))
}

/// `τ_quad(N) = max(1e-6, 1/N²)`.
pub fn quadrature_tolerance(n: usize) -> f64 {
    (1.0 / (n as f64 * n as f64)).max(1e-6)
}

/// `(1/|W|) · mean over the N^ℓ grid of |Δ|² ch_{λ1} conj(ch_{λ2})`.
///
/// The integrand is evaluated as `N_{λ1} conj(N_{λ2})` (the numerators), which
/// equals `|Δ|² ch_{λ1} conj(ch_{λ2})` and stays finite on the walls.
pub fn weyl_integration_orthogonality(
    r: &RootSystem,
    w: &[WeylGroupElement],
    lambda1: &Weight,
    lambda2: &Weight,
    n: usize,
) -> Result<Complex64> {
    if r.rank > 2 {
        return Err(Error::Input(format!("torus quadrature supports rank ≤ 2, got {}", r.rank)));
    }
    if n < 64 {
        return Err(Error::Input(format!("grid must have at least 64 points per axis, got {n}")));
    }
    check_weight(r, lambda1)?;
    check_weight(r, lambda2)?;
    let s1 = lambda1.plus(&r.rho());
    let s2 = lambda2.plus(&r.rho());
    let points = n.pow(r.rank as u32);
    let step = 2.0 * PI / n as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut h = vec![0.0; r.rank];
    for idx in 0..points {
        let mut rest = idx;
        for x in h.iter_mut() {
            *x = (rest % n) as f64 * step;
            rest /= n;
        }
        total += alternating_sum(w, &s1, &h) * alternating_sum(w, &s2, &h).conj();
    }
    Ok(total / (points as f64 * w.len() as f64))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    const TYPES: [&str; 13] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"];

    fn setup(t: &str) -> (RootSystem, Vec<WeylGroupElement>) {
        let r = build_root_system(t).unwrap();
        let w = weyl_group(&r, DEFAULT_WEYL_CAP).unwrap();
        (r, w)
    }

    fn random_point(rng: &mut ChaCha8Rng, rank: usize) -> Vec<f64> {
        (0..rank).map(|_| rng.random_range(0.0..2.0 * PI)).collect()
    }

    #[test]
    fn sizes() {
        for (t, roots, order) in [
            ("A1", 1, 2),
            ("A2", 3, 6),
            ("A3", 6, 24),
            ("A4", 10, 120),
            ("B2", 4, 8),
            ("B3", 9, 48),
            ("B4", 16, 384),
            ("C3", 9, 48),
            ("D4", 12, 192),
            ("G2", 6, 12),
            ("F4", 24, 1152),
        ] {
            let (r, w) = setup(t);
            assert_eq!((r.positive_roots.len(), w.len()), (roots, order), "{t}");
        }
        assert!(matches!(build_root_system("E6"), Err(Error::UnsupportedType(_))));
        assert!(matches!(build_root_system("A7"), Err(Error::UnsupportedType(_))));
        let f4 = build_root_system("F4").unwrap();
        assert!(matches!(weyl_group(&f4, 100), Err(Error::SizeCap { cap: 100 })));
    }

    #[test]
    fn root_system_invariants() {
        for t in TYPES {
            let (r, w) = setup(t);
            let roots = r.roots();
            assert_eq!(roots.len(), 2 * r.positive_roots.len());
            for a in &roots {
                for k in [2, 3] {
                    let m: Vec<i64> = a.iter().map(|c| c * k).collect();
                    assert!(!r.is_root(&m), "{t}: {k}·{a:?}");
                }
            }
            let long = r.gram.iter().enumerate().map(|(i, row)| row[i]).max().unwrap();
            assert_eq!(long, Rational64::from_integer(2));
            for e in &w {
                assert_eq!(e.det, if e.length % 2 == 0 { 1 } else { -1 });
                let mut negative = 0;
                for a in &r.positive_roots {
                    let image = e.apply_root(a);
                    assert!(r.is_root(&image), "{t}");
                    if image.iter().all(|&c| c <= 0) {
                        negative += 1;
                    }
                }
                assert_eq!(negative, e.length, "{t} {:?}", e.word);
            }
        }
    }

    #[test]
    fn simple_transitivity_on_chambers() {
        for t in TYPES {
            let (r, w) = setup(t);
            let rho = r.rho();
            let chambers: HashSet<Vec<bool>> = w
                .iter()
                .map(|e| {
                    let image: Vec<Rational64> =
                        e.apply_weight(&rho).coords.iter().map(|&c| Rational64::from_integer(c)).collect();
                    r.positive_roots.iter().map(|alpha| r.pair_weight_root(&image, alpha).is_positive()).collect()
                })
                .collect();
            assert_eq!(chambers.len(), w.len(), "{t}");
        }
    }

    #[test]
    fn weights_move_by_roots() {
        for t in ["A2", "B3", "G2", "D4"] {
            let (r, w) = setup(t);
            let lambda = Weight::new((0..r.rank as i64).map(|i| i - 1).collect());
            for e in &w {
                let moved = e.apply_weight(&lambda);
                let diff = Weight::new(lambda.coords.iter().zip(&moved.coords).map(|(a, b)| a - b).collect());
                assert!(r.to_root_coords(&diff).iter().all(Rational64::is_integer), "{t}");
            }
        }
    }

    #[test]
    fn rho_two_ways() {
        for t in TYPES {
            assert!(rho_and_fundamental_weights(&build_root_system(t).unwrap()).agree, "{t}");
        }
        let a2 = rho_and_fundamental_weights(&build_root_system("A2").unwrap());
        assert_eq!(a2.half_sum_root_coords, vec![Rational64::one(), Rational64::one()]);
        let a1 = rho_and_fundamental_weights(&build_root_system("A1").unwrap());
        assert_eq!(a1.fundamental_sum, Weight::new(vec![1]));
        assert_eq!(a1.half_sum_root_coords, vec![Rational64::new(1, 2)]);
    }

    #[test]
    fn dimensions() {
        let a1 = build_root_system("A1").unwrap();
        for n in 0..10 {
            assert_eq!(weyl_dimension(&a1, &Weight::new(vec![n])).unwrap(), n as u64 + 1);
        }
        let a2 = build_root_system("A2").unwrap();
        assert_eq!(weyl_dimension(&a2, &Weight::new(vec![1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&a2, &Weight::new(vec![1, 0])).unwrap(), 3);
        assert_eq!(weyl_dimension(&a2, &Weight::new(vec![3, 0])).unwrap(), 10);
        // adjoint and standard representations
        for (t, lambda, d) in [
            ("G2", vec![1, 0], 7),
            ("G2", vec![0, 1], 14),
            ("B2", vec![1, 0], 5),
            ("B2", vec![0, 1], 4),
            ("F4", vec![0, 0, 0, 1], 26),
            ("D4", vec![0, 1, 0, 0], 28),
            ("A3", vec![1, 0, 1], 15),
        ] {
            assert_eq!(weyl_dimension(&build_root_system(t).unwrap(), &Weight::new(lambda)).unwrap(), d, "{t}");
        }
        for t in TYPES {
            let r = build_root_system(t).unwrap();
            assert_eq!(weyl_dimension(&r, &Weight::zero(r.rank)).unwrap(), 1);
        }
        assert!(matches!(weyl_dimension(&a2, &Weight::new(vec![1, -1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn denominator_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (a1, w1) = setup("A1");
        let theta = 0.7;
        let (l, rr) = weyl_denominator_check(&a1, &w1, &[theta]).unwrap();
        let expected = Complex64::new(0.0, 2.0 * theta.sin());
        assert!((l - expected).norm() < 1e-14 && (rr - expected).norm() < 1e-14);
        let (a2, w2) = setup("A2");
        let mut max: f64 = 0.0;
        for _ in 0..100 {
            let h = random_point(&mut rng, 2);
            let (l, rr) = weyl_denominator_check(&a2, &w2, &h).unwrap();
            max = max.max((l - rr).norm());
        }
        assert!(max < 1e-11, "{max}");
        for t in TYPES {
            let (r, w) = setup(t);
            let (l, rr) = weyl_denominator_check(&r, &w, &vec![0.0; r.rank]).unwrap();
            assert!(l.norm() < 1e-12 && rr.norm() < 1e-9, "{t}");
            let h = random_point(&mut rng, r.rank);
            let (l, rr) = weyl_denominator_check(&r, &w, &h).unwrap();
            assert!((l - rr).norm() < 1e-9 * l.norm().max(1.0), "{t}");
        }
    }

    #[test]
    fn denominator_is_anti_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for t in ["A2", "B2", "G2", "A3"] {
            let (r, w) = setup(t);
            let h = random_point(&mut rng, r.rank);
            let base = weyl_denominator_product(&r, &h);
            for e in &w {
                let moved = weyl_denominator_product(&r, &e.apply_torus(&r, &h));
                assert!((moved - base * e.det as f64).norm() < 1e-10, "{t} {:?}", e.word);
            }
        }
    }

    #[test]
    fn characters() {
        let (a1, w1) = setup("A1");
        for n in 0..6 {
            for theta in [0.3, 1.1, 2.9] {
                let ch = weyl_character_value(&a1, &w1, &Weight::new(vec![n]), &[theta]).unwrap();
                let closed = ((n + 1) as f64 * theta).sin() / theta.sin();
                assert!((ch.re - closed).abs() < 1e-12 && ch.im.abs() < 1e-12);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for t in ["A2", "B2", "G2", "A3", "C3"] {
            let (r, w) = setup(t);
            let h = random_point(&mut rng, r.rank);
            let one = weyl_character_value(&r, &w, &Weight::zero(r.rank), &h).unwrap();
            assert!((one - 1.0).norm() < 1e-10);
            let lambda = Weight::new(vec![1; r.rank]);
            let ch = weyl_character_value(&r, &w, &lambda, &h).unwrap();
            for e in &w {
                let moved = weyl_character_value(&r, &w, &lambda, &e.apply_torus(&r, &h)).unwrap();
                assert!((moved - ch).norm() < 1e-10, "{t}");
            }
        }
    }

    #[test]
    fn characters_at_identity_are_dimensions() {
        for t in TYPES {
            let (r, w) = setup(t);
            for lambda in [Weight::new(vec![1; r.rank]), Weight::new((0..r.rank as i64).collect())] {
                let d = weyl_dimension(&r, &lambda).unwrap() as f64;
                let ch = weyl_character_value(&r, &w, &lambda, &vec![0.0; r.rank]).unwrap();
                assert!((ch.re - d).abs() < 1e-8 * d.max(1.0) && ch.im.abs() < 1e-8 * d, "{t}: {ch} vs {d}");
            }
        }
        // a point on a single wall of A2, against the limit of nearby regular values
        let (a2, w2) = setup("A2");
        let lambda = Weight::new(vec![2, 1]);
        let wall = [1.0, -1.0];
        assert_eq!(singular_order(&a2, &wall), 1);
        let at = weyl_character_value(&a2, &w2, &lambda, &wall).unwrap();
        let near = weyl_character_value(&a2, &w2, &lambda, &[1.0 + 1e-6, -1.0 + 1e-6]).unwrap();
        assert!((at - near).norm() < 1e-4);
    }

    #[test]
    fn torus_quadrature() {
        let (a1, w1) = setup("A1");
        let omega = Weight::new(vec![1]);
        let v = weyl_integration_orthogonality(&a1, &w1, &omega, &omega, 2048).unwrap();
        assert!((v - 1.0).norm() < 1e-6);
        let v = weyl_integration_orthogonality(&a1, &w1, &omega, &Weight::new(vec![3]), 2048).unwrap();
        assert!(v.norm() < 1e-6);
        let zero = Weight::zero(1);
        assert!((weyl_integration_orthogonality(&a1, &w1, &zero, &zero, 64).unwrap() - 1.0).norm() < 1e-6);
        for t in ["A2", "B2", "G2"] {
            let (r, w) = setup(t);
            let weights = [Weight::zero(2), Weight::new(vec![1, 0]), Weight::new(vec![0, 1]), Weight::new(vec![1, 1])];
            for a in &weights {
                for b in &weights {
                    let v = weyl_integration_orthogonality(&r, &w, a, b, 64).unwrap();
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((v - expect).norm() < quadrature_tolerance(64), "{t} {a:?} {b:?}: {v}");
                }
            }
        }
        let (a3, w3) = setup("A3");
        assert!(weyl_integration_orthogonality(&a3, &w3, &Weight::zero(3), &Weight::zero(3), 64).is_err());
        assert!(weyl_integration_orthogonality(&a1, &w1, &zero, &zero, 10).is_err());
    }
}
