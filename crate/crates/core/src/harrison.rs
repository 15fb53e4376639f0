//! Brute-force Hochschild and Harrison cohomology of finite-dimensional
//! local algebras.
//!
//! Cochains live on the reduced complex: a degree-k cochain is a k-linear
//! map on the maximal ideal with values in the coefficient module, stored
//! as a vector indexed by (tuple of basis indices, module basis index).
//! The Harrison subcomplex is cut out by the shuffle relations
//! f∘sh_{p,k−p} = 0, where a permutation σ moves the argument a_i to
//! position σ(i): (f∘σ)(a_1,…,a_k) = f(a_σ⁻¹(1),…,a_σ⁻¹(k)). In degree 3
//! this gives f(a,b,c) − f(b,a,c) + f(b,c,a) = 0.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{KernelBasis, QMatrix};

/// Default cap on n^k, the number of argument tuples in one degree.
pub const DEFAULT_BUDGET: u64 = 1500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarrisonError {
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("multiplication is not commutative on e{0}·e{1}")]
    NotCommutative(usize, usize),
    #[error("multiplication is not associative on (e{0}, e{1}, e{2})")]
    NotAssociative(usize, usize, usize),
    #[error("degree {degree} needs {tuples} argument tuples, over the budget of {budget}")]
    BudgetExceeded {
        degree: usize,
        tuples: String,
        budget: u64,
    },
    #[error("cochain degree must be at least {min}, got {got}")]
    Degree { min: usize, got: usize },
    #[error("the coboundary does not preserve the shuffle-invariant subspace in degree {0}")]
    NotClosed(usize),
    #[error("zero-map check needs m >= 2, got {0}")]
    ZeroMapNeedsTwo(u64),
}

/// An element of A in the basis {1, e_1, …, e_n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub scalar: BigRational,
    pub linear: Vec<BigRational>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element {
            scalar: BigRational::zero(),
            linear: vec![BigRational::zero(); n],
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.linear[i] = BigRational::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.linear.iter().all(Zero::is_zero)
    }

    fn add_scaled(&mut self, c: &BigRational, other: &Element) {
        if c.is_zero() {
            return;
        }
        self.scalar += c * &other.scalar;
        for (a, b) in self.linear.iter_mut().zip(&other.linear) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }
}

/// A commutative local algebra of dimension n+1 over the rationals, given
/// by the products e_i·e_j of the maximal-ideal basis. The unit is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLocalAlgebra {
    n: usize,
    // n*n products, row-major
    products: Vec<Element>,
}

impl FiniteLocalAlgebra {
    /// Validates commutativity and associativity on all basis triples.
    pub fn new(n: usize, products: Vec<Element>) -> Result<Self, HarrisonError> {
        if products.len() != n * n {
            return Err(HarrisonError::Shape(format!(
                "expected {} products, got {}",
                n * n,
                products.len()
            )));
        }
        if let Some(p) = products.iter().find(|p| p.linear.len() != n) {
            return Err(HarrisonError::Shape(format!(
                "product with {} linear coefficients, expected {n}",
                p.linear.len()
            )));
        }
        let alg = FiniteLocalAlgebra { n, products };
        for i in 0..n {
            for j in 0..i {
                if alg.product(i, j) != alg.product(j, i) {
                    return Err(HarrisonError::NotCommutative(j, i));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = alg.mul(alg.product(i, j), &Element::basis(n, k));
                    let right = alg.mul(&Element::basis(n, i), alg.product(j, k));
                    if left != right {
                        return Err(HarrisonError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// The fat point Z_m: basis {1, z_1, …, z_m}, all z_i·z_j = 0.
    pub fn fat_point(m: usize) -> Self {
        FiniteLocalAlgebra {
            n: m,
            products: vec![Element::zero(m); m * m],
        }
    }

    /// k[x]/(x^{len+1}) with e_i = x^i.
    pub fn truncated_polynomial(len: usize) -> Self {
        let mut products = Vec::with_capacity(len * len);
        for i in 1..=len {
            for j in 1..=len {
                let mut p = Element::zero(len);
                if i + j <= len {
                    p.linear[i + j - 1] = BigRational::one();
                }
                products.push(p);
            }
        }
        FiniteLocalAlgebra { n: len, products }
    }

    /// Dimension of the maximal ideal.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.products[i * self.n + j]
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero(self.n);
        out.scalar = &x.scalar * &y.scalar;
        for i in 0..self.n {
            out.linear[i] = &x.scalar * &y.linear[i] + &y.scalar * &x.linear[i];
        }
        for (i, a) in x.linear.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.linear.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.add_scaled(&(a * b), self.product(i, j));
            }
        }
        out
    }
}

/// Coefficients for the cohomology: the residue field, on which the
/// maximal ideal acts as zero, or the algebra itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientModule {
    Trivial,
    Regular,
}

impl CoefficientModule {
    pub fn dim(self, alg: &FiniteLocalAlgebra) -> usize {
        match self {
            CoefficientModule::Trivial => 1,
            CoefficientModule::Regular => alg.n + 1,
        }
    }

    /// e_a acting on module basis vector `mu`, as a module vector. For the
    /// regular module, index 0 is the unit and index b+1 is e_b.
    fn act(self, alg: &FiniteLocalAlgebra, a: usize, mu: usize) -> Vec<BigRational> {
        match self {
            CoefficientModule::Trivial => vec![BigRational::zero()],
            CoefficientModule::Regular => {
                let e = if mu == 0 {
                    Element::basis(alg.n, a)
                } else {
                    alg.product(a, mu - 1).clone()
                };
                std::iter::once(e.scalar).chain(e.linear).collect()
            }
        }
    }
}

/// One (p,q)-shuffle. `perm[i]` is σ(i+1)−1, so the permutation is 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<usize>,
    pub sign: i8,
}

/// All (p,q)-shuffles with their signs; sh_{p,q} is their signed sum.
pub fn shuffle_element(p: usize, q: usize) -> Vec<Shuffle> {
    let k = p + q;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(p);
    choose(k, p, 0, &mut chosen, &mut |first: &[usize]| {
        let mut perm = first.to_vec();
        perm.extend((0..k).filter(|x| !first.contains(x)));
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        out.push(Shuffle { perm, sign });
    });
    out
}

fn choose(k: usize, p: usize, start: usize, acc: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if acc.len() == p {
        emit(acc);
        return;
    }
    for x in start..k {
        acc.push(x);
        choose(k, p, x + 1, acc, emit);
        acc.pop();
    }
}

type SparseVec = Vec<(usize, BigRational)>;

/// Which subcomplex of the reduced Hochschild complex to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    Hochschild,
    Harrison,
}

/// A basis of the reduced cochains of one degree: functionals on the
/// k-fold tensor power of the maximal ideal, tensored with the module.
///
/// Each functional has a distinguished tuple (`free`) where it is 1 and
/// every other functional is 0, which makes coordinates cheap to read off.
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub degree: usize,
    pub tuples: usize,
    pub value_dim: usize,
    functionals: Vec<SparseVec>,
    free: Vec<usize>,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.functionals.len() * self.value_dim
    }

    pub fn functional_count(&self) -> usize {
        self.functionals.len()
    }

    /// Length of the ambient cochain vectors.
    pub fn ambient_dim(&self) -> usize {
        self.tuples * self.value_dim
    }

    /// Basis vector `b` as a dense ambient cochain.
    pub fn basis_vector(&self, b: usize) -> Vec<BigRational> {
        let (fi, mu) = (b / self.value_dim, b % self.value_dim);
        let mut v = vec![BigRational::zero(); self.ambient_dim()];
        for (t, x) in &self.functionals[fi] {
            v[t * self.value_dim + mu] = x.clone();
        }
        v
    }

    pub fn combine(&self, coords: &[BigRational]) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.ambient_dim()];
        for (b, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (fi, mu) = (b / self.value_dim, b % self.value_dim);
            for (t, x) in &self.functionals[fi] {
                v[t * self.value_dim + mu] += c * x;
            }
        }
        v
    }

    /// Coordinates of an ambient cochain, or `None` if it lies outside the space.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let vd = self.value_dim;
        let coords: Vec<BigRational> = self
            .free
            .iter()
            .flat_map(|&t| (0..vd).map(move |mu| v[t * vd + mu].clone()))
            .collect();
        (self.combine(&coords) == v).then_some(coords)
    }
}

/// Cohomology computations for one algebra and coefficient module.
#[derive(Debug, Clone)]
pub struct HarrisonEngine {
    algebra: FiniteLocalAlgebra,
    module: CoefficientModule,
    budget: u64,
}

impl HarrisonEngine {
    pub fn new(algebra: FiniteLocalAlgebra, module: CoefficientModule) -> Self {
        HarrisonEngine {
            algebra,
            module,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn algebra(&self) -> &FiniteLocalAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> CoefficientModule {
        self.module
    }

    fn tuple_count(&self, degree: usize) -> Result<usize, HarrisonError> {
        let count = num_traits::pow(BigInt::from(self.algebra.n), degree);
        if count > BigInt::from(self.budget) {
            return Err(HarrisonError::BudgetExceeded {
                degree,
                tuples: count.to_string(),
                budget: self.budget,
            });
        }
        Ok(self.algebra.n.pow(degree as u32))
    }

    fn decode(&self, mut idx: usize, degree: usize) -> Vec<usize> {
        let n = self.algebra.n;
        let mut t = vec![0; degree];
        for slot in t.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    }

    fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.algebra.n + x)
    }

    /// The reduced cochain space of the given kind in degree `k` (k ≥ 0).
    pub fn cochain_space(
        &self,
        kind: ComplexKind,
        k: usize,
    ) -> Result<CochainSpace, HarrisonError> {
        let tuples = self.tuple_count(k)?;
        let value_dim = self.module.dim(&self.algebra);
        let (functionals, free) = match kind {
            ComplexKind::Hochschild => (
                (0..tuples).map(|t| vec![(t, BigRational::one())]).collect(),
                (0..tuples).collect(),
            ),
            ComplexKind::Harrison => self.shuffle_invariant_functionals(k, tuples),
        };
        Ok(CochainSpace {
            degree: k,
            tuples,
            value_dim,
            functionals,
            free,
        })
    }

    // Shuffles only permute positions, so the relations split along the
    // orbits of tuples with the same multiset of entries.
    fn shuffle_invariant_functionals(
        &self,
        k: usize,
        tuples: usize,
    ) -> (Vec<SparseVec>, Vec<usize>) {
        let mut orbits: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for idx in 0..tuples {
            let mut key = self.decode(idx, k);
            key.sort_unstable();
            orbits.entry(key).or_default().push(idx);
        }
        let shuffles: Vec<Vec<Shuffle>> = (1..k).map(|p| shuffle_element(p, k - p)).collect();

        let mut functionals = Vec::new();
        let mut free = Vec::new();
        let mut permuted = vec![0; k];
        for members in orbits.values() {
            let local: BTreeMap<usize, usize> =
                members.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let mut rows = Vec::new();
            for sh in &shuffles {
                for &g in members {
                    let x = self.decode(g, k);
                    let mut row = vec![BigRational::zero(); members.len()];
                    for s in sh {
                        for (i, &target) in s.perm.iter().enumerate() {
                            permuted[target] = x[i];
                        }
                        row[local[&self.encode(&permuted)]] +=
                            BigRational::from_integer(s.sign.into());
                    }
                    rows.push(row);
                }
            }
            let kernel = if rows.is_empty() {
                QMatrix::zeros(0, members.len()).kernel_basis()
            } else {
                let cols = members.len();
                QMatrix::new(rows.len(), cols, rows.into_iter().flatten().collect())
                    .expect("rows have orbit width")
                    .kernel_basis()
            };
            let KernelBasis {
                free: local_free,
                vectors,
            } = kernel;
            for (f, v) in local_free.into_iter().zip(vectors) {
                free.push(members[f]);
                functionals.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(l, x)| (members[l], x))
                        .collect(),
                );
            }
        }
        (functionals, free)
    }

    /// Dimension of the shuffle-invariant reduced cochains in degree `k`.
    pub fn shuffle_invariant_dim(&self, k: usize) -> Result<usize, HarrisonError> {
        check_degree(k, 1)?;
        Ok(self.cochain_space(ComplexKind::Harrison, k)?.dim())
    }

    /// δ applied to a dense degree-k cochain, giving a dense degree-(k+1) cochain.
    ///
    /// (δf)(a_0,…,a_k) = a_0 f(a_1,…,a_k) + Σ_j (−1)^j f(…, a_{j−1}a_j, …)
    ///                   + (−1)^{k+1} a_k f(a_0,…,a_{k−1}).
    /// The unit component of a product a_{j−1}a_j contributes nothing on
    /// reduced cochains.
    pub fn apply_coboundary(
        &self,
        k: usize,
        f: &[BigRational],
    ) -> Result<Vec<BigRational>, HarrisonError> {
        let alg = &self.algebra;
        let n = alg.n;
        let vd = self.module.dim(alg);
        let src_tuples = self.tuple_count(k)?;
        let dst_tuples = self.tuple_count(k + 1)?;
        assert_eq!(f.len(), src_tuples * vd, "cochain has wrong length");
        let mut out = vec![BigRational::zero(); dst_tuples * vd];
        if f.iter().all(Zero::is_zero) {
            return Ok(out);
        }
        let value_at = |tuple: &[usize]| -> &[BigRational] {
            let t = self.encode(tuple);
            &f[t * vd..(t + 1) * vd]
        };
        let last_sign = if (k + 1).is_multiple_of(2) { 1i64 } else { -1 };

        let mut buf = Vec::with_capacity(k);
        for yi in 0..dst_tuples {
            let y = self.decode(yi, k + 1);
            let acc = &mut out[yi * vd..(yi + 1) * vd];

            self.add_action(acc, y[0], value_at(&y[1..]), 1);
            self.add_action(acc, y[k], value_at(&y[..k]), last_sign);

            for j in 1..=k {
                let prod = alg.product(y[j - 1], y[j]);
                let sign = if j % 2 == 0 { 1i64 } else { -1 };
                for (nu, c) in prod.linear.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    buf.clear();
                    buf.extend_from_slice(&y[..j - 1]);
                    buf.push(nu);
                    buf.extend_from_slice(&y[j + 1..]);
                    let coef = c * BigRational::from_integer(sign.into());
                    for (a, v) in acc.iter_mut().zip(value_at(&buf)) {
                        if !v.is_zero() {
                            *a += &coef * v;
                        }
                    }
                }
            }
        }
        debug_assert!(n > 0 || out.is_empty());
        Ok(out)
    }

    fn add_action(&self, acc: &mut [BigRational], a: usize, value: &[BigRational], sign: i64) {
        if self.module == CoefficientModule::Trivial {
            return;
        }
        let s = BigRational::from_integer(sign.into());
        for (mu, v) in value.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let coef = v * &s;
            for (x, w) in acc.iter_mut().zip(self.module.act(&self.algebra, a, mu)) {
                if !w.is_zero() {
                    *x += &coef * w;
                }
            }
        }
    }

    /// Images δ(b) of the basis of `src` as dense ambient cochains of degree k+1.
    fn images(&self, src: &CochainSpace) -> Result<Vec<Vec<BigRational>>, HarrisonError> {
        (0..src.dim())
            .map(|b| self.apply_coboundary(src.degree, &src.basis_vector(b)))
            .collect()
    }

    /// Matrix of δ_k between the degree-k and degree-(k+1) cochain spaces
    /// of the given kind, in their distinguished bases.
    pub fn coboundary_matrix_of(
        &self,
        kind: ComplexKind,
        k: usize,
    ) -> Result<QMatrix, HarrisonError> {
        let src = self.cochain_space(kind, k)?;
        let dst = self.cochain_space(kind, k + 1)?;
        let columns = self
            .images(&src)?
            .into_iter()
            .map(|img| dst.coordinates(&img).ok_or(HarrisonError::NotClosed(k)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QMatrix::from_columns(dst.dim(), &columns))
    }

    /// Matrix of δ_k on the shuffle-invariant subcomplex.
    pub fn coboundary_matrix(&self, k: usize) -> Result<QMatrix, HarrisonError> {
        check_degree(k, 1)?;
        self.coboundary_matrix_of(ComplexKind::Harrison, k)
    }

    /// dim ker δ_k − rank δ_{k−1}, with δ_0 taken as zero.
    pub fn cohomology_dim(&self, kind: ComplexKind, k: usize) -> Result<usize, HarrisonError> {
        check_degree(k, 1)?;
        let outgoing = self.coboundary_matrix_of(kind, k)?;
        let kernel = outgoing.kernel_dim();
        let incoming = if k >= 2 {
            self.coboundary_matrix_of(kind, k - 1)?.rank()
        } else {
            0
        };
        Ok(kernel - incoming)
    }

    pub fn harrison_dim(&self, k: usize) -> Result<usize, HarrisonError> {
        self.cohomology_dim(ComplexKind::Harrison, k)
    }

    pub fn hochschild_dim(&self, k: usize) -> Result<usize, HarrisonError> {
        self.cohomology_dim(ComplexKind::Hochschild, k)
    }
}

fn check_degree(k: usize, min: usize) -> Result<(), HarrisonError> {
    if k < min {
        Err(HarrisonError::Degree { min, got: k })
    } else {
        Ok(())
    }
}

pub fn make_fat_point(m: u64) -> FiniteLocalAlgebra {
    FiniteLocalAlgebra::fat_point(m as usize)
}

pub fn shuffle_invariant_dim(
    algebra: &FiniteLocalAlgebra,
    module: CoefficientModule,
    k: usize,
) -> Result<usize, HarrisonError> {
    HarrisonEngine::new(algebra.clone(), module).shuffle_invariant_dim(k)
}

pub fn coboundary_matrix(
    algebra: &FiniteLocalAlgebra,
    module: CoefficientModule,
    k: usize,
) -> Result<QMatrix, HarrisonError> {
    HarrisonEngine::new(algebra.clone(), module).coboundary_matrix(k)
}

pub fn harrison_dim(
    algebra: &FiniteLocalAlgebra,
    module: CoefficientModule,
    k: usize,
) -> Result<usize, HarrisonError> {
    HarrisonEngine::new(algebra.clone(), module).harrison_dim(k)
}

pub fn hochschild_dim(
    algebra: &FiniteLocalAlgebra,
    module: CoefficientModule,
    k: usize,
) -> Result<usize, HarrisonError> {
    HarrisonEngine::new(algebra.clone(), module).hochschild_dim(k)
}

/// Checks that Harr^k(Z_m; A) → Harr^k(Z_m; residue field), induced by
/// taking the unit component of cochain values, is the zero map.
pub fn zero_map_check(m: u64, k: usize) -> Result<bool, HarrisonError> {
    zero_map_check_with_budget(m, k, DEFAULT_BUDGET)
}

pub fn zero_map_check_with_budget(m: u64, k: usize, budget: u64) -> Result<bool, HarrisonError> {
    if m < 2 {
        return Err(HarrisonError::ZeroMapNeedsTwo(m));
    }
    check_degree(k, 1)?;
    let alg = make_fat_point(m);
    let regular = HarrisonEngine::new(alg.clone(), CoefficientModule::Regular).with_budget(budget);
    let trivial = HarrisonEngine::new(alg, CoefficientModule::Trivial).with_budget(budget);
    residue_map_vanishes(&regular, &trivial, k)
}

/// For two engines on the same algebra with regular and trivial
/// coefficients: does every regular k-cocycle project into the trivial
/// k-coboundaries?
pub fn residue_map_vanishes(
    regular: &HarrisonEngine,
    trivial: &HarrisonEngine,
    k: usize,
) -> Result<bool, HarrisonError> {
    assert_eq!(regular.module, CoefficientModule::Regular);
    assert_eq!(trivial.module, CoefficientModule::Trivial);
    assert_eq!(regular.algebra, trivial.algebra);
    let kind = ComplexKind::Harrison;
    let reg_space = regular.cochain_space(kind, k)?;
    let cocycles = regular.coboundary_matrix_of(kind, k)?.kernel_basis();
    let vd = reg_space.value_dim;

    let mut columns: Vec<Vec<BigRational>> = if k >= 2 {
        let prev = trivial.cochain_space(kind, k - 1)?;
        trivial.images(&prev)?
    } else {
        Vec::new()
    };
    let tuples = reg_space.tuples;
    let boundary_rank = QMatrix::from_columns(tuples, &columns).rank();

    for z in &cocycles.vectors {
        let cochain = reg_space.combine(z);
        let residue: Vec<BigRational> = (0..tuples).map(|t| cochain[t * vd].clone()).collect();
        columns.push(residue);
    }
    Ok(QMatrix::from_columns(tuples, &columns).rank() == boundary_rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffle_element(1, 1).len(), 2);
        assert_eq!(shuffle_element(1, 2).len(), 3);
        assert_eq!(shuffle_element(2, 2).len(), 6);
        for p in 1..5 {
            for q in 1..5 {
                assert_eq!(shuffle_element(p, q).len(), binom(p + q, p));
            }
        }
    }

    #[test]
    fn shuffle_one_one() {
        let sh = shuffle_element(1, 1);
        assert_eq!(
            sh[0],
            Shuffle {
                perm: vec![0, 1],
                sign: 1
            }
        );
        assert_eq!(
            sh[1],
            Shuffle {
                perm: vec![1, 0],
                sign: -1
            }
        );
    }

    #[test]
    fn shuffles_are_increasing_on_both_blocks() {
        for s in shuffle_element(2, 3) {
            assert!(s.perm[0] < s.perm[1]);
            assert!(s.perm[2] < s.perm[3] && s.perm[3] < s.perm[4]);
        }
    }

    #[test]
    fn fat_point_constructor() {
        let z1 = make_fat_point(1);
        assert_eq!(z1.n(), 1);
        assert!(z1.product(0, 0).is_zero());
        let z2 = make_fat_point(2);
        assert_eq!(z2.n() + 1, 3);
        for m in 1..5 {
            let a = make_fat_point(m);
            let products = (0..a.n() * a.n())
                .map(|i| a.product(i / a.n(), i % a.n()).clone())
                .collect();
            assert!(FiniteLocalAlgebra::new(a.n(), products).is_ok());
        }
    }

    #[test]
    fn constructor_rejects_bad_structure() {
        let r = |n: i64| BigRational::from_integer(n.into());
        let el = |s: i64, l: [i64; 2]| Element {
            scalar: r(s),
            linear: l.iter().map(|&x| r(x)).collect(),
        };
        // e1e2 = e1 but e2e1 = 0
        let noncomm = vec![el(0, [0, 1]), el(0, [1, 0]), el(0, [0, 0]), el(0, [0, 0])];
        assert_eq!(
            FiniteLocalAlgebra::new(2, noncomm),
            Err(HarrisonError::NotCommutative(0, 1))
        );
        // e1e1 = e2, e1e2 = e2e1 = e1, e2e2 = 0
        let nonassoc = vec![el(0, [0, 1]), el(0, [1, 0]), el(0, [1, 0]), el(0, [0, 0])];
        assert!(matches!(
            FiniteLocalAlgebra::new(2, nonassoc),
            Err(HarrisonError::NotAssociative(..))
        ));
        assert!(matches!(
            FiniteLocalAlgebra::new(2, vec![]),
            Err(HarrisonError::Shape(_))
        ));
    }

    #[test]
    fn truncated_polynomial_is_valid() {
        let a = FiniteLocalAlgebra::truncated_polynomial(3);
        let products = (0..9).map(|i| a.product(i / 3, i % 3).clone()).collect();
        assert_eq!(FiniteLocalAlgebra::new(3, products).unwrap(), a);
    }

    #[test]
    fn degree_two_shuffle_invariants_are_symmetric() {
        for m in 1..=5u64 {
            let d =
                shuffle_invariant_dim(&make_fat_point(m), CoefficientModule::Trivial, 2).unwrap();
            assert_eq!(d as u64, m * (m + 1) / 2);
        }
    }

    #[test]
    fn shuffle_invariant_examples() {
        let triv = CoefficientModule::Trivial;
        assert_eq!(
            shuffle_invariant_dim(&make_fat_point(2), triv, 2).unwrap(),
            3
        );
        assert_eq!(
            shuffle_invariant_dim(&make_fat_point(3), triv, 3).unwrap(),
            8
        );
        let a = FiniteLocalAlgebra::truncated_polynomial(3);
        assert_eq!(shuffle_invariant_dim(&a, triv, 1).unwrap(), 3);
        assert_eq!(
            shuffle_invariant_dim(&a, CoefficientModule::Regular, 1).unwrap(),
            3 * 4
        );
    }

    #[test]
    fn trivial_coboundary_vanishes_on_fat_points() {
        for m in 1..=3 {
            for k in 1..=4 {
                let d =
                    coboundary_matrix(&make_fat_point(m), CoefficientModule::Trivial, k).unwrap();
                assert!(d.is_zero(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn harrison_examples() {
        let z2 = make_fat_point(2);
        assert_eq!(harrison_dim(&z2, CoefficientModule::Trivial, 3).unwrap(), 2);
        assert_eq!(harrison_dim(&z2, CoefficientModule::Regular, 2).unwrap(), 4);
        assert_eq!(harrison_dim(&z2, CoefficientModule::Regular, 3).unwrap(), 1);
    }

    #[test]
    fn hochschild_examples() {
        let triv = CoefficientModule::Trivial;
        assert_eq!(hochschild_dim(&make_fat_point(1), triv, 1).unwrap(), 1);
        assert_eq!(hochschild_dim(&make_fat_point(2), triv, 2).unwrap(), 4);
    }

    #[test]
    fn regular_rank_bookkeeping_in_degree_one() {
        // Harr^1 = derivations; dim ker δ_1 = 3·2 − rank δ_1 for Z_2.
        let z2 = make_fat_point(2);
        let eng = HarrisonEngine::new(z2, CoefficientModule::Regular);
        let d1 = eng.coboundary_matrix(1).unwrap();
        assert_eq!(d1.cols(), 6);
        assert_eq!(eng.harrison_dim(1).unwrap(), d1.cols() - d1.rank());
        // T^1(Z_2) = Harr^2 = dim ker δ_2 − rank δ_1
        let d2 = eng.coboundary_matrix(2).unwrap();
        assert_eq!(d2.kernel_dim() - d1.rank(), 4);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let algebras = [
            make_fat_point(2),
            make_fat_point(3),
            FiniteLocalAlgebra::truncated_polynomial(2),
            FiniteLocalAlgebra::truncated_polynomial(3),
        ];
        for alg in algebras {
            for module in [CoefficientModule::Trivial, CoefficientModule::Regular] {
                let eng = HarrisonEngine::new(alg.clone(), module);
                for kind in [ComplexKind::Hochschild, ComplexKind::Harrison] {
                    for k in 1..=3 {
                        let a = eng.coboundary_matrix_of(kind, k).unwrap();
                        let b = eng.coboundary_matrix_of(kind, k + 1).unwrap();
                        assert!(b.mul(&a).unwrap().is_zero(), "{kind:?} {module:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn hochschild_dominates_harrison_on_truncated_polynomials() {
        for len in 1..=3 {
            let alg = FiniteLocalAlgebra::truncated_polynomial(len);
            for module in [CoefficientModule::Trivial, CoefficientModule::Regular] {
                let eng = HarrisonEngine::new(alg.clone(), module);
                for k in 1..=4 {
                    let hh = eng.hochschild_dim(k).unwrap();
                    let harr = eng.harrison_dim(k).unwrap();
                    assert!(hh >= harr, "len={len} {module:?} k={k}: {hh} < {harr}");
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let eng = HarrisonEngine::new(make_fat_point(4), CoefficientModule::Trivial);
        assert!(matches!(
            eng.harrison_dim(9),
            Err(HarrisonError::BudgetExceeded { .. })
        ));
        let small = eng.clone().with_budget(10);
        assert!(matches!(
            small.shuffle_invariant_dim(2),
            Err(HarrisonError::BudgetExceeded { .. })
        ));
        assert!(eng.shuffle_invariant_dim(0).is_err());
    }

    #[test]
    fn zero_map_examples() {
        assert_eq!(zero_map_check(2, 2), Ok(true));
        assert_eq!(zero_map_check(3, 2), Ok(true));
        assert_eq!(zero_map_check(2, 3), Ok(true));
        assert_eq!(zero_map_check(1, 2), Err(HarrisonError::ZeroMapNeedsTwo(1)));
    }

    #[test]
    fn zero_map_can_fail_for_the_dual_numbers() {
        // d = 2: a cocycle with unit-valued component survives.
        let alg = make_fat_point(1);
        let reg = HarrisonEngine::new(alg.clone(), CoefficientModule::Regular);
        let triv = HarrisonEngine::new(alg, CoefficientModule::Trivial);
        assert_eq!(residue_map_vanishes(&reg, &triv, 2), Ok(false));
    }

    #[test]
    fn cochain_space_coordinates_round_trip() {
        let eng = HarrisonEngine::new(make_fat_point(2), CoefficientModule::Regular);
        let space = eng.cochain_space(ComplexKind::Harrison, 3).unwrap();
        let coords: Vec<BigRational> = (0..space.dim())
            .map(|i| BigRational::from_integer(((i as i64 * 7) % 5 - 2).into()))
            .collect();
        let v = space.combine(&coords);
        assert_eq!(space.coordinates(&v), Some(coords));
        let mut off = vec![BigRational::zero(); space.ambient_dim()];
        off[space.value_dim] = BigRational::one(); // f(e1,e1,e2) alone is not shuffle-invariant
        assert_eq!(space.coordinates(&off), None);
    }
}
