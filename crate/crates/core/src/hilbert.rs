//! Dense complex linear algebra on small Hilbert spaces.
//!
//! Everything here works on dimensions that are powers of two up to 16,
//! i.e. at most four spin-½ particles. Matrices are stored row-major.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex;

// f64 math in no_std; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Largest supported Hilbert-space dimension.
pub const MAX_DIM: usize = 16;
/// Entrywise tolerance for `A = A†`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Entrywise tolerance for `P² = P` and the spectral invariants.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are merged into one eigenspace.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Maximum distance from a spectrum point for a value to count as an eigenvalue.
pub const SPECTRUM_TOL: f64 = 1e-8;
/// Cluster means this close to an integer are reported as that integer, so
/// Pauli and projector outcomes come out as exact ±1 and 0/1.
pub const INTEGER_SNAP: f64 = 1e-12;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::BadDimension(dim));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    Ok(())
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// Kronecker product; the first argument is the most significant factor.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Self;
}

/// Free-function form of [`Tensor::tensor`].
pub fn tensor<T: Tensor>(a: &T, b: &T) -> T {
    a.tensor(b)
}

/// Complex amplitude vector over the product basis.
///
/// A state is not required to be normalized; [`StateVector::normalize`]
/// produces a unit vector and the constructors in [`crate::states`] always
/// return one.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        Ok(StateVector { amplitudes })
    }

    /// Builds the vector and rescales it to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(amplitudes)?.normalize()
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: index + 1,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector { amplitudes })
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        StateVector { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Number of spin-½ particles, `log2(dim)`.
    pub fn particles(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(C64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: C64) -> Self {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|c| c * factor).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`: equals 1 for unit vectors that agree up to a global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `⟨self|op|self⟩`, real part.
    pub fn expectation(&self, op: &Operator) -> Result<f64> {
        let image = op.apply(self)?;
        Ok(self.inner(&image)?.re)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        StateVector { amplitudes }
    }
}

/// Square complex matrix acting on a [`StateVector`].
#[derive(Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for row in self.entries.chunks(self.dim) {
            f.debug_list()
                .entries(row.iter().map(|c| (c.re, c.im)))
                .finish()?;
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Operator {
    /// Builds a `dim × dim` operator from row-major entries.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Ok(Operator { dim, entries })
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        check_dim(dim)?;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Ok(Operator { dim, entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &StateVector, v: &StateVector) -> Result<Self> {
        same_dim(u.dim(), v.dim())?;
        Self::from_fn(u.dim(), |i, j| u.amplitude(i) * v.amplitude(j).conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.get(j, i).conj());
            }
        }
        Operator { dim: d, entries }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Operator {
            dim: self.dim,
            entries: self.entries.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn try_add(&self, other: &Operator) -> Result<Operator> {
        same_dim(self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Operator) -> Result<Operator> {
        same_dim(self.dim, other.dim)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Operator) -> Result<Operator> {
        same_dim(self.dim, other.dim)?;
        let d = self.dim;
        let mut entries = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(k, j);
                }
            }
        }
        Ok(Operator { dim: d, entries })
    }

    fn zip_with(&self, other: &Operator, f: impl Fn(C64, C64) -> C64) -> Operator {
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `self·state` without renormalization.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        same_dim(self.dim, state.dim())?;
        let d = self.dim;
        let amplitudes = (0..d)
            .map(|i| {
                let row = &self.entries[i * d..(i + 1) * d];
                row.iter().zip(state.amplitudes()).map(|(a, b)| a * b).sum()
            })
            .collect();
        Ok(StateVector::from_raw(amplitudes))
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Max-entry norm `max |a_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max-entry norm of `self − other`.
    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }

    /// Max-entry norm of `self − self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol)
            && self
                .try_mul(self)
                .and_then(|sq| sq.max_abs_diff(self))
                .is_ok_and(|e| e < tol)
    }
}

impl Tensor for Operator {
    fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut entries = vec![ZERO; d * d];
        for i in 0..da {
            for j in 0..da {
                let a = self.get(i, j);
                if a == ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        entries[(i * db + k) * d + j * db + l] = a * other.get(k, l);
                    }
                }
            }
        }
        Operator { dim: d, entries }
    }
}

/// Panicking arithmetic for operands already known to share a dimension.
impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.try_sub(rhs).expect("operator dimensions differ")
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_mul(rhs).expect("operator dimensions differ")
    }
}

/// Positions of `particles` (1-based) inside a basis index of `count` particles.
fn particle_bits(particles: &[usize], count: usize) -> Result<Vec<usize>> {
    particles
        .iter()
        .map(|&p| {
            if p == 0 || p > count {
                Err(Error::ParticleOutOfRange { particle: p, count })
            } else {
                Ok(count - p)
            }
        })
        .collect()
}

/// Gathers the bits of `index` at `bits` into a compact index, first bit most significant.
fn gather(index: usize, bits: &[usize]) -> usize {
    bits.iter()
        .fold(0, |acc, &b| (acc << 1) | ((index >> b) & 1))
}

/// Places `op`, acting on the ordered particle list `particles`, into the
/// `count`-particle space with identity on every other particle.
pub fn extend_operator(op: &Operator, particles: &[usize], count: usize) -> Result<Operator> {
    let bits = particle_bits(particles, count)?;
    same_dim(op.dim(), 1 << particles.len())?;
    let mask: usize = bits.iter().map(|b| 1 << b).sum();
    Operator::from_fn(1 << count, |i, j| {
        if i & !mask != j & !mask {
            ZERO
        } else {
            op.get(gather(i, &bits), gather(j, &bits))
        }
    })
}

/// Normalized partial trace: `Tr_rest(op) / dim(rest)`, keeping `particles`
/// in the given order.
pub fn reduce_operator(op: &Operator, particles: &[usize], count: usize) -> Result<Operator> {
    let bits = particle_bits(particles, count)?;
    same_dim(op.dim(), 1 << count)?;
    let mask: usize = bits.iter().map(|b| 1 << b).sum();
    let small = 1 << particles.len();
    let mut entries = vec![ZERO; small * small];
    let rest_dim = (op.dim() / small) as f64;
    for i in 0..op.dim() {
        for j in 0..op.dim() {
            if i & !mask == j & !mask {
                entries[gather(i, &bits) * small + gather(j, &bits)] += op.get(i, j);
            }
        }
    }
    let reduced = Operator::new(small, entries)?;
    Ok(reduced.scale(C64::new(1.0 / rest_dim, 0.0)))
}

/// True when `op` equals `reduced ⊗ 𝟙` for the given particles within `tol`.
pub fn acts_only_on(op: &Operator, particles: &[usize], count: usize, tol: f64) -> Result<bool> {
    let reduced = reduce_operator(op, particles, count)?;
    let rebuilt = extend_operator(&reduced, particles, count)?;
    Ok(rebuilt.max_abs_diff(op)? < tol)
}

/// Distinct eigenvalues (ascending) with their orthogonal eigenprojectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<Operator>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    /// Index of the eigenvalue within [`SPECTRUM_TOL`] of `value`.
    pub fn position(&self, value: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|&e| (e - value).abs() <= SPECTRUM_TOL)
    }

    pub fn projector_for(&self, value: f64) -> Option<&Operator> {
        self.position(value).map(|i| &self.projectors[i])
    }

    /// Multiplicity of each eigenvalue (trace of its projector).
    pub fn multiplicities(&self) -> Vec<usize> {
        self.projectors
            .iter()
            .map(|p| round_count(p.trace().re))
            .collect()
    }

    /// `Σ λᵢ Pᵢ`.
    pub fn reconstruct(&self) -> Operator {
        let mut acc = Operator::zeros(self.dim()).expect("valid dimension");
        for (value, proj) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = &acc + &proj.scale(C64::new(*value, 0.0));
        }
        acc
    }
}

fn round_count(x: f64) -> usize {
    x.round().max(0.0) as usize
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// rotations. Returns `(values, V)` with eigenvectors in the columns of `V`,
/// unsorted.
fn jacobi_eigen(op: &Operator) -> (Vec<f64>, Vec<C64>) {
    let n = op.dim();
    let mut a = op.entries().to_vec();
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = ONE;
    }
    // Symmetrize so the off-diagonal pairs start exactly conjugate.
    for i in 0..n {
        a[i * n + i] = C64::new(a[i * n + i].re, 0.0);
        for j in i + 1..n {
            let avg = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }
    let scale = a
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                // Phase rotation makes the pivot real, then a real Jacobi
                // rotation annihilates it: U = diag(1, e^{-iφ}) · [[c, s], [-s, c]].
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;
                // A ← A U (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * u_pp + vkq * u_qp;
                    v[k * n + q] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i * n + i].re).collect(), v)
}

/// Spectral decomposition of a Hermitian operator.
///
/// Eigenvalues within [`CLUSTER_TOL`] of their ascending neighbour are
/// merged; the reported value of a cluster is its mean.
pub fn spectral(op: &Operator) -> Result<SpectralDecomposition> {
    let defect = op.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = op.dim();
    let (values, vectors) = jacobi_eigen(op);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        match clusters.last_mut() {
            Some(cluster) if values[idx] - values[*cluster.last().unwrap()] < CLUSTER_TOL => {
                cluster.push(idx)
            }
            _ => clusters.push(vec![idx]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projectors = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let mut mean = cluster.iter().map(|&k| values[k]).sum::<f64>() / cluster.len() as f64;
        if (mean - mean.round()).abs() < INTEGER_SNAP {
            mean = mean.round() + 0.0;
        }
        let proj = Operator::from_fn(n, |i, j| {
            cluster
                .iter()
                .map(|&k| vectors[i * n + k] * vectors[j * n + k].conj())
                .sum()
        })?;
        eigenvalues.push(mean);
        projectors.push(proj);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
    })
}

#[derive(Debug)]
struct ObservableInner {
    label: String,
    operator: Operator,
    spectrum: SpectralDecomposition,
}

/// Hermitian operator with its spectral decomposition computed once.
///
/// Cloning is cheap; the matrix and decomposition are shared.
#[derive(Clone, Debug)]
pub struct Observable {
    inner: Arc<ObservableInner>,
}

impl Observable {
    pub fn new(operator: Operator) -> Result<Self> {
        Self::labeled(String::new(), operator)
    }

    pub fn labeled(label: impl Into<String>, operator: Operator) -> Result<Self> {
        let spectrum = spectral(&operator)?;
        Ok(Observable {
            inner: Arc::new(ObservableInner {
                label: label.into(),
                operator,
                spectrum,
            }),
        })
    }

    /// Same operator under a different display label.
    pub fn with_label(&self, label: impl Into<String>) -> Self {
        Observable {
            inner: Arc::new(ObservableInner {
                label: label.into(),
                operator: self.inner.operator.clone(),
                spectrum: self.inner.spectrum.clone(),
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn operator(&self) -> &Operator {
        &self.inner.operator
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.inner.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.inner.spectrum.eigenvalues()
    }

    pub fn dim(&self) -> usize {
        self.inner.operator.dim()
    }

    pub fn projector_for(&self, value: f64) -> Option<&Operator> {
        self.inner.spectrum.projector_for(value)
    }

    pub fn in_spectrum(&self, value: f64) -> bool {
        self.inner.spectrum.position(value).is_some()
    }
}

impl PartialEq for Observable {
    fn eq(&self, other: &Self) -> bool {
        self.inner.operator == other.inner.operator
    }
}

impl Tensor for Observable {
    fn tensor(&self, other: &Self) -> Self {
        let label = match (self.label(), other.label()) {
            ("", "") => String::new(),
            (a, b) => alloc::format!("{a}⊗{b}"),
        };
        Observable::labeled(label, self.operator().tensor(other.operator()))
            .expect("tensor product of Hermitian operators is Hermitian")
    }
}

/// Dimension of the joint eigenspace `∩ᵢ {ψ : opᵢ ψ = valueᵢ ψ}`.
///
/// Computed as the nullspace dimension of `Σᵢ (opᵢ − valueᵢ)†(opᵢ − valueᵢ)`.
/// A value outside its operator's spectrum gives 0.
pub fn common_eigenstate_dim(ops: &[Observable], values: &[f64]) -> Result<usize> {
    let first = ops.first().ok_or(Error::EmptyObservableSet)?;
    if values.len() != ops.len() {
        return Err(Error::LengthMismatch {
            expected: ops.len(),
            actual: values.len(),
        });
    }
    let d = first.dim();
    for op in ops {
        same_dim(d, op.dim())?;
    }
    if ops.iter().zip(values).any(|(op, &v)| !op.in_spectrum(v)) {
        return Ok(0);
    }
    let identity = Operator::identity(d)?;
    let mut gram = Operator::zeros(d)?;
    for (op, &v) in ops.iter().zip(values) {
        let shifted = op.operator() - &identity.scale(C64::new(v, 0.0));
        gram = &gram + &(&shifted.adjoint() * &shifted);
    }
    let spectrum = spectral(&gram)?;
    Ok(spectrum
        .eigenvalues()
        .iter()
        .zip(spectrum.multiplicities())
        .filter(|(&e, _)| e.abs() < SPECTRUM_TOL)
        .map(|(_, m)| m)
        .sum())
}

/// True iff some tuple of eigenvalues, one per operator, has a nonzero
/// joint eigenspace. Enumerates the full Cartesian product of spectra.
pub fn has_common_eigenstate(ops: &[Observable]) -> Result<bool> {
    if ops.is_empty() {
        return Err(Error::EmptyObservableSet);
    }
    let mut cursor = vec![0usize; ops.len()];
    loop {
        let values: Vec<f64> = ops
            .iter()
            .zip(&cursor)
            .map(|(op, &i)| op.eigenvalues()[i])
            .collect();
        if common_eigenstate_dim(ops, &values)? > 0 {
            return Ok(true);
        }
        // odometer increment
        let mut slot = 0;
        loop {
            if slot == ops.len() {
                return Ok(false);
            }
            cursor[slot] += 1;
            if cursor[slot] < ops[slot].eigenvalues().len() {
                break;
            }
            cursor[slot] = 0;
            slot += 1;
        }
    }
}
