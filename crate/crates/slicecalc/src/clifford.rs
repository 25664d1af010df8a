//! Dense arithmetic in the real Clifford algebra Cl_m.
//!
//! The algebra is generated by an orthonormal basis e_1, ..., e_m of R^m
//! subject to e_i e_j + e_j e_i = -2 δ_ij, so every generator squares to -1.
//! An element is stored as 2^m real coefficients over the basis blades e_A,
//! A ⊆ {1,..,m}, in canonical graded-lexicographic order: blades sorted by
//! grade |A| first, then by the index tuple. For m = 3 the order is
//! 1, e1, e2, e3, e12, e13, e23, e123.
//!
//! Products are computed through a per-dimension multiplication table whose
//! signs come from transposition counting plus one factor -1 per repeated
//! generator. m is a runtime parameter capped at 6, and m = 1 is the complex
//! plane with e1 playing the role of i; the test suite leans on that
//! identification for classical oracles.
//!
//! Values are immutable and all operations are pure.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::Error;
use crate::Result;

/// Largest supported number of generators. 2^6 = 64 coefficients keeps the
/// dense representation cheap; tests exercise m in {1, 2, 3}.
pub const MAX_DIM: usize = 6;

struct BladeTable {
    /// blade index -> generator bitmask (bit i-1 set means e_i present)
    masks: Vec<u16>,
    /// generator bitmask -> blade index
    index_of: Vec<usize>,
    /// (i * 2^m + j) -> (blade index of e_A e_B, sign)
    product: Vec<(usize, f64)>,
    /// sign of the Clifford conjugation per blade: (-1)^{|A|(|A|+1)/2}
    conj_sign: Vec<f64>,
}

/// Number of transpositions (mod 2 sign) needed to move the generators of
/// `b` past those of `a` when concatenating sorted products.
fn reorder_sign(a: u16, b: u16) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn build_table(m: usize) -> BladeTable {
    let n = 1usize << m;
    let mut masks: Vec<u16> = (0..n as u16).collect();
    // graded-lexicographic: grade first, then the sorted index tuple.
    // Tuple order is dominated by the smallest index, so within a grade we
    // sort descending on the bit-reversed mask (low bit most significant).
    masks.sort_by_key(|&mask| {
        let rev = mask.reverse_bits() >> (16 - m);
        (mask.count_ones(), std::cmp::Reverse(rev))
    });
    let mut index_of = vec![0usize; n];
    for (idx, &mask) in masks.iter().enumerate() {
        index_of[mask as usize] = idx;
    }
    let mut product = vec![(0usize, 0.0f64); n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (masks[i], masks[j]);
            let target = index_of[(a ^ b) as usize];
            let mut sign = reorder_sign(a, b);
            if (a & b).count_ones() % 2 == 1 {
                sign = -sign;
            }
            product[i * n + j] = (target, sign);
        }
    }
    let conj_sign = masks
        .iter()
        .map(|&mask| {
            let k = mask.count_ones() as usize;
            if (k * (k + 1) / 2).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    BladeTable {
        masks,
        index_of,
        product,
        conj_sign,
    }
}

fn table(m: usize) -> &'static BladeTable {
    static TABLES: [OnceLock<BladeTable>; MAX_DIM] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    assert!((1..=MAX_DIM).contains(&m), "dimension m out of range");
    TABLES[m - 1].get_or_init(|| build_table(m))
}

fn check_dim(m: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&m) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(m))
    }
}

/// Element of Cl_m as 2^m blade coefficients in graded-lexicographic order.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(m: usize) -> Self {
        check_dim(m).expect("dimension in range");
        Multivector {
            dim: m,
            coeffs: vec![0.0; 1 << m],
        }
    }

    pub fn scalar(m: usize, value: f64) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[0] = value;
        out
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, 1.0)
    }

    /// e_i for 1 <= i <= m.
    pub fn basis_vector(m: usize, i: usize) -> Self {
        assert!((1..=m).contains(&i), "generator index out of range");
        let mut out = Self::zero(m);
        let idx = table(m).index_of[1usize << (i - 1)];
        out.coeffs[idx] = 1.0;
        out
    }

    /// Basis blade e_A for a set of generator indices (1-based, distinct).
    pub fn basis_blade(m: usize, indices: &[usize]) -> Self {
        let mut mask = 0u16;
        for &i in indices {
            assert!((1..=m).contains(&i), "generator index out of range");
            assert!(mask & (1 << (i - 1)) == 0, "repeated generator index");
            mask |= 1 << (i - 1);
        }
        let mut out = Self::zero(m);
        out.coeffs[table(m).index_of[mask as usize]] = 1.0;
        out
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(m)?;
        if coeffs.len() != 1 << m {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for Cl_{m}, got {}",
                1 << m,
                coeffs.len()
            )));
        }
        Ok(Multivector { dim: m, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients in canonical blade order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Coefficient of the blade with the given 1-based generator indices.
    pub fn blade_coeff(&self, indices: &[usize]) -> f64 {
        let mut mask = 0u16;
        for &i in indices {
            mask |= 1 << (i - 1);
        }
        self.coeffs[table(self.dim).index_of[mask as usize]]
    }

    /// Grade-k part; summing the parts over k = 0..=m reproduces the element.
    pub fn grade_part(&self, k: usize) -> Self {
        let tab = table(self.dim);
        let mut out = Self::zero(self.dim);
        for (idx, &mask) in tab.masks.iter().enumerate() {
            if mask.count_ones() as usize == k {
                out.coeffs[idx] = self.coeffs[idx];
            }
        }
        out
    }

    /// Clifford conjugation: blade e_A scaled by (-1)^{|A|(|A|+1)/2}.
    pub fn conjugate(&self) -> Self {
        let tab = table(self.dim);
        let coeffs = self
            .coeffs
            .iter()
            .zip(tab.conj_sign.iter())
            .map(|(c, s)| c * s)
            .collect();
        Multivector {
            dim: self.dim,
            coeffs,
        }
    }

    /// Coefficient norm (Σ_A x_A²)^{1/2}.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Checked geometric product; errors on mismatched algebras.
    pub fn geometric_product(&self, rhs: &Multivector) -> Result<Multivector> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Multivector) -> Multivector {
        let tab = table(self.dim);
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let row = &tab.product[i * n..(i + 1) * n];
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (target, sign) = row[j];
                out[target] += sign * a * b;
            }
        }
        Multivector {
            dim: self.dim,
            coeffs: out,
        }
    }

    /// In-place self += s * rhs. Hot-path helper for quadrature sums.
    pub fn axpy(&mut self, s: f64, rhs: &Multivector) {
        debug_assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += s * b;
        }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tab = table(self.dim);
        let mut wrote = false;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            let mask = tab.masks[idx];
            if mask == 0 {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}e", c.abs())?;
                for i in 1..=self.dim {
                    if mask & (1 << (i - 1)) != 0 {
                        write!(f, "{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "algebra dimension mismatch");
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "algebra dimension mismatch");
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Unchecked product; panics on mismatched algebras. Use
/// [`Multivector::geometric_product`] when the dimensions are not known to
/// agree.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "algebra dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

/// Scalar-plus-vector element x_0 + x̲, identified with a point of R^{m+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector {
    dim: usize,
    pub scalar: f64,
    pub vector: Vec<f64>,
}

impl Paravector {
    pub fn new(scalar: f64, vector: Vec<f64>) -> Result<Self> {
        check_dim(vector.len())?;
        Ok(Paravector {
            dim: vector.len(),
            scalar,
            vector,
        })
    }

    pub fn real(m: usize, value: f64) -> Self {
        Paravector {
            dim: m,
            scalar: value,
            vector: vec![0.0; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// |x̲|, the length of the 1-vector part.
    pub fn vector_norm(&self) -> f64 {
        self.vector.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.scalar * self.scalar + self.vector.iter().map(|c| c * c).sum::<f64>()).sqrt()
    }

    /// Clifford conjugation restricted to paravectors: x_0 - x̲.
    pub fn conjugate(&self) -> Self {
        Paravector {
            dim: self.dim,
            scalar: self.scalar,
            vector: self.vector.iter().map(|c| -c).collect(),
        }
    }

    /// conj(p) / |p|²; the two-sided inverse of a nonzero paravector.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.scalar * self.scalar + self.vector.iter().map(|c| c * c).sum::<f64>();
        if n2 == 0.0 {
            return Err(Error::SingularInput(
                "cannot invert the zero paravector".into(),
            ));
        }
        Ok(Paravector {
            dim: self.dim,
            scalar: self.scalar / n2,
            vector: self.vector.iter().map(|c| -c / n2).collect(),
        })
    }

    /// The paravector square q² = (q_0² - |q̲|²) + 2 q_0 q̲, again a paravector.
    pub fn square(&self) -> Self {
        let v2: f64 = self.vector.iter().map(|c| c * c).sum();
        Paravector {
            dim: self.dim,
            scalar: self.scalar * self.scalar - v2,
            vector: self.vector.iter().map(|c| 2.0 * self.scalar * c).collect(),
        }
    }

    pub fn add(&self, rhs: &Paravector) -> Paravector {
        debug_assert_eq!(self.dim, rhs.dim);
        Paravector {
            dim: self.dim,
            scalar: self.scalar + rhs.scalar,
            vector: self
                .vector
                .iter()
                .zip(rhs.vector.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Paravector) -> Paravector {
        debug_assert_eq!(self.dim, rhs.dim);
        Paravector {
            dim: self.dim,
            scalar: self.scalar - rhs.scalar,
            vector: self
                .vector
                .iter()
                .zip(rhs.vector.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Paravector {
        Paravector {
            dim: self.dim,
            scalar: self.scalar * s,
            vector: self.vector.iter().map(|c| c * s).collect(),
        }
    }

    /// Geometric product of two paravectors; grades 0, 1 and 2 in general.
    pub fn product(&self, rhs: &Paravector) -> Multivector {
        &self.to_multivector() * &rhs.to_multivector()
    }

    /// Lossless embedding into the full algebra (grades 0 and 1).
    pub fn to_multivector(&self) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        out.coeffs[0] = self.scalar;
        let tab = table(self.dim);
        for (i, &c) in self.vector.iter().enumerate() {
            out.coeffs[tab.index_of[1 << i]] = c;
        }
        out
    }

    /// Slice coordinates x = u + I_x v with u = x_0, v = |x̲| >= 0 and
    /// I = x̲/v. Real-axis points (v = 0) return `None` for the direction;
    /// callers that require I must reject them.
    pub fn slice_coordinates(&self) -> (f64, f64, Option<UnitVector>) {
        let v = self.vector_norm();
        if v == 0.0 {
            return (self.scalar, 0.0, None);
        }
        let dir = UnitVector::new(self.vector.iter().map(|c| c / v).collect())
            .expect("normalized direction is unit");
        (self.scalar, v, Some(dir))
    }

    /// Assemble u + I v from slice coordinates.
    pub fn from_slice_coords(u: f64, v: f64, dir: &UnitVector) -> Paravector {
        Paravector {
            dim: dir.dim(),
            scalar: u,
            vector: dir.components().iter().map(|c| c * v).collect(),
        }
    }
}

impl fmt::Display for Paravector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multivector())
    }
}

/// Point of the unit sphere S ⊂ R^m selecting a slice plane C_I.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    components: Vec<f64>,
}

impl UnitVector {
    /// Accepts a vector whose Euclidean norm is 1 within 1e-12.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        check_dim(components.len())?;
        let n = components.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "unit vector norm {n} deviates from 1 by more than 1e-12"
            )));
        }
        Ok(UnitVector { components })
    }

    /// Normalizes a nonzero vector.
    pub fn from_direction(direction: &[f64]) -> Result<Self> {
        check_dim(direction.len())?;
        let n = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(Error::SingularInput(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(UnitVector {
            components: direction.iter().map(|c| c / n).collect(),
        })
    }

    /// e_i as a slice direction.
    pub fn axis(m: usize, i: usize) -> Self {
        assert!((1..=m).contains(&i));
        let mut components = vec![0.0; m];
        components[i - 1] = 1.0;
        UnitVector { components }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dot(&self, rhs: &UnitVector) -> f64 {
        self.components
            .iter()
            .zip(rhs.components.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn negate(&self) -> UnitVector {
        UnitVector {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    pub fn to_multivector(&self) -> Multivector {
        let m = self.dim();
        let mut out = Multivector::zero(m);
        let tab = table(m);
        for (i, &c) in self.components.iter().enumerate() {
            out.coeffs[tab.index_of[1 << i]] = c;
        }
        out
    }

    pub fn to_paravector(&self) -> Paravector {
        Paravector {
            dim: self.dim(),
            scalar: 0.0,
            vector: self.components.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_close(a: &Multivector, b: &Multivector, tol: f64) {
        let d = (a - b).norm();
        let scale = 1.0f64.max(a.norm()).max(b.norm());
        assert!(d <= tol * scale, "distance {d} vs {a} and {b}");
    }

    fn random_mv(rng: &mut StdRng, m: usize) -> Multivector {
        let coeffs = (0..1 << m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        Multivector::from_coeffs(m, coeffs).unwrap()
    }

    #[test]
    fn blade_order_is_graded_lexicographic() {
        // m = 4, grade 2: {1,2} {1,3} {1,4} {2,3} {2,4} {3,4}
        let tab = table(4);
        let grade2: Vec<u16> = tab
            .masks
            .iter()
            .copied()
            .filter(|mask| mask.count_ones() == 2)
            .collect();
        assert_eq!(grade2, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn defining_relations() {
        let m = 3;
        let e1 = Multivector::basis_vector(m, 1);
        let e2 = Multivector::basis_vector(m, 2);
        assert_close(&(&e1 * &e2), &Multivector::basis_blade(m, &[1, 2]), 1e-15);
        assert_close(&(&e1 * &e1), &Multivector::scalar(m, -1.0), 1e-15);
        let one = Multivector::one(m);
        let a = &one + &e1;
        let b = &one - &e1;
        assert_close(&(&a * &b), &Multivector::scalar(m, 2.0), 1e-15);
        // anticommutation for all pairs
        for i in 1..=m {
            for j in 1..=m {
                let ei = Multivector::basis_vector(m, i);
                let ej = Multivector::basis_vector(m, j);
                let anti = &(&ei * &ej) + &(&ej * &ei);
                let expect = Multivector::scalar(m, if i == j { -2.0 } else { 0.0 });
                assert_close(&anti, &expect, 1e-15);
            }
        }
    }

    #[test]
    fn conjugation_signs_and_antihomomorphism() {
        let m = 2;
        assert_close(
            &Multivector::scalar(m, 5.0).conjugate(),
            &Multivector::scalar(m, 5.0),
            1e-15,
        );
        assert_close(
            &Multivector::basis_vector(m, 1).conjugate(),
            &Multivector::basis_vector(m, 1).scale(-1.0),
            1e-15,
        );
        assert_close(
            &Multivector::basis_blade(m, &[1, 2]).conjugate(),
            &Multivector::basis_blade(m, &[1, 2]).scale(-1.0),
            1e-15,
        );
        let mut rng = StdRng::seed_from_u64(7);
        for m in 1..=4 {
            for _ in 0..50 {
                let a = random_mv(&mut rng, m);
                let b = random_mv(&mut rng, m);
                let left = (&a * &b).conjugate();
                let right = &b.conjugate() * &a.conjugate();
                assert_close(&left, &right, 1e-12);
            }
        }
    }

    #[test]
    fn associativity_randomized() {
        let mut rng = StdRng::seed_from_u64(11);
        for m in 1..=4 {
            for _ in 0..100 {
                let a = random_mv(&mut rng, m);
                let b = random_mv(&mut rng, m);
                let c = random_mv(&mut rng, m);
                assert_close(&(&(&a * &b) * &c), &(&a * &(&b * &c)), 1e-12);
            }
        }
    }

    #[test]
    fn grade_parts_reassemble() {
        let mut rng = StdRng::seed_from_u64(3);
        let a = random_mv(&mut rng, 3);
        let mut sum = Multivector::zero(3);
        for k in 0..=3 {
            sum = &sum + &a.grade_part(k);
        }
        assert_close(&sum, &a, 1e-15);
    }

    #[test]
    fn norm_examples() {
        let m = 2;
        let x = &Multivector::one(m) + &Multivector::basis_vector(m, 1);
        assert!((x.norm() - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(Multivector::zero(m).norm(), 0.0);
        let y = &Multivector::basis_blade(m, &[1, 2]) - &Multivector::basis_vector(m, 2);
        assert!((y.norm() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn paravector_inverse_examples() {
        let p = Paravector::new(2.0, vec![0.0, 0.0]).unwrap();
        let inv = p.inverse().unwrap();
        assert!((inv.scalar - 0.5).abs() < 1e-15);

        let e1 = Paravector::new(0.0, vec![1.0, 0.0]).unwrap();
        let inv = e1.inverse().unwrap();
        assert!((inv.vector[0] + 1.0).abs() < 1e-15);

        let p = Paravector::new(1.0, vec![1.0, 0.0]).unwrap();
        let inv = p.inverse().unwrap();
        assert!((inv.scalar - 0.5).abs() < 1e-15 && (inv.vector[0] + 0.5).abs() < 1e-15);

        assert!(Paravector::new(0.0, vec![0.0, 0.0])
            .unwrap()
            .inverse()
            .is_err());
    }

    #[test]
    fn paravector_inverse_randomized() {
        let mut rng = StdRng::seed_from_u64(17);
        for m in 1..=3 {
            for _ in 0..200 {
                let p = Paravector::new(
                    rng.gen_range(-2.0..2.0),
                    (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                )
                .unwrap();
                if p.norm() < 1e-6 {
                    continue;
                }
                let inv = p.inverse().unwrap();
                let lr = p.product(&inv);
                let rl = inv.product(&p);
                assert_close(&lr, &Multivector::one(m), 1e-12);
                assert_close(&rl, &Multivector::one(m), 1e-12);
                // |p|^2 equals the scalar p * conj(p)
                let pc = p.product(&p.conjugate());
                assert!((pc.scalar_part() - p.norm() * p.norm()).abs() < 1e-12);
                assert!((&pc - &Multivector::scalar(m, pc.scalar_part())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn slice_coordinates_examples() {
        let p = Paravector::new(1.0, vec![2.0, 0.0]).unwrap();
        let (u, v, dir) = p.slice_coordinates();
        assert_eq!((u, v), (1.0, 2.0));
        assert_eq!(dir.unwrap().components(), &[1.0, 0.0]);

        let (u, v, dir) = Paravector::real(2, 3.0).slice_coordinates();
        assert_eq!((u, v), (3.0, 0.0));
        assert!(dir.is_none());

        let p = Paravector::new(0.0, vec![1.0, 1.0]).unwrap();
        let (u, v, dir) = p.slice_coordinates();
        assert!(u == 0.0 && (v - 2.0f64.sqrt()).abs() < 1e-15);
        let d = dir.unwrap();
        let s = 0.5f64.sqrt();
        assert!((d.components()[0] - s).abs() < 1e-15 && (d.components()[1] - s).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Multivector::one(2);
        let b = Multivector::one(3);
        assert!(matches!(
            a.geometric_product(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn m1_is_the_complex_plane() {
        // (a + b e1)(c + d e1) = (ac - bd) + (ad + bc) e1
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            let (a, b, c, d): (f64, f64, f64, f64) = (
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            );
            let x = Paravector::new(a, vec![b]).unwrap().to_multivector();
            let y = Paravector::new(c, vec![d]).unwrap().to_multivector();
            let p = &x * &y;
            assert!((p.coeffs()[0] - (a * c - b * d)).abs() < 1e-12);
            assert!((p.coeffs()[1] - (a * d + b * c)).abs() < 1e-12);
        }
    }
}
