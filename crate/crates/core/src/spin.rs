//! Spin observables: Paulis, single-particle embeddings and the named
//! multi-particle operators used by the scenarios.
//!
//! Labels use ASCII (`sx(2)`, `pi(1+2)`, `A1`) so reports stay greppable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hilbert::{extend_operator, Observable, Operator, StateVector, Tensor, C64};

/// Most particles any operator here may act on (dimension 16).
pub const MAX_PARTICLES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

pub(crate) fn pauli_matrix(axis: Axis) -> Operator {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entries = match axis {
        Axis::X => [z, one, one, z],
        // σy|+⟩ = i|−⟩, σy|−⟩ = −i|+⟩
        Axis::Y => [z, -i, i, z],
        Axis::Z => [one, z, z, -one],
    };
    Operator::new(2, entries.to_vec()).expect("2x2")
}

/// Single-qubit Pauli observable.
pub fn pauli(axis: Axis) -> Observable {
    Observable::labeled(format!("s{}", axis.name()), pauli_matrix(axis))
        .expect("Pauli is Hermitian")
}

fn check_particle(particle: usize, count: usize) -> Result<()> {
    if count == 0 || count > MAX_PARTICLES || particle == 0 || particle > count {
        return Err(Error::ParticleOutOfRange { particle, count });
    }
    Ok(())
}

/// Places a one-qubit observable on `particle` (1-based) of `count` particles.
pub fn embed(op: &Observable, particle: usize, count: usize) -> Result<Observable> {
    check_particle(particle, count)?;
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: 2,
        });
    }
    let full = extend_operator(op.operator(), &[particle], count)?;
    let label = if op.label().is_empty() {
        String::new()
    } else {
        format!("{}({particle})", op.label())
    };
    Observable::labeled(label, full)
}

/// `σ_axis` on one particle of `count`.
pub fn pauli_on(axis: Axis, particle: usize, count: usize) -> Result<Observable> {
    embed(&pauli(axis), particle, count)
}

/// Product of Paulis on distinct particles, e.g. `[(2, X), (3, Y)]` for `σx⁽²⁾σy⁽³⁾`.
pub fn pauli_product(factors: &[(usize, Axis)], count: usize) -> Result<Observable> {
    if factors.is_empty() {
        return Err(Error::EmptyObservableSet);
    }
    let mut particles = Vec::with_capacity(factors.len());
    let mut local: Option<Operator> = None;
    let mut label = String::new();
    for &(particle, axis) in factors {
        check_particle(particle, count)?;
        if particles.contains(&particle) {
            return Err(Error::ParticleOutOfRange { particle, count });
        }
        particles.push(particle);
        let m = pauli_matrix(axis);
        local = Some(match local {
            None => m,
            Some(acc) => acc.tensor(&m),
        });
        label.push_str(&format!("s{}({particle})", axis.name()));
    }
    let full = extend_operator(&local.expect("nonempty"), &particles, count)?;
    Observable::labeled(label, full)
}

/// `𝟙 − |−−⟩⟨−−|` on two particles: eigenvalue 1 (rank 3) and 0 (rank 1).
pub fn hardy_projector() -> Observable {
    let minus_minus = StateVector::basis(4, 3).expect("dim 4");
    let op = &Operator::identity(4).expect("dim 4")
        - &Operator::outer(&minus_minus, &minus_minus).expect("dim 4");
    Observable::labeled("pi(1+2)", op).expect("projector is Hermitian")
}

/// The two-particle projector acting on particles 1 and 2 of a three-particle
/// system, `hardy_projector() ⊗ 𝟙`.
pub fn hardy_projector_3() -> Observable {
    let op = hardy_projector()
        .operator()
        .tensor(&Operator::identity(2).expect("dim 2"));
    Observable::labeled("pi(1+2)", op).expect("projector is Hermitian")
}

fn check_index(j: usize) -> Result<()> {
    if !(1..=3).contains(&j) {
        return Err(Error::IndexOutOfRange(j));
    }
    Ok(())
}

/// `A1 = σx⁽²⁾σy⁽³⁾`, `A2 = σy⁽¹⁾σx⁽³⁾`, `A3 = σx⁽¹⁾σy⁽²⁾` on three particles.
pub fn mermin_a(j: usize) -> Result<Observable> {
    check_index(j)?;
    let factors = match j {
        1 => [(2, Axis::X), (3, Axis::Y)],
        2 => [(1, Axis::Y), (3, Axis::X)],
        _ => [(1, Axis::X), (2, Axis::Y)],
    };
    Ok(pauli_product(&factors, 3)?.with_label(format!("A{j}")))
}

/// `B_j` is `σy ⊗ σy` on the two particles other than `j`.
pub fn mermin_b(j: usize) -> Result<Observable> {
    check_index(j)?;
    let others: Vec<(usize, Axis)> = (1..=3).filter(|&k| k != j).map(|k| (k, Axis::Y)).collect();
    Ok(pauli_product(&others, 3)?.with_label(format!("B{j}")))
}

/// Particles (1-based) that `mermin_a(j)` / `mermin_b(j)` act on.
pub fn complement_of(j: usize) -> [usize; 2] {
    match j {
        1 => [2, 3],
        2 => [1, 3],
        _ => [1, 2],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::has_common_eigenstate;

    fn ket(s: &str) -> StateVector {
        crate::states::ket(s).unwrap()
    }

    fn commutes(a: &Observable, b: &Observable) -> bool {
        a.operator().commutator(b.operator()).unwrap().max_abs() < 1e-10
    }

    #[test]
    fn pauli_action_on_basis() {
        let plus = ket("+");
        let minus = ket("-");
        let i = C64::new(0.0, 1.0);
        assert_eq!(pauli(Axis::Z).operator().apply(&plus).unwrap(), plus);
        assert_eq!(pauli(Axis::X).operator().apply(&plus).unwrap(), minus);
        assert_eq!(
            pauli(Axis::Y).operator().apply(&plus).unwrap(),
            minus.scale(i)
        );
        assert_eq!(
            pauli(Axis::Y).operator().apply(&minus).unwrap(),
            plus.scale(-i)
        );
    }

    #[test]
    fn pauli_algebra() {
        let x = pauli(Axis::X);
        let y = pauli(Axis::Y);
        let z = pauli(Axis::Z);
        assert_eq!(x.operator() * x.operator(), Operator::identity(2).unwrap());
        let comm = x.operator().commutator(y.operator()).unwrap();
        assert_eq!(comm, z.operator().scale(C64::new(0.0, 2.0)));
    }

    #[test]
    fn embedding_follows_bit_order() {
        let z = pauli(Axis::Z);
        assert_eq!(
            *embed(&z, 1, 2).unwrap().operator(),
            Operator::diagonal(&[1.0, 1.0, -1.0, -1.0]).unwrap()
        );
        assert_eq!(
            *embed(&z, 2, 2).unwrap().operator(),
            Operator::diagonal(&[1.0, -1.0, 1.0, -1.0]).unwrap()
        );
        assert_eq!(embed(&z, 2, 3).unwrap().label(), "sz(2)");
        assert!(commutes(
            &pauli_on(Axis::X, 3, 3).unwrap(),
            &pauli_on(Axis::Y, 1, 3).unwrap()
        ));
    }

    #[test]
    fn embedding_range_errors() {
        let z = pauli(Axis::Z);
        assert!(matches!(
            embed(&z, 0, 3),
            Err(Error::ParticleOutOfRange { .. })
        ));
        assert!(matches!(
            embed(&z, 4, 3),
            Err(Error::ParticleOutOfRange { .. })
        ));
        assert!(matches!(
            embed(&z, 1, 5),
            Err(Error::ParticleOutOfRange { .. })
        ));
        assert!(pauli_product(&[(1, Axis::X), (1, Axis::Z)], 2).is_err());
    }

    #[test]
    fn hardy_projector_structure() {
        let pi = hardy_projector();
        assert!(pi.operator().apply(&ket("--")).unwrap().norm_sqr() < 1e-30);
        assert_eq!(pi.operator().apply(&ket("++")).unwrap(), ket("++"));
        assert!(pi.operator().is_projector(1e-12));
        assert_eq!(pi.eigenvalues().len(), 2);
        assert!(pi.eigenvalues()[0].abs() < 1e-12 && (pi.eigenvalues()[1] - 1.0).abs() < 1e-12);
        assert_eq!(pi.spectrum().multiplicities(), alloc::vec![1, 3]);
    }

    #[test]
    fn hardy_projector_compatibility() {
        let pi = hardy_projector();
        assert!(commutes(&pi, &pauli_on(Axis::Z, 1, 2).unwrap()));
        assert!(commutes(&pi, &pauli_on(Axis::Z, 2, 2).unwrap()));
        assert!(!commutes(&pi, &pauli_on(Axis::X, 1, 2).unwrap()));
        assert!(!commutes(&pi, &pauli_on(Axis::X, 2, 2).unwrap()));
    }

    #[test]
    fn mermin_a_properties() {
        let a1 = mermin_a(1).unwrap();
        assert!(commutes(&a1, &pauli_on(Axis::Y, 1, 3).unwrap()));
        let a3 = mermin_a(3).unwrap();
        assert_eq!(
            a3.operator() * a3.operator(),
            Operator::identity(8).unwrap()
        );
        assert_eq!(a1.spectrum().multiplicities(), alloc::vec![4, 4]);
        assert!(!has_common_eigenstate(&[a1, mermin_a(2).unwrap()]).unwrap());
        assert_eq!(mermin_a(0).unwrap_err(), Error::IndexOutOfRange(0));
        assert_eq!(mermin_a(4).unwrap_err(), Error::IndexOutOfRange(4));
    }

    #[test]
    fn mermin_b_properties() {
        let b: Vec<Observable> = (1..=3).map(|j| mermin_b(j).unwrap()).collect();
        let product = &(b[0].operator() * b[1].operator()) * b[2].operator();
        assert!(
            product
                .max_abs_diff(&Operator::identity(8).unwrap())
                .unwrap()
                < 1e-12
        );
        for i in 0..3 {
            for j in 0..3 {
                assert!(commutes(&b[i], &b[j]));
            }
        }
        // σy⁽¹⁾σy⁽³⁾|+++⟩ = i·i|−+−⟩
        let image = b[1].operator().apply(&ket("+++")).unwrap();
        assert!(
            image
                .max_abs_diff(&ket("-+-").scale(C64::new(-1.0, 0.0)))
                .unwrap()
                < 1e-15
        );
        assert_eq!(mermin_b(7).unwrap_err(), Error::IndexOutOfRange(7));
    }

    #[test]
    fn named_operators_are_hermitian_involutions() {
        let id8 = Operator::identity(8).unwrap();
        let mut ops: Vec<Observable> = (1..=3)
            .flat_map(|j| [mermin_a(j).unwrap(), mermin_b(j).unwrap()])
            .collect();
        for axis in Axis::ALL {
            for p in 1..=3 {
                ops.push(pauli_on(axis, p, 3).unwrap());
            }
        }
        for op in ops {
            assert!(op.operator().is_hermitian(1e-12));
            assert!((op.operator() * op.operator()).max_abs_diff(&id8).unwrap() < 1e-12);
        }
        let pi3 = hardy_projector_3();
        assert!(pi3.operator().is_projector(1e-12));
    }
}
