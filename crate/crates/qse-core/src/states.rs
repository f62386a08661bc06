//! Two-qubit state model: validation, Pauli decomposition, reduced states,
//! purity, the Peres-Horodecki entanglement test, and steering-equivalent
//! observables.
//!
//! Basis order is |00>, |01>, |10>, |11> throughout (row index 2i + j with
//! i Alice's bit, j Bob's bit). The Pauli form is
//!   rho = (I(x)I + a.sigma(x)I + I(x)b.sigma + sum_ij T_ij sigma_i(x)sigma_j) / 4
//! with a, b the local Bloch vectors and T the spin-correlation matrix.

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::tol;
use nalgebra::{Matrix2, Matrix3, Matrix4, Vector2, Vector3};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Alice => write!(f, "alice"),
            Party::Bob => write!(f, "bob"),
        }
    }
}

pub fn identity2() -> Matrix2<C64> {
    Matrix2::identity()
}

/// The Pauli matrices sigma_x, sigma_y, sigma_z.
pub fn paulis() -> [Matrix2<C64>; 3] {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(o, l, l, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(l, o, o, -l),
    ]
}

/// n.sigma for a real 3-vector n.
pub fn dot_sigma(n: &Vector3<f64>) -> Matrix2<C64> {
    let s = paulis();
    s[0] * C64::new(n[0], 0.0) + s[1] * C64::new(n[1], 0.0) + s[2] * C64::new(n[2], 0.0)
}

/// Bloch vectors a, b and correlation matrix T of a two-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliDecomposition {
    pub a: Vector3<f64>,
    pub b: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl PauliDecomposition {
    /// Tr(rho^2) expressed through the decomposition:
    /// (1 + |a|^2 + |b|^2 + ||T||_F^2) / 4.
    pub fn purity(&self) -> f64 {
        0.25 * (1.0 + self.a.norm_squared() + self.b.norm_squared() + self.t.norm_squared())
    }

    /// The decomposition of the qubit-swapped state: a <-> b, T -> T^t.
    pub fn swap_parties(&self) -> Self {
        PauliDecomposition {
            a: self.b,
            b: self.a,
            t: self.t.transpose(),
        }
    }

    /// Bloch vector of the given party's marginal.
    pub fn marginal_bloch(&self, party: Party) -> Vector3<f64> {
        match party {
            Party::Alice => self.a,
            Party::Bob => self.b,
        }
    }
}

/// Result of the partial-transpose test. Exact for two qubits.
#[derive(Debug, Clone, Copy)]
pub struct EntanglementReport {
    pub entangled: bool,
    /// |sum of negative partial-transpose eigenvalues|.
    pub negativity: f64,
    pub min_pt_eigenvalue: f64,
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    rho: Matrix4<C64>,
}

impl TwoQubitState {
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
    /// (smallest eigenvalue >= -1e-10), then stores the Hermitian part.
    pub fn new(matrix: Matrix4<C64>) -> Result<Self> {
        let adj = matrix.adjoint();
        let dev = (matrix - adj)
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let rho = (matrix + adj) * C64::new(0.5, 0.0);
        let tr = rho.trace();
        let tr_dev = (tr - C64::new(1.0, 0.0)).norm();
        if tr_dev > tol::UNIT_TRACE {
            return Err(Error::NotUnitTrace { deviation: tr_dev });
        }
        let evs = linalg::herm_eigvals4(&rho);
        if evs[0] < tol::PSD_EIGENVALUE {
            return Err(Error::NotPositive { eigenvalue: evs[0] });
        }
        Ok(TwoQubitState { rho })
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.rho
    }

    /// Assembles the state from Pauli data and validates it.
    pub fn from_pauli(d: &PauliDecomposition) -> Result<Self> {
        let s = paulis();
        let id = identity2();
        let mut m = id.kronecker(&id);
        for i in 0..3 {
            m += s[i].kronecker(&id) * C64::new(d.a[i], 0.0);
            m += id.kronecker(&s[i]) * C64::new(d.b[i], 0.0);
            for j in 0..3 {
                m += s[i].kronecker(&s[j]) * C64::new(d.t[(i, j)], 0.0);
            }
        }
        TwoQubitState::new(m * C64::new(0.25, 0.0))
    }

    /// a_i = Tr[(sigma_i (x) I) rho], b_j = Tr[(I (x) sigma_j) rho],
    /// T_ij = Tr[(sigma_i (x) sigma_j) rho].
    pub fn pauli(&self) -> PauliDecomposition {
        let s = paulis();
        let id = identity2();
        let mut a = Vector3::zeros();
        let mut b = Vector3::zeros();
        let mut t = Matrix3::zeros();
        for i in 0..3 {
            a[i] = (s[i].kronecker(&id) * self.rho).trace().re;
            b[i] = (id.kronecker(&s[i]) * self.rho).trace().re;
            for j in 0..3 {
                t[(i, j)] = (s[i].kronecker(&s[j]) * self.rho).trace().re;
            }
        }
        PauliDecomposition { a, b, t }
    }

    /// Partial trace over the other party.
    pub fn reduced(&self, party: Party) -> QubitState {
        let mut m = Matrix2::zeros();
        match party {
            Party::Alice => {
                for i in 0..2 {
                    for k in 0..2 {
                        m[(i, k)] = self.rho[(2 * i, 2 * k)] + self.rho[(2 * i + 1, 2 * k + 1)];
                    }
                }
            }
            Party::Bob => {
                for j in 0..2 {
                    for l in 0..2 {
                        m[(j, l)] = self.rho[(j, l)] + self.rho[(2 + j, 2 + l)];
                    }
                }
            }
        }
        QubitState { m }
    }

    /// Tr(rho^2), in [1/4, 1].
    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }

    /// Transpose of Bob's indices: PT[2i+j, 2k+l] = rho[2i+l, 2k+j].
    pub fn partial_transpose(&self) -> Matrix4<C64> {
        let mut pt = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        pt[(2 * i + j, 2 * k + l)] = self.rho[(2 * i + l, 2 * k + j)];
                    }
                }
            }
        }
        pt
    }

    /// Peres-Horodecki test: entangled iff the partial transpose has an
    /// eigenvalue below -1e-10.
    pub fn entanglement(&self) -> EntanglementReport {
        let evs = linalg::herm_eigvals4(&self.partial_transpose());
        let negativity: f64 = evs.iter().filter(|&&v| v < 0.0).map(|v| -v).sum();
        EntanglementReport {
            entangled: evs[0] < tol::PPT_NEGATIVE,
            negativity,
            min_pt_eigenvalue: evs[0],
        }
    }

    /// The state with the two qubits exchanged.
    pub fn swap_parties(&self) -> TwoQubitState {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m[(2 * j + i, 2 * l + k)] = self.rho[(2 * i + j, 2 * k + l)];
                    }
                }
            }
        }
        TwoQubitState { rho: m }
    }
}

/// A validated single-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState {
    m: Matrix2<C64>,
}

impl QubitState {
    pub fn new(matrix: Matrix2<C64>) -> Result<Self> {
        let adj = matrix.adjoint();
        let dev = (matrix - adj)
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if dev > tol::HERMITICITY {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let m = (matrix + adj) * C64::new(0.5, 0.0);
        let tr_dev = (m.trace() - C64::new(1.0, 0.0)).norm();
        if tr_dev > tol::UNIT_TRACE {
            return Err(Error::NotUnitTrace { deviation: tr_dev });
        }
        let (vals, _) = linalg::herm_eigen2(&m);
        if vals[0] < tol::PSD_EIGENVALUE {
            return Err(Error::NotPositive { eigenvalue: vals[0] });
        }
        Ok(QubitState { m })
    }

    /// rho = (I + v.sigma)/2; |v| may exceed 1 only within the global PSD slack.
    pub fn from_bloch(v: Vector3<f64>) -> Result<Self> {
        let min_eig = 0.5 * (1.0 - v.norm());
        if min_eig < tol::PSD_EIGENVALUE {
            return Err(Error::NotPositive { eigenvalue: min_eig });
        }
        let m = (identity2() + dot_sigma(&v)) * C64::new(0.5, 0.0);
        Ok(QubitState { m })
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.m
    }

    pub fn bloch(&self) -> Vector3<f64> {
        let s = paulis();
        Vector3::new(
            (s[0] * self.m).trace().re,
            (s[1] * self.m).trace().re,
            (s[2] * self.m).trace().re,
        )
    }

    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    /// <psi|rho|psi> for a normalized ket.
    pub fn fidelity_with_pure(&self, ket: &Vector2<C64>) -> f64 {
        (ket.adjoint() * self.m * ket)[(0, 0)].re
    }

    /// Eigenvector of the larger eigenvalue, with the first significant
    /// component rotated to the positive real axis.
    pub fn dominant_ket(&self) -> Vector2<C64> {
        let (_, vecs) = linalg::herm_eigen2(&self.m);
        let mut ket = vecs.column(1).into_owned();
        for k in 0..2 {
            if ket[k].norm() > 1e-8 {
                let phase = ket[k] / C64::new(ket[k].norm(), 0.0);
                ket *= phase.conj();
                break;
            }
        }
        ket
    }

    /// rho^(-1/2) via eigendecomposition.
    pub(crate) fn inv_sqrt(&self, party: Party) -> Result<Matrix2<C64>> {
        let (vals, vecs) = linalg::herm_eigen2(&self.m);
        if vals[0] <= tol::MARGINAL_EIGENVALUE {
            return Err(Error::SingularMarginal {
                party,
                eigenvalue: vals[0],
            });
        }
        let d = Matrix2::from_diagonal(&Vector2::new(
            C64::new(1.0 / vals[0].sqrt(), 0.0),
            C64::new(1.0 / vals[1].sqrt(), 0.0),
        ));
        Ok(vecs * d * vecs.adjoint())
    }
}

/// Ket for the pure state with unit Bloch vector v (first significant
/// amplitude real positive).
pub fn ket_from_bloch(v: &Vector3<f64>) -> Vector2<C64> {
    // rho = (I + v.sigma)/2 is rank one; its range is the ket
    let proj = (identity2() + dot_sigma(v)) * C64::new(0.5, 0.0);
    let (vals, vecs) = linalg::herm_eigen2(&proj);
    debug_assert!(vals[1] > 0.5);
    let mut ket = vecs.column(1).into_owned();
    for k in 0..2 {
        if ket[k].norm() > 1e-8 {
            let phase = ket[k] / C64::new(ket[k].norm(), 0.0);
            ket *= phase.conj();
            break;
        }
    }
    ket
}

/// Steering-equivalent observables B_{r|s} = rho_B^(-1/2) sigma_{r|s} rho_B^(-1/2)
/// for an assemblage given as (probability, normalized conditional state)
/// pairs per setting. Each setting must sum back to the marginal.
pub fn steering_equivalent_observables(
    assemblage: &[Vec<(f64, QubitState)>],
    rho_b: &QubitState,
) -> Result<Vec<Vec<Matrix2<C64>>>> {
    let s = rho_b.inv_sqrt(Party::Bob)?;
    let mut out = Vec::with_capacity(assemblage.len());
    for setting in assemblage {
        let mut sum = Matrix2::zeros();
        for (p, st) in setting {
            sum += st.matrix() * C64::new(*p, 0.0);
        }
        let dev = (sum - rho_b.matrix())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if dev > tol::ASSEMBLAGE_SUM {
            return Err(Error::InconsistentAssemblage { deviation: dev });
        }
        let effects = setting
            .iter()
            .map(|(p, st)| {
                let b = s * (st.matrix() * C64::new(*p, 0.0)) * s;
                (b + b.adjoint()) * C64::new(0.5, 0.0)
            })
            .collect();
        out.push(effects);
    }
    Ok(out)
}
