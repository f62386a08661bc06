//! Seeded random state generation for tests and the CLI scan command.
//!
//! All randomness flows through a ChaCha8 generator so runs are reproducible;
//! the QSE_SEED environment variable overrides the per-suite default seeds.

use crate::linalg::C64;
use crate::states::{QubitState, TwoQubitState};
use nalgebra::{Matrix4, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Seed from QSE_SEED if set, otherwise the caller's default.
pub fn env_seed(default: u64) -> u64 {
    std::env::var("QSE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// G G^dag / Tr(G G^dag) with G a 4x4 matrix of iid complex Gaussians.
/// This is the Hilbert-Schmidt measure on density matrices.
pub fn ginibre<R: Rng>(rng: &mut R) -> Matrix4<C64> {
    let g = Matrix4::from_fn(|_, _| complex_gaussian(rng));
    let gg = g * g.adjoint();
    let tr = gg.trace();
    gg / tr
}

pub fn random_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    TwoQubitState::new(ginibre(rng)).expect("Ginibre sample is a valid state")
}

/// Rejection-samples until the partial transpose has a negative eigenvalue.
pub fn random_entangled_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    loop {
        let st = random_state(rng);
        if st.entanglement().entangled {
            return st;
        }
    }
}

/// Convex mixture of `terms` random product states. PPT-positive by
/// construction.
pub fn random_separable_state<R: Rng>(rng: &mut R, terms: usize) -> TwoQubitState {
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut m = Matrix4::zeros();
    for w in weights {
        let a = random_qubit(rng);
        let b = random_qubit(rng);
        m += a.matrix().kronecker(b.matrix()) * C64::new(w, 0.0);
    }
    TwoQubitState::new(m).expect("product mixture is a valid state")
}

pub fn random_qubit<R: Rng>(rng: &mut R) -> QubitState {
    let r: f64 = rng.gen_range(0.0..1.0f64).cbrt();
    QubitState::from_bloch(random_unit_vector(rng) * r).expect("|v| < 1")
}

pub fn random_unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    loop {
        let x: f64 = StandardNormal.sample(rng);
        let y: f64 = StandardNormal.sample(rng);
        let z: f64 = StandardNormal.sample(rng);
        let v = Vector3::new(x, y, z);
        let n = v.norm();
        if n > 1e-6 {
            return v / n;
        }
    }
}

/// Haar-like random 4x4 unitary from the QR decomposition of a Ginibre
/// matrix, with the R diagonal phases folded in.
pub fn random_unitary4<R: Rng>(rng: &mut R) -> Matrix4<C64> {
    let g = Matrix4::from_fn(|_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..4 {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / C64::new(d.norm(), 0.0);
            for row in 0..4 {
                q[(row, k)] *= phase;
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ginibre_states_are_valid_and_spread() {
        let mut rng = seeded_rng(env_seed(21));
        let mut purities = Vec::new();
        for _ in 0..100 {
            let st = random_state(&mut rng);
            let p = st.purity();
            assert!((0.25..=1.0 + 1e-12).contains(&p));
            purities.push(p);
        }
        let mean = purities.iter().sum::<f64>() / purities.len() as f64;
        assert!(mean > 0.3 && mean < 0.6, "mean purity {mean}");
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded_rng(env_seed(22));
        for _ in 0..20 {
            let u = random_unitary4(&mut rng);
            let dev = (u.adjoint() * u - Matrix4::identity()).norm();
            assert!(dev < 1e-12, "unitarity deviation {dev}");
        }
    }

    #[test]
    fn entangled_sampler_returns_entangled() {
        let mut rng = seeded_rng(env_seed(23));
        for _ in 0..20 {
            assert!(random_entangled_state(&mut rng).entanglement().entangled);
        }
    }

    #[test]
    fn same_seed_same_state() {
        let a = random_state(&mut seeded_rng(7));
        let b = random_state(&mut seeded_rng(7));
        assert_eq!(a.matrix(), b.matrix());
    }
}
