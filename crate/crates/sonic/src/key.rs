use zkclaim_algebra::{Fr, PairingCurve};
use zkclaim_pcs::{rkzg_commit, Commitment, Srs, VerifierKey};
use zkclaim_scs::ConstraintSystem;

use crate::error::SonicError;
use crate::transcript::Transcript;

/// Where the data sequences sit in the multiplication slots:
/// `a = (ã, d_1, …, d_J)` with `d_{j,t}` at slot `offset_j + t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DataLayout {
    pub n_core: usize,
    pub lengths: Vec<usize>,
}

impl DataLayout {
    pub fn new(n_core: usize, lengths: Vec<usize>) -> Self {
        Self { n_core, lengths }
    }

    pub fn without_data(n: usize) -> Self {
        Self { n_core: n, lengths: Vec::new() }
    }

    pub fn sources(&self) -> usize {
        self.lengths.len()
    }

    pub fn data_len(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn total(&self) -> usize {
        self.n_core + self.data_len()
    }

    /// `offset_j = N_core + Σ_{j′<j} m_{j′}` (0-based `j`).
    pub fn offset(&self, j: usize) -> usize {
        self.n_core + self.lengths[..j].iter().sum::<usize>()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = (self.n_core as u64).to_be_bytes().to_vec();
        out.extend_from_slice(&(self.lengths.len() as u32).to_be_bytes());
        for m in &self.lengths {
            out.extend_from_slice(&(*m as u64).to_be_bytes());
        }
        out
    }
}

/// Public verification input for one circuit: the main verifier key and
/// the commitments `S_Y = Com(s[1,Y])`, `K = Com(k̂[Y])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitKey<E: PairingCurve> {
    pub vk: VerifierKey<E>,
    pub s_y: Commitment<E>,
    pub k: Commitment<E>,
    pub layout: DataLayout,
}

impl<E: PairingCurve> CircuitKey<E> {
    pub(crate) fn absorb_into(&self, tr: &mut Transcript) {
        tr.absorb("layout", &self.layout.to_bytes());
        tr.absorb_point::<E>("S_Y", &self.s_y.point);
        tr.absorb_point::<E>("K", &self.k.point);
    }
}

pub(crate) fn check_degree<E: PairingCurve>(srs: &Srs<E>, cs: &ConstraintSystem<Fr<E>>) -> Result<(), SonicError> {
    let need = cs.required_degree();
    if srs.degree() < need {
        return Err(SonicError::DegreeTooSmall { need, have: srs.degree() });
    }
    Ok(())
}

/// Commit to the public polynomials of `cs`.
pub fn preprocess<E: PairingCurve>(
    srs: &Srs<E>,
    cs: &ConstraintSystem<Fr<E>>,
    layout: DataLayout,
) -> Result<CircuitKey<E>, SonicError> {
    check_degree(srs, cs)?;
    if layout.total() != cs.n() {
        return Err(SonicError::LayoutMismatch(format!(
            "layout covers {} slots, system has {}",
            layout.total(),
            cs.n()
        )));
    }
    let sk = cs.sk_polys();
    let s_y = rkzg_commit(srs, &sk.s_y(Fr::<E>::from(1u64))?)?;
    let k = rkzg_commit(srs, &sk.k_hat())?;
    Ok(CircuitKey { vk: srs.vk(), s_y, k, layout })
}
