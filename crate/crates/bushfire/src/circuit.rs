use ark_ff::PrimeField;
use serde::{Deserialize, Serialize};
use zkclaim_scs::{int, ConstraintSystem, Witness};
use zkclaim_sonic::DataLayout;

use crate::nbr::pixel_nbrs;
use crate::{BushfireError, FixedPointParams, RasterPair};

/// Gate positions (1-based) of the bushfire system for `n` pixels and
/// `k`-bit range checks. Blocks in order:
///
/// | block | gates | a | b | c |
/// |---|---|---|---|---|
/// | NBR pre/post | 2n | n | r+s | scale(r−s)−θ |
/// | indicator | n | i | i−1 | 0 |
/// | dNBR bits | nk | e | e−2^{j−1} | 0 |
/// | linkage | n | i | n⁻−n⁺−κ | Σ_j e |
/// | θ slack bits | k | e | e−2^{j−1} | 0 |
/// | G slack bits | k | e | e−2^{j−1} | 0 |
/// | θ squares pre/post | 2n | θ | θ | θ² |
/// | data r⁻, s⁻, r⁺, s⁺ | 4n | value | 0 | 0 |
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitLayout {
    pub pixels: usize,
    pub k: usize,
}

impl CircuitLayout {
    pub fn new(pixels: usize, k_bits: u32) -> Self {
        Self { pixels, k: k_bits as usize }
    }

    pub fn nbr_pre(&self, i: usize) -> usize {
        1 + i
    }
    pub fn nbr_post(&self, i: usize) -> usize {
        1 + self.pixels + i
    }
    pub fn indicator(&self, i: usize) -> usize {
        1 + 2 * self.pixels + i
    }
    pub fn bit(&self, i: usize, j: usize) -> usize {
        1 + 3 * self.pixels + i * self.k + j
    }
    pub fn linkage(&self, i: usize) -> usize {
        1 + 3 * self.pixels + self.pixels * self.k + i
    }
    pub fn theta_slack(&self, j: usize) -> usize {
        1 + 4 * self.pixels + self.pixels * self.k + j
    }
    pub fn g_slack(&self, j: usize) -> usize {
        self.theta_slack(j) + self.k
    }
    pub fn square_pre(&self, i: usize) -> usize {
        1 + 4 * self.pixels + (self.pixels + 2) * self.k + i
    }
    pub fn square_post(&self, i: usize) -> usize {
        self.square_pre(i) + self.pixels
    }
    /// Data slot `t` (0-based) of the `r⁻ ‖ s⁻ ‖ r⁺ ‖ s⁺` sequence.
    pub fn data(&self, t: usize) -> usize {
        self.n_core() + 1 + t
    }

    pub fn n_core(&self) -> usize {
        6 * self.pixels + (self.pixels + 2) * self.k
    }
    pub fn data_len(&self) -> usize {
        4 * self.pixels
    }
    pub fn multiplications(&self) -> usize {
        self.n_core() + self.data_len()
    }
    pub fn linear_constraints(&self) -> usize {
        (11 + 2 * self.k) * self.pixels + 4 * self.k + 2
    }

    pub fn data_layout(&self, split: DataSplit) -> DataLayout {
        DataLayout::new(self.n_core(), split.lengths(self.pixels))
    }
}

/// How the `4n` raster values are grouped into signed data sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataSplit {
    /// One source carries both epochs.
    #[default]
    Single,
    /// Pre-fire bands and post-fire bands come from separate providers.
    PerEpoch,
}

impl DataSplit {
    pub fn as_str(&self) -> &'static str {
        match self {
            DataSplit::Single => "single",
            DataSplit::PerEpoch => "per-epoch",
        }
    }

    pub fn lengths(&self, pixels: usize) -> Vec<usize> {
        match self {
            DataSplit::Single => vec![4 * pixels],
            DataSplit::PerEpoch => vec![2 * pixels, 2 * pixels],
        }
    }
}

fn link<F: PrimeField>(cs: &mut ConstraintSystem<F>, u: Vec<(usize, i64)>, v: Vec<(usize, i64)>, w: Vec<(usize, i64)>, k: i64) {
    let conv = |xs: Vec<(usize, i64)>| xs.into_iter().map(|(i, c)| (i, int::<F>(c))).collect();
    cs.add_linear(conv(u), conv(v), conv(w), int::<F>(k)).expect("layout indices are in range");
}

/// Scaled-bit gadget on gate `g` for bit position `j`:
/// `b = a − 2^j` and `c = 0`, so `a·(a − 2^j) = 0`.
fn scaled_bit<F: PrimeField>(cs: &mut ConstraintSystem<F>, g: usize, j: usize) {
    link(cs, vec![(g, 1)], vec![(g, -1)], vec![], 1 << j);
    link(cs, vec![], vec![], vec![(g, 1)], 0);
}

impl std::str::FromStr for DataSplit {
    type Err = BushfireError;

    fn from_str(s: &str) -> Result<Self, BushfireError> {
        match s {
            "single" => Ok(DataSplit::Single),
            "per-epoch" => Ok(DataSplit::PerEpoch),
            _ => Err(BushfireError::Params(format!("unknown data split {s:?}"))),
        }
    }
}

pub fn build_bushfire_cs<F: PrimeField>(pixels: usize, params: &FixedPointParams) -> Result<ConstraintSystem<F>, BushfireError> {
    params.check_pixels(pixels)?;
    let l = CircuitLayout::new(pixels, params.k_bits);
    let mut cs = ConstraintSystem::new();
    cs.add_multiplications(l.multiplications());
    let n = pixels;
    let scale = params.scale;
    let (r_pre, s_pre, r_post, s_post) = (|i| l.data(i), |i| l.data(n + i), |i| l.data(2 * n + i), |i| l.data(3 * n + i));

    for i in 0..n {
        for (gate, square, r, s) in [
            (l.nbr_pre(i), l.square_pre(i), r_pre(i), s_pre(i)),
            (l.nbr_post(i), l.square_post(i), r_post(i), s_post(i)),
        ] {
            // b = r + s
            link(&mut cs, vec![(r, 1), (s, 1)], vec![(gate, -1)], vec![], 0);
            // c = scale(r − s) − θ
            link(&mut cs, vec![(r, scale), (s, -scale), (square, -1)], vec![], vec![(gate, -1)], 0);
            // θ² gate: a = b
            link(&mut cs, vec![(square, 1)], vec![(square, -1)], vec![], 0);
        }

        let ind = l.indicator(i);
        link(&mut cs, vec![(ind, 1)], vec![(ind, -1)], vec![], 1);
        link(&mut cs, vec![], vec![], vec![(ind, 1)], 0);

        for j in 0..l.k {
            scaled_bit(&mut cs, l.bit(i, j), j);
        }

        let lk = l.linkage(i);
        link(&mut cs, vec![(l.nbr_pre(i), 1), (l.nbr_post(i), -1)], vec![(lk, -1)], vec![], params.kappa_scaled);
        link(&mut cs, (0..l.k).map(|j| (l.bit(i, j), 1)).collect(), vec![], vec![(lk, -1)], 0);
        link(&mut cs, vec![(lk, 1), (ind, -1)], vec![], vec![], 0);
    }

    for j in 0..l.k {
        scaled_bit(&mut cs, l.theta_slack(j), j);
        scaled_bit(&mut cs, l.g_slack(j), j);
    }

    // Σ i − Σ e_G = ε
    let mut u: Vec<(usize, i64)> = (0..n).map(|i| (l.indicator(i), 1)).collect();
    u.extend((0..l.k).map(|j| (l.g_slack(j), -1)));
    link(&mut cs, u, vec![], vec![], params.epsilon as i64);

    // Σ θ² + Σ e_θ = θ_max − 1
    let u = (0..l.k).map(|j| (l.theta_slack(j), 1)).collect();
    let w = (0..n).flat_map(|i| [(l.square_pre(i), 1), (l.square_post(i), 1)]).collect();
    link(&mut cs, u, vec![], w, params.theta_max as i64 - 1);

    debug_assert_eq!(cs.q(), l.linear_constraints());
    Ok(cs)
}

/// Integer assignment of every gate, before embedding in the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BushfireAssignment {
    pub n_pre: Vec<i64>,
    pub n_post: Vec<i64>,
    pub theta_pre: Vec<i64>,
    pub theta_post: Vec<i64>,
    pub indicator: Vec<bool>,
    /// `e_{i,j} ∈ {0, 2^j}` (0-based `j`).
    pub bits: Vec<Vec<i64>>,
    pub theta_slack_bits: Vec<i64>,
    pub g_slack_bits: Vec<i64>,
    pub g: i64,
}

/// Scaled bits of `v` if `0 ≤ v < 2^k`.
fn decompose(v: i64, k: usize) -> Option<Vec<i64>> {
    (v >= 0 && v < 1 << k).then(|| (0..k).map(|j| v & (1 << j)).collect())
}

impl BushfireAssignment {
    /// Honest assignment: `i = 1` exactly on pixels with `dNBR ≥ κ`.
    /// A negative claim margin is kept (the assignment then violates the
    /// system) but a rounding residue above `θ_max` is an error, as the
    /// slack has no representation.
    pub fn from_rasters(rasters: &RasterPair, params: &FixedPointParams) -> Result<Self, BushfireError> {
        params.check_pixels(rasters.pixels())?;
        let k = params.k_bits as usize;
        let px = pixel_nbrs(rasters, params.scale)?;
        let mut bits = Vec::with_capacity(px.len());
        let mut indicator = Vec::with_capacity(px.len());
        for (i, p) in px.iter().enumerate() {
            let burnt = p.dnbr() >= params.kappa_scaled;
            let excess = if burnt { p.dnbr() - params.kappa_scaled } else { 0 };
            bits.push(decompose(excess, k).ok_or(BushfireError::BitOverflow { pixel: i, value: excess })?);
            indicator.push(burnt);
        }
        let theta_sq: i64 = px.iter().map(|p| p.theta_pre.pow(2) + p.theta_post.pow(2)).sum();
        let theta_slack_bits = decompose(params.theta_max as i64 - 1 - theta_sq, k)
            .ok_or(BushfireError::ThetaBound { sum: theta_sq as u64, theta_max: params.theta_max })?;
        let g = indicator.iter().filter(|b| **b).count() as i64 - params.epsilon as i64;
        let g_slack_bits = decompose(g, k).unwrap_or_else(|| vec![0; k]);
        Ok(Self {
            n_pre: px.iter().map(|p| p.n_pre).collect(),
            n_post: px.iter().map(|p| p.n_post).collect(),
            theta_pre: px.iter().map(|p| p.theta_pre).collect(),
            theta_post: px.iter().map(|p| p.theta_post).collect(),
            indicator,
            bits,
            theta_slack_bits,
            g_slack_bits,
            g,
        })
    }

    /// Fill the core gates (everything except the data slots).
    pub fn core_witness<F: PrimeField>(&self, rasters: &RasterPair, params: &FixedPointParams) -> Witness<F> {
        let n = self.n_pre.len();
        let l = CircuitLayout::new(n, params.k_bits);
        let mut w = Witness::zeros(l.n_core());
        let f = int::<F>;
        for i in 0..n {
            let sum_pre = (rasters.pre_nir[i] + rasters.pre_swir[i]) as i64;
            let sum_post = (rasters.post_nir[i] + rasters.post_swir[i]) as i64;
            w.set_product(l.nbr_pre(i), f(self.n_pre[i]), f(sum_pre));
            w.set_product(l.nbr_post(i), f(self.n_post[i]), f(sum_post));
            let ind = self.indicator[i] as i64;
            w.set_product(l.indicator(i), f(ind), f(ind - 1));
            for (j, e) in self.bits[i].iter().enumerate() {
                w.set_product(l.bit(i, j), f(*e), f(*e - (1 << j)));
            }
            w.set_product(l.linkage(i), f(ind), f(self.n_pre[i] - self.n_post[i] - params.kappa_scaled));
            w.set_product(l.square_pre(i), f(self.theta_pre[i]), f(self.theta_pre[i]));
            w.set_product(l.square_post(i), f(self.theta_post[i]), f(self.theta_post[i]));
        }
        for j in 0..l.k {
            let (t, g) = (self.theta_slack_bits[j], self.g_slack_bits[j]);
            w.set_product(l.theta_slack(j), f(t), f(t - (1 << j)));
            w.set_product(l.g_slack(j), f(g), f(g - (1 << j)));
        }
        w
    }
}

/// Core witness plus the raster values destined for the data slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BushfireWitness<F> {
    pub core: Witness<F>,
    /// `r⁻ ‖ s⁻ ‖ r⁺ ‖ s⁺`.
    pub data: Vec<F>,
    pub assignment: BushfireAssignment,
}

impl<F: PrimeField> BushfireWitness<F> {
    /// Core followed by data slots: the witness the full system checks.
    pub fn full(&self) -> Witness<F> {
        let mut w = self.core.clone();
        w.a.extend(&self.data);
        w.b.extend(std::iter::repeat(F::zero()).take(self.data.len()));
        w.c.extend(std::iter::repeat(F::zero()).take(self.data.len()));
        w
    }

    /// Data values grouped per source in slot order.
    pub fn source_values(&self, split: DataSplit) -> Vec<Vec<F>> {
        let mut rest = &self.data[..];
        split
            .lengths(self.data.len() / 4)
            .into_iter()
            .map(|m| {
                let (head, tail) = rest.split_at(m);
                rest = tail;
                head.to_vec()
            })
            .collect()
    }
}

pub fn build_bushfire_witness<F: PrimeField>(rasters: &RasterPair, params: &FixedPointParams) -> Result<BushfireWitness<F>, BushfireError> {
    let assignment = BushfireAssignment::from_rasters(rasters, params)?;
    let core = assignment.core_witness(rasters, params);
    let data = rasters.data_values().into_iter().map(F::from).collect();
    Ok(BushfireWitness { core, data, assignment })
}
