use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zkclaim_algebra::{Bn254, Fr};
use zkclaim_bushfire::*;
use zkclaim_pcs::Srs;
use zkclaim_scs::ConstraintSystem;
use zkclaim_sigs::{keygen, Epoch, KeyPair, Location};
use zkclaim_sonic::{preprocess, prove_batched, prove_with_data, verify_batched, verify_with_data, DataSource, SourcePublic};

type E = Bn254;
type F = Fr<E>;

fn params(epsilon: u64) -> FixedPointParams {
    FixedPointParams { epsilon, ..FixedPointParams::default() }
}

const BURNT: (u64, u64, u64, u64) = (100, 20, 20, 100);
const CALM: (u64, u64, u64, u64) = (50, 50, 50, 50);

fn satisfied(r: &RasterPair, p: &FixedPointParams) -> bool {
    let cs: ConstraintSystem<F> = build_bushfire_cs(r.pixels(), p).unwrap();
    let w = build_bushfire_witness::<F>(r, p).unwrap();
    cs.is_satisfied(&w.full()).unwrap()
}

/// Nearest-integer division through exact rationals: `n` is the integer
/// minimizing |num − n·den|, ties resolved away from zero.
fn nearest_oracle(num: i128, den: i128) -> i128 {
    let lo = num.div_euclid(den);
    let (d_lo, d_hi) = ((num - lo * den).abs(), (num - (lo + 1) * den).abs());
    match d_lo.cmp(&d_hi) {
        std::cmp::Ordering::Less => lo,
        std::cmp::Ordering::Greater => lo + 1,
        std::cmp::Ordering::Equal => if num < 0 { lo } else { lo + 1 },
    }
}

#[test]
fn nbr_examples() {
    assert_eq!(compute_nbr_fixed(100, 20, 1000).unwrap(), (667, -40));
    assert_eq!(compute_nbr_fixed(20, 100, 1000).unwrap(), (-667, 40));
    assert_eq!(compute_nbr_fixed(37, 37, 1000).unwrap(), (0, 0));
    assert!(compute_nbr_fixed(0, 0, 1000).is_err());
    // ties: 1000·1/2 = 500 exactly, 10·1/4 = 2.5 → 3, −2.5 → −3
    assert_eq!(compute_nbr_fixed(3, 1, 5).unwrap(), (3, -2));
    assert_eq!(compute_nbr_fixed(1, 3, 5).unwrap(), (-3, 2));
}

proptest! {
    #[test]
    fn nbr_identity(r in 0u64..100_000, s in 0u64..100_000, scale in 1i64..100_000) {
        prop_assume!(r + s > 0);
        let (n, theta) = compute_nbr_fixed(r, s, scale).unwrap();
        let (num, den) = (scale as i128 * (r as i128 - s as i128), (r + s) as i128);
        prop_assert_eq!(num, n as i128 * den + theta as i128);
        prop_assert!(2 * (theta as i128).abs() <= den);
        prop_assert_eq!(n as i128, nearest_oracle(num, den));
    }
}

#[test]
fn burnt_pixel_trace() {
    let r = RasterPair::from_pixels(&[BURNT]).unwrap();
    let p = params(1);
    let a = BushfireAssignment::from_rasters(&r, &p).unwrap();
    assert_eq!((a.n_pre[0], a.theta_pre[0], a.n_post[0], a.theta_post[0]), (667, -40, -667, 40));
    assert!(a.indicator[0]);
    // 674 = 2 + 32 + 128 + 512; entry j holds 0 or 2^j.
    assert_eq!(a.bits[0][..10], [0, 2, 0, 0, 0, 32, 0, 128, 0, 512]);
    assert!(a.bits[0][10..].iter().all(|e| *e == 0));
    assert_eq!(a.bits[0].iter().sum::<i64>(), 1334 - 660);
    let gt = ground_truth_claim(&r, &p).unwrap();
    assert_eq!(gt.theta_sq_sum, 3200);
    assert_eq!(gt.dnbr, vec![1334]);
    assert_eq!(a.theta_slack_bits.iter().sum::<i64>(), 4096 - 1 - 3200);
    assert!(satisfied(&r, &p));
}

#[test]
fn single_pixel_four_bits() {
    let p = FixedPointParams { scale: 5, kappa_scaled: 3, epsilon: 1, theta_max: 16, k_bits: 4 };
    let r = RasterPair::from_pixels(&[(3, 1, 1, 3)]).unwrap();
    let gt = ground_truth_claim(&r, &p).unwrap();
    assert_eq!((gt.dnbr[0], gt.theta_sq_sum, gt.g), (6, 8, 0));
    let cs: ConstraintSystem<F> = build_bushfire_cs(1, &p).unwrap();
    assert_eq!(cs.n(), 10 + 3 * 4);
    assert!(satisfied(&r, &p));
}

#[test]
fn unburnt_pixel_has_zero_bits() {
    let r = RasterPair::from_pixels(&[CALM]).unwrap();
    let a = BushfireAssignment::from_rasters(&r, &params(0)).unwrap();
    assert!(!a.indicator[0]);
    assert!(a.bits[0].iter().all(|e| *e == 0));
    assert!(satisfied(&r, &params(0)));
    assert!(!satisfied(&r, &params(1)));
}

#[test]
fn epsilon_boundary() {
    let r = RasterPair::from_pixels(&[CALM, BURNT, CALM, CALM]).unwrap();
    let gt = ground_truth_claim(&r, &params(1)).unwrap();
    assert_eq!(gt.g, 0);
    assert!(gt.valid);
    assert!(satisfied(&r, &params(1)));
    let gt2 = ground_truth_claim(&r, &params(2)).unwrap();
    assert_eq!(gt2.g, -1);
    assert!(!gt2.valid);
    assert!(!satisfied(&r, &params(2)));
}

#[test]
fn ground_truth_extremes() {
    let calm = RasterPair::from_pixels(&[CALM; 4]).unwrap();
    let gt = ground_truth_claim(&calm, &params(3)).unwrap();
    assert_eq!(gt.g, -3);
    assert!(!gt.valid);
    let burnt = RasterPair::from_pixels(&[(100, 0, 0, 100); 4]).unwrap();
    let gt = ground_truth_claim(&burnt, &params(4)).unwrap();
    assert_eq!((gt.g, gt.valid), (0, true));
}

#[test]
fn theta_bound_enforced() {
    // θ = ±40 per epoch on each of two burnt pixels: Σθ² = 6400 ≥ 4096.
    let r = RasterPair::from_pixels(&[BURNT, BURNT]).unwrap();
    let gt = ground_truth_claim(&r, &params(1)).unwrap();
    assert_eq!(gt.theta_sq_sum, 6400);
    assert!(!gt.valid);
    assert!(matches!(build_bushfire_witness::<F>(&r, &params(1)), Err(BushfireError::ThetaBound { .. })));
}

/// Published linear and multiplicative counts at n = 4, 8, 16, 32.
const PUBLISHED_N: [usize; 4] = [4, 8, 16, 32];
const PUBLISHED_LINEAR: [usize; 4] = [232, 400, 736, 1408];
const PUBLISHED_MULT: [usize; 4] = [222, 378, 690, 1314];

fn affine_fit(xs: &[usize], ys: &[usize]) -> Option<(i64, i64)> {
    let (x0, y0, x1, y1) = (xs[0] as i64, ys[0] as i64, xs[3] as i64, ys[3] as i64);
    let slope = (y1 - y0) / (x1 - x0);
    let intercept = y0 - slope * x0;
    xs.iter().zip(ys).all(|(x, y)| slope * *x as i64 + intercept == *y as i64).then_some((slope, intercept))
}

#[test]
fn constraint_counts_are_affine() {
    let p = params(1);
    let systems: Vec<ConstraintSystem<F>> = PUBLISHED_N.iter().map(|n| build_bushfire_cs(*n, &p).unwrap()).collect();
    let mults: Vec<usize> = systems.iter().map(|cs| cs.n()).collect();
    let linear: Vec<usize> = systems.iter().map(|cs| cs.q()).collect();
    let k = p.k_bits as i64;
    assert_eq!(affine_fit(&PUBLISHED_N, &mults), Some((10 + k, 2 * k)));
    assert_eq!(affine_fit(&PUBLISHED_N, &linear), Some((11 + 2 * k, 4 * k + 2)));
    assert_eq!(affine_fit(&PUBLISHED_N, &PUBLISHED_MULT), Some((39, 66)));
    assert_eq!(affine_fit(&PUBLISHED_N, &PUBLISHED_LINEAR), Some((42, 64)));
    for (n, cs) in PUBLISHED_N.iter().zip(&systems) {
        let l = CircuitLayout::new(*n, p.k_bits);
        assert_eq!((cs.n(), cs.q()), (l.multiplications(), l.linear_constraints()));
    }
}

#[test]
fn forged_indicator_is_unsatisfiable() {
    let p = FixedPointParams { scale: 10, kappa_scaled: 6, epsilon: 1, theta_max: 64, k_bits: 6 };
    let cs: ConstraintSystem<F> = build_bushfire_cs(1, &p).unwrap();
    let search = |pixel: (u64, u64, u64, u64)| -> usize {
        let r = RasterPair::from_pixels(&[pixel]).unwrap();
        let base = BushfireAssignment::from_rasters(&r, &p).unwrap();
        let data: Vec<F> = r.data_values().into_iter().map(F::from).collect();
        let (sum_pre, sum_post) = ((pixel.0 + pixel.1) as i64, (pixel.2 + pixel.3) as i64);
        let (diff_pre, diff_post) = (pixel.0 as i64 - pixel.1 as i64, pixel.2 as i64 - pixel.3 as i64);
        let mut hits = 0;
        for n_pre in -2 * p.scale..=2 * p.scale {
            for n_post in -2 * p.scale..=2 * p.scale {
                let theta_pre = p.scale * diff_pre - n_pre * sum_pre;
                let theta_post = p.scale * diff_post - n_post * sum_post;
                let slack = p.theta_max as i64 - 1 - theta_pre.pow(2) - theta_post.pow(2);
                for pattern in 0..1i64 << p.k_bits {
                    let mut a = base.clone();
                    a.n_pre[0] = n_pre;
                    a.n_post[0] = n_post;
                    a.theta_pre[0] = theta_pre;
                    a.theta_post[0] = theta_post;
                    a.indicator[0] = true;
                    a.bits[0] = (0..p.k_bits).map(|j| pattern & (1 << j)).collect();
                    a.theta_slack_bits = (0..p.k_bits).map(|j| slack & (1 << j)).collect();
                    a.g_slack_bits = vec![0; p.k_bits as usize];
                    let mut w = a.core_witness::<F>(&r, &p);
                    w.a.extend(&data);
                    w.b.extend(vec![F::from(0u64); data.len()]);
                    w.c.extend(vec![F::from(0u64); data.len()]);
                    hits += cs.is_satisfied(&w).unwrap() as usize;
                }
            }
        }
        hits
    };
    // dNBR = 0 < κ: nothing in the search space satisfies the system.
    assert_eq!(search((3, 2, 3, 2)), 0);
    // Control: the same search does find the honest assignment of a burnt pixel.
    assert!(search((3, 1, 1, 3)) >= 1);
}

fn random_raster(g: &mut ChaCha20Rng, n: usize) -> RasterPair {
    let pixels: Vec<_> = (0..n)
        .map(|_| {
            if g.gen_bool(0.5) {
                (g.gen_range(6..=12), g.gen_range(0..=2), g.gen_range(0..=2), g.gen_range(6..=12))
            } else {
                (g.gen_range(1..=8), g.gen_range(1..=8), g.gen_range(1..=8), g.gen_range(1..=8))
            }
        })
        .collect();
    RasterPair::from_pixels(&pixels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn witness_satisfies_iff_claim_valid(seed in any::<u64>(), n in 1usize..=16) {
        let mut g = ChaCha20Rng::seed_from_u64(seed);
        let r = random_raster(&mut g, n);
        let p = params(g.gen_range(0..=n as u64));
        let gt = ground_truth_claim(&r, &p).unwrap();
        match build_bushfire_witness::<F>(&r, &p) {
            Ok(w) => {
                let cs: ConstraintSystem<F> = build_bushfire_cs(n, &p).unwrap();
                prop_assert_eq!(cs.is_satisfied(&w.full()).unwrap(), gt.valid);
                prop_assert_eq!(w.assignment.g, gt.g);
            }
            Err(BushfireError::ThetaBound { sum, .. }) => {
                prop_assert!(!gt.valid);
                prop_assert_eq!(sum, gt.theta_sq_sum);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
        for i in 0..n {
            for (rr, ss) in [(r.pre_nir[i], r.pre_swir[i]), (r.post_nir[i], r.post_swir[i])] {
                let (nb, th) = compute_nbr_fixed(rr, ss, p.scale).unwrap();
                prop_assert_eq!(p.scale * (rr as i64 - ss as i64), nb * (rr + ss) as i64 + th);
            }
        }
    }
}

const MAX_PIXELS: usize = 16;

fn main_srs() -> Srs<E> {
    let cs: ConstraintSystem<F> = build_bushfire_cs(MAX_PIXELS, &params(1)).unwrap();
    Srs::from_trapdoor(cs.required_degree(), F::from(0xfeed_u64), F::from(0x1234_5678_u64))
}

fn provider_srs(salt: u64) -> Srs<E> {
    Srs::from_trapdoor(4 * MAX_PIXELS, F::from(31 + salt), F::from(4_001 + salt))
}

fn tag(epoch: Epoch) -> zkclaim_sigs::LocationTag {
    Location::new(-35.72, 150.18, epoch, "2020-01-05").unwrap().tag()
}

fn data_sources(w: &BushfireWitness<F>, split: DataSplit, keys: &[KeyPair]) -> Vec<DataSource<E>> {
    let epochs = match split {
        DataSplit::Single => vec![Epoch::Post],
        DataSplit::PerEpoch => vec![Epoch::Pre, Epoch::Post],
    };
    w.source_values(split)
        .into_iter()
        .enumerate()
        .map(|(j, v)| DataSource::create(&format!("sat{j}"), v, provider_srs(j as u64), &keys[j], tag(epochs[j])).unwrap())
        .collect()
}

#[test]
fn zk_pipeline_matches_ground_truth() {
    let srs = main_srs();
    let mut g = ChaCha20Rng::seed_from_u64(2020);
    let keys = vec![keygen(&mut g)];
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..50 {
        let n = g.gen_range(1..=MAX_PIXELS);
        let r = random_raster(&mut g, n);
        let p = params(g.gen_range(0..=n as u64));
        let gt = ground_truth_claim(&r, &p).unwrap();
        let cs: ConstraintSystem<F> = build_bushfire_cs(n, &p).unwrap();
        let layout = CircuitLayout::new(n, p.k_bits).data_layout(DataSplit::Single);
        let key = preprocess(&srs, &cs, layout).unwrap();
        let outcome = build_bushfire_witness::<F>(&r, &p).ok().and_then(|w| {
            let sources = data_sources(&w, DataSplit::Single, &keys);
            let public: Vec<SourcePublic<E>> = sources.iter().map(DataSource::public).collect();
            prove_batched(&srs, &cs, &w.core, &sources).ok().map(|proof| verify_batched(&key, &public, &proof))
        });
        assert_eq!(outcome.unwrap_or(false), gt.valid, "n = {n}, {gt:?}");
        if gt.valid {
            assert_eq!(outcome, Some(true));
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert!(accepted > 0 && rejected > 0, "sweep covers both outcomes: {accepted}/{rejected}");
}

#[test]
fn per_epoch_sources_verify_under_both_variants() {
    let srs = main_srs();
    let mut g = ChaCha20Rng::seed_from_u64(7);
    let keys = vec![keygen(&mut g), keygen(&mut g)];
    let r = RasterPair::from_pixels(&[CALM, BURNT, CALM, CALM]).unwrap();
    let p = params(1);
    let cs: ConstraintSystem<F> = build_bushfire_cs(4, &p).unwrap();
    let w = build_bushfire_witness::<F>(&r, &p).unwrap();
    let sources = data_sources(&w, DataSplit::PerEpoch, &keys);
    let public: Vec<SourcePublic<E>> = sources.iter().map(DataSource::public).collect();
    let key = preprocess(&srs, &cs, CircuitLayout::new(4, p.k_bits).data_layout(DataSplit::PerEpoch)).unwrap();
    assert!(verify_batched(&key, &public, &prove_batched(&srs, &cs, &w.core, &sources).unwrap()));
    assert!(verify_with_data(&key, &public, &prove_with_data(&srs, &cs, &w.core, &sources).unwrap()));

    let mut swapped = public.clone();
    swapped.swap(0, 1);
    assert!(!verify_batched(&key, &swapped, &prove_batched(&srs, &cs, &w.core, &sources).unwrap()));
}

#[test]
fn batched_proof_size_is_constant() {
    let srs = main_srs();
    let mut g = ChaCha20Rng::seed_from_u64(11);
    let keys = vec![keygen(&mut g)];
    let sizes: Vec<usize> = [4usize, 8, 16]
        .iter()
        .map(|n| {
            let mut px = vec![CALM; *n];
            px[0] = BURNT;
            let r = RasterPair::from_pixels(&px).unwrap();
            let p = params(1);
            let cs: ConstraintSystem<F> = build_bushfire_cs(*n, &p).unwrap();
            let w = build_bushfire_witness::<F>(&r, &p).unwrap();
            let sources = data_sources(&w, DataSplit::Single, &keys);
            prove_batched(&srs, &cs, &w.core, &sources).unwrap().to_bytes().len()
        })
        .collect();
    assert!(sizes.windows(2).all(|s| s[0] == s[1]), "{sizes:?}");
}

#[test]
fn raster_csv_parsing() {
    let band = parse_band("2,2\n1\n2\n3\n4\n").unwrap();
    assert_eq!((band.width, band.height, band.values), (2, 2, vec![1, 2, 3, 4]));
    assert!(matches!(parse_band("2,2\n1\n2\n3\n"), Err(BushfireError::Raster(_))));
    assert!(matches!(parse_band("1,1\n-5\n"), Err(BushfireError::NegativeValue(-5))));
    assert!(parse_band("2;2\n1\n").is_err());
    assert!(matches!(
        RasterPair::new(1, 1, vec![0], vec![0], vec![1], vec![1]),
        Err(BushfireError::ZeroDenominator { pixel: 0 })
    ));
    assert!(RasterPair::new(2, 1, vec![1], vec![1, 1], vec![1, 1], vec![1, 1]).is_err());
}

#[test]
fn raster_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let r = RasterPair::new(2, 2, vec![1, 2, 3, 4], vec![4, 3, 2, 1], vec![5, 5, 5, 5], vec![0, 1, 2, 3]).unwrap();
    write_raster(dir.path(), &r).unwrap();
    assert_eq!(load_raster(dir.path()).unwrap(), r);
    std::fs::write(dir.path().join("post_swir.csv"), "1,4\n0\n1\n2\n3\n").unwrap();
    assert!(load_raster(dir.path()).is_err());
    std::fs::write(dir.path().join("post_swir.csv"), "2,2\n0\n1\n2\n").unwrap();
    assert!(load_raster(dir.path()).is_err());
}

#[test]
fn bundle_json_round_trip() {
    let mut g = ChaCha20Rng::seed_from_u64(3);
    let keys = vec![keygen(&mut g)];
    let r = RasterPair::from_pixels(&[BURNT, CALM]).unwrap();
    let w = build_bushfire_witness::<F>(&r, &params(1)).unwrap();
    let src = &data_sources(&w, DataSplit::Single, &keys)[0];
    let json = DataBundleJson::from_source(src).unwrap();
    assert_eq!(json.values, r.data_values());
    let text = json.to_json();
    assert!(text.contains("\"H\""));
    let back = DataBundleJson::from_json(&text).unwrap().into_source::<E>(provider_srs(0)).unwrap();
    assert_eq!(back.commitment, src.commitment);
    assert!(back.signature_valid());

    let mut tampered = json.clone();
    tampered.values[0] += 1;
    assert!(tampered.into_source::<E>(provider_srs(0)).is_err());
    assert!(json.into_source::<E>(provider_srs(1)).is_err());
}

#[test]
fn parameter_validation() {
    assert!(FixedPointParams::default().validate().is_ok());
    let bad = [
        FixedPointParams { kappa_scaled: 0, ..Default::default() },
        FixedPointParams { kappa_scaled: 2000, ..Default::default() },
        FixedPointParams { k_bits: 10, ..Default::default() },
        FixedPointParams { theta_max: 0, ..Default::default() },
        FixedPointParams { theta_max: 4097, ..Default::default() },
    ];
    for p in bad {
        assert!(matches!(p.validate(), Err(BushfireError::Params(_))), "{p:?}");
    }
    assert!(build_bushfire_cs::<F>(4096, &FixedPointParams::default()).is_err());
    assert!(build_bushfire_cs::<F>(0, &FixedPointParams::default()).is_err());
}
