use ark_bn254::Fr;
use ark_ff::{Field, One, UniformRand, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zkclaim_poly::LaurentPoly;
use zkclaim_scs::examples::*;
use zkclaim_scs::*;

type F = Fr;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn pow(x: F, e: i64) -> F {
    if e >= 0 {
        x.pow([e as u64])
    } else {
        x.inverse().unwrap().pow([e.unsigned_abs()])
    }
}

/// `s(x, y)` straight from the definition, one constraint at a time.
fn s_oracle(cs: &ConstraintSystem<F>, x: F, y: F) -> F {
    let n = cs.n() as i64;
    let mut acc = F::zero();
    for (q, lc) in cs.linear().iter().enumerate() {
        let yq = pow(y, q as i64 + 1 + n);
        for (i, c) in &lc.u {
            acc += *c * yq * pow(x, -(*i as i64));
        }
        for (i, c) in &lc.v {
            acc += *c * yq * pow(x, *i as i64);
        }
        for (i, c) in &lc.w {
            acc += *c * yq * pow(x, *i as i64 + n);
        }
    }
    for i in 1..=n {
        acc -= (pow(y, i) + pow(y, -i)) * pow(x, i + n);
    }
    acc
}

fn r_oracle(wit: &Witness<F>, z: F) -> F {
    let n = wit.n() as i64;
    (1..=n)
        .map(|i| {
            let k = (i - 1) as usize;
            wit.a[k] * pow(z, i) + wit.b[k] * pow(z, -i) + wit.c[k] * pow(z, -i - n)
        })
        .sum()
}

fn k_oracle(cs: &ConstraintSystem<F>, y: F) -> F {
    let n = cs.n() as i64;
    cs.linear().iter().enumerate().map(|(q, lc)| lc.k * pow(y, q as i64 + 1 + n)).sum()
}

/// `𝒞[y] = Σ (a_i b_i − c_i)(y^i + y^{-i}) + Σ_q y^{q+N} (a·u_q + b·v_q + c·w_q − k_q)`.
fn constant_oracle(cs: &ConstraintSystem<F>, wit: &Witness<F>, y: F) -> F {
    let n = cs.n() as i64;
    let mut acc = F::zero();
    for i in 1..=n {
        let k = (i - 1) as usize;
        acc += (wit.a[k] * wit.b[k] - wit.c[k]) * (pow(y, i) + pow(y, -i));
    }
    for (q, lc) in cs.linear().iter().enumerate() {
        let dot = |v: &SparseVec<F>, xs: &[F]| v.iter().map(|(i, c)| xs[i - 1] * c).sum::<F>();
        let lhs = dot(&lc.u, &wit.a) + dot(&lc.v, &wit.b) + dot(&lc.w, &wit.c);
        acc += pow(y, q as i64 + 1 + n) * (lhs - lc.k);
    }
    acc
}

fn random_satisfiable(r: &mut ChaCha20Rng, n: usize, q: usize) -> (ConstraintSystem<F>, Witness<F>) {
    let mut cs = ConstraintSystem::new();
    cs.add_multiplications(n);
    let mut wit = Witness::zeros(n);
    for i in 1..=n {
        wit.set_product(i, F::rand(r), F::rand(r));
    }
    for _ in 0..q {
        let mut sparse = || -> SparseVec<F> {
            (0..r.gen_range(0..4)).map(|_| (r.gen_range(1..=n), F::rand(r))).collect()
        };
        let (u, v, w) = (sparse(), sparse(), sparse());
        let dot = |v: &SparseVec<F>, xs: &[F]| v.iter().map(|(i, c)| xs[i - 1] * c).sum::<F>();
        let k = dot(&u, &wit.a) + dot(&v, &wit.b) + dot(&w, &wit.c);
        cs.add_linear(u, v, w, k).unwrap();
    }
    (cs, wit)
}

#[test]
fn builder_counts() {
    let mut cs = ConstraintSystem::<F>::new();
    assert_eq!(cs.add_multiplication(), 1);
    assert_eq!(cs.n(), 1);
    let ex1 = binary(F::one());
    assert_eq!((ex1.n(), ex1.q()), (1, 3));
    for k in 1..10 {
        let ex2 = bit_decomposition(k, F::from(3u64));
        assert_eq!((ex2.n(), ex2.q()), (k, 2 * k + 1));
    }
    assert_eq!(
        cs.add_linear(vec![(2, F::one())], vec![], vec![], F::zero()),
        Err(ScsError::IndexOutOfRange { index: 2, n: 1 })
    );
    assert_eq!(
        cs.add_linear(vec![], vec![(0, F::one())], vec![], F::zero()),
        Err(ScsError::IndexOutOfRange { index: 0, n: 1 })
    );
}

#[test]
fn binary_example_satisfaction() {
    assert!(binary(F::one()).is_satisfied(&binary_witness(F::one())).unwrap());
    assert!(binary(F::zero()).is_satisfied(&binary_witness(F::zero())).unwrap());
    assert!(!binary(F::from(2u64)).is_satisfied(&binary_witness(F::from(2u64))).unwrap());
}

#[test]
fn binary_example_brute_force() {
    // Over a small cube of assignments only w ∈ {0, 1} admit a witness, each exactly one.
    for w in 0..5u64 {
        let cs = binary(F::from(w));
        let mut hits = 0;
        for a in 0..6u64 {
            for b in 0..6u64 {
                for c in 0..36u64 {
                    let mut wit = Witness::zeros(1);
                    wit.set(1, F::from(a), F::from(b), F::from(c));
                    if cs.is_satisfied(&wit).unwrap() {
                        hits += 1;
                        assert_eq!((a, b, c), (w, w, w));
                    }
                }
            }
        }
        assert_eq!(hits, usize::from(w < 2), "w = {w}");
    }
}

#[test]
fn bit_decomposition_example() {
    let cs = bit_decomposition(3, F::from(5u64));
    assert!(cs.is_satisfied(&bit_decomposition_witness(&[1, 0, 4])).unwrap());
    assert_eq!(scaled_bits(5, 3), vec![1, 0, 4]);
    assert!(!cs.is_satisfied(&bit_decomposition_witness(&[1, 2, 0])).unwrap());
    // A non-bit value breaks a_i·b_i = 0 via the fixed b_i = a_i − 2^{i−1}.
    let mut wit = bit_decomposition_witness::<F>(&[1, 0, 4]);
    wit.set_product(2, F::from(2u64) + F::one(), F::one());
    assert!(!cs.is_satisfied(&wit).unwrap());
    for w in 0..8 {
        let cs = bit_decomposition(3, F::from(w));
        assert!(cs.is_satisfied(&bit_decomposition_witness(&scaled_bits(w, 3))).unwrap());
    }
}

#[test]
fn length_mismatch() {
    let cs = binary(F::one());
    assert_eq!(
        cs.is_satisfied(&Witness::zeros(2)),
        Err(ScsError::LengthMismatch { expected: 1, got: 2 })
    );
}

#[test]
fn r_poly_placement() {
    let mut wit = Witness::zeros(1);
    wit.set(1, F::from(2u64), F::from(3u64), F::from(6u64));
    let r = build_r_poly(&wit);
    let expected = LaurentPoly::from_terms([(1, F::from(2u64)), (-1, F::from(3u64)), (-2, F::from(6u64))]);
    assert_eq!(r.poly(), &expected);
    assert!(r.poly().constant_term().is_zero());
    let mut g = rng(1);
    for _ in 0..20 {
        let (z, y) = (F::rand(&mut g), F::rand(&mut g));
        assert_eq!(r.eval(z, y).unwrap(), r.poly().eval(z * y).unwrap());
        assert_eq!(r.at_y(y).unwrap().eval(z).unwrap(), r.poly().eval(z * y).unwrap());
    }
}

#[test]
fn k_hat_support() {
    let cs = binary(F::from(1u64));
    let k = cs.sk_polys().k_hat();
    // Only the third constraint (a = w) has k ≠ 0: exponent 3 + N = 4.
    assert_eq!(k, LaurentPoly::monomial(4, F::one()));
    let cs0 = binary(F::zero());
    assert!(cs0.sk_polys().k_hat().is_zero());
}

#[test]
fn t_matches_definition() {
    let cs = bit_decomposition(3, F::from(5u64));
    let wit = bit_decomposition_witness(&[1, 0, 4]);
    let sk = cs.sk_polys();
    let r = build_r_poly(&wit);
    let mut g = rng(2);
    for _ in 0..20 {
        let (z, y) = (F::rand(&mut g), F::rand(&mut g));
        let t = t_poly(&r, &sk, y).unwrap();
        let expected = r_oracle(&wit, z) * (r_oracle(&wit, z * y) + s_oracle(&cs, z, y)) - k_oracle(&cs, y);
        assert_eq!(t.eval(z).unwrap(), expected);
        assert!(t.constant_term().is_zero());
        assert_eq!(compute_t(&r, &sk, y).unwrap(), t);
    }
}

#[test]
fn binary_t_constant_term() {
    let cs = binary(F::one());
    let sk = cs.sk_polys();
    let mut g = rng(3);
    let honest = build_r_poly(&binary_witness(F::one()));
    let mut forged = Witness::zeros(1);
    forged.set(1, F::one(), F::one(), F::zero());
    let forged_r = build_r_poly(&forged);
    for _ in 0..100 {
        let y = F::rand(&mut g);
        assert!(t_poly(&honest, &sk, y).unwrap().constant_term().is_zero());
        let c = t_poly(&forged_r, &sk, y).unwrap().constant_term();
        assert!(!c.is_zero());
        assert_eq!(c, constant_oracle(&cs, &forged, y));
        assert_eq!(compute_t(&forged_r, &sk, y), Err(ScsError::NonZeroConstantTerm));
    }
}

#[test]
fn sk_polys_reject_zero_challenge() {
    let sk = binary(F::one()).sk_polys();
    assert_eq!(sk.s_x(F::zero()), Err(ScsError::ZeroChallenge));
    assert_eq!(sk.s_y(F::zero()), Err(ScsError::ZeroChallenge));
}

#[test]
fn json_round_trip() {
    let cs = bit_decomposition(4, F::from(9u64));
    let json = cs.to_json();
    let text = serde_json::to_string(&json).unwrap();
    let back: ConstraintSystemJson = serde_json::from_str(&text).unwrap();
    assert_eq!(ConstraintSystem::<F>::from_json(&back).unwrap(), cs);
    let mut bad = json.clone();
    bad.q += 1;
    assert!(ConstraintSystem::<F>::from_json(&bad).is_err());
    let mut bad = json;
    bad.linear[0].u[0].0 = 99;
    assert!(matches!(ConstraintSystem::<F>::from_json(&bad), Err(ScsError::IndexOutOfRange { .. })));
}

#[test]
fn required_degree_formula() {
    assert_eq!(required_degree(10, 5), 40);
    assert_eq!(required_degree(10, 50), 60);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn satisfaction_iff_zero_constant_term(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=32);
        let q = g.gen_range(0..=64);
        let (cs, wit) = random_satisfiable(&mut g, n, q);
        let sk = cs.sk_polys();
        prop_assert!(cs.is_satisfied(&wit).unwrap());
        let mut broken = wit.clone();
        let i = g.gen_range(0..n);
        broken.c[i] += F::one();
        prop_assert!(!cs.is_satisfied(&broken).unwrap());
        let r = build_r_poly(&wit);
        let rb = build_r_poly(&broken);
        let bound = 4 * n as i64;
        for _ in 0..10 {
            let y = F::rand(&mut g);
            let t = t_poly(&r, &sk, y).unwrap();
            prop_assert!(t.constant_term().is_zero());
            prop_assert!(t.min_exp().unwrap_or(0) >= -bound);
            prop_assert!(t.max_exp().unwrap_or(0) <= 3 * n as i64);
            let tb = t_poly(&rb, &sk, y).unwrap();
            prop_assert!(!tb.constant_term().is_zero());
            prop_assert_eq!(tb.constant_term(), constant_oracle(&cs, &broken, y));
        }
    }

    #[test]
    fn s_consistency(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=16);
        let q = g.gen_range(0..=32);
        let (cs, _) = random_satisfiable(&mut g, n, q);
        let sk = cs.sk_polys();
        let sy1 = sk.s_y(F::one()).unwrap();
        prop_assert!(sy1.constant_term().is_zero());
        prop_assert!(sk.k_hat().constant_term().is_zero());
        for _ in 0..10 {
            let (x, y) = (F::rand(&mut g), F::rand(&mut g));
            let sx = sk.s_x(y).unwrap();
            prop_assert!(sx.constant_term().is_zero());
            prop_assert_eq!(sx.eval(F::one()).unwrap(), sy1.eval(y).unwrap());
            prop_assert_eq!(sx.eval(x).unwrap(), s_oracle(&cs, x, y));
            prop_assert_eq!(sk.s_y(x).unwrap().eval(y).unwrap(), s_oracle(&cs, x, y));
            prop_assert_eq!(sk.k_hat().eval(y).unwrap(), k_oracle(&cs, y));
        }
    }
}
