use ark_ff::UniformRand;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use zkclaim_algebra::{keccak256, Bn254, Fr};
use zkclaim_pcs::{rkzg_commit, Commitment, Srs};
use zkclaim_poly::LaurentPoly;
use zkclaim_sigs::*;

type E = Bn254;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn srs() -> Srs<E> {
    Srs::from_trapdoor(8, Fr::<E>::from(1234u64), Fr::<E>::from(98765u64))
}

fn random_commitment(srs: &Srs<E>, r: &mut ChaCha20Rng) -> Commitment<E> {
    let terms: Vec<_> = (1..=4).map(|e| (e, Fr::<E>::rand(r))).collect();
    rkzg_commit(srs, &LaurentPoly::from_terms(terms)).unwrap()
}

fn random_location(r: &mut ChaCha20Rng) -> Location {
    let epoch = if r.gen() { Epoch::Pre } else { Epoch::Post };
    let date = format!("20{:02}-{:02}-{:02}", r.gen_range(0..30), r.gen_range(1..13), r.gen_range(1..29));
    Location::new(r.gen_range(-90.0..90.0), r.gen_range(-180.0..180.0), epoch, &date).unwrap()
}

#[test]
fn keygen_round_trip_and_distinct() {
    let mut r = rng(1);
    let a = keygen(&mut r);
    let b = keygen(&mut r);
    assert_ne!(a.pk, b.pk);
    let msg = b"any message";
    assert!(Ecdsa::verify(&a.pk, msg, &a.sign(msg)));
    assert_eq!(PublicKey::from_bytes(&a.pk.to_bytes()).unwrap(), a.pk);
    assert_eq!(a.pk.to_bytes().len(), PUBLIC_KEY_BYTES);
    let restored = KeyPair::from_secret_bytes(&a.secret_bytes()).unwrap();
    assert_eq!(restored.pk, a.pk);
}

#[test]
fn signing_is_deterministic() {
    let kp = keygen(&mut rng(2));
    assert_eq!(kp.sign(b"m"), kp.sign(b"m"));
    assert_ne!(kp.sign(b"m"), kp.sign(b"n"));
    assert_eq!(kp.sign(b"m").to_bytes().len(), SIGNATURE_BYTES);
}

#[test]
fn canonical_location_string() {
    let loc = Location::new(-33.8688, 151.2093, Epoch::Post, "2020-01-15").unwrap();
    assert_eq!(loc.canonical(), "lat:-33.8688,lon:151.2093,epoch:post,date:2020-01-15");
    assert_eq!(loc.tag().0, keccak256(b"lat:-33.8688,lon:151.2093,epoch:post,date:2020-01-15"));
    let zero = Location::new(-0.0, 150.0, Epoch::Pre, "2019-12-01").unwrap();
    assert_eq!(zero.canonical(), "lat:0,lon:150,epoch:pre,date:2019-12-01");
    assert!(Location::new(91.0, 0.0, Epoch::Pre, "2019-12-01").is_err());
    assert!(Location::new(0.0, 0.0, Epoch::Pre, "2019-13-01").is_err());
    assert!(Location::new(0.0, 0.0, Epoch::Pre, "19-12-01").is_err());
    assert_eq!("pre".parse::<Epoch>().unwrap(), Epoch::Pre);
    assert!("during".parse::<Epoch>().is_err());
}

#[test]
fn epoch_changes_the_tag() {
    let pre = Location::new(-35.0, 149.0, Epoch::Pre, "2019-11-01").unwrap();
    let post = Location { epoch: Epoch::Post, ..pre.clone() };
    assert_ne!(pre.tag(), post.tag());
}

#[test]
fn bundle_message_is_tag_then_commitment() {
    let s = srs();
    let d = random_commitment(&s, &mut rng(3));
    let h = LocationTag([7u8; 32]);
    let msg = bundle_message(&h, &d);
    assert_eq!(&msg[..32], &[7u8; 32]);
    assert_eq!(&msg[32..], &d.to_bytes()[..]);
}

#[test]
fn honest_bundles_verify() {
    let s = srs();
    let mut r = rng(4);
    for _ in 0..50 {
        let kp = keygen(&mut r);
        let d = random_commitment(&s, &mut r);
        let h = random_location(&mut r).tag();
        let sig = sign_data_bundle(&kp, &h, &d);
        assert!(verify_data_bundle(&kp.pk, &h, &d, &sig));
    }
}

#[test]
fn mismatched_location_rejected() {
    let s = srs();
    let mut r = rng(5);
    let kp = keygen(&mut r);
    let d = random_commitment(&s, &mut r);
    let h = random_location(&mut r).tag();
    let sig = sign_data_bundle(&kp, &h, &d);
    for _ in 0..50 {
        let other = random_location(&mut r).tag();
        assert_ne!(other, h);
        assert!(!verify_data_bundle(&kp.pk, &other, &d, &sig));
    }
}

#[test]
fn transplanted_signature_rejected() {
    let s = srs();
    let mut r = rng(6);
    for _ in 0..50 {
        let kp = keygen(&mut r);
        let h = random_location(&mut r).tag();
        let d1 = random_commitment(&s, &mut r);
        let d2 = random_commitment(&s, &mut r);
        let sig = sign_data_bundle(&kp, &h, &d1);
        assert!(!verify_data_bundle(&kp.pk, &h, &d2, &sig));
        let other = keygen(&mut r);
        assert!(!verify_data_bundle(&other.pk, &h, &d1, &sig));
    }
}

#[test]
fn bit_flipped_signature_rejected() {
    let s = srs();
    let mut r = rng(7);
    for _ in 0..50 {
        let kp = keygen(&mut r);
        let h = random_location(&mut r).tag();
        let d = random_commitment(&s, &mut r);
        let mut bytes = sign_data_bundle(&kp, &h, &d).to_bytes();
        let bit = r.gen_range(0..SIGNATURE_BYTES * 8);
        bytes[bit / 8] ^= 1 << (bit % 8);
        // A flip may also produce an unparseable (r, s); either way no accept.
        if let Ok(sig) = Signature::from_bytes(&bytes) {
            assert!(!verify_data_bundle(&kp.pk, &h, &d, &sig));
        }
    }
    assert_eq!(Signature::from_bytes(&[0u8; 63]), Err(SigError::SignatureLength(63)));
    assert!(PublicKey::from_bytes(&[5u8; 33]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn any_message_round_trips(seed in any::<u64>(), msg in proptest::collection::vec(any::<u8>(), 0..200)) {
        let kp = keygen(&mut rng(seed));
        let sig = kp.sign(&msg);
        prop_assert!(Ecdsa::verify(&kp.pk, &msg, &sig));
        let parsed = Signature::from_bytes(&sig.to_bytes()).unwrap();
        prop_assert!(Ecdsa::verify(&kp.pk, &msg, &parsed));
        let mut other = msg.clone();
        other.push(0);
        prop_assert!(!Ecdsa::verify(&kp.pk, &other, &sig));
    }
}
