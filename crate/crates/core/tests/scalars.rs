use hopfkit::{parse_field, Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn q_scalar() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Field::Rationals.from_rational(&rational(n, d)).unwrap())
}

fn cyclo_scalar(n: u32) -> impl Strategy<Value = Scalar> {
    let f = Field::Cyclotomic(n);
    let deg = f.degree();
    prop::collection::vec((-9i64..9, 1i64..5), deg).prop_map(move |cs| {
        let z = f.zeta().unwrap();
        cs.iter().enumerate().fold(f.zero(), |acc, (i, &(a, b))| {
            let c = f.from_rational(&rational(a, b)).unwrap();
            &acc + &(&c * &z.pow(i as u64))
        })
    })
}

fn fp_scalar(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p as i64).prop_map(move |v| Field::prime(p).unwrap().from_i64(v))
}

fn axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    let f = a.field();
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a + &f.zero(), a.clone());
    assert_eq!(a * &f.one(), a.clone());
    assert!((a + &-a).is_zero());
    assert_eq!(&(a - b) + b, a.clone());
    if a.is_zero() {
        assert!(a.inv().is_err());
    } else {
        assert!((a * &a.inv().unwrap()).is_one());
        assert_eq!(&(b * a) * &a.inv().unwrap(), b.clone());
    }
    let text = a.to_string();
    assert_eq!(&f.parse_scalar(&text).unwrap(), a, "{text}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_axioms(a in q_scalar(), b in q_scalar(), c in q_scalar()) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn cyclotomic5_axioms(a in cyclo_scalar(5), b in cyclo_scalar(5), c in cyclo_scalar(5)) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn cyclotomic12_axioms(a in cyclo_scalar(12), b in cyclo_scalar(12), c in cyclo_scalar(12)) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn prime_field_axioms(a in fp_scalar(101), b in fp_scalar(101), c in fp_scalar(101)) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn prime_inverse_matches_euclid(v in 1i64..7919) {
        let p = 7919i64;
        // extended Euclid on (v, p)
        let (mut r0, mut r1, mut s0, mut s1) = (v, p, 1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1);
        let f = Field::prime(p as u64).unwrap();
        let inv = f.from_i64(v).inv().unwrap();
        prop_assert_eq!(inv, f.from_i64(s0.rem_euclid(p)));
    }
}

#[test]
fn field_mismatch_is_reported() {
    let a = Field::Rationals.one();
    let b = Field::prime(5).unwrap().one();
    assert!(a.checked_add(&b).is_err());
    assert!(a.checked_mul(&b).is_err());
}

#[test]
fn parse_fields() {
    assert_eq!(parse_field("Q").unwrap(), Field::Rationals);
    assert_eq!(parse_field("Cyclotomic(3)").unwrap(), Field::Cyclotomic(3));
    assert_eq!(parse_field("Fp(7)").unwrap(), Field::prime(7).unwrap());
    assert!(parse_field("Fp(8)").is_err());
}

#[test]
fn primitive_roots() {
    for n in [2u32, 3, 4, 5, 6, 8, 12] {
        let f = Field::Cyclotomic(n);
        let z = f.zeta().unwrap();
        assert_eq!(z.multiplicative_order(100), Some(n as u64));
        assert!(z.pow(n as u64).is_one());
    }
    // 4th root of unity in F_13 exists, in F_7 it does not
    assert!(Field::prime(13).unwrap().root_of_unity(4).is_ok());
    assert!(Field::prime(7).unwrap().root_of_unity(4).is_err());
}
