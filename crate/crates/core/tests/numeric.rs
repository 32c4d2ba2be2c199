mod numeric {
    use num_bigint::BigUint;
    use num_traits::Zero;
    use sawkit_core::numeric::*;
    use num_traits::One;

    #[test]
    fn small_values_match_f64() {
        for v in [1u64, 2, 3, 20, 1 << 40, 123_456_789] {
            let big = BigUint::from(v);
            assert!((ln_biguint(&big) - (v as f64).ln()).abs() < 1e-12);
        }
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn huge_powers_keep_precision() {
        // 3^2000 overflows f64 by a wide margin.
        let mut x = BigUint::one();
        for _ in 0..2000 {
            x *= 3u32;
        }
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&x) - expected).abs() / expected < 1e-14);
        assert!((nth_root(&x, 2000) - 3.0).abs() < 1e-12);
    }
}
