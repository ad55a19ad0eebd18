use num_bigint::BigUint;
use proptest::prelude::*;

use padic_spectral::gm::{orthogonality_test, poly_resultant, LaurentPoly, UnitPolynomial};
use padic_spectral::linalg::{smith_form, Matrix, PadicMatrix};
use padic_spectral::padic::{PadicScalar, Zp};
use padic_spectral::poly::ZpPoly;
use padic_spectral::quantum::{measure, WaveFunction};
use padic_spectral::unitary::{jordan_decompose, power_zp};

const PRIMES: [u64; 3] = [3, 5, 7];

fn ring() -> impl Strategy<Value = Zp> {
    (0..PRIMES.len(), 1u32..=5).prop_map(|(i, k)| Zp::new(PRIMES[i], k).unwrap())
}

fn entries(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-400i64..400, n * n)
}

fn mat(r: &Zp, n: usize, e: &[i64]) -> PadicMatrix {
    PadicMatrix::from_i64(r, n, e).unwrap()
}

/// Nudges the diagonal until the determinant is a unit.
fn unit_mat(r: &Zp, n: usize, e: &[i64]) -> PadicMatrix {
    let mut m = mat(r, n, e);
    let mut bump = 0;
    while !m.det().is_unit() {
        bump += 1;
        let i = bump % n;
        let v = m.get(i, i).add_ref(&r.one());
        m.set(i, i, v);
    }
    m
}

fn scalar(r: &Zp, v: i64) -> PadicScalar {
    r.from_i64(v)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn valuation_is_ultrametric(r in ring(), a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let (x, y) = (scalar(&r, a), scalar(&r, b));
        let k = r.precision();
        prop_assert!(x.add_ref(&y).valuation() >= x.valuation().min(y.valuation()));
        prop_assert_eq!(x.mul_ref(&y).valuation(), (x.valuation() + y.valuation()).min(k));
    }

    #[test]
    fn teichmuller_is_multiplicative(r in ring(), a in 1u64..1000, b in 1u64..1000) {
        let p = r.p();
        prop_assume!(a % p != 0 && b % p != 0);
        let (wa, wb) = (r.teichmuller(a % p).unwrap(), r.teichmuller(b % p).unwrap());
        let wab = r.teichmuller(a * b % p).unwrap();
        prop_assert_eq!(wa.mul_ref(&wb), wab);
        prop_assert_eq!(wa.pow_u64(p), wa.clone());
        prop_assert_eq!(wa.residue_mod_p(), a % p);
    }

    #[test]
    fn reduction_is_a_ring_map(r in ring(), a in -5000i64..5000, b in -5000i64..5000, j in 1u32..=5) {
        prop_assume!(j <= r.precision());
        let (x, y) = (scalar(&r, a), scalar(&r, b));
        let red = |z: &PadicScalar| z.reduce_precision(j).unwrap();
        prop_assert_eq!(red(&x.mul_ref(&y)), red(&x).mul_ref(&red(&y)));
        prop_assert_eq!(red(&x.add_ref(&y)), red(&x).add_ref(&red(&y)));
    }

    #[test]
    fn cayley_hamilton(r in ring(), n in 1usize..=4, seed in entries(4)) {
        let a = mat(&r, n, &seed[..n * n]);
        prop_assert!(a.eval_poly(&a.char_poly()).is_zero());
        let (det, adj) = a.det_adjugate();
        prop_assert_eq!(a.mul(&adj), Matrix::scalar_like(&det, n));
    }

    #[test]
    fn unitary_group_closure(r in ring(), n in 1usize..=3, x in entries(3), y in entries(3)) {
        let (u, v) = (unit_mat(&r, n, &x[..n * n]), unit_mat(&r, n, &y[..n * n]));
        prop_assert!(u.is_unitary() && v.is_unitary());
        prop_assert!(u.mul(&v).is_unitary());
        let ui = u.inverse().unwrap();
        prop_assert!(ui.is_unitary());
        prop_assert!(u.mul(&ui).is_identity());
    }

    #[test]
    fn seminorm_sequence_is_submultiplicative(r in ring(), n in 1usize..=3, x in entries(3), k in 1u64..5, l in 1u64..5) {
        let a = mat(&r, n, &x[..n * n]);
        let v = |e: u64| a.pow_u64(e).min_valuation();
        prop_assert!(v(k + l) >= (v(k) + v(l)).min(r.precision()));
    }

    #[test]
    fn smith_form_diagonalises(r in ring(), n in 1usize..=3, x in entries(3), j in 1u32..=5) {
        prop_assume!(j <= r.precision());
        let a = mat(&r, n, &x[..n * n]);
        let s = smith_form(&a, j).unwrap();
        let aj = a.reduce_to(j).unwrap();
        prop_assert_eq!(s.left.mul(&aj).mul(&s.right), s.diagonal());
        prop_assert!(s.left.det().is_unit() && s.right.det().is_unit());
        prop_assert!(s.divisors.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn jordan_parts_commute_and_multiply_back(r in ring(), n in 1usize..=3, x in entries(3)) {
        let u = unit_mat(&r, n, &x[..n * n]);
        let jd = jordan_decompose(&u).unwrap();
        prop_assert_eq!(jd.semisimple.mul(&jd.unipotent), u.clone());
        prop_assert!(jd.semisimple.commutes_with(&jd.unipotent));
        let p = BigUint::from(r.p());
        let pk = p.pow(r.precision() + 2);
        prop_assert!(jd.unipotent.pow(&pk).is_identity());
    }

    #[test]
    fn power_zp_is_a_group_law(r in ring(), x in entries(2), t in -3000i64..3000, s in -3000i64..3000) {
        let p = r.p() as i64;
        let scaled: Vec<i64> = x.iter().map(|v| v * p).collect();
        let u = mat(&r, 2, &scaled).add(&PadicMatrix::identity_in(&r, 2));
        let (t, s) = (scalar(&r, t), scalar(&r, s));
        let lhs = power_zp(&u, &t.add_ref(&s)).unwrap();
        let rhs = power_zp(&u, &t).unwrap().mul(&power_zp(&u, &s).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(power_zp(&u, &r.one()).unwrap(), u.clone());
        prop_assert!(power_zp(&u, &r.zero()).unwrap().is_identity());
    }

    #[test]
    fn shift_sums_are_shift_invariant(
        r in ring(),
        terms in prop::collection::vec((-12i64..12, -50i64..50), 1..6),
        d in 1i64..=6,
        c in 0i64..6,
        shift in -20i64..20,
    ) {
        let f = LaurentPoly::from_i64_terms(&r, &terms);
        let c = c % d;
        prop_assert_eq!(f.shift_sum(c, d).unwrap(), f.shift(shift * d).shift_sum(c, d).unwrap());
        let parts = f.project_mod(d).unwrap();
        for (i, part) in parts.iter().enumerate() {
            prop_assert_eq!(part, &f.shift_sum(i as i64, d).unwrap());
        }
    }

    #[test]
    fn measurement_is_idempotent(r in ring(), x in entries(3), mask in 0u8..8, psi in prop::collection::vec(-99i64..99, 3)) {
        let s = unit_mat(&r, 3, &x);
        let d: Vec<PadicScalar> = (0..3).map(|i| r.from_i64(((mask >> i) & 1) as i64)).collect();
        let pi = s.mul(&Matrix::diagonal(&d)).mul(&s.inverse().unwrap());
        let psi = WaveFunction::from_i64(&r, &psi).unwrap();
        let once = measure(&psi, &pi).unwrap();
        let twice = measure(&once.state, &pi).unwrap();
        prop_assert_eq!(once.state.entries(), twice.state.entries());
        prop_assert!(once.norm <= psi.norm());
    }

    #[test]
    fn bezout_certificate_matches_sylvester(
        r in ring(),
        f in prop::collection::vec(-40i64..40, 1..5),
        g in prop::collection::vec(-40i64..40, 1..5),
    ) {
        let (f, g) = match (UnitPolynomial::from_i64(&r, &f), UnitPolynomial::from_i64(&r, &g)) {
            (Ok(f), Ok(g)) => (f, g),
            _ => return Ok(()),
        };
        let o = orthogonality_test(&f, &g, r.precision()).unwrap();
        prop_assert_eq!(&o.resultant, &poly_resultant(f.poly(), g.poly()).unwrap());
        prop_assert_eq!(o.orthogonal, o.resultant.is_unit());
        let combo = o.k.mul(f.poly()).add(&o.l.mul(g.poly()));
        prop_assert!(combo == ZpPoly::constant(&o.resultant));
    }
}
