use proptest::prelude::*;

use pervarr_core::arrangement::{
    split_di_dii, stage1_intermediate, stage1_pushforward, stage1_shriek, LocalSystem,
};
use pervarr_core::decomp::{count_closed_form, count_oracle, decompose_branches, is_irreducible};
use pervarr_core::exact::{Field, GaussianRational, Polynomial, Rational, RationalFunction};
use pervarr_core::linalg::{cokernel_basis, kernel_basis, Matrix};
use pervarr_core::mv::{ambient_var_matrix, minor_matrix, stage2_extension, stage2_pushforward, Extension};
use pervarr_core::verify::standard_values;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

/// Sparse polynomial in `nvars` variables with total degree at most `deg`.
fn polynomial(nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), rational()), 0..=terms).prop_map(
        move |ts| {
            let ts = ts.into_iter().map(|(mut e, c)| {
                let mut budget = deg;
                for x in &mut e {
                    *x = (*x).min(budget);
                    budget -= *x;
                }
                (e, c)
            });
            Polynomial::from_terms(nvars, ts)
        },
    )
}

fn rational_function() -> impl Strategy<Value = RationalFunction> {
    (polynomial(3, 2, 3), polynomial(3, 2, 3).prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn small_entry() -> impl Strategy<Value = Rational> {
    prop_oneof![2 => Just(Rational::from_integer(0)), 3 => (-3i64..=3).prop_map(Rational::from_integer), 1 => rational()]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_entry(), r * c).prop_map(move |d| Matrix::from_vec(r, c, d))
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(small_entry(), n * n).prop_map(move |d| Matrix::from_vec(n, n, d))
    })
}

fn multiplier() -> impl Strategy<Value = Rational> {
    prop_oneof![3 => prop::sample::select(standard_values()), 1 => nonzero_rational()]
}

fn local_system(nmax: usize) -> impl Strategy<Value = LocalSystem<Rational>> {
    prop::collection::vec(multiplier(), 1..=nmax).prop_map(|a| LocalSystem::new(a).unwrap())
}

fn cofactor_det(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return Rational::one();
    }
    let rest: Vec<usize> = (1..n).collect();
    (0..n).fold(Rational::zero(), |acc, c| {
        let cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
        let term = m.get(0, c).clone() * cofactor_det(&m.select(&rest, &cols));
        if c % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_inverse(x in nonzero_rational()) {
        prop_assert!((x.clone() * x.inv().unwrap()).is_one());
    }

    #[test]
    fn gaussian_inverse(x in gaussian().prop_filter("nonzero", |x| !x.is_zero())) {
        prop_assert!((x.clone() * x.inv().unwrap()).is_one());
    }

    #[test]
    fn rational_function_inverse(x in rational_function().prop_filter("nonzero", |x| !x.is_zero())) {
        prop_assert!((x.clone() * x.inv().unwrap()).is_one());
    }

    #[test]
    fn polynomial_distributes(p in polynomial(4, 5, 5), q in polynomial(4, 5, 5), r in polynomial(4, 5, 5)) {
        let lhs = (p.clone() + q.clone()) * r.clone();
        prop_assert_eq!(lhs, p * r.clone() + q * r);
    }

    #[test]
    fn polynomial_ring_laws(p in polynomial(3, 4, 4), q in polynomial(3, 4, 4), r in polynomial(3, 4, 4)) {
        prop_assert_eq!(p.clone() + q.clone(), q.clone() + p.clone());
        prop_assert_eq!(p.clone() * q.clone(), q.clone() * p.clone());
        prop_assert_eq!((p.clone() + q.clone()) + r.clone(), p.clone() + (q.clone() + r.clone()));
        prop_assert_eq!((p.clone() * q.clone()) * r.clone(), p * (q * r));
    }

    #[test]
    fn normalize_is_idempotent(x in rational_function(), g in gaussian(), r in rational()) {
        let once = x.clone().normalize();
        prop_assert_eq!(once.clone().normalize().to_string(), once.to_string());
        prop_assert_eq!(g.clone().normalize().normalize(), g.normalize());
        prop_assert_eq!(r.clone().normalize().normalize(), r.normalize());
    }

    #[test]
    fn printer_parser_round_trip(r in rational(), g in gaussian(), p in polynomial(4, 4, 5)) {
        prop_assert_eq!(Rational::parse(&r.to_string()).unwrap(), r);
        prop_assert_eq!(GaussianRational::parse(&g.to_string()).unwrap(), g);
        let f = RationalFunction::from(p.clone());
        let back = RationalFunction::parse(&f.to_string()).unwrap();
        prop_assert_eq!(back.as_polynomial(), Some(&p.promote(back.numer().nvars())));
    }

    #[test]
    fn rank_of_transpose(m in matrix(8)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in square(5)) {
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn kernel_and_cokernel(m in matrix(8)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).unwrap().iter().all(Field::is_zero));
        }
        let coker = cokernel_basis(&m);
        prop_assert_eq!(coker.dim() + m.rank(), m.rows());
        prop_assert!(coker.projection.mul(&m).unwrap().is_zero());
    }

    #[test]
    fn stage1_triangles_commute(l in local_system(6)) {
        prop_assert!(stage1_pushforward(&l).commutes_with(&l));
        prop_assert!(stage1_shriek(&l).commutes_with(&l));
        prop_assert!(stage1_intermediate(&l).commutes_with(&l));
        let s = split_di_dii(&l);
        prop_assert!(s.d_i.commutes_with(&l) || s.d_i.dim_a() == 0);
        prop_assert!(s.d_ii.commutes_with(&l));
    }

    #[test]
    fn splitting_is_vertexwise_additive(l in local_system(6)) {
        let full = stage1_pushforward(&l);
        let s = split_di_dii(&l);
        prop_assert_eq!(s.d_i.dim_a() + s.d_ii.dim_a(), full.dim_a());
        for i in 0..l.n() {
            prop_assert_eq!(s.d_i.dim_b()[i] + s.d_ii.dim_b()[i], full.dim_b()[i]);
        }
        prop_assert_eq!(s.k, l.k());
    }

    #[test]
    fn intermediate_arms_are_images(l in local_system(6)) {
        let full = stage1_pushforward(&l);
        let mid = stage1_intermediate(&l);
        for i in 0..l.n() {
            prop_assert_eq!(mid.dim_b()[i], full.p(i).rank());
        }
    }

    #[test]
    fn stage2_triangles_commute(l in local_system(6)) {
        for d in [stage1_pushforward(&l), stage1_shriek(&l), stage1_intermediate(&l)] {
            for kind in [Extension::Pushforward, Extension::Shriek, Extension::Intermediate] {
                if let Ok(obj) = stage2_extension(&d, &l, kind) {
                    prop_assert!(obj.triangle_commutes());
                }
            }
        }
        let pushed = stage2_pushforward(&stage1_pushforward(&l), &l).unwrap();
        prop_assert!(pushed.triangle_commutes());
        prop_assert_eq!(pushed.phi, pushed.dim_psic());
        prop_assert_eq!(&pushed.nmap, &Matrix::identity(pushed.dim_psic()));
    }

    #[test]
    fn pushforward_variation_has_rank_of_minor(l in local_system(6).prop_filter("generic", |l| l.k() == 0 && l.n() >= 2)) {
        let obj = stage2_pushforward(&stage1_pushforward(&l), &l).unwrap();
        let minor = minor_matrix(&ambient_var_matrix(&l)).unwrap();
        prop_assert_eq!(obj.rank_var(), minor.rank());
    }

    #[test]
    fn counts_are_permutation_invariant(l in local_system(6), seed in any::<u64>()) {
        let n = l.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let lp = l.permuted(&perm).unwrap();
        prop_assert_eq!(is_irreducible(&l), is_irreducible(&lp));
        prop_assert_eq!(count_closed_form(&l), count_closed_form(&lp));
        prop_assert_eq!(count_oracle(&l).unwrap().oracle_count, count_oracle(&lp).unwrap().oracle_count);
    }

    #[test]
    fn count_grows_with_trivial_lines(
        (a, k1, k2) in (2usize..=6).prop_flat_map(|n| (
            prop::collection::vec(multiplier().prop_filter("non-trivial", |x| !x.is_one()), n),
            0..n,
            1..=n,
        )).prop_filter("k1 < k2", |(_, k1, k2)| k1 < k2)
    ) {
        let with_trivial = |k: usize| {
            let mut b = a.clone();
            b[..k].iter_mut().for_each(|x| *x = Rational::one());
            LocalSystem::new(b).unwrap()
        };
        let (l, m) = (with_trivial(k1), with_trivial(k2));
        prop_assume!(!l.product_is_one() && !m.product_is_one());
        prop_assert!(count_closed_form(&l) < count_closed_form(&m));
        prop_assert!(count_oracle(&l).unwrap().oracle_count < count_oracle(&m).unwrap().oracle_count);
    }

    #[test]
    fn irreducible_iff_single_factor_away_from_two_lines(l in local_system(6)) {
        prop_assume!(l.n() != 2);
        let one = count_closed_form(&l) == 1;
        prop_assert_eq!(is_irreducible(&l), one);
        prop_assert_eq!(count_oracle(&l).unwrap().oracle_count == 1, one);
    }

    #[test]
    fn branches_add_up(l in local_system(6)) {
        prop_assume!(l.k() >= 1);
        let (b1, b2) = decompose_branches(&l).unwrap();
        prop_assert!(b1.agrees && b2.agrees);
        prop_assert_eq!(b1.oracle_count + b2.oracle_count, count_closed_form(&l));
    }
}

#[test]
fn two_lines_with_unit_product_are_reducible_only_by_the_criterion() {
    // For two lines the minor is the 1x1 block 1 - a_1, which never sees the
    // product, so a_1 a_2 = 1 with a_1 != 1 still gives a single factor.
    for (a1, a2) in [("2", "1/2"), ("-1", "-1"), ("3", "1/3")] {
        let l = LocalSystem::new(vec![Rational::parse(a1).unwrap(), Rational::parse(a2).unwrap()]).unwrap();
        assert!(!is_irreducible(&l));
        assert_eq!(count_closed_form(&l), 1);
        assert_eq!(count_oracle(&l).unwrap().oracle_count, 1);
    }
}

fn equivalence_grid(nmax: usize) {
    let values = standard_values();
    for n in 1..=nmax {
        let grid = pervarr_core::sweep::Grid::uniform(values.clone(), n, usize::MAX).unwrap();
        let bad: Vec<String> = grid
            .par_map(|a| {
                let l = LocalSystem::new(a.clone()).unwrap();
                let closed = count_closed_form(&l);
                let ok = count_oracle(&l).unwrap().oracle_count == closed
                    && (l.k() == 0 || {
                        let (b1, b2) = decompose_branches(&l).unwrap();
                        b1.oracle_count + b2.oracle_count == closed
                    });
                (!ok).then(|| format!("{a:?}"))
            })
            .into_iter()
            .flatten()
            .collect();
        assert!(bad.is_empty(), "n={n}: {} disagreements, first {:?}", bad.len(), bad.first());
    }
}

#[test]
fn counts_agree_on_grid_up_to_five_lines() {
    equivalence_grid(5);
}

#[test]
#[ignore = "exhaustive n <= 8 grid, about 6.7 million points"]
fn counts_agree_on_grid_up_to_eight_lines() {
    equivalence_grid(8);
}
