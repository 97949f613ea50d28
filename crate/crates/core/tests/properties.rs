use proptest::prelude::*;

use relface::combinatorics::binomial_big;
use relface::constructions::{stacked_sphere, stellar_subdivisions};
use relface::homology::{complex_betti, reduced_betti};
use relface::io::{format_complex, parse_complex};
use relface::recognition::{classify_homology, is_stacked_sphere, HomologyClass};
use relface::sigma_mu::{morse_bounds, sigma_vector, vertex_link};
use relface::stanley_reisner::{graded_betti, resolution_oracle};
use relface::{FaceVector, FieldSpec, HVector, Rational, RelativeComplex, SimplicialComplex, VertexSet};

const FIELDS: [FieldSpec; 3] = [FieldSpec::Rational, FieldSpec::F2, FieldSpec::F3];

fn labels(n: u32) -> Vec<u32> {
    (1..=n).collect()
}

/// A complex on `{1..n}` generated by random nonempty subsets.
fn complex(n: u32, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u64..(1 << n), 1..=max_facets).prop_map(move |masks| {
        let ls = labels(n);
        let facets = masks.iter().map(|&m| VertexSet::from_mask(m, &ls)).collect();
        SimplicialComplex::new(facets, Some(VertexSet::range(n))).unwrap()
    })
}

/// A pure complex of dimension `k - 1` on `{1..n}`.
fn pure_complex(n: u32, k: u32, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    let sets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() == k).collect();
    prop::collection::vec(prop::sample::select(sets), 1..=max_facets).prop_map(move |masks| {
        let ls = labels(n);
        let facets = masks.iter().map(|&m| VertexSet::from_mask(m, &ls)).collect();
        SimplicialComplex::new(facets, Some(VertexSet::range(n))).unwrap()
    })
}

/// `(Δ, Δ_W)` for a random vertex subset `W`.
fn pair(delta: SimplicialComplex, w: u64) -> RelativeComplex {
    let n = delta.ground_set().len() as u32;
    let sub = delta.induced(&VertexSet::from_mask(w, &labels(n))).with_ground(delta.ground_set());
    RelativeComplex::new(delta, sub).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_and_h_vectors_invert(delta in complex(7, 6), w in 0u64..128) {
        let psi = pair(delta, w);
        let f = psi.f_vector().unwrap();
        let d = psi.dim().unwrap() + 1;
        let h = HVector::from_f(&f, d);
        prop_assert_eq!(FaceVector::from_h(&h, d), f);
    }

    #[test]
    fn reduced_euler_characteristic_is_field_independent(delta in complex(7, 6)) {
        let f = RelativeComplex::absolute(delta.clone()).f_vector().unwrap();
        let chi: i64 = f.0.iter().enumerate().map(|(k, &x)| if k % 2 == 1 { x } else { -x }).sum();
        for field in FIELDS {
            prop_assert_eq!(complex_betti(&delta, field).unwrap().alternating_sum(), chi);
        }
    }

    #[test]
    fn relative_euler_poincare(delta in complex(7, 6), w in 0u64..128) {
        let psi = pair(delta, w);
        let f = psi.f_vector().unwrap();
        let chi: i64 = f.0.iter().enumerate().map(|(k, &x)| if k % 2 == 1 { x } else { -x }).sum();
        for field in FIELDS {
            prop_assert_eq!(reduced_betti(&psi, field).unwrap().alternating_sum(), chi);
        }
    }

    #[test]
    fn vertex_link_face_sums(delta in complex(7, 6), w in 0u64..128) {
        let psi = pair(delta, w);
        let f = psi.f_vector().unwrap();
        let links: Vec<FaceVector> = psi
            .ground_set()
            .iter()
            .filter_map(|v| vertex_link(&psi, v))
            .map(|lk| lk.f_vector().unwrap())
            .collect();
        for i in 0..=f.dim() {
            let lhs: i64 = links.iter().map(|lf| lf.get(i - 1)).sum();
            prop_assert_eq!(lhs, (i as i64 + 1) * f.get(i), "i = {}", i);
        }
    }

    #[test]
    fn vertex_link_g_sums(delta in pure_complex(7, 4, 8), w in 0u64..128) {
        let psi = pair(delta, w);
        let dim = psi.total().dimension().unwrap();
        let g = psi.g_vector().unwrap();
        let link_g: Vec<_> = psi
            .ground_set()
            .iter()
            .filter_map(|v| vertex_link(&psi, v))
            .map(|lk| lk.g_vector().unwrap())
            .collect();
        for k in 0..=dim {
            let lhs: i64 = link_g.iter().map(|lg| lg.get(k)).sum();
            let rhs = (dim as i64 + 2 - k as i64) * g.get(k) + (k as i64 + 1) * g.get(k + 1);
            prop_assert_eq!(lhs, rhs, "k = {}", k);
        }
    }

    #[test]
    fn hochster_matches_resolution(delta in complex(6, 5), w in 0u64..64, f2 in any::<bool>()) {
        let field = if f2 { FieldSpec::F2 } else { FieldSpec::Rational };
        let psi = pair(delta, w);
        let n = psi.ground_set().len();
        let h = graded_betti(&psi, field).unwrap();
        let o = resolution_oracle(&psi, field, n).unwrap();
        prop_assert!(h.agrees_with(&o), "{:?} vs {:?}", h.nonzero(), o.nonzero());
    }

    #[test]
    fn sigma_from_graded_betti_numbers(delta in complex(7, 6), w in 0u64..128) {
        let psi = pair(delta, w);
        let n = psi.ground_set().len() as i64;
        let table = graded_betti(&psi, FieldSpec::Rational).unwrap();
        let sigma = sigma_vector(&psi, FieldSpec::Rational).unwrap();
        for i in 0..=n {
            let mut s = Rational::from_integer(0.into());
            for k in 0..=n {
                let b = table.get(k - i, k);
                if b > 0 {
                    s += Rational::new(b.into(), binomial_big(n, k));
                }
            }
            s /= Rational::from_integer((n + 1).into());
            prop_assert_eq!(sigma.get(i as i32 - 1), s, "i = {}", i);
        }
    }

    #[test]
    fn morse_inequalities(delta in complex(7, 6), w in 0u64..128) {
        let psi = pair(delta, w);
        let dim = psi.dim().unwrap();
        for row in morse_bounds(&psi, FieldSpec::Rational, dim + 1).unwrap() {
            prop_assert!(row.holds && row.alternating_holds, "{:?}", row);
        }
    }

    #[test]
    fn text_format_round_trips(delta in complex(9, 6), extra in 0u32..3) {
        let delta = delta.with_ground(&VertexSet::range(9 + extra));
        prop_assert_eq!(parse_complex(&format_complex(&delta)).unwrap(), delta);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn stacked_spheres_attain_the_lower_bound(d in 2u32..5, extra in 0u32..5, seed in any::<u64>()) {
        let s = stacked_sphere(d, d + 2 + extra, seed).unwrap();
        prop_assert_eq!(RelativeComplex::absolute(s.clone()).g_vector().unwrap().get(2), 0);
        prop_assert!(is_stacked_sphere(&s, FieldSpec::Rational).unwrap());
    }

    #[test]
    fn stellar_subdivision_keeps_the_homology_class(k in 1usize..4, seed in any::<u64>()) {
        let base = relface::constructions::cross_polytope(3);
        let s = stellar_subdivisions(&base, k, seed).unwrap();
        prop_assert_eq!(classify_homology(&s, FieldSpec::Rational).unwrap().class, HomologyClass::Sphere);
        let f = RelativeComplex::absolute(s).f_vector().unwrap();
        prop_assert_eq!(f.get(0), 6 + k as i64);
    }
}
