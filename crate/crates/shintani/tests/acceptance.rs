//! Acceptance suite: the nine headline checks, one test (and one pass/fail
//! line) each.

use shintani::cyclo::Cyclotomic;
use shintani::descent::{
    check_descent_average, check_diagonal_collapse, check_norm_square, check_rotation_bijection,
    check_twisted_involution_count, LevelTriple,
};
use shintani::group::matrix::EnumeratedGroup;
use shintani::group::norm::{jordan_negation_witness, jordan_nilpotent, partitions, NormCaps};
use shintani::group::perm::PermGroup;
use shintani::report::{
    check_indicator_laws, check_indicator_vanishing, check_twisting_identity, default_level_cap,
    oracle_report, prediction_report, run_compare_target, ExperimentConfig, Target,
};
use shintani::slnparam::{build_orbit_datum, e_orbits, enumerate_semisimple_classes, M2};

const GROUP_CAP: u64 = 200_000;

fn caps() -> NormCaps {
    NormCaps::default()
}

#[test]
fn t1_oracle_anchor() {
    let t = Target { n: 2, p: 2, level: 1 };
    let rep = oracle_report(&t, GROUP_CAP).unwrap();
    assert_eq!(rep.multiset(), vec![0, 0, 1, 1, 1]);
    assert_eq!(rep.sum_m2_deg, 10);
    assert!(rep.index_check());
    println!("T1 PASS: SL2(F4)/SL2(F2) m2 multiset {{1,1,1,0,0}}, sum m2*deg = 10");
}

#[test]
fn t2_closed_form_match() {
    let cfg = ExperimentConfig::default();
    let v2 = run_compare_target(&Target { n: 2, p: 2, level: 1 }, &cfg).unwrap();
    assert!(v2.pass());
    assert!(v2.resolutions.is_empty(), "q = 2 must need no resolution");
    let v3 = run_compare_target(&Target { n: 2, p: 3, level: 1 }, &cfg).unwrap();
    assert!(v3.pass());
    assert_eq!(v3.resolutions.len(), 1);
    let o3 = oracle_report(&Target { n: 2, p: 3, level: 1 }, GROUP_CAP).unwrap();
    assert_eq!(o3.group_order, 720);
    assert_eq!(o3.index, 30);
    println!("T2 PASS: compare passes on (2,2) with zero resolutions and on (2,3) after resolution");
}

#[test]
fn t3_extended_match() {
    let cfg = ExperimentConfig::default();
    let t = Target { n: 2, p: 5, level: 1 };
    let o = oracle_report(&t, GROUP_CAP).unwrap();
    assert_eq!(o.group_order, 15600);
    let v = run_compare_target(&t, &cfg).unwrap();
    assert!(v.pass());
    println!("T3 PASS: compare passes exactly on (2,5), |SL2(F25)| = 15600");
}

#[test]
fn t4_twisting_identity() {
    let msg = check_twisting_identity(2, 2, 1, true, 2, GROUP_CAP, &caps()).unwrap();
    assert_eq!(msg, "5 characters agree");
    println!("T4 PASS: c_2(chi) equals the twisted mean for all 5 irreducibles of SL2(F4)");
}

#[test]
fn t5_indicator_laws() {
    // root-of-unity law and uniqueness of the distinguished extension
    let msg = check_indicator_laws(1, 2, 1, false, 2, 2, GROUP_CAP).unwrap();
    assert!(msg.contains("3 stable characters, 3 self-associate"));
    // the indicators equal the mean of the descended extension over the
    // fixed subgroup, so the law transfers to m_2 of the descents
    let lt = LevelTriple::new(1, 2, 1, false, 2, 2, GROUP_CAP).unwrap();
    assert_eq!(check_descent_average(&lt, &caps()).unwrap(), 6);
    // vanishing case, instantiated over the q = 4 tower on the same group
    let msg = check_indicator_vanishing(1, 2, 2, false, 2, GROUP_CAP).unwrap();
    assert!(msg.contains("10 vanishing"));
    println!("T5 PASS: indicators are 2m-th roots of unity on self-associate characters and 0 otherwise; distinguished extension unique");
}

#[test]
fn t6_structural_identities() {
    for (n, p, level, special, r) in [
        (1usize, 2u64, 2u32, false, 2usize),
        (2, 2, 1, true, 2),
        (2, 2, 1, true, 3),
        (2, 2, 2, true, 2),
    ] {
        let g = EnumeratedGroup::enumerate(n, p, level, special, GROUP_CAP).unwrap();
        let frob = g.frob_perm(1);
        check_rotation_bijection(&g, &frob, r, GROUP_CAP).unwrap();
        check_diagonal_collapse(&g, &frob, r, GROUP_CAP).unwrap();
    }
    for (n, p, d, special, r, m) in [(1usize, 2u64, 1u32, false, 2u32, 2u32), (2, 2, 1, true, 2, 1)]
    {
        let lt = LevelTriple::new(n, p, d, special, r, m, GROUP_CAP).unwrap();
        check_norm_square(&lt.tower, &lt.g_rm, &lt.g_r, &lt.g_1, r, m, &caps()).unwrap();
    }
    println!("T6 PASS: rotation bijection, diagonal collapse and the norm-map square hold on GL1(F4), SL2(F2), SL2(F4)");
}

#[test]
fn t7_negation_witnesses() {
    let mut count = 0;
    for n in 1..=4usize {
        for part in partitions(n) {
            for p in [3u64, 5] {
                let g = jordan_negation_witness(n, p, 2, &part);
                let nilp = jordan_nilpotent(n, p, 2, &part);
                assert!(g.mul(&nilp) == nilp.neg().mul(&g));
                assert!(g.det() == shintani::fq::FqElem::one(p, 2));
                count += 1;
            }
        }
    }
    println!("T7 PASS: negation witnesses found for all {} Jordan types", count);
}

#[test]
fn t8_invariant_suite() {
    let mut data = 0usize;
    // q in {2, 3, 4, 5}; q = 4 realized as p = 2 at degree 2
    for (n, p, d0) in [
        (1u32, 2u64, 1u32),
        (1, 3, 1),
        (1, 2, 2),
        (1, 5, 1),
        (2, 2, 1),
        (2, 3, 1),
        (2, 2, 2),
        (2, 5, 1),
        (3, 2, 1),
        (3, 3, 1),
        (3, 2, 2),
        (3, 5, 1),
    ] {
        let classes = enumerate_semisimple_classes(n, p, d0, default_level_cap(n)).unwrap();
        for s in &classes {
            for e in e_orbits(s) {
                let d = build_orbit_datum(s, &e).unwrap();
                if !d.f2_stable {
                    continue;
                }
                data += 1;
                if d.gamma_stable {
                    // parity law and index identities
                    if d.t % 2 == 0 {
                        assert_eq!(d.t * 2, d.d * d.dprime);
                    } else {
                        assert_eq!(d.t, d.d * d.dprime);
                    }
                    let lm = d.chars_minus().len() as u32;
                    let lmg = d.chars_minus_gamma().len() as u32;
                    assert_eq!(lmg, d.dprime);
                    assert_eq!(lmg / lm, if d.t % 2 == 0 { 2 } else { 1 });
                }
                assert!(d.check_pairing_inversion());
                for zc in 0..d.tilde_classes.len() {
                    // decomposition consistency: the ambient restriction
                    // splits into the closed-form values over the class
                    let total = d.m2_gl_restriction(zc);
                    let mut const_part = 0i32;
                    let mut eps_part = 0i32;
                    for ip in 0..d.t {
                        let (m2, _) = d.m2_irreducible(ip, zc);
                        match m2 {
                            M2::Eps => unreachable!(),
                            M2::Int(v) => const_part += v as i32,
                            M2::OnePlusEps => {
                                const_part += 1;
                                eps_part += 1;
                            }
                            M2::OneMinusEps => {
                                const_part += 1;
                                eps_part -= 1;
                            }
                        }
                        // every resolved value stays within {0, 1, 2}
                        for eps in [1i8, -1] {
                            assert!(m2.resolve(eps) <= 2);
                        }
                    }
                    assert_eq!(const_part, total as i32);
                    assert_eq!(eps_part, 0);
                    if total > 0 {
                        assert!(d.rational_form_selfdual(zc));
                    }
                    // direct orbit count agrees with the closed form
                    for i in 0..d.t {
                        let direct = d.sqrt_multiplicity(i, zc);
                        let closed = Cyclotomic::from_int(d.lusztig_multiplicity(i, zc) as i64);
                        assert_eq!(direct, closed);
                    }
                }
            }
        }
    }
    println!("T8 PASS: parity, indices, pairing inversion, decomposition, orbit counts over {} orbit data", data);
}

#[test]
fn t9_counting_identity() {
    let mut checked = 0;
    for w in [
        PermGroup::symmetric(2),
        PermGroup::symmetric(3),
        PermGroup::product_of_symmetric(&[2, 2]),
    ] {
        for twist in w.involutive_twists() {
            check_twisted_involution_count(&w, &twist).unwrap();
            checked += 1;
        }
    }
    println!("T9 PASS: counting identity holds for {} (group, twist) pairs", checked);
}

// keep the prediction side of T2/T3 honest about symbolic data
#[test]
fn prediction_artifacts_are_complete() {
    for (p, expect) in [(2u64, 5usize), (3, 13), (5, 29)] {
        let t = Target { n: 2, p, level: 1 };
        let pred = prediction_report(&t, 0).unwrap();
        assert_eq!(pred.records.len(), expect);
    }
}
