//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.
//! Two criteria assert verbatim agreement with printed table cells that are
//! provably inconsistent with the rest of the published data; those tests
//! print the machine-checked witnesses and fail honestly rather than weaken
//! the comparison. See the README errata section for the full inventory.

use std::time::Instant;

use num_complex::Complex64;
use num_rational::Rational64;

use burniat_core::affine::{parse_word, ElementFreeness};
use burniat_core::characters::{
    canonical_masks, decompose_trace, multiplicity, trace_of_multiset, CharMultiset, Character,
    TraceVector,
};
use burniat_core::checker::{self, ConditionStatus, ClassificationRoute};
use burniat_core::hodge::{self, HodgeTriple};
use burniat_core::scenario::{builtin, builtin_names, FAMILY_WORDS};
use burniat_core::tables;
use burniat_core::theta;
use burniat_core::theta_num::{self, SampleStream, SignTableOptions, ThetaParams};
use burniat_core::Sign;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_family_table_reproduction() {
    let start = Instant::now();
    let report = tables::diff_families().unwrap();
    let chi_cells = report
        .cells
        .iter()
        .filter(|c| c.column == "chi_A" && c.matches)
        .count();
    let form_cells = report
        .cells
        .iter()
        .filter(|c| c.column == "G-invariant 1-forms" && c.matches)
        .count();
    let elapsed = start.elapsed();
    let pass = chi_cells == 16 && form_cells == 16 && elapsed.as_secs_f64() < 1.0;
    verdict(
        "1",
        pass,
        &format!(
            "chi_A column {chi_cells}/16, invariant-forms column {form_cells}/16, {:.3}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "{}", report.to_text());
}

#[test]
fn criterion_02_theta_sign_tables() {
    let start = Instant::now();
    let report = tables::diff_theta_signs().unwrap();
    let basic_matches = report
        .cells
        .iter()
        .filter(|c| !c.family.contains(' ') && c.matches)
        .count();
    let worked_matches = report
        .cells
        .iter()
        .filter(|c| c.family.contains(' ') && c.matches)
        .count();
    let elapsed = start.elapsed();
    let pass = basic_matches == 56 && worked_matches == 48 && elapsed.as_secs_f64() < 1.0;
    verdict(
        "2",
        pass,
        &format!(
            "basic-involution grid {basic_matches}/56, worked generator tables {worked_matches}/48, {:.3}s",
            elapsed.as_secs_f64()
        ),
    );
    // The six printed cells of the second worked block contradict the
    // printed basic-involution grid itself: each violates column
    // multiplicativity, witnessed in the diff. The criterion demands 48/48,
    // which the print makes unattainable; the failure below documents it.
    assert!(
        report.all_mismatches_witnessed(),
        "every worked-table mismatch must carry a machine witness\n{}",
        report.to_text()
    );
    assert!(pass, "{}", report.to_text());
}

#[test]
fn criterion_03_section_character_decompositions() {
    let chi = |s: &str| Character::parse(s).unwrap();
    let s1 = builtin("S1").unwrap();
    let ms = s1.sections();
    let mut pass = ["(+++)", "(++-)", "(+-+)", "(+--)"]
        .iter()
        .all(|s| ms.mult_of(chi(s)) == 2)
        && ms.total_dim() == 8;
    let s2 = builtin("S2").unwrap();
    let ms = s2.sections();
    pass &= ["(+++)", "(+-+)", "(-+-)", "(---)"]
        .iter()
        .all(|s| ms.mult_of(chi(s)) == 2)
        && ms.total_dim() == 8;
    for (name, _) in FAMILY_WORDS.iter().skip(2) {
        let s = builtin(name).unwrap();
        pass &= s.sections().is_regular(3);
    }
    verdict(
        "3",
        pass,
        "S1 and S2 decompose as doubled four-character blocks, S3..S16 are regular",
    );
    assert!(pass);
}

#[test]
fn criterion_04_hypersurface_invariants() {
    let x = hodge::x_invariants(48).unwrap();
    let summary = hodge::hodge_summary(&builtin("S5").unwrap()).unwrap();
    let pass = x.euler == 48
        && x.b1 == 6
        && x.b2 == 58
        && summary.b2_var_x == HodgeTriple(7, 29, 7)
        && summary.b2_fix_x == HodgeTriple(3, 9, 3);
    verdict(
        "4",
        pass,
        &format!(
            "e(X)={}, b1={}, b2={}, var {}, fix {}",
            x.euler, x.b1, x.b2, summary.b2_var_x, summary.b2_fix_x
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_form_action_table_reproduction() {
    // derived identities: hold for every family from recomputation alone
    let mut identities = true;
    for s in tables::family_scenarios().unwrap() {
        let h = hodge::hodge_summary(&s).unwrap();
        let q = h.q_y;
        identities &= h.euler_y == 6
            && h.c1sq_y == 6
            && h.b2_y() == HodgeTriple(q, 4 + 2 * q, q);
    }
    // verbatim reproduction of the printed cells
    let report = tables::diff_form_actions().unwrap();
    let mismatches = report.mismatches().len();
    let pass = identities && mismatches == 0;
    verdict(
        "5",
        pass,
        &format!(
            "derived identities {} on 16/16 families; printed-cell agreement {}/80 (13 printed cells are inconsistent with the same print's chi_A column or Betti shape; see witnesses)",
            if identities { "hold" } else { "FAIL" },
            80 - mismatches
        ),
    );
    assert!(identities);
    assert!(
        report.all_mismatches_witnessed(),
        "every mismatch must carry a machine witness\n{}",
        report.to_text()
    );
    // The criterion requires all 80 cells to match the print. Thirteen
    // printed cells (U/W in rows S2, S7, S8, S9, S13 and the variable Betti
    // column of S1..S4) each violate a consistency identity that the
    // recomputed cells satisfy, so exact reproduction is unattainable; the
    // assertion below records that honestly.
    assert!(pass, "{}", report.to_text());
}

#[test]
fn criterion_06_trace_vector_audit() {
    let start = Instant::now();
    let report = tables::diff_trace_vectors().unwrap();
    let mut families = report.mismatch_families();
    families.sort();
    families.dedup();

    // documented discrepancy set: covers at least S5, S6, S10
    let documented = ["S10", "S13", "S5", "S6", "S7", "S8", "S9"];
    let set_ok = families == documented
        && ["S5", "S6", "S10"].iter().all(|f| families.iter().any(|g| g == f));

    // every mismatch carries a witness violated by print, satisfied by
    // recomputation
    let witnessed = report.all_mismatches_witnessed();

    // recomputed rows satisfy (a) integrality and (b) the cross-check
    let mut recomputed_ok = true;
    for r in tables::recomputed_trace_rows().unwrap() {
        let tv = TraceVector::new(3, r.trace_vector.clone());
        recomputed_ok &= decompose_trace(&tv).is_ok();
        let s = builtin(&r.family).unwrap();
        let h = hodge::hodge_summary(&s).unwrap();
        recomputed_ok &= multiplicity(&tv, &Character::trivial(3)).unwrap()
            == Rational64::from_integer(h.b2_var_y.total());
    }

    // the chi_A trace vector column agrees with print on every row
    let chi_col_ok = report
        .cells
        .iter()
        .filter(|c| c.column == "trace vector chi_A")
        .all(|c| c.matches);

    // worked example: the recomputed S6 trace vector and its invariant part
    let s6 = tables::recomputed_trace_rows()
        .unwrap()
        .into_iter()
        .find(|r| r.family == "S6")
        .unwrap();
    let s6_ok = s6.trace_vector == vec![43, 3, -5, 3, 3, -5, 3, -5]
        && multiplicity(
            &TraceVector::new(3, s6.trace_vector.clone()),
            &Character::trivial(3),
        )
        .unwrap()
            == Rational64::from_integer(5);

    let elapsed = start.elapsed();
    let pass = set_ok && witnessed && recomputed_ok && chi_col_ok && s6_ok
        && elapsed.as_secs_f64() < 1.0;
    verdict(
        "6",
        pass,
        &format!(
            "mismatching rows {families:?} (documented superset of S5, S6, S10), all witnessed: {witnessed}, recomputed rows integral and cross-checked: {recomputed_ok}, S6 invariant dimension 5 = 1+3+1, {:.3}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "{}", report.to_text());
}

#[test]
fn criterion_07_hypothesis_verdicts() {
    let mut pass = true;
    let mut details = Vec::new();
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        let r = checker::full_report(&s).unwrap();
        match name {
            "S1" | "S2" => {
                let ok = r.condition5.status == ConditionStatus::Fails
                    && r.route == ClassificationRoute::Part1
                    && s.contains_all_flip();
                if !ok {
                    details.push(format!("{name}: expected failing condition 5 and part1 route"));
                }
                pass &= ok;
            }
            "sicilian" => {
                let ok = r.condition3.status == ConditionStatus::Verified
                    && r.condition5.status == ConditionStatus::Verified
                    && r.route == ClassificationRoute::Sicilian;
                if !ok {
                    details.push(format!("{name}: conditions not verified"));
                }
                pass &= ok;
            }
            _ => {
                let ok = r.condition3.status == ConditionStatus::Verified
                    && r.condition5.status == ConditionStatus::Verified
                    && r.mult_chi_a_positive_integer
                    && r.route == ClassificationRoute::Part2;
                if !ok {
                    details.push(format!("{name}: conditions or multiplicity not verified"));
                }
                pass &= ok;
            }
        }
    }
    verdict(
        "7",
        pass,
        &format!(
            "conditions 3 and 5 verified for S3..S16 and sicilian; condition 5 fails for S1, S2 with the all-flip route; mult(chi_A) positive integer throughout{}",
            if details.is_empty() {
                String::new()
            } else {
                format!("; problems: {details:?}")
            }
        ),
    );
    assert!(pass, "{details:?}");
}

#[test]
fn criterion_08_sicilian_chain() {
    let s = builtin("sicilian").unwrap();
    let h = hodge::hodge_summary(&s).unwrap();
    let h20_triv = h.h20_var.mult_of(Character::trivial(2));
    let h11_triv = multiplicity(&h.h11_var_trace, &Character::trivial(2)).unwrap();
    let h11_y = h.b2_fix_y.1 + h.b2_var_y.1;
    let pass = h.euler_x == 24
        && h.b2_x == 34
        && h.b2_var_x == HodgeTriple(3, 13, 3)
        && h20_triv == 0
        && h11_triv == Rational64::from_integer(1)
        && h11_y == 6
        && h.euler_y == 6;
    verdict(
        "8",
        pass,
        &format!(
            "e(X)={}, b2(X)={}, var {}, h20var invariant {}, h11var invariant {}, h11(Y)={}, e(Y)={}",
            h.euler_x, h.b2_x, h.b2_var_x, h20_triv, h11_triv, h11_y, h.euler_y
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let mut pass = true;

    // character orthogonality, all pairs
    for a in Character::all(3) {
        let t = a.trace_vector();
        for b in Character::all(3) {
            let expected = i64::from(a == b);
            pass &= multiplicity(&t, &b).unwrap() == Rational64::from_integer(expected);
        }
    }

    // decompose / trace round trip on 1000 random multisets of dimension <= 64
    let mut stream = SampleStream::new(42);
    for _ in 0..1000 {
        let mut ms = CharMultiset::new();
        let mut budget = 64u64;
        for c in Character::all(3) {
            let m = stream.next_u64() % 9;
            let m = m.min(budget);
            ms.add(c, m);
            budget -= m;
        }
        let tv = trace_of_multiset(&ms, 3);
        pass &= decompose_trace(&tv).unwrap() == ms;
    }

    // dz-sign and section-sign multiplicativity, exhaustive over the ambient
    // group, and the commutation pairing trivial on all 64 x 64 pairs
    let ambient = burniat_core::affine::ambient_group_elements();
    assert_eq!(ambient.len(), 64);
    for a in &ambient {
        for b in &ambient {
            let ab = a.compose(b).unwrap();
            let lhs: Vec<Sign> = burniat_core::forms::dz_signs(&ab);
            let rhs: Vec<Sign> = burniat_core::forms::dz_signs(a)
                .iter()
                .zip(burniat_core::forms::dz_signs(b))
                .map(|(&x, y)| x * y)
                .collect();
            pass &= lhs == rhs;
            for v in theta::BasisVector::TABLE_ORDER {
                pass &= theta::theta_sign(&ab, &v)
                    == theta::theta_sign(a, &v) * theta::theta_sign(b, &v);
            }
            pass &= burniat_core::affine::commutation_pairing(a, b).unwrap() == Sign::Plus;
        }
    }

    // chi0 independence of reported invariants, exhaustive over admissible
    // twists for every built-in scenario
    for name in builtin_names() {
        let s = builtin(name).unwrap();
        let h = hodge::hodge_summary(&s).unwrap();
        let chi_a = s.forms().chi_a();
        for chi0 in s.admissible_chi0() {
            let alt = hodge::h20_var_characters(&s, chi0).unwrap();
            pass &= alt.mult_of(Character::trivial(s.rank())) as i64 == h.b2_var_y.0;
            pass &= alt.mult_of(chi_a) == h.h20_var.mult_of(chi_a);
        }
    }

    // freeness of the seven nontrivial elements per family, on the invariant
    // hypersurface. The two pencil families contain the all-flip involution,
    // whose 64 fixed points on the ambient variety are isolated and avoided
    // by the hypersurface; every other element has empty fixed locus.
    let j = parse_word("i1 i2 i3").unwrap();
    for (name, _) in FAMILY_WORDS {
        let s = builtin(name).unwrap();
        pass &= s
            .freeness()
            .iter()
            .all(|f| f.free_on_invariant_hypersurface());
        let isolated: Vec<usize> = (0..7)
            .filter(|&i| {
                matches!(
                    s.freeness()[i],
                    ElementFreeness::IsolatedFixedPoints { .. }
                )
            })
            .collect();
        if name == "S1" || name == "S2" {
            pass &= isolated.len() == 1;
            let idx = isolated[0] + 1;
            let mask = canonical_masks(3)[idx];
            let mut e = burniat_core::affine::GroupElement::identity(3);
            for (k, g) in s.group().generators().iter().enumerate() {
                if mask & (1 << k) != 0 {
                    e = e.compose(g).unwrap();
                }
            }
            pass &= e == j;
            pass &= matches!(
                s.freeness()[isolated[0]],
                ElementFreeness::IsolatedFixedPoints { points: 64 }
            );
        } else {
            pass &= isolated.is_empty();
        }
    }

    let elapsed = start.elapsed();
    pass &= elapsed.as_secs_f64() < 5.0;
    verdict(
        "9",
        pass,
        &format!(
            "orthogonality, 1000 round trips, exhaustive multiplicativity and pairing on 64x64, chi0 independence, freeness (S1/S2 carry the one documented isolated-fixed-point element i1 i2 i3), {:.3}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_numeric_cross_validation() {
    let start = Instant::now();
    let mut pass = true;
    let c = Complex64::new;

    // sign table at both moduli triples, >= 100 samples, tolerance 1e-9
    let opts = SignTableOptions {
        samples: 100,
        tol: 1e-9,
        truncation_tol: 1e-12,
        seed: 1,
    };
    for moduli in [
        [c(0.0, 1.0), c(0.0, 1.0), c(0.0, 1.0)],
        [c(0.3, 1.2), c(0.0, 1.0), c(0.0, 2.0)],
    ] {
        let report = theta_num::verify_sign_table(moduli, &opts).unwrap();
        pass &= report.all_pass() && report.max_deviation < 1e-9;
    }

    // truncation self-consistency on >= 100 random inputs
    let mut stream = SampleStream::new(9);
    let mut checked = 0;
    while checked < 100 {
        let tau = c(stream.next_f64() - 0.5, 0.8 + stream.next_f64());
        let p = ThetaParams::new(0.5, 0.0, tau, 1e-12).unwrap();
        let z = stream.next_point(tau);
        let coarse = theta_num::theta_eval_at_order(&p, z, 7);
        let fine = theta_num::theta_eval_at_order(&p, z, 14);
        if coarse.error_bound.is_finite() {
            pass &= (coarse.value - fine.value).norm() <= coarse.error_bound;
            checked += 1;
        }
    }

    // odd theta vanishing at the origin
    for tau in [c(0.0, 1.0), c(0.3, 1.2), c(0.0, 2.0)] {
        let p = ThetaParams::new(0.5, 0.5, tau, 1e-12).unwrap();
        let r = theta_num::theta_eval(&p, c(0.0, 0.0)).unwrap();
        pass &= r.value.norm() <= r.error_bound + 1e-12;
    }

    let elapsed = start.elapsed();
    pass &= elapsed.as_secs_f64() < 10.0;
    verdict(
        "10",
        pass,
        &format!(
            "sign table verified at two moduli triples with 100 samples at 1e-9, 100 truncation self-consistency checks, odd theta vanishing, {:.3}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}
