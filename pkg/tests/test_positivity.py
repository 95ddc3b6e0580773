import pytest

from toricpos import (
    NotEffectiveSupport,
    ToricDivisor,
    augmented_base_locus,
    augmented_base_locus_exact,
    base_locus,
    chamber_scan,
    check_mode_agreement,
    classify_cones,
    decide_qample,
    disconnected_section_criterion,
    is_qnef,
    prime_divisor,
    realization_search,
    restrict,
    scan_qample,
    smallest_qample,
    stable_base_locus,
    stable_base_locus_exact,
    zero_divisor,
)

from .conftest import random_divisors


def test_classify_ample_anticanonical(totaro, totaro_H):
    flags = classify_cones(totaro_H)
    assert flags.ample and flags.nef and flags.big and flags.effective


def test_classify_zero_divisor(totaro):
    flags = classify_cones(zero_divisor(totaro))
    assert flags.nef and not flags.ample
    assert flags.pseudoeffective and not flags.big
    assert flags.effective


def test_classify_example_class_not_pseudoeffective(totaro_L):
    flags = classify_cones(totaro_L)
    assert not flags.pseudoeffective and not flags.big
    assert not flags.nef and flags.negative_wall is not None


def test_bidegree_one_minus_three_on_p1xp1(p1xp1):
    d = ToricDivisor(p1xp1, (1, -3, 0, 0))
    assert not classify_cones(d).pseudoeffective
    assert not classify_cones(-d).big


def test_base_locus_basic(p1):
    assert base_locus(ToricDivisor(p1, (1, 0))).is_empty
    report = base_locus(ToricDivisor(p1, (-1, 0)))
    assert report.no_sections and report.is_everything


def test_stable_base_locus_chain_matches_exact(totaro, totaro_L, totaro_H, p1):
    for d in (totaro_H, zero_divisor(totaro), totaro_L,
              ToricDivisor(p1, (0, 0)), ToricDivisor(p1, (2, 1))):
        chain = stable_base_locus(d)
        exact = stable_base_locus_exact(d)
        assert set(chain.minimal_cones) == set(exact.minimal_cones)
        assert chain.multiple is not None


def test_augmented_base_locus_examples(totaro, totaro_L, totaro_H, p1xp1):
    assert augmented_base_locus(totaro_H).is_empty
    nef_not_big = ToricDivisor(p1xp1, (1, 0, 0, 0))
    assert augmented_base_locus(nef_not_big).is_everything
    report = augmented_base_locus(totaro_L)
    assert report.is_everything  # the example class is not big
    # stable locus sits inside the augmented one
    stable = stable_base_locus_exact(totaro_L)
    assert set(stable.cone_set(totaro)) <= set(report.cone_set(totaro))


def test_base_locus_contains_stable_locus(p1xp1, totaro):
    for fan in (p1xp1, totaro):
        for d in random_divisors(fan, 40, seed="bs-vs-b"):
            bs = base_locus(d).cone_set(fan)
            stable = stable_base_locus_exact(d).cone_set(fan)
            assert stable <= bs, (fan.name, d.coeffs)


def test_augmented_base_locus_ample_independence(totaro, totaro_L, totaro_H):
    second = 2 * totaro_H + prime_divisor(totaro, 2)
    assert classify_cones(second).ample
    d = totaro_H + prime_divisor(totaro, 0)
    first_locus = augmented_base_locus_exact(d, totaro_H)
    second_locus = augmented_base_locus_exact(d, second)
    assert first_locus.minimal_cones == second_locus.minimal_cones


def test_qnef_example_class(totaro, totaro_L):
    res = is_qnef(totaro_L, 1)
    assert res.verdict and res.scope == "torus-invariant"
    assert len(res.restrictions) == 6
    assert all(not big for _, big in res.restrictions)


def test_qnef_trivial_and_failing_cases(totaro, totaro_H):
    assert is_qnef(totaro_H, 0).verdict
    assert is_qnef(totaro_H, 1).verdict
    assert is_qnef(totaro_H, 2).verdict
    res = is_qnef(-totaro_H, 2)
    assert not res.verdict and res.witness_tau == ()


def test_qnef_zero_matches_nef(totaro):
    for d in random_divisors(totaro, 20, seed="qnef0"):
        assert is_qnef(d, 0).verdict == classify_cones(d).nef


def test_decide_qample_example(totaro, totaro_L, totaro_H):
    res = decide_qample(totaro_L, 1)
    assert not res.verdict
    assert res.certificate.degree == 2
    assert res.certificate.subset == (2, 3, 4, 5)
    assert decide_qample(totaro_L, 2).verdict
    assert decide_qample(totaro_H, 0).verdict
    # the dual of an ample class is pseudoeffective, so no q < n works
    assert not decide_qample(-totaro_H, 2).verdict
    assert smallest_qample(-totaro_H) == 3


def test_qample_scale_invariance(totaro):
    for d in random_divisors(totaro, 8, seed="scale"):
        for q in range(3):
            base = decide_qample(d, q).verdict
            for k in (2, 3):
                assert decide_qample(k * d, q).verdict == base


def test_qample_monotone_and_kleiman(example_fans):
    for fan in example_fans:
        n = fan.rank
        for d in random_divisors(fan, 25, seed="mono"):
            verdicts = [decide_qample(d, q).verdict for q in range(n)]
            for a, b in zip(verdicts, verdicts[1:]):
                assert (not a) or b  # monotone in q
            assert verdicts[0] == classify_cones(d).ample
            # the top cone is the negatives of non-pseudoeffective classes
            assert verdicts[n - 1] == (not classify_cones(-d).pseudoeffective)


def test_qample_implies_qnef(totaro):
    for d in random_divisors(totaro, 12, seed="imp"):
        for q in range(3):
            if decide_qample(d, q).verdict:
                assert is_qnef(d, q).verdict, (d.coeffs, q)


def test_kuronya_dimension_bound(totaro):
    for d in random_divisors(totaro, 12, seed="kur"):
        dim = augmented_base_locus_exact(d).dimension(totaro)
        for q in range(3):
            if dim <= q:
                assert decide_qample(d, q).verdict, (d.coeffs, q, dim)


def test_disconnected_section_criterion(totaro):
    f1, f2, f3 = (prime_divisor(totaro, i) for i in (0, 1, 2))
    res = disconnected_section_criterion(f1 + f2)
    assert res.applies and res.conclusion == "not 1-ample"
    assert all(h >= 1 for h in res.h1_of_negatives)
    assert not decide_qample(f1 + f2, 1).verdict
    assert not disconnected_section_criterion(f1).applies
    assert not disconnected_section_criterion(f1 + f3).applies
    with pytest.raises(NotEffectiveSupport):
        disconnected_section_criterion(-f1)
    with pytest.raises(NotEffectiveSupport):
        disconnected_section_criterion(zero_divisor(totaro))


def test_chamber_labels_at_key_classes(totaro, totaro_L, totaro_H):
    cmap = chamber_scan(zero_divisor(totaro), totaro_H, totaro_L, resolution=1)
    assert cmap.at(1, 0).smallest_q == 0  # the ample class
    assert cmap.at(0, 1).smallest_q == 2  # the example class
    assert cmap.at(-1, 0).smallest_q == 3  # minus ample: no q below dim works
    assert cmap.at(1, 0).pseudoeffective
    assert not cmap.at(0, 1).pseudoeffective
    assert not cmap.at(-1, 0).pseudoeffective
    # labels are invariant under positive scaling
    doubled = chamber_scan(zero_divisor(totaro), 2 * totaro_H, 2 * totaro_L, resolution=1)
    for s, t in zip(cmap.samples, doubled.samples):
        assert (s.smallest_q, s.pseudoeffective, s.big) == (
            t.smallest_q,
            t.pseudoeffective,
            t.big,
        )


def test_positivity_report_invariants(totaro, totaro_L, totaro_H):
    from toricpos import positivity_report

    for d in (totaro_L, totaro_H, -totaro_H, zero_divisor(totaro)):
        rep = positivity_report(d)
        assert (not rep.flags.ample) or rep.flags.nef
        assert (not rep.flags.big) or rep.flags.pseudoeffective
        for a, b in zip(rep.q_ample, rep.q_ample[1:]):
            assert (not a) or b
        for qa, qn in zip(rep.q_ample, rep.q_nef):
            assert (not qa) or qn
    rep = positivity_report(totaro_L)
    assert rep.q_ample == (False, False, True)
    assert rep.q_nef == (False, True, True)


def test_mode_agreement_on_key_divisors(totaro, totaro_L, totaro_H):
    f12 = prime_divisor(totaro, 0) + prime_divisor(totaro, 1)
    for d, q in ((totaro_L, 1), (totaro_L, 2), (totaro_H, 0), (-totaro_H, 2), (f12, 1)):
        res = check_mode_agreement(d, q)
        if not res["asymptotic"].verdict:
            assert res["scan"].obstructed
            assert res["realized"] is not None
        else:
            assert not res["scan"].obstructed


def test_scan_mode_reports_pattern(totaro, totaro_L):
    scan = scan_qample(totaro_L, 1)
    assert scan.obstructed and scan.clean_n is None
    assert realization_search(totaro_L, 1) == (1, 1, 2)
    clean = scan_qample(totaro_L, 2)
    assert not clean.obstructed and clean.clean_n == 12
