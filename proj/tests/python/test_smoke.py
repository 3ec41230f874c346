"""End-to-end smoke tests for the python bindings."""

import math
from fractions import Fraction as F

import pytest

import cantor_density as cd


def thirds(depth=2):
    return cd.LambdaSequence.truncated([F(1, 3)] * depth)


def test_level_geometry_is_exact():
    a = cd.CantorApproximation(thirds(), 2)
    assert a.components == [
        (F(0), F(1, 9)),
        (F(1, 6), F(5, 18)),
        (F(1, 2), F(11, 18)),
        (F(2, 3), F(7, 9)),
    ]
    r, g, kept = cd.level_quantities(thirds(), 2)
    assert (r, g, kept) == (F(1, 9), F(1, 18), F(4, 9))
    mb = a.measure_bounds()
    assert mb.lo == mb.hi == F(4, 9)


def test_density_oracles():
    a = cd.CantorApproximation(thirds(), 2)
    assert cd.prefix_measure_level(a, F(1, 3)) == F(2, 9)
    brute = cd.phi_bruteforce(a, F(1, 3))
    assert brute["max_value"] == F(2, 9)
    assert F(0) in brute["witnesses"]
    enc = cd.phi(a, F(1, 3))
    assert enc.lo <= F(2, 3) <= enc.hi


def test_fraction_round_trip_and_json():
    seq = cd.LambdaSequence([F(1, 3), F(1, 4)], F(1, 8), F(1, 2))
    again = cd.LambdaSequence.from_dict(seq.to_dict())
    assert again.prefix == [F(1, 3), F(1, 4)]
    assert again.tail_base == F(1, 8)
    assert again.ratio(2) == F(1, 4)
    assert seq.has_tail() and not seq.divergent_tail()


def test_validation_errors_surface_as_python_exceptions():
    with pytest.raises(cd.DomainError):
        cd.LambdaSequence.truncated([F(3, 2)])
    with pytest.raises(cd.CantorError):
        cd.CantorApproximation(thirds(), 5)
    with pytest.raises(cd.InvalidTarget):
        cd.synthesize_lambda(cd.TargetFunction.expression("1/2"), depth=4)


def test_synthesize_then_verify():
    f = cd.TargetFunction.expression("max(1/2, 1 - sqrt(x))")
    res = cd.synthesize_lambda(f, depth=6)
    assert res.measure.lo > F(1, 10)
    a = cd.CantorApproximation(res.sequence, 6)
    cert = cd.verify_target(a, f, sample_count=16, seed=3)
    assert cert["holds"] is True
    assert cert["state"] == "pass"
    bands = cd.check_band_domination(a, samples_per_band=4, seed=5)
    assert bands["exact_passed"] is True


def test_enclosures_nest_under_deepening():
    f = cd.TargetFunction.expression("max(1/2, 1 - sqrt(x))")
    seq = cd.synthesize_lambda(f, depth=8).sequence
    shallow = cd.CantorApproximation(seq, 6)
    deep = cd.CantorApproximation(seq, 8)
    for x in [F(1, 7), F(2, 5), F(9, 11)]:
        outer = cd.prefix_measure_bounds(shallow, x)
        inner = cd.prefix_measure_bounds(deep, x)
        assert outer.lo <= inner.lo and inner.hi <= outer.hi


def test_line_control_attains_quotient_one():
    line = cd.builtin_curve("line", {"length": 2.0})
    scan = cd.attainment_scan(cd.distance_from_start(line), line, coarse_grid=50, refine_rounds=3)
    assert scan["attained"] is True
    assert abs(scan["sup_estimate"] - 1.0) < 1e-12


def test_circle_pipeline_stays_below_one():
    circle = cd.builtin_curve("circle")
    assert abs(cd.chord_ratio_inf(circle, 1.0) - 2.0 * math.sin(0.5)) < 1e-6
    rho = cd.find_rho(circle, outer_grid=32, inner_grid=128)
    assert rho == 1.0
    target = cd.curve_chord_target(circle, rho, scales=10, grid_size=512)
    seq = cd.synthesize_lambda(target, depth=8).sequence
    a = cd.CantorApproximation(seq, 8)
    fn = cd.build_indicator_primitive(a, circle, rho)
    scan = cd.attainment_scan(
        fn, circle, coarse_grid=120, refine_rounds=4,
        min_separation=4 * rho * float(a.component_length),
    )
    assert scan["attained"] is False
    assert 0.5 < scan["sup_estimate"] < 1.0
    quotients = [q["quotient"] for q in cd.structural_pair_quotients(fn, circle, a, 8)]
    assert all(0.0 < q < 1.0 for q in quotients)
    assert quotients == sorted(quotients)


def test_renderings():
    svg = cd.levels_svg(thirds(), 2)
    assert svg.startswith("<svg") and 'width="800"' in svg
    csv = cd.levels_csv(thirds(), 2)
    assert csv.splitlines()[0] == "level,index,left,right,left_dec,right_dec"
    assert "1,1,1/2,5/6," in csv
