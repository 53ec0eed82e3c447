"""Classification, shooting angles, and bounding regions."""

import random
from fractions import Fraction

import pytest

from billiardpath.classify import (
    angle_bounding_polygon,
    canonical_unstable_line,
    classify_code,
    corner_bounding_polygon,
    fan_angle_expansion,
    is_stable,
    line_region,
    palindromic_pivots,
    reduce_on_line,
    shooting_angle_sequence,
    solve_theta,
    stability_defect,
    unstable_line,
)
from billiardpath.corpus import load_default_corpus
from billiardpath.geometry import point_satisfies
from billiardpath.sequences import CodeSequence, all_assignments, assign_angles

F = Fraction


def coeffs(form):
    return form.ax, form.ay, form.c, form.t


def test_classification_examples():
    cases = {
        "1 1 1": "OSO",
        "1 1 2 2 5": "OSO",
        "2 2": "CNS",
        "1 2 1 2": "CNS",
        "1 2 1 6": "CNS",
        "1 1 2 1 3 2": "ONS",
        "1 1 1 1 2 1 1 1 1 2": "CS",
    }
    for text, want in cases.items():
        assert classify_code(CodeSequence.parse(text)) == want, text


def test_palindromic_pivots():
    assert palindromic_pivots(CodeSequence.parse("2 2")) == [1, 2]
    assert palindromic_pivots(CodeSequence.parse("1 2 1 6")) == [2, 4]
    assert palindromic_pivots(
        CodeSequence.parse("1 1 1 1 2 1 1 1 1 2")) == [5, 10]
    assert palindromic_pivots(CodeSequence.parse("1 1 2 1 3 2")) == []


def test_stability_defects():
    code = CodeSequence.parse("2 2")
    assert stability_defect(code, assign_angles(code, "X", "Y")) == (2, -2, 0)
    assert not is_stable(code)
    code = CodeSequence.parse("1 1 1")
    assert stability_defect(code, assign_angles(code, "X", "Y")) == (0, 0, 0)
    assert is_stable(code)
    code = CodeSequence.parse("1 2 1 6")
    assert stability_defect(code, assign_angles(code, "Y", "Z")) == (-6, 2, -2)


def test_odd_codes_always_balance():
    rng = random.Random(7)
    corpus = [e for e in load_default_corpus() if len(e.code.codes) % 2 == 1]
    for entry in rng.sample(corpus, 10):
        for asg in all_assignments(entry.code):
            assert stability_defect(entry.code, asg) == (0, 0, 0)


def test_unstable_line_from_defect():
    code = CodeSequence.parse("1 2 1 6")
    asg = assign_angles(code, "Y", "Z")
    # defect (-6, 2, -2) -> direction (-4, 4), offset 4, sign-normalized
    assert unstable_line(code, asg) == (1, -1, -1)
    code = CodeSequence.parse("1 1 1")
    assert unstable_line(code, assign_angles(code, "X", "Y")) is None


def test_canonical_unstable_lines():
    cases = {
        "2 2": (1, -1, 0),
        "1 2 1 6": (1, -1, -1),
        "1 1 2 1 3 2": (2, -1, 0),
        "1 2 1 2": (1, 1, 1),
    }
    for text, want in cases.items():
        line, asg = canonical_unstable_line(CodeSequence.parse(text))
        assert line == want, text
        assert unstable_line(CodeSequence.parse(text), asg) == want
    assert canonical_unstable_line(CodeSequence.parse("1 1 1")) is None


def test_shooting_sequence_small():
    code = CodeSequence.parse("1 2 1 6")
    asg = assign_angles(code, "Y", "Z")
    phis = shooting_angle_sequence(code, asg)
    assert [coeffs(p) for p in phis] == [
        (0, 0, 0, 1),
        (0, -1, 2, -1),
        (2, 3, -4, 1),
        (-2, -4, 6, -1),
    ]


def test_shooting_sequence_long_entry():
    # fan 6 of the doubled stable code opens at x - theta
    code = CodeSequence.parse("1 1 1 1 2 1 1 1 1 2")
    asg = assign_angles(code, "X", "Y")
    phis = shooting_angle_sequence(code, asg)
    assert coeffs(phis[5]) == (1, 0, 0, -1)


def test_fan_expansion_omits_even_middle():
    code = CodeSequence.parse("1 2 1 6")
    asg = assign_angles(code, "Y", "Z")
    fans = fan_angle_expansion(code, asg)
    assert [len(f) for f in fans] == [2, 2, 2, 6]
    last = [coeffs(f) for f in fans[3]]
    # rising j = 0..2, the exact-right-angle middle j = 3 dropped,
    # falling j = 4..6
    assert last == [
        (-2, -4, 6, -1),
        (-1, -4, 6, -1),
        (0, -4, 6, -1),
        (-2, 4, -4, 1),
        (-3, 4, -4, 1),
        (-4, 4, -4, 1),
    ]


def test_solve_theta():
    code = CodeSequence.parse("1 1 1 1 2 1 1 1 1 2")
    th = solve_theta(code, assign_angles(code, "X", "Y"))
    assert coeffs(th) == (1, 1, -1, 0)

    code = CodeSequence.parse("1 1 1")
    th = solve_theta(code, assign_angles(code, "X", "Y"))
    assert coeffs(th) == (0, 1, 0, 0)

    code = CodeSequence.parse("1 1 2 2 5")
    th = solve_theta(code, assign_angles(code, "Z", "Y"))
    assert coeffs(th) == (-3, 2, 0, 0)

    code = CodeSequence.parse("1 2 1 6")
    th = solve_theta(code, assign_angles(code, "Y", "Z"))
    assert coeffs(th) == (-1, -2, 3, 0)
    assert coeffs(reduce_on_line(th, (1, -1, -1))) == (-3, 0, 1, 0)

    code = CodeSequence.parse("1 1 2 1 3 2")
    for asg in all_assignments(code):
        assert solve_theta(code, asg) is None


def test_solve_theta_none_without_shape():
    osno = next(e for e in load_default_corpus() if e.kind == "OSNO")
    asg = all_assignments(osno.code)[0]
    assert solve_theta(osno.code, asg) is None


def test_corner_polygon():
    code = CodeSequence.parse("1 2 1 6")
    asg = assign_angles(code, "Y", "Z")
    poly = corner_bounding_polygon(code, asg)
    got = sorted((coeffs(f), u) for f, u in poly.bounds)
    assert got == [
        ((-2, -2, 4, 0), F(180)),  # widest corner gap spans two z angles
        ((0, 1, 0, 0), F(180)),
        ((6, 0, 0, 0), F(180)),
    ]
    assert (F(-1), F(0), F(30)) in poly.halfplanes  # x < 30


def test_acute_polygon():
    code = CodeSequence.parse("1 1 1")
    poly = angle_bounding_polygon(code, assign_angles(code, "X", "Y"))
    assert poly.vertices == [(F(90), F(0)), (F(90), F(90)), (F(0), F(90))]
    assert poly.contains_point(F(60), F(60))
    assert not poly.contains_point(F(20), F(30))
    assert not poly.contains_point(F(90), F(45))  # boundary is excluded


def test_line_region_segment():
    code = CodeSequence.parse("1 2 1 2")
    line, asg = canonical_unstable_line(code)
    region = line_region(code, asg)
    assert (region.a, region.b, region.c) == (1, 1, 1)
    assert region.segment == ((F(0), F(90)), (F(90), F(0)))
    assert region.contains_point(30, 60)
    assert not region.contains_point(30, 61)


def test_corpus_classification_matches_tags():
    corpus = load_default_corpus()
    assert len(corpus) == 134
    for entry in corpus:
        assert classify_code(entry.code) == entry.kind, entry.code


def test_corpus_polygons_nonempty():
    rng = random.Random(11)
    for entry in rng.sample(load_default_corpus(), 25):
        asg = all_assignments(entry.code)[0]
        poly = angle_bounding_polygon(entry.code, asg)
        assert not poly.is_empty
        corner = corner_bounding_polygon(entry.code, asg)
        for vx, vy in poly.vertices:
            assert point_satisfies(corner.halfplanes, vx, vy, strict=False)


def test_faces_match_full_halfplane_set():
    rng = random.Random(3)
    for entry in rng.sample(load_default_corpus(), 10):
        asg = all_assignments(entry.code)[0]
        poly = angle_bounding_polygon(entry.code, asg)
        for _ in range(40):
            x = F(rng.randrange(0, 1800), 10)
            y = F(rng.randrange(0, 1800), 10)
            assert point_satisfies(poly.faces, x, y) == \
                point_satisfies(poly.halfplanes, x, y)
