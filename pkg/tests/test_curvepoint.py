import random

import pytest

from ffgeom.avoid import ProjectivePoint
from ffgeom.curvepoint import (
    CurveDivisor,
    PlaneCurve,
    enumerate_curve_points,
    fiber_resultant,
    galois_orbit,
    point_off_divisor,
    projection_center,
    verify_on_curve,
)
from ffgeom.errors import (
    CenterOnCurve,
    DivisorNotProper,
    FieldTooSmall,
    NoEmbedding,
    NotSquarefree,
)
from ffgeom.fields import make_field
from ffgeom.polynomials import parse_polynomial

from conftest import field_for

F3 = make_field(3)
F5 = make_field(5)
F7 = make_field(7)
F9 = make_field(3, 2)


def curve(text, fld):
    return PlaneCurve(parse_polynomial(text, fld, 3))


def divisor(text, fld):
    return CurveDivisor(parse_polynomial(text, fld, 3))


class TestValidation:
    def test_conic_accepted(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        assert c.degree == 2

    def test_square_rejected(self):
        with pytest.raises(NotSquarefree):
            curve("x0^2", F5)

    def test_doubled_component_rejected(self):
        with pytest.raises(NotSquarefree):
            curve("x0^2*(x1 + x2)", F7)

    def test_line_pair_accepted(self):
        # reducible but squarefree
        c = curve("x0*x1", F5)
        assert c.degree == 2

    def test_inhomogeneous_rejected(self):
        with pytest.raises(Exception):
            curve("x0^2 + x1", F5)

    def test_constant_divisor_allowed(self):
        assert divisor("2", F5).degree == 0


class TestProjectionCenter:
    def test_off_curve(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        center = projection_center(c, F5)
        assert c.poly.eval(center.coords) != 0

    def test_field_too_small(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        with pytest.raises(FieldTooSmall):
            projection_center(c, F3)

    def test_deterministic(self):
        c = curve("x0^3 + x1^3 + 2*x2^3 + x0*x1*x2", F7)
        assert projection_center(c, F7) == projection_center(c, F7)


class TestFiberResultant:
    def test_center_on_curve_rejected(self):
        c = curve("x0*x1 + 4*x2^2", F5)
        # (1:1:1): 1 + 4 = 0, on the curve
        center = ProjectivePoint((1, 1, 1), F5)
        with pytest.raises(CenterOnCurve):
            fiber_resultant(c, divisor("x2", F5), center)

    def test_degree_is_product(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        center = projection_center(c, F5)
        res = fiber_resultant(c, divisor("x0 + x1", F5), center)
        assert res.is_homogeneous() and res.total_degree() == c.degree * 1

    def test_constant_divisor(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        center = projection_center(c, F5)
        res = fiber_resultant(c, divisor("3", F5), center)
        assert res.total_degree() == 0
        assert res.eval((0, 0)) == F5.pow(3, 2)

    def test_shared_component_rejected(self):
        c = curve("x0*x1", F7)
        center = projection_center(c, F7)
        with pytest.raises(DivisorNotProper):
            fiber_resultant(c, divisor("x0", F7), center)

    def test_zero_set_matches_enumeration(self):
        # lines through the center hitting {F = G = 0} are exactly the roots
        # of the resultant, checked against brute force over the base field
        rng = random.Random(31)
        for q in (7, 9, 11):
            fld = field_for(q)
            trials = 0
            while trials < 8:
                f = parse_polynomial(
                    "x0*x1 + %d*x2^2" % rng.randrange(1, q), fld
                )
                g_text = rng.choice(["x0 + x1", "x2", "x0 + 2*x2", "x1"])
                try:
                    c = PlaneCurve(f)
                    g = CurveDivisor(parse_polynomial(g_text, fld, 3))
                    center = projection_center(c, fld)
                    res = fiber_resultant(c, g, center)
                except (NotSquarefree, DivisorNotProper):
                    continue
                trials += 1
                # brute force: for each point of F=G=0 over fld, the line
                # joining it to the center corresponds to a resultant root
                for pt in enumerate_curve_points(c, fld):
                    if g.poly.map_coefficients(fld).eval(pt.coords) != 0:
                        continue
                    hit = any(
                        res.eval(param.coords) == 0
                        for param in _params_through(center, pt, fld)
                    )
                    assert hit


def _params_through(center, pt, fld):
    """Pencil parameters (s:t) whose line through the center contains pt."""
    from ffgeom.curvepoint import _line_frame, _pencil_base_point

    out = []
    for s in fld.enumerate_elements():
        for t in fld.enumerate_elements():
            if s == 0 and t == 0:
                continue
            base = _pencil_base_point(center, s, t)
            # pt on line spanned by center and base <=> 3x3 det vanishes
            rows = [center.coords, base, pt.coords]
            det = 0
            for i, j, k, sign in (
                (0, 1, 2, 1), (0, 2, 1, -1), (1, 0, 2, -1),
                (1, 2, 0, 1), (2, 0, 1, 1), (2, 1, 0, -1),
            ):
                term = fld.mul(
                    fld.mul(rows[0][i], rows[1][j]), rows[2][k]
                )
                det = fld.add(det, term if sign == 1 else fld.neg(term))
            if det == 0:
                out.append(ProjectivePoint((s, t), fld))
    return out


class TestGaloisOrbit:
    def test_rational_point_fixed(self):
        pt = ProjectivePoint((1, 2, 0), F9)
        orbit = galois_orbit(pt, F9, F9)
        assert orbit == [pt]

    def test_conjugate_pair(self):
        g = F9.from_coords([0, 1])
        pt = ProjectivePoint((1, g, 0), F9)
        orbit = galois_orbit(pt, F9, F3)
        assert len(orbit) == 2
        conj = F9.frobenius(g, 1)
        assert ProjectivePoint((1, conj, 0), F9) in orbit

    def test_not_a_subfield(self):
        with pytest.raises(NoEmbedding):
            galois_orbit(ProjectivePoint((1, 0), F9), F9, F5)

    def test_exhaustive_orbit_partition(self):
        # orbits partition P^2(F_9) and sizes divide [F_9 : F_3] = 2
        from ffgeom.avoid import projective_points

        seen = set()
        for pt in projective_points(F9, 2):
            if pt.coords in seen:
                continue
            orbit = galois_orbit(pt, F9, F3)
            assert len(orbit) in (1, 2)
            rational = all(
                F9.frobenius(c, 1) == c for c in pt.coords
            )
            assert (len(orbit) == 1) == rational
            for p in orbit:
                assert p.coords not in seen
                seen.add(p.coords)
        assert len(seen) == 9 ** 2 + 9 + 1


class TestPipeline:
    def test_conic_example(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        res = point_off_divisor(c, divisor("x2", F5), F5)
        assert all(res.flags.values())
        assert res.ext_degree <= 2

    def test_field_too_small(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        with pytest.raises(FieldTooSmall):
            point_off_divisor(c, divisor("x2", F5), F3)

    def test_verification_is_independent(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        res = point_off_divisor(c, divisor("x0 + x1", F5), F5)
        flags = verify_on_curve(res, c, divisor("x0 + x1", F5))
        assert all(flags.values())

    def test_negative_control_flags(self):
        c = curve("x0*x1 + 2*x2^2", F5)
        d = divisor("x2", F5)
        res = point_off_divisor(c, d, F5)
        # swap in a point off the curve: on_curve flag must trip
        bad = ProjectivePoint(projection_center(c, F5).coords, res.k2)
        res.point = bad
        res.orbit = [bad]
        flags = verify_on_curve(res, c, d)
        assert not flags["on_curve"]

    def test_point_appears_in_enumeration(self):
        rng = random.Random(77)
        for q in (7, 9, 11, 13):
            fld = field_for(q)
            done = 0
            while done < 10:
                coeffs = [rng.randrange(1, q) for _ in range(3)]
                text = "%d*x0^2 + %d*x1^2 + %d*x2^2" % tuple(coeffs)
                g_text = rng.choice(["x0", "x1 + x2", "x2", "x0 + x1 + x2"])
                try:
                    c = PlaneCurve(parse_polynomial(text, fld, 3))
                    d = CurveDivisor(parse_polynomial(g_text, fld, 3))
                    res = point_off_divisor(c, d, fld)
                except (NotSquarefree, DivisorNotProper, FieldTooSmall):
                    continue
                done += 1
                assert all(res.flags.values())
                pts = enumerate_curve_points(c, res.k2)
                assert res.point in pts
                gk2 = d.poly.map_coefficients(res.k2)
                assert gk2.eval(res.point.coords) != 0

    def test_deterministic(self):
        c = curve("x0^3 + 2*x1^3 + 3*x2^3 + x0*x1*x2", F7)
        d = divisor("x0", F7)
        a = point_off_divisor(c, d, F7)
        b = point_off_divisor(c, d, F7)
        assert a.point == b.point and a.center == b.center
        assert a.orbit == b.orbit


class TestEnumeration:
    def test_conic_point_count(self):
        # smooth conic over F_q has exactly q + 1 points
        c = curve("x0*x1 + 2*x2^2", F5)
        pts = enumerate_curve_points(c, F5)
        assert len(pts) == len(set(pts)) == 6

    def test_line_count(self):
        c = curve("x0 + x1 + x2", F7)
        assert len(enumerate_curve_points(c, F7)) == 8

    def test_extension_field(self):
        c = curve("x0*x1 + 2*x2^2", F3)
        pts = enumerate_curve_points(c, F9)
        assert len(pts) == 10
        f9 = c.poly.map_coefficients(F9)
        assert all(f9.eval(p.coords) == 0 for p in pts)
