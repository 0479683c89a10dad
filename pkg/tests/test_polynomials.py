import random

import pytest

from ffgeom.errors import BothZero, ParseError, ZeroPolynomial
from ffgeom.fields import make_field
from ffgeom.polynomials import (
    MultivariatePolynomial,
    UnivariatePolynomial,
    find_root_in_tower,
    parse_polynomial,
    poly_gcd,
    sylvester_resultant,
    to_univariate,
)

from conftest import field_for, random_poly

F2 = make_field(2)
F3 = make_field(3)
F4 = make_field(2, 2)
F5 = make_field(5)


class TestParser:
    def test_simple(self):
        p = parse_polynomial("2*x0^3*x1 + x2 + 1", F5)
        assert p.nvars == 3
        assert p.terms == {(3, 1, 0): 2, (0, 0, 1): 1, (0, 0, 0): 1}

    def test_bracket_coefficients(self):
        p = parse_polynomial("[0,1]*x0 + [1,1]", F4)
        assert p.terms == {(1,): 2, (0,): 3}

    def test_products_and_parentheses(self):
        p = parse_polynomial("x0*x1*(x0+x1)", F4)
        q = parse_polynomial("x0^2*x1 + x0*x1^2", F4)
        assert p == q

    def test_minus(self):
        p = parse_polynomial("x0 - 2", F5)
        assert p.terms == {(1,): 1, (0,): 3}

    def test_whitespace_insignificant(self):
        assert parse_polynomial(" x0 + 1 ", F3) == parse_polynomial("x0+1", F3)

    def test_roundtrip_through_format(self, rng):
        for q in (3, 4, 5, 9):
            fld = field_for(q)
            for _ in range(50):
                p = random_poly(rng, fld, 3, 4)
                assert parse_polynomial(p.format(), fld, 3) == p

    def test_parse_error_position(self):
        with pytest.raises(ParseError):
            parse_polynomial("x0 + + *", F3)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_polynomial("x0 )", F3)


class TestEval:
    def test_example_f4(self):
        p = parse_polynomial("x0^2*x1 + x0*x1^2", F4)
        g = F4.from_coords([0, 1])
        assert p.eval([1, g]) == 1

    def test_zero_point_gives_constant_term(self):
        p = parse_polynomial("x0^2 + 3*x1 + 2", F5)
        assert p.eval([0, 0]) == 2

    def test_zero_polynomial(self):
        z = MultivariatePolynomial(2, F5)
        assert z.eval([3, 4]) == 0


class TestDecompose:
    def test_example(self):
        p = parse_polynomial("x0^2*x1 + x0*x1^2", F4)
        phis = p.decompose_top_variable(1)
        assert [phi.format() for phi in phis] == ["0", "x0^2", "x0"]

    def test_constant(self):
        p = MultivariatePolynomial.constant(2, 2, F3)
        assert len(p.decompose_top_variable(0)) == 1

    def test_single_monomial(self):
        p = parse_polynomial("x1^3", F3, 2)
        phis = p.decompose_top_variable(1)
        assert [phi.format() for phi in phis] == ["0", "0", "0", "1"]

    def test_zero_raises(self):
        with pytest.raises(ZeroPolynomial):
            MultivariatePolynomial(2, F3).decompose_top_variable(0)

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
    def test_reassembly_identity(self, q):
        rng = random.Random(100 + q)
        fld = field_for(q)
        for _ in range(500):
            nvars = rng.randint(1, 4)
            p = random_poly(rng, fld, nvars, 5)
            var = rng.randrange(nvars)
            phis = p.decompose_top_variable(var)
            x = MultivariatePolynomial.variable(var, nvars, fld)
            acc = MultivariatePolynomial(nvars, fld)
            for i, phi in enumerate(phis):
                lifted = MultivariatePolynomial(
                    nvars,
                    fld,
                    {e[:var] + (0,) + e[var:]: c for e, c in phi.terms.items()},
                )
                acc = acc + lifted * x ** i
            assert acc == p
            assert not phis[-1].is_zero()


class TestResultant:
    def test_example_f3(self):
        f = UnivariatePolynomial([1, 0, 1], F3)  # x^2 + 1
        g = UnivariatePolynomial([2, 1], F3)  # x - 1
        assert sylvester_resultant(f, g) == 2

    def test_common_root(self):
        # both divisible by (x - 1)
        f = UnivariatePolynomial([4, 0, 1], F5)  # x^2 - 1
        g = UnivariatePolynomial([4, 1], F5)  # x - 1
        assert sylvester_resultant(f, g) == 0

    def test_unit_constant(self):
        f = UnivariatePolynomial([2, 3, 1], F5)
        one = UnivariatePolynomial([1], F5)
        assert sylvester_resultant(f, one) == 1

    def test_both_zero(self):
        z = UnivariatePolynomial([], F3)
        with pytest.raises(BothZero):
            sylvester_resultant(z, z)

    def test_against_gcd_oracle(self):
        rng = random.Random(4242)
        fields = [field_for(q) for q in (2, 3, 4, 5, 7, 8, 9)]
        for _ in range(500):
            fld = rng.choice(fields)
            def rand_poly():
                deg = rng.randint(1, 6)
                coeffs = [rng.randrange(fld.q) for _ in range(deg)]
                coeffs.append(rng.randrange(1, fld.q))
                return UnivariatePolynomial(coeffs, fld)
            f, g = rand_poly(), rand_poly()
            res = sylvester_resultant(f, g)
            gcd = poly_gcd(f, g)
            assert (res == 0) == (gcd.degree > 0)


class TestRootTower:
    def test_needs_quadratic_extension(self):
        f = UnivariatePolynomial([1, 0, 1], F3)  # x^2 + 1
        root, ext, j = find_root_in_tower(f, 2)
        assert j == 2 and ext.q == 9
        assert f.map_coefficients(ext).eval(root) == 0

    def test_linear(self):
        f = UnivariatePolynomial([F5.neg(1), 1], F5)
        root, ext, j = find_root_in_tower(f, 3)
        assert (root, j) == (1, 1) and ext is F5

    def test_root_already_present(self):
        # x^2 + x + 1 over F_4 has the generator as a root
        f = UnivariatePolynomial([1, 1, 1], F4)
        root, ext, j = find_root_in_tower(f, 2)
        assert j == 1 and root == F4.from_coords([0, 1])

    def test_no_root_within_bound(self):
        f = UnivariatePolynomial([1, 0, 1], F3)
        assert find_root_in_tower(f, 1) is None

    def test_minimality_reverified(self):
        rng = random.Random(7)
        for _ in range(50):
            fld = field_for(rng.choice([2, 3, 5]))
            deg = rng.randint(2, 4)
            coeffs = [rng.randrange(fld.q) for _ in range(deg)] + [1]
            f = UnivariatePolynomial(coeffs, fld)
            out = find_root_in_tower(f, 4)
            if out is None:
                continue
            _, _, j = out
            for i in range(1, j):
                smaller = make_field(fld.p, fld.k * i)
                fe = f.map_coefficients(smaller)
                assert all(fe.eval(x) != 0 for x in smaller.enumerate_elements())


class TestSubstitution:
    def test_eliminate_shifts_indices(self):
        p = parse_polynomial("x0*x1 + x2^2", F3)
        lam = MultivariatePolynomial.variable(0, 2, F3)  # x0 := x1 (new x0)
        q = p.eliminate(0, lam)
        assert q == parse_polynomial("x0^2 + x1^2", F3, 2)

    def test_to_univariate(self):
        p = parse_polynomial("x0^2 + 2", F3)
        u = to_univariate(p)
        assert u.coeffs == [2, 0, 1]
