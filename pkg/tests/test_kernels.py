import random

import numpy as np
import pytest

from ffgeom import kernels
from ffgeom.fields import make_field
from ffgeom.polynomials import MultivariatePolynomial, parse_polynomial

from conftest import field_for, random_poly


@pytest.fixture
def force_backend(monkeypatch):
    def _set(value):
        if value is None:
            monkeypatch.delenv("FFGEOM_NUMBA", raising=False)
        else:
            monkeypatch.setenv("FFGEOM_NUMBA", value)

    return _set


class TestBackendSelection:
    def test_flag_zero_forces_numpy(self, force_backend):
        force_backend("0")
        assert kernels.backend() == "numpy"

    def test_flag_one_requires_numba(self, force_backend):
        force_backend("1")
        if kernels._HAVE_NUMBA:
            assert kernels.backend() == "numba"
        else:
            with pytest.raises(RuntimeError):
                kernels.backend()

    def test_unset_auto(self, force_backend):
        force_backend(None)
        expected = "numba" if kernels._HAVE_NUMBA else "numpy"
        assert kernels.backend() == expected


class TestDecode:
    def test_last_variable_fastest(self):
        # canonical order over F_3^2: (0,0),(0,1),(0,2),(1,0),...
        pts = [kernels.decode_point(t, 3, 2) for t in range(9)]
        assert pts[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]
        assert pts[-1] == (2, 2)

    def test_roundtrip(self):
        q, n = 5, 3
        for t in range(q ** n):
            pt = kernels.decode_point(t, q, n)
            enc = 0
            for x in pt:
                enc = enc * q + x
            assert enc == t


class TestGridEval:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
    def test_matches_pointwise_eval(self, q, force_backend):
        rng = random.Random(300 + q)
        fld = field_for(q)
        for _ in range(20):
            nvars = rng.randint(1, 3)
            poly = random_poly(rng, fld, nvars, 4)
            reference = kernels._grid_eval_python(poly, q ** nvars)
            for flag in ("0", None):
                force_backend(flag)
                assert np.array_equal(kernels.grid_eval(poly), reference)

    def test_backends_agree(self, force_backend):
        rng = random.Random(11)
        for q in (3, 4, 9):
            fld = field_for(q)
            for _ in range(10):
                poly = random_poly(rng, fld, 3, 5)
                force_backend("0")
                via_numpy = kernels.grid_eval(poly)
                force_backend(None)
                via_auto = kernels.grid_eval(poly)
                assert np.array_equal(via_numpy, via_auto)

    def test_zero_polynomial(self):
        z = MultivariatePolynomial(2, make_field(3))
        assert np.array_equal(kernels.grid_eval(z), np.zeros(9, dtype=np.int64))

    def test_constant_polynomial(self):
        p = MultivariatePolynomial.constant(2, 2, make_field(5))
        assert np.array_equal(kernels.grid_eval(p), np.full(25, 2, dtype=np.int64))

    def test_example_f4(self):
        f4 = make_field(2, 2)
        poly = parse_polynomial("x0*x1 + 1", f4)
        values = kernels.grid_eval(poly)
        # value at (g, g) where g = index 2: g^2 + 1 = (1+g) + 1 = g
        assert values[2 * 4 + 2] == 2
        assert values[0] == 1

    def test_nullary(self):
        p = MultivariatePolynomial.constant(4, 0, make_field(5))
        assert np.array_equal(kernels.grid_eval(p), np.array([4]))


class TestTables:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25])
    def test_tables_consistent_with_field_mul(self, q):
        fld = field_for(q)
        logt, expt, digits, pvec = kernels.field_tables(fld)
        for a in range(1, q):
            for b in range(1, q):
                prod = expt[(logt[a] + logt[b]) % (q - 1)]
                assert prod == fld.mul(a, b)
        # digit decomposition inverts the encoding
        assert np.array_equal(digits @ pvec, np.arange(q))
