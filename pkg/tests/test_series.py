"""Truncated series arithmetic, the Magnus map, eps, Koch tests, P_w."""

import random

import pytest

from lynmag.freegrp import GroupWord, commutator, parse_group_word, tau
from lynmag.series import (
    IntPoly,
    ModCoeff,
    TruncatedSeries,
    commutator_coeff_check,
    eps,
    eps_exact,
    inner_product,
    is_prime,
    koch_test,
    lower_central_test,
    magnus,
    p_poly,
    prime_power,
    series_invert,
    series_mul,
    series_pow,
)
from lynmag.words import Alphabet

XY = Alphabet("xy")
XYZ = Alphabet("xyz")


def gw(text: str, alphabet: Alphabet = XY) -> GroupWord:
    return parse_group_word(alphabet, text)


def ts(alphabet, modulus, degree, text_coeffs: dict) -> TruncatedSeries:
    coeffs = {alphabet.word(w).indices: c for w, c in text_coeffs.items()}
    return TruncatedSeries(alphabet, modulus, degree, coeffs)


def poly(alphabet, text_coeffs: dict) -> IntPoly:
    return IntPoly(
        alphabet, {alphabet.word(w).indices: c for w, c in text_coeffs.items()}
    )


def random_word(rng: random.Random, alphabet: Alphabet, max_letters: int) -> GroupWord:
    k = rng.randint(0, max_letters)
    return GroupWord(
        alphabet,
        tuple((rng.randrange(len(alphabet)), rng.choice((1, -1))) for _ in range(k)),
    )


class TestModularBasics:
    def test_is_prime(self):
        assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_prime_power(self):
        assert prime_power(8) == (2, 3)
        assert prime_power(7) == (7, 1)
        assert prime_power(125) == (5, 3)
        for bad in (1, 6, 12, 100):
            with pytest.raises(ValueError):
                prime_power(bad)

    def test_modcoeff_normalizes(self):
        assert ModCoeff(12, 5).value == 2
        assert ModCoeff(-1, 9).value == 8
        assert ModCoeff(8, 9).balanced() == -1
        assert ModCoeff(4, 9).balanced() == 4
        with pytest.raises(ValueError):
            ModCoeff(1, 6)


class TestSeriesArithmetic:
    def test_mul_distributes(self):
        one_x = ts(XY, None, 2, {"": 1, "x": 1})
        one_y = ts(XY, None, 2, {"": 1, "y": 1})
        assert one_x * one_y == ts(XY, None, 2, {"": 1, "x": 1, "y": 1, "xy": 1})

    def test_geometric_inverse_pair(self):
        one_x = ts(XY, None, 2, {"": 1, "x": 1})
        alt = ts(XY, None, 2, {"": 1, "x": -1, "xx": 1})
        assert one_x * alt == TruncatedSeries.one(XY, None, 2)

    def test_noncommutative(self):
        x = ts(XY, None, 2, {"x": 1})
        y = ts(XY, None, 2, {"y": 1})
        assert x * y != y * x
        assert x * y == ts(XY, None, 2, {"xy": 1})

    def test_truncation_drops_long_words(self):
        f = ts(XY, None, 1, {"x": 1})
        assert (f * f).coeffs == {}
        assert ts(XY, None, 1, {"xy": 5}).coeffs == {}

    def test_canonical_form(self):
        f = ts(XY, 9, 2, {"x": 9, "y": 10})
        assert f == ts(XY, 9, 2, {"y": 1})
        g = ts(XY, None, 2, {"": 1, "x": 1})
        assert (g - g).coeffs == {}

    def test_associativity_randomized(self):
        rng = random.Random(3)
        keys = [(), (0,), (1,), (0, 1), (1, 0), (0, 0)]
        def rand_series():
            return TruncatedSeries(
                XY, 27, 3, {k: rng.randrange(27) for k in rng.sample(keys, 4)}
            )
        for _ in range(100):
            f, g, h = rand_series(), rand_series(), rand_series()
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h

    def test_mismatch_errors(self):
        f = ts(XY, 9, 2, {"x": 1})
        with pytest.raises(ValueError):
            series_mul(f, ts(XY, 27, 2, {"x": 1}))
        with pytest.raises(ValueError):
            series_mul(f, ts(XY, 9, 3, {"x": 1}))
        with pytest.raises(ValueError):
            series_mul(f, ts(XYZ, 9, 2, {"x": 1}))


class TestInversion:
    def test_geometric_series(self):
        for deg in range(5):
            inv = series_invert(ts(XY, None, deg, {"": 1, "x": 1}))
            expected = {("x" * i): (-1) ** i for i in range(deg + 1)}
            assert inv == ts(XY, None, deg, expected)

    def test_one_inverts_to_one(self):
        one = TruncatedSeries.one(XY, 25, 3)
        assert series_invert(one) == one

    def test_invert_is_involution_randomized(self):
        rng = random.Random(5)
        keys = [(), (0,), (1,), (0, 1), (1, 1), (0, 0, 1)]
        for _ in range(100):
            coeffs = {k: rng.randrange(1, 25) for k in rng.sample(keys, 4)}
            coeffs[()] = rng.choice([1, 2, 3, 4, 6, 7])  # unit mod 25
            f = TruncatedSeries(XY, 25, 3, coeffs)
            assert series_invert(series_invert(f)) == f
            assert f * series_invert(f) == TruncatedSeries.one(XY, 25, 3)
            assert series_invert(f) * f == TruncatedSeries.one(XY, 25, 3)

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            series_invert(ts(XY, 25, 2, {"": 5, "x": 1}))
        with pytest.raises(ValueError):
            series_invert(ts(XY, None, 2, {"": 2, "x": 1}))


class TestMagnus:
    def test_letter(self):
        assert magnus(gw("x"), None, 3) == ts(XY, None, 3, {"": 1, "x": 1})

    def test_inverse_letter(self):
        assert magnus(gw("x^-1"), None, 2) == ts(XY, None, 2, {"": 1, "x": -1, "xx": 1})

    def test_commutator_viafour_factors(self):
        # Independent oracle: multiply the four Magnus factors by hand.
        D = 2
        one_x = ts(XY, None, D, {"": 1, "x": 1})
        one_y = ts(XY, None, D, {"": 1, "y": 1})
        oracle = series_invert(one_x) * series_invert(one_y) * one_x * one_y
        assert magnus(gw("[x,y]"), None, D) == oracle
        assert oracle == ts(XY, None, D, {"": 1, "xy": 1, "yx": -1})

    def test_constant_term_always_one(self):
        rng = random.Random(9)
        for _ in range(50):
            g = random_word(rng, XYZ, 10)
            assert magnus(g, 8, 3).coeffs.get((), 0) == 1

    def test_multiplicative_randomized(self):
        rng = random.Random(13)
        for modulus in (None, 16, 27, 625):
            for _ in range(60):
                g = random_word(rng, XY, 8)
                h = random_word(rng, XY, 8)
                lhs = magnus(g * h, modulus, 4)
                rhs = magnus(g, modulus, 4) * magnus(h, modulus, 4)
                assert lhs == rhs

    def test_power_consistency(self):
        g = gw("x y^-1")
        f = magnus(g, 81, 4)
        assert magnus(g**5, 81, 4) == series_pow(f, 5)
        assert magnus(g**-3, 81, 4) == series_pow(f, -3)


class TestEps:
    def test_power_binomials(self):
        for p in (2, 3, 5):
            assert eps(gw(f"x^{p}"), XY.word("x"), p**2).value == p

    def test_commutator_coefficients(self):
        for modulus in (4, 9, 125):
            assert eps(gw("[x,y]"), XY.word("xy"), modulus).value == 1
            assert eps(gw("[x,y]"), XY.word("yx"), modulus).value == modulus - 1
        assert eps_exact(gw("[x,y]"), XY.word("yx")) == -1

    def test_empty_word(self):
        rng = random.Random(2)
        for _ in range(20):
            g = random_word(rng, XY, 6)
            assert eps(g, XY.word(""), 9).value == 1
            assert eps_exact(g, XY.word("")) == 1

    def test_degree_one_additive(self):
        # On single letters the coefficient is a homomorphism to (Z/m, +).
        rng = random.Random(4)
        x = XYZ.word("x")
        for _ in range(200):
            g = random_word(rng, XYZ, 8)
            h = random_word(rng, XYZ, 8)
            lhs = eps(g * h, x, 27).value
            rhs = (eps(g, x, 27).value + eps(h, x, 27).value) % 27
            assert lhs == rhs

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            eps(gw("x"), XYZ.word("x"), 9)


class TestInnerProduct:
    def test_examples(self):
        f = ts(XY, 9, 2, {"": 1, "x": 1, "xy": 1})
        assert inner_product(f, poly(XY, {"xy": 1})).value == 1
        assert inner_product(f, IntPoly.zero(XY)).value == 0
        assert inner_product(f, poly(XY, {"x": 2, "xy": 3})).value == 5

    def test_exact_path(self):
        f = ts(XY, None, 2, {"xy": -2})
        assert inner_product(f, poly(XY, {"xy": 3})) == -6

    def test_degree_overflow(self):
        f = ts(XY, 9, 1, {"x": 1})
        with pytest.raises(ValueError):
            inner_product(f, poly(XY, {"xy": 1}))


class TestMembershipTests:
    def test_koch_examples(self):
        for p in (2, 3, 5):
            assert koch_test(gw(f"x^{p}"), 2, p)
            assert koch_test(gw("[x,y]"), 2, p)
            assert not koch_test(gw("x"), 2, p)

    def test_koch_validates(self):
        with pytest.raises(ValueError):
            koch_test(gw("x"), 2, 4)
        with pytest.raises(ValueError):
            koch_test(gw("x"), 0, 3)

    def test_koch_trivial_layer(self):
        assert koch_test(gw("x"), 1, 3)

    def test_lower_central_examples(self):
        c = gw("[x,y]")
        assert lower_central_test(c, 2)
        assert not lower_central_test(c, 3)
        assert lower_central_test(tau(XY.word("xxy")), 3)
        assert not lower_central_test(gw("x"), 2)

    def test_koch_contains_lower_central_powers(self):
        # tau(w)^(p^(n-s)) must land in the n-th p-central layer.
        for p in (2, 3):
            for w, n in [("xy", 3), ("xxy", 3), ("x", 2)]:
                word = XY.word(w)
                g = tau(word) ** (p ** (n - len(word)))
                assert koch_test(g, n, p)


class TestPPoly:
    def test_pinned_values(self):
        assert p_poly(XY.word("x")) == poly(XY, {"x": 1})
        assert p_poly(XY.word("xy")) == poly(XY, {"xy": 1, "yx": -1})
        assert p_poly(XY.word("xxy")) == poly(XY, {"xxy": 1, "xyx": -2, "yxx": 1})
        assert p_poly(XY.word("xyy")) == poly(XY, {"xyy": 1, "yxy": -2, "yyx": 1})

    def test_homogeneous(self):
        from lynmag.words import lyndon_words

        for w in lyndon_words(XY, 4):
            q = p_poly(w)
            assert q.degree() == len(w)
            assert q.homogeneous_part(len(w)) == q
            assert q.coeffs[w.indices] == 1

    def test_rejects_non_lyndon(self):
        with pytest.raises(ValueError):
            p_poly(XY.word("yx"))


class TestTriangularity:
    def test_magnus_of_tau_starts_at_p_poly(self):
        from lynmag.words import lyndon_words

        for w in lyndon_words(XY, 4) + lyndon_words(XYZ, 3):
            f = magnus(tau(w), None, len(w))
            expected = TruncatedSeries(
                w.alphabet, None, len(w), dict(p_poly(w).coeffs)
            ) + TruncatedSeries.one(w.alphabet, None, len(w))
            assert f == expected, str(w)

    def test_p_poly_tail_is_alp_larger(self):
        from lynmag.words import lyndon_words

        for w in lyndon_words(XY, 4) + lyndon_words(XYZ, 3):
            tail = p_poly(w) - IntPoly.from_word(w)
            for key in tail.coeffs:
                assert len(key) == len(w)
                assert key > w.indices  # strictly alp-greater, same length


class TestCommutatorCoeffCheck:
    def test_basic_example(self):
        sigma, tau_ = gw("x"), gw("[x,y]")
        assert commutator_coeff_check(sigma, tau_, 1, 2, XY.word("xxy"))

    def test_letters_give_commutator_coefficient(self):
        assert commutator_coeff_check(gw("x"), gw("y"), 1, 1, XY.word("xy"))
        assert eps_exact(gw("[x,y]"), XY.word("xy")) == 1

    def test_exhaustive_degree_four(self):
        from lynmag.words import all_words

        sigma = gw("[x,y]", XYZ)
        tau_ = gw("[x,z]", XYZ)
        for w in all_words(XYZ, 4):
            assert commutator_coeff_check(sigma, tau_, 2, 2, w)

    def test_precondition_enforced(self):
        with pytest.raises(ValueError):
            commutator_coeff_check(gw("x"), gw("y"), 2, 1, XY.word("xxy"))
        with pytest.raises(ValueError):
            commutator_coeff_check(gw("x"), gw("y"), 1, 1, XY.word("xyy"))


class TestSerialization:
    def test_series_json_roundtrip(self):
        f = magnus(gw("[x,y]"), 9, 3)
        data = f.to_json()
        assert data["modulus"] == 9 and data["degree"] == 3
        words = [t["word"] for t in data["terms"]]
        assert words == sorted(words, key=lambda s: (len(s), s))
        assert TruncatedSeries.from_json(XY, data) == f

    def test_intpoly_json_roundtrip(self):
        q = p_poly(XY.word("xxy"))
        assert IntPoly.from_json(XY, q.to_json()) == q

    def test_str_formats(self):
        assert str(ts(XY, None, 2, {"": 1, "xy": 1, "yx": -1})) == "1 + xy - yx"
        assert str(ts(XY, 9, 2, {"x": 8})) == "-x"
        assert str(ts(XY, None, 2, {"xx": 3})) == "3·xx"
        assert str(IntPoly.zero(XY)) == "0"
