"""The duality pairing, its matrix, inversion, and vanishing rules."""

import numpy as np
import pytest

from lynmag.errors import ConsistencyError
from lynmag.pairing import (
    PairingMatrix,
    dual_change_of_basis,
    h2_dimension,
    pairing,
    pairing_matrix,
    vanishing_checks,
)
from lynmag.words import Alphabet, all_words, lyndon_words

X1 = Alphabet("x")
XY = Alphabet("xy")
XYZ = Alphabet("xyz")


class TestPairingValues:
    def test_diagonal_is_one(self):
        for p in (2, 3, 5):
            for n in (1, 2, 3):
                for w in lyndon_words(XY, n):
                    assert pairing(w, w, n, p).value == 1

    def test_lower_pairs_vanish(self):
        # w' strictly preceq-smaller than w forces 0
        for p in (2, 3):
            ws = lyndon_words(XY, 3)
            for i, w in enumerate(ws):
                for w_prime in ws[:i]:
                    assert pairing(w, w_prime, 3, p).value == 0

    def test_pinned_degree_three_values(self):
        for p in (2, 3, 5):
            assert pairing(XY.word("xxy"), XY.word("xyy"), 3, p).value == 0
            got = pairing(XYZ.word("xyz"), XYZ.word("xzy"), 3, p).value
            assert got == (p - 1) % p

    def test_result_is_mod_p(self):
        r = pairing(XY.word("x"), XY.word("x"), 3, 5)
        assert r.modulus == 5

    def test_input_validation(self):
        with pytest.raises(ValueError):
            pairing(XY.word("yx"), XY.word("x"), 2, 3)  # not Lyndon
        with pytest.raises(ValueError):
            pairing(XY.word("x"), XY.word(""), 2, 3)  # empty w'
        with pytest.raises(ValueError):
            pairing(XY.word("xxy"), XY.word("x"), 2, 3)  # |w| > n
        with pytest.raises(ValueError):
            pairing(XY.word("x"), XY.word("x"), 2, 4)  # p not prime
        with pytest.raises(ValueError):
            pairing(XY.word("x"), XYZ.word("x"), 2, 3)


class TestDualityTableDegreeTwo:
    """The displayed degree-2 duality values, all alphabets of size <= 3."""

    def test_letter_against_own_power_row(self):
        for p in (2, 3, 5):
            for x in "xyz":
                assert pairing(XYZ.word(x), XYZ.word(x), 2, p).value == 1

    def test_letter_against_other_letter(self):
        for p in (2, 3, 5):
            for x in "xyz":
                for y in "xyz":
                    if x != y:
                        assert pairing(XYZ.word(x), XYZ.word(y), 2, p).value == 0

    def test_letter_against_length_two_words(self):
        # Zero throughout, except the p=2 coincidence at w' = xx, where the
        # value is the Bockstein value 1 (binom(2,2) is odd).
        for p in (2, 3, 5):
            for x in "xyz":
                w = XYZ.word(x)
                for w_prime in all_words(XYZ, 2):
                    got = pairing(w, w_prime, 2, p).value
                    if p == 2 and w_prime.indices == (w.indices[0],) * 2:
                        assert got == 1
                    else:
                        assert got == 0

    def test_commutator_against_letters(self):
        for p in (2, 3, 5):
            for pair in ("xy", "xz", "yz"):
                for z in "xyz":
                    assert pairing(XYZ.word(pair), XYZ.word(z), 2, p).value == 0

    def test_commutator_against_pairs(self):
        for p in (2, 3, 5):
            for pair in ("xy", "xz", "yz"):
                w = XYZ.word(pair)
                rev = pair[::-1]
                for w_prime in all_words(XYZ, 2):
                    got = pairing(w, w_prime, 2, p).value
                    if str(w_prime) == pair:
                        assert got == 1
                    elif str(w_prime) == rev:
                        assert got == (p - 1) % p
                    else:
                        assert got == 0


class TestPairingMatrix:
    def test_n1_identity(self):
        for p in (2, 5):
            assert pairing_matrix(1, p, XYZ).is_identity()

    def test_n2_identity(self):
        for p in (2, 3, 5):
            for alphabet in (X1, XY, XYZ):
                M = pairing_matrix(2, p, alphabet)
                assert M.is_identity()
                assert M.dimension() == h2_dimension(2, alphabet)

    def test_n3_two_letters_identity(self):
        # no triple of distinct letters exists, so no off-diagonal entry
        M = pairing_matrix(3, 3, XY)
        assert M.is_identity()
        assert [str(w) for w in M.index] == ["x", "y", "xy", "xxy", "xyy"]

    def test_n3_three_letters_single_offdiagonal(self):
        for p in (2, 3, 5):
            M = pairing_matrix(3, p, XYZ)
            expected = np.eye(14, dtype=np.int64)
            names = [str(w) for w in M.index]
            expected[names.index("xyz"), names.index("xzy")] = (p - 1) % p
            assert np.array_equal(M.rows, expected)

    def test_entry_lookup(self):
        M = pairing_matrix(3, 5, XYZ)
        assert M.entry(XYZ.word("xyz"), XYZ.word("xzy")) == 4
        assert M.entry(XYZ.word("x"), XYZ.word("x")) == 1


class TestDualChangeOfBasis:
    def test_n2_identity(self):
        M = pairing_matrix(2, 3, XY)
        assert np.array_equal(dual_change_of_basis(M), np.eye(3, dtype=np.int64))

    def test_n3_single_flip(self):
        for p in (2, 3, 5):
            M = pairing_matrix(3, p, XYZ)
            inv = dual_change_of_basis(M)
            names = [str(w) for w in M.index]
            expected = np.eye(14, dtype=np.int64)
            expected[names.index("xyz"), names.index("xzy")] = 1 % p
            assert np.array_equal(inv, expected)

    def test_inverse_property(self):
        for n, p, alphabet in [(3, 2, XY), (3, 5, XYZ), (4, 3, XY)]:
            M = pairing_matrix(n, p, alphabet)
            inv = dual_change_of_basis(M)
            d = M.dimension()
            assert np.array_equal((M.rows @ inv) % p, np.eye(d, dtype=np.int64))
            assert np.array_equal((inv @ M.rows) % p, np.eye(d, dtype=np.int64))


class TestH2Dimension:
    def test_pinned(self):
        assert h2_dimension(3, XY) == 5
        assert h2_dimension(2, XY) == 3
        for m, alphabet in [(1, X1), (2, XY), (3, XYZ)]:
            assert h2_dimension(1, alphabet) == m

    def test_matches_enumeration(self):
        for n in range(1, 5):
            for alphabet in (XY, XYZ):
                assert h2_dimension(n, alphabet) == len(lyndon_words(alphabet, n))


class TestVanishingChecks:
    def test_clean_report(self):
        rep = vanishing_checks(3, 3, XYZ)
        assert rep["passed"]
        assert rep["counterexamples"] == []
        assert rep["pairs_checked"] > 300
        assert rep["by_rule"]["letters"] > 0
        assert rep["by_rule"]["length-gap"] > 0

    def test_rule_examples_direct(self):
        # letters rule: w' uses z, absent from w
        assert pairing(XYZ.word("xy"), XYZ.word("xz"), 3, 3).value == 0
        # length-gap rule: |w|=2 < |w'|=3 < 4
        for w_prime in all_words(XYZ, 3):
            assert pairing(XYZ.word("xy"), w_prime, 3, 3).value == 0

    def test_degree_four_two_letters(self):
        rep = vanishing_checks(4, 2, XY)
        assert rep["passed"]


class TestSerialization:
    def test_json_shape(self):
        M = pairing_matrix(2, 3, XY)
        data = M.to_json()
        assert data["p"] == 3 and data["n"] == 2
        assert data["index"] == ["x", "y", "xy"]
        assert data["rows"] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_csv_balanced_entries(self):
        M = pairing_matrix(3, 5, XYZ)
        csv = M.to_csv()
        lines = csv.strip().split("\n")
        assert lines[0].startswith("w,x,y,z,")
        assert len(lines) == 15
        row = next(l for l in lines if l.startswith("xyz,"))
        assert ",-1" in row  # balanced representative of 4 mod 5
