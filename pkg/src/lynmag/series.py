"""Truncated noncommutative power series and the Magnus embedding.

A :class:`TruncatedSeries` is a sparse integer polynomial in noncommuting
letters where every word longer than the truncation degree is discarded.
Coefficients live either in Z/p^k (``modulus`` a prime power) or in Z
itself (``modulus`` None); the exact path is what certifies vanishing
statements, since no single residue can.

``magnus`` sends a free-group word to its image under the ring map
x -> 1 + x, x^-1 -> 1 - x + x^2 - ...; the coefficient functionals
``eps`` extracted from that image detect membership in the lower central
and lower p-central series (``lower_central_test``, ``koch_test``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .freegrp import GroupWord, commutator
from .words import Alphabet, Word, is_lyndon, preceq_key, standard_factorization

WordKey = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(m: int) -> tuple[int, int]:
    """Write m = p^k with p prime and k >= 1, or raise ValueError."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    p = 2
    while p * p <= m:
        if m % p == 0:
            break
        p += 1
    else:
        return m, 1
    k, rest = 0, m
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{m} is not a prime power")
    return p, k


@dataclass(frozen=True)
class ModCoeff:
    """A residue 0 <= value < modulus, with modulus a prime power."""

    value: int
    modulus: int

    def __post_init__(self):
        prime_power(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def balanced(self) -> int:
        """The representative of smallest absolute value (ties positive)."""
        if self.value <= self.modulus // 2:
            return self.value
        return self.value - self.modulus

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"ModCoeff({self.value} mod {self.modulus})"


def _format_terms(pairs, alphabet: Alphabet) -> str:
    # pairs: (word key, signed integer coefficient), preceq-sorted
    if not pairs:
        return "0"
    chunks = []
    for key, c in pairs:
        word = str(Word(alphabet, key)) if key else ""
        if not word:
            body = str(abs(c))
        elif abs(c) == 1:
            body = word
        else:
            body = f"{abs(c)}·{word}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


class TruncatedSeries:
    """Sparse series in noncommuting letters, truncated above a fixed degree.

    The coefficient map never stores zeros and never stores words longer
    than the truncation degree, so equality of values is equality of maps.
    Instances are immutable by convention; all operations return new values.
    """

    __slots__ = ("alphabet", "modulus", "degree", "coeffs")

    def __init__(
        self,
        alphabet: Alphabet,
        modulus: Optional[int],
        degree: int,
        coeffs: Optional[Mapping[WordKey, int]] = None,
    ):
        if modulus is not None:
            prime_power(modulus)
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        clean: dict[WordKey, int] = {}
        if coeffs:
            for key, c in coeffs.items():
                if len(key) > degree:
                    continue
                if modulus is not None:
                    c %= modulus
                if c:
                    clean[key] = c
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def constant(
        cls, alphabet: Alphabet, modulus: Optional[int], degree: int, c: int = 1
    ) -> "TruncatedSeries":
        return cls(alphabet, modulus, degree, {(): c})

    @classmethod
    def one(
        cls, alphabet: Alphabet, modulus: Optional[int], degree: int
    ) -> "TruncatedSeries":
        return cls.constant(alphabet, modulus, degree, 1)

    def _check_compatible(self, other: "TruncatedSeries") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("series over different alphabets")
        if self.modulus != other.modulus:
            raise ValueError("series with different moduli")
        if self.degree != other.degree:
            raise ValueError("series with different truncation degrees")

    def coefficient(self, w: Word) -> int:
        if w.alphabet != self.alphabet:
            raise ValueError("word over a different alphabet")
        return self.coeffs.get(w.indices, 0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.alphabet == other.alphabet
            and self.modulus == other.modulus
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return TruncatedSeries(self.alphabet, self.modulus, self.degree, out)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.alphabet,
            self.modulus,
            self.degree,
            {key: c * v for key, v in self.coeffs.items()},
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_compatible(other)
        cap = self.degree
        by_len: dict[int, list[tuple[WordKey, int]]] = {}
        for v, cv in other.coeffs.items():
            by_len.setdefault(len(v), []).append((v, cv))
        out: dict[WordKey, int] = {}
        for u, cu in self.coeffs.items():
            room = cap - len(u)
            for length, items in by_len.items():
                if length > room:
                    continue
                for v, cv in items:
                    w = u + v
                    out[w] = out.get(w, 0) + cu * cv
        return TruncatedSeries(self.alphabet, self.modulus, cap, out)

    def terms(self) -> list[tuple[WordKey, int]]:
        """(word key, coefficient) pairs in preceq order."""
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def support(self) -> list[Word]:
        return [Word(self.alphabet, key) for key, _ in self.terms()]

    def min_support_degree(self) -> Optional[int]:
        """Smallest degree carrying a nonzero term, None for the zero series."""
        if not self.coeffs:
            return None
        return min(len(key) for key in self.coeffs)

    def homogeneous_part(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries(
            self.alphabet,
            self.modulus,
            self.degree,
            {key: c for key, c in self.coeffs.items() if len(key) == d},
        )

    def __str__(self) -> str:
        pairs = []
        for key, c in self.terms():
            if self.modulus is not None:
                c = ModCoeff(c, self.modulus).balanced()
            pairs.append((key, c))
        return _format_terms(pairs, self.alphabet)

    def __repr__(self) -> str:
        mod = "Z" if self.modulus is None else f"Z/{self.modulus}"
        return f"TruncatedSeries({self} over {mod}, deg<={self.degree})"

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "degree": self.degree,
            "terms": [
                {"word": str(Word(self.alphabet, key)), "coeff": c}
                for key, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: dict) -> "TruncatedSeries":
        coeffs = {
            alphabet.word(t["word"]).indices: int(t["coeff"])
            for t in data["terms"]
        }
        return cls(alphabet, data["modulus"], int(data["degree"]), coeffs)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_pow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """f^k by binary exponentiation; k < 0 inverts first."""
    if k < 0:
        return series_pow(series_invert(f), -k)
    result = TruncatedSeries.one(f.alphabet, f.modulus, f.degree)
    base = f
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    """Two-sided inverse up to the truncation degree.

    Requires the constant term to be a unit: +-1 over exact integers,
    coprime to p over Z/p^k.
    """
    c = f.coeffs.get((), 0)
    if f.modulus is None:
        if c not in (1, -1):
            raise ValueError("constant term must be +-1 for exact inversion")
        c_inv = c
    else:
        p, _ = prime_power(f.modulus)
        if c % p == 0:
            raise ValueError("constant term is not invertible")
        c_inv = pow(c, -1, f.modulus)
    one = TruncatedSeries.one(f.alphabet, f.modulus, f.degree)
    g = f.scale(c_inv) - one  # nilpotent part: f = c(1 + g)
    r = one
    for _ in range(f.degree):
        r = one - g * r
    return r.scale(c_inv)


@lru_cache(maxsize=4096)
def magnus(g: GroupWord, modulus: Optional[int], degree: int) -> TruncatedSeries:
    """Image of a free-group word under x -> 1 + x, truncated.

    Each syllable x^e is evaluated by binary exponentiation of (1 + x),
    inverting first for negative e, so exponent size costs log(e)
    series multiplications.  Results are immutable and cached: bulk
    verification sweeps evaluate many coefficients of the same image.
    """
    acc = TruncatedSeries.one(g.alphabet, modulus, degree)
    for letter, e in g.syllables:
        base = TruncatedSeries(
            g.alphabet, modulus, degree, {(): 1, (letter,): 1}
        )
        if e < 0:
            base = series_invert(base)
        acc = acc * series_pow(base, abs(e))
    return acc


def eps(g: GroupWord, w: Word, modulus: int) -> ModCoeff:
    """The coefficient of w in the Magnus image of g, as a residue."""
    if g.alphabet != w.alphabet:
        raise ValueError("group word and word use different alphabets")
    f = magnus(g, modulus, len(w))
    return ModCoeff(f.coeffs.get(w.indices, 0), modulus)


def eps_exact(g: GroupWord, w: Word) -> int:
    """The coefficient of w in the Magnus image of g, as an exact integer."""
    if g.alphabet != w.alphabet:
        raise ValueError("group word and word use different alphabets")
    return magnus(g, None, len(w)).coeffs.get(w.indices, 0)


class IntPoly:
    """Finitely supported integer polynomial in noncommuting letters."""

    __slots__ = ("alphabet", "coeffs")

    def __init__(
        self, alphabet: Alphabet, coeffs: Optional[Mapping[WordKey, int]] = None
    ):
        clean = {key: c for key, c in (coeffs or {}).items() if c}
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "IntPoly":
        return cls(alphabet, {})

    @classmethod
    def from_word(cls, w: Word, c: int = 1) -> "IntPoly":
        return cls(w.alphabet, {w.indices: c})

    def _check(self, other: "IntPoly") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("polynomials over different alphabets")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntPoly)
            and self.alphabet == other.alphabet
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "IntPoly") -> "IntPoly":
        self._check(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return IntPoly(self.alphabet, out)

    def __neg__(self) -> "IntPoly":
        return self.scale(-1)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(self.alphabet, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        self._check(other)
        out: dict[WordKey, int] = {}
        for u, cu in self.coeffs.items():
            for v, cv in other.coeffs.items():
                w = u + v
                out[w] = out.get(w, 0) + cu * cv
        return IntPoly(self.alphabet, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Largest word length in the support; 0 for the zero polynomial."""
        return max((len(k) for k in self.coeffs), default=0)

    def homogeneous_part(self, d: int) -> "IntPoly":
        return IntPoly(
            self.alphabet, {k: c for k, c in self.coeffs.items() if len(k) == d}
        )

    def terms(self) -> list[tuple[WordKey, int]]:
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def support(self) -> list[Word]:
        return [Word(self.alphabet, key) for key, _ in self.terms()]

    def __str__(self) -> str:
        return _format_terms(self.terms(), self.alphabet)

    def __repr__(self) -> str:
        return f"IntPoly({self})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"word": str(Word(self.alphabet, key)), "coeff": c}
                for key, c in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, alphabet: Alphabet, data: dict) -> "IntPoly":
        return cls(
            alphabet,
            {
                alphabet.word(t["word"]).indices: int(t["coeff"])
                for t in data["terms"]
            },
        )


def inner_product(f: TruncatedSeries, q: IntPoly):
    """Sum of f_w * q_w over all words; ModCoeff, or int on the exact path.

    The polynomial must not reach beyond the series truncation, otherwise
    discarded terms would silently change the answer.
    """
    if f.alphabet != q.alphabet:
        raise ValueError("series and polynomial over different alphabets")
    if q.degree() > f.degree:
        raise ValueError("polynomial degree exceeds series truncation")
    total = sum(f.coeffs.get(key, 0) * c for key, c in q.coeffs.items())
    if f.modulus is None:
        return total
    return ModCoeff(total, f.modulus)


def koch_test(g: GroupWord, n: int, p: int) -> bool:
    """Divisibility criterion for membership in the n-th lower p-central term.

    True iff the coefficient of every word w with 1 <= |w| < n is divisible
    by p^(n-|w|).  Working modulus p^n makes each divisibility exact.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n == 1:
        return True
    f = magnus(g, p**n, n - 1)
    return all(c % p ** (n - len(key)) == 0 for key, c in f.coeffs.items() if key)


def lower_central_test(g: GroupWord, n: int) -> bool:
    """True iff every word of length 1..n-1 has vanishing coefficient.

    Computed over exact integers, so vanishing is certified, not sampled.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return True
    f = magnus(g, None, n - 1)
    return all(not key for key in f.coeffs)


def p_poly(w: Word) -> IntPoly:
    """The homogeneous bracket polynomial of a Lyndon word.

    Single letters map to themselves; w = w'w'' (standard factorization)
    maps to the ring commutator P(w')P(w'') - P(w'')P(w').
    """
    if not is_lyndon(w):
        raise ValueError(f"{w!r} is not a Lyndon word")
    if len(w) == 1:
        return IntPoly.from_word(w)
    left, right = standard_factorization(w)
    a, b = p_poly(left), p_poly(right)
    return a * b - b * a


def commutator_coeff_check(
    sigma: GroupWord, tau: GroupWord, n: int, m: int, w: Word
) -> bool:
    """Check the splitting rule for commutator coefficients.

    For sigma with vanishing coefficients below degree n and tau below
    degree m, the coefficient of a word w of length n+m in the Magnus
    image of [sigma, tau] must equal
    eps_{u1}(sigma) eps_{u2}(tau) - eps_{u2'}(tau) eps_{u1'}(sigma)
    where w = u1 u2 = u2' u1' with |u1| = |u1'| = n.  Exact integers.
    """
    if len(w) != n + m:
        raise ValueError("word length must be n + m")
    if not lower_central_test(sigma, n):
        raise ValueError("first element fails the degree-n vanishing precondition")
    if not lower_central_test(tau, m):
        raise ValueError("second element fails the degree-m vanishing precondition")
    deg = n + m
    f_sigma = magnus(sigma, None, deg)
    f_tau = magnus(tau, None, deg)
    f_comm = magnus(commutator(sigma, tau), None, deg)
    u = w.indices
    lhs = f_comm.coeffs.get(u, 0)
    rhs = f_sigma.coeffs.get(u[:n], 0) * f_tau.coeffs.get(u[n:], 0) - f_tau.coeffs.get(
        u[:m], 0
    ) * f_sigma.coeffs.get(u[m:], 0)
    return lhs == rhs
