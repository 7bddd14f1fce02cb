"""Exact arithmetic in GF(p^n).

An element is stored as a canonical integer in ``[0, q)`` encoding the
coefficient vector ``(c0, ..., c_{n-1})`` as ``sum(c_i * p**i)``.  For the
small fields the graph builders use, :class:`FieldSpec` exposes dense numpy
lookup tables so whole coordinate arrays can be combined at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

# Default moduli, coefficients low degree first.  Any irreducible choice
# works; these are fixed so that constructions are reproducible.
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    2: (0, 1),
    3: (0, 1),
    4: (1, 1, 1),           # x^2 + x + 1
    5: (0, 1),
    7: (0, 1),
    8: (1, 1, 0, 1),        # x^3 + x + 1
    9: (1, 0, 1),           # x^2 + 1
    16: (1, 1, 0, 0, 1),    # x^4 + x + 1
    25: (2, 0, 1),          # x^2 + 2
    27: (1, 2, 0, 1),       # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    81: (2, 0, 0, 1, 1),    # x^4 + x^3 + 2
    243: (1, 2, 0, 0, 0, 1),  # x^5 + 2x + 1
}

# dense q*q tables above this order would cost too much memory
TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n``; raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, n


# -- polynomials over GF(p): lists of ints, low degree first -------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        _trim(a)
    return a


def _has_factor_of_degree(modulus: Sequence[int], d: int, p: int) -> bool:
    for low in product(range(p), repeat=d):
        if not _poly_mod(list(modulus), list(low) + [1], p):
            return True
    return False


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive search for monic factors of degree <= n/2."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p == 0:
        return False
    if n == 1:
        return True
    return not any(_has_factor_of_degree(modulus, d, p) for d in range(1, n // 2 + 1))


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) with an explicit monic irreducible modulus."""

    p: int
    n: int
    modulus: tuple[int, ...]
    q: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.n)

    # -- encoding ---------------------------------------------------------
    def coeffs(self, v: int) -> list[int]:
        out = []
        for _ in range(self.n):
            v, c = divmod(v, self.p)
            out.append(c)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(list(coeffs)[: self.n]):
            v = v * self.p + (c % self.p)
        return v

    # -- scalar integer arithmetic ----------------------------------------
    def _add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return self.encode([-x for x in self.coeffs(a)])

    def _mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.n - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.encode(_poly_mod(prod, self.modulus, self.p) + [0] * self.n)

    def _pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._pow(a, self.q - 2)

    # -- dense tables (small fields only) ---------------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self._add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self._mul)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self._neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[0]`` is 0 by convention; callers must guard zero."""
        return np.array([0] + [self._inv(a) for a in range(1, self.q)], dtype=np.int64)

    def _table(self, op) -> np.ndarray:
        if self.q > TABLE_LIMIT:
            raise FieldError(f"lookup tables unavailable for q={self.q} > {TABLE_LIMIT}")
        q = self.q
        t = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                t[a, b] = t[b, a] = op(a, b)
        return t

    def pow_table(self, e: int) -> np.ndarray:
        return np.array([self._pow(a, e) for a in range(self.q)], dtype=np.int64)

    # -- element API ------------------------------------------------------
    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(self, value)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def x(self) -> "FieldElem":
        """The class of the polynomial variable (the prime 1 in GF(p))."""
        return FieldElem(self, self.p if self.n > 1 else 1 % self.p)

    def header(self) -> str:
        """Report-header form ``p n c0,c1,...,cn``."""
        return f"{self.p} {self.n} {','.join(map(str, self.modulus))}"

    def __repr__(self) -> str:
        return f"GF({self.q}; {self.header()})"


@dataclass(frozen=True, order=True)
class FieldElem:
    field: FieldSpec = dc_field(compare=False)
    value: int = 0

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"value {self.value} outside [0, {self.field.q})")

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError("operands belong to different fields")

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field._add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        f = self.field
        return FieldElem(f, f._add(self.value, f._neg(other.value)))

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.value))

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.field, self.field._mul(self.value, other.value))

    def __truediv__(self, other):
        return self * inv(other)

    def __pow__(self, e: int):
        return pow_(self, e)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F{self.field.q}({self.value})"


def make_field(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^n).  Without a modulus the built-in table is used."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if n < 1:
        raise FieldError("exponent n must be positive")
    q = p ** n
    if modulus is None:
        if q not in DEFAULT_MODULI:
            raise FieldError(f"no built-in modulus for q={q}; pass one explicitly")
        modulus = DEFAULT_MODULI[q]
    modulus = tuple(int(c) for c in modulus)
    if len(modulus) != n + 1:
        raise FieldError(f"modulus must have {n + 1} coefficients, got {len(modulus)}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError("modulus coefficients must lie in [0, p)")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return FieldSpec(p, n, modulus)


def gf(q: int) -> FieldSpec:
    """Field of order q using the built-in modulus table."""
    p, n = prime_power(q)
    return make_field(p, n)


def parse_field(text: str) -> FieldSpec:
    """Parse ``9`` (table modulus) or ``3^2:1,0,1`` (explicit modulus)."""
    text = text.strip()
    if ":" in text:
        head, coeffs = text.split(":", 1)
        p_str, _, n_str = head.partition("^")
        return make_field(int(p_str), int(n_str or 1), [int(c) for c in coeffs.split(",")])
    if "^" in text:
        p_str, n_str = text.split("^")
        return make_field(int(p_str), int(n_str))
    return gf(int(text))


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def neg(a: FieldElem) -> FieldElem:
    return -a


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def inv(a: FieldElem) -> FieldElem:
    if a.value == 0:
        raise ZeroDivisionError("inverse of 0 in a finite field")
    return FieldElem(a.field, a.field._inv(a.value))


def pow_(a: FieldElem, e: int) -> FieldElem:
    if e < 0:
        raise FieldError("negative exponents are not supported; use inv")
    return FieldElem(a.field, a.field._pow(a.value, e))


def frob_pow(a: FieldElem, s: int) -> FieldElem:
    """``a ** (p ** s)``."""
    return pow_(a, a.field.p ** s)


def elements(f: FieldSpec) -> list[FieldElem]:
    return [FieldElem(f, v) for v in range(f.q)]


def is_permutation_power(f: FieldSpec, e: int) -> bool:
    """Whether ``a -> a**e`` is a bijection of the field (checked exhaustively)."""
    return len({f._pow(a, e) for a in range(f.q)}) == f.q


def values(xs: Iterable[FieldElem]) -> tuple[int, ...]:
    return tuple(x.value for x in xs)
