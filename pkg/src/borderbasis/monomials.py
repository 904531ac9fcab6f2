"""Monomials, degree-compatible term orders, order ideals, and borders.

Everything in this module is exact integer arithmetic on exponent tuples;
no floating point enters until the evaluation layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Monomial:
    """A power product x_1^e_1 * ... * x_n^e_n stored as its exponent tuple.

    Variables are indexed 0..n-1 (x_1 is index 0). Two monomials are equal
    iff their exponent tuples are equal.
    """

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "_degree", sum(exps))

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, nvars: int, k: int) -> "Monomial":
        e = [0] * nvars
        e[k] = 1
        return cls(tuple(e))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return self._degree  # type: ignore[attr-defined]

    def degree_in(self, k: int) -> int:
        return self.exponents[k]

    def is_constant(self) -> bool:
        return self.degree == 0

    def times_var(self, k: int) -> "Monomial":
        e = list(self.exponents)
        e[k] += 1
        return Monomial(tuple(e))

    def divides(self, other: "Monomial") -> bool:
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __str__(self) -> str:
        if self.degree == 0:
            return "1"
        parts = []
        for k, e in enumerate(self.exponents):
            if e == 1:
                parts.append(f"x{k + 1}")
            elif e > 1:
                parts.append(f"x{k + 1}^{e}")
        return "*".join(parts)


def partial_derivative_term(t: Monomial, k: int) -> tuple[int, Monomial | None]:
    """d/dx_k of a single term: (e_k, t with e_k decremented), or (0, None).

    The returned integer is the power-rule coefficient; ``None`` marks a
    vanishing derivative.
    """
    e = t.exponents[k]
    if e == 0:
        return 0, None
    q = list(t.exponents)
    q[k] -= 1
    return e, Monomial(tuple(q))


class TermOrder(Enum):
    """Degree-compatible term orders with variable precedence x_1 > ... > x_n."""

    DEGREVLEX = "degrevlex"
    GRLEX = "grlex"

    def key(self, m: Monomial):
        """Sort key; ascending sort by this key is ascending in the order."""
        if self is TermOrder.DEGREVLEX:
            # ties: largest index k with differing exponents; s > t iff s_k < t_k
            return (m.degree, tuple(-e for e in reversed(m.exponents)))
        # grlex ties: smallest differing index; s > t iff s_k > t_k
        return (m.degree, m.exponents)

    def compare(self, s: Monomial, t: Monomial) -> int:
        """-1, 0, or 1 as s <, =, > t."""
        if s.nvars != t.nvars:
            raise ValueError("variable counts differ")
        ks, kt = self.key(s), self.key(t)
        return (ks > kt) - (ks < kt)

    def sort(self, terms: Iterable[Monomial]) -> list[Monomial]:
        return sorted(terms, key=self.key)


def is_order_ideal(terms: Iterable[Monomial]) -> bool:
    """True iff the set is closed under taking divisors (vacuously for {})."""
    term_set = set(terms)
    for t in term_set:
        for k in range(t.nvars):
            _, q = partial_derivative_term(t, k)
            if q is not None and q not in term_set:
                return False
    return True


def border(order_ideal: Iterable[Monomial], nvars: int | None = None) -> set[Monomial]:
    """(union of x_k * O over k) minus O, for an order ideal O."""
    terms = list(order_ideal)
    if not terms:
        return set()
    if not is_order_ideal(terms):
        raise ValueError("input is not an order ideal")
    n = terms[0].nvars if nvars is None else nvars
    term_set = set(terms)
    out: set[Monomial] = set()
    for o in terms:
        for k in range(n):
            b = o.times_var(k)
            if b not in term_set:
                out.add(b)
    return out


def iter_monomials(nvars: int, max_degree: int) -> Iterator[Monomial]:
    """All monomials in nvars variables of total degree <= max_degree."""

    def rec(prefix: list[int], remaining: int, budget: int) -> Iterator[Monomial]:
        if remaining == 1:
            for e in range(budget + 1):
                yield Monomial(tuple(prefix + [e]))
            return
        for e in range(budget + 1):
            yield from rec(prefix + [e], remaining - 1, budget - e)

    yield from rec([], nvars, max_degree)
