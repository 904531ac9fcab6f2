"""Point sets, sparse polynomials, evaluation, and data-dependent norms.

The gradient norm of a term (or polynomial) g on a point set X is
sqrt(sum_x ||grad g(x)||^2) / Z; by convention it is 0 for constants.
Z is either sqrt(sum_k deg_k(g)^2) (default) or 1, selected by
:class:`ZConvention`. The gradient-weighted norm of g = sum_i c_i t_i is
sqrt(sum_i c_i^2 w(t_i)^2) with w the term gradient norms.
"""

from __future__ import annotations

import csv
import hashlib
import math
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .monomials import Monomial, TermOrder, partial_derivative_term


class ZConvention(Enum):
    """Normalizer for the gradient norm."""

    DEGREE_WEIGHTED = "deg"
    UNIT = "one"


class CsvFormatError(ValueError):
    """Malformed point file; carries 1-based row/column of the offending cell."""

    def __init__(self, row: int, column: int, message: str):
        super().__init__(f"row {row}, column {column}: {message}")
        self.row = row
        self.column = column


class CoherenceError(RuntimeError):
    """A weight table was used with data that changed since it was built."""


class PointSet:
    """Immutable N x n array of real points, N >= 1, all entries finite."""

    __slots__ = ("_points",)

    def __init__(self, points):
        arr = np.array(points, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array of points, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"empty point set: shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point set contains non-finite entries")
        arr.setflags(write=False)
        self._points = arr

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def count(self) -> int:
        return self._points.shape[0]

    @property
    def nvars(self) -> int:
        return self._points.shape[1]

    def fingerprint(self) -> str:
        return hashlib.sha1(self._points.tobytes()).hexdigest()

    @classmethod
    def from_csv(cls, path, skip_header: bool = False) -> "PointSet":
        """One row per point, float columns, '.' decimal, comma separated."""
        rows: list[list[float]] = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            for i, row in enumerate(reader, start=1):
                if skip_header and i == 1:
                    continue
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                vals = []
                for j, cell in enumerate(row, start=1):
                    try:
                        vals.append(float(cell))
                    except ValueError:
                        raise CsvFormatError(i, j, f"not a number: {cell!r}") from None
                if rows and len(vals) != len(rows[0]):
                    raise CsvFormatError(i, len(vals), f"expected {len(rows[0])} columns, got {len(vals)}")
                rows.append(vals)
        if not rows:
            raise CsvFormatError(0, 0, "no data rows")
        return cls(rows)

    def __repr__(self) -> str:
        return f"PointSet(count={self.count}, nvars={self.nvars})"


class Polynomial:
    """Sparse real polynomial: Monomial -> nonzero coefficient.

    Exact zero coefficients are dropped at construction (canonical form).
    """

    __slots__ = ("_terms", "_nvars")

    def __init__(self, terms: Mapping, nvars: int | None = None):
        clean: dict[Monomial, float] = {}
        for m, c in terms.items():
            if not isinstance(m, Monomial):
                m = Monomial(tuple(m))
            c = float(c)
            if nvars is None:
                nvars = m.nvars
            elif m.nvars != nvars:
                raise ValueError("mixed variable counts in polynomial terms")
            if c != 0.0:
                clean[m] = c
        if nvars is None:
            raise ValueError("nvars required for the zero polynomial")
        self._terms = clean
        self._nvars = nvars

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Monomial, float]:
        return dict(self._terms)

    def coefficient(self, m: Monomial) -> float:
        return self._terms.get(m, 0.0)

    def support(self, order: TermOrder = TermOrder.DEGREVLEX) -> tuple[Monomial, ...]:
        return tuple(order.sort(self._terms))

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def degree_in(self, k: int) -> int:
        return max((m.degree_in(k) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, X: PointSet) -> np.ndarray:
        out = np.zeros(X.count)
        for m, c in self._terms.items():
            out += c * term_values(m, X)
        return out

    def __mul__(self, scalar: float) -> "Polynomial":
        s = float(scalar)
        return Polynomial({m: c * s for m, c in self._terms.items()}, self._nvars)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Polynomial":
        return self * (1.0 / float(scalar))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if other.nvars != self._nvars:
            raise ValueError("variable counts differ")
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0.0) + c
        return Polynomial(out, self._nvars)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (other * -1.0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms and self._nvars == other._nvars

    def __hash__(self):
        return hash((self._nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "Polynomial(0)"
        bits = [f"{c:+g}*{m}" for m, c in sorted(self._terms.items(), key=lambda mc: TermOrder.DEGREVLEX.key(mc[0]), reverse=True)]
        return "Polynomial(" + " ".join(bits) + ")"


def term_values(m: Monomial, X: PointSet) -> np.ndarray:
    """Evaluation vector of a single term at all points."""
    if m.nvars != X.nvars:
        raise ValueError("variable counts differ")
    out = np.ones(X.count)
    pts = X.points
    for k, e in enumerate(m.exponents):
        if e:
            out = out * pts[:, k] ** e
    return out


def eval_matrix(terms: Sequence[Monomial], X: PointSet) -> np.ndarray:
    """N x s matrix whose column j is the evaluation vector of terms[j]."""
    if not terms:
        return np.zeros((X.count, 0))
    return np.column_stack([term_values(m, X) for m in terms])


def grad_eval(g: Polynomial, X: PointSet) -> np.ndarray:
    """Stacked gradients (grad g(x_1), ..., grad g(x_N)) as one nN vector."""
    n = X.nvars
    out = np.zeros((X.count, n))
    for m, c in g.terms.items():
        for k in range(n):
            e, q = partial_derivative_term(m, k)
            if q is not None:
                out[:, k] += c * e * term_values(q, X)
    return out.reshape(-1)


def coefficient_norm(g: Polynomial) -> float:
    return math.sqrt(sum(c * c for c in g.terms.values()))


def _z_value(g: Polynomial, z: ZConvention) -> float:
    if z is ZConvention.UNIT:
        return 1.0
    return math.sqrt(sum(g.degree_in(k) ** 2 for k in range(g.nvars)))


def gradient_norm(g: Polynomial, X: PointSet, z: ZConvention = ZConvention.DEGREE_WEIGHTED) -> float:
    """sqrt(sum_x ||grad g(x)||^2) / Z; zero for constant polynomials."""
    if g.degree <= 0:
        return 0.0
    raw = float(np.linalg.norm(grad_eval(g, X)))
    return raw / _z_value(g, z)


def _term_gradient_norm(m: Monomial, X: PointSet, z: ZConvention) -> float:
    if m.degree == 0:
        return 0.0
    s = 0.0
    for k, e in enumerate(m.exponents):
        if e:
            _, q = partial_derivative_term(m, k)
            s += e * e * float(np.sum(term_values(q, X) ** 2))
    zval = math.sqrt(sum(e * e for e in m.exponents)) if z is ZConvention.DEGREE_WEIGHTED else 1.0
    return math.sqrt(s) / zval


class WeightTable:
    """Cache of term gradient norms (and evaluation vectors) on one point set.

    Weights satisfy weight(1) = 0 and weight(t) = gradient_norm(t, X) exactly;
    the table remembers a fingerprint of X and refuses to serve a caller whose
    data no longer matches it.
    """

    def __init__(self, X: PointSet, z: ZConvention = ZConvention.DEGREE_WEIGHTED):
        self._X = X
        self._z = z
        self._fingerprint = X.fingerprint()
        self._weights: dict[Monomial, float] = {}
        self._values: dict[Monomial, np.ndarray] = {}

    @property
    def point_set(self) -> PointSet:
        return self._X

    @property
    def z_convention(self) -> ZConvention:
        return self._z

    @property
    def fingerprint(self) -> str:
        return self._fingerprint

    def weight(self, m: Monomial) -> float:
        w = self._weights.get(m)
        if w is None:
            w = _term_gradient_norm(m, self._X, self._z)
            self._weights[m] = w
        return w

    def term_values(self, m: Monomial) -> np.ndarray:
        v = self._values.get(m)
        if v is None:
            v = term_values(m, self._X)
            v.setflags(write=False)
            self._values[m] = v
        return v

    def check_coherence(self, X: PointSet | None = None) -> None:
        probe = self._X if X is None else X
        if probe.fingerprint() != self._fingerprint:
            raise CoherenceError("weight table was built from different points")


def gradient_weighted_norm(g: Polynomial, table: WeightTable) -> float:
    """sqrt(sum_i c_i^2 * weight(t_i)^2); the constant term contributes 0."""
    table.check_coherence()
    return math.sqrt(sum(c * c * table.weight(m) ** 2 for m, c in g.terms.items()))
