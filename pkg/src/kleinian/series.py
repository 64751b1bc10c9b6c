"""Truncated Laurent series (one and two variables) with polynomial coefficients.

A :class:`LaurentSeries` stores finitely many coefficients of xi^k (k may be
negative) together with an exclusive truncation order: coefficients at
exponents >= order are unknown.  Truncation bookkeeping is pessimistic; an
operation that cannot guarantee a requested order raises
:class:`~kleinian.errors.TruncationError` rather than silently degrading.

:class:`BiSeries` is the two-variable analogue used when expanding the
fundamental bi-differential around the base point in both arguments.
"""

from __future__ import annotations

from .errors import ResidueError, SeriesError, TruncationError
from .poly import MultiPoly
from .rationals import Q, QType, qify

_INF = 10 ** 9


def _as_poly(c) -> MultiPoly:
    if isinstance(c, MultiPoly):
        return c
    return MultiPoly.const(c)


class LaurentSeries:
    """Sparse truncated Laurent series with MultiPoly coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict[int, MultiPoly] | None = None, order: int = _INF):
        cc = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _as_poly(c)
                if not c.is_zero() and k < order:
                    cc[k] = c
        self.coeffs = cc
        self.order = order

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, order: int = _INF) -> "LaurentSeries":
        return cls({}, order)

    @classmethod
    def const(cls, c, order: int = _INF) -> "LaurentSeries":
        return cls({0: _as_poly(c)}, order)

    @classmethod
    def xi_power(cls, k: int, coeff=1, order: int = _INF) -> "LaurentSeries":
        return cls({k: _as_poly(coeff)}, order)

    # -- basics ---------------------------------------------------------------

    def valuation(self) -> int:
        """Smallest known exponent with nonzero coefficient (order if none)."""
        return min(self.coeffs) if self.coeffs else self.order

    def coeff(self, k: int) -> MultiPoly:
        if k >= self.order:
            raise TruncationError("coefficient of xi^%d beyond truncation order %d" % (k, self.order))
        return self.coeffs.get(k, MultiPoly.zero())

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise TruncationError("cannot extend truncation order %d to %d" % (self.order, order))
        return LaurentSeries({k: c for k, c in self.coeffs.items() if k < order}, order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "O(xi^%d)" % self.order
        parts = ["(%s)*xi^%d" % (c.text(), k) for k, c in sorted(self.coeffs.items())]
        return " + ".join(parts) + " + O(xi^%d)" % self.order

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k)
            out[k] = c if v is None else v + c
        return LaurentSeries(out, order)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other) -> "LaurentSeries":
        if isinstance(other, (int, QType, MultiPoly)):
            c = _as_poly(other)
            if c.is_zero():
                return LaurentSeries({}, self.order)
            return LaurentSeries({k: v * c for k, v in self.coeffs.items()}, self.order)
        if self.is_zero() or other.is_zero():
            return LaurentSeries({}, min(self.order + other.valuation(),
                                         other.order + self.valuation()))
        order = min(self.order + other.valuation(), other.order + self.valuation())
        out: dict[int, MultiPoly] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if k >= order:
                    continue
                v = out.get(k)
                p = c1 * c2
                out[k] = p if v is None else v + p
        return LaurentSeries(out, order)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by xi^k."""
        return LaurentSeries({e + k: c for e, c in self.coeffs.items()}, self.order + k)

    def inverse(self, order: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse; the leading coefficient must be rational.

        The result is exact to order ``self.order - 2*valuation`` at most.
        """
        if self.is_zero():
            raise SeriesError("cannot invert the zero series")
        v = self.valuation()
        lead = self.coeffs[v]
        if not lead.is_rational() or lead.is_zero():
            raise SeriesError("leading coefficient %s is not an invertible rational" % lead)
        max_order = self.order - 2 * v
        if order is None:
            order = max_order
        elif order > max_order:
            raise TruncationError("inverse known only to order %d, requested %d" % (max_order, order))
        c0 = lead.rational_value()
        inv_c0 = Q(1) / c0
        # unit part u = 1 + m with val(m) >= 1; invert by coefficient recursion
        n_target = order + v  # unit-part inverse needed mod xi^n_target
        m = {k - v: c * inv_c0 for k, c in self.coeffs.items() if k != v and k - v < n_target}
        w: dict[int, MultiPoly] = {0: MultiPoly.one()}
        for k in range(1, n_target):
            acc = MultiPoly.zero()
            for j, mj in m.items():
                if 0 < j <= k and (k - j) in w:
                    acc = acc + mj * w[k - j]
            if not acc.is_zero():
                w[k] = -acc
        inv_unit = LaurentSeries(w, n_target)
        return inv_unit.shift(-v) * inv_c0

    def __pow__(self, n: int) -> "LaurentSeries":
        if n == 0:
            return LaurentSeries.const(1)
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        e = n
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divide(self, other: "LaurentSeries") -> "LaurentSeries":
        return self * other.inverse()

    # -- calculus -------------------------------------------------------------

    def differentiate(self) -> "LaurentSeries":
        """d/dxi, acting on the series as a function of xi."""
        out = {}
        for k, c in self.coeffs.items():
            if k != 0:
                out[k - 1] = c * k
        return LaurentSeries(out, self.order - 1)

    def integrate(self) -> "LaurentSeries":
        """Integrate ``self * dxi`` term-by-term with zero constant.

        Raises :class:`ResidueError` if the xi^-1 coefficient is nonzero,
        i.e. the integrand is not the expansion of a meromorphic function.
        """
        if -1 in self.coeffs and not self.coeffs[-1].is_zero():
            raise ResidueError("nonzero residue %s; integrand is not holomorphic" % self.coeffs[-1])
        out = {k + 1: c * Q(1, k + 1) for k, c in self.coeffs.items() if k != -1}
        return LaurentSeries(out, self.order + 1)

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """Substitute ``inner`` for xi.  See :func:`series_compose`."""
        v_in = inner.valuation()
        if v_in < 1:
            if any(k < 0 for k in self.coeffs):
                raise SeriesError("composition with a pole needs inner valuation >= 1")
            raise SeriesError("inner series must have strictly positive valuation")
        # dropping the outer tail a_N xi^N + ... loses O(inner^N) = O(xi^(N*v_in))
        tail_order = self.order * v_in
        result = LaurentSeries.zero(tail_order)
        inv = inner.inverse() if any(k < 0 for k in self.coeffs) else None
        pow_cache: dict[int, LaurentSeries] = {0: LaurentSeries.const(1)}

        def power(k: int) -> LaurentSeries:
            if k in pow_cache:
                return pow_cache[k]
            p = power(k - 1) * inner if k > 0 else power(k + 1) * inv
            pow_cache[k] = p
            return p

        for k in sorted(self.coeffs):
            result = result + power(k) * self.coeffs[k]
        return result

    def map_coeffs(self, fn) -> "LaurentSeries":
        return LaurentSeries({k: fn(c) for k, c in self.coeffs.items()}, self.order)


def series_compose(outer: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    """Composition outer(inner(xi)) with pessimistic truncation tracking."""
    return outer.compose(inner)


def series_integrate(s: LaurentSeries) -> LaurentSeries:
    """Termwise integral of ``s dxi`` with zero integration constant."""
    return s.integrate()


# ---------------------------------------------------------------------------
# two-variable series


class BiSeries:
    """Truncated power/Laurent series in two local parameters.

    Coefficients are known for exponent pairs (i, j) with i < order_x and
    j < order_y.  Used for the expansion of symmetric bi-differentials;
    symmetry means coeff(i, j) == coeff(j, i).
    """

    __slots__ = ("coeffs", "order_x", "order_y")

    def __init__(self, coeffs: dict[tuple[int, int], MultiPoly] | None = None,
                 order_x: int = _INF, order_y: int = _INF):
        cc = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                c = _as_poly(c)
                if not c.is_zero() and i < order_x and j < order_y:
                    cc[(i, j)] = c
        self.coeffs = cc
        self.order_x = order_x
        self.order_y = order_y

    @classmethod
    def outer(cls, u: LaurentSeries, v: LaurentSeries) -> "BiSeries":
        out = {}
        for i, a in u.coeffs.items():
            for j, b in v.coeffs.items():
                out[(i, j)] = a * b
        return cls(out, u.order, v.order)

    @classmethod
    def const(cls, c, order_x: int = _INF, order_y: int = _INF) -> "BiSeries":
        return cls({(0, 0): _as_poly(c)}, order_x, order_y)

    def coeff(self, i: int, j: int) -> MultiPoly:
        if i >= self.order_x or j >= self.order_y:
            raise TruncationError("coefficient (%d,%d) beyond truncation" % (i, j))
        return self.coeffs.get((i, j), MultiPoly.zero())

    def __add__(self, other: "BiSeries") -> "BiSeries":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out.get(k)
            out[k] = c if v is None else v + c
        return BiSeries(out, min(self.order_x, other.order_x), min(self.order_y, other.order_y))

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + BiSeries({k: -c for k, c in other.coeffs.items()}, other.order_x, other.order_y)

    def min_exponents(self) -> tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (min(i for i, _ in self.coeffs), min(j for _, j in self.coeffs))

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, (int, QType, MultiPoly)):
            c = _as_poly(other)
            return BiSeries({k: v * c for k, v in self.coeffs.items()}, self.order_x, self.order_y)
        vx, vy = other.min_exponents()
        sx, sy = self.min_exponents()
        ox = min(self.order_x + vx, other.order_x + sx)
        oy = min(self.order_y + vy, other.order_y + sy)
        out: dict[tuple[int, int], MultiPoly] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                if key[0] >= ox or key[1] >= oy:
                    continue
                v = out.get(key)
                p = c1 * c2
                out[key] = p if v is None else v + p
        return BiSeries(out, ox, oy)

    __rmul__ = __mul__

    def total_degree_valid(self) -> int:
        """Largest D such that every homogeneous part of degree < D is complete."""
        return min(self.order_x, self.order_y)

    def homogeneous_part(self, d: int) -> list[MultiPoly]:
        """Coefficients [c_0 .. c_d] of xi^(d-i) eta^i in the degree-d part."""
        if d >= self.total_degree_valid():
            raise TruncationError("degree-%d part is not complete" % d)
        return [self.coeffs.get((d - i, i), MultiPoly.zero()) for i in range(d + 1)]

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get((j, i), MultiPoly.zero()) == c
                   for (i, j), c in self.coeffs.items())


def divide_homogeneous(numer: list[MultiPoly], divisor: list) -> list[MultiPoly]:
    """Exact division of binary homogeneous forms.

    Forms are coefficient lists [c_0..c_d] for sum c_i xi^(d-i) eta^i; the
    divisor must be monic in xi (c_0 == 1) with rational coefficients, and
    must divide exactly (a nonzero remainder raises SeriesError).
    """
    d = len(numer) - 1
    e = len(divisor) - 1
    if d < e:
        if any(not c.is_zero() if isinstance(c, MultiPoly) else c for c in numer):
            raise SeriesError("homogeneous division with nonzero remainder")
        return [MultiPoly.zero()]
    div = [qify(c) for c in divisor]
    if div[0] != 1:
        raise SeriesError("divisor must be monic in xi")
    work = list(numer)
    quot = [MultiPoly.zero()] * (d - e + 1)
    for i in range(d - e + 1):
        q = work[i]
        quot[i] = q
        if q.is_zero():
            continue
        for j in range(1, e + 1):
            work[i + j] = work[i + j] - q * div[j]
    for rem in work[d - e + 1:]:
        if not rem.is_zero():
            raise SeriesError("homogeneous division left remainder %s" % rem)
    return quot
