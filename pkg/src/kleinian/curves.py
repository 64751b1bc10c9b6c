"""Curve families and their local data at the branch point at infinity.

Two plane curves with a single point at infinity are supported:

* ``hyperelliptic_g2``: y^2 = 4x^5 + a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0,
  genus 2, Weierstrass gaps (1, 3), wt(a_k) = 10 - 2k;
* ``cyclic_trigonal_34``: y^3 = x^4 + m3 x^3 + m6 x^2 + m9 x + m12,
  genus 3, gaps (1, 2, 5), wt(m_{3j}) = 3j.

The local parameter is fixed by x = xi^(-n) exactly.  The branch of y and
the overall sign of the differentials are normalized so that every
holomorphic differential expands as du_i = xi^(w_i - 1)(1 + O(xi)) dxi
with leading coefficient exactly +1; this single global convention keeps
all downstream signs coherent and is pinned by the weight-4 calibration
relation of the derivation engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigError, ConventionError, SeriesError, TruncationError
from .poly import MultiPoly, Symbol, param
from .rationals import Q, QType, q_str, qify
from .series import BiSeries, LaurentSeries, divide_homogeneous

HYPERELLIPTIC_G2 = "hyperelliptic_g2"
CYCLIC_TRIGONAL_34 = "cyclic_trigonal_34"

_FAMILY_ALIASES = {
    "hyperelliptic_g2": HYPERELLIPTIC_G2,
    "hyperelliptic": HYPERELLIPTIC_G2,
    "cyclic_trigonal_34": CYCLIC_TRIGONAL_34,
    "trigonal_34": CYCLIC_TRIGONAL_34,
}

# auxiliary coordinates of the two points of the Kleinian polar F((x,y),(z,w))
def polar_vars(n: int, s: int) -> tuple[Symbol, Symbol, Symbol, Symbol]:
    return (Symbol("x", n, "aux"), Symbol("y", s, "aux"),
            Symbol("z", n, "aux"), Symbol("w", s, "aux"))


@dataclass(frozen=True)
class CurveSpec:
    """A validated (n,s)-curve with optional rational parameter values."""

    family: str
    n: int
    s: int
    genus: int
    gap_weights: tuple[int, ...]
    parameters: tuple[Symbol, ...]
    values: tuple[tuple[str, QType], ...] = ()

    @property
    def parameter_values(self) -> dict[str, QType]:
        return dict(self.values)

    def parameter_poly(self, sym: Symbol) -> MultiPoly:
        got = self.parameter_values.get(sym.name)
        return MultiPoly.const(got) if got is not None else MultiPoly.sym(sym)

    def fingerprint(self) -> str:
        vals = ",".join("%s=%s" % (k, q_str(v)) for k, v in self.values)
        return "%s[%s]" % (self.family, vals)

    # -- defining polynomial -------------------------------------------------

    def rhs_coeffs(self) -> dict[int, MultiPoly]:
        """Coefficients of phi(x), where the curve is y^n = phi(x)."""
        ps = {p.name: self.parameter_poly(p) for p in self.parameters}
        if self.family == HYPERELLIPTIC_G2:
            return {5: MultiPoly.const(4), 4: ps["a4"], 3: ps["a3"],
                    2: ps["a2"], 1: ps["a1"], 0: ps["a0"]}
        return {4: MultiPoly.one(), 3: ps["m3"], 2: ps["m6"],
                1: ps["m9"], 0: ps["m12"]}


def _make_curve(family: str, values: tuple[tuple[str, QType], ...]) -> CurveSpec:
    if family == HYPERELLIPTIC_G2:
        params = tuple(param("a%d" % k, 10 - 2 * k) for k in (4, 3, 2, 1, 0))
        return CurveSpec(family, 2, 5, 2, (1, 3), params, values)
    if family == CYCLIC_TRIGONAL_34:
        params = tuple(param("m%d" % (3 * j), 3 * j) for j in (1, 2, 3, 4))
        return CurveSpec(family, 3, 4, 3, (1, 2, 5), params, values)
    raise ConfigError("unknown curve family %r" % family)


def curve_by_family(family: str, values: dict[str, object] | None = None) -> CurveSpec:
    canonical = _FAMILY_ALIASES.get(family.strip().lower())
    if canonical is None:
        raise ConfigError("unknown curve family %r" % family)
    base = _make_curve(canonical, ())
    if not values:
        return base
    names = {p.name for p in base.parameters}
    fixed = []
    for key in sorted(values):
        if key not in names:
            raise ConfigError("parameter %r does not belong to family %s" % (key, canonical))
        fixed.append((key, qify(values[key])))
    return _make_curve(canonical, tuple(fixed))


_PARAM_ALIASES = {"alpha": "a", "mu": "m", "a": "a", "m": "m", "lambda": "m"}


def parse_spec(text: str) -> CurveSpec:
    """Parse a line-based ``key = value`` curve-spec document.

    ``family`` is required; remaining keys assign rational values (``3/2``)
    to curve parameters, e.g. ``alpha4 = 3/2`` or ``mu3 = -1``.  Unset
    parameters stay symbolic.
    """
    family = None
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected 'key = value', got %r" % (lineno, raw))
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key == "family":
            family = value
            continue
        head = key.rstrip("0123456789")
        tail = key[len(head):]
        if head not in _PARAM_ALIASES or not tail:
            raise ConfigError("line %d: unknown key %r" % (lineno, key))
        try:
            values[_PARAM_ALIASES[head] + tail] = qify(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError("line %d: malformed rational %r (%s)" % (lineno, value, exc))
    if family is None:
        raise ConfigError("curve spec does not declare a family")
    return curve_by_family(family, values)


# ---------------------------------------------------------------------------
# local expansion at infinity


@dataclass(frozen=True)
class LocalExpansion:
    """Exact Puiseux data x(xi), y(xi) with f(x(xi), y(xi)) = 0 mod xi^order."""

    curve: CurveSpec
    x: LaurentSeries
    y: LaurentSeries
    order: int


def _curve_value(curve: CurveSpec, x: LaurentSeries, y: LaurentSeries) -> LaurentSeries:
    """f(x, y) = y^n - phi(x) evaluated on series."""
    acc = y ** curve.n
    xpow: dict[int, LaurentSeries] = {0: LaurentSeries.const(1)}
    for deg in range(1, max(curve.rhs_coeffs()) + 1):
        xpow[deg] = xpow[deg - 1] * x
    for deg, c in curve.rhs_coeffs().items():
        acc = acc - xpow[deg] * c
    return acc


def newton_puiseux_at_infinity(curve: CurveSpec, order: int) -> LocalExpansion:
    """Solve y from f(x, y) = 0 with x = xi^(-n), exactly to the given order.

    The y-branch is the rational one; for the hyperelliptic curve the sign
    is chosen so the normalized differentials have +1 leading coefficients.
    """
    if order < curve.n + curve.s:
        raise TruncationError("order must be at least n+s = %d" % (curve.n + curve.s))
    n, s = curve.n, curve.s
    work = order + (n - 1) * s + 2
    x = LaurentSeries.xi_power(-n)
    lead = Q(-2) if curve.family == HYPERELLIPTIC_G2 else Q(1)
    y = LaurentSeries.xi_power(-s, lead, order=work)
    prev_val = None
    for _ in range(64):
        defect = _curve_value(curve, x, y)
        val = defect.valuation()
        if defect.is_zero() or val >= order:
            break
        if prev_val is not None and val <= prev_val:
            raise SeriesError("Newton iteration stalled at valuation %d" % val)
        prev_val = val
        fy = y ** (n - 1) * n
        y = (y - defect * fy.inverse()).truncate(work)
    defect = _curve_value(curve, x, y)
    for k in sorted(defect.coeffs):
        if k < order and not defect.coeffs[k].is_zero():
            raise ConventionError("curve-equation defect at xi^%d: %s" % (k, defect.coeffs[k]))
    if min(defect.order, work) < order:
        raise TruncationError("defect only verified to order %d" % defect.order)
    return LocalExpansion(curve, x, y, order)


@lru_cache(maxsize=32)
def _expansion_cached(curve: CurveSpec, order: int) -> LocalExpansion:
    return newton_puiseux_at_infinity(curve, order)


def local_expansion(curve: CurveSpec, order: int) -> LocalExpansion:
    return _expansion_cached(curve, order)


# ---------------------------------------------------------------------------
# holomorphic differentials and winding vectors


def differentials(curve: CurveSpec, loc: LocalExpansion) -> list[LaurentSeries]:
    """Densities du_i/dxi at infinity, normalized to leading coefficient +1."""
    x, y = loc.x, loc.y
    dx = x.differentiate()
    if curve.family == HYPERELLIPTIC_G2:
        inv_y = y.inverse()
        dus = [x * dx * inv_y, dx * inv_y]
    else:
        inv_3y = (y * 3).inverse()
        inv_3y2 = (y * y * 3).inverse()
        # global sign flipped so the leading coefficients come out +1
        dus = [-(dx * inv_3y), -(x * dx * inv_3y2), -(dx * inv_3y2)]
    for i, du in enumerate(dus):
        w = curve.gap_weights[i]
        if du.valuation() != w - 1 or du.coeff(w - 1) != MultiPoly.one():
            raise ConventionError("du_%d leading term %r violates normalization" % (i + 1, du))
    return dus


@dataclass(frozen=True)
class WindingData:
    """Vectors R_k of expansion coefficients of the normalized differentials.

    (R_k)_i is the xi^(k-1) coefficient of du_i/dxi, so R_{w_i} = e_i and
    (R_k)_i = 0 for k < w_i; entry weights are k - w_i.
    """

    curve: CurveSpec
    vectors: tuple[tuple[MultiPoly, ...], ...]  # index k-1, then i-1

    @property
    def count(self) -> int:
        return len(self.vectors)

    def entry(self, k: int, i: int) -> MultiPoly:
        if not 1 <= k <= len(self.vectors):
            raise TruncationError("winding vector R_%d not computed" % k)
        return self.vectors[k - 1][i - 1]

    def vector(self, k: int) -> tuple[MultiPoly, ...]:
        if not 1 <= k <= len(self.vectors):
            raise TruncationError("winding vector R_%d not computed" % k)
        return self.vectors[k - 1]


def winding_vectors(curve: CurveSpec, count: int, loc: LocalExpansion | None = None) -> WindingData:
    if loc is None:
        loc = local_expansion(curve, count + curve.n + curve.s + 2)
    dus = differentials(curve, loc)
    if any(du.order < count for du in dus):
        raise TruncationError("differentials known to order %d; need %d"
                              % (min(du.order for du in dus), count))
    vectors = []
    for k in range(1, count + 1):
        row = []
        for i, du in enumerate(dus, start=1):
            c = du.coeff(k - 1)
            w = curve.gap_weights[i - 1]
            if k < w and not c.is_zero():
                raise ConventionError("gap structure violated at (R_%d)_%d" % (k, i))
            if not curve.values and not c.is_zero() and not c.is_homogeneous(k - w):
                raise ConventionError("(R_%d)_%d is not weight-homogeneous" % (k, i))
            row.append(c)
        vectors.append(tuple(row))
    return WindingData(curve, tuple(vectors))


# ---------------------------------------------------------------------------
# Kleinian polar and the algebraic bi-differential table


def _polar_T(xv: MultiPoly, zv: MultiPoly, curve: CurveSpec) -> MultiPoly:
    """Degenerate-polar polynomial T(x,z) of the trigonal curve."""
    ps = {p.name: curve.parameter_poly(p) for p in curve.parameters}
    m3, m6, m9, m12 = ps["m3"], ps["m6"], ps["m9"], ps["m12"]
    return (m12 * 3 + (zv + xv * 2) * m9 + xv * (xv + zv * 2) * m6
            + xv * xv * zv * m3 * 3 + xv * xv * zv * zv + xv ** 3 * zv * 2)


def kleinian_polar(curve: CurveSpec) -> MultiPoly:
    """The symmetric polynomial F((x,y),(z,w)) of the bi-differential.

    omega_alg(Q,S) = F dx dz / (f_y(Q) f_w(S) (x-z)^2); on the diagonal
    F((x,y),(x,y)) = f_y(x,y)^2, which normalizes the double pole to 1.
    """
    xs, ys, zs, ws = polar_vars(curve.n, curve.s)
    xv, yv = MultiPoly.sym(xs), MultiPoly.sym(ys)
    zv, wv = MultiPoly.sym(zs), MultiPoly.sym(ws)
    if curve.family == HYPERELLIPTIC_G2:
        ps = {p.name: curve.parameter_poly(p) for p in curve.parameters}
        xz = xv * zv
        F = (xz * xz * (xv + zv) * 4 + xz * xz * ps["a4"] * 2
             + xz * (xv + zv) * ps["a3"] + xz * ps["a2"] * 2
             + (xv + zv) * ps["a1"] + ps["a0"] * 2)
        return F + yv * wv * 2
    return (yv * yv * wv * wv * 3
            + wv * _polar_T(xv, zv, curve) + yv * _polar_T(zv, xv, curve))


class OmegaAlgTable:
    """Expansion coefficients of the holomorphic part of omega_alg.

    entry(k, l) is the coefficient of xi^k eta^l dxi deta after removing
    the double pole dxi deta/(xi-eta)^2; the table is symmetric, entry
    (k, l) is weight-homogeneous of weight k+l+2, and the family vanishing
    pattern (odd index for hyperelliptic, k+l != 1 mod 3 for trigonal)
    holds for every entry.
    """

    def __init__(self, curve: CurveSpec, size: int, entries: dict[tuple[int, int], MultiPoly]):
        self.curve = curve
        self.size = size
        self.entries = entries
        self._validate()

    def entry(self, k: int, l: int) -> MultiPoly:
        if k >= self.size or l >= self.size or k < 0 or l < 0:
            raise TruncationError("omega_alg entry (%d,%d) outside table of size %d"
                                  % (k, l, self.size))
        return self.entries.get((k, l), MultiPoly.zero())

    def _validate(self):
        fam = self.curve.family
        for (k, l), c in self.entries.items():
            if c.is_zero():
                continue
            if self.entries.get((l, k), MultiPoly.zero()) != c:
                raise ConventionError("omega_alg table asymmetric at (%d,%d)" % (k, l))
            if not self.curve.values and not c.is_homogeneous(k + l + 2):
                raise ConventionError("omega_alg(%d,%d) not homogeneous of weight %d: %s"
                                      % (k, l, k + l + 2, c))
            if fam == HYPERELLIPTIC_G2 and (k % 2 or l % 2):
                raise ConventionError("hyperelliptic omega_alg(%d,%d) should vanish" % (k, l))
            if fam == CYCLIC_TRIGONAL_34 and (k + l) % 3 != 1:
                raise ConventionError("trigonal omega_alg(%d,%d) should vanish" % (k, l))


def required_expansion_order(curve: CurveSpec, table_size: int) -> int:
    # largest total degree read from the numerator series, plus safety margin
    return 2 * (table_size - 1) + 2 * curve.n + 4


def omega_alg(curve: CurveSpec, size: int, loc: LocalExpansion | None = None) -> OmegaAlgTable:
    """Expand the algebraic bi-differential; see :class:`OmegaAlgTable`.

    The double pole is removed exactly: (x - z)^2 factors as
    (xi - eta)^2 P(xi, eta)^2 / (xi eta)^(2n) with P homogeneous, the series
    numerator is divided symbolically by P^2 and then, after subtracting 1,
    by (xi - eta)^2; both divisions are exact in the series ring.
    """
    if loc is None:
        loc = local_expansion(curve, required_expansion_order(curve, size))
    n = curve.n
    x, y = loc.x, loc.y
    dx = x.differentiate()
    fy = y ** (n - 1) * n
    base = dx * LaurentSeries.xi_power(2 * n) * fy.inverse()

    xs, ys, zs, ws = polar_vars(curve.n, curve.s)
    xpow = {0: LaurentSeries.const(1)}
    ypow = {0: LaurentSeries.const(1)}
    polar = kleinian_polar(curve)
    shift_deg = 2 * curve.n - 2
    deg_cap = 2 * (size - 1) + 2 + shift_deg  # largest total degree ever read

    def upow(table, series, e):
        while len(table) <= e:
            table[len(table)] = table[len(table) - 1] * series
        return table[e]

    def capped(series: LaurentSeries) -> LaurentSeries:
        if series.order <= deg_cap + 1:
            return series
        return series.truncate(deg_cap + 1)

    coeffs: dict[tuple[int, int], MultiPoly] = {}
    orders = []
    for mono, coeff in polar.terms.items():
        exps = {s.name: e for s, e in mono}
        pcoeff = MultiPoly.monomial(tuple((s, e) for s, e in mono if s.kind == "param"), coeff)
        u = capped(upow(xpow, x, exps.get("x", 0)) * upow(ypow, y, exps.get("y", 0)) * base * pcoeff)
        v = capped(upow(xpow, x, exps.get("z", 0)) * upow(ypow, y, exps.get("w", 0)) * base)
        orders += [u.order, v.order]
        for i, a in u.coeffs.items():
            for j, b in v.coeffs.items():
                if i + j > deg_cap:
                    continue
                key = (i, j)
                prod = a * b
                got = coeffs.get(key)
                coeffs[key] = prod if got is None else got + prod
    M = BiSeries(coeffs, min(orders), min(orders))

    mi, mj = M.min_exponents()
    if mi < 0 or mj < 0:
        raise ConventionError("bi-differential numerator has negative exponents")

    # P(xi,eta) = xi^(n-1) + xi^(n-2) eta + ... + eta^(n-1); divisor P^2
    p_form = [Q(1)] * n
    p2 = [Q(0)] * (2 * n - 1)
    for i in range(n):
        for j in range(n):
            p2[i + j] += p_form[i] * p_form[j]
    shift = 2 * n - 2  # degree of P^2

    max_deg = 2 * (size - 1)
    if max_deg + 2 + shift >= M.total_degree_valid():
        raise TruncationError("expansion order insufficient for a %dx%d table" % (size, size))

    # Q := M / P^2 starts 1 + 0 + Q_2 + ...; the 1 is exactly the singular
    # kernel d xi d eta/(xi-eta)^2 and the degree-1 part must vanish.
    if divide_homogeneous(M.homogeneous_part(shift), p2) != [MultiPoly.one()]:
        raise ConventionError("double-pole normalization failed at degree 0")
    for c in divide_homogeneous(M.homogeneous_part(shift + 1), p2):
        if not c.is_zero():
            raise ConventionError("double-pole subtraction left a degree-1 part")

    entries: dict[tuple[int, int], MultiPoly] = {}
    for d in range(0, max_deg + 1):
        q_part = divide_homogeneous(M.homogeneous_part(d + 2 + shift), p2)
        w_part = divide_homogeneous(q_part, [Q(1), Q(-2), Q(1)])
        for i, c in enumerate(w_part):
            k, l = d - i, i
            if not c.is_zero() and k < size and l < size:
                entries[(k, l)] = c
    return OmegaAlgTable(curve, size, entries)
