"""Sparse multivariate polynomials over the rationals in weight-graded symbols.

A :class:`Symbol` is a named generator carrying a fixed Sato weight.  A
monomial is a tuple of ``(symbol, exponent)`` pairs sorted by symbol name;
a :class:`MultiPoly` maps monomials to nonzero rational coefficients.  The
zero polynomial is the empty map.  All values are immutable in practice:
no method mutates its operands, so polynomials can be shared freely.

The canonical term order used everywhere (export, pivot selection) is
(total Sato weight, monomial) with monomials compared lexicographically
by (symbol name, exponent).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .rationals import Q, QType, q_str, qify

# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True)
class Symbol:
    """A named generator with a fixed Sato weight.

    kind distinguishes curve parameters ("param"), Kleinian symbols
    ("wp", "zeta"), formal times ("time") and scaled derivations ("dop"),
    and auxiliary point coordinates ("aux").  indices carries the
    multi-index of wp/zeta symbols and the k of t_k.
    """

    name: str
    weight: int
    kind: str = "param"
    indices: tuple[int, ...] = ()

    def __lt__(self, other: "Symbol"):
        return self.name < other.name

    def __repr__(self):
        return self.name


def param(name: str, weight: int) -> Symbol:
    return Symbol(name, weight, "param")


def wp_symbol(indices: Iterable[int], gap_weights: tuple[int, ...]) -> Symbol:
    """The Kleinian symbol p_J for the sorted multi-index J (|J| >= 2)."""
    idx = tuple(sorted(indices))
    if len(idx) < 2:
        raise ValueError("wp symbols need at least two indices")
    weight = sum(gap_weights[i - 1] for i in idx)
    return Symbol("p" + "".join(map(str, idx)), weight, "wp", idx)


def zeta_symbol(i: int, gap_weights: tuple[int, ...]) -> Symbol:
    return Symbol("z%d" % i, gap_weights[i - 1], "zeta", (i,))


def time_symbol(k: int) -> Symbol:
    """The KP time t_k, of weight -k."""
    return Symbol("t%d" % k, -k, "time", (k,))


def dop_symbol(k: int) -> Symbol:
    """The scaled derivation (1/k) d/dt_k, of weight +k."""
    return Symbol("D%d" % k, k, "dop", (k,))


# A monomial: tuple of (Symbol, positive exponent), sorted by symbol name.
Monomial = tuple[tuple[Symbol, int], ...]

EMPTY_MONOMIAL: Monomial = ()


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for s, e in b:
        out[s] = out.get(s, 0) + e
    return tuple(sorted(out.items()))


def monomial_weight(m: Monomial) -> int:
    return sum(s.weight * e for s, e in m)


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """Whether monomial a divides monomial b."""
    if not a:
        return True
    left = dict(b)
    return all(left.get(s, 0) >= e for s, e in a)


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    out = dict(b)
    for s, e in a:
        r = out[s] - e
        if r < 0:
            raise ValueError("monomial does not divide")
        if r:
            out[s] = r
        else:
            del out[s]
    return tuple(sorted(out.items()))


def monomial_key(m: Monomial):
    """Canonical term-order key: (total weight, lexicographic monomial)."""
    return (monomial_weight(m), tuple((s.name, e) for s, e in m))


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(s.name if e == 1 else "%s^%d" % (s.name, e) for s, e in m)


# ---------------------------------------------------------------------------
# polynomials


class MultiPoly:
    """Exact sparse polynomial: map from monomial to nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, QType] | None = None):
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls({})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = qify(c)
        return cls({EMPTY_MONOMIAL: c} if c else {})

    @classmethod
    def sym(cls, s: Symbol, exp: int = 1, coeff=1) -> "MultiPoly":
        coeff = qify(coeff)
        if not coeff:
            return cls.zero()
        return cls({((s, exp),): coeff})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "MultiPoly":
        coeff = qify(coeff)
        return cls({m: coeff} if coeff else {})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.const(1)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, QType)):
            c = qify(other)
            if not c:
                return MultiPoly.zero()
            return MultiPoly({m: v * c for m, v in self.terms.items()})
        other = _coerce(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero()
        # iterate over the smaller operand's terms
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Monomial, QType] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = monomial_mul(m1, m2)
                v = out.get(m)
                if v is None:
                    out[m] = c1 * c2
                else:
                    v = v + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, QType)):
            other = MultiPoly.const(other)
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        """True when the polynomial is a rational constant (possibly 0)."""
        return not self.terms or (len(self.terms) == 1 and EMPTY_MONOMIAL in self.terms)

    def rational_value(self) -> QType:
        if not self.terms:
            return Q(0)
        if not self.is_rational():
            raise ValueError("not a rational constant: %s" % self)
        return self.terms[EMPTY_MONOMIAL]

    def coeff(self, m: Monomial) -> QType:
        return self.terms.get(m, Q(0))

    def sorted_terms(self, reverse: bool = True) -> list[tuple[Monomial, QType]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=reverse)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key)

    def symbols(self) -> set[Symbol]:
        out: set[Symbol] = set()
        for m in self.terms:
            out.update(s for s, _ in m)
        return out

    def has_kind(self, kind: str) -> bool:
        return any(s.kind == kind for s, _ in _iter_factors(self.terms))

    def max_degree(self, sym: Symbol) -> int:
        deg = 0
        for m in self.terms:
            for s, e in m:
                if s == sym:
                    deg = max(deg, e)
        return deg

    # -- weight grading ----------------------------------------------------

    def weight_components(self) -> dict[int, "MultiPoly"]:
        out: dict[int, dict[Monomial, QType]] = {}
        for m, c in self.terms.items():
            out.setdefault(monomial_weight(m), {})[m] = c
        return {w: MultiPoly(t) for w, t in sorted(out.items())}

    def is_homogeneous(self, weight: int | None = None) -> bool:
        weights = {monomial_weight(m) for m in self.terms}
        if not weights:
            return True
        if len(weights) > 1:
            return False
        return weight is None or weights == {weight}

    def weight(self) -> int:
        """Weight of a nonzero homogeneous polynomial."""
        weights = {monomial_weight(m) for m in self.terms}
        if len(weights) != 1:
            raise ValueError("polynomial is zero or not weight-homogeneous")
        return weights.pop()

    # -- substitution and derivation ---------------------------------------

    def substitute(self, table: dict[Symbol, "MultiPoly"]) -> "MultiPoly":
        """Replace symbols by polynomials (used for parameter specialization)."""
        out = MultiPoly.zero()
        pow_cache: dict[tuple[Symbol, int], MultiPoly] = {}
        for m, c in self.terms.items():
            term = MultiPoly.const(c)
            plain: list[tuple[Symbol, int]] = []
            for s, e in m:
                if s in table:
                    key = (s, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = table[s] ** e
                        pow_cache[key] = p
                    term = term * p
                else:
                    plain.append((s, e))
            if plain:
                term = term * MultiPoly.monomial(tuple(sorted(plain)))
            out = out + term
        return out

    def derive(self, dmap: Callable[[Symbol], "MultiPoly | None"]) -> "MultiPoly":
        """Formal derivation: dmap gives the image of each symbol (None = 0)."""
        out = MultiPoly.zero()
        for m, c in self.terms.items():
            for i, (s, e) in enumerate(m):
                ds = dmap(s)
                if ds is None or ds.is_zero():
                    continue
                rest = m[:i] + ((s, e - 1),) + m[i + 1:] if e > 1 else m[:i] + m[i + 1:]
                out = out + MultiPoly.monomial(tuple(sorted(rest)), c * e) * ds
        return out

    # -- rendering ----------------------------------------------------------

    def __repr__(self):
        return self.text()

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            piece = monomial_str(m)
            if piece == "1":
                piece = q_str(c)
            elif c == 1:
                pass
            elif c == -1:
                piece = "-" + piece
            else:
                piece = "%s*%s" % (q_str(c), piece)
            if parts and not piece.startswith("-"):
                parts.append("+ " + piece)
            elif parts:
                parts.append("- " + piece[1:])
            else:
                parts.append(piece)
        return " ".join(parts)


def _coerce(x) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, QType)):
        return MultiPoly.const(x)
    raise TypeError("cannot coerce %r to MultiPoly" % (x,))


def _iter_factors(terms) -> Iterator[Symbol]:
    for m in terms:
        for s, _ in m:
            yield s


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Total add/mul entry point on canonical polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)
