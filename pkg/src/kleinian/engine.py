"""Relation engine: hook-determinant rows, reduction, elimination, storage.

Layers are strictly sequential: the weight-W layer assumes a database
complete for all weights below W.  A layer generates one determinant
identity per rank-2 partition of weight W (folding transpose pairs for
the hyperelliptic curve, where both members give the same row; forming
symmetric and antisymmetric combinations for the trigonal curve),
reduces every row modulo the lower layers and their derivative closure,
and solves the surviving rows for the monomials that contain a p-symbol
with three or more indices.  Solved rows are promoted to relations; rows
that reduce to zero were already in the ideal and are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveSpec, HYPERELLIPTIC_G2
from .errors import InconsistentSystemError, ReductionError
from .partitions import Partition, enumerate_rank2, transpose_classes
from .poly import (
    Monomial, MultiPoly, monomial_div, monomial_divides, monomial_key, monomial_str,
    monomial_weight,
)
from .rationals import Q
from .taucalc import AbelianContext, TauModel

FOUR_INDEX = "FOUR_INDEX"
QUAD_THREE_INDEX = "QUAD_THREE_INDEX"
QUASILINEAR = "QUASILINEAR"
QUARTIC_EVEN = "QUARTIC_EVEN"
OTHER = "OTHER"

_REDUCE_PASS_BOUND = 400


def wp_degree(mono: Monomial, min_indices: int) -> int:
    """Total degree in p-symbols with at least the given number of indices."""
    return sum(e for s, e in mono if s.kind == "wp" and len(s.indices) >= min_indices)


def is_basic(mono: Monomial) -> bool:
    """Basic monomials: parameters and 2-index p-symbols only."""
    return all(s.kind == "param" or (s.kind == "wp" and len(s.indices) == 2)
               for s, _ in mono)


def column_of(mono: Monomial) -> Monomial | None:
    """The unknown column of a monomial: its full p-part, when that part
    contains a symbol with >= 3 indices; None for basic monomials."""
    if not any(s.kind == "wp" and len(s.indices) >= 3 for s, _ in mono):
        return None
    return tuple((s, e) for s, e in mono if s.kind == "wp")


def column_rank(col: Monomial) -> int:
    """Pivot preference: 4-index symbols, then quadratic 3-index, then linear."""
    if any(len(s.indices) >= 4 for s, _ in col):
        return 0
    if wp_degree(col, 3) >= 2:
        return 1
    return 2


def column_order_key(col: Monomial):
    return (-column_rank(col), monomial_key(col))


@dataclass
class Relation:
    """A derived identity, stored in solved form pivot = pivot - expr.

    expr is weight-homogeneous, zeta-free, and has the solved monomial
    with coefficient exactly +1.
    """

    expr: MultiPoly
    weight: int
    cls: str
    solved_monomial: Monomial | None
    source: tuple[Partition, ...] = ()

    @property
    def rhs(self) -> MultiPoly:
        if self.solved_monomial is None:
            return -self.expr
        return MultiPoly.monomial(self.solved_monomial) - self.expr

    def label(self) -> str:
        head = monomial_str(self.solved_monomial) if self.solved_monomial else "0"
        return "[w%d %s] %s = %s" % (self.weight, self.cls, head, self.rhs.text())


# ---------------------------------------------------------------------------
# rewriting


def _find_pivot(mono: Monomial, rules: dict[Monomial, MultiPoly],
                weights: dict[Monomial, int]) -> Monomial | None:
    mw = monomial_weight(mono)
    best = None
    for pivot in rules:
        if weights[pivot] > mw:
            continue
        if monomial_divides(pivot, mono):
            if best is None or monomial_key(pivot) > monomial_key(best):
                best = pivot
    return best


def reduce_with_rules(expr: MultiPoly, rules: dict[Monomial, MultiPoly]) -> MultiPoly:
    """Rewrite to a normal form, substituting rule pivots greedily.

    Deterministic: within a pass every reducible monomial is rewritten by
    its largest applicable pivot.  Bounded passes guard against a cyclic
    rule set, which would be an internal error.
    """
    if not rules:
        return expr
    weights = {p: monomial_weight(p) for p in rules}
    for _ in range(_REDUCE_PASS_BOUND):
        changed = False
        out = MultiPoly.zero()
        pending = MultiPoly.zero()
        for mono, c in expr.terms.items():
            pivot = _find_pivot(mono, rules, weights)
            if pivot is None:
                out = out + MultiPoly.monomial(mono, c)
            else:
                changed = True
                cofactor = monomial_div(mono, pivot)
                pending = pending + MultiPoly.monomial(cofactor, c) * rules[pivot]
        expr = out + pending
        if not changed:
            return expr
    raise ReductionError("reduction did not terminate within the pass bound")


def _index_multisets(genus: int, gaps: tuple[int, ...], max_weight: int):
    """Nonempty sorted index multisets J with sum of gap weights <= max_weight."""
    out: list[tuple[int, ...]] = []

    def rec(start: int, budget: int, acc: tuple[int, ...]):
        for i in range(start, genus + 1):
            w = gaps[i - 1]
            if w > budget:
                continue
            nxt = acc + (i,)
            out.append(nxt)
            rec(i, budget - w, nxt)

    rec(1, max_weight, ())
    return sorted(out)


# ---------------------------------------------------------------------------
# database


class RelationDB:
    """Weight-indexed store of relations with a derivative-closure service."""

    def __init__(self, curve: CurveSpec, ctx: AbelianContext | None = None):
        self.curve = curve
        self.ctx = ctx or AbelianContext(curve.gap_weights, graded=not curve.values)
        self.layers: dict[int, list[Relation]] = {}
        self.notes: dict[int, list[str]] = {}
        self._version = 0
        self._closure_cache: dict[tuple[int, bool, int], tuple[dict, list]] = {}

    # -- storage -------------------------------------------------------------

    def add_layer(self, weight: int, relations: list[Relation]):
        pivots = {}
        for r in self.relations() + relations:
            if r.solved_monomial is None:
                continue
            if r.solved_monomial in pivots:
                raise InconsistentSystemError(
                    "duplicate solved monomial %s" % monomial_str(r.solved_monomial))
            pivots[r.solved_monomial] = r
        self.layers[weight] = list(relations)
        self._version += 1

    def relations(self, max_weight: int | None = None) -> list[Relation]:
        out = []
        for w in sorted(self.layers):
            if max_weight is not None and w > max_weight:
                continue
            out.extend(self.layers[w])
        return out

    def max_complete(self) -> int:
        return max(self.layers, default=3)

    def find_solved(self, mono: Monomial) -> Relation | None:
        for r in self.relations():
            if r.solved_monomial == mono:
                return r
        return None

    # -- derivative closure ----------------------------------------------------

    def closure(self, max_weight: int, include_equal: bool = True):
        """Rewrite rules up to the given weight, plus cross-derivation rows.

        Rules come from stored solved relations (of weight < max_weight, or
        <= when include_equal) and from u-derivatives of stored FOUR_INDEX
        relations, whose pivots stay single monomials.  When two derivative
        routes collide on one pivot, the difference is a genuinely new
        relation at that weight; it is returned as a row for the layer
        instead of being minted as a rule.
        """
        key = (max_weight, include_equal, self._version)
        got = self._closure_cache.get(key)
        if got is not None:
            return got
        gaps = self.ctx.gaps
        rules: dict[Monomial, MultiPoly] = {}
        collisions: list[tuple[int, MultiPoly]] = []
        stored = [r for r in self.relations(max_weight)
                  if r.solved_monomial is not None
                  and (r.weight < max_weight or include_equal)]
        stored.sort(key=lambda r: (r.weight, monomial_key(r.solved_monomial)))
        for r in stored:
            rules[r.solved_monomial] = r.rhs
        for r in stored:
            if r.cls != FOUR_INDEX:
                continue
            base = r.solved_monomial[0][0].indices
            for J in _index_multisets(self.ctx.genus, gaps, max_weight - r.weight):
                pivot = ((self.ctx.wp(base + J), 1),)
                rhs = self.ctx.diff_multi(r.rhs, J)
                if pivot in rules:
                    collisions.append((monomial_weight(pivot), rules[pivot] - rhs))
                else:
                    rules[pivot] = rhs
        # normal-form the right-hand sides against each other
        for _ in range(_REDUCE_PASS_BOUND):
            stable = True
            for pivot in sorted(rules, key=monomial_key):
                rest = {p: rhs for p, rhs in rules.items() if p != pivot}
                reduced = reduce_with_rules(rules[pivot], rest)
                if reduced != rules[pivot]:
                    rules[pivot] = reduced
                    stable = False
            if stable:
                break
        else:
            raise ReductionError("closure inter-reduction did not stabilize")
        rows = []
        for w, c in collisions:
            r = reduce_with_rules(c, rules)
            if not r.is_zero():
                rows.append((w, r))
        result = (rules, rows)
        self._closure_cache[key] = result
        return result


def reduce_mod_db(expr: MultiPoly, db: RelationDB, max_weight: int | None = None) -> MultiPoly:
    """Normal form of an expression modulo the database and its closure."""
    if max_weight is None:
        weights = [monomial_weight(m) for m in expr.terms]
        max_weight = max(weights, default=0)
    rules, _ = db.closure(max_weight, include_equal=True)
    return reduce_with_rules(expr, rules)


# ---------------------------------------------------------------------------
# rows and elimination


def plucker_relation(lam: Partition, model: TauModel) -> MultiPoly:
    """Row of the determinant identity attached to a rank-2 partition.

    The value of s_lambda(D~) on the tau ratio minus the 2x2 determinant
    of its single-hook values, everything reduced through the sigma
    ladder; vanishes identically on the Jacobian and is homogeneous of
    weight |lambda|.
    """
    if lam.rank != 2:
        raise ValueError("partition %r has rank %d, need rank 2" % (lam.parts, lam.rank))
    (a1, a2), (b1, b2) = lam.frobenius()
    lhs = model.schur_apply(lam)
    det = (model.hook(a1, b1) * model.hook(a2, b2)
           - model.hook(a1, b2) * model.hook(a2, b1))
    return lhs - det


def giambelli_rank3_relation(lam: Partition, model: TauModel) -> MultiPoly:
    """Optional extension: the 3x3 hook-determinant identity (rank 3)."""
    if lam.rank != 3:
        raise ValueError("partition %r has rank %d, need rank 3" % (lam.parts, lam.rank))
    arms, legs = lam.frobenius()
    h = [[model.hook(a, b) for b in legs] for a in arms]
    det = (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
           - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
           + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))
    return model.schur_apply(lam) - det


@dataclass
class _Row:
    cols: dict[Monomial, MultiPoly]
    basic: MultiPoly
    source: tuple[Partition, ...] = ()

    def is_zero(self):
        return not self.cols and self.basic.is_zero()

    def expr(self) -> MultiPoly:
        acc = self.basic
        for col, coeff in self.cols.items():
            acc = acc + coeff * MultiPoly.monomial(col)
        return acc

    def scaled(self, factor) -> "_Row":
        return _Row({c: v * factor for c, v in self.cols.items()},
                    self.basic * factor, self.source)

    def minus(self, other: "_Row", factor: MultiPoly) -> "_Row":
        cols = dict(self.cols)
        for c, v in other.cols.items():
            nv = cols.get(c, MultiPoly.zero()) - v * factor
            if nv.is_zero():
                cols.pop(c, None)
            else:
                cols[c] = nv
        return _Row(cols, self.basic - other.basic * factor,
                    tuple(dict.fromkeys(self.source + other.source)))


def _split_row(expr: MultiPoly, source: tuple[Partition, ...]) -> _Row:
    cols: dict[Monomial, MultiPoly] = {}
    basic = MultiPoly.zero()
    for mono, c in expr.terms.items():
        col = column_of(mono)
        if col is None:
            basic = basic + MultiPoly.monomial(mono, c)
        else:
            # col keeps the full p-part; the coefficient is parameters only
            rest = tuple((s, e) for s, e in mono if s.kind != "wp")
            coeff = MultiPoly.monomial(rest, c)
            got = cols.get(col)
            cols[col] = coeff if got is None else got + coeff
    cols = {c: v for c, v in cols.items() if not v.is_zero()}
    return _Row(cols, basic, source)


def linear_solve(system: list[MultiPoly], unknowns: list[Monomial] | None = None,
                 sources: list[tuple[Partition, ...]] | None = None):
    """Fraction-free elimination of rows linear in unknown monomials.

    Returns (solved, residual): solved rows are (pivot monomial, RHS
    expression, sources) with the pivot coefficient normalized to 1;
    residual rows could not be pivoted on a rational coefficient.  A row
    with no unknown columns but a nonzero basic part raises
    :class:`InconsistentSystemError`.
    """
    sources = sources or [()] * len(system)
    rows = [_split_row(e, src) for e, src in zip(system, sources)]
    if unknowns is not None:
        allowed = set(unknowns)
        for row in rows:
            bad = [c for c in row.cols if c not in allowed]
            if bad:
                raise ValueError("row not linear in the designated unknowns: %s"
                                 % monomial_str(bad[0]))
    rows = [r for r in rows if not r.is_zero()]
    columns = sorted({c for r in rows for c in r.cols}, key=column_order_key)
    pivoted: list[tuple[Monomial, _Row]] = []
    free = list(rows)
    for col in columns:
        candidates = [r for r in free
                      if col in r.cols and r.cols[col].is_rational()]
        if not candidates:
            continue
        pivot_row = min(candidates, key=lambda r: (len(r.cols) + len(r.basic.terms)))
        free.remove(pivot_row)
        pivot_row = pivot_row.scaled(Q(1) / pivot_row.cols[col].rational_value())
        for i, r in enumerate(free):
            if col in r.cols:
                free[i] = r.minus(pivot_row, r.cols[col])
        pivoted = [(c, pr.minus(pivot_row, pr.cols[col]) if col in pr.cols else pr)
                   for c, pr in pivoted]
        pivoted.append((col, pivot_row))
    residual = []
    for r in free:
        if r.is_zero():
            continue
        if not r.cols:
            raise InconsistentSystemError("inconsistent row: 0 = %s" % r.basic.text())
        residual.append(r)
    solved = []
    for col, row in pivoted:
        rest = _Row({c: v for c, v in row.cols.items() if c != col}, row.basic, row.source)
        solved.append((col, -rest.expr(), row.source))
    return solved, residual


# ---------------------------------------------------------------------------
# classification and layers


def classify(expr: MultiPoly, weight: int, ctx: AbelianContext,
             source: tuple[Partition, ...] = ()) -> Relation:
    """Normalize a reduced zeta-free homogeneous relation into solved form."""
    if expr.is_zero():
        raise ValueError("cannot classify the zero relation")
    if ctx.graded and not expr.is_homogeneous(weight):
        raise ReductionError("relation is not homogeneous of weight %d: %s"
                             % (weight, expr.text()))
    if not ctx.is_zeta_free(expr):
        raise ReductionError("zeta symbols survive in relation %s" % expr.text())
    row = _split_row(expr, source)
    pivot = None
    for col in sorted(row.cols, key=column_order_key):
        if row.cols[col].is_rational():
            pivot = col
            break
    if pivot is None and not row.cols:
        # no 3-index content at all: an even relation among basic symbols
        lead = None
        for mono, c in expr.sorted_terms():
            if not any(s.kind == "param" for s, _ in mono):
                lead = mono
                break
        lead = lead if lead is not None else expr.leading_monomial()
        norm = expr * (Q(1) / expr.terms[lead])
        cls = QUARTIC_EVEN if ctx.parity(norm) == norm else OTHER
        return Relation(norm, weight, cls, lead, source)
    if pivot is None:
        return Relation(expr, weight, OTHER, None, source)
    scale = Q(1) / row.cols[pivot].rational_value()
    norm = expr * scale
    rest = norm - MultiPoly.monomial(pivot)
    if column_rank(pivot) == 0 and len(pivot) == 1 and pivot[0][1] == 1:
        cls = FOUR_INDEX if all(is_basic(m) for m in rest.terms) else OTHER
        if cls == OTHER and all(wp_degree(m, 3) <= 1 for m in rest.terms):
            cls = QUASILINEAR  # a 4-index pivot with quasilinear remainder
    elif column_rank(pivot) == 1:
        cls = QUAD_THREE_INDEX if all(is_basic(m) for m in rest.terms) else OTHER
    else:
        cls = QUASILINEAR if all(wp_degree(m, 3) <= 1 for m in rest.terms) else OTHER
    return Relation(norm, weight, cls, pivot, source)


def derive_at_weight(weight: int, db: RelationDB, model: TauModel,
                     rank3: bool = False, fold: str = "auto") -> list[Relation]:
    """Generate, reduce and solve the rank-2 layer at one weight.

    The database must be complete for all lower weights; the returned
    relations are not yet stored (callers decide, usually via
    :func:`derive_range`).  fold overrides the transpose policy: "auto"
    folds pairs for the hyperelliptic curve (both members give the same
    row) and forms symmetric/antisymmetric combinations for the trigonal
    curve; "always" keeps one representative per class; "never" emits a
    raw row for every partition.
    """
    if weight < 4:
        raise ValueError("no rank-2 partitions below weight 4")
    if fold not in ("auto", "always", "never"):
        raise ValueError("fold must be auto, always or never")
    expected = set(range(4, weight))
    missing = expected - set(db.layers)
    if missing:
        raise ReductionError("database incomplete below weight %d: missing %s"
                             % (weight, sorted(missing)))
    ctx = db.ctx
    if fold == "auto":
        fold = "always" if model.curve.family == HYPERELLIPTIC_G2 else "combine"
    raw_rows: list[tuple[tuple[Partition, ...], MultiPoly]] = []
    for rep, tr in transpose_classes(enumerate_rank2(weight)):
        if fold == "always" or rep == tr:
            raw_rows.append(((rep,), plucker_relation(rep, model)))
        elif fold == "never":
            raw_rows.append(((rep,), plucker_relation(rep, model)))
            raw_rows.append(((tr,), plucker_relation(tr, model)))
        else:
            a = plucker_relation(rep, model)
            b = plucker_relation(tr, model)
            raw_rows.append(((rep, tr), a + b))
            raw_rows.append(((rep, tr), a - b))
    if rank3:
        from .partitions import all_partitions
        for lam in all_partitions(weight):
            if lam.rank == 3:
                raw_rows.append(((lam,), giambelli_rank3_relation(lam, model)))
    rules, collision_rows = db.closure(weight, include_equal=False)
    rows: list[tuple[tuple[Partition, ...], MultiPoly]] = []
    for src, expr in raw_rows:
        red = reduce_with_rules(expr, rules)
        if red.is_zero():
            continue
        if not ctx.is_zeta_free(red):
            raise ReductionError(
                "zeta survives reduction at weight %d (source %s); lower layers incomplete"
                % (weight, [p.parts for p in src]))
        rows.append((src, red))
    for w, expr in collision_rows:
        if w == weight and not expr.is_zero():
            rows.append(((), expr))
    if not rows:
        return []
    out = []
    system, sources = [], []
    for src, expr in rows:
        if any(column_of(m) for m in expr.terms):
            system.append(expr)
            sources.append(src)
            continue
        # a row with no 3-index content is a relation among basic symbols
        # (the Kummer-variety stratum); an odd one signals a convention bug
        if ctx.parity(expr) != expr:
            raise InconsistentSystemError(
                "odd basic row at weight %d: %s" % (weight, expr.text()))
        out.append(classify(expr, weight, ctx, src))
    solved, residual = linear_solve(system, sources=sources)
    for col, rhs, src in solved:
        expr = MultiPoly.monomial(col) - rhs
        out.append(classify(expr, weight, ctx, src))
    if residual:
        self_notes = db.notes.setdefault(weight, [])
        for r in residual:
            self_notes.append("unresolved row (no rational pivot): %s" % r.expr().text())
    return out


def derive_range(db: RelationDB, model: TauModel, max_weight: int,
                 rank3: bool = False) -> RelationDB:
    for w in range(4, max_weight + 1):
        db.add_layer(w, derive_at_weight(w, db, model, rank3=rank3))
    return db


def cross_differentiate(db: RelationDB) -> list[Relation]:
    """Quasilinear relations from mixed-derivative compatibility.

    For stored FOUR_INDEX relations with pivots p_A, p_B and single
    indices j, i such that A+{j} = B+{i}, the difference of derivatives
    d_j(rel_A) - d_i(rel_B) has no 5-index content; after reduction by
    the strictly lower layers it is either zero or a quasilinear
    relation at weight |A| + w_j.
    """
    ctx = db.ctx
    four = [r for r in db.relations() if r.cls == FOUR_INDEX]
    four.sort(key=lambda r: (r.weight, monomial_key(r.solved_monomial)))
    out = []
    seen_exprs = []
    for ia in range(len(four)):
        for ib in range(ia + 1, len(four)):
            ra, rb = four[ia], four[ib]
            A = ra.solved_monomial[0][0].indices
            B = rb.solved_monomial[0][0].indices
            for j in range(1, ctx.genus + 1):
                for i in range(1, ctx.genus + 1):
                    if tuple(sorted(A + (j,))) != tuple(sorted(B + (i,))):
                        continue
                    w = ra.weight + ctx.gaps[j - 1]
                    expr = ctx.diff(ra.expr, j) - ctx.diff(rb.expr, i)
                    rules, _ = db.closure(w, include_equal=False)
                    red = reduce_with_rules(expr, rules)
                    if red.is_zero():
                        continue
                    rel = classify(red, w, ctx, ())
                    if rel.expr not in seen_exprs:
                        seen_exprs.append(rel.expr)
                        out.append(rel)
    return out


def kummer_quartic(db: RelationDB) -> Relation:
    """The genus-2 Kummer surface quartic from the three quadratic forms.

    Expands (p111^2)(p112^2) - (p111 p112)^2 = 0 through the stored
    solved forms; the result is an even, 3-index-free quartic in the
    two-index symbols, homogeneous of weight 16, normalized on p12^4.
    """
    ctx = db.ctx
    need = [((ctx.wp((1, 1, 1)), 2),),
            ((ctx.wp((1, 1, 2)), 2),),
            ((ctx.wp((1, 1, 1)), 1), (ctx.wp((1, 1, 2)), 1))]
    rels = [db.find_solved(m) for m in need]
    missing = [monomial_str(m) for m, r in zip(need, rels) if r is None]
    if missing:
        raise ReductionError("missing solved forms for the Kummer quartic: %s"
                             % ", ".join(missing))
    r6, r10, r8 = rels
    quartic = r6.rhs * r10.rhs - r8.rhs * r8.rhs
    if quartic.is_zero():
        raise ReductionError("Kummer quartic collapsed to zero")
    p12_4 = ((ctx.wp((1, 2)), 4),)
    c = quartic.coeff(p12_4)
    if c == 0:
        raise ReductionError("Kummer quartic has no p12^4 term")
    norm = quartic * (Q(1) / c)
    if any(wp_degree(m, 3) for m in norm.terms) or not ctx.is_zeta_free(norm):
        raise ReductionError("Kummer quartic is not basic")
    if ctx.graded and not norm.is_homogeneous(16):
        raise ReductionError("Kummer quartic is not weight-16 homogeneous")
    if ctx.parity(norm) != norm:
        raise ReductionError("Kummer quartic is not even")
    return Relation(norm, 16, QUARTIC_EVEN, p12_4, ())
