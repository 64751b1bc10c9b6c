"""Relation documents: deterministic JSON serialization and rendering.

A document records the curve fingerprint, the engine version, and every
derived relation with exact rational coefficients; identical inputs
produce byte-identical files and documents round-trip losslessly.
Rationals are serialized as {"num": ..., "den": ...} decimal strings
(no floats anywhere).
"""

from __future__ import annotations

import json

from . import ENGINE_VERSION
from .curves import CurveSpec, curve_by_family
from .engine import Relation, RelationDB
from .errors import ConfigError
from .poly import Monomial, MultiPoly, Symbol, monomial_key
from .rationals import Q, q_str
from .taucalc import AbelianContext

FORMAT = "kleinian-relations-v1"


def symbol_from_name(name: str, curve: CurveSpec, ctx: AbelianContext) -> Symbol:
    if name.startswith("p") and name[1:].isdigit():
        return ctx.wp(tuple(int(c) for c in name[1:]))
    if name.startswith("z") and name[1:].isdigit():
        return ctx.zeta(int(name[1:]))
    for p in curve.parameters:
        if p.name == name:
            return p
    raise ConfigError("unknown symbol %r in document" % name)


def _coeff_json(c) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _coeff_from_json(d) -> object:
    return Q(int(d["num"]), int(d["den"]))


def _monomial_json(m: Monomial) -> list:
    return [[s.name, e] for s, e in m]


def _monomial_from_json(data, curve, ctx) -> Monomial:
    return tuple(sorted((symbol_from_name(name, curve, ctx), e) for name, e in data))


def poly_json(p: MultiPoly) -> list:
    return [{"coeff": _coeff_json(c), "monomial": _monomial_json(m)}
            for m, c in p.sorted_terms()]


def poly_from_json(data, curve, ctx) -> MultiPoly:
    acc = MultiPoly.zero()
    for term in data:
        acc = acc + MultiPoly.monomial(_monomial_from_json(term["monomial"], curve, ctx),
                                       _coeff_from_json(term["coeff"]))
    return acc


def relation_json(r: Relation) -> dict:
    return {
        "weight": r.weight,
        "class": r.cls,
        "solved_monomial": _monomial_json(r.solved_monomial) if r.solved_monomial else None,
        "terms": poly_json(r.expr),
        "source_partitions": [list(p.parts) for p in r.source],
    }


def relation_from_json(data, curve, ctx) -> Relation:
    from .partitions import Partition
    solved = data["solved_monomial"]
    return Relation(
        expr=poly_from_json(data["terms"], curve, ctx),
        weight=data["weight"],
        cls=data["class"],
        solved_monomial=_monomial_from_json(solved, curve, ctx) if solved else None,
        source=tuple(Partition(tuple(p)) for p in data["source_partitions"]),
    )


class RelationDocument:
    """Serializable result of a derivation run."""

    def __init__(self, curve: CurveSpec, max_weight: int, method: str,
                 relations: list[Relation], classical: list[Relation] | None = None,
                 notes: dict[int, list[str]] | None = None):
        self.curve = curve
        self.max_weight = max_weight
        self.method = method
        self.relations = sorted(
            relations, key=lambda r: (r.weight, r.cls, monomial_key(r.solved_monomial or ())))
        self.classical = sorted(
            classical or [], key=lambda r: (r.weight, r.cls, monomial_key(r.solved_monomial or ())))
        self.notes = notes or {}

    def to_json(self) -> str:
        doc = {
            "format": FORMAT,
            "engine_version": ENGINE_VERSION,
            "curve": {
                "family": self.curve.family,
                "parameters": {p.name: (q_str(dict(self.curve.values)[p.name])
                                        if p.name in dict(self.curve.values) else "symbolic")
                               for p in self.curve.parameters},
            },
            "max_weight": self.max_weight,
            "method": self.method,
            "relations": [relation_json(r) for r in self.relations],
            "classical_relations": [relation_json(r) for r in self.classical],
            "notes": {str(w): msgs for w, msgs in sorted(self.notes.items())},
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RelationDocument":
        data = json.loads(text)
        if data.get("format") != FORMAT:
            raise ConfigError("unrecognized document format %r" % data.get("format"))
        params = {k: v for k, v in data["curve"]["parameters"].items() if v != "symbolic"}
        curve = curve_by_family(data["curve"]["family"], params)
        ctx = AbelianContext(curve.gap_weights)
        return cls(
            curve=curve,
            max_weight=data["max_weight"],
            method=data["method"],
            relations=[relation_from_json(r, curve, ctx) for r in data["relations"]],
            classical=[relation_from_json(r, curve, ctx) for r in data["classical_relations"]],
            notes={int(w): msgs for w, msgs in data.get("notes", {}).items()},
        )

    def to_db(self) -> RelationDB:
        db = RelationDB(self.curve)
        by_weight: dict[int, list[Relation]] = {}
        for r in self.relations:
            by_weight.setdefault(r.weight, []).append(r)
        for w in range(4, self.max_weight + 1):
            db.add_layer(w, by_weight.get(w, []))
        for w in sorted(k for k in by_weight if k > self.max_weight):
            db.add_layer(w, by_weight[w])
        return db


# ---------------------------------------------------------------------------
# rendering


_LATEX_HEADS = {"a": r"\alpha_", "m": r"\mu_"}


def _latex_symbol(s: Symbol) -> str:
    if s.kind == "wp":
        return r"\wp_{%s}" % "".join(map(str, s.indices))
    if s.kind == "zeta":
        return r"\zeta_{%d}" % s.indices[0]
    head, tail = s.name[0], s.name[1:]
    if head in _LATEX_HEADS and tail.isdigit():
        return "%s{%s}" % (_LATEX_HEADS[head], tail)
    return s.name


def latex_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    bits = []
    for m, c in p.sorted_terms():
        mono = " ".join(_latex_symbol(s) if e == 1 else "%s^{%d}" % (_latex_symbol(s), e)
                        for s, e in m)
        if not m:
            coeff = _latex_q(c)
        elif c == 1:
            coeff = ""
        elif c == -1:
            coeff = "-"
        else:
            coeff = _latex_q(c)
        piece = (coeff + " " + mono).strip() if mono else coeff
        if bits and not piece.startswith("-"):
            bits.append("+ " + piece)
        elif bits:
            bits.append("- " + piece[1:].strip())
        else:
            bits.append(piece)
    return " ".join(bits)


def _latex_q(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c.numerator < 0 else ""
    return r"%s\tfrac{%d}{%d}" % (sign, abs(c.numerator), c.denominator)


def render_relation(r: Relation, fmt: str) -> str:
    if fmt == "text":
        from .poly import monomial_str
        if r.solved_monomial is not None:
            return "%s = %s" % (monomial_str(r.solved_monomial), r.rhs.text())
        return "%s = 0" % r.expr.text()
    if fmt == "latex":
        if r.solved_monomial is not None:
            lhs = latex_poly(MultiPoly.monomial(r.solved_monomial))
            return "%s &= %s \\\\" % (lhs, latex_poly(r.rhs))
        return "0 &= %s \\\\" % latex_poly(r.expr)
    raise ConfigError("unknown format %r" % fmt)


def export_document(doc: RelationDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    lines = []
    if fmt == "latex":
        lines.append(r"\begin{align*}")
    for r in doc.relations:
        prefix = "" if fmt == "latex" else "[w%-2d %-16s] " % (r.weight, r.cls)
        lines.append(prefix + render_relation(r, fmt))
    if doc.classical:
        lines.append("% classical engine" if fmt == "latex" else "# classical engine")
        for r in doc.classical:
            prefix = "" if fmt == "latex" else "[w%-2d %-16s] " % (r.weight, r.cls)
            lines.append(prefix + render_relation(r, fmt))
    if fmt == "latex":
        lines.append(r"\end{align*}")
    return "\n".join(lines) + "\n"
