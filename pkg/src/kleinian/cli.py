"""Command-line front end: derive, verify, show, export.

Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
3 internal inconsistency (the convention-bug class).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

from . import ENGINE_VERSION
from .curves import (
    CurveSpec, HYPERELLIPTIC_G2, OmegaAlgTable, WindingData, parse_spec,
)
from .document import (
    RelationDocument, export_document, poly_from_json, poly_json, render_relation,
)
from .engine import (
    RelationDB, classify, derive_at_weight, kummer_quartic, reduce_mod_db,
)
from .errors import (
    ConfigError, ConventionError, InconsistentSystemError, KleinianError, ReductionError,
)
from .klein import jacobi_inversion_extract
from .poly import monomial_str
from .tables import relation_table, trigonal_weight12_quartic
from .taucalc import AbelianContext, TauModel

DEFAULT_CACHE = os.path.join(os.path.expanduser("~"), ".cache", "kleinian")
CACHE_ENV = "KLEINIAN_CACHE_DIR"


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".kleinian-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# tau-model disk cache


def _cache_key(curve: CurveSpec, k: int) -> str:
    blob = "%s|%s|K=%d" % (ENGINE_VERSION, curve.fingerprint(), k)
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def _model_to_json(model: TauModel) -> str:
    doc = {
        "engine_version": ENGINE_VERSION,
        "curve": model.curve.fingerprint(),
        "max_time_index": model.max_time_index,
        "winding": [[poly_json(c) for c in vec] for vec in model.winding.vectors],
        "omega": {"%d,%d" % kl: poly_json(c) for kl, c in sorted(model.omega.entries.items())},
        "omega_size": model.omega.size,
    }
    return json.dumps(doc, sort_keys=True)


def _model_from_json(text: str, curve: CurveSpec) -> TauModel:
    data = json.loads(text)
    ctx = AbelianContext(curve.gap_weights)
    vectors = tuple(tuple(poly_from_json(c, curve, ctx) for c in vec)
                    for vec in data["winding"])
    entries = {}
    for key, val in data["omega"].items():
        k, l = key.split(",")
        entries[(int(k), int(l))] = poly_from_json(val, curve, ctx)
    winding = WindingData(curve, vectors)
    omega = OmegaAlgTable(curve, data["omega_size"], entries)
    return TauModel(curve, winding, omega, data["max_time_index"])


def cached_tau_model(curve: CurveSpec, max_weight: int, cache_dir: str | None) -> TauModel:
    if cache_dir is None:
        return TauModel.build(curve, max_weight)
    path = os.path.join(cache_dir, "tau-%s.json" % _cache_key(curve, max_weight + 1))
    if os.path.exists(path):
        try:
            with open(path) as fh:
                return _model_from_json(fh.read(), curve)
        except (KleinianError, KeyError, ValueError, json.JSONDecodeError):
            pass  # stale or corrupt cache entry; rebuild
    model = TauModel.build(curve, max_weight)
    _atomic_write(path, _model_to_json(model))
    return model


# ---------------------------------------------------------------------------
# derive


def run_derive(curve: CurveSpec, max_weight: int, method: str = "plucker",
               enable_weight16: bool = False, rank3: bool = False,
               fold: str = "auto", cache_dir: str | None = None) -> RelationDocument:
    if max_weight < 4:
        raise ConfigError("max-weight must be at least 4 (no rank-2 partitions below)")
    if method not in ("plucker", "classical", "both"):
        raise ConfigError("unknown method %r" % method)
    if method in ("classical", "both") and curve.family != HYPERELLIPTIC_G2:
        raise ConfigError("the classical method applies to the genus-2 curve only")

    relations = []
    notes: dict[int, list[str]] = {}
    classical = []
    if method in ("plucker", "both"):
        top = max_weight if enable_weight16 else min(max_weight, 15)
        model = cached_tau_model(curve, top, cache_dir)
        db = RelationDB(curve)
        for w in range(4, top + 1):
            db.add_layer(w, derive_at_weight(w, db, model, rank3=rank3, fold=fold))
        if curve.family == HYPERELLIPTIC_G2 and max_weight >= 16 and not enable_weight16:
            # the weight-16 layer is gated; the Kummer quartic comes from the
            # quadratic-form identity instead
            db.add_layer(16, [kummer_quartic(db)])
        relations = db.relations()
        notes = db.notes
    if method in ("classical", "both"):
        _, _, classical = jacobi_inversion_extract(curve)
    if method == "classical":
        relations, classical = [], classical
    if method == "both":
        stored = {r.solved_monomial: r for r in relations}
        for r in classical:
            match = stored.get(r.solved_monomial)
            if match is None or match.expr != r.expr:
                raise ConventionError(
                    "classical and hook engines disagree at %s"
                    % monomial_str(r.solved_monomial))
    return RelationDocument(curve, max_weight, method, relations, classical, notes)


# ---------------------------------------------------------------------------
# verify


def verify_document(doc: RelationDocument) -> tuple[bool, list[str]]:
    """Exact-match verdicts of a document against the built-in tables."""
    ctx = AbelianContext(doc.curve.gap_weights, graded=not doc.curve.values)
    lines = []
    ok = True
    source = {r.solved_monomial: r for r in doc.relations}
    for weight, cls, expr in relation_table(doc.curve, ctx):
        if weight > doc.max_weight:
            continue
        want = classify(expr, weight, ctx)
        name = "w%d %s" % (weight, monomial_str(want.solved_monomial))
        got = source.get(want.solved_monomial)
        if got is None:
            ok = False
            lines.append("FAIL %-24s missing from document" % name)
        elif got.expr != want.expr:
            ok = False
            lines.append("FAIL %-24s coefficients differ" % name)
        elif got.cls != cls:
            ok = False
            lines.append("FAIL %-24s class %s, expected %s" % (name, got.cls, cls))
        else:
            lines.append("PASS %-24s exact match" % name)
    for r in doc.relations + doc.classical:
        if ctx.graded and not r.expr.is_homogeneous(r.weight):
            ok = False
            lines.append("FAIL w%d relation is not weight-homogeneous" % r.weight)
        if not ctx.is_zeta_free(r.expr):
            ok = False
            lines.append("FAIL w%d relation contains zeta symbols" % r.weight)
    if doc.method in ("both",):
        stored = {r.solved_monomial: r for r in doc.relations}
        for r in doc.classical:
            match = stored.get(r.solved_monomial)
            verdict = match is not None and match.expr == r.expr
            ok = ok and verdict
            lines.append("%s classical %s agrees" % ("PASS" if verdict else "FAIL",
                                                     monomial_str(r.solved_monomial)))
    if doc.curve.family != HYPERELLIPTIC_G2:
        # consistency report for the printed weight-12 quartic: residual of
        # its reduction modulo the derived database (reported, not asserted)
        quartic = trigonal_weight12_quartic(doc.curve, ctx)
        residual = reduce_mod_db(quartic, doc.to_db())
        if residual.is_zero():
            lines.append("NOTE weight-12 quartic lies in the derived ideal")
        else:
            lines.append("NOTE weight-12 quartic residual has %d terms "
                         "(database through weight %d)"
                         % (len(residual.terms), doc.max_weight))
    return ok, lines


# ---------------------------------------------------------------------------
# argument parsing and entry points


def _read_curve(path: str) -> CurveSpec:
    try:
        with open(path) as fh:
            return parse_spec(fh.read())
    except OSError as exc:
        raise ConfigError("cannot read curve spec %s: %s" % (path, exc))


def _read_document(path: str) -> RelationDocument:
    try:
        with open(path) as fh:
            return RelationDocument.from_json(fh.read())
    except OSError as exc:
        raise ConfigError("cannot read document %s: %s" % (path, exc))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kleinian",
        description="Derive and check differential relations among Kleinian p-functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("derive", help="derive the relation hierarchy for a curve")
    d.add_argument("--curve", required=True, help="path to a curve-spec file")
    d.add_argument("--max-weight", type=int, required=True)
    d.add_argument("--method", choices=("plucker", "classical", "both"), default="plucker")
    d.add_argument("--out", default="relations.json")
    d.add_argument("--enable-weight16", action="store_true",
                   help="derive the expensive weight-16 layer instead of gating it")
    d.add_argument("--enable-rank3", action="store_true",
                   help="include rank-3 hook-determinant rows (extension)")
    d.add_argument("--fold-transposes", choices=("auto", "always", "never"),
                   default="auto", help="override the transpose-pair policy")
    d.add_argument("--no-cache", action="store_true", help="disable the table cache")

    v = sub.add_parser("verify", help="check a document against the built-in tables")
    v.add_argument("--doc", required=True)

    s = sub.add_parser("show", help="print the relations of a document")
    s.add_argument("--doc", required=True)
    s.add_argument("--weight", type=int)

    e = sub.add_parser("export", help="render a document as json, text or latex")
    e.add_argument("--doc", required=True)
    e.add_argument("--format", choices=("json", "text", "latex"), default="text")
    e.add_argument("--out")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "derive":
            curve = _read_curve(args.curve)
            cache_dir = None if args.no_cache else os.environ.get(CACHE_ENV, DEFAULT_CACHE)
            doc = run_derive(curve, args.max_weight, args.method,
                             enable_weight16=args.enable_weight16,
                             rank3=args.enable_rank3, fold=args.fold_transposes,
                             cache_dir=cache_dir)
            _atomic_write(args.out, doc.to_json())
            print("wrote %s (%d relations, curve %s)"
                  % (args.out, len(doc.relations) + len(doc.classical),
                     curve.fingerprint()))
            return 0
        if args.command == "verify":
            ok, lines = verify_document(_read_document(args.doc))
            print("\n".join(lines))
            return 0 if ok else 1
        if args.command == "show":
            doc = _read_document(args.doc)
            for r in doc.relations + doc.classical:
                if args.weight is None or r.weight == args.weight:
                    print("[w%-2d %-16s] %s" % (r.weight, r.cls, render_relation(r, "text")))
            return 0
        if args.command == "export":
            doc = _read_document(args.doc)
            text = export_document(doc, args.format)
            if args.out:
                _atomic_write(args.out, text)
                print("wrote %s" % args.out)
            else:
                sys.stdout.write(text)
            return 0
        raise ConfigError("unknown command")
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ConventionError, InconsistentSystemError, ReductionError) as exc:
        print("internal inconsistency: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
