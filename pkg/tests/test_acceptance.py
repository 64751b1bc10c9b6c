"""Acceptance suite: one test per criterion, printing a pass/fail line each.

Criteria 1-9 are required and run in the plain suite; criterion 10 is the
flag-gated stretch (set KLEINIAN_STRETCH=1) whose runtime is reported, not
bounded.  All comparisons are exact - no tolerances anywhere.
"""

import os
import time

import pytest

from jacobian_oracle import vanishes_on_jacobian
from kleinian.curves import local_expansion, omega_alg, required_expansion_order
from kleinian.engine import (
    FOUR_INDEX, QUASILINEAR, QUARTIC_EVEN, RelationDB, classify,
    cross_differentiate, derive_at_weight, kummer_quartic,
    plucker_relation, reduce_mod_db, reduce_with_rules,
)
from kleinian.klein import jacobi_inversion_extract
from kleinian.partitions import all_partitions, enumerate_rank2, transpose_classes
from kleinian.poly import MultiPoly, monomial_str, time_symbol
from kleinian.rationals import Q
from kleinian.schur import elementary_schur, giambelli_det, schur_poly
from kleinian.tables import (
    omega_table_values, relation_table, trigonal_weight12_quartic,
)
from kleinian.taucalc import TauModel


class Clock:
    def __init__(self, number, limit):
        self.number = number
        self.limit = limit
        self.start = time.perf_counter()

    def done(self, detail):
        elapsed = time.perf_counter() - self.start
        verdict = "PASS" if elapsed < self.limit else "FAIL(time)"
        print("%s criterion %-2d (%6.2fs / limit %4.0fs): %s"
              % (verdict, self.number, elapsed, self.limit, detail))
        assert elapsed < self.limit, "criterion %d exceeded %ds" % (self.number, self.limit)


def find(db, pivot_indices=None, weight=None, pivot=None):
    for r in db.relations():
        if weight is not None and r.weight != weight:
            continue
        if pivot is not None and r.solved_monomial != pivot:
            continue
        return r
    return None


def test_criterion_1_weight4_calibration(g2):
    clock = Clock(1, 10)
    model = TauModel.build(g2, 4)
    db = RelationDB(g2)
    rels = derive_at_weight(4, db, model)
    assert len(rels) == 1
    weight, cls, printed = relation_table(g2, model.ctx)[0]
    want = classify(printed, 4, model.ctx)
    assert rels[0].expr == want.expr
    assert rels[0].cls == FOUR_INDEX
    assert rels[0].solved_monomial == want.solved_monomial
    clock.done("p1111 = 6 p11^2 + a4 p11 + 4 p12 + 1/2 a3, exact")


def test_criterion_2_weight5_nullity(g2, g2_model):
    clock = Clock(2, 30)
    db = RelationDB(g2)
    db.add_layer(4, derive_at_weight(4, db, g2_model))
    rels = derive_at_weight(5, db, g2_model)
    assert rels == []
    # every generated row reduces to 0 modulo the closure of KdV_4
    rules, _ = db.closure(5, include_equal=True)
    for rep, _tr in transpose_classes(enumerate_rank2(5)):
        row = plucker_relation(rep, g2_model)
        assert reduce_with_rules(row, rules).is_zero()
    clock.done("weight 5 yields no new relations; all rows reduce to 0")


def test_criterion_3_weight6(g2, g2_db):
    clock = Clock(3, 60)
    layer = g2_db.layers[6]
    assert len(layer) == 2
    for weight, cls, printed in relation_table(g2, g2_db.ctx):
        if weight != 6:
            continue
        want = classify(printed, 6, g2_db.ctx)
        got = [r for r in layer if r.solved_monomial == want.solved_monomial]
        assert got and got[0].expr == want.expr and got[0].cls == cls
    clock.done("weight 6 is exactly {KdV_6, Jac_6}, exact coefficients")


def test_criterion_4_weights_7_to_10(g2, g2_db):
    clock = Clock(4, 300)
    ctx = g2_db.ctx
    table = {(w, classify(e, w, ctx).solved_monomial): (cls, classify(e, w, ctx).expr)
             for w, cls, e in relation_table(g2, ctx)}
    # the printed relations of weights 7..10 all appear exactly
    for (w, pivot), (cls, expr) in table.items():
        if w < 7:
            continue
        got = find(g2_db, weight=w, pivot=pivot)
        assert got is not None, "missing %s" % monomial_str(pivot)
        assert got.expr == expr and got.cls == cls
    # layer shape: w7 and w9 single quasilinear, w8 two, w10 three relations
    assert [len(g2_db.layers[w]) for w in (7, 8, 9, 10)] == [1, 2, 1, 3]
    assert g2_db.layers[7][0].cls == QUASILINEAR
    assert g2_db.layers[9][0].cls == QUASILINEAR
    # cross-differentiation reproduces the two quasilinear relations
    crossed = {(r.weight, r.solved_monomial): r.expr for r in cross_differentiate(g2_db)}
    for w in (7, 9):
        stored = g2_db.layers[w][0]
        assert crossed[(w, stored.solved_monomial)] == stored.expr
    clock.done("weights 7-10 match the printed displays; cross-derivation agrees")


def test_criterion_5_kummer_quartic(g2, g2_db):
    clock = Clock(5, 120)
    ctx = g2_db.ctx
    k = kummer_quartic(g2_db)
    assert k.cls == QUARTIC_EVEN and k.weight == 16
    assert ctx.is_zeta_free(k.expr) and k.expr.is_homogeneous(16)
    assert all(len(s.indices) <= 2 for m in k.expr.terms for s, _ in m if s.kind == "wp")
    assert k.expr.coeff(((ctx.wp((1, 2)), 4),)) == 1
    assert ctx.parity(k.expr) == k.expr
    # the quadratic-form identity reduces to zero through the database
    p111, p112 = ctx.wp_poly(1, 1, 1), ctx.wp_poly(1, 1, 2)
    identity = (p111 * p111) * (p112 * p112) - (p111 * p112) * (p111 * p112)
    assert reduce_mod_db(identity, g2_db).is_zero()
    # independent check on the symbolic divisor
    assert vanishes_on_jacobian(g2, ctx, k.expr)
    clock.done("Kummer quartic: even, 3-index-free, weight 16, p12^4 present")


def test_criterion_6_trigonal_weights_4_to_6(trig, trig_db):
    clock = Clock(6, 120)
    for weight, cls, printed in relation_table(trig, trig_db.ctx):
        want = classify(printed, weight, trig_db.ctx)
        got = find(trig_db, weight=weight, pivot=want.solved_monomial)
        assert got is not None and got.expr == want.expr and got.cls == cls
    clock.done("trigonal weights 4-6 match the printed displays exactly")


def test_criterion_7_omega_tables(g2, trig):
    clock = Clock(7, 30)
    for curve in (g2, trig):
        tbl = omega_alg(curve, 12, local_expansion(curve, required_expansion_order(curve, 12)))
        for (k, l), expected in omega_table_values(curve):
            assert tbl.entry(k, l) == expected, (curve.family, k, l)
        # family vanishing patterns over the full 12x12 table
        for k in range(12):
            for l in range(12):
                entry = tbl.entry(k, l)
                if curve.family == "hyperelliptic_g2" and (k % 2 or l % 2):
                    assert entry.is_zero()
                if curve.family == "cyclic_trigonal_34" and (k + l) % 3 != 1:
                    assert entry.is_zero()
    clock.done("printed omega values match; vanishing patterns hold on 12x12")


def test_criterion_8_classical_oracle(g2, g2_db):
    clock = Clock(8, 60)
    ctx = g2_db.ctx
    jip2, jip2a, rels = jacobi_inversion_extract(g2)
    from kleinian.klein import XP, YP
    xk, yk = MultiPoly.sym(XP), MultiPoly.sym(YP)
    assert jip2 == xk * xk - xk * ctx.wp_poly(1, 1) - ctx.wp_poly(1, 2)
    assert jip2a == yk + ctx.wp_poly(1, 1, 2) + xk * ctx.wp_poly(1, 1, 1)
    stored = {r.solved_monomial: r for r in g2_db.relations()}
    assert len(rels) == 3
    for r in rels:  # R1111, R1112 and the weight-7 quasilinear relation
        assert stored[r.solved_monomial].expr == r.expr
    assert {r.weight for r in rels} == {4, 6, 7}
    clock.done("Klein expansion reproduces JIP and relations; engines agree")


def test_criterion_9_combinatorial_property_suite(g2_model, g2_db, trig_db):
    clock = Clock(9, 120)
    # Giambelli == Jacobi-Trudi for all partitions of weight <= 12
    for w in range(1, 13):
        for lam in all_partitions(w):
            assert giambelli_det(lam) == schur_poly(lam)
    # elementary-Schur recursion for m <= 12
    for m in range(1, 13):
        rhs = MultiPoly.zero()
        for j in range(1, m + 1):
            rhs = rhs + MultiPoly.sym(time_symbol(j), coeff=j) * elementary_schur(m - j)
        assert elementary_schur(m) * m == rhs
    # (the Cauchy-Littlewood truncation to degree 6 runs in test_schur)
    # hyperelliptic transpose identity for all rank-2 partitions of weight <= 10
    for w in range(4, 11):
        for rep, tr in transpose_classes(enumerate_rank2(w)):
            if rep != tr:
                assert plucker_relation(rep, g2_model) == plucker_relation(tr, g2_model)
    # hook antisymmetry A_(m|n)(u) = -A_(n|m)(-u) for m+n <= 10
    ctx = g2_model.ctx
    for m in range(0, 11):
        for n in range(0, 11 - m):
            assert g2_model.a_hook(m, n) == -ctx.parity(g2_model.a_hook(n, m))
    # weight homogeneity of every derived relation on both curves
    for db in (g2_db, trig_db):
        for r in db.relations():
            assert r.expr.is_homogeneous(r.weight)
    clock.done("Giambelli/JT, p-recursion, transpose identity, antisymmetry, grading")


requires_stretch = pytest.mark.skipif(
    os.environ.get("KLEINIAN_STRETCH") != "1",
    reason="stretch criterion: set KLEINIAN_STRETCH=1 (runtime is reported, not bounded)")


@pytest.mark.stretch
@requires_stretch
def test_criterion_10_stretch_weight16_and_trigonal_quartic(g2, trig):
    start = time.perf_counter()
    # weight-16 enumeration: 140 rank-2 partitions in 72 transpose-classes
    parts = enumerate_rank2(16)
    classes = transpose_classes(parts)
    assert len(parts) == 140
    assert len(classes) == 72
    model = TauModel.build(g2, 16)
    db = RelationDB(g2)
    from kleinian.engine import derive_range
    derive_range(db, model, 10)
    rules, _ = db.closure(16, include_equal=True)
    sampled = [rep for rep, _ in classes[::12]]
    for lam in sampled:
        row = reduce_with_rules(plucker_relation(lam, model), rules)
        assert db.ctx.is_zeta_free(row) or row.is_zero()
    # trigonal: reduce the printed weight-12 quartic against a deeper database
    tmodel = TauModel.build(trig, 12)
    tdb = RelationDB(trig)
    for w in range(4, 13):
        tdb.add_layer(w, derive_at_weight(w, tdb, tmodel))
    residual = reduce_mod_db(trigonal_weight12_quartic(trig, tdb.ctx), tdb)
    elapsed = time.perf_counter() - start
    print("PASS criterion 10 (%6.2fs, reported): weight-16 classes=%d sampled=%d; "
          "trigonal quartic residual terms=%d"
          % (elapsed, len(classes), len(sampled), len(residual.terms)))
