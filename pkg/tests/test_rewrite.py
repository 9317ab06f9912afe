import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brstkit import catalog
from brstkit.coeff import ParameterSet
from brstkit.ncpoly import Alphabet, Poly, constraint
from brstkit.rewrite import (
    STRATEGIES,
    OrientationError,
    RewriteRule,
    RewriteSystem,
    StepLimitExceeded,
    confluence_check,
    orient,
    overlaps,
    reduce,
    step_limit,
)

from strategies import homogeneous_polys, polys

QLA = catalog.qla_omega()
FAM = catalog.family_omega()
FAM_MOD = catalog.family_modified_omega()


def test_orient_constraint_relation():
    rhs = QLA.parse("chi1*chi3 - a*chi1^2 - C*chi2")
    rule = orient(QLA.alphabet.word("chi3", "chi1"), rhs)
    assert str(rule) == "chi3*chi1 -> chi1*chi3 - a*chi1^2 - C*chi2"


def test_orient_ghost_square():
    rule = orient(QLA.alphabet.word("c1", "c1"), QLA.parse("a*c3*c1"))
    assert rule.lhs == QLA.alphabet.word("c1", "c1")


def test_orient_rejects_order_violation():
    # chi1 < chi3, so chi1*chi3 is smaller than chi3*chi1
    with pytest.raises(OrientationError) as info:
        orient(QLA.alphabet.word("chi1", "chi3"), QLA.parse("chi3*chi1 - a*chi1^2"))
    assert info.value.term == "chi3*chi1"


def test_orient_under_reversed_precedence():
    ps = ParameterSet(["a"])
    rev = Alphabet([constraint("chi3", 0), constraint("chi1", 1)])
    rhs = Poly(rev, {rev.word("chi3", "chi1"): ps.one}, ps)
    assert orient(rev.word("chi1", "chi3"), rhs).lhs == rev.word("chi1", "chi3")
    with pytest.raises(OrientationError):
        orient(rev.word("chi3", "chi1"), Poly(rev, {rev.word("chi1", "chi3"): ps.one}, ps))


def test_orient_rejects_ghost_mixing_and_short_lhs():
    with pytest.raises(OrientationError):
        orient(QLA.alphabet.word("b1", "c1"), QLA.parse("c1"))
    with pytest.raises(OrientationError):
        orient(QLA.alphabet.word("chi1"), QLA.parse("1"))


def test_reduce_examples():
    r = reduce(QLA.parse("chi3*chi1"), QLA.rules())
    assert str(r.normal_form) == "chi1*chi3 - a*chi1^2 - C*chi2"
    assert r.steps == 1
    n = reduce(QLA.parse("chi1*c1*b2"), QLA.rules())
    assert n.normal_form == QLA.parse("chi1*c1*b2") and n.steps == 0
    q = QLA.parse(catalog.QLA_CHARGE)
    assert not reduce(q * q, QLA.rules()).normal_form
    assert reduce(FAM.parse("bJ*cJ"), FAM.rules()).normal_form == FAM.parse("1 - cJ*bJ")


def test_report_counts_rules():
    r = reduce(QLA.parse("chi3*chi1*chi1"), QLA.rules())
    assert sum(r.rules_fired.values()) == r.steps
    assert r.to_dict()["steps"] == r.steps


def test_step_limit_error_carries_partial_state():
    q = QLA.parse(catalog.QLA_CHARGE)
    with pytest.raises(StepLimitExceeded) as info:
        reduce(q * q, QLA.rules(), step_limit=3)
    assert info.value.steps == 3 and info.value.partial
    with step_limit(3), pytest.raises(StepLimitExceeded):
        QLA.reduce(q * q)
    assert not QLA.reduce(q * q)


def test_misoriented_rules_hit_step_limit():
    ps = ParameterSet(())
    a = Alphabet([constraint("x", 0), constraint("y", 1)])
    loop = [
        RewriteRule(a.word("x", "y"), Poly(a, {a.word("y", "x"): ps.one}, ps), 0),
        RewriteRule(a.word("y", "x"), Poly(a, {a.word("x", "y"): ps.one}, ps), 1),
    ]
    with pytest.raises(StepLimitExceeded):
        reduce(Poly(a, {a.word("x", "y"): ps.one}, ps), loop, step_limit=100)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        reduce(QLA.gen("chi1"), QLA.rules(), strategy="sideways")


# -- overlaps ---------------------------------------------------------------


def brute_force_overlaps(system: RewriteSystem, alphabet, max_degree):
    """Pairs of rule matches that overlap and jointly cover a whole word."""
    found = set()
    for n in range(3, max_degree + 1):
        for w in itertools.product(range(len(alphabet)), repeat=n):
            ms = [
                (i, r.id, i + len(r.lhs))
                for r in system.rules
                for i in range(n - len(r.lhs) + 1)
                if w[i : i + len(r.lhs)] == r.lhs
            ]
            for m1, m2 in itertools.combinations(sorted(ms), 2):
                if m2[0] < m1[2] and m1[0] == 0 and max(m1[2], m2[2]) == n:
                    found.add((w, (m1[1], m1[0]), (m2[1], m2[0])))
    return found


def as_set(pairs):
    return {(cp.word, cp.first, cp.second) for cp in pairs}


def test_overlap_word_present():
    constraints = QLA.with_relations(QLA.sector(["chi1", "chi2", "chi3"]))
    words = {cp.word for cp in overlaps(constraints.rules(), 3)}
    assert QLA.alphabet.word("chi3", "chi2", "chi1") in words


def test_overlaps_of_empty_rule_set():
    assert overlaps([], 3) == []
    assert confluence_check([], 3).passed


def test_overlap_degree_must_be_three():
    with pytest.raises(ValueError):
        overlaps(QLA.rules(), 2)


def test_degree_three_overlaps_match_brute_force():
    got = overlaps(QLA.rules(), 3)
    assert as_set(got) == brute_force_overlaps(QLA.rules(), QLA.alphabet, 3)
    # frozen from the brute-force enumeration above
    assert len(got) == 138


def test_confluence_examples():
    for p in (QLA, FAM, FAM_MOD, catalog.qla_omega(chi0_generator=True)):
        r = confluence_check(p.rules(), 3)
        assert r.passed, [cp.render(p.alphabet) for cp, _, _ in r.unresolved]


def test_inconsistent_rules_are_reported():
    ps = ParameterSet(())
    a = Alphabet([constraint("x", 0), constraint("y", 1)])
    rules = [
        orient(a.word("y", "x"), Poly(a, {(): ps.one}, ps), rule_id=0),
        orient(a.word("x", "y"), Poly(a, {}, ps), rule_id=1),
        orient(a.word("x", "x"), Poly(a, {a.word("x"): ps.one}, ps), rule_id=2),
    ]
    r = confluence_check(rules, 3)
    assert not r.passed and r.unresolved
    cp, nf1, nf2 = r.unresolved[0]
    assert nf1 != nf2


# -- properties ---------------------------------------------------------------

PRESENTATIONS = {"qla": QLA, "family": FAM, "family-modified": FAM_MOD}


@settings(max_examples=150)
@given(st.sampled_from(sorted(PRESENTATIONS)), st.data())
def test_termination_and_idempotence(name, data):
    p = PRESENTATIONS[name]
    f = data.draw(polys(p, max_len=6))
    r = reduce(f, p.rules(), step_limit=10**5)
    assert all(p.rules().is_normal(w) for w in r.normal_form.terms)
    assert reduce(r.normal_form, p.rules()).normal_form == r.normal_form
    assert reduce(r.normal_form, p.rules()).steps == 0


@settings(max_examples=150)
@given(st.sampled_from(sorted(PRESENTATIONS)), st.sampled_from(STRATEGIES), st.integers(0, 99), st.data())
def test_strategy_independence(name, strategy, seed, data):
    p = PRESENTATIONS[name]
    f = data.draw(polys(p, max_len=5))
    base = reduce(f, p.rules(), strategy="leftmost").normal_form
    assert reduce(f, p.rules(), strategy=strategy, seed=seed).normal_form == base


@settings(max_examples=150)
@given(st.sampled_from(sorted(PRESENTATIONS)), st.integers(-2, 2), st.data())
def test_ghost_number_conserved(name, g, data):
    p = PRESENTATIONS[name]
    f = data.draw(homogeneous_polys(p, g, max_len=5))
    nf = p.reduce(f)
    if nf:
        assert nf.ghost_number() == g
