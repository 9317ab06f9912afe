import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brstkit import catalog
from brstkit.brst import (
    BrstCharge,
    GhostAlgebraError,
    GhostNames,
    GradingError,
    beta_special,
    build_c0,
    build_ghost_presentation,
    build_omega,
    build_Q,
    canonical_omega,
    double_complex_check,
    involution,
    solve_brst_ansatz,
    t_parameter,
    tilde_map,
    verify_nilpotent,
)
from brstkit.brst.basis import (
    BasisChange,
    BasisChangeError,
    apply_basis_change,
    derived_presentation,
    presentations_equivalent,
)
from brstkit.brst.fock import FockState, fock_expand, fock_matrix
from brstkit.brst.oracle import (
    SparseMatrix,
    commutator,
    fock_oracle,
    oracle_representation,
    qla_ghost_matrices,
    su2_representation,
)
from brstkit.coeff import ParameterSet, Scalar
from brstkit.demos import RENAME_FAMILY_TO_QLA
from brstkit.ybtensor import StructureData, TensorSquareOp

from strategies import polys

S = catalog.qla_structure()
PS = S.params
P3 = TensorSquareOp.permutation(3, PS, 1)
QLA = catalog.qla_omega()
FAM = catalog.family_omega()
FAM_MOD = catalog.family_modified_omega()
EMPTY = ParameterSet(())
Q_FAM = FAM.reduce(FAM.parse(catalog.FAMILY_CHARGE))


def levi_civita(i, j, k):
    return {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (2, 1, 3): -1, (1, 3, 2): -1, (3, 2, 1): -1}.get((i, j, k), 0)


def su2_structure():
    cc = {(k, i, j): levi_civita(i, j, k) for i, j, k in itertools.product((1, 2, 3), repeat=3)}
    return StructureData(3, TensorSquareOp.permutation(3, EMPTY, 1), cc, EMPTY)


def abelian_structure():
    return StructureData(3, TensorSquareOp.permutation(3, EMPTY, 1), {}, EMPTY)


def constraints_of(p):
    names = p.metadata["names"]
    return [p.gen(x) for x in names.constraints]


# -- ghost presentations ----------------------------------------------------------


def test_ghost_presentation_reproduces_literal_relations():
    built = build_ghost_presentation(S, P3, chi0="C", constraints=True)
    assert built.render_relations() == QLA.render_relations()


def test_canonical_ghosts_anticommute():
    p = build_ghost_presentation(abelian_structure(), P3, mode="canonical")
    for i, j in itertools.product((1, 2, 3), repeat=2):
        ci, bj = p.gen(f"c{i}"), p.gen(f"b{j}")
        delta = 1 if i == j else 0
        assert p.reduce(ci * bj + bj * ci) == p.one() * delta
        assert not p.reduce(ci * p.gen(f"c{j}") + p.gen(f"c{j}") * ci)


def test_inconsistent_twist_is_rejected():
    with pytest.raises(GhostAlgebraError, match="phi-C"):
        build_ghost_presentation(S, TensorSquareOp.identity(3, PS, 1))


# -- c0 and Q -------------------------------------------------------------------------


def test_c0_for_three_generator_algebra():
    c0 = build_c0(S, P3, QLA, chi0="C")
    assert c0 == QLA.reduce(QLA.parse("-c1*c3*C*b2"))
    assert c0.ghost_number() == 1


def test_c0_vanishes_without_structure_constants():
    s0 = StructureData(3, S.sigma, {}, PS)
    assert not build_c0(s0, P3, QLA, chi0="C")


def test_c0_with_central_generator():
    p = catalog.qla_omega(chi0_generator=True)
    c0 = build_c0(S, P3, p)
    Q = build_Q(constraints_of(p), c0, presentation=p)
    assert c0 == p.reduce(p.parse("-c1*c3*chi0*b2"))
    assert not verify_nilpotent(Q)


def test_phi_equal_sigma_gives_nilpotent_charge():
    p = build_omega(S, S.sigma, chi0="C")
    Q = build_Q(constraints_of(p), build_c0(S, S.sigma, p, chi0="C"), presentation=p)
    assert not verify_nilpotent(Q)


def test_build_Q_examples():
    Q = build_Q(constraints_of(QLA), build_c0(S, P3, QLA, chi0="C"), presentation=QLA)
    assert Q.q == QLA.reduce(QLA.parse(catalog.QLA_CHARGE))
    assert Q.provenance == "proposition"
    assert not verify_nilpotent(Q)

    ab = build_omega(abelian_structure())
    Qa = build_Q(constraints_of(ab), ab.zero(), presentation=ab)
    assert Qa.q == ab.reduce(ab.parse("c1*chi1 + c2*chi2 + c3*chi3"))
    assert not verify_nilpotent(Qa)

    c0 = FAM_MOD.parse("-a1*cJ*cW*bT")
    Qm = build_Q([FAM_MOD.gen(x) for x in "JTW"], c0, presentation=FAM_MOD)
    assert Qm.q == FAM_MOD.reduce(FAM_MOD.parse(catalog.FAMILY_CHARGE_NEW_GHOSTS))
    assert not verify_nilpotent(Qm)


def test_grading_errors():
    with pytest.raises(GradingError):
        build_Q(constraints_of(QLA), QLA.parse("c1*b2"), presentation=QLA)
    with pytest.raises(GradingError):
        build_Q([QLA.gen("c1")] * 3, QLA.zero(), presentation=QLA)
    with pytest.raises(GradingError):
        BrstCharge(QLA.parse("c1*c2"), QLA)


def test_su2_charge_nilpotent_in_engine_and_matrices():
    s = su2_structure()
    p = build_omega(s, chi0=1)
    Q = build_Q(constraints_of(p), build_c0(s, TensorSquareOp.permutation(3, EMPTY, 1), p, chi0=1), presentation=p)
    want = p.parse("c1*chi1 + c2*chi2 + c3*chi3 + c2*c1*b3 - c3*c1*b2 + c3*c2*b1")
    assert Q.q == p.reduce(want)
    assert not verify_nilpotent(Q)
    rep = su2_representation()
    assert all(rep.evaluate(r).is_zero() for r in p.relation_polys())
    m = rep.evaluate(Q.q)
    assert not m.is_zero() and (m @ m).is_zero()


# -- nilpotency of the family charge ------------------------------------------------------


def test_family_charge_nilpotent():
    assert not verify_nilpotent(BrstCharge(Q_FAM, FAM))
    mu = ParameterSet(["a1", "a2", "a3", "mu"]).symbol("mu")
    q = Q_FAM + (FAM.gen("J") * FAM.gen("cW")).scale(mu)
    assert not verify_nilpotent(BrstCharge(FAM.reduce(q), FAM))


def test_truncated_charge_detected_in_engine_and_oracle():
    broken = FAM.reduce(FAM.parse(catalog.FAMILY_CHARGE.replace(" + a2*J*cW*cJ*bJ", "")))
    res = verify_nilpotent(BrstCharge(broken, FAM))
    assert res
    rep = oracle_representation(1, 1, 1, 5)
    assert not rep.vanishes(res)
    assert not rep.vanishes(broken * broken)


# -- ansatz solver -----------------------------------------------------------------


def test_ansatz_reproduces_family_charge():
    ans = solve_brst_ansatz(FAM)
    assert ans.ok and ans.charge.q == Q_FAM
    assert ans.charge.provenance == "ansatz-solver"
    # separately closed directions are reported, not added
    assert {k: len(v) for k, v in ans.ambiguity.items()} == {1: 9, 2: 1}
    for k, vs in ans.ambiguity.items():
        for v in vs:
            assert v.ghost_number() == 1


def test_ansatz_abelian_has_no_corrections():
    ab = build_omega(abelian_structure())
    ans = solve_brst_ansatz(ab)
    assert ans.ok and ans.charge.q == ab.reduce(ab.parse("c1*chi1 + c2*chi2 + c3*chi3"))


def test_ansatz_su2():
    p = build_omega(su2_structure(), chi0=1)
    ans = solve_brst_ansatz(p)
    assert ans.ok and not verify_nilpotent(ans.charge)
    assert ans.charge.q == p.reduce(p.parse("c1*chi1 + c2*chi2 + c3*chi3 + c2*c1*b3 - c3*c1*b2 + c3*c2*b1"))
    m = su2_representation().evaluate(ans.charge.q)
    assert (m @ m).is_zero()


def test_ansatz_on_canonical_omega_of_constraints():
    names = catalog.family_names()
    p = canonical_omega(catalog.family_constraints(), names)
    assert p.render_relations() == FAM.render_relations()


# -- basis changes ---------------------------------------------------------------------


GHOST_CHANGE = BasisChange.from_text(FAM, catalog.FAMILY_GHOST_MAP)


def test_ghost_change_gives_conventional_charge():
    assert not GHOST_CHANGE.certificate(FAM_MOD)
    got = apply_basis_change(Q_FAM, GHOST_CHANGE, FAM_MOD)
    assert got == FAM_MOD.reduce(FAM_MOD.parse(catalog.FAMILY_CHARGE_NEW_GHOSTS))


def test_identity_change_is_fixed_point():
    bc = BasisChange.from_text(FAM, {})
    assert apply_basis_change(Q_FAM, bc, FAM) == Q_FAM


def test_wrong_declared_inverse_is_rejected():
    bc = BasisChange.from_text(FAM, {"cJ": "2*cJ"}, inverse={"cJ": "cJ"}, target=FAM)
    assert bc.certificate(FAM)
    with pytest.raises(BasisChangeError):
        apply_basis_change(Q_FAM, bc, FAM)


def test_image_ghost_number_is_checked():
    with pytest.raises(BasisChangeError):
        BasisChange.from_text(FAM, {"cJ": "cJ*cT"})


@settings(max_examples=60)
@given(st.data())
def test_basis_change_is_homomorphism(data):
    p = data.draw(polys(FAM, max_terms=3, max_len=3))
    q = data.draw(polys(FAM, max_terms=3, max_len=3))
    lhs = apply_basis_change(FAM.reduce(p * q), GHOST_CHANGE, FAM_MOD)
    rhs = FAM_MOD.reduce(apply_basis_change(p, GHOST_CHANGE, FAM_MOD) * apply_basis_change(q, GHOST_CHANGE, FAM_MOD))
    assert lhs == rhs


def test_derived_ghost_relations():
    d = derived_presentation(FAM, GHOST_CHANGE)
    assert d.quadratic
    assert d.presentation.render_relations() == FAM_MOD.render_relations()


def test_antighost_change_onto_three_generator_ghosts():
    sl = FAM_MOD.substitute({"a1": "C", "a2": "a", "a3": "a"})
    amap = {k: v.replace("a3", "a") for k, v in catalog.FAMILY_ANTIGHOST_MAP.items()}
    d = derived_presentation(sl, BasisChange.from_text(sl, amap))
    assert d.quadratic
    assert presentations_equivalent(d.presentation, catalog.qla_omega(), RENAME_FAMILY_TO_QLA) == []
    # without the anti-ghost change the ideals differ
    assert presentations_equivalent(sl, catalog.qla_omega(), RENAME_FAMILY_TO_QLA)


def test_generic_beta_makes_relations_cubic():
    src = catalog.family_constraints()
    ps = src.params.extend(["beta"])
    a1, a2, a3, beta = (ps.symbol(x) for x in ("a1", "a2", "a3", "beta"))
    d = derived_presentation(src, catalog.beta_shift(src, beta))
    assert d.closure_degree == 3 and d.presentation is None
    cubic = d.coefficient("T", "W", "J^3")
    assert cubic == beta * (a2 * 2 - a3 - beta * a1 * 2)
    assert cubic.substitute({"beta": 0}).is_zero()
    assert cubic.substitute({"beta": str(beta_special(a1, a2, a3))}).is_zero()


def test_special_beta_gives_tilde_coefficients():
    src = catalog.family_constraints()
    a1, a2, a3 = src.params.symbols()
    d = derived_presentation(src, catalog.beta_shift(src, beta_special(a1, a2, a3)))
    assert d.quadratic
    got = (d.coefficient("J", "W", "T"), d.coefficient("J", "W", "J^2"), d.coefficient("T", "W", "J*T"))
    assert got == (a1, a3 / 2, a2 * 2) == tilde_map(a1, a2, a3)
    assert not d.bracket("J", "T")


def test_gamma_shift_relations():
    g = derived_presentation(catalog.qla_constraints(), catalog.gamma_shift())
    ps = catalog.qla_constraints().params
    alpha, C = ps.symbol("a"), ps.symbol("C")
    assert g.quadratic
    assert not g.bracket("chi1", "chi2")
    assert g.bracket("chi1", "chi3") == g.presentation.parse("a/2*chi1^2 + C*chi2")
    assert g.bracket("chi2", "chi3") == g.presentation.parse("2*a*chi1*chi2")
    t0 = t_parameter(C, alpha, alpha)
    t1 = t_parameter(C, alpha / 2, alpha * 2)
    assert t0 == Scalar(2) and t1 == involution(t0) == Scalar(Fraction(1, 2))


# -- double complex and involution -------------------------------------------------------


def second_charge(coeffs=None):
    a1, a2, a3 = FAM.params.symbols()
    t_expr = FAM.gen("T") + FAM.parse("J^2").scale(beta_special(a1, a2, a3))
    return BrstCharge(catalog.family_charge(FAM, coeffs or tilde_map(a1, a2, a3), t_expr), FAM)


def test_double_complex():
    Q = BrstCharge(catalog.family_charge(FAM), FAM)
    assert Q.q == Q_FAM
    rep = double_complex_check(Q, second_charge())
    assert rep.passed, [(n, str(r)) for n, r in rep.items()]


def test_double_complex_degenerate():
    Q = BrstCharge(Q_FAM, FAM)
    assert double_complex_check(Q, Q).passed


def test_wrong_coefficient_breaks_anticommutator():
    a1, a2, a3 = FAM.params.symbols()
    Q = BrstCharge(Q_FAM, FAM)
    rep = double_complex_check(Q, second_charge((a1, a3, a2 * 2)))
    assert rep.anticommutator
    at_one = rep.anticommutator.substitute({"a1": 1, "a2": 1, "a3": 1})
    assert at_one
    assert not oracle_representation(1, 1, 1, 6).vanishes(rep.anticommutator)


def test_involution():
    a1, a2, a3 = FAM.params.symbols()
    t = t_parameter(a1, a2, a3)
    assert involution(t) == a3 / (a2 * 2)
    assert t_parameter(*tilde_map(a1, a2, a3)) == involution(t)
    assert tilde_map(*tilde_map(a1, a2, a3)) == (a1, a2, a3)
    assert involution(1) == Scalar(1)
    with pytest.raises(ZeroDivisionError):
        involution(0)


# -- Fock space ------------------------------------------------------------------------


Q_QLA = QLA.reduce(QLA.parse(catalog.QLA_CHARGE))


def test_fock_lowest_equations():
    eqs = fock_expand(BrstCharge(Q_QLA, QLA))
    lowest = {e.monomial: e for e in eqs if e.ghost_number == 1}
    for i in (1, 2, 3):
        e = lowest[f"c{i}"]
        assert list(e.terms) == ["psi_0"] and str(e.terms["psi_0"]) == f"chi{i}"


def test_fock_zero_charge():
    assert fock_expand(BrstCharge(QLA.zero(), QLA)) == []


def test_fock_system_is_graded_and_bounded():
    eqs = fock_expand(BrstCharge(Q_QLA, QLA))
    assert len(eqs) <= 8
    for e in eqs:
        for label, coeff in e.terms.items():
            assert coeff.ghost_number() == 0
            # Q raises ghost number by one
            assert len(label) - len("psi_") <= e.ghost_number or label == "psi_0"


def test_fock_against_matrix_oracle():
    eqs = fock_expand(BrstCharge(Q_QLA, QLA))
    orc = fock_oracle(Q_QLA, qla_ghost_matrices(PS.symbol("a")), ["c1", "c2", "c3"], ["chi1", "chi2", "chi3"])
    st_ = FockState(QLA.metadata["names"])
    orc = {(st_.monomial_name(L), st_.label(K)): v for (L, K), v in orc.items()}
    assert fock_matrix(eqs) == orc


def test_qla_ghost_matrices_satisfy_relations():
    ps = ParameterSet(["a"])
    mats = qla_ghost_matrices(ps.symbol("a"))
    ghost_rels = [r for r in QLA.relations if not any(QLA.alphabet.names[x].startswith("chi") for x in r.lhs)]
    for poly in (r.as_poly() for r in ghost_rels):
        total = SparseMatrix.zero(8)
        for w, c in poly.terms.items():
            m = SparseMatrix.identity(8)
            for x in w:
                m = m @ mats[QLA.alphabet.names[x]]
            total = total + m.scale(c)
        assert total.is_zero(), str(poly)


# -- oracle representation ----------------------------------------------------------------


def test_oracle_constraint_relations():
    rep = oracle_representation(Fraction(2, 3), -1, 5, 5)
    J, T, W = (rep.constraint_ops[x] for x in "JTW")
    assert commutator(J, T).is_zero()
    src = catalog.family_constraints()
    for r in src.relation_polys():
        assert rep.vanishes(r.transfer(FAM.alphabet))


def test_oracle_rejects_small_truncation():
    with pytest.raises(ValueError):
        oracle_representation(1, 1, 1, 2)


def test_oracle_charge_squares_to_zero():
    rep = oracle_representation(1, 1, 1, 5)
    m = rep.evaluate(Q_FAM)
    assert (m @ m).zero_on(rep.interior(2))


def random_points(seed, n):
    rng = random.Random(seed)
    vals = [Fraction(k, d) for k in range(-5, 6) if k for d in (1, 2, 3)]
    return [tuple(rng.choice(vals) for _ in range(3)) for _ in range(n)]


@settings(max_examples=12)
@given(st.sets(st.integers(0, 5), max_size=2), st.integers(0, 10**6))
def test_engine_and_oracle_agree(dropped, seed):
    terms = sorted(Q_FAM.terms.items())
    keep = {w: c for k, (w, c) in enumerate(terms) if k not in dropped}
    q = FAM.reduce(type(Q_FAM)(FAM.alphabet, keep, FAM.params))
    res = FAM.reduce(q * q)
    reps = [oracle_representation(*pt, 5) for pt in random_points(seed, 5)]
    if not res:
        assert all(r.vanishes(q * q) for r in reps[:3])
    else:
        assert any(not r.vanishes(res) for r in reps)
