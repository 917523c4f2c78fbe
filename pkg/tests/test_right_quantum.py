"""Relations of the right-quantum algebra and the ideal membership oracle."""

import math
from fractions import Fraction
from itertools import product
from random import Random

import pytest

from qmm import (
    IdealOracle,
    NCPoly,
    ParamMode,
    QMatrix,
    QuantumSpace,
    TensorPoly,
    build_relations,
    column_reduce,
    comultiply,
    counit,
    counit_left,
    is_right_quantum,
    qdet,
    specialization_draws,
)
from qmm.free_algebra import word_rank


def brute_member(p, n, mode, assignment):
    """Independent span oracle: the full u*r*v spanning set at one rational
    specialization, no column preprocessing, dense elimination over Q."""
    degree = p.homogeneous_degree()
    if p.is_zero():
        return True
    if degree < 2:
        return False
    size = n * n
    rows = []
    for rel in build_relations(n, mode):
        for left_len in range(degree - 1):
            for u in product(range(size), repeat=left_len):
                for v in product(range(size), repeat=degree - 2 - left_len):
                    row = {}
                    for w, c in rel.terms.items():
                        row[word_rank(bytes(u) + w + bytes(v), size)] = c.specialize(assignment)
                    rows.append(row)
    pivots = {}

    def insert(row):
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = min(row)
            if lead not in pivots:
                pivots[lead] = row
                return True
            other = pivots[lead]
            factor = row[lead] / other[lead]
            for k, v in other.items():
                nv = row.get(k, 0) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    for row in rows:
        insert(row)
    return not insert({word_rank(w, size): c.specialize(assignment) for w, c in p.terms.items()})


def test_relation_counts():
    for n in (1, 2, 3, 4):
        rels = build_relations(n, ParamMode.multi(n))
        pairs = math.comb(n, 2)
        assert len(rels) == n * pairs + pairs * pairs
        assert len(rels) == pairs * math.comb(n + 1, 2)
    assert build_relations(1, ParamMode.multi(1)) == []
    assert len(build_relations(2, ParamMode.multi(2))) == 3
    assert len(build_relations(3, ParamMode.multi(3))) == 18


def test_relations_are_homogeneous_degree_two():
    for rel in build_relations(3, ParamMode.multi(3)):
        assert rel.homogeneous_degree() == 2


def test_column_reduce_sorts_equal_uppers():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    # z_2^1 z_1^1 rewrites to q12 z_1^1 z_2^1
    got = column_reduce(z(2, 1) * z(1, 1))
    assert got == (z(1, 1) * z(2, 1)).scale(mode.q(1, 2))
    # column relations rewrite to zero outright
    for rel in build_relations(2, mode)[:2]:
        assert column_reduce(rel).is_zero()


def test_generators_are_members():
    mode = ParamMode.multi(2)
    oracle = IdealOracle(2, mode, exact=False, seed=0, draws=3)
    for rel in build_relations(2, mode):
        assert oracle.contains(rel)


def test_commutator_is_not_a_member():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    comm = z(1, 1) * z(2, 2) - z(2, 2) * z(1, 1)
    assert not IdealOracle(2, mode, exact=False, seed=0, draws=3).contains(comm)
    assert not IdealOracle(2, mode, exact=True).contains(comm)


def test_degree_two_master_combination_is_member():
    # chi_{A_2} - chi_{A_1} chi_{A!*_1} + chi_{A!*_2}, the degree-2 identity
    from qmm import bos_series, ferm_series

    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    bos = bos_series(sp, 2).body
    ferm = ferm_series(sp, 2).body
    coeff = bos[2] + bos[1] * ferm[1] + ferm[2]
    assert IdealOracle(2, mode, exact=True).contains(coeff)
    assert brute_member(coeff, 2, mode, dict(zip(mode.variables, [Fraction(5)])))


def test_membership_below_degree_two():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    oracle = IdealOracle(2, mode, exact=True)
    assert oracle.contains(NCPoly.zero(sp.z, mode))
    assert not oracle.contains(NCPoly.one(sp.z, mode))
    assert not oracle.contains(sp.z_gen(1, 2))


def test_membership_rejects_inhomogeneous():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    oracle = IdealOracle(2, mode, exact=True)
    with pytest.raises(ValueError):
        oracle.contains(NCPoly.one(sp.z, mode) + sp.z_gen(1, 1))


def test_membership_is_linear():
    rng = Random(99)
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    oracle = IdealOracle(2, mode, exact=False, seed=3, draws=3)
    rels = build_relations(2, mode)
    z = sp.z_gen
    gens = [z(i, j) for i in (1, 2) for j in (1, 2)]
    for _ in range(15):
        a, b = rng.choice(rels), rng.choice(rels)
        u, v = rng.choice(gens), rng.choice(gens)
        member = u * a + (b * v).scale(mode.q(1, 2) ** rng.randint(-2, 2))
        assert oracle.contains(member)


def test_two_sided_stability():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    oracle = IdealOracle(2, mode, exact=False, seed=1, draws=3)
    z = sp.z_gen
    for rel in build_relations(2, mode):
        assert oracle.contains(rel)
        for i in (1, 2):
            for j in (1, 2):
                assert oracle.contains(z(i, j) * rel)
                assert oracle.contains(rel * z(i, j))


def test_specialized_and_exact_agree():
    # every verdict compared across both strategies, n=2, degrees <= 4
    rng = Random(7)
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    exact = IdealOracle(2, mode, exact=True)
    spec = IdealOracle(2, mode, exact=False, seed=11, draws=3)
    rels = build_relations(2, mode)
    cases = []
    for rel in rels:
        cases.append(rel)
        cases.append(z(1, 2) * rel)
        cases.append(rel * z(2, 1))
        cases.append(z(1, 1) * rel * z(2, 2))
    cases.append(z(1, 1) * z(2, 2) - z(2, 2) * z(1, 1))
    for _ in range(10):
        word = [rng.choice([(1, 1), (1, 2), (2, 1), (2, 2)]) for _ in range(rng.randint(2, 4))]
        poly = NCPoly.monomial(sp.z, mode, sp.z.z_word(word))
        cases.append(poly)
    for case in cases:
        assert exact.contains(case) == spec.contains(case)


def test_oracle_matches_brute_force_span():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    assignment = dict(zip(mode.variables, [Fraction(7)]))
    exact = IdealOracle(2, mode, exact=True)
    rels = build_relations(2, mode)
    cases = [
        rels[2],
        z(1, 1) * rels[2],
        rels[0] * z(1, 2) + z(2, 1) * rels[1],
        z(1, 1) * z(2, 2) - z(2, 2) * z(1, 1),
        z(1, 2) * z(2, 1) * z(1, 1),
        (z(1, 1) * z(2, 2) - z(2, 2) * z(1, 1)).scale(mode.q(1, 2)) - rels[2],
    ]
    for case in cases:
        assert exact.contains(case) == brute_member(case, 2, mode, assignment)


def test_qdet_singleton_and_pair():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    Z = QMatrix.generic(2, mode)
    assert qdet(Z, (1,)) == z(1, 1)
    assert qdet(Z, (2,)) == z(2, 2)
    expected = z(1, 1) * z(2, 2) - (z(2, 1) * z(1, 2)).scale(mode.q(1, 2).inv())
    assert qdet(Z, (1, 2)) == expected


def test_qdet_single_parameter():
    mode = ParamMode.single()
    sp = QuantumSpace(2, mode)
    z = sp.z_gen
    got = qdet(QMatrix.generic(2, mode), (1, 2))
    expected = z(1, 1) * z(2, 2) - (z(2, 1) * z(1, 2)).scale(mode.q(1, 2).inv())
    assert got == expected


def test_qdet_subset_uses_subset_parameters():
    mode = ParamMode.multi(3)
    det = qdet(QMatrix.generic(3, mode), (1, 3))
    # only the q13 slot may carry a nonzero exponent
    slot = mode.variables.index((1, 3))
    for coeff in det.terms.values():
        for exps in coeff.terms:
            for k, e in enumerate(exps):
                assert e == 0 or k == slot


def test_comultiply_generator():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    delta = comultiply(sp.z_gen(1, 1))
    z = sp.z
    assert delta.terms == {
        (z.z_word([(1, 1)]), z.z_word([(1, 1)])): mode.one(),
        (z.z_word([(1, 2)]), z.z_word([(2, 1)])): mode.one(),
    }


def test_counit_is_counit_for_delta():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    for i in (1, 2):
        for j in (1, 2):
            gen = sp.z_gen(i, j)
            assert counit_left(comultiply(gen)) == gen
    assert counit(sp.z_gen(1, 1)) == mode.one()
    assert counit(sp.z_gen(1, 2)).is_zero()


def test_comultiply_empty_word():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    delta = comultiply(NCPoly.one(sp.z, mode))
    assert delta.terms == {(b"", b""): mode.one()}


def test_comultiply_is_algebra_map():
    rng = Random(5)
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    gens = [sp.z_gen(i, j) for i in (1, 2) for j in (1, 2)]
    for _ in range(10):
        a = rng.choice(gens) * rng.choice(gens)
        b = rng.choice(gens)
        assert comultiply(a * b) == comultiply(a) * comultiply(b)


def test_delta_respects_relations():
    mode = ParamMode.multi(2)
    exact = IdealOracle(2, mode, exact=True)
    spec = IdealOracle(2, mode, exact=False, seed=0, draws=3)
    for rel in build_relations(2, mode):
        assert exact.contains_tensor(comultiply(rel))
        assert spec.contains_tensor(comultiply(rel))


def test_determinant_is_group_like():
    mode = ParamMode.multi(2)
    det = qdet(QMatrix.generic(2, mode), (1, 2))
    lhs = comultiply(det) - TensorPoly.outer(det, det)
    assert IdealOracle(2, mode, exact=True).contains_tensor(lhs)


def test_non_group_like_control():
    mode = ParamMode.multi(2)
    sp = QuantumSpace(2, mode)
    p = sp.z_gen(1, 1) * sp.z_gen(2, 2)
    lhs = comultiply(p) - TensorPoly.outer(p, p)
    assert not IdealOracle(2, mode, exact=True).contains_tensor(lhs)


def test_is_right_quantum_all_q_one():
    mode = ParamMode.numeric(2, {(1, 2): 1})
    M = QMatrix(2, mode, [[2, 3], [Fraction(1, 2), 5]])
    assert is_right_quantum(M)


def test_is_right_quantum_diagonal_generic():
    mode = ParamMode.multi(2)
    a = mode.q(1, 2) + mode.one()
    b = mode.q(1, 2) ** 2
    M = QMatrix(2, mode, [[a, mode.zero()], [mode.zero(), b]])
    assert is_right_quantum(M)


def test_is_right_quantum_ones_matrix_fails():
    mode = ParamMode.numeric(2, {(1, 2): 2})
    M = QMatrix(2, mode, [[1, 1], [1, 1]])
    assert not is_right_quantum(M)


def test_generic_matrix_is_right_quantum_by_construction():
    assert is_right_quantum(QMatrix.generic(3, ParamMode.multi(3)))


def test_specialization_draws_are_distinct_odd_primes():
    mode = ParamMode.multi(3)
    for draw in specialization_draws(mode, 5, seed=123):
        values = list(draw.values())
        assert len(set(values)) == len(values)
        for v in values:
            assert v.denominator == 1 and int(v) in range(3, 98)
    # replayable
    assert specialization_draws(mode, 3, 9) == specialization_draws(mode, 3, 9)


def test_reduced_echelon_invariant():
    # every pivot column appears in exactly one basis row
    mode = ParamMode.multi(2)
    oracle = IdealOracle(2, mode, exact=False, seed=0, draws=1)
    basis = oracle.basis(3, 0)
    for p in basis.pivots:
        for other, row in basis.rows.items():
            if other != p:
                assert p not in row


def test_basis_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("QMM_CACHE_DIR", str(tmp_path))
    mode = ParamMode.multi(2)
    IdealOracle._memory_cache.clear()
    oracle = IdealOracle(2, mode, exact=False, seed=42, draws=1)
    first = oracle.basis(3, 0)
    files = list(tmp_path.iterdir())
    assert files
    IdealOracle._memory_cache.clear()
    again = IdealOracle(2, mode, exact=False, seed=42, draws=1).basis(3, 0)
    assert again.pivots == first.pivots
    assert again.rows == first.rows


def test_concurrent_queries_share_one_basis():
    import threading

    mode = ParamMode.multi(2)
    IdealOracle._memory_cache.clear()
    oracle = IdealOracle(2, mode, exact=False, seed=17, draws=2)
    rels = build_relations(2, mode)
    results = []

    def worker():
        results.append(all(oracle.contains(r * r) for r in rels))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [True] * 8
    assert not IdealOracle._build_locks
