import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from yangian.errors import SubspaceNotInvariant
from yangian.linalg import QMatrix, kron_vec, unit_vector
from yangian.representation import (
    GENERATOR_NAMES,
    YModule,
    dual,
    evaluation_matrix,
    evaluation_module,
    generator_matrix,
    intertwiners,
    is_invariant,
    is_isomorphic,
    perturbed,
    quotient,
    restrict_module,
    same_generators,
    submodule,
    tensor,
    trivial_module,
    twist,
    twist_level,
    verify_relations,
)
from yangian.scalar import Q

params = st.sampled_from(["0", "1", "-2", "1/2", "7/3", "-5/4"])


def dense_q(m: QMatrix):
    return [[oracles.sp.Rational(str(x)) for x in row] for row in m.to_dense()]


def vplus_vminus(a):
    return unit_vector(2, 1), unit_vector(2, 0)


def test_w1_action():
    a = Q("3/2")
    V = evaluation_module(1, a)
    assert V.gen("H", 0) == QMatrix.diag([-1, 1])
    for k in range(5):
        assert V.gen("H", k) == QMatrix.diag([-(a**k), a**k])


def test_h2_on_w2_0():
    assert generator_matrix(evaluation_module(2, 0), "H", 2) == QMatrix.diag([0, -2, 2])


def test_x_plus_level_two_on_w1():
    a = Q("-4/3")
    X = evaluation_module(1, a).gen("X+", 2)
    assert dict(X.items()) == {(1, 0): a * a}


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_sl2_weights(r):
    V = evaluation_module(r, "1/3")
    assert V.gen("H", 0).diagonal() == [Q(2 * s - r) for s in range(r + 1)]


@given(st.integers(1, 4), params, st.integers(0, 6))
def test_recursion_matches_closed_form(r, a, k):
    V = evaluation_module(r, a)
    for w in ("H", "X+", "X-"):
        assert V.gen(w, k) == evaluation_matrix(r, Q(a), w, k)
        assert dense_q(V.gen(w, k)) == oracles.eval_matrix(r, a, w, k).tolist()


def test_rejects_r0_and_bad_family():
    with pytest.raises(ValueError):
        evaluation_module(0, 1)
    with pytest.raises(ValueError):
        evaluation_module(1, 0).gen("Y", 0)


def test_trivial_module():
    T = trivial_module()
    assert T.dim == 1 and T.gen("H", 0) == QMatrix.zeros(1)
    assert verify_relations(T, 3).ok


def test_construction_asserts_h0_h1_commute():
    V = evaluation_module(1, 0)
    g = V.generators
    bad = g["H1"] + g["X0+"]
    with pytest.raises(ValueError):
        YModule(g["H0"], bad, g["X0+"], g["X0-"], g["X1+"], g["X1-"])


def test_relations_w3_half():
    assert verify_relations(evaluation_module(3, "1/2"), 6).ok


def test_relations_tensor():
    T = tensor(evaluation_module(2, "1/3"), evaluation_module(1, 5))
    assert T.dim == 6 and verify_relations(T, 4).ok


def test_negative_control_perturbed_h1():
    rep = verify_relations(perturbed(evaluation_module(2, 0), "H1", 0, 0, 1), 2)
    assert not rep.ok
    assert "[H_(k+1),X_l]-[H_k,X_(l+1)]=±{H_k,X_l}" in rep.failed_relations()


@given(params, params)
def test_every_constructor_satisfies_relations(a, b):
    V, W = evaluation_module(2, a), evaluation_module(1, b)
    for M in (tensor(V, W), twist(V, b), dual(V, "left"), dual(W, "right")):
        assert verify_relations(M, 4).ok, M


def test_quotient_satisfies_relations():
    V = tensor(evaluation_module(1, 1), evaluation_module(1, 0))
    v0 = (0, 1, -1, 0)
    assert verify_relations(quotient(V, submodule(V, [v0])), 6).ok


def test_tensor_associative():
    U, V, W = evaluation_module(1, 0), evaluation_module(2, "1/2"), evaluation_module(1, 3)
    assert same_generators(tensor(tensor(U, V), W), tensor(U, tensor(V, W)))


@given(st.integers(1, 3), params, params, params)
def test_twist_properties(r, a, b, c):
    V = evaluation_module(r, a)
    assert same_generators(twist(V, 0), V)
    assert same_generators(twist(V, b), evaluation_module(r, Q(a) + Q(b)))
    assert same_generators(twist(twist(V, b), c), twist(V, Q(b) + Q(c)))
    for k in range(4):
        assert twist(V, b).gen("H", k) == twist_level(V, b, "H", k)


@pytest.mark.parametrize("a", ["0", "2/5", "-3"])
def test_duals_of_w1(a):
    a = Q(a)
    V = evaluation_module(1, a)
    assert is_isomorphic(dual(V, "left"), evaluation_module(1, a - 1))
    assert is_isomorphic(dual(V, "right"), evaluation_module(1, a + 1))
    assert not is_isomorphic(dual(V, "left"), V)
    # the dual basis reverses weights; the explicit intertwiner is anti-diagonal
    T = intertwiners(dual(V, "left"), evaluation_module(1, a - 1))
    assert len(T) == 1 and T[0][(0, 0)] == 0 and T[0][(0, 1)] != 0


def test_intertwiners_of_reducible_module():
    V = tensor(evaluation_module(1, 1), evaluation_module(1, 0))
    # trivial submodule, W_2(0) quotient, and V is generated in weight 2
    assert len(intertwiners(trivial_module(), V)) == 1
    assert len(intertwiners(V, trivial_module())) == 0
    assert len(intertwiners(V, evaluation_module(2, 0))) == 1
    assert len(intertwiners(evaluation_module(2, 0), V)) == 0


def test_prop36_singlet_and_triplet():
    a = Q("1/2")
    V = tensor(evaluation_module(1, a + 1), evaluation_module(1, a))
    vp, vm = vplus_vminus(a)
    v0 = tuple(x - y for x, y in zip(kron_vec(vp, vm), kron_vec(vm, vp)))
    S = submodule(V, [v0])
    assert len(S) == 1
    W = tensor(evaluation_module(1, a), evaluation_module(1, a + 1))
    # the whole module is generated by v0, and v+ (x) v+ generates a copy of W_2(a)
    assert len(submodule(W, [v0])) == 4
    S3 = submodule(W, [kron_vec(vp, vp)])
    assert len(S3) == 3
    assert is_isomorphic(restrict_module(W, S3), evaluation_module(2, a))
    assert is_isomorphic(quotient(V, S), evaluation_module(2, a))
    Qt = quotient(W, S3)
    assert Qt.dim == 1 and all(m.is_zero() for m in Qt.generators.values())


def test_submodule_of_hw_vector_is_everything():
    V = evaluation_module(3, 2)
    assert len(submodule(V, [unit_vector(4, 3)])) == 4


@pytest.mark.xfail(strict=True, reason="v+ (x) v- is not in the 3-dimensional submodule: X_0^+ maps it to v+ (x) v+ and X_0^- then gives both weight-0 vectors")
def test_literal_vplus_vminus_generates_w2():
    a = Q(0)
    W = tensor(evaluation_module(1, a), evaluation_module(1, a + 1))
    vp, vm = vplus_vminus(a)
    assert len(submodule(W, [kron_vec(vp, vm)])) == 3


def test_quotient_by_zero_and_noninvariant():
    V = evaluation_module(2, 1)
    assert same_generators(quotient(V, []), V)
    with pytest.raises(SubspaceNotInvariant):
        quotient(V, [unit_vector(3, 0)])
    assert not is_invariant(V, [unit_vector(3, 0)])


def test_json_roundtrip():
    V = tensor(evaluation_module(1, "1/2"), evaluation_module(1, 0))
    data = V.to_json()
    assert data["dim"] == 4 and set(data["generators"]) == set(GENERATOR_NAMES)
    assert same_generators(YModule.from_json(data), V)


def test_concurrent_cache_is_write_once():
    V = tensor(evaluation_module(2, 0), evaluation_module(1, 3))
    ref = tensor(evaluation_module(2, 0), evaluation_module(1, 3))
    want = [ref.gen("H", k) for k in range(8)]
    errors = []

    def worker(order):
        try:
            for k in order:
                assert V.gen("H", k) == want[k]
        except AssertionError as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(list(range(8))[::s],)) for s in (1, -1, 1, -1)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert not errors
