import itertools

import pytest
from hypothesis import given, strategies as st

from simuniv.errors import DomainMismatch
from simuniv.finrel import (
    UNIT,
    FiniteSet,
    Kind,
    ProductObject,
    RelMorphism,
    all_functions,
    check_cd_laws,
    compose,
    copy,
    delete,
    identity,
    pairing,
    projection,
    subsumes,
    swap,
    tensor,
)
from strategies import finite_sets, functions, relations


# independent oracle: relations as boolean matrices over index positions
def matrix(f):
    rows, cols = f.dom.elements, f.cod.elements
    pairs = f.pairs
    return [[(x, y) in pairs for y in cols] for x in rows]


def matmul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[any(a[i][k] and b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def kron(a, b):
    return [
        [a[i][j] and b[k][l] for j in range(len(a[0]) if a else 0) for l in range(len(b[0]) if b else 0)]
        for i in range(len(a))
        for k in range(len(b))
    ]


@st.composite
def composable_triples(draw):
    A, B, C, D = (draw(finite_sets(1, 4)) for _ in range(4))
    return draw(relations(A, B)), draw(relations(B, C)), draw(relations(C, D))


def test_sets_are_sorted_and_distinct():
    assert FiniteSet("X", [3, 1, 2]).elements == (1, 2, 3)
    assert FiniteSet("X", [1, 2]) == FiniteSet("Y", [2, 1])
    with pytest.raises(ValueError):
        FiniteSet("X", [1, 1])


def test_unit_has_one_element():
    assert UNIT.elements == ((),)
    assert len(UNIT) == 1


def test_products_flatten():
    A, B, C = FiniteSet("A", [0, 1]), FiniteSet("B", "xy"), FiniteSet("C", [5])
    left = ProductObject([ProductObject([A, B]), C])
    right = ProductObject([A, ProductObject([B, C])])
    assert left == right
    assert left.elements == right.elements
    assert len(left) == 4 and left.arity == 3


def test_copy_and_delete_examples():
    A = FiniteSet("A", [0, 1])
    assert copy(A).pairs == {((0,), (0, 0)), ((1,), (1, 1))}
    assert delete(A).pairs == {((0,), ()), ((1,), ())}


def test_kind_is_recomputed_from_pairs():
    A, B = FiniteSet("A", [0, 1]), FiniteSet("B", [0, 1])
    assert RelMorphism.from_pairs(A, B, [(0, 0), (1, 0)]).kind is Kind.TOTAL_FUNCTION
    assert RelMorphism.from_pairs(A, B, [(0, 0)]).kind is Kind.PARTIAL_FUNCTION
    assert RelMorphism.from_pairs(A, B, [(0, 0), (0, 1)]).kind is Kind.RELATION


def test_pairs_outside_the_sets_are_rejected():
    A = FiniteSet("A", [0, 1])
    with pytest.raises(DomainMismatch):
        RelMorphism.from_pairs(A, A, [(0, 7)])


def test_compose_type_check():
    A, B = FiniteSet("A", [0]), FiniteSet("B", [0, 1])
    with pytest.raises(DomainMismatch):
        compose(identity(A), identity(B))


def test_call_requires_single_image():
    A = FiniteSet("A", [0, 1])
    r = RelMorphism.from_pairs(A, A, [(0, 0), (0, 1)])
    with pytest.raises(ValueError):
        r(0)
    with pytest.raises(ValueError):
        r(1)


def test_swap_projection_pairing():
    A, B = FiniteSet("A", [0, 1]), FiniteSet("B", "ab")
    assert swap(A, B)(1, "a") == ("a", 1)
    assert projection(A @ B, [1])(0, "b") == "b"
    f = RelMorphism.from_function(A, B, lambda a: "ab"[a])
    assert pairing(identity(A), f)(1) == (1, "b")


@given(finite_sets(1, 6))
def test_cd_laws_hold(A):
    assert check_cd_laws(A).passed


def test_cd_laws_detect_broken_copy():
    A = FiniteSet("A", [0, 1, 2])
    bad = RelMorphism(A, A @ A, [((0,), (0, 0)), ((1,), (1, 2)), ((2,), (2, 2))])
    report = check_cd_laws(A, copy_map=bad)
    assert not report.passed
    assert not report["cocommutativity"].passed
    assert report["cocommutativity"].witness == 1


@given(composable_triples())
def test_composition_associative_and_matches_matrix_oracle(triple):
    f, g, h = triple
    assert (f >> g) >> h == f >> (g >> h)
    assert matrix(f >> g) == matmul(matrix(f), matrix(g))


@given(finite_sets(1, 5), finite_sets(1, 5), st.data())
def test_identities_are_units(A, B, data):
    f = data.draw(relations(A, B))
    assert identity(A) >> f == f == f >> identity(B)


@given(st.data())
def test_tensor_is_functorial_and_matches_kronecker(data):
    A, B, C, D, E, F = (data.draw(finite_sets(1, 3)) for _ in range(6))
    f, h = data.draw(relations(A, B)), data.draw(relations(B, C))
    g, k = data.draw(relations(D, E)), data.draw(relations(E, F))
    assert tensor(f, g) >> tensor(h, k) == tensor(f >> h, g >> k)
    assert matrix(tensor(f, g)) == kron(matrix(f), matrix(g))


@given(st.data())
def test_functions_compose_to_functions(data):
    A, B, C = (data.draw(finite_sets(1, 4)) for _ in range(3))
    f, g = data.draw(functions(A, B)), data.draw(functions(B, C))
    assert (f >> g).kind is Kind.TOTAL_FUNCTION


def test_relations_need_not_compose_to_functions():
    A = FiniteSet("A", [0, 1])
    f = RelMorphism.from_pairs(A, A, [(0, 0), (0, 1)])
    assert (f >> identity(A)).kind is Kind.RELATION
    assert (delete(A) >> RelMorphism(UNIT, A, [])).kind is Kind.PARTIAL_FUNCTION


@given(st.data())
def test_subsumes_is_a_partial_order(data):
    A, B = data.draw(finite_sets(1, 3)), data.draw(finite_sets(1, 3))
    f, g, h = (data.draw(relations(A, B)) for _ in range(3))
    assert subsumes(f, f)
    if subsumes(f, g) and subsumes(g, f):
        assert f == g
    if subsumes(f, g) and subsumes(g, h):
        assert subsumes(f, h)


def test_all_functions_count_and_order():
    A, B = FiniteSet("A", [0, 1]), FiniteSet("B", [0, 1, 2])
    fs = list(all_functions(A, B))
    assert len(fs) == 9
    assert [tuple(f(a) for a in A) for f in fs] == list(itertools.product(range(3), repeat=2))
