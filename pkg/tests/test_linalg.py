from fractions import Fraction

from sl2ext.coeff import RationalField
from sl2ext.linalg import SparseSpan, monomial_invariants, nullspace, solve_affine

F = RationalField()


def v(**kw):
    return {k: F.scalar(x) for k, x in kw.items()}


def test_span_insert_and_membership():
    span = SparseSpan(F)
    assert span.insert({0: F.one, 1: F.scalar(2)})
    assert span.insert({1: F.one})
    assert not span.insert({0: F.scalar(3), 1: F.scalar(-1)})
    assert span.dim == 2
    assert span.contains({0: F.scalar(5)})
    assert not span.contains({2: F.one})


def test_span_is_reduced():
    span = SparseSpan(F)
    span.insert({0: F.one, 2: F.one})
    span.insert({0: F.one, 1: F.one})
    # after reduction no row contains another row's pivot
    for p, row in span.rows.items():
        for p2 in span.rows:
            if p2 != p:
                assert p2 not in row


def test_nullspace_small():
    # x + y = 0, y + z = 0 -> one free variable
    rows = [v(x=1, y=1), v(y=1, z=1)]
    basis = nullspace(rows, ["x", "y", "z"], F)
    assert len(basis) == 1
    sol = basis[0]
    assert sol["x"] == sol["z"] and sol["y"] == -sol["z"]


def test_nullspace_full_rank():
    rows = [v(x=1), v(y=2)]
    assert nullspace(rows, ["x", "y"], F) == []


def test_solve_affine():
    # x + y = 3, x - y = 1 -> x = 2, y = 1
    rows = [v(x=1, y=1), v(x=1, y=-1)]
    rhs = {0: F.scalar(3), 1: F.scalar(1)}
    sol = solve_affine(rows, rhs, ["x", "y"], F)
    assert sol["x"] == F.scalar(2) and sol["y"] == F.one
    # inconsistent system
    rows = [v(x=1), v(x=1)]
    assert solve_affine(rows, {0: F.one, 1: F.scalar(2)}, ["x", "y"], F) is None
    # zero right side always solvable
    assert solve_affine(rows, {}, ["x", "y"], F) == {}


def test_monomial_invariants_cycle():
    # a 3-cycle with trivial scalars has the orbit sum as its fixed line
    labels = [0, 1, 2]
    mp = {0: (1, F.one), 1: (2, F.one), 2: (0, F.one)}
    out = monomial_invariants(labels, [lambda l: mp[l]], F)
    assert len(out) == 1
    assert out[0] == {0: F.one, 1: F.one, 2: F.one}


def test_monomial_invariants_inconsistent_cycle():
    # going around the 2-cycle multiplies by -1: the component dies
    mp = {0: (1, F.one), 1: (0, F.scalar(-1))}
    out = monomial_invariants([0, 1], [lambda l: mp[l]], F)
    assert out == []


def test_monomial_invariants_weighted():
    # the transposition 0 <-> 1 with scalars 2 and 1/2; 2 is fixed alone
    mp = {0: (1, F.scalar(2)), 1: (0, F.scalar(Fraction(1, 2))), 2: (2, F.one)}
    out = monomial_invariants([0, 1, 2], [lambda l: mp[l]], F)
    assert len(out) == 2
    comp = next(c for c in out if 0 in c)
    assert comp[0] == F.one and comp[1] == F.scalar(2)
