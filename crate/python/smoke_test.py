"""Smoke test for the kops_py extension.

Build and install first:  pip install --no-build-isolation ./crates/py
Then run:                 python python/smoke_test.py   (or pytest python/)
"""

import json
import itertools

import kops_py as k


def test_smith_form():
    m = k.IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert m.invariant_factors() == [2, 6, 12]
    assert m.rank() == 3
    big = k.IntMatrix([[10**30, 0], [0, 1]])
    assert big.invariant_factors() == [1, 10**30]
    ker = k.IntMatrix([[1, 2, 3]]).kernel_basis()
    assert ker.shape == (3, 2)
    assert (k.IntMatrix([[1, 2, 3]]) @ ker).to_list() == [[0, 0]]


def test_exterior_power_of_invertible_module():
    for r, x in itertools.product(range(1, 5), (2, 3, 5)):
        c = k.exterior_power_cross_effect(r, k.ChainComplex.two_term(x))
        assert c.ranks == [0] * (r - 1) + [1, 1]
        assert c.differential(r).to_list() == [[x]]


def test_tensor_square_counterexample():
    assert k.tensor_counterexample_h2() == "Z/2"


def test_functors_on_complexes():
    c = k.ChainComplex.two_term(1)
    assert c.is_acyclic()
    l2 = c.apply("L2")
    assert l2.is_acyclic()
    assert l2.length() <= 2
    d = k.ChainComplex.from_json(c.to_json())
    assert d.ranks == c.ranks
    assert k.functor_rank("L2@L2", 4) == 15


def test_binary_complex_and_witnesses():
    text = json.dumps({
        "dimension": 1,
        "ranks": {"0": 1, "1": 1},
        "differentials": {
            "d": {"1": {"rows": 1, "cols": 1, "entries": [[1]]}},
            "d_tilde": {"1": {"rows": 1, "cols": 1, "entries": [[-1]]}},
        },
    })
    n = k.Complex.from_json(text)
    assert n.is_binary and n.is_acyclic()
    assert json.loads(n.apply("L2").to_json())["ranks"] == {"1": 1, "2": 1}

    w = k.shift_witness_for(n, 1)
    assert w.is_valid() and w.check() == []
    again = k.Witness.from_json(w.to_json())
    assert again.is_valid()

    tampered = json.loads(w.to_json())
    tampered["multipliers"][0] = tampered["multipliers"][0] + 1
    assert not k.Witness.from_json(json.dumps(tampered)).is_valid()

    p = k.product_witness_for(n, n)
    assert p.is_valid()


def test_symmetric_functions():
    assert k.plethysm(2, 2) == "X1*X3 - X4"
    assert sorted(k.plethysm_terms(2, 2)) == [([0, 0, 0, 1], -1), ([1, 0, 1], 1)]
    for axiom, passed, total in k.lambda_check(4):
        assert passed == total > 0, axiom


def test_schur_algebra():
    assert k.schur_algebra_rank(2, 2) == 10
    assert k.schur_module_check("L2", 2)
    assert k.schur_module_check("S2", 3, seed=1, samples=20)


def test_errors_raise_value_error():
    for bad in (lambda: k.Complex.from_json("{"), lambda: k.plethysm(0, 1), lambda: k.ChainComplex.two_term(1).apply("Q")):
        try:
            bad()
        except ValueError:
            continue
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    tests = [f for name, f in sorted(globals().items()) if name.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} passed")
