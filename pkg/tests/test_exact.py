import json
import math
from fractions import Fraction

import pytest

from degseq.errors import EmptyClassError
from degseq.exact import (
    GraphClassParams,
    brute_force_multigraph,
    brute_force_simple,
    census_from_json,
    census_to_json,
    class_is_empty,
    graph_gf,
    graph_gf_value,
    joint_pmf,
    pmf_moments,
    v_factor,
)
from degseq.series import MPoly

F = Fraction


def mono(q, **sizes):
    """Monomial builder: mono(3, u3=1) -> u_3."""
    exps = [0] * q
    for name, power in sizes.items():
        exps[int(name[1:]) - 1] = power
    return tuple(exps)


def test_v_factor_values():
    assert v_factor(2, 0) == 1
    assert v_factor(0, 3) == 6
    assert v_factor(4, 0) == 3


def test_v_factor_rejects_odd():
    with pytest.raises(ValueError):
        v_factor(3, 1)


@pytest.mark.parametrize(
    "n1,n2,q,expected",
    [
        (2, 0, 2, {(0, 1): 1}),
        (2, 1, 3, {(0, 0, 1): 3}),
        (0, 3, 3, {(0, 0, 1): 1}),
        (4, 0, 2, {(0, 2): 3}),
        (2, 2, 4, {(0, 0, 0, 1): 12}),
    ],
)
def test_graph_gf_hand_cases(n1, n2, q, expected):
    gf = graph_gf(GraphClassParams(n1, n2, q=q))
    assert gf.poly == MPoly(q, expected)


def test_graph_gf_odd_n1_is_zero():
    gf = graph_gf(GraphClassParams(3, 2, q=3))
    assert gf.is_empty
    assert gf.poly == MPoly.zero(3)


@pytest.mark.parametrize(
    "n1,n2,q,expected",
    [
        (2, 0, 2, {(0, 1): 1}),
        (0, 3, 3, {(0, 0, 1): 1}),
        (0, 4, 4, {(0, 0, 0, 1): 3}),
    ],
)
def test_brute_force_simple_hand_cases(n1, n2, q, expected):
    bf = brute_force_simple(GraphClassParams(n1, n2, q=q))
    assert bf.poly == MPoly(q, expected)


@pytest.mark.parametrize("n1", [0, 2, 4, 6])
@pytest.mark.parametrize("n2", [0, 1, 2, 3, 4])
def test_gf_equals_brute_force_simple(n1, n2):
    if n1 + n2 > 7:
        pytest.skip("covered by the acceptance battery")
    for q in (2, max(2, n1 + n2)):
        p = GraphClassParams(n1, n2, q=q)
        assert graph_gf(p).poly == brute_force_simple(p).poly


def test_multigraph_hand_cases():
    gf = graph_gf(GraphClassParams(2, 0, q=2, model="multigraph"))
    assert gf.poly == MPoly(2, {(0, 1): 1})
    assert gf.total == 1

    gf = graph_gf(GraphClassParams(0, 1, q=2, model="multigraph"))
    assert gf.poly == MPoly(2, {(1, 0): F(1, 2)})

    gf = graph_gf(GraphClassParams(0, 2, q=2, model="multigraph"))
    assert gf.poly == MPoly(2, {(2, 0): F(1, 4), (0, 1): F(1, 2)})


def test_multigraph_loop_plus_double_edge_masses():
    gf = graph_gf(GraphClassParams(0, 3, q=3, model="multigraph"))
    expected = MPoly(
        3, {mono(3, u3=1): 1, (1, 1, 0): F(3, 4), (3, 0, 0): F(1, 8)}
    )
    assert gf.poly == expected
    assert brute_force_multigraph(GraphClassParams(0, 3, q=3, model="multigraph")).poly == expected


@pytest.mark.parametrize("n1", [0, 2, 4, 6, 8])
@pytest.mark.parametrize("n2", [0, 1, 2, 3])
def test_gf_equals_matching_oracle(n1, n2):
    if n1 // 2 + n2 > 4:
        pytest.skip("covered by the acceptance battery")
    p = GraphClassParams(n1, n2, q=max(2, n1 + n2), model="multigraph")
    assert graph_gf(p).poly == brute_force_multigraph(p).poly


def test_multigraph_total_is_pairing_mass():
    # sum of pairing masses: C(n, n1) * (2m-1)!! / 2^{n2}
    for n1, n2 in ((0, 3), (2, 2), (4, 1)):
        m = n1 // 2 + n2
        p = GraphClassParams(n1, n2, q=2, model="multigraph")
        double_fact = math.prod(range(2 * m - 1, 0, -2))
        expected = F(math.comb(n1 + n2, n1) * double_fact, 2**n2)
        assert graph_gf(p).total == expected


@pytest.mark.parametrize("k", range(7))
def test_labelled_path_counts(k):
    # the one-component census (a single path of size k+2) carries exactly the
    # labelled-path count (k+2)!/2
    q = k + 2 if k else 2
    gf = graph_gf(GraphClassParams(2, k, q=q))
    single_path = mono(q, **{"u%d" % (k + 2): 1})
    assert gf.poly.terms[single_path] == F(math.factorial(k + 2), 2)
    if k <= 2:
        # no room for extra cycles (they need >= 3 degree-2 vertices), so the
        # whole class is paths
        assert gf.total == F(math.factorial(k + 2), 2)


def test_graph_gf_value_matches_poly_evaluation():
    p = GraphClassParams(4, 3, q=4)
    u = [F(1), F(11, 10), F(9, 10), F(2)]
    assert graph_gf_value(p, u) == graph_gf(p).evaluate(u)


def test_joint_pmf_sums_to_one_exactly():
    pmf = joint_pmf(GraphClassParams(4, 4, q=8))
    assert sum(pmf.values()) == 1
    pmf = joint_pmf(GraphClassParams(2, 3, q=5, model="multigraph"))
    assert sum(pmf.values()) == 1


def test_joint_pmf_point_masses():
    assert joint_pmf(GraphClassParams(2, 0, q=2)) == {(0, 1): F(1)}
    assert joint_pmf(GraphClassParams(4, 0, q=2)) == {(0, 2): F(1)}
    assert joint_pmf(GraphClassParams(2, 2, q=4)) == {(0, 0, 0, 1): F(1)}


def test_joint_pmf_matches_brute_force_ratio():
    p = GraphClassParams(2, 2, q=4)
    bf = brute_force_simple(p)
    pmf = joint_pmf(p)
    assert pmf == {k: c / bf.total for k, c in bf.poly.terms.items()}


def test_joint_pmf_empty_class_raises():
    with pytest.raises(EmptyClassError):
        joint_pmf(GraphClassParams(0, 2, q=2))
    with pytest.raises(EmptyClassError):
        joint_pmf(GraphClassParams(3, 1, q=2))


def test_class_is_empty_matches_brute_force():
    for n1 in range(0, 7, 2):
        for n2 in range(0, 7 - n1):
            assert class_is_empty(n1, n2, "simple") == (
                brute_force_simple(GraphClassParams(n1, n2)).total == 0
            )
    for n1 in range(1, 6, 2):
        assert class_is_empty(n1, 1, "simple") and class_is_empty(n1, 1, "multigraph")
    assert not class_is_empty(0, 1, "multigraph")
    assert not class_is_empty(0, 2, "multigraph")


def test_pmf_moments_point_mass():
    means, variances = pmf_moments(joint_pmf(GraphClassParams(2, 2, q=4)))
    assert means[3] == 1 and variances[3] == 0
    assert means[1] == 0


def test_pmf_moments_mixture():
    # single path of size 2 next to loops/doubles: check against direct sums
    pmf = joint_pmf(GraphClassParams(0, 3, q=3, model="multigraph"))
    means, variances = pmf_moments(pmf)
    e_u1 = sum(p * k[0] for k, p in pmf.items())
    assert means[0] == e_u1
    var_u1 = sum(p * k[0] ** 2 for k, p in pmf.items()) - e_u1**2
    assert variances[0] == var_u1


def test_census_json_round_trip():
    gf = graph_gf(GraphClassParams(0, 3, q=3, model="multigraph"))
    blob = census_to_json(gf)
    exps = [tuple(t["exponents"]) for t in blob["polynomial"]]
    assert exps == sorted(exps)
    assert all(isinstance(t["num"], int) and isinstance(t["den"], int) for t in blob["polynomial"])
    text = json.dumps(blob)
    restored = census_from_json(json.loads(text))
    assert restored.poly == gf.poly and restored.total == gf.total


def test_census_json_rejects_bad_total():
    gf = graph_gf(GraphClassParams(2, 0, q=2))
    blob = census_to_json(gf)
    blob["total"]["num"] += 1
    with pytest.raises(ValueError):
        census_from_json(blob)


def test_params_validation():
    with pytest.raises(ValueError):
        GraphClassParams(-2, 0)
    with pytest.raises(ValueError):
        GraphClassParams(2, 0, q=1)
    with pytest.raises(ValueError):
        GraphClassParams(2, 0, model="other")
    with pytest.raises(ValueError):
        GraphClassParams.from_alpha(0.0, 10)


def test_params_from_alpha_floors():
    p = GraphClassParams.from_alpha(1.0, 10, q=3)
    assert p.n2 == 5
    p = GraphClassParams.from_alpha(0.7, 10, q=3)
    assert p.n2 == 3  # floor(3.5)
    assert GraphClassParams(10, 3).alpha == pytest.approx(0.6)


def test_enumeration_bounds_guarded():
    with pytest.raises(ValueError):
        brute_force_simple(GraphClassParams(6, 6))
    with pytest.raises(ValueError):
        brute_force_multigraph(GraphClassParams(2, 7, model="multigraph"))
