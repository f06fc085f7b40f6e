import itertools
import json
import random
from fractions import Fraction as F

import pytest

from conftest import random_joint
from ranksum.distributions import (
    JointDistribution,
    MixtureDistribution,
    ProductDistribution,
    exact_rank,
    expected_sigma,
)
from ranksum.errors import InvalidInputError, PreconditionError
from ranksum.kernels import auc, auc_kernel, u_kernel
from ranksum.preorder import induce_preorder, parse_preorder
from ranksum.propriety import (
    GroupedMixtureSpec,
    brute_force_optimal,
    check_propriety,
    expected_auc_grouped,
    independence_pair_terms,
    random_distribution,
    search_counterexamples,
    verify_independence,
    verify_known_count,
    verify_latent,
)
from ranksum.reference_cases import (
    INDUCED_GROUP_ORDER,
    OPPOSITE_GROUP_ORDER,
    counterexample_distribution,
    two_model_spec,
)

P = parse_preorder


def grouped_by_enumeration(spec, group_order):
    """Expected AUC by summing over every outcome of the expanded mixture."""
    order = spec.individual_preorder(group_order)
    joint = spec.to_mixture().expand()
    return sum((p * auc(y, order) for y, p in joint.support), F(0))


def random_constant_count(rng, n, r):
    cells = [y for y in itertools.product((0, 1), repeat=n) if sum(y) == r]
    ys = rng.sample(cells, rng.randint(1, len(cells)))
    w = [rng.randint(1, 9) for _ in ys]
    return JointDistribution(n, tuple((y, F(wi, sum(w))) for y, wi in zip(ys, w)))


class TestCheckPropriety:
    def test_counterexample_auc(self, ex3):
        cert = check_propriety(ex3, auc_kernel(), cross_check=True)
        assert cert.verdict == "improper"
        assert cert.witness == P("[4][3][1,2]") and cert.witness_score == F(31, 48)
        assert cert.beating == P("[4][1,2][3]") and cert.beating_score == F(33, 48)
        assert cert.strict_gap and cert.brute_force_agrees

    def test_counterexample_u(self, ex3):
        cert = check_propriety(ex3, u_kernel(), cross_check=True)
        assert cert.proper and cert.brute_force_agrees

    def test_point_masses_proper(self):
        for y in itertools.product((0, 1), repeat=4):
            assert check_propriety(JointDistribution.point_mass(y), auc_kernel(), True).proper

    def test_certificate_json(self, ex3):
        d = json.loads(check_propriety(ex3, auc_kernel()).to_json())
        assert d["verdict"] == "improper"
        assert d["witness"] == "[4][3][1,2]" and d["beating"] == "[4][1,2][3]"
        assert d["witness_score"] == "31/48" and d["beating_score"] == "11/16"
        assert d["distribution"]["support"][0] == {"y": [1, 1, 0, 0], "p": "1/2"}

    def test_tied_expected_sigma_case(self):
        # E[alpha] ties two indices whose marginals differ
        D = JointDistribution(3, (((1, 0, 0), F(1, 2)), ((1, 1, 1), F(1, 4)), ((0, 0, 0), F(1, 4))))
        cert = check_propriety(D, auc_kernel(), cross_check=True)
        assert exact_rank(D) == P("[2,3][1]")
        assert cert.brute_force_agrees
        if not cert.proper:
            assert cert.beating_score >= cert.witness_score

    def test_fast_path_agrees_with_brute_force(self, rng):
        for _ in range(150):
            D = random_joint(rng, rng.randint(2, 5), max_support=6)
            for k in (u_kernel(), auc_kernel()):
                cert = check_propriety(D, k, cross_check=True)
                assert cert.brute_force_agrees
                if not cert.proper:
                    best, _ = brute_force_optimal(D, k)
                    assert cert.beating_score == best >= cert.witness_score


class TestKnownCount:
    def test_symmetric_pair(self):
        D = JointDistribution(2, (((1, 0), F(1, 2)), ((0, 1), F(1, 2))))
        assert verify_known_count(D, cross_check=True)

    def test_random_constant_count(self, rng):
        for _ in range(20):
            assert verify_known_count(random_constant_count(rng, 5, 2), cross_check=True)

    def test_precondition(self, ex3):
        with pytest.raises(PreconditionError):
            verify_known_count(ex3)


class TestIndependence:
    def test_all_half(self):
        p = ProductDistribution((F(1, 2),) * 4)
        assert verify_independence(p)
        assert induce_preorder(expected_sigma(p.expand(), auc_kernel())) == P("[1,2,3,4]")

    def test_strictly_ordered(self):
        p = ProductDistribution(("0.1", "0.5", "0.9"))
        assert verify_independence(p)
        assert induce_preorder(expected_sigma(p.expand(), auc_kernel())) == P("[1][2][3]")

    def test_random_products(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(2, 6)
            p = ProductDistribution(tuple(F(rng.randint(0, 6), 6) for _ in range(n)))
            assert verify_independence(p)

    def test_pair_identity_sign(self):
        rng = random.Random(8)
        for _ in range(20):
            n = rng.randint(2, 5)
            p = ProductDistribution(tuple(F(rng.randint(1, 9), 10) for _ in range(n)))
            for i, j in itertools.combinations(range(1, n + 1), 2):
                lhs, rhs = independence_pair_terms(p, i, j)
                assert lhs == rhs
                diff = p.p[i - 1] - p.p[j - 1]
                assert (lhs > 0) == (diff > 0) and (lhs == 0) == (diff == 0)


class TestLatent:
    def test_same_ordering_components(self):
        mix = MixtureDistribution(((F(1, 2), ProductDistribution(("0.1", "0.2", "0.3"))),
                                   (F(1, 2), ProductDistribution(("0.2", "0.4", "0.6")))))
        res = verify_latent(mix)
        assert res.condition_i and res.condition_ii and res.proper_here

    def test_reduced_two_model_analog(self):
        spec = GroupedMixtureSpec(((2, "U"), (4, "notU")), two_model_spec().components)
        res = verify_latent(spec.to_mixture())
        assert res.condition_i and not res.condition_ii
        assert res.component_orders[0] == P("[1,2][3,4,5,6]")
        assert res.component_orders[1] == P("[3,4,5,6][1,2]")

    def test_single_component_reduces_to_independence(self):
        prod = ProductDistribution(("0.3", "0.6", "0.6"))
        res = verify_latent(MixtureDistribution(((1, prod),)))
        assert res.conditions_hold and res.proper_here == verify_independence(prod)

    def test_conditions_imply_propriety(self):
        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(2, 5)
            base = sorted(F(rng.randint(1, 9), 10) for _ in range(n))
            comps = []
            for _ in range(rng.randint(1, 3)):
                # strictly increasing transform keeps the ordering across components
                a = F(rng.randint(1, 5), 10)
                comps.append([min(F(1), a + v * F(rng.randint(5, 10), 10)) for v in base])
            w = [F(1, len(comps))] * len(comps)
            mix = MixtureDistribution(tuple((wi, ProductDistribution(tuple(c))) for wi, c in zip(w, comps)))
            res = verify_latent(mix)
            if res.conditions_hold:
                assert res.proper_here


class TestGrouped:
    def test_two_model_values(self):
        spec = two_model_spec()
        assert spec.group_marginals() == (F(27, 40), F(7, 10))
        induced = expected_auc_grouped(spec, INDUCED_GROUP_ORDER)
        opposite = expected_auc_grouped(spec, OPPOSITE_GROUP_ORDER)
        assert abs(float(induced) - 0.496) <= 5e-4
        assert abs(float(opposite) - 0.504) <= 5e-4
        assert round(float(induced), 3) == 0.496 and round(float(opposite), 3) == 0.504

    def test_symmetric_probabilities_give_half(self):
        spec = GroupedMixtureSpec(((3, "a"), (5, "b")),
                                  ((F(1, 3), (F(1, 5), F(1, 5))), (F(2, 3), (F(7, 10), F(7, 10)))))
        assert expected_auc_grouped(spec, P("[1][2]")) == F(1, 2)
        assert expected_auc_grouped(spec, P("[2][1]")) == F(1, 2)

    def test_small_spec_matches_enumeration(self):
        spec = GroupedMixtureSpec(((2, "g1"), (2, "g2")), ((1, (F(3, 10), F(7, 10))),))
        for order in (P("[1][2]"), P("[2][1]"), P("[1,2]")):
            assert expected_auc_grouped(spec, order) == grouped_by_enumeration(spec, order)

    def test_scaled_two_model_matches_enumeration(self):
        spec = GroupedMixtureSpec(((2, "U"), (10, "notU")), two_model_spec().components)
        for order in (INDUCED_GROUP_ORDER, OPPOSITE_GROUP_ORDER):
            assert expected_auc_grouped(spec, order) == grouped_by_enumeration(spec, order)

    def test_random_specs_match_enumeration(self):
        rng = random.Random(5)
        for _ in range(8):
            g = rng.randint(2, 3)
            sizes = [rng.randint(1, 3) for _ in range(g)]
            comps = []
            for _ in range(rng.randint(1, 2)):
                comps.append(tuple(F(rng.randint(0, 4), 4) for _ in range(g)))
            w = F(1, len(comps))
            spec = GroupedMixtureSpec(tuple((s, str(i)) for i, s in enumerate(sizes)),
                                      tuple((w, c) for c in comps))
            order = induce_preorder([rng.randint(0, 2) for _ in range(g)])
            c = F(rng.randint(0, 2), 2)
            assert expected_auc_grouped(spec, order, c) == sum(
                (p * auc(y, spec.individual_preorder(order), c)
                 for y, p in spec.to_mixture().expand().support), F(0))

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            GroupedMixtureSpec(((0, "a"),), ((1, (F(1, 2),)),))
        with pytest.raises(InvalidInputError):
            GroupedMixtureSpec(((1, "a"),), ((F(1, 2), (F(1, 2),)),))
        with pytest.raises(InvalidInputError):
            expected_auc_grouped(two_model_spec(), P("[1][2][3]"))

    def test_json_round_trip(self):
        spec = two_model_spec()
        d = json.loads(json.dumps(spec.to_dict()))
        assert d["groups"][0] == {"size": 10, "label": "U"}
        assert d["components"][0] == {"w": "1/2", "p": ["2/5", "1/2"]}
        assert GroupedMixtureSpec.from_dict(d) == spec


class TestSearch:
    def test_u_never_flagged(self):
        assert list(search_counterexamples(u_kernel(), 4, 500, seed=1)) == []

    def test_pool_with_counterexample(self):
        certs = list(search_counterexamples(auc_kernel(), 4, 200, seed=3,
                                            pool=[counterexample_distribution()]))
        assert certs and certs[0].distribution == counterexample_distribution()
        assert all(c.beating_score >= c.witness_score for c in certs)

    def test_zero_budget(self):
        assert list(search_counterexamples(auc_kernel(), 4, 0, seed=0)) == []

    def test_deterministic_and_job_independent(self):
        a = [c.to_json() for c in search_counterexamples(auc_kernel(), 4, 300, seed=9)]
        b = [c.to_json() for c in search_counterexamples(auc_kernel(), 4, 300, seed=9)]
        c = [c.to_json() for c in search_counterexamples(auc_kernel(), 4, 300, seed=9, jobs=2)]
        assert a == b == c
        assert a, "auc search at n=4 should find something in 300 trials"

    def test_random_distribution_valid(self):
        rng = random.Random(0)
        for _ in range(50):
            D = random_distribution(rng, 5)
            assert sum(p for _, p in D.support) == 1 and 2 <= len(D.support) <= 32
