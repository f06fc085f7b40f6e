import json
import random
from fractions import Fraction as F

import pytest

from ranksum.errors import InvalidInputError, ResourceLimitError
from ranksum.reference_cases import binary_pair_model
from ranksum.theoretical import (
    PairModel,
    expected_empirical_auc,
    load_pair_model,
    scalar_map,
    theoretical_auc,
    verify_expected_auc_identity,
)

IDENTITY01 = {0: F(0), 1: F(1)}


def random_pair_model(rng, max_covariates=3):
    xs = list("abc"[:rng.randint(1, max_covariates)])
    cells = [(x, y) for x in xs for y in (0, 1)]
    chosen = rng.sample(cells, rng.randint(2, len(cells)))
    if {y for _, y in chosen} != {0, 1}:
        chosen.append(next(c for c in cells if c[1] != chosen[0][1]))
    w = [rng.randint(1, 9) for _ in chosen]
    return PairModel(tuple((x, y, F(wi, sum(w))) for (x, y), wi in zip(chosen, w)))


def mirror_model():
    return PairModel(((0, 0, F(1, 2)), (1, 1, F(1, 2))))


class TestTheoreticalAUC:
    def test_binary_model(self):
        assert theoretical_auc(binary_pair_model(), IDENTITY01) == F(7, 10)

    def test_perfect_discriminator(self):
        assert theoretical_auc(mirror_model(), IDENTITY01) == 1
        assert theoretical_auc(mirror_model(), {0: 1, 1: 0}) == 0

    def test_constant_map(self):
        assert theoretical_auc(binary_pair_model(), {0: 5, 1: 5}) == F(1, 2)

    def test_monotone_invariance(self):
        rng = random.Random(21)
        for _ in range(30):
            theta = random_pair_model(rng)
            f = {x: F(rng.randint(-3, 3)) for x in theta.covariates}
            g = {x: v**3 + 2 * v + 11 for x, v in f.items()}
            assert theoretical_auc(theta, f) == theoretical_auc(theta, g)

    def test_missing_class(self):
        with pytest.raises(InvalidInputError, match="both responses"):
            theoretical_auc(PairModel((("a", 1, F(1)),)), {"a": 0})

    def test_undefined_map(self):
        with pytest.raises(InvalidInputError, match="undefined"):
            theoretical_auc(binary_pair_model(), {0: 1})


class TestIdentity:
    def test_mirror_n2(self):
        assert verify_expected_auc_identity(mirror_model(), IDENTITY01, 2) == (F(3, 4), F(3, 4))

    def test_constant_map_n3(self):
        lhs, rhs = verify_expected_auc_identity(binary_pair_model(), {0: 0, 1: 0}, 3)
        assert lhs == rhs == F(1, 2)

    def test_binary_model_n3(self):
        lhs, rhs = verify_expected_auc_identity(binary_pair_model(), IDENTITY01, 3)
        assert lhs == rhs

    def test_random_models(self):
        rng = random.Random(2024)
        for _ in range(25):
            theta = random_pair_model(rng)
            f = {x: F(rng.randint(0, 2)) for x in theta.covariates}
            n = rng.choice((2, 3, 4))
            lhs, rhs = verify_expected_auc_identity(theta, f, n)
            assert lhs == rhs

    @pytest.mark.parametrize("c", [F(0), F(1), F(1, 3)])
    def test_generalised_constant(self, c):
        rng = random.Random(int(c * 6))
        for _ in range(8):
            theta = random_pair_model(rng)
            f = {x: F(i) for i, x in enumerate(theta.covariates)}
            lhs, rhs = verify_expected_auc_identity(theta, f, 3, degenerate=c)
            assert lhs == rhs

    def test_convention_matters_only_through_degenerate_terms(self):
        theta = binary_pair_model()
        a = expected_empirical_auc(theta, IDENTITY01, 3, F(0))
        b = expected_empirical_auc(theta, IDENTITY01, 3, F(1))
        assert b - a == theta.pi(0) ** 3 + theta.pi(1) ** 3

    def test_cap(self):
        with pytest.raises(ResourceLimitError) as info:
            expected_empirical_auc(binary_pair_model(), IDENTITY01, 6, cap=1000)
        assert info.value.cap == 1000


class TestValidationAndIO:
    def test_rejects(self):
        with pytest.raises(InvalidInputError):
            PairModel((("a", 1, F(1, 2)), ("a", 0, F(1, 3))))
        with pytest.raises(InvalidInputError):
            PairModel((("a", 2, F(1)),))
        with pytest.raises(InvalidInputError):
            PairModel((("a", 1, F(1, 2)), ("a", 1, F(1, 2))))

    def test_json(self, tmp_path):
        path = tmp_path / "theta.json"
        path.write_text(json.dumps({"support": [
            {"x": "a", "y": 1, "p": "3/10"}, {"x": "a", "y": 0, "p": "1/10"},
            {"x": "b", "y": 1, "p": "2/10"}, {"x": "b", "y": 0, "p": "4/10"}]}))
        theta = load_pair_model(path)
        assert theta.pi(1) == F(1, 2) and theta.covariates == ("a", "b")
        f = scalar_map({"f": {"a": "1", "b": "0"}})
        assert theoretical_auc(theta, f) == F(7, 10)
