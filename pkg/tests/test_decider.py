from fractions import Fraction

import pytest

from slocc_pit.decider import (DecisionParams, assemble, decide_slocc, flanders_check,
                               make_witness, oracle_report, sample_point)
from slocc_pit.errors import InvalidInstanceError, ParameterError
from slocc_pit.linalg import GaussianRational, Mat
from slocc_pit.oracle import minors_all_zero
from slocc_pit.states import PureTensor3, SubspaceBasis, charlie_slices

from oracles import gaussian, make_rng, random_mat, random_rank_r

GHZ = PureTensor3((2, 2, 2), {(0, 0, 0): 1, (1, 1, 1): 1})
W = PureTensor3((2, 2, 2), {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1})
PRODUCT = PureTensor3((2, 2, 2), {(0, 0, 0): 1})
DEGENERATE = PureTensor3((2, 2, 2), {(0, 1, 0): 1, (1, 1, 1): 1})
E11 = Mat.from_rows([[1, 0], [0, 0]])
E22 = Mat.from_rows([[0, 0], [0, 1]])

P = DecisionParams(seed=2024)


def _basis_of_dim(k):
    units = [Mat.from_rows([[int(r == i and c == j) for c in range(2)] for r in range(2)])
             for i in range(2) for j in range(2)]
    return SubspaceBasis.of(units[:k])


def test_flanders_examples():
    assert flanders_check(_basis_of_dim(4), 2) is True
    assert flanders_check(_basis_of_dim(3), 2) is False
    assert flanders_check(SubspaceBasis.of([E11]), 1) is False


def test_sample_point_range_and_determinism():
    p = DecisionParams(set_size=16, seed=99)
    for trial in range(50):
        u = sample_point(p, trial, 3)
        assert len(u) == 3
        for z in u:
            assert z.re.denominator == 1 and z.im.denominator == 1
            assert 1 <= z.re <= 16 and 1 <= z.im <= 16
        assert sample_point(p, trial, 3) == u
    assert sample_point(p, 0, 3) != sample_point(p, 1, 3)
    assert sample_point(DecisionParams(set_size=1, seed=5), 7, 4).u == (GaussianRational(1, 1),) * 4


def test_sample_point_uniform_parts():
    p = DecisionParams(set_size=4, seed=3)
    counts = [0] * 4
    for trial in range(2000):
        for z in sample_point(p, trial, 1):
            counts[int(z.re) - 1] += 1
            counts[int(z.im) - 1] += 1
    # 4000 draws, 1000 expected per value; 5 sigma is about 137
    assert all(abs(c - 1000) < 140 for c in counts)


def test_assemble_examples():
    basis = SubspaceBasis.of([E11, E22])
    assert assemble(basis, [2, GaussianRational(0, 3)]) == Mat.from_rows([[2, 0], [0, GaussianRational(0, 3)]])
    assert assemble(basis, [0, 0]).is_zero()
    assert assemble(charlie_slices(W), [1, 1]) == Mat.from_rows([[1, 1], [1, 0]])
    with pytest.raises(InvalidInstanceError):
        assemble(basis, [1])


@pytest.mark.parametrize("psi, answer", [(GHZ, "yes"), (W, "yes"), (PRODUCT, "no"), (DEGENERATE, "no")])
def test_decide_canonical(psi, answer):
    assert decide_slocc(psi, 2, P).answer == answer
    assert decide_slocc(psi, 2, P, exact=True).answer == answer


def test_product_is_certified_no():
    r = decide_slocc(PRODUCT, 2, P)
    assert (r.answer, r.method, r.error_bound) == ("no", "slice-shortcut", 0)


def test_sampled_no_error_bound():
    r = decide_slocc(DEGENERATE, 2, DecisionParams(set_size=10, trials=3, seed=1))
    assert r.method == "sampling"
    assert r.error_bound == Fraction(4, 10) ** 3


def test_bipartite_embedding():
    psi = PureTensor3((2, 2, 1), {(0, 0, 0): 1, (1, 1, 0): 2})
    assert decide_slocc(psi, 2, P).answer == "yes"
    r = decide_slocc(psi, 3, P)
    assert (r.answer, r.method, r.error_bound) == ("no", "dimension", 0)


def test_invalid_rank_and_params():
    for d in (0, -1, 1.5, True):
        with pytest.raises(InvalidInstanceError):
            decide_slocc(GHZ, d, P)
    with pytest.raises(ParameterError):
        decide_slocc(GHZ, 2, DecisionParams(set_size=4, seed=1))
    with pytest.raises(ParameterError):
        decide_slocc(GHZ, 2, DecisionParams(trials=0, seed=1))
    with pytest.raises(ParameterError):
        decide_slocc(GHZ, 2, DecisionParams(seed=-1))
    # exact mode does not need M > 2d
    assert decide_slocc(W, 2, DecisionParams(set_size=1, seed=1), exact=True).answer == "yes"


def test_defaults_resolved_and_echoed():
    r = decide_slocc(DEGENERATE, 2)
    assert r.set_size == 128 and r.trials == 20
    assert isinstance(r.seed, int) and 0 <= r.seed < 2 ** 64


def test_witness_examples():
    basis = charlie_slices(GHZ)
    w = make_witness(GHZ, basis, [1, 1])
    assert w.pi_u == Mat.identity(2)
    assert w.measurement == (1, 1)
    assert w.outcome_probability == Fraction(1, 2)
    assert w.rank == 2

    w = make_witness(GHZ, basis, [1, 0])
    assert w.measurement == (1, 0) and w.outcome_probability == Fraction(1, 2) and w.rank == 1

    w = make_witness(PRODUCT, charlie_slices(PRODUCT), [1])
    assert w.outcome_probability == 1 and w.rank == 1
    assert w.measurement == (1, 0)


def test_witness_conjugates_and_errors():
    basis = charlie_slices(GHZ)
    w = make_witness(GHZ, basis, [GaussianRational(1, 2), GaussianRational(0, -1)])
    assert w.measurement == (GaussianRational(1, -2), GaussianRational(0, 1))
    with pytest.raises(InvalidInstanceError):
        make_witness(GHZ, basis, [0, 0])
    with pytest.raises(InvalidInstanceError):
        make_witness(W, basis, [1, 1])


def _complete_measurement_total(psi, vectors):
    basis = charlie_slices(psi)
    total = Fraction(0)
    for u in vectors:
        if not assemble(basis, u).is_zero():
            total += make_witness(psi, basis, u).outcome_probability
    return total


def test_outcome_probabilities_sum_to_one():
    rng = make_rng(31)
    i = GaussianRational(0, 1)
    hadamard4 = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]
    for _ in range(40):
        n = rng.choice([2, 4])
        dims = (rng.randint(1, 3), rng.randint(1, 3), n)
        amps = {(i_, j, k): gaussian(rng, 0.4) for i_ in range(dims[0]) for j in range(dims[1]) for k in range(n)}
        for k in range(n):
            amps[(0, 0, k)] = GaussianRational(k + 1, 1)
        psi = PureTensor3(dims, amps)
        standard = [[int(a == b) for b in range(n)] for a in range(n)]
        assert _complete_measurement_total(psi, standard) == 1
        other = [[1, i], [1, -i]] if n == 2 else hadamard4
        assert _complete_measurement_total(psi, other) == 1


def test_probability_one_only_when_exhaustive():
    w = make_witness(GHZ, charlie_slices(GHZ), [1, 1])
    assert w.outcome_probability < 1
    psi = PureTensor3((2, 2, 3), {(0, 0, 1): 3, (1, 0, 1): GaussianRational(0, 1)})
    w = make_witness(psi, charlie_slices(psi), [GaussianRational(2, 5)])
    assert w.outcome_probability == 1


def test_slice_shortcut_witness_is_indicator():
    r = decide_slocc(W, 2, P)
    assert r.method == "slice-shortcut"
    assert r.witness.u == (1, 0)


def test_flanders_path():
    units = _basis_of_dim(4)
    r = decide_slocc(units, 2, P)
    assert (r.answer, r.method, r.error_bound) == ("yes", "flanders", 0)
    assert r.witness.rank == 2


def test_scaling_invariance():
    rng = make_rng(32)
    for psi in (GHZ, W, PRODUCT, DEGENERATE):
        for _ in range(5):
            c = GaussianRational(rng.randint(1, 9), rng.randint(-9, 9))
            a, b = decide_slocc(psi, 2, P), decide_slocc(psi.scale(c), 2, P)
            assert (a.answer, a.method) == (b.answer, b.method)


def test_exact_monotone_in_rank():
    rng = make_rng(33)
    for _ in range(40):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        mats = [random_rank_r(rng, rows, cols, rng.randint(0, min(rows, cols)))
                for _ in range(rng.randint(1, 3))]
        if all(m.is_zero() for m in mats):
            continue
        basis = SubspaceBasis.of(mats)
        answers = [decide_slocc(basis, d, P, exact=True).answer for d in range(1, min(rows, cols) + 1)]
        top = max((d for d, a in enumerate(answers, 1) if a == "yes"), default=0)
        assert answers == ["yes"] * top + ["no"] * (len(answers) - top)


def test_agrees_with_oracle_on_sample():
    rng = make_rng(34)
    for _ in range(80):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        mats = [random_mat(rng, rows, cols, zero_prob=0.7) for _ in range(rng.randint(1, 4))]
        if all(m.is_zero() for m in mats):
            continue
        basis = SubspaceBasis.of(mats)
        d = rng.randint(1, min(rows, cols))
        r = decide_slocc(basis, d, DecisionParams(seed=rng.getrandbits(64)))
        assert (r.answer == "no") == minors_all_zero(basis, d)


def test_oracle_report():
    r = oracle_report(W, 2, P)
    assert (r.answer, r.method, r.error_bound) == ("yes", "oracle", 0)
    r = oracle_report(DEGENERATE, 2, P)
    assert (r.answer, r.method, r.witness) == ("no", "oracle", None)
    assert oracle_report(GHZ, 3, P).answer == "no"


def test_report_json_shape():
    r = decide_slocc(DEGENERATE, 2, DecisionParams(set_size=8, trials=2, seed=7))
    assert r.to_json() == {"answer": "no", "target_rank": 2, "method": "sampling", "set_size": 8,
                           "trials": 2, "seed": 7, "error_bound": "1/4", "witness": None}
    j = decide_slocc(GHZ, 2, P).to_json()
    assert set(j["witness"]) == {"u", "pi_u", "rank", "measurement", "outcome_probability"}
