import pytest

from softcommittee import errors
from softcommittee.generator import GenParams, SplitMix64, random_instance
from softcommittee.instance_io import instance_to_dict, serialize_instance
from softcommittee.solver import solve

# pinned so that other implementations of the documented draw order can compare
GOLDEN_SEED_1 = {
    "types": ["t1", "t2", "t3"],
    "candidates": [
        {"id": "c1", "types": ["t1", "t2"]},
        {"id": "c2", "types": ["t3"]},
        {"id": "c3", "types": ["t2"]},
        {"id": "c4", "types": ["t1", "t3"]},
        {"id": "c5", "types": ["t1"]},
        {"id": "c6", "types": ["t3"]},
    ],
    "priority": [["c6"], ["c5"], ["c4"], ["c3"], ["c1"], ["c2"]],
    "quotas": {"t1": 0, "t2": 1, "t3": 0},
    "k": 3,
}

GOLDEN_SEED_42_RANGES = {
    "types": ["t1"],
    "candidates": [
        {"id": "c1", "types": ["t1"]},
        {"id": "c2", "types": ["t1"]},
        {"id": "c3", "types": []},
        {"id": "c4", "types": ["t1"]},
        {"id": "c5", "types": []},
        {"id": "c6", "types": ["t1"]},
        {"id": "c7", "types": []},
        {"id": "c8", "types": ["t1"]},
    ],
    "priority": [["c3"], ["c6"], ["c1", "c8"], ["c2"], ["c4", "c5", "c7"]],
    "quotas": {"t1": 0},
    "k": 2,
}


def test_splitmix_reference_vectors():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]


def test_draw_helpers_stay_in_range():
    rng = SplitMix64(9)
    for _ in range(2000):
        assert 0 <= rng.below(7) < 7
        assert 3 <= rng.between(3, 5) <= 5
        assert 0.0 <= rng.uniform() < 1.0


def test_golden_instances():
    inst = random_instance(GenParams(m=6, n_types=3, k=3, density=0.5, seed=1))
    assert instance_to_dict(inst) == GOLDEN_SEED_1
    inst = random_instance(GenParams(m=(3, 9), n_types=(1, 4), k=(1, 5), density=0.4,
                                     tightness=0.7, tie_prob=0.5, seed=42))
    assert instance_to_dict(inst) == GOLDEN_SEED_42_RANGES


def test_same_seed_same_bytes():
    p = GenParams(m=(5, 20), n_types=(1, 6), k=(1, 10), tie_prob=0.2, seed=77)
    assert serialize_instance(random_instance(p)) == serialize_instance(random_instance(p))
    q = GenParams(m=(5, 20), n_types=(1, 6), k=(1, 10), tie_prob=0.2, seed=78)
    assert serialize_instance(random_instance(p)) != serialize_instance(random_instance(q))


def test_zero_density_gives_empty_matrix():
    inst = random_instance(GenParams(m=10, n_types=4, k=5, density=0.0, seed=8))
    assert all(not any(row) for row in inst.membership)
    committee, _, report = solve(inst)
    assert len(committee) == 5 and report.type_optimal


def test_zero_tightness_gives_top_k():
    for seed in range(20):
        inst = random_instance(GenParams(m=(1, 12), n_types=(1, 4), k=(0, 12), tightness=0.0,
                                         tie_prob=0.3, seed=seed))
        assert not any(inst.lower_quotas)
        assert solve(inst).committee == inst.top_k()


def test_shapes_within_ranges():
    for seed in range(200):
        inst = random_instance(GenParams(m=(0, 9), n_types=(0, 4), k=(2, 6), tightness=0.5,
                                         seed=seed))
        assert 0 <= inst.m <= 9 and 0 <= inst.n_types <= 4
        assert min(2, inst.m) <= inst.k <= min(6, inst.m)
        assert all(q <= int(0.5 * inst.k) for q in inst.lower_quotas)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(m=3, k=4),
        dict(m=(5, 2)),
        dict(m=-1),
        dict(density=1.5),
        dict(tightness=-0.1),
        dict(tie_prob="x"),
        dict(seed=-3),
        dict(m=(1, 2, 3)),
        dict(k=True),
    ],
)
def test_invalid_params(kwargs):
    with pytest.raises(errors.InvalidParamsError):
        GenParams(**kwargs)
