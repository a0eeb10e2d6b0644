import numpy as np
import pytest

from src.mall.generator import generate_instance
from src.mall.solvers.decoder import PRESETS, DecodeWorkspace, MallDecoderWeights, decode_mall

from .builders import five_area_instance

ZERO = MallDecoderWeights(0, 0, 0, 0, 0, 0)


@pytest.fixture
def instance():
    return five_area_instance()


# ---------- 权重 ----------

def test_presets():
    assert PRESETS["medium"] == MallDecoderWeights()
    assert PRESETS["low"].size < PRESETS["medium"].size < PRESETS["high"].size
    assert PRESETS["high"].as_tuple() == (500, 1000, 1000, 2000, 200, 2000)


def test_weights_validation():
    with pytest.raises(ValueError):
        MallDecoderWeights.from_sequence([1.0] * 5)
    with pytest.raises(ValueError):
        MallDecoderWeights(medium=-1.0)
    assert MallDecoderWeights.from_sequence(range(6)).group == 5.0


# ---------- 打分 ----------

class TestScores:
    """One score term at a time on the five-area fixture."""

    def test_unit_grows_small_medium_large(self, instance):
        ws = DecodeWorkspace(instance)
        seen = []
        for _ in range(3):
            ws.place(4, 1)
            seen.append(ws.sizes.tolist())

        assert seen == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_medium_term(self, instance):
        ws = DecodeWorkspace(instance)
        ws.place(3, 1)

        scores = ws.scores(1, MallDecoderWeights(medium=1, large=0, size=0, ideal=0, member=0, group=0))

        assert scores.tolist() == [0, 0, 0, 1, 0]

    def test_size_slack(self, instance):
        ws = DecodeWorkspace(instance)

        scores = ws.scores(0, MallDecoderWeights(medium=0, large=0, size=1, ideal=0, member=0, group=0))

        assert scores.tolist() == [16] * 5

    def test_ideal_term(self, instance):
        ws = DecodeWorkspace(instance)
        ws.place(1, 0)

        scores = ws.scores(0, MallDecoderWeights(medium=0, large=0, size=0, ideal=1, member=0, group=0))

        assert scores.tolist() == [2, 2, 3, 5, 2]

    def test_member_and_group_terms(self, instance):
        ws = DecodeWorkspace(instance)
        ws.place(1, 0)
        ws.place(2, 0)

        member = ws.scores(0, MallDecoderWeights(medium=0, large=0, size=0, ideal=0, member=1, group=0))
        group = ws.scores(0, MallDecoderWeights(medium=0, large=0, size=0, ideal=0, member=0, group=1))

        # type 0 is the last missing member: 10 - 3 + 2 members present
        assert member.tolist() == [9, 0, 0, 0, 0]
        assert group.tolist() == [1, 0, 0, 0, 0]

    def test_fixed_rent_always_counts(self, instance):
        assert DecodeWorkspace(instance).scores(4, ZERO).tolist() == [1500, 0, 0, 0, 0]


# ---------- 解码 ----------

def test_order_of_locations_matters(instance):
    forward, _ = decode_mall(tuple(range(17)), instance, ZERO)
    backward, _ = decode_mall(tuple(reversed(range(17))), instance, ZERO)

    # ties go to the lowest type index until type 0 reaches its maximum of 10
    assert forward == (0,) * 10 + (1,) * 7
    assert backward == (1,) * 7 + (0,) * 10


def test_decode_respects_maximum_counts():
    instance = generate_instance(5, seed=3)
    perm = tuple(int(i) for i in np.random.default_rng(0).permutation(instance.n_locations))

    layout, diagnostics = decode_mall(perm, instance, PRESETS["high"])

    totals = np.bincount(layout, minlength=instance.n_types)
    assert (totals <= instance.maximum).all()
    assert diagnostics.at_max_fallbacks == 0
    assert diagnostics.decoded == 1


def test_decode_is_deterministic():
    instance = generate_instance(2, seed=3)
    perm = tuple(int(i) for i in np.random.default_rng(4).permutation(instance.n_locations))

    assert decode_mall(perm, instance, PRESETS["low"])[0] == decode_mall(perm, instance, PRESETS["low"])[0]
