import json

import pytest

from alphaham.embedding import EmbedOutcome, TMEmbedding, validate_tm_embedding
from alphaham.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph


def test_path_is_k2_embedding():
    g = cycle_graph(6)
    emb = TMEmbedding.from_paths([[0, 1, 2, 3]], [0, 3])
    assert validate_tm_embedding(path_graph(2), g, emb)
    assert emb.size == 4


def test_degree_three_non_terminal_rejected():
    g = star_graph(3)
    emb = TMEmbedding.build([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)], [1, 2])
    res = validate_tm_embedding(path_graph(2), g, emb)
    assert not res and res.reason == "degree"


def test_pentagon_dissolves_to_triangle():
    g = cycle_graph(5)
    emb = TMEmbedding.build(range(5), cycle_graph(5).edges, [0, 2, 3])
    assert validate_tm_embedding(cycle_graph(3), g, emb)


@pytest.mark.parametrize(
    "emb, lists, reason",
    [
        (TMEmbedding.build([0, 9], [(0, 9)], [0, 9]), None, "vertex"),
        (TMEmbedding.build([0, 1], [(0, 2)], [0, 1]), None, "subgraph"),
        (TMEmbedding.build([0, 2], [(0, 2)], [0, 2]), None, "subgraph"),
        (TMEmbedding.build([0, 1], [(0, 1)], [0, 3]), None, "terminal"),
        (TMEmbedding.build([0, 1], [(0, 1)], [0]), None, "terminal"),
        (TMEmbedding.build([0, 1], [(0, 1)], [0, 0]), None, "injective"),
        (TMEmbedding.build([0, 1], [(0, 1)], [0, 1]), [[1], [0]], "list"),
        (TMEmbedding.build([0, 1, 2, 3], [(0, 1), (2, 3)], [0, 1]), None, "degree"),
        (TMEmbedding.build([0, 1, 2], [(0, 1), (1, 2)], [0, 2]), None, None),
    ],
)
def test_validation_reasons(emb, lists, reason):
    res = validate_tm_embedding(path_graph(2), path_graph(4), emb, lists)
    assert bool(res) == (reason is None)
    if reason:
        assert res.reason == reason


def test_terminal_free_cycle_is_structure_failure():
    emb = TMEmbedding.build(range(5), [(0, 1), (2, 3), (3, 4), (2, 4)], [0, 1])
    res = validate_tm_embedding(path_graph(2), complete_graph(5), emb)
    assert res.reason == "structure"


def test_wrong_pattern_is_isomorphism_failure():
    emb = TMEmbedding.build([0, 1, 2], [(0, 1), (1, 2)], [0, 1, 2])
    res = validate_tm_embedding(cycle_graph(3), complete_graph(3), emb)
    assert res.reason == "isomorphism"


def test_json_round_trip():
    emb = TMEmbedding.from_paths([[4, 2, 7], [7, 1]], [4, 7, 1])
    data = json.loads(json.dumps(emb.to_json()))
    assert data["terminal_map"] == {"0": 4, "1": 7, "2": 1}
    assert TMEmbedding.from_json(data) == emb
    data["terminal_map"] = [4, 7, 1]
    assert TMEmbedding.from_json(data) == emb


def test_json_rejects_gappy_terminal_keys():
    with pytest.raises(ValueError):
        TMEmbedding.from_json({"model_vertices": [0], "model_edges": [], "terminal_map": {"1": 0}})


def test_remap():
    emb = TMEmbedding.build([0, 1], [(0, 1)], [1, 0])
    assert emb.remap([5, 3]) == TMEmbedding.build([3, 5], [(3, 5)], [3, 5])


def test_outcome_payloads():
    emb = TMEmbedding.build([0, 1], [(0, 1)], [0, 1])
    assert EmbedOutcome.of_embedding(emb).to_json() == emb.to_json()
    assert EmbedOutcome.of_independent_set([3, 1]).to_json() == {"independent_set": [1, 3]}
    assert EmbedOutcome.infeasible().to_json() == {"infeasible": True}


def test_empty_pattern():
    emb = TMEmbedding.build([], [], [])
    assert validate_tm_embedding(Graph.from_edges(0, []), path_graph(3), emb)
