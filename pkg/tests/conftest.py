import pytest

from partdim.service.graph_io import load_graph
from partdim.service.sweep_service import (
    MIXED_TERMINAL_GRAPH,
    THREE_LEVEL_SPIDER,
    TWO_FORKS_TREE,
    graph_file,
)


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep every test away from the caller's environment and working directory"""
    for name in (
        "PARTDIM_MAX_N",
        "PARTDIM_METRIC_MAX_N",
        "PARTDIM_PARTITION_MAX_N",
        "PARTDIM_JOBS",
        "PARTDIM_LOG_LEVEL",
        "PARTDIM_SWEEP_PD_MAX_N",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("PARTDIM_DUMP_DIR", str(tmp_path / "dumps"))


@pytest.fixture
def mixed_graph():
    return load_graph(graph_file(MIXED_TERMINAL_GRAPH))


@pytest.fixture
def two_forks():
    return load_graph(graph_file(TWO_FORKS_TREE))


@pytest.fixture
def spider():
    return load_graph(graph_file(THREE_LEVEL_SPIDER))


@pytest.fixture
def two_forks_path():
    return graph_file(TWO_FORKS_TREE)


@pytest.fixture
def spider_path():
    return graph_file(THREE_LEVEL_SPIDER)
