"""Text formats for graphs and partitions.

Graph file: first line ``n``, then one ``u v`` edge per line.
Partition file: one block per line, space-separated vertex ids.
Blank lines and lines starting with ``#`` are ignored in both.
"""

import logging
from pathlib import Path
from typing import Iterator, List, Tuple, Union

from partdim.errors import InvalidEdge, ParseError
from partdim.service.graph_core import Graph, VertexPartition, build_graph

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def _parse_ints(line: str, number: int) -> List[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {line!r}", line=number)


def read_graph(text: str) -> Graph:
    lines = _content_lines(text)
    try:
        number, header = next(lines)
    except StopIteration:
        raise ParseError("missing vertex count", line=1)
    values = _parse_ints(header, number)
    if len(values) != 1 or values[0] < 1:
        raise ParseError(f"first line must be a positive vertex count, got {header!r}", line=number)
    n = values[0]

    edges = []
    for number, line in lines:
        values = _parse_ints(line, number)
        if len(values) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=number)
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {line!r}", line=number)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line=number)
        edges.append((u, v))

    try:
        g = build_graph(edges, n)
    except InvalidEdge as e:
        raise ParseError(str(e))
    logger.debug(f"Parsed graph with n={g.n}, m={g.m}")
    return g


def write_graph(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_partition(text: str, g: Graph) -> VertexPartition:
    blocks = [_parse_ints(line, number) for number, line in _content_lines(text)]
    return VertexPartition.from_blocks(blocks, g.n)


def write_partition(partition: VertexPartition) -> str:
    return "".join(" ".join(str(v) for v in block) + "\n" for block in partition.blocks)


def _read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8 text ({e.reason} at byte {e.start})")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")


def load_graph(path: Union[str, Path]) -> Graph:
    g = read_graph(_read_text(path))
    logger.info(f"Loaded graph from {path}: n={g.n}, m={g.m}")
    return g


def save_graph(g: Graph, path: Union[str, Path]) -> None:
    Path(path).write_text(write_graph(g))
    logger.info(f"Graph written to {path}")


def load_partition(path: Union[str, Path], g: Graph) -> VertexPartition:
    return read_partition(_read_text(path), g)


def save_partition(partition: VertexPartition, path: Union[str, Path]) -> None:
    Path(path).write_text(write_partition(partition))
    logger.info(f"Partition with {len(partition)} blocks written to {path}")
