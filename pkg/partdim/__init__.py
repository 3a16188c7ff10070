# partdim/__init__.py

"""
Exact k-metric and k-partition dimension of small connected graphs.

Library code lives in partdim.service; the command line in partdim.routes.
"""

from partdim.service.graph_core import Graph, VertexPartition, build_graph, generate

__all__ = ["Graph", "VertexPartition", "build_graph", "generate"]
