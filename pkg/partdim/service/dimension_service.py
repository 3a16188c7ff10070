import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence

from partdim.errors import PartdimError, UnsupportedConstruction
from partdim.service.certificate_store import CertificateStore, ServiceResponse
from partdim.service.graph_core import (
    Graph,
    VertexPartition,
    generate,
    is_path,
    is_tree,
    path_walk_order,
)
from partdim.service.graph_io import load_graph, load_partition, save_graph, write_graph
from partdim.service.metric_dim import dim_k_bruteforce
from partdim.service.partition_dim import (
    construction_result,
    is_k_partition_generator,
    min_pair_block_support,
    path_partition_construction,
    pd_k_bruteforce,
)
from partdim.service.resolve_core import (
    clique_number,
    distinguish_profile,
    twin_classes,
)
from partdim.service.run_logger import RunLogger
from partdim.service.sweep_service import run_suite
from partdim.service.tree_analysis import (
    exterior_major_profile,
    script_I_k,
    tree_dim_k,
    tree_partition_construction,
    tree_profile,
)

logger = logging.getLogger(__name__)

BRUTE = "brute"
CONSTRUCT = "construct"
TREE = "tree"

EXIT_SUITE_FAILURE = 3


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return json.dumps(_plain(value), separators=(",", ":"))
    return str(value)


@dataclass
class Report:
    """Output of one command; keys keep insertion order so output is stable"""

    command: str
    graph: Optional[Dict[str, Any]] = None
    values: Dict[str, Any] = field(default_factory=dict)
    certificates: Dict[str, str] = field(default_factory=dict)
    table: Optional[str] = None
    body: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def render_text(self, show_timings: bool = False) -> str:
        if self.body is not None and not self.values:
            return self.body
        lines = [f"command: {self.command}"]
        for key, value in (self.graph or {}).items():
            lines.append(f"graph.{key}: {_format(value)}")
        for key, value in self.values.items():
            lines.append(f"{key}: {_format(value)}")
        for key, path in self.certificates.items():
            lines.append(f"certificate.{key}: {path}")
        if show_timings:
            for key, seconds in self.timings.items():
                lines.append(f"timing.{key}: {seconds:.6f}")
        text = "\n".join(lines) + "\n"
        if self.table:
            text += "\n" + self.table + "\n"
        return text

    def render_json(self, show_timings: bool = False) -> str:
        payload: Dict[str, Any] = {"command": self.command}
        if self.graph is not None:
            payload["graph"] = self.graph
        payload["values"] = _plain(self.values)
        if self.certificates:
            payload["certificates"] = self.certificates
        if self.rows:
            payload["rows"] = _plain(self.rows)
        if self.body is not None:
            payload["body"] = self.body
        if show_timings:
            payload["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return json.dumps(payload, indent=2) + "\n"


class DimensionService:
    """Runs one command end to end and reports it as a ServiceResponse"""

    def __init__(self, run_logger: Optional[RunLogger] = None, store: Optional[CertificateStore] = None):
        self.logger = run_logger or RunLogger()
        self.store = store or CertificateStore()

    @contextmanager
    def _step(self, report: Report, name: str, description: str, python_code: str,
              parameters: Dict[str, Any] = None) -> Iterator[Dict[str, Any]]:
        """Time a library call and log it; the caller fills ``outcome['summary']``.

        A call that raises is still timed and logged, with a ``failed:`` summary.
        """
        outcome: Dict[str, Any] = {}
        start = time.perf_counter()
        try:
            yield outcome
        except Exception as e:
            outcome["summary"] = f"failed: {type(e).__name__}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            report.timings[name] = elapsed
            self.logger.log_operation(
                operation_type=name,
                description=description,
                python_code=python_code,
                parameters=parameters,
                result_summary=outcome.get("summary"),
                elapsed=elapsed,
            )

    def _fail(self, command: str, error: Exception) -> ServiceResponse:
        if isinstance(error, PartdimError):
            logger.error(f"{command} failed: {type(error).__name__}: {error}")
            return ServiceResponse(
                success=False, error=f"{type(error).__name__}: {error}", status_code=error.exit_code
            )
        logger.error(f"Unexpected error in {command}: {error}", exc_info=True)
        return ServiceResponse(success=False, error=f"{type(error).__name__}: {error}", status_code=1)

    def _load(self, report: Report, graph_path: str) -> Graph:
        with self._step(report, "load_graph", f"Load graph from {graph_path}",
                        f"g = load_graph({graph_path!r})", {"path": graph_path}) as out:
            g = load_graph(graph_path)
            out["summary"] = f"n={g.n}, m={g.m}"
        report.graph = g.summary()
        if report.graph.get("family") is None:
            report.graph.pop("family")
        return g

    def cmd_gen(self, family: str, params: Sequence[int], out_path: Optional[str] = None,
                seed: Optional[int] = None) -> ServiceResponse:
        report = Report(command=f"gen {family} {' '.join(str(p) for p in params)}".strip())
        try:
            call = f"g = generate({family!r}, {', '.join(str(p) for p in params)}"
            call += f", seed={seed})" if seed is not None else ")"
            with self._step(report, "generate", f"Generate {family}", call,
                            {"family": family, "params": list(params), "seed": seed}) as out:
                g = generate(family, *params, seed=seed)
                out["summary"] = f"n={g.n}, m={g.m}"
            report.graph = g.summary()
            if out_path:
                save_graph(g, out_path)
                self.logger.log_operation("save_graph", f"Write graph to {out_path}",
                                          f"save_graph(g, {out_path!r})", {"path": out_path})
                report.certificates["graph"] = out_path
                report.values["written"] = True
            else:
                report.body = write_graph(g)
            return ServiceResponse(success=True, data=report)
        except Exception as e:
            return self._fail("gen", e)

    def cmd_dims(self, graph_path: str) -> ServiceResponse:
        report = Report(command=f"dims {graph_path}")
        try:
            g = self._load(report, graph_path)
            with self._step(report, "dimensional_values", "Dimensional values",
                            "d = dimensional_value(g)\nd_star = dimensional_value_max(g)") as out:
                profile = distinguish_profile(g)
                out["summary"] = f"d={profile.d_min}, d*={profile.d_max}"
            report.values["d"] = profile.d_min
            report.values["d_star"] = profile.d_max
            report.values["d_pair"] = profile.min_pair
            report.values["twin_classes"] = [c for c in twin_classes(g) if len(c) > 1]
            with self._step(report, "clique_number", "Clique number", "omega = clique_number(g)") as out:
                omega = clique_number(g)
                out["summary"] = f"omega={omega}"
            report.values["omega"] = omega
            exterior = exterior_major_profile(g)
            if exterior.varsigma is not None:
                report.values["exterior_major"] = [r.w for r in exterior.records]
                report.values["varsigma"] = exterior.varsigma
            logger.info(f"dims: d={profile.d_min}, d*={profile.d_max}, omega={omega}")
            return ServiceResponse(success=True, data=report)
        except Exception as e:
            return self._fail("dims", e)

    def _construct(self, report: Report, g: Graph, k: int) -> VertexPartition:
        if is_path(g):
            with self._step(report, "path_construction", f"Path construction at k={k}",
                            f"partition = path_partition_construction({g.n}, {k})") as out:
                order = path_walk_order(g)
                positional = path_partition_construction(g.n, k)
                blocks = [[order[i] for i in block] for block in positional.blocks]
                partition = VertexPartition.from_blocks(blocks, g.n)
                out["summary"] = f"{len(partition)} blocks"
            report.values["bound"] = k + 1
            return partition
        if is_tree(g):
            with self._step(report, "tree_construction", f"Tree construction at k={k}",
                            f"partition = tree_partition_construction(g, {k})") as out:
                partition = tree_partition_construction(g, k)
                out["summary"] = f"{len(partition)} blocks"
            profile = tree_profile(g)
            report.values["bound"] = k * profile.kappa + script_I_k(g, k) + 1
            return partition
        raise UnsupportedConstruction("Constructions exist only for paths and trees")

    def cmd_pd(self, graph_path: str, k: int, mode: str = BRUTE, out_path: Optional[str] = None,
               force: bool = False) -> ServiceResponse:
        report = Report(command=f"pd --k {k} --{mode} {graph_path}")
        try:
            g = self._load(report, graph_path)
            if mode == CONSTRUCT:
                partition = self._construct(report, g, k)
                result = construction_result(g, partition, k)
                report.values["blocks"] = result.value
            else:
                with self._step(report, "pd_bruteforce", f"pd_{k} by brute force",
                                f"result = pd_k_bruteforce(g, {k}, force={force})") as out:
                    result = pd_k_bruteforce(g, k, force=force)
                    out["summary"] = f"pd_{k}={result.value}"
                report.values[f"pd_{k}"] = result.value
            report.values["method"] = result.method
            report.values["verified"] = is_k_partition_generator(g, result.basis, k)
            report.values["partition"] = [list(b) for b in result.basis.blocks]
            if out_path:
                saved = self.store.save_certificate(result.basis, out_path)
                if not saved.success:
                    return saved
                report.certificates["partition"] = out_path
            return ServiceResponse(success=True, data=report)
        except Exception as e:
            return self._fail("pd", e)

    def cmd_dim(self, graph_path: str, k: int, mode: str = BRUTE, force: bool = False) -> ServiceResponse:
        report = Report(command=f"dim --k {k} --{mode} {graph_path}")
        try:
            g = self._load(report, graph_path)
            if mode == TREE:
                with self._step(report, "tree_dim", f"dim_{k} from the tree formula",
                                f"result = tree_dim_k(g, {k})") as out:
                    result = tree_dim_k(g, k)
                    out["summary"] = f"dim_{k}={result.value}"
            else:
                with self._step(report, "dim_bruteforce", f"dim_{k} by brute force",
                                f"result = dim_k_bruteforce(g, {k}, force={force})") as out:
                    result = dim_k_bruteforce(g, k, force=force)
                    out["summary"] = f"dim_{k}={result.value}"
            report.values[f"dim_{k}"] = result.value
            report.values["method"] = result.method
            if result.basis is not None:
                report.values["basis"] = list(result.basis)
            return ServiceResponse(success=True, data=report)
        except Exception as e:
            return self._fail("dim", e)

    def cmd_verify(self, graph_path: str, partition_path: str, k: int) -> ServiceResponse:
        report = Report(command=f"verify --k {k} {graph_path} {partition_path}")
        try:
            g = self._load(report, graph_path)
            partition = load_partition(partition_path, g)
            self.logger.log_operation("load_partition", f"Load partition from {partition_path}",
                                      f"partition = load_partition({partition_path!r}, g)",
                                      {"path": partition_path})
            with self._step(report, "verify", f"Verify at level {k}",
                            f"ok = is_k_partition_generator(g, partition, {k})\n"
                            "support, pair = min_pair_block_support(g, partition)") as out:
                ok = is_k_partition_generator(g, partition, k)
                support, pair = min_pair_block_support(g, partition)
                out["summary"] = f"ok={ok}, min support {support}"
            report.values["blocks"] = len(partition)
            report.values["k"] = k
            report.values["pass"] = ok
            report.values["min_support"] = support
            report.values["worst_pair"] = pair
            if not ok:
                logger.error(f"Partition fails at k={k}: pair {pair} has support {support}")
                return ServiceResponse(success=False, data=report,
                                       error=f"Partition is not a {k}-partition generator", status_code=1)
            return ServiceResponse(success=True, data=report)
        except Exception as e:
            return self._fail("verify", e)

    def cmd_sweep(self, suite: str, sizes: Optional[Sequence[int]] = None, count: int = 100,
                  seed: int = 7, large: Sequence[int] = (), construct_up_to: int = 0,
                  jobs: Optional[int] = None, progress: bool = False) -> ServiceResponse:
        report = Report(command=f"sweep {suite}")
        try:
            with self._step(report, "sweep", f"Run suite {suite}",
                            f"result = run_suite({suite!r}, sizes={list(sizes) if sizes else None}, "
                            f"count={count}, seed={seed})",
                            {"suite": suite, "count": count, "seed": seed}) as out:
                result = run_suite(suite, sizes=sizes, count=count, seed=seed, large=large,
                                   construct_up_to=construct_up_to, jobs=jobs, progress=progress)
                out["summary"] = f"{len(result.rows)} checks, {len(result.failures)} failed"
            report.values["suite"] = suite
            report.values["checks"] = len(result.rows)
            report.values["failed"] = len(result.failures)
            report.values["pass"] = result.passed
            report.table = result.table()
            report.rows = result.to_dict()["rows"]
            if result.passed:
                return ServiceResponse(success=True, data=report)
            failures = [row for row in report.rows if not row["passed"]]
            dumped = self.store.save_dump(suite, failures)
            if dumped.success:
                report.certificates["dump"] = dumped.data["path"]
            logger.error(f"Suite {suite} failed {len(result.failures)} check(s)")
            return ServiceResponse(success=False, data=report, error=f"Suite {suite} failed",
                                   status_code=EXIT_SUITE_FAILURE)
        except Exception as e:
            return self._fail("sweep", e)
