import json
import logging
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


@dataclass
class LogEntry:
    """Represents a single logged computation step"""

    timestamp: datetime
    operation_type: str
    description: str
    python_code: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    result_summary: Optional[str] = None
    elapsed: float = 0.0


class RunLogger:
    """Logs the library calls behind each command and replays them as a Python script"""

    def __init__(self):
        self.entries: List[LogEntry] = []
        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")

    def log_operation(
        self,
        operation_type: str,
        description: str,
        python_code: str,
        parameters: Dict[str, Any] = None,
        result_summary: str = None,
        elapsed: float = 0.0,
    ) -> None:
        entry = LogEntry(
            timestamp=datetime.now(),
            operation_type=operation_type,
            description=description,
            python_code=python_code,
            parameters=parameters or {},
            result_summary=result_summary,
            elapsed=elapsed,
        )
        self.entries.append(entry)
        logger.debug(f"Logged operation: {operation_type} - {description}")

    def generate_python_script(self, include_comments: bool = True) -> str:
        """Generate a script that re-runs every logged call in order"""
        lines = [
            "# partdim replay script",
            f"# Session: {self.session_id}",
            f"# Total operations: {len(self.entries)}",
            "",
        ]
        lines.extend(self._generate_imports())
        lines.extend(["", "", "def main():", '    """Re-run the logged partdim calls"""'])

        if not self.entries:
            lines.append("    pass")
        for i, entry in enumerate(self.entries, 1):
            if include_comments:
                lines.append(f"    # Operation {i}: {entry.description}")
                if entry.result_summary:
                    lines.append(f"    # Result: {entry.result_summary}")
            for code_line in entry.python_code.strip().split("\n"):
                if code_line.strip():
                    lines.append(f"    {code_line}")
            lines.append("")

        lines.extend(["", 'if __name__ == "__main__":', "    main()", ""])
        return "\n".join(lines)

    def _generate_imports(self) -> List[str]:
        return [
            "from partdim.service.graph_core import generate",
            "from partdim.service.graph_io import load_graph, load_partition, save_graph",
            "from partdim.service.metric_dim import dim_k_bruteforce",
            "from partdim.service.partition_dim import (",
            "    is_k_partition_generator,",
            "    min_pair_block_support,",
            "    path_partition_construction,",
            "    pd_k_bruteforce,",
            ")",
            "from partdim.service.resolve_core import clique_number, dimensional_value, dimensional_value_max",
            "from partdim.service.sweep_service import run_suite",
            "from partdim.service.tree_analysis import tree_dim_k, tree_partition_construction",
        ]

    def get_operation_summary(self) -> Dict[str, Any]:
        operation_counts: Dict[str, int] = {}
        for entry in self.entries:
            operation_counts[entry.operation_type] = operation_counts.get(entry.operation_type, 0) + 1
        return {
            "session_id": self.session_id,
            "total_operations": len(self.entries),
            "operation_types": operation_counts,
            "total_elapsed": round(sum(e.elapsed for e in self.entries), 6),
        }

    def export_log_json(self) -> str:
        entries_data = [
            {
                "timestamp": entry.timestamp.isoformat(),
                "operation_type": entry.operation_type,
                "description": entry.description,
                "python_code": entry.python_code,
                "parameters": entry.parameters,
                "result_summary": entry.result_summary,
                "elapsed": round(entry.elapsed, 6),
            }
            for entry in self.entries
        ]
        return json.dumps(
            {"session_id": self.session_id, "summary": self.get_operation_summary(), "entries": entries_data},
            indent=2,
        )
