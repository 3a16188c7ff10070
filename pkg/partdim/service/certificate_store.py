import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from partdim.config import get_settings
from partdim.service.graph_core import VertexPartition
from partdim.service.graph_io import write_partition

logger = logging.getLogger(__name__)


@dataclass
class ServiceResponse:
    """Standardized service response; status_code is the process exit code"""

    success: bool
    data: Optional[Any] = None
    error: Optional[str] = None
    status_code: int = 0


class CertificateStore:
    """Handles counterexample dumps and certificate files"""

    def __init__(self, dump_dir: Optional[str] = None):
        self.dump_dir = dump_dir or get_settings().dump_dir

    def _dump_path(self, suite: str) -> str:
        return os.path.join(self.dump_dir, f"counterexamples_{suite}.json")

    def save_dump(self, suite: str, failures: List[Dict[str, Any]]) -> ServiceResponse:
        """Write the failing rows of a suite run; the file name depends only on the suite"""
        try:
            os.makedirs(self.dump_dir, exist_ok=True)
            filepath = self._dump_path(suite)
            with open(filepath, "w") as f:
                json.dump({"suite": suite, "failures": failures}, f, indent=2, sort_keys=True)
            logger.info(f"Counterexample dump saved to {filepath}")
            return ServiceResponse(success=True, data={"path": filepath})
        except OSError as e:
            logger.error(f"Failed to save counterexample dump: {e}")
            return ServiceResponse(success=False, error=f"Failed to save dump: {e}", status_code=1)

    def save_certificate(self, partition: VertexPartition, path: str) -> ServiceResponse:
        """Write a partition certificate in the partition file format"""
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, "w") as f:
                f.write(write_partition(partition))
            logger.info(f"Certificate with {len(partition)} blocks written to {path}")
            return ServiceResponse(success=True, data={"path": path})
        except OSError as e:
            logger.error(f"Failed to write certificate: {e}")
            return ServiceResponse(success=False, error=f"Failed to write certificate: {e}", status_code=1)
