"""JSON state files and entanglement report files.

State file layout::

    {"format_version": 1,
     "dims": [2, 2],
     "amplitudes": [[re, im], ...]}

Amplitudes are listed in row-major order with factor 1 slowest. Two dims
describe a bipartite state; three or more need a bipartition before any
measure can be computed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .errors import EntangleError
from .measures import EntanglementReport

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
# norm drift tolerated (and repaired) on load
LOAD_NORM_TOL = 1e-6


class StateFileError(EntangleError):
    """Malformed or unsupported state file."""


class NormError(EntangleError):
    """State file amplitudes are too far from unit norm to repair."""


@dataclass(frozen=True, eq=False)
class StateFile:
    dims: tuple[int, ...]
    amplitudes: np.ndarray
    format_version: int = FORMAT_VERSION

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    @property
    def is_bipartite(self) -> bool:
        return len(self.dims) == 2


def state_to_json(dims, amplitudes) -> str:
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    doc = {
        "format_version": FORMAT_VERSION,
        "dims": [int(d) for d in dims],
        "amplitudes": [[float(a.real), float(a.imag)] for a in amps],
    }
    return json.dumps(doc, indent=1) + "\n"


def write_state(path: str | Path, dims, amplitudes) -> None:
    """Write amplitudes with full float precision (``repr`` round-trips)."""
    amps = np.asarray(amplitudes)
    if amps.size != math.prod(dims):
        raise StateFileError(f"{amps.size} amplitudes do not match dims {list(dims)}")
    Path(path).write_text(state_to_json(dims, amps))


def parse_state(text: str) -> StateFile:
    """Parse and validate state file text.

    Raises
    ------
    StateFileError
        On malformed JSON or schema violations.
    NormError
        If the norm is more than ``LOAD_NORM_TOL`` away from 1.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFileError("top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise StateFileError(f"unsupported format_version {version!r}")
    dims = doc.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) < 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise StateFileError("dims must be a list of at least two positive integers")
    raw = doc.get("amplitudes")
    if not isinstance(raw, list) or len(raw) != math.prod(dims):
        raise StateFileError(f"amplitudes must be a list of {math.prod(dims)} [re, im] pairs")
    try:
        pairs = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError("amplitudes must be numeric [re, im] pairs") from exc
    if pairs.shape != (len(raw), 2):
        raise StateFileError("amplitudes must be numeric [re, im] pairs")
    if not np.all(np.isfinite(pairs)):
        raise StateFileError("amplitudes must be finite")
    # assign parts directly; re + 1j*im would turn an imaginary -0.0 into +0.0
    amps = np.empty(len(raw), dtype=np.complex128)
    amps.real, amps.imag = pairs[:, 0], pairs[:, 1]
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > LOAD_NORM_TOL:
        raise NormError(f"state norm {norm!r} deviates from 1 by more than {LOAD_NORM_TOL}")
    # rounding-level drift is left alone so files round-trip bit for bit
    if abs(norm - 1.0) > 1e-12:
        logger.warning("renormalizing state (norm = %r)", norm)
        amps = amps / norm
    return StateFile(tuple(dims), amps, version)


def read_state(path: str | Path) -> StateFile:
    return parse_state(Path(path).read_text())


def file_checksum(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def report_document(
    report: EntanglementReport,
    *,
    checksum: str,
    version: str,
    timestamp: bool = True,
    partition: list[int] | None = None,
) -> dict:
    doc = report.to_dict()
    doc["partition_a"] = partition
    doc["input_sha256"] = checksum
    doc["tool_version"] = version
    doc["timestamp"] = datetime.now(timezone.utc).isoformat() if timestamp else None
    return doc


def report_to_json(doc: dict) -> str:
    # json writes floats with repr, the shortest string that round-trips (17 significant digits max)
    return json.dumps(doc, indent=2) + "\n"


def report_to_text(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, float):
            value = f"{value:.17g}"
        elif isinstance(value, list) and value and isinstance(value[0], float):
            value = ", ".join(f"{v:.17g}" for v in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
