#!/usr/bin/env python

"""Report class collecting the JSON output of one CLI command.

A report has five sections: the command name, an echo of the
inputs, the result, any certificates, and residuals ("0" on the
exact backend, floats on the approximate one). Errors replace the
result with {"type": ..., "message": ...}.
"""

from typing import Any, Dict, Optional

import numpy as np
from loguru import logger

from schottkit.algebra.linalg import Matrix
from schottkit.io.codec import dump_json, encode_matrix


class Report:
    """Accumulates one command's report and writes it as JSON.

    Parameters
    ----------
    command: str
        Subcommand name, e.g. 'h1'.
    backend: str
        Backend requested on the command line.
    eps: float
        Tolerance requested on the command line.
    """
    def __init__(self, command: str, backend: str = "exact", eps: Optional[float] = None):
        self.command = command
        self.inputs: Dict[str, Any] = {"backend": backend}
        if eps is not None:
            self.inputs["eps"] = eps
        self.result: Dict[str, Any] = {}
        self.certificates: Dict[str, Any] = {}
        self.residuals: Dict[str, Any] = {}
        self.error: Optional[Dict[str, str]] = None

    def echo(self, name: str, value: Any):
        """Record an input (file path or literal) under name."""
        self.inputs[name] = value

    def set(self, name: str, value: Any):
        self.result[name] = _jsonable(value)

    def certify(self, name: str, value: Any):
        self.certificates[name] = _jsonable(value)

    def residual(self, name: str, value: Any):
        self.residuals[name] = "0" if value in (0, None) else float(value)

    def fail(self, exc: Exception):
        self.error = {"type": type(exc).__name__, "message": str(exc)}
        residual = getattr(exc, "residual", None)
        if isinstance(residual, Matrix):
            self.residuals["error"] = encode_matrix(residual)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "certificates": self.certificates,
            "residuals": self.residuals,
        }
        if self.error is not None:
            data["error"] = self.error
        return data

    def write(self, path: Optional[str] = None) -> str:
        """Return the JSON text, also writing it to path if given."""
        text = dump_json(self.to_dict(), path)
        if path:
            logger.info(f"wrote {self.command} report to {path}")
        return text


def _jsonable(value: Any) -> Any:
    """Matrices become nested string lists; numpy scalars become python
    scalars; containers are mapped."""
    if isinstance(value, Matrix):
        return encode_matrix(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(i) for i in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)
