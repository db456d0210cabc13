"""Python access to the rlr checks, cohomology and deformation commands."""

import json

from ._rlr import RlrError, command_names, example_names, export_example, normalize, run

__all__ = ["RlrError", "command_names", "example_names", "export_example", "normalize", "run", "run_json"]


def run_json(command, **kwargs):
    """Runs a command with JSON output and returns (exit_code, parsed document)."""
    result = run(command, format="json", **kwargs)
    return result["exit_code"], json.loads(result["output"])
