"""Tagged diagnostic lines on stderr (``[FLOW] ...``).

stdout belongs to the machine-readable output of the CLI, so diagnostics
never go there.
"""

from __future__ import annotations

import sys

from .config import is_verbose


def log(tag: str, message: str) -> None:
    if is_verbose():
        print(f"[{tag}] {message}", file=sys.stderr)
