"""
Resumable search checkpoints.

One frontier node per line as "<depth> <graph6>". Lines starting with "#" carry
the run parameters and the best witness so far:

    # n 7
    # pattern 3,3
    # cap 13
    # best 14 F^vhO
"""

import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)


@dataclass
class Checkpoint:
    n: int
    pattern: str
    cap: int
    frontier: List[Tuple[int, str]] = field(default_factory=list)
    best_edges: Optional[int] = None
    best_g6: Optional[str] = None

    def render(self) -> str:
        lines = [f"# n {self.n}", f"# pattern {self.pattern}", f"# cap {self.cap}"]
        if self.best_g6 is not None:
            lines.append(f"# best {self.best_edges} {self.best_g6}")
        lines.extend(f"{depth} {g6}" for depth, g6 in self.frontier)
        return "\n".join(lines) + "\n"


def write_checkpoint(path: Path, checkpoint: Checkpoint) -> None:
    """Replace ``path`` atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(checkpoint.render())
        os.replace(temp, path)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise
    logger.debug(f"Checkpoint with {len(checkpoint.frontier)} frontier nodes written to {path}")


def _bad_line(path: Path, number: int, line: str) -> ValueError:
    logger.error(f"{path}:{number}: malformed checkpoint line '{line}'")
    return ValueError(f"{path}:{number}: malformed checkpoint line '{line}'")


def read_checkpoint(path: Path) -> Optional[Checkpoint]:
    """Parse a checkpoint; None when the file does not exist yet."""
    path = Path(path)
    if not path.exists():
        return None

    header = {}
    frontier: List[Tuple[int, str]] = []
    best: Optional[Tuple[int, str]] = None
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = line.lstrip("#").split()
        if line.startswith("#"):
            if len(fields) == 3 and fields[0] == "best" and fields[1].isdigit():
                best = (int(fields[1]), fields[2])
            elif len(fields) == 2 and fields[0] in ("n", "pattern", "cap"):
                header[fields[0]] = fields[1]
            continue
        if len(fields) != 2 or not fields[0].isdigit():
            raise _bad_line(path, number, line)
        frontier.append((int(fields[0]), fields[1]))

    try:
        checkpoint = Checkpoint(n=int(header["n"]), pattern=header["pattern"], cap=int(header["cap"]), frontier=frontier)
    except (KeyError, ValueError):
        logger.error(f"{path}: checkpoint header needs '# n', '# pattern' and '# cap' lines")
        raise ValueError(f"{path}: checkpoint header needs '# n', '# pattern' and '# cap' lines")
    if best is not None:
        checkpoint.best_edges, checkpoint.best_g6 = best
    return checkpoint
