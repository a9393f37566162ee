import logging
import os
import shutil
import sys
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

# Solvers understanding the (minimize ...) extension of SMT-LIB2.
OPTIMIZING_SOLVERS = ("z3", "optimathsat")


def resolve_solver(path: str) -> Optional[str]:
    """
    Find the solver executable.

    Looks for an explicit path first, then ``PATH``, then the ``bin``
    directory of the running interpreter (where a pip-installed solver
    lands inside a virtualenv).

    :param path: configured executable name or path.
    :return: absolute path, or None when nothing runnable is found.
    """
    candidate = Path(path).expanduser()
    if candidate.is_absolute() or os.sep in path:
        if candidate.is_file() and os.access(candidate, os.X_OK):
            logger.info("Using solver at configured path %s", candidate)
            return str(candidate)
        return None

    found = shutil.which(path)
    if found:
        logger.info("Using solver %s from PATH", found)
        return found

    found = shutil.which(path, path=str(Path(sys.executable).parent))
    if found:
        logger.info("Using solver %s next to the interpreter", found)
        return found

    logger.warning("Solver '%s' not found", path)
    return None


def advertises_optimization(path: str) -> bool:
    """Whether the solver behind ``path`` accepts ``(minimize ...)``."""
    name = Path(path).name.lower()
    return name.startswith(OPTIMIZING_SOLVERS)
