"""Status lines and progress bars on stderr."""

import sys
from typing import Iterable, Optional

from tqdm import tqdm


_state = {'quiet': False, 'progress': True}


def configure(quiet: bool = False, progress: bool = True) -> None:
    """Set the process-wide console switches (called once per CLI session)."""
    _state['quiet'] = quiet
    _state['progress'] = progress


def banner(title: str) -> None:
    status(f"=== {title} ===\n")


def status(message: str) -> None:
    if not _state['quiet']:
        print(message, file=sys.stderr)


def warn(message: str) -> None:
    # Warnings survive --quiet.
    print(f"Warning: {message}", file=sys.stderr)


def progress(iterable: Optional[Iterable] = None, total: Optional[int] = None, desc: str = '', unit: str = 'it'):
    """
    Wrap a sweep in a tqdm progress bar on stderr.

    The bar is disabled when progress is switched off, output is quiet, or
    stderr is not a terminal, so pipelines and tests see no bar output.

    Args:
        iterable: Items to iterate over (may be None for manual updates)
        total: Total number of steps when known
        desc: Short label shown in front of the bar
        unit: Unit name for the step counter

    Returns:
        tqdm: Progress bar usable as an iterator or a context manager
    """
    disabled = _state['quiet'] or not _state['progress'] or not sys.stderr.isatty()
    return tqdm(iterable, total=total, desc=desc, unit=unit, file=sys.stderr, disable=disabled, leave=False)
