"""Configuration loader for braidkit."""

import os
import re
from dataclasses import dataclass, field
from typing import List

from dotenv import load_dotenv


COEFF_MODE_PATTERN = re.compile(r'^(qfield|cyclotomic:[1-9][0-9]*)$')
_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def _int_setting(name: str, default: str, minimum: int) -> int:
    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return value


def load_config() -> dict:
    """
    Load configuration from .env file.

    Returns:
        dict: Configuration dictionary with keys:
            - COEFF_MODE: Coefficient field, 'qfield' or 'cyclotomic:<n>' (from BRAIDKIT_COEFF)
            - DEGREE: Default degree bound for bounded checks (from BRAIDKIT_DEGREE)
            - MAX_RULES: Rule budget for the completion procedure (from BRAIDKIT_MAX_RULES)
            - OUTPUT_DIR: Directory for CSV exports (from BRAIDKIT_OUTPUT_DIR)
            - PROGRESS: Whether to draw progress bars (from BRAIDKIT_PROGRESS)
    """
    load_dotenv()

    progress = os.getenv('BRAIDKIT_PROGRESS', '1').strip().lower()
    config = {
        'COEFF_MODE': os.getenv('BRAIDKIT_COEFF', 'qfield').strip().lower(),
        'DEGREE': _int_setting('BRAIDKIT_DEGREE', '3', 1),
        'MAX_RULES': _int_setting('BRAIDKIT_MAX_RULES', '2000', 1),
        'OUTPUT_DIR': os.getenv('BRAIDKIT_OUTPUT_DIR', 'data'),
        'PROGRESS': progress in _TRUE,
    }

    # Validate fields
    if not COEFF_MODE_PATTERN.match(config['COEFF_MODE']):
        raise ValueError(f"BRAIDKIT_COEFF must be 'qfield' or 'cyclotomic:<n>', got {config['COEFF_MODE']!r}")
    if progress not in _TRUE + _FALSE:
        raise ValueError(f"BRAIDKIT_PROGRESS must be a boolean flag, got {progress!r}")
    if not config['OUTPUT_DIR']:
        raise ValueError("BRAIDKIT_OUTPUT_DIR is set but empty in .env file")

    return config


@dataclass
class Session:
    """One CLI invocation: the active field plus global settings.

    Attributes:
        field: The coefficient field every literal is parsed into
        degree: Degree bound for bounded checks
        max_rules: Rule budget handed to quotient algebras
        pretty: Render reports as tables instead of JSON
        quiet: Suppress status lines on stderr
        save_csv: Export tables as CSV under output_dir
        output_dir: Root directory for CSV exports
        argv: The exact invocation, echoed into every report
        inputs: Input files read during the session, in order
    """
    field: object
    degree: int = 3
    max_rules: int = 2000
    pretty: bool = False
    quiet: bool = False
    save_csv: bool = False
    progress: bool = True
    output_dir: str = 'data'
    argv: List[str] = field(default_factory=list)
    inputs: List[str] = field(default_factory=list)

    def register_input(self, path: str) -> str:
        """Record an input file in the order it is read."""
        self.inputs.append(path)
        return path
