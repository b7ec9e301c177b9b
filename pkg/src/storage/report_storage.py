"""Emission of command results: JSON on stdout, pandas tables for --pretty, CSV exports."""

import json
import os
import sys
from typing import Dict, List, Optional, Tuple

import pandas as pd

from src.core import console
from src.core.config import Session
from src.core.report import VerificationReport
from src.hopf.findim import FinDimHopf, QT, Vec


def build_payload(session: Session, command: str, report: Optional[VerificationReport], result: dict) -> dict:
    """
    Assemble the document printed for one invocation.

    The payload carries the exact argv and the coefficient mode so a report
    can be reproduced; it has no timestamps.
    """
    payload = {
        'command': command,
        'argv': list(session.argv),
        'coeff_mode': session.field.mode,
        'inputs': list(session.inputs),
        'result': result,
    }
    if report is not None:
        payload['report'] = report.to_dict()
    return payload


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)


def checks_frame(report: VerificationReport) -> pd.DataFrame:
    rows = [{
        'check': check.name,
        'status': 'pass' if check.passed else 'fail',
        'witness': check.witness or '',
        'residual': check.residual or '',
    } for check in report.checks]
    return pd.DataFrame(rows, columns=['check', 'status', 'witness', 'residual'])


def _scalar_rows(result: dict) -> List[dict]:
    return [{'key': key, 'value': value} for key, value in sorted(result.items())
            if isinstance(value, (str, int, float, bool)) or value is None]


def render_pretty(payload: dict) -> str:
    """Human-readable rendering: a summary table, then the check table."""
    lines = [f"=== braidkit {payload['command']} ({payload['coeff_mode']}) ==="]
    summary = _scalar_rows(payload.get('result', {}))
    if summary:
        lines.append(pd.DataFrame(summary, columns=['key', 'value']).to_string(index=False))
    for key, value in sorted(payload.get('result', {}).items()):
        if isinstance(value, list) and value and all(isinstance(row, dict) for row in value):
            lines.append(f"\n{key}:")
            lines.append(pd.DataFrame(value).to_string(index=False))
    report = payload.get('report')
    if report is not None:
        rows = []
        for check in report['checks']:
            witness = check.get('witness', {})
            rows.append({'check': check['name'], 'status': check['status'],
                         'witness': witness.get('at') or '', 'residual': witness.get('residual') or ''})
        lines.append('')
        lines.append(pd.DataFrame(rows, columns=['check', 'status', 'witness', 'residual']).to_string(index=False))
        lines.append(f"\nOverall: {'PASSED' if report['passed'] else 'FAILED'}")
    return '\n'.join(lines)


def save_rows_to_csv(rows: List[dict], columns: List[str], output_dir: str, command: str, filename: str) -> Optional[str]:
    """
    Save rows to CSV under <output_dir>/<command>/.

    Returns:
        str: The written path, or None when there was nothing to save
    """
    if not rows:
        console.status(f"No rows to save for {filename}")
        return None
    data_dir = os.path.join(output_dir, command)
    os.makedirs(data_dir, exist_ok=True)
    filepath = os.path.join(data_dir, filename)
    df = pd.DataFrame(rows, columns=columns)
    df.to_csv(filepath, index=False, encoding='utf-8')
    console.status(f"Saved {len(rows)} rows to {filepath}")
    return filepath


def save_json(payload: dict, filepath: str) -> str:
    """Write a table document (Hopf tables, maps) where later commands can read it."""
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(dumps(payload))
        f.write('\n')
    console.status(f"Saved tables to {filepath}")
    return filepath


def structure_rows(H: FinDimHopf) -> List[dict]:
    """Nonzero structure constants of H, one row per entry."""
    fmt = H.field.format
    L = H.labels
    rows = []
    for (i, j), vec in sorted(H.product.items()):
        for k, c in sorted(vec.items()):
            rows.append({'table': 'product', 'inputs': f"{L[i]},{L[j]}", 'output': L[k], 'coeff': fmt(c)})
    for i in range(H.dim):
        for (a, b), c in sorted(H.coproduct.get(i, {}).items()):
            rows.append({'table': 'coproduct', 'inputs': L[i], 'output': f"{L[a]}⊗{L[b]}", 'coeff': fmt(c)})
    for i, c in sorted(H.counit.items()):
        if c:
            rows.append({'table': 'counit', 'inputs': L[i], 'output': '1', 'coeff': fmt(c)})
    if H.antipode is not None:
        for i in range(H.dim):
            for k, c in sorted(H.antipode.get(i, {}).items()):
                rows.append({'table': 'antipode', 'inputs': L[i], 'output': L[k], 'coeff': fmt(c)})
    return rows


STRUCTURE_COLUMNS = ['table', 'inputs', 'output', 'coeff']


def emit(session: Session, command: str, report: Optional[VerificationReport], result: dict,
         tables: Optional[Dict[str, Tuple[List[dict], List[str]]]] = None) -> int:
    """
    Print the payload and export CSVs when asked.

    Args:
        session: Active session
        command: Command name, also the CSV subdirectory
        report: Verification report deciding the exit code, if any
        result: Command-specific result document
        tables: filename -> (rows, columns) exported with --csv

    Returns:
        int: 0 when the report passed (or there is none), 1 otherwise
    """
    payload = build_payload(session, command, report, result)
    if session.pretty:
        print(render_pretty(payload))
    else:
        print(dumps(payload))
    sys.stdout.flush()

    if session.save_csv:
        slug = command.replace(' ', '_')
        if report is not None:
            df = checks_frame(report)
            save_rows_to_csv(df.to_dict('records'), list(df.columns), session.output_dir, slug, 'checks.csv')
        for filename, (rows, columns) in (tables or {}).items():
            save_rows_to_csv(rows, columns, session.output_dir, slug, filename)
    if report is not None and not report.passed:
        console.status(f"{len(report.failures())} check(s) failed")
        return 1
    return 0


# -- payload pieces shared by the Hopf commands ---------------------------------


def hopf_payload(H: FinDimHopf, qt: Optional[QT] = None, functional=None) -> dict:
    """H.to_dict() with the optional structure added, re-readable by decode_hopf."""
    out = H.to_dict()
    out['coeff_mode'] = H.field.mode
    zero = H.field.zero
    fmt = H.field.format
    if qt is not None:
        out['qt'] = [[fmt(qt.element.get((i, j), zero)) for j in range(H.dim)] for i in range(H.dim)]
    if functional is not None:
        out['functional'] = [[fmt(functional.get((i, j), zero)) for j in range(H.dim)] for i in range(H.dim)]
    return out


def map_payload(source_labels: List[str], target: FinDimHopf, images: Dict[int, Vec]) -> dict:
    """A linear map in the layout decode_map reads."""
    fmt = target.field.format
    return {
        'coeff_mode': target.field.mode,
        'images': {source_labels[i]: {target.labels[k]: fmt(c) for k, c in sorted(vec.items())}
                   for i, vec in sorted(images.items())},
    }


def split_payloads(result, background: FinDimHopf) -> Dict[str, dict]:
    """hopf, projection and inclusion documents of a (co)bosonization, keyed by file stem."""
    bos = result.hopf
    return {
        'hopf': hopf_payload(bos),
        'projection': map_payload(bos.labels, background, result.projection),
        'inclusion': map_payload(background.labels, bos, result.inclusion),
    }


def save_split(payloads: Dict[str, dict], out_dir: str) -> List[str]:
    """Write the split documents as <out_dir>/<stem>.json for the radford command."""
    return [save_json(doc, os.path.join(out_dir, f"{stem}.json")) for stem, doc in sorted(payloads.items())]
