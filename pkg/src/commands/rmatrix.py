"""Command to check an R-matrix: QYBE, summary, second inverse and the companion R'."""

from src.core import console
from src.core.config import Session
from src.core.report import VerificationReport
from src.decoders.json_decoder import load_rmatrix
from src.quantum.planes import plane_conditions, resolve_rprime
from src.quantum.rmatrix import (
    RMatrix, dual_braiding_check, dual_braidings, info, qybe_check, second_inverse, v_invertible,
)
from src.storage.report_storage import emit


ENTRY_COLUMNS = ['i', 'j', 'k', 'l', 'value']


def _entry_rows(r: RMatrix) -> list:
    return [{'i': i, 'j': j, 'k': k, 'l': l, 'value': r.field.format(v)}
            for (i, j, k, l), v in sorted(r.entries.items())]


def run(args, session: Session) -> int:
    """Execute one rmatrix action on an R-matrix file."""
    console.banner('R-matrix')
    console.status(f"Loading {args.file}...")
    r = load_rmatrix(session.register_input(args.file), session.field)
    console.status(f"n = {r.n}, {len(r.entries)} nonzero entries, field {session.field.mode}\n")
    tables = {'entries.csv': (_entry_rows(r), ENTRY_COLUMNS)}

    if args.action == 'check-qybe':
        report = qybe_check(r)
        result = {'n': r.n, 'nonzero_entries': len(r.entries)}
    elif args.action == 'info':
        report = None
        result = info(r)
    elif args.action == 'second-inverse':
        r_tilde = second_inverse(r)
        report = dual_braiding_check(r)
        result = {'second_inverse': r_tilde.to_dict(), 'v_invertible': v_invertible(r_tilde)}
        if not result['v_invertible']:
            console.warn("v = R~^i_a^a_j is singular, the inverse braiding of B(R) is unavailable")
        tables['second_inverse.csv'] = (_entry_rows(r_tilde), ENTRY_COLUMNS)
        psi = dual_braidings(r)
        for name in ('psi_vv', 'psi_co_co', 'psi_vec_co', 'psi_co_vec'):
            tables[f"{name}.csv"] = (getattr(psi, name).to_rows(r.field), ['in', 'out', 'value'])
    else:
        alpha = session.field.parse(args.alpha) if args.alpha else None
        console.status(f"Deriving R' with mode {args.mode}...")
        rescaled, r_prime = resolve_rprime(r, args.mode, alpha)
        report = VerificationReport()
        report.extend(plane_conditions(rescaled, r_prime))
        result = {'mode': args.mode, 'r': rescaled.to_dict(), 'r_prime': r_prime.to_dict()}
        tables['r_prime.csv'] = (_entry_rows(r_prime), ENTRY_COLUMNS)

    return emit(session, f"rmatrix {args.action}", report, result, tables)
