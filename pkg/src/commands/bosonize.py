"""Command to bosonize a braided Hopf algebra in H-modules into B⋊H."""

from src.core import console
from src.core.config import Session
from src.core.errors import SchemaError
from src.decoders.json_decoder import braided_in_modules, decode_action, load_hopf, load_json
from src.hopf.bosonize import anyonic_bosonization_check, bosonize
from src.storage.report_storage import STRUCTURE_COLUMNS, emit, save_split, split_payloads, structure_rows


def run(args, session: Session) -> int:
    """Bosonize, verify the result and print its tables with the projection pair."""
    console.banner('Bosonization')
    field = session.field
    H, qt, _ = load_hopf(session.register_input(args.h), field)
    if qt is None:
        raise SchemaError(f"{args.h}: no \"qt\" key, H must be quasitriangular")
    tables, _, _ = load_hopf(session.register_input(args.b), field)
    M = decode_action(load_json(session.register_input(args.action)), H)
    B = braided_in_modules(tables, H, qt, M)

    console.status(f"Bosonizing {tables.name or args.b} ({B.dim}) by {H.name or args.h} ({H.dim})...")
    result = bosonize(H, qt, B)
    report = result.report
    if args.anyonic:
        if M.degrees is None:
            raise SchemaError("--anyonic needs a graded action (\"degrees\")")
        g = H.labels.index('g') if 'g' in H.labels else 1
        report.extend(anyonic_bosonization_check(result, B, H.dim, g=g))

    payloads = split_payloads(result, H)
    if args.out:
        save_split(payloads, args.out)
    tables_out = {'structure.csv': (structure_rows(result.hopf), STRUCTURE_COLUMNS)}
    return emit(session, 'bosonize', report, payloads, tables_out)
