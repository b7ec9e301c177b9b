"""Command to cobosonize a braided Hopf algebra in A-comodules into A⋉B."""

from src.core import console
from src.core.config import Session
from src.core.errors import SchemaError
from src.decoders.json_decoder import (
    braided_in_comodules, decode_functional, decode_right_coaction, load_hopf, load_json,
)
from src.hopf.bosonize import cobosonize
from src.storage.report_storage import STRUCTURE_COLUMNS, emit, save_split, split_payloads, structure_rows


def run(args, session: Session) -> int:
    """Cobosonize, verify the result and print its tables with the projection pair."""
    console.banner('Cobosonization')
    field = session.field
    A, _, data = load_hopf(session.register_input(args.a), field)
    functional = decode_functional(data, A)
    if functional is None:
        raise SchemaError(f"{args.a}: no \"functional\" key, A must be dual quasitriangular")
    tables, _, _ = load_hopf(session.register_input(args.b), field)
    coaction = decode_right_coaction(load_json(session.register_input(args.coaction)), A, tables.labels)
    B = braided_in_comodules(tables, A, functional, coaction)

    console.status(f"Cobosonizing {tables.name or args.b} ({B.dim}) by {A.name or args.a} ({A.dim})...")
    result = cobosonize(A, functional, B)
    payloads = split_payloads(result, A)
    if args.out:
        save_split(payloads, args.out)
    tables_out = {'structure.csv': (structure_rows(result.hopf), STRUCTURE_COLUMNS)}
    return emit(session, 'cobosonize', result.report, payloads, tables_out)
