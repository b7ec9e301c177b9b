"""Command to transmute a Hopf algebra into a braided one (or cotransmute with --dual)."""

from src.core import console
from src.core.config import Session
from src.core.errors import SchemaError
from src.decoders.json_decoder import decode_functional, load_hopf, load_map
from src.hopf.transmute import (
    anyonic_version, braided_commutativity_report, cocom_check, cotransmute, duality_check, identity_map,
    tables_agree, transmute, universal_r_report,
)
from src.storage.report_storage import STRUCTURE_COLUMNS, emit, structure_rows


def _dual(args, session: Session) -> int:
    field = session.field
    A, _, data = load_hopf(session.register_input(args.h1), field)
    functional = decode_functional(data, A)
    if functional is None:
        raise SchemaError(f"{args.h1}: no \"functional\" key, --dual needs a dual quasitriangular structure")
    console.status(f"Cotransmuting {A.name or args.h1} (dimension {A.dim})...")
    B = cotransmute(A, functional)
    report = B.report
    report.extend(braided_commutativity_report(A, B, functional))
    if args.h:
        # --h names the Hopf algebra A is dual to; compare with its transmutation.
        H, qt, _ = load_hopf(session.register_input(args.h), field)
        if qt is None:
            raise SchemaError(f"{args.h}: no \"qt\" key, the duality comparison needs one")
        BH = transmute(H, qt, H, identity_map(H), qt)
        report.extend(duality_check(BH, B, H))
    tables = {'structure.csv': (structure_rows(B), STRUCTURE_COLUMNS)}
    return emit(session, 'transmute --dual', report, {'braided': B.to_dict()}, tables)


def run(args, session: Session) -> int:
    """Execute transmutation B(H1, H), checking the result."""
    console.banner('Transmutation')
    if args.dual:
        return _dual(args, session)

    field = session.field
    H1, qt1, _ = load_hopf(session.register_input(args.h1), field)
    if qt1 is None:
        raise SchemaError(f"{args.h1}: no \"qt\" key, H1 must be quasitriangular")
    self_transmute = args.h is None or args.h == args.h1
    if self_transmute:
        H, qt = H1, qt1
    else:
        H, qt, _ = load_hopf(session.register_input(args.h), field)
    if args.f:
        f = load_map(session.register_input(args.f), H1, H)
    elif self_transmute or H.labels == H1.labels:
        f = identity_map(H1)
    else:
        raise SchemaError("--f is required when H1 and H have different bases")

    console.status(f"Transmuting {H.name or 'H'} over {H1.name or 'H1'}...")
    B = transmute(H1, qt1, H, f, qt)
    report = B.report
    if B.universal_r is not None:
        report.extend(universal_r_report(B))
        if self_transmute and not args.f:
            report.extend(cocom_check(B))
    else:
        console.status("H has no quasitriangular structure: the braided R and opposite coproduct are omitted")

    if args.anyonic:
        if args.g not in H.labels:
            raise SchemaError(f"--g {args.g!r} is not a basis label of H")
        closed = anyonic_version(H, H.basis(H.labels.index(args.g)), H1.dim)
        report.extend(tables_agree(B, closed))

    result = {'braided': B.to_dict(), 'universal_r_present': B.universal_r is not None}
    tables = {'structure.csv': (structure_rows(B), STRUCTURE_COLUMNS)}
    return emit(session, 'transmute', report, result, tables)
