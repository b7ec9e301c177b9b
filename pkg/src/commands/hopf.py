"""Command for finite-dimensional Hopf algebras given by structure constants."""

from typing import List, Optional, Tuple

from src.core import console
from src.core.config import Session
from src.core.errors import SchemaError
from src.core.report import VerificationReport
from src.decoders.json_decoder import decode_functional, load_hopf, parse_int_list
from src.hopf.findim import (
    QT, FinDimHopf, derived_identities_report, dqt_functional_verify, drinfeld_double, function_algebra,
    group_algebra, hopf_verify, qt_verify, u_element, v_element, zn_prime,
)
from src.hopf.modules import (
    anyonic_dim, braiding_report, graded_module, hexagon_report, module_braiding, squared_braiding_identity,
)
from src.storage.report_storage import STRUCTURE_COLUMNS, emit, hopf_payload, save_json, structure_rows


MAKE_KINDS = ('zn-prime', 'group', 'functions', 'double')


def _one_target(args, what: str) -> str:
    if len(args.target) != 1:
        raise ValueError(f"hopf {args.action} needs exactly one {what}")
    return args.target[0]


def _load_with_qt(session: Session, path: str) -> Tuple[FinDimHopf, QT]:
    H, qt, _ = load_hopf(session.register_input(path), session.field)
    if qt is None:
        raise SchemaError(f"{path}: no \"qt\" key, a quasitriangular structure is required")
    return H, qt


def _full_report(H: FinDimHopf, qt: Optional[QT]) -> VerificationReport:
    report = hopf_verify(H)
    if qt is not None:
        report.extend(qt_verify(H, qt))
    return report


def _make(args, session: Session) -> Tuple[FinDimHopf, Optional[QT]]:
    """Build one of the stock examples named by the positional arguments."""
    if len(args.target) != 2 or args.target[0] not in MAKE_KINDS:
        raise ValueError(f"hopf make expects one of {', '.join(MAKE_KINDS)} and an argument, e.g. 'zn-prime 3'")
    kind, arg = args.target
    field = session.field
    if kind == 'zn-prime':
        orders = parse_int_list(arg, 'zn-prime')
        if len(orders) != 1 or orders[0] < 1:
            raise ValueError(f"zn-prime needs one positive order, got {arg!r}")
        return zn_prime(field, orders[0])
    if kind == 'double':
        H, _, _ = load_hopf(session.register_input(arg), field)
        console.status(f"Building the double of {H.name or arg} ({H.dim * H.dim} dimensions)...")
        return drinfeld_double(H)
    orders = parse_int_list(arg, kind)
    if not orders or any(n < 1 for n in orders):
        raise ValueError(f"{kind} needs positive cyclic orders, got {arg!r}")
    if kind == 'group':
        return group_algebra(field, orders), None
    return function_algebra(field, orders), None


def _braiding_rows(H: FinDimHopf, V, W, table) -> List[dict]:
    fmt = H.field.format
    rows = []
    for (v, w), image in sorted(table.items()):
        for (y, x), c in sorted(image.items()):
            if c:
                rows.append({'input': f"{V.labels[v]}⊗{W.labels[w]}",
                             'output': f"{W.labels[y]}⊗{V.labels[x]}", 'coeff': fmt(c)})
    return rows


def run(args, session: Session) -> int:
    """Execute one hopf action."""
    console.banner('Finite-dimensional Hopf algebras')
    field = session.field
    command = f"hopf {args.action}"

    if args.action in ('make', 'double'):
        if args.action == 'double':
            args.target = ['double', _one_target(args, 'Hopf file')]
        H, qt = _make(args, session)
        console.status(f"{H.name or 'H'}: dimension {H.dim}\n")
        report = _full_report(H, qt)
        payload = hopf_payload(H, qt)
        if args.out:
            save_json(payload, args.out)
        tables = {'structure.csv': (structure_rows(H), STRUCTURE_COLUMNS)}
        return emit(session, command, report, {'hopf': payload}, tables)

    if args.action == 'anyonic-dim':
        if not args.dims:
            raise ValueError("hopf anyonic-dim needs --dims, e.g. --dims 1,1")
        dims = parse_int_list(args.dims, '--dims')
        value = anyonic_dim(field, dims)
        return emit(session, command, None, {'dims': dims, 'n': len(dims), 'anyonic_dim': field.format(value)})

    path = _one_target(args, 'Hopf file')

    if args.action == 'verify':
        H, qt, data = load_hopf(session.register_input(path), field)
        console.status(f"Checking {H.name or path} (dimension {H.dim})...")
        report = _full_report(H, qt)
        functional = decode_functional(data, H)
        if functional is not None:
            report.extend(dqt_functional_verify(H, functional))
        result = {'dim': H.dim, 'labels': list(H.labels), 'quasitriangular': qt is not None,
                  'dual_quasitriangular': functional is not None}
        return emit(session, command, report, result, {'structure.csv': (structure_rows(H), STRUCTURE_COLUMNS)})

    H, qt = _load_with_qt(session, path)

    if args.action == 'lemma16':
        report = derived_identities_report(H, qt)
        return emit(session, command, report, {
            'dim': H.dim, 'u': H.format(u_element(H, qt)), 'v': H.format(v_element(H, qt)),
        })

    if not args.degrees:
        raise ValueError("hopf braiding needs --degrees, e.g. --degrees 0,1")
    degrees = parse_int_list(args.degrees, '--degrees')
    other = parse_int_list(args.other_degrees, '--other-degrees') if args.other_degrees else degrees
    V = graded_module(H, degrees)
    W = graded_module(H, other, labels=[f"w{i}" for i in range(len(other))])
    report = braiding_report(H, qt, V, W)
    report.extend(hexagon_report(H, qt, V, W, V))
    rows = _braiding_rows(H, V, W, module_braiding(H, qt, V, W))
    witness = squared_braiding_identity(H, qt, V, W)
    result = {
        'degrees': degrees,
        'other_degrees': other,
        'braiding': rows,
        'symmetric': witness is None,
    }
    if witness is not None:
        result['square_differs_at'] = witness[0]
    return emit(session, command, report, result, {'braiding.csv': (rows, ['input', 'output', 'coeff'])})
