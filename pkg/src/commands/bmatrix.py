"""Command to build braided matrices B(R): relations, checks, canonical representation, transmutation."""

from src.algebra.braided import bialgebra_axiom_check, psi_descends
from src.algebra.ncpoly import parse_ncpoly
from src.algebra.quotient import completion_check
from src.core import console
from src.core.config import Session
from src.core.linalg import entries
from src.decoders.json_decoder import load_rmatrix
from src.quantum.bmatrix import (
    MAX_TRANSMUTE_DEGREE, braided_matrix_algebra, canonical_rep_check, canonical_rep_poly, chi_relations,
    transmute_check, transmute_poly, triangular_check,
)
from src.quantum.frt import frt_algebra
from src.quantum.rmatrix import is_triangular
from src.storage.report_storage import emit


def _relation_rows(relations, alphabet) -> list:
    return [{'entry': ','.join(str(x) for x in key), 'relation': rel.format(alphabet)}
            for key, rel in sorted(relations.items())]


def run(args, session: Session) -> int:
    """Execute one bmatrix action."""
    console.banner('Braided matrices B(R)')
    console.status(f"Loading {args.r}...")
    r = load_rmatrix(session.register_input(args.r), session.field)
    field = session.field
    degree = max(2, session.degree)
    bm = braided_matrix_algebra(r, degree, session.max_rules, verify=args.action == 'verify')
    alphabet = bm.alphabet
    console.status(f"B(R) has {len(bm.relations)} relations and {len(bm.algebra.rules)} rewrite rules\n")
    command = f"bmatrix {args.action}"

    if args.action == 'relations':
        report = completion_check(bm.algebra, degree)
        rows = _relation_rows(bm.relations, alphabet)
        result = {'relations': rows, 'rules': bm.algebra.rule_text(), 'completion': str(bm.algebra.status)}
        return emit(session, command, report, result, {'relations.csv': (rows, ['entry', 'relation'])})

    if args.action == 'verify':
        check_degree = min(3, degree)
        report = psi_descends(bm.algebra, bm.psi, check_degree)
        report.extend(bialgebra_axiom_check(bm.bialgebra, 2))
        report.extend(canonical_rep_check(bm))
        report.extend(completion_check(bm.algebra, degree))
        triangular = is_triangular(r)
        if triangular:
            report.extend(triangular_check(bm))
        result = {'triangular': triangular, 'psi_invertible': bm.psi_invertible, 'completion': str(bm.algebra.status)}
        return emit(session, command, report, result)

    if args.action == 'rep':
        report = canonical_rep_check(bm)
        result = {'q_matrix': bm.q.to_dict()}
        if args.poly:
            image = canonical_rep_poly(bm, parse_ncpoly(args.poly, alphabet, field))
            result['poly'] = args.poly
            result['image'] = {f"{row},{col}": field.format(v) for (row, col), v in sorted(entries(image).items())}
        return emit(session, command, report, result)

    if args.action == 'transmute':
        frt = frt_algebra(r, degree, session.max_rules, verify=False)
        report = transmute_check(bm, frt, min(MAX_TRANSMUTE_DEGREE, degree))
        result = {}
        if args.poly:
            image = transmute_poly(bm, frt, parse_ncpoly(args.poly, alphabet, field))
            result = {'poly': args.poly, 'image': image.format(frt.alphabet)}
        return emit(session, command, report, result)

    chi = chi_relations(bm)
    rows = _relation_rows(chi.display, chi.alphabet)
    result = {'relations': rows}
    return emit(session, command, chi.report, result, {'chi_relations.csv': (rows, ['entry', 'relation'])})
