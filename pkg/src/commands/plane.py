"""Command to build braided planes and differentiate on them."""

import re

from src.algebra.braided import bialgebra_axiom_check, psi_descends
from src.algebra.ncpoly import parse_ncpoly
from src.algebra.quotient import completion_check
from src.core import console
from src.core.config import Session
from src.decoders.json_decoder import load_rmatrix
from src.quantum.planes import leibniz_check, partial, plane_algebra, plane_conditions, resolve_rprime
from src.storage.report_storage import emit


_SHORT_NAME = re.compile(r'\b([xv])(\d+)\b')


def expand_names(text: str) -> str:
    """Accept x0, v1 as shorthand for x[0], v[1]."""
    return _SHORT_NAME.sub(r'\1[\2]', text)


def run(args, session: Session) -> int:
    """Execute one plane action."""
    console.banner('Braided plane')
    console.status(f"Loading {args.r}...")
    r = load_rmatrix(session.register_input(args.r), session.field)
    field = session.field
    alpha = field.parse(args.alpha) if args.alpha else None
    console.status(f"Resolving R' with mode {args.rprime}...")
    braiding, r_prime = resolve_rprime(r, args.rprime, alpha)
    degree = max(2, session.degree)
    plane = plane_algebra(args.kind, braiding, r_prime, degree + 1, session.max_rules,
                          verify=args.action == 'leibniz')
    algebra = plane.algebra
    command = f"plane {args.action}"

    if args.action == 'make':
        counts = {str(d): len(algebra.normal_words(d)) for d in range(degree + 1)}
        result = {
            'kind': args.kind,
            'r': braiding.to_dict(),
            'r_prime': r_prime.to_dict(),
            'rules': algebra.rule_text(),
            'normal_word_counts': counts,
            'hopf': plane.is_hopf,
        }
        return emit(session, command, None, result, {'rules.csv': ([{'rule': t} for t in algebra.rule_text()], ['rule'])})

    if args.action == 'verify':
        report = plane_conditions(braiding, r_prime)
        report.extend(completion_check(algebra, degree))
        report.extend(psi_descends(algebra, plane.bialgebra.psi, min(3, degree)))
        report.extend(bialgebra_axiom_check(plane.bialgebra, degree))
        return emit(session, command, report, {'kind': args.kind, 'hopf': plane.is_hopf})

    if args.action == 'diff':
        if not args.poly:
            raise ValueError("plane diff needs --poly")
        poly = parse_ncpoly(expand_names(args.poly), plane.alphabet, field)
        value = partial(plane, args.i, poly, route=args.route)
        result = {'i': args.i, 'poly': poly.format(plane.alphabet), 'route': args.route,
                  'derivative': value.format(plane.alphabet)}
        return emit(session, command, None, result)

    report = leibniz_check(plane, degree)
    return emit(session, command, report, {'degree': degree})
