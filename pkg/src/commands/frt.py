"""Command to build A(R) and evaluate or verify its dual quasitriangular pairing."""

from src.algebra.ncpoly import parse_word
from src.algebra.quotient import completion_check
from src.core import console
from src.core.config import Session
from src.decoders.json_decoder import load_rmatrix
from src.quantum.frt import DQTPairing, dqt_inverse_pair, dqt_pair, dqt_verify, frt_algebra, rep_check
from src.storage.report_storage import emit


def run(args, session: Session) -> int:
    """Execute 'frt pair' or 'frt verify'."""
    console.banner('FRT bialgebra A(R)')
    console.status(f"Loading {args.r}...")
    r = load_rmatrix(session.register_input(args.r), session.field)
    field = session.field

    if args.action == 'pair':
        frt = frt_algebra(r, max(2, session.degree), session.max_rules, verify=False)
        a = parse_word(args.a, frt.alphabet, field)
        b = parse_word(args.b, frt.alphabet, field)
        pairing = DQTPairing(r, args.mode)
        value = dqt_inverse_pair(pairing, a, b) if args.inverse else dqt_pair(pairing, a, b)
        result = {
            'a': frt.alphabet.word_text(a),
            'b': frt.alphabet.word_text(b),
            'mode': args.mode,
            'inverse': bool(args.inverse),
            'value': field.format(value),
        }
        return emit(session, 'frt pair', None, result)

    degree = max(2, session.degree)
    frt = frt_algebra(r, degree, session.max_rules)
    console.status(f"A(R) has {len(frt.algebra.rule_polys())} rewrite rules ({frt.algebra.status})\n")
    report = completion_check(frt.algebra, degree)
    report.extend(rep_check(frt))
    console.status(f"Checking the pairing on monomials up to degree {args.pair_degree}...")
    report.extend(dqt_verify(frt, args.pair_degree))
    result = {
        'n': r.n,
        'rules': frt.algebra.rule_text(),
        'completion': str(frt.algebra.status),
        'pair_degree': args.pair_degree,
    }
    rows = [{'rule': text} for text in frt.algebra.rule_text()]
    return emit(session, 'frt verify', report, result, {'rules.csv': (rows, ['rule'])})
