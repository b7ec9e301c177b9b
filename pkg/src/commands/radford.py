"""Command to split a Hopf algebra with a projection into its braided factor."""

from src.core import console
from src.core.config import Session
from src.decoders.json_decoder import load_hopf, load_map
from src.hopf.radford import radford_decompose
from src.storage.report_storage import STRUCTURE_COLUMNS, emit, structure_rows


def run(args, session: Session) -> int:
    """Recover B from H1 ⇄ H and check it is a braided Hopf algebra of crossed modules."""
    console.banner('Radford decomposition')
    field = session.field
    H1, _, _ = load_hopf(session.register_input(args.h1), field)
    H, _, _ = load_hopf(session.register_input(args.h), field)
    p = load_map(session.register_input(args.p), H1, H)
    i = load_map(session.register_input(args.i), H, H1)

    decomposition = radford_decompose(H1, H, p, i)
    B = decomposition.braided
    result = {
        'braided': B.to_dict(),
        'basis': {label: H1.format(vec) for label, vec in zip(B.labels, decomposition.basis)},
        'dim': B.dim,
    }
    return emit(session, 'radford', decomposition.report, result,
                {'structure.csv': (structure_rows(B), STRUCTURE_COLUMNS)})
