"""Main entry point for the braidkit CLI."""

import argparse
import importlib
import sys
from typing import List, Optional

from src.core import console
from src.core.config import Session, load_config
from src.core.errors import BraidkitError, OutputVerificationFailed
from src.core.scalar import Field
from src.storage.report_storage import emit


COMMANDS = ('rmatrix', 'frt', 'bmatrix', 'plane', 'hopf', 'transmute', 'bosonize', 'cobosonize', 'radford', 'help')
COMMAND_TO_MODULE = {
    'rmatrix': 'rmatrix',
    'frt': 'frt',
    'bmatrix': 'bmatrix',
    'plane': 'plane',
    'hopf': 'hopf',
    'transmute': 'transmute',
    'bosonize': 'bosonize',
    'cobosonize': 'cobosonize',
    'radford': 'radford',
}

EXIT_PASSED, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _global_flags() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    # SUPPRESS keeps a subparser from overwriting a flag given before the subcommand.
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument('--coeff', default=argparse.SUPPRESS,
                       help="Coefficient field: 'qfield' or 'cyclotomic:<n>' (default: BRAIDKIT_COEFF or qfield)")
    flags.add_argument('--degree', type=int, default=argparse.SUPPRESS,
                       help='Degree bound for bounded checks (default: BRAIDKIT_DEGREE or 3)')
    flags.add_argument('--pretty', action='store_true', default=argparse.SUPPRESS,
                       help='Render the report as tables instead of JSON')
    flags.add_argument('--quiet', action='store_true', default=argparse.SUPPRESS,
                       help='Suppress status lines on stderr')
    flags.add_argument('--csv', action='store_true', default=argparse.SUPPRESS,
                       help='Also save checks and tables as CSV under the output directory')
    return flags


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog='braidkit',
        description='Exact verification of braided and quantum-group structures',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[flags],
    )
    sub = parser.add_subparsers(dest='command', metavar='command')

    p = sub.add_parser('rmatrix', parents=[flags], help='QYBE, inverses and R\' for an R-matrix file')
    p.add_argument('action', choices=('check-qybe', 'info', 'second-inverse', 'rprime'))
    p.add_argument('file', help='R-matrix JSON file')
    p.add_argument('--mode', default='hecke', help="R' mode for 'rprime': hecke or factor:<k>")
    p.add_argument('--alpha', help="Scale of the R' correction term (scalar literal)")

    p = sub.add_parser('frt', parents=[flags], help='FRT bialgebra A(R) and its pairing')
    p.add_argument('action', choices=('pair', 'verify'))
    p.add_argument('--r', required=True, help='R-matrix JSON file')
    p.add_argument('--a', default='1', help="Left monomial for 'pair', e.g. 't[0,0]*t[1,1]'")
    p.add_argument('--b', default='1', help="Right monomial for 'pair'")
    p.add_argument('--mode', choices=('grid', 'recursive'), default='grid', help='Pairing evaluation route')
    p.add_argument('--inverse', action='store_true', help='Evaluate the convolution inverse instead')
    p.add_argument('--pair-degree', type=int, default=2, help="Monomial degree for 'verify' (default: 2)")

    p = sub.add_parser('bmatrix', parents=[flags], help='Braided matrices B(R)')
    p.add_argument('action', choices=('relations', 'verify', 'rep', 'transmute', 'chi'))
    p.add_argument('--r', required=True, help='R-matrix JSON file')
    p.add_argument('--poly', help="Polynomial in u[i,j] for 'rep' and 'transmute'")

    p = sub.add_parser('plane', parents=[flags], help='Braided covector and vector planes')
    p.add_argument('action', choices=('make', 'verify', 'diff', 'leibniz'))
    p.add_argument('--r', required=True, help='R-matrix JSON file')
    p.add_argument('--rprime', default='hecke', help="free, hecke or factor:<k> (default: hecke)")
    p.add_argument('--alpha', help="Scale of the R' correction term (scalar literal)")
    p.add_argument('--kind', choices=('covector', 'vector'), default='covector')
    p.add_argument('--i', type=int, default=0, help="Derivative index for 'diff'")
    p.add_argument('--poly', help="Polynomial for 'diff', e.g. 'x0*x0*x0' or 'x[0]*x[1]'")
    p.add_argument('--route', choices=('integer', 'leibniz'), default='integer',
                   help="Derivative evaluation route for 'diff'")

    p = sub.add_parser('hopf', parents=[flags], help='Finite-dimensional Hopf algebras by structure constants')
    p.add_argument('action', choices=('make', 'verify', 'lemma16', 'double', 'braiding', 'anyonic-dim'))
    p.add_argument('target', nargs='*',
                   help="make: zn-prime N | group N[,M..] | functions N[,M..] | double FILE; otherwise the Hopf file")
    p.add_argument('--degrees', help="Comma-separated Z_n degrees for 'braiding'")
    p.add_argument('--other-degrees', help="Degrees of the second space for 'braiding' (default: --degrees)")
    p.add_argument('--dims', help="Comma-separated graded dimensions for 'anyonic-dim'")
    p.add_argument('--out', help="Write the tables of 'make' or 'double' to this JSON file")

    p = sub.add_parser('transmute', parents=[flags], help='Transmute H into a braided Hopf algebra B(H1, H)')
    p.add_argument('--h1', required=True, help='Quasitriangular Hopf file (or dual quasitriangular with --dual)')
    p.add_argument('--h', help='Target Hopf file (default: the --h1 file)')
    p.add_argument('--f', help='Bialgebra map H1 -> H (default: identity)')
    p.add_argument('--anyonic', action='store_true', help='Also compare with the closed anyonic form (H1 = Z_n\')')
    p.add_argument('--g', default='g', help="Basis label of the Z_n' generator for --anyonic (default: g)")
    p.add_argument('--dual', action='store_true', help='Cotransmute: modify the product using the functional')

    p = sub.add_parser('bosonize', parents=[flags], help='Bosonize B in H-modules into B⋊H')
    p.add_argument('--h', required=True, help='Quasitriangular Hopf file')
    p.add_argument('--b', required=True, help='Hopf tables of B')
    p.add_argument('--action', required=True, help='H-module structure of B')
    p.add_argument('--anyonic', action='store_true', help="Also check the adjoined-generator recipe (H = Z_n')")
    p.add_argument('--out', help='Directory for hopf.json, projection.json and inclusion.json')

    p = sub.add_parser('cobosonize', parents=[flags], help='Cobosonize B in A-comodules into A⋉B')
    p.add_argument('--a', required=True, help='Dual quasitriangular Hopf file (with "functional")')
    p.add_argument('--b', required=True, help='Hopf tables of B')
    p.add_argument('--coaction', required=True, help='Right A-comodule structure of B')
    p.add_argument('--out', help='Directory for hopf.json, projection.json and inclusion.json')

    p = sub.add_parser('radford', parents=[flags], help='Split a Hopf projection H1 -> H into B⋊H')
    p.add_argument('--h1', required=True, help='Hopf file of H1')
    p.add_argument('--h', required=True, help='Hopf file of H')
    p.add_argument('--p', required=True, help='Projection H1 -> H')
    p.add_argument('--i', required=True, help='Inclusion H -> H1')

    sub.add_parser('help', help='Show this help message')
    return parser


def make_session(args: argparse.Namespace, argv: List[str]) -> Session:
    """Merge .env configuration with the command-line flags (flags win)."""
    config = load_config()
    mode = getattr(args, 'coeff', None) or config['COEFF_MODE']
    degree = getattr(args, 'degree', None)
    if degree is None:
        degree = config['DEGREE']
    if degree < 1:
        raise ValueError(f"--degree must be at least 1, got {degree}")
    return Session(
        field=Field(mode),
        degree=degree,
        max_rules=config['MAX_RULES'],
        pretty=getattr(args, 'pretty', False),
        quiet=getattr(args, 'quiet', False),
        save_csv=getattr(args, 'csv', False),
        progress=config['PROGRESS'],
        output_dir=config['OUTPUT_DIR'],
        argv=list(argv),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI dispatcher for commands."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASSED

    if args.command in (None, 'help'):
        print_help()
        return EXIT_PASSED

    try:
        session = make_session(args, argv)
    except (ValueError, BraidkitError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    console.configure(quiet=session.quiet, progress=session.progress)

    module_name = COMMAND_TO_MODULE[args.command]
    mod = importlib.import_module(f'src.commands.{module_name}')
    try:
        return mod.run(args, session)
    except OutputVerificationFailed as e:
        if e.report is None:
            print(f"Error: {e}", file=sys.stderr)
            return EXIT_FAILED
        console.warn(str(e))
        emit(session, args.command, e.report, {'error': str(e)})
        return EXIT_FAILED
    except BraidkitError as e:
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


def print_help():
    """Print available commands."""
    print("=== braidkit CLI ===\n")
    print("Global options (before or after the command):")
    print("  --coeff MODE          qfield | cyclotomic:<n> (default: BRAIDKIT_COEFF or qfield)")
    print("  --degree D            Degree bound for bounded checks (default: BRAIDKIT_DEGREE or 3)")
    print("  --pretty              Tables instead of JSON")
    print("  --quiet               No status lines on stderr")
    print("  --csv                 Save checks and tables as CSV under BRAIDKIT_OUTPUT_DIR")
    print("\nCommands:")
    print("  rmatrix {check-qybe|info|second-inverse|rprime} FILE")
    print("  frt {pair|verify} --r FILE")
    print("  bmatrix {relations|verify|rep|transmute|chi} --r FILE")
    print("  plane {make|verify|diff|leibniz} --r FILE --rprime {free|hecke|factor:<k>}")
    print("  hopf {make|verify|lemma16|double|braiding|anyonic-dim} ...")
    print("  transmute --h1 FILE [--h FILE --f FILE]")
    print("  bosonize --h FILE --b FILE --action FILE")
    print("  cobosonize --a FILE --b FILE --coaction FILE")
    print("  radford --h1 FILE --h FILE --p FILE --i FILE")
    print("  help                  Show this help message")
    print("\nExit codes: 0 all checks passed, 1 a check failed, 2 usage or input error")
    print("\nExamples:")
    print("  python -m src.main rmatrix check-qybe samples/glq2.json")
    print("  python -m src.main plane diff --r samples/braided_line.json --rprime free --i 0 --poly 'x0*x0*x0'")
    print("  python -m src.main --coeff cyclotomic:3 hopf lemma16 samples/zn3.json")
    print("  python -m src.main --coeff cyclotomic:2 bosonize --h samples/z2prime.json "
          "--b samples/super_line.json --action samples/super_line_action.json --out data/sweedler")
    print("  python -m src.main --coeff cyclotomic:2 radford --h1 data/sweedler/hopf.json --h samples/z2prime.json "
          "--p data/sweedler/projection.json --i data/sweedler/inclusion.json")


if __name__ == "__main__":
    sys.exit(main())
