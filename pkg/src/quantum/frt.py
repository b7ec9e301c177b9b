"""The FRT bialgebra A(R) and its dual quasitriangular pairing.

Generators t[i,j] are declared in lexicographic (i, j) order, so letter
i*n + j is t^i_j. The pairing is evaluated either from the full grid of
R-matrices (partition function) or by the bicharacter recursion; the two
are independent and must agree.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra.braided import BraidedBialgebra, bialgebra_axiom_check, trivial_braiding
from src.algebra.ncpoly import Alphabet, NCPoly, Word
from src.algebra.quotient import QuotientAlgebra
from src.core import console
from src.core.errors import OutputVerificationFailed
from src.core.linalg import add_into, entries, identity, matmul, matrix_from_entries
from src.core.report import VerificationReport
from src.quantum.rmatrix import RMatrix, inverse


def matrix_alphabet(name: str, n: int) -> Alphabet:
    return Alphabet([f"{name}[{i},{j}]" for i in range(n) for j in range(n)])


def matrix_relations(r: RMatrix, alphabet: Alphabet) -> List[NCPoly]:
    """sum R^i_a^k_b t^a_j t^b_l - sum t^k_d t^i_c R^c_j^d_l for every (i, j, k, l)."""
    n, field = r.n, r.field
    relations = []
    for i, j, k, l in product(range(n), repeat=4):
        terms: Dict[Word, object] = {}
        for a in range(n):
            for b in range(n):
                add_into(terms, (a * n + j, b * n + l), r.get(i, a, k, b))
        for c in range(n):
            for d in range(n):
                add_into(terms, (k * n + d, i * n + c), -r.get(c, j, d, l))
        if terms:
            relations.append(NCPoly(field, terms))
    return relations


def matrix_coproduct(field, n: int) -> Dict[int, Dict[Tuple[Word, Word], object]]:
    """Delta t^i_j = sum_a t^i_a (x) t^a_j."""
    return {i * n + j: {((i * n + a,), (a * n + j,)): field.one for a in range(n)}
            for i in range(n) for j in range(n)}


def matrix_counit(field, n: int) -> Dict[int, object]:
    return {i * n + i: field.one for i in range(n)}


def letters(n: int, word: Word) -> List[Tuple[int, int]]:
    """Word over a matrix alphabet as its (upper, lower) index pairs."""
    return [divmod(letter, n) for letter in word]


@dataclass
class FRTBialgebra:
    """A(R) with the matrix coproduct and counit.

    Attributes:
        r: The R-matrix
        algebra: Generators t[i,j] modulo R t1 t2 = t2 t1 R
        bialgebra: The same algebra with the flip braiding, coproduct and counit
    """
    r: RMatrix
    algebra: QuotientAlgebra
    bialgebra: BraidedBialgebra

    @property
    def n(self) -> int:
        return self.r.n

    @property
    def alphabet(self) -> Alphabet:
        return self.algebra.alphabet


def frt_algebra(r: RMatrix, degree_bound: int, max_rules: int = 2000, verify: bool = True) -> FRTBialgebra:
    """
    Build A(R) and check that the matrix coproduct and counit respect its relations.

    Raises:
        OutputVerificationFailed: If the bialgebra checks fail
    """
    field, n = r.field, r.n
    alphabet = matrix_alphabet('t', n)
    console.status(f"Building A(R) on {len(alphabet)} generators...")
    algebra = QuotientAlgebra(alphabet, field, matrix_relations(r, alphabet), degree_bound, max_rules)
    psi = trivial_braiding(field, alphabet, alphabet)
    bialgebra = BraidedBialgebra(algebra, psi, matrix_coproduct(field, n), matrix_counit(field, n))
    if verify:
        report = bialgebra_axiom_check(bialgebra, min(2, degree_bound))
        if not report.passed:
            raise OutputVerificationFailed("A(R) coproduct is not an algebra map", report)
    return FRTBialgebra(r, algebra, bialgebra)


# -- fundamental representations ----------------------------------------


def generator_image(r: RMatrix, sign: str, i: int, j: int, r_inv: Optional[RMatrix] = None) -> DomainMatrix:
    """rho+(t^i_j)^k_l = R^i_j^k_l, rho-(t^i_j)^k_l = (R^-1)^k_l^i_j."""
    n = r.n
    if sign == '+':
        dok = {(k, l): r.get(i, j, k, l) for k in range(n) for l in range(n)}
    elif sign == '-':
        source = r_inv if r_inv is not None else inverse(r)
        dok = {(k, l): source.get(k, l, i, j) for k in range(n) for l in range(n)}
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return matrix_from_entries(r.field, n, n, dok)


def fundamental_rep(frt: FRTBialgebra, sign: str, mono: Word) -> DomainMatrix:
    """rho(t^{i1}_{j1} ... t^{im}_{jm}) = rho(t^{i1}_{j1}) ... rho(t^{im}_{jm})."""
    r = frt.r
    r_inv = inverse(r) if sign == '-' else None
    result = identity(r.field, r.n)
    for i, j in letters(r.n, mono):
        result = matmul(result, generator_image(r, sign, i, j, r_inv))
    return result


def rep_of_poly(frt: FRTBialgebra, sign: str, poly: NCPoly) -> DomainMatrix:
    r = frt.r
    total: Dict[Tuple[int, int], object] = {}
    for word, c in poly.terms.items():
        for key, value in entries(fundamental_rep(frt, sign, word)).items():
            add_into(total, key, c * value)
    return matrix_from_entries(r.field, r.n, r.n, total)


def rep_check(frt: FRTBialgebra) -> VerificationReport:
    """rho+ and rho- send every relation of A(R) to the zero matrix."""
    report = VerificationReport()
    field = frt.r.field
    for sign, name in (('+', 'rep_plus_relations'), ('-', 'rep_minus_relations')):
        failure = None
        for rel in frt.algebra.relations:
            image = entries(rep_of_poly(frt, sign, rel))
            if image:
                key = min(image)
                failure = (f"{rel.format(frt.alphabet)} at {key}", field.format(image[key]))
                break
        report.record(name, failure)
    return report


# -- dual quasitriangular pairing ---------------------------------------


def partition_function(r: RMatrix, upper_a: Sequence[int], lower_a: Sequence[int],
                       upper_b: Sequence[int], lower_b: Sequence[int]):
    """
    Entry of the grid R_{1,M+1} ... R_{1,M+N} R_{2,M+1} ... R_{M,M+N}.

    Spaces 1..M carry (upper_a, lower_a), spaces M+1..M+N carry
    (upper_b, lower_b); the product is read row after row.
    """
    field = r.field
    m = len(upper_a)
    operators = [(a, m + b) for a in range(m) for b in range(len(upper_b))]
    states: Dict[Tuple[int, ...], object] = {tuple(lower_a) + tuple(lower_b): field.one}
    rows: Dict[Tuple[int, int], List[Tuple[int, int, object]]] = {}
    for (i, j, k, l), value in r.entries.items():
        rows.setdefault((j, l), []).append((i, k, value))
    for first, second in reversed(operators):
        grown: Dict[Tuple[int, ...], object] = {}
        for state, coeff in states.items():
            for y1, y2, value in rows.get((state[first], state[second]), ()):
                moved = list(state)
                moved[first], moved[second] = y1, y2
                add_into(grown, tuple(moved), coeff * value)
        states = grown
    return states.get(tuple(upper_a) + tuple(upper_b), field.zero)


class DQTPairing:
    """The pairing R(a (x) b) on monomials of A(R).

    Args:
        r: The R-matrix
        mode: 'grid' (partition function) or 'recursive' (bicharacter laws)
    """

    def __init__(self, r: RMatrix, mode: str = 'grid'):
        if mode not in ('grid', 'recursive'):
            raise ValueError(f"unknown pairing mode {mode!r}")
        self.r = r
        self.mode = mode
        self.field = r.field
        self._r_inv: Optional[RMatrix] = None
        self._recursive = lru_cache(maxsize=None)(self._recursive_pair)

    @property
    def r_inv(self) -> RMatrix:
        if self._r_inv is None:
            self._r_inv = inverse(self.r)
        return self._r_inv

    def _counit(self, pairs) -> object:
        return self.field.one if all(i == j for i, j in pairs) else self.field.zero

    def pair(self, a: Word, b: Word):
        n = self.r.n
        pa, pb = letters(n, a), letters(n, b)
        if not pa:
            return self._counit(pb)
        if not pb:
            return self._counit(pa)
        if self.mode == 'recursive':
            return self._recursive(tuple(pa), tuple(pb))
        # second argument is t^{kN}_{lN} ... t^{k1}_{l1}
        pb = pb[::-1]
        return partition_function(self.r, [i for i, _ in pa], [j for _, j in pa],
                                  [k for k, _ in pb], [l for _, l in pb])

    def _recursive_pair(self, pa: Tuple[Tuple[int, int], ...], pb: Tuple[Tuple[int, int], ...]):
        field, n = self.field, self.r.n
        if not pa:
            return self._counit(pb)
        if not pb:
            return self._counit(pa)
        if len(pa) == 1 and len(pb) == 1:
            (i, j), (k, l) = pa[0], pb[0]
            return self.r.get(i, j, k, l)
        total = field.zero
        if len(pa) > 1:
            # R(a a' (x) c) = sum R(a (x) c(1)) R(a' (x) c(2))
            head, rest = pa[:1], pa[1:]
            for middle in product(range(n), repeat=len(pb)):
                first = tuple((k, x) for (k, _), x in zip(pb, middle))
                second = tuple((x, l) for (_, l), x in zip(pb, middle))
                left = self._recursive(head, first)
                if left:
                    total = total + left * self._recursive(rest, second)
            return total
        # R(a (x) b b') = sum R(a(1) (x) b') R(a(2) (x) b)
        (i, j), = pa
        head, rest = pb[:1], pb[1:]
        for x in range(n):
            left = self._recursive(((i, x),), rest)
            if left:
                total = total + left * self._recursive(((x, j),), head)
        return total

    def inverse_pair(self, a: Word, b: Word):
        """R^-1(a (x) b), from the grid of R^-1 with the first argument reversed."""
        n = self.r.n
        pa, pb = letters(n, a), letters(n, b)
        if not pa:
            return self._counit(pb)
        if not pb:
            return self._counit(pa)
        pa = pa[::-1]
        return partition_function(self.r_inv, [i for i, _ in pa], [j for _, j in pa],
                                  [k for k, _ in pb], [l for _, l in pb])


def dqt_pair(pairing: DQTPairing, a: Word, b: Word):
    return pairing.pair(a, b)


def dqt_inverse_pair(pairing: DQTPairing, a: Word, b: Word):
    return pairing.inverse_pair(a, b)


def pair_poly(pairing: DQTPairing, a: NCPoly, b: NCPoly):
    total = pairing.field.zero
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            total = total + ca * cb * pairing.pair(wa, wb)
    return total


def monomials(n: int, degree: int, minimum: int = 0) -> List[Word]:
    out: List[Word] = []
    for d in range(minimum, degree + 1):
        out.extend(product(range(n * n), repeat=d))
    return [tuple(w) for w in out]


def _split_matrix_word(n: int, word: Word) -> List[Tuple[Word, Word]]:
    """Matrix coproduct of a monomial: sum_X t^I_X (x) t^X_J."""
    pairs = letters(n, word)
    out = []
    for middle in product(range(n), repeat=len(pairs)):
        first = tuple(i * n + x for (i, _), x in zip(pairs, middle))
        second = tuple(x * n + j for (_, j), x in zip(pairs, middle))
        out.append((first, second))
    return out


def dqt_verify(frt: FRTBialgebra, degree: int) -> VerificationReport:
    """
    Checks on all monomial pairs with both degrees at most ``degree``.

    grid_recursive_agree, convolution_inverse_left / _right,
    almost_commutative (as polynomials modulo the relations) and
    relations_pair_to_zero on either side.
    """
    r, field, n = frt.r, frt.r.field, frt.n
    grid = DQTPairing(r, 'grid')
    recursive = DQTPairing(r, 'recursive')
    alphabet = frt.alphabet
    words = monomials(n, degree)
    pairs = [(a, b) for a in words for b in words]
    report = VerificationReport()

    failure = None
    for a, b in console.progress(pairs, desc='Grid vs recursive', unit='pair'):
        g, rec = grid.pair(a, b), recursive.pair(a, b)
        if not field.eq(g, rec):
            failure = (f"{alphabet.word_text(a)} ⊗ {alphabet.word_text(b)}", field.format(g - rec))
            break
    report.record('grid_recursive_agree', failure)

    left_failure = right_failure = None
    for a, b in console.progress(pairs, desc='Convolution inverse', unit='pair'):
        expected = grid._counit(letters(n, a) + letters(n, b))
        left = right = field.zero
        for a1, a2 in _split_matrix_word(n, a):
            for b1, b2 in _split_matrix_word(n, b):
                left = left + grid.pair(a1, b1) * grid.inverse_pair(a2, b2)
                right = right + grid.inverse_pair(a1, b1) * grid.pair(a2, b2)
        where = f"{alphabet.word_text(a)} ⊗ {alphabet.word_text(b)}"
        if left_failure is None and not field.eq(left, expected):
            left_failure = (where, field.format(left - expected))
        if right_failure is None and not field.eq(right, expected):
            right_failure = (where, field.format(right - expected))
    report.record('convolution_inverse_left', left_failure)
    report.record('convolution_inverse_right', right_failure)

    # sum b(1) a(1) R(a(2) (x) b(2)) = sum R(a(1) (x) b(1)) a(2) b(2)
    failure = None
    nonempty = [(a, b) for a, b in pairs if a and b]
    for a, b in console.progress(nonempty, desc='Almost commutativity', unit='pair'):
        terms: Dict[Word, object] = {}
        for a1, a2 in _split_matrix_word(n, a):
            for b1, b2 in _split_matrix_word(n, b):
                add_into(terms, b1 + a1, grid.pair(a2, b2))
                add_into(terms, a2 + b2, -grid.pair(a1, b1))
        residual = frt.algebra.normal_form(NCPoly(field, terms))
        if residual:
            failure = (f"{alphabet.word_text(a)} ⊗ {alphabet.word_text(b)}", residual.format(alphabet))
            break
    report.record('almost_commutative', failure)

    failure = None
    relations = [rel for rel in frt.algebra.relations if rel.degree() <= degree]
    for rel in relations:
        for w in words:
            mono = NCPoly.monomial(field, w)
            for side, value in (('left', pair_poly(grid, rel, mono)), ('right', pair_poly(grid, mono, rel))):
                if value and failure is None:
                    text = f"{rel.format(alphabet)} ({side}) with {alphabet.word_text(w)}"
                    failure = (text, field.format(value))
    report.record('relations_pair_to_zero', failure)
    return report
