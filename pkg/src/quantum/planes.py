"""Braided covector and vector algebras with their differential calculus.

A covector plane has generators x[i] with x1 x2 = x2 x1 R' and braiding
Psi(x_i (x) x_j) = x_b (x) x_a R^a_i^b_j; a vector plane has v[i] with
v1 v2 = R' v2 v1 and Psi(v^i (x) v^j) = R^i_a^j_b v^b (x) v^a. Both carry
the additive coproduct.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra.braided import BraidOp, BraidedBialgebra, Tensor, bialgebra_axiom_check, psi_descends
from src.algebra.ncpoly import Alphabet, NCPoly, Word
from src.algebra.quotient import QuotientAlgebra
from src.core import console
from src.core.errors import OutputVerificationFailed, RPrimeConditionFailed
from src.core.linalg import add, add_into, entries, first_difference, identity, kron, matmul, matrix_from_entries, sub
from src.core.report import VerificationReport
from src.quantum.rmatrix import RMatrix, derive_rprime, leg13, permutation_r, triple_difference


KINDS = ('covector', 'vector')


@dataclass
class BraidedPlane:
    """V(R') or its covector version.

    Attributes:
        kind: 'covector' or 'vector'
        r: R-matrix of the braiding
        r_prime: R-matrix of the relations
        bialgebra: Algebra with braiding, additive coproduct, zero counit and,
            when R21 R'12 = R'21 R12, the antipode -id
    """
    kind: str
    r: RMatrix
    r_prime: RMatrix
    bialgebra: BraidedBialgebra

    @property
    def n(self) -> int:
        return self.r.n

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.bialgebra.algebra

    @property
    def alphabet(self) -> Alphabet:
        return self.bialgebra.algebra.alphabet

    @property
    def is_hopf(self) -> bool:
        return self.bialgebra.antipode is not None


def plane_alphabet(kind: str, n: int) -> Alphabet:
    name = 'x' if kind == 'covector' else 'v'
    return Alphabet([f"{name}[{i}]" for i in range(n)])


def plane_conditions(r: RMatrix, r_prime: RMatrix) -> VerificationReport:
    """R12 R13 R'23 = R'23 R13 R12, R23 R13 R'12 = R'12 R13 R23 and (PR+1)(PR'-1) = 0."""
    field, n = r.field, r.n
    one = identity(field, n)
    r12, r23 = kron(field, r.matrix(), one), kron(field, one, r.matrix())
    p12, p23 = kron(field, r_prime.matrix(), one), kron(field, one, r_prime.matrix())
    r13 = leg13(r)
    report = VerificationReport()
    for name, left, right in (
            ('left_mixed_ybe', matmul(r12, r13, p23), matmul(p23, r13, r12)),
            ('right_mixed_ybe', matmul(r23, r13, p12), matmul(p12, r13, r23))):
        diff = triple_difference(n, left, right)
        if diff is None:
            report.add(name, True)
        else:
            at, residual = diff
            report.add(name, False, at, field.format(residual))

    unit = identity(field, n * n)
    product_matrix = matmul(add(r.pr_matrix(), unit), sub(r_prime.pr_matrix(), unit))
    found = entries(product_matrix)
    if not found:
        report.add('hecke_pair', True)
    else:
        row, col = min(found, key=lambda rc: (rc[0] // n, rc[1] // n, rc[0] % n, rc[1] % n))
        i, k = divmod(row, n)
        j, l = divmod(col, n)
        report.add('hecke_pair', False, f"({i},{j},{k},{l})", field.format(found[(row, col)]))
    return report


def symmetric_pair(r: RMatrix, r_prime: RMatrix) -> bool:
    """R21 R'12 = R'21 R12."""
    left = matmul(r.flip().matrix(), r_prime.matrix())
    right = matmul(r_prime.flip().matrix(), r.matrix())
    return first_difference(left, right) is None


def plane_relations(kind: str, r_prime: RMatrix) -> List[NCPoly]:
    """Covector: x_i x_j - R'^a_i^b_j x_b x_a. Vector: v^i v^j - R'^i_a^j_b v^b v^a."""
    n, field = r_prime.n, r_prime.field
    relations = []
    for i, j in product(range(n), repeat=2):
        terms: Dict[Word, object] = {(i, j): field.one}
        for (a, c, b, d), value in r_prime.entries.items():
            if kind == 'covector' and (c, d) == (i, j):
                add_into(terms, (b, a), -value)
            elif kind == 'vector' and (a, b) == (i, j):
                add_into(terms, (d, c), -value)
        if terms:
            relations.append(NCPoly(field, terms))
    return relations


def plane_psi_table(kind: str, r: RMatrix) -> Dict[Tuple[int, int], Dict[Tuple[int, int], object]]:
    table: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = {}
    for (a, c, b, d), value in r.entries.items():
        if kind == 'covector':
            # Psi(x_c (x) x_d) gets x_b (x) x_a R^a_c^b_d
            add_into(table.setdefault((c, d), {}), (b, a), value)
        else:
            # Psi(v^a (x) v^b) gets R^a_c^b_d v^d (x) v^c
            add_into(table.setdefault((a, b), {}), (d, c), value)
    return table


def additive_coproduct(field, n: int) -> Dict[int, Tensor]:
    return {g: {((g,), ()): field.one, ((), (g,)): field.one} for g in range(n)}


def plane_algebra(kind: str, r: RMatrix, r_prime: RMatrix, degree_bound: int, max_rules: int = 2000,
                  verify: bool = True) -> BraidedPlane:
    """
    Build the covector or vector algebra of (R, R').

    Raises:
        RPrimeConditionFailed: If one of the three matrix conditions fails
        OutputVerificationFailed: If the bialgebra self-checks fail
    """
    if kind not in KINDS:
        raise ValueError(f"unknown plane kind {kind!r}")
    conditions = plane_conditions(r, r_prime)
    for check in conditions.failures():
        raise RPrimeConditionFailed(check.name, check.witness)

    field, n = r.field, r.n
    alphabet = plane_alphabet(kind, n)
    console.status(f"Building the {kind} algebra on {n} generators...")
    algebra = QuotientAlgebra(alphabet, field, plane_relations(kind, r_prime), degree_bound, max_rules)
    psi = BraidOp(field, alphabet, alphabet, plane_psi_table(kind, r))
    antipode = None
    if symmetric_pair(r, r_prime):
        antipode = {g: -NCPoly.gen(field, g) for g in range(n)}
    bialgebra = BraidedBialgebra(algebra, psi, additive_coproduct(field, n), {}, antipode)
    plane = BraidedPlane(kind, r, r_prime, bialgebra)

    if verify:
        degree = max(2, min(3, degree_bound))
        report = psi_descends(algebra, psi, degree)
        report.extend(bialgebra_axiom_check(bialgebra, degree))
        if not report.passed:
            raise OutputVerificationFailed(f"{kind} algebra fails its bialgebra checks", report)
    return plane


def covector_algebra(r: RMatrix, r_prime: RMatrix, degree_bound: int, max_rules: int = 2000,
                     verify: bool = True) -> BraidedPlane:
    return plane_algebra('covector', r, r_prime, degree_bound, max_rules, verify)


def vector_algebra(r: RMatrix, r_prime: RMatrix, degree_bound: int, max_rules: int = 2000,
                   verify: bool = True) -> BraidedPlane:
    return plane_algebra('vector', r, r_prime, degree_bound, max_rules, verify)


def resolve_rprime(r: RMatrix, mode: str, alpha=None) -> Tuple[RMatrix, RMatrix]:
    """
    (braiding R, R') for an --rprime mode.

    'free' keeps R and takes R' = P; 'hecke' is 'factor:0'; 'factor:k'
    rescales R to make the k-th root of PR equal to -1.
    """
    if mode == 'free':
        return r, permutation_r(r.field, r.n)
    if mode == 'hecke':
        return derive_rprime(r, 0, alpha)
    if mode.startswith('factor:'):
        try:
            index = int(mode.split(':', 1)[1])
        except ValueError as e:
            raise ValueError(f"bad rprime mode {mode!r}") from e
        return derive_rprime(r, index, alpha)
    raise ValueError(f"unknown rprime mode {mode!r}: expected free, hecke or factor:<k>")


# -- braided integers and derivatives ------------------------------------


@dataclass
class BraidedInteger:
    """[m;R] = 1 + (PR)12 + (PR)12 (PR)23 + ... + (PR)12 ... (PR)m-1,m on V^(x)m."""
    m: int
    matrix: DomainMatrix


def _pr_at(r: RMatrix, m: int, position: int) -> DomainMatrix:
    """(PR) acting on tensor factors position, position + 1 (0-based) of V^(x)m."""
    field, n = r.field, r.n
    left = identity(field, n ** position)
    right = identity(field, n ** (m - position - 2))
    return kron(field, kron(field, left, r.pr_matrix()), right)


def braided_integer(r: RMatrix, m: int, drop_last: bool = False) -> BraidedInteger:
    """
    Args:
        r: The braiding R-matrix
        m: Number of tensor factors, at least 1
        drop_last: Leave out the longest product (a deliberately wrong integer)
    """
    if m < 1:
        raise ValueError(f"braided integers need m >= 1, got {m}")
    field, n = r.field, r.n
    term = identity(field, n ** m)
    total = term
    last = m - 1 if not drop_last else m - 2
    for position in range(last):
        term = matmul(term, _pr_at(r, m, position))
        total = add(total, term)
    return BraidedInteger(m, total)


def _digits(n: int, index: int, m: int) -> Word:
    out = []
    for _ in range(m):
        index, digit = divmod(index, n)
        out.append(digit)
    return tuple(reversed(out))


def _number(n: int, word: Word) -> int:
    value = 0
    for digit in word:
        value = value * n + digit
    return value


class Derivatives:
    """The operators d^i on a covector plane, from the braided integers.

    d^i x_I = sum over J with j1 = i of [m;R]^J_I x_{j2 ... jm}.

    Args:
        plane: A covector plane
        integer: Builder of [m;R], replaceable for negative controls
    """

    def __init__(self, plane: BraidedPlane, integer: Optional[Callable[[RMatrix, int], BraidedInteger]] = None):
        if plane.kind != 'covector':
            raise ValueError("derivatives act on the covector algebra")
        self.plane = plane
        self.field = plane.r.field
        self._integer = integer or braided_integer
        self._columns = lru_cache(maxsize=None)(self._integer_columns)

    def _integer_columns(self, m: int) -> Dict[int, Dict[int, object]]:
        columns: Dict[int, Dict[int, object]] = {}
        for (row, col), value in entries(self._integer(self.plane.r, m).matrix).items():
            columns.setdefault(col, {})[row] = value
        return columns

    def word(self, i: int, word: Word) -> Dict[Word, object]:
        """d^i of a single word, before normal form."""
        m, n = len(word), self.plane.n
        if m == 0:
            return {}
        out: Dict[Word, object] = {}
        for row, value in self._columns(m).get(_number(n, word), {}).items():
            digits = _digits(n, row, m)
            if digits[0] == i:
                add_into(out, digits[1:], value)
        return out

    def raw(self, i: int, poly: NCPoly) -> NCPoly:
        out: Dict[Word, object] = {}
        for w, c in poly.terms.items():
            for w2, c2 in self.word(i, w).items():
                add_into(out, w2, c * c2)
        return NCPoly(self.field, out)

    def __call__(self, i: int, poly: NCPoly) -> NCPoly:
        return self.plane.algebra.normal_form(self.raw(i, poly))


ROUTES = ('integer', 'leibniz')


def partial(plane: BraidedPlane, i: int, poly: NCPoly, route: str = 'integer') -> NCPoly:
    """
    d^i of a polynomial on a covector plane, in normal form.

    Args:
        plane: A covector plane
        i: Derivative index
        poly: Element to differentiate
        route: 'integer' contracts with the braided integers, 'leibniz'
            peels one letter at a time with the braided Leibniz rule
    """
    if not 0 <= i < plane.n:
        raise ValueError(f"derivative index {i} out of range 0..{plane.n - 1}")
    if route == 'integer':
        return Derivatives(plane)(i, poly)
    if route == 'leibniz':
        return partial_recursive(plane, i, poly)
    raise ValueError(f"unknown derivative route {route!r}: expected one of {', '.join(ROUTES)}")


def partial_recursive(plane: BraidedPlane, i: int, poly: NCPoly) -> NCPoly:
    """d^i(x_k w) = delta_ik w + sum over the crossing of d^i past x_k of x_k' d^j(w)."""
    if plane.kind != 'covector':
        raise ValueError("derivatives act on the covector algebra")
    field = plane.r.field
    cache: Dict[Tuple[int, Word], Dict[Word, object]] = {}

    def word(index: int, w: Word) -> Dict[Word, object]:
        key = (index, w)
        if key in cache:
            return cache[key]
        out: Dict[Word, object] = {}
        if w:
            head, tail = w[0], w[1:]
            if head == index:
                add_into(out, tail, field.one)
            for (moved, j), c in crossing(plane.r, index, (head,)).items():
                for w2, c2 in word(j, tail).items():
                    add_into(out, moved + w2, c * c2)
        cache[key] = out
        return out

    terms: Dict[Word, object] = {}
    for w, c in poly.terms.items():
        for w2, c2 in word(i, w).items():
            add_into(terms, w2, c * c2)
    return plane.algebra.normal_form(NCPoly(field, terms))


def crossing(r: RMatrix, i: int, word: Word) -> Dict[Tuple[Word, int], object]:
    """
    Move a derivative index past a word: the entries of (PR)12 (PR)23 ... (PR)p,p+1
    taking x_word (x) e_j to e_i (x) x_word'.

    Returns:
        dict: (word', j) -> coefficient
    """
    n, p = r.n, len(word)
    if p == 0:
        return {((), i): r.field.one}
    m = p + 1
    operator = identity(r.field, n ** m)
    for position in range(p):
        operator = matmul(operator, _pr_at(r, m, position))
    out: Dict[Tuple[Word, int], object] = {}
    for (row, col), value in entries(operator).items():
        digits = _digits(n, row, m)
        source = _digits(n, col, m)
        if digits[0] == i and source[:p] == tuple(word):
            add_into(out, (digits[1:], source[p]), value)
    return out


def leibniz_check(plane: BraidedPlane, degree: int, derivatives: Optional[Derivatives] = None) -> VerificationReport:
    """
    partial_kills_relations: d^i of every relation reduces to zero.
    leibniz: d^i(ab) = (d^i a) b + sum over the crossing of d past a, for normal words a, b.
    operator_relations: d^i d^j - R'^i_a^j_b d^b d^a annihilates normal words.
    """
    d = derivatives or Derivatives(plane)
    field, n, algebra = plane.r.field, plane.n, plane.algebra
    alpha = plane.alphabet
    report = VerificationReport()

    failure = None
    for rel in algebra.rule_polys():
        if rel.degree() > degree:
            continue
        for i in range(n):
            residual = d(i, rel)
            if residual and failure is None:
                failure = (f"d^{i} {rel.format(alpha)}", residual.format(alpha))
    report.record('partial_kills_relations', failure)

    failure = None
    words = [w for w in algebra.normal_words_upto(degree) if w]
    pairs = [(a, b) for a in words for b in words if len(a) + len(b) <= degree]
    for a, b in console.progress(pairs, desc='Leibniz rule', unit='pair'):
        for i in range(n):
            direct = d(i, NCPoly.monomial(field, a + b))
            split = NCPoly(field, {w + b: c for w, c in d.word(i, a).items()})
            for (a2, j), c in crossing(plane.r, i, a).items():
                split = split + NCPoly.monomial(field, a2, c) * d.raw(j, NCPoly.monomial(field, b))
            residual = direct - algebra.normal_form(split)
            if residual:
                failure = (f"d^{i}({alpha.word_text(a)} * {alpha.word_text(b)})", residual.format(alpha))
                break
        if failure is not None:
            break
    report.record('leibniz', failure)

    failure = None
    rp = plane.r_prime
    for i, j in product(range(n), repeat=2):
        for w in algebra.normal_words_upto(degree):
            mono = NCPoly.monomial(field, w)
            value = d(i, d(j, mono))
            for (a, c, b, e), coeff in rp.entries.items():
                if (a, b) == (i, j):
                    value = value - d(e, d(c, mono)).scale(coeff)
            if value:
                failure = (f"(d^{i} d^{j}) on {alpha.word_text(w)}", value.format(alpha))
                break
        if failure is not None:
            break
    report.record('operator_relations', failure)
    return report
