"""Braided matrices B(R).

Generators u[i,j] satisfy R21 u1 R12 u2 = u2 R21 u1 R12. The braiding on
generators is built from four R-factors, the coproduct is the matrix one,
and there is no antipode. Products of u's are related to products of the
FRT generators t[i,j] by transmutation, printed here up to degree 3.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from sympy.polys.matrices import DomainMatrix

from src.algebra.braided import BraidOp, BraidedBialgebra, Tensor, bialgebra_axiom_check, psi_descends
from src.algebra.ncpoly import Alphabet, NCPoly, Word
from src.algebra.quotient import QuotientAlgebra
from src.core import console
from src.core.errors import (
    DegreeUnsupported, InvalidBraiding, NotBiInvertible, NotDualizable, OutputVerificationFailed,
    VNotInvertible,
)
from src.core.linalg import add_into, entries, first_difference, identity, matmul, matrix_from_entries, vectors_rank
from src.core.report import VerificationReport
from src.quantum.frt import FRTBialgebra, letters, matrix_alphabet, matrix_coproduct, matrix_counit
from src.quantum.rmatrix import RMatrix, contract, inverse, qybe_check, second_inverse, v_invertible


Index4 = Tuple[int, int, int, int]

MAX_TRANSMUTE_DEGREE = 3


@dataclass
class BraidedMatrixAlgebra:
    """B(R) with its braiding, matrix coproduct and counit.

    Attributes:
        r: The R-matrix
        r_inv: R^-1
        r_tilde: The second inverse of R
        q: R21 R12, as an R-matrix shaped object
        relations: Raw relation polynomials keyed by their (i, j, k, l) entry
        bialgebra: Algebra, braiding, coproduct and counit
        psi_invertible: False when v is singular (Psi^-1 is not available)
    """
    r: RMatrix
    r_inv: RMatrix
    r_tilde: RMatrix
    q: RMatrix
    relations: Dict[Index4, NCPoly]
    bialgebra: BraidedBialgebra
    psi_invertible: bool = True

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
    def psi(self) -> BraidOp:
        return self.bialgebra.psi


def q_matrix(r: RMatrix) -> RMatrix:
    """Q = R21 R12, so Q^i_j^k_l = sum R^k_b^i_a R^a_j^b_l."""
    return RMatrix.from_matrix(r.n, r.field, matmul(r.flip().matrix(), r.matrix()))


def braided_relations(r: RMatrix) -> Dict[Index4, NCPoly]:
    """(R21 u1 R12 u2 - u2 R21 u1 R12)^{ik}_{jl} for every entry that does not vanish identically."""
    n, field = r.n, r.field
    out: Dict[Index4, NCPoly] = {}
    for i, j, k, l in product(range(n), repeat=4):
        fixed = {'i': i, 'j': j, 'k': k, 'l': l}
        terms: Dict[Word, object] = {}
        for s, coeff in contract([(r, ('k', 'b', 'i', 'a')), (r, ('c', 'j', 'b', 'f'))], fixed):
            add_into(terms, (s['a'] * n + s['c'], s['f'] * n + l), coeff)
        for s, coeff in contract([(r, ('b', 'd', 'i', 'c')), (r, ('e', 'j', 'd', 'l'))], fixed):
            add_into(terms, (k * n + s['b'], s['c'] * n + s['e']), -coeff)
        if terms:
            out[(i, j, k, l)] = NCPoly(field, terms)
    return out


def braided_psi_table(r: RMatrix, r_inv: RMatrix, r_tilde: RMatrix) -> Dict[Tuple[int, int], Dict[Tuple[int, int], object]]:
    """Psi(u^i_j (x) u^k_l) = sum u^p_q (x) u^m_n R^i_a^d_p (R^-1)^a_m^q_b R^n_c^b_l R~^c_j^k_d."""
    n = r.n
    table = {}
    factors = [
        (r, ('i', 'a', 'd', 'p')),
        (r_tilde, ('c', 'j', 'k', 'd')),
        (r, ('n', 'c', 'b', 'l')),
        (r_inv, ('a', 'm', 'q', 'b')),
    ]
    for i, j, k, l in product(range(n), repeat=4):
        out: Dict[Tuple[int, int], object] = {}
        for s, coeff in contract(factors, {'i': i, 'j': j, 'k': k, 'l': l}):
            add_into(out, (s['p'] * n + s['q'], s['m'] * n + s['n']), coeff)
        table[(i * n + j, k * n + l)] = out
    return table


def braided_matrix_algebra(r: RMatrix, degree_bound: int, max_rules: int = 2000,
                           verify: bool = True) -> BraidedMatrixAlgebra:
    """
    Build B(R) and check that its braiding and coproduct are compatible with the relations.

    Args:
        r: A bi-invertible solution of the QYBE
        degree_bound: Completion bound for the relations
        max_rules: Completion rule limit
        verify: Run psi_descends and the bialgebra checks

    Raises:
        InvalidBraiding: If R fails the QYBE
        NotBiInvertible: If R or its second inverse does not exist
        OutputVerificationFailed: If the self-checks fail
    """
    qybe = qybe_check(r)
    if not qybe.passed:
        witness = qybe.check('qybe').witness
        raise InvalidBraiding(f"R fails the QYBE at {witness}")
    r_inv = inverse(r)
    try:
        r_tilde = second_inverse(r)
    except NotDualizable as e:
        raise NotBiInvertible("R has no second inverse") from e

    psi_invertible = v_invertible(r_tilde)
    if not psi_invertible:
        console.warn(str(VNotInvertible("v = R~^i_a^a_j is singular, Psi^-1 is unavailable")))

    field, n = r.field, r.n
    alphabet = matrix_alphabet('u', n)
    relations = braided_relations(r)
    console.status(f"Building B(R) on {len(alphabet)} generators...")
    algebra = QuotientAlgebra(alphabet, field, list(relations.values()), degree_bound, max_rules)
    psi = BraidOp(field, alphabet, alphabet, braided_psi_table(r, r_inv, r_tilde))
    bialgebra = BraidedBialgebra(algebra, psi, matrix_coproduct(field, n), matrix_counit(field, n))
    bm = BraidedMatrixAlgebra(r, r_inv, r_tilde, q_matrix(r), relations, bialgebra, psi_invertible)

    if verify:
        report = psi_descends(algebra, psi, max(2, min(3, degree_bound)))
        report.extend(bialgebra_axiom_check(bialgebra, 2))
        if not report.passed:
            raise OutputVerificationFailed("B(R) braiding or coproduct is incompatible with the relations", report)
    return bm


def triangular_check(bm: BraidedMatrixAlgebra) -> VerificationReport:
    """For R21 R12 = 1 the braiding squares to the identity on generator pairs."""
    report = VerificationReport()
    psi = bm.psi.matrix()
    size = len(bm.alphabet) ** 2
    diff = first_difference(matmul(psi, psi), identity(bm.r.field, size))
    report.record('psi_squared_identity', None if diff is None else (str(diff[0]), bm.r.field.format(diff[1])))
    return report


# -- canonical representation -------------------------------------------


def canonical_generator(bm: BraidedMatrixAlgebra, i: int, j: int) -> DomainMatrix:
    n = bm.n
    dok = {(k, l): bm.q.get(i, j, k, l) for k in range(n) for l in range(n)}
    return matrix_from_entries(bm.r.field, n, n, dok)


def canonical_rep(bm: BraidedMatrixAlgebra, mono: Word) -> DomainMatrix:
    """rho(u^i_j)^k_l = Q^i_j^k_l, extended multiplicatively in word order."""
    result = identity(bm.r.field, bm.n)
    for i, j in letters(bm.n, mono):
        result = matmul(result, canonical_generator(bm, i, j))
    return result


def canonical_rep_poly(bm: BraidedMatrixAlgebra, poly: NCPoly) -> DomainMatrix:
    total: Dict[Tuple[int, int], object] = {}
    for word, c in poly.terms.items():
        for key, value in entries(canonical_rep(bm, word)).items():
            add_into(total, key, c * value)
    return matrix_from_entries(bm.r.field, bm.n, bm.n, total)


def canonical_rep_check(bm: BraidedMatrixAlgebra) -> VerificationReport:
    report = VerificationReport()
    failure = None
    for index, rel in sorted(bm.relations.items()):
        image = entries(canonical_rep_poly(bm, rel))
        if image:
            key = min(image)
            failure = (f"relation {index} at {key}", bm.r.field.format(image[key]))
            break
    report.record('canonical_rep_relations', failure)
    return report


# -- transmutation ------------------------------------------------------


def _degree_two(bm: BraidedMatrixAlgebra, i: int, j: int, k: int, l: int) -> Dict[Word, object]:
    """u^i_j u^k_l = t^a_b t^d_l R^i_a^c_d R~^b_j^k_c."""
    n = bm.n
    terms: Dict[Word, object] = {}
    factors = [(bm.r, ('i', 'a', 'c', 'd')), (bm.r_tilde, ('b', 'j', 'k', 'c'))]
    for s, coeff in contract(factors, {'i': i, 'j': j, 'k': k, 'l': l}):
        add_into(terms, (s['a'] * n + s['b'], s['d'] * n + l), coeff)
    return terms


def _degree_three(bm: BraidedMatrixAlgebra, pairs: List[Tuple[int, int]]) -> Dict[Word, object]:
    """
    u^i_j u^k_l u^m_n = t^d_b t^s_u t^z_n
        R^i_a^p_q R^a_d^w_y R~^b_c^v_w R~^c_j^k_p R^q_s^y_z R~^u_l^m_v.
    """
    n = bm.n
    r, rt = bm.r, bm.r_tilde
    (i, j), (k, l), (m, last) = pairs
    factors = [
        (rt, ('c', 'j', 'k', 'p')),
        (r, ('i', 'a', 'p', 'q')),
        (r, ('a', 'd', 'w', 'y')),
        (rt, ('b', 'c', 'v', 'w')),
        (rt, ('u', 'l', 'm', 'v')),
        (r, ('q', 's', 'y', 'z')),
    ]
    fixed = {'i': i, 'j': j, 'k': k, 'l': l, 'm': m, 'n': last}
    terms: Dict[Word, object] = {}
    for s, coeff in contract(factors, fixed):
        add_into(terms, (s['d'] * n + s['b'], s['s'] * n + s['u'], s['z'] * n + last), coeff)
    return terms


def transmute_monomial(bm: BraidedMatrixAlgebra, frt: FRTBialgebra, mono: Word) -> NCPoly:
    """
    Express a product of u's in A(R).

    Raises:
        DegreeUnsupported: For words longer than 3
    """
    field = bm.r.field
    if len(mono) > MAX_TRANSMUTE_DEGREE:
        raise DegreeUnsupported(
            f"transmutation is available up to degree {MAX_TRANSMUTE_DEGREE}, got a word of length {len(mono)}")
    pairs = letters(bm.n, mono)
    if len(mono) <= 1:
        terms = {tuple(mono): field.one}
    elif len(mono) == 2:
        (i, j), (k, l) = pairs
        terms = _degree_two(bm, i, j, k, l)
    else:
        terms = _degree_three(bm, pairs)
    return frt.algebra.normal_form(NCPoly(field, terms))


def transmute_poly(bm: BraidedMatrixAlgebra, frt: FRTBialgebra, poly: NCPoly) -> NCPoly:
    out = NCPoly(bm.r.field)
    for word, c in poly.terms.items():
        out = out + transmute_monomial(bm, frt, word).scale(c)
    return out


def transmute_check(bm: BraidedMatrixAlgebra, frt: FRTBialgebra, degree: int = 2) -> VerificationReport:
    """
    matrix_form_degree2: R^-1_12 u1 R12 u2 transmutes to t1 t2 entrywise.
    relations_transmute_to_zero: every relation of B(R) lands on zero in A(R).
    relation_products_transmute_to_zero (degree >= 3): the same for relation * u and u * relation.
    """
    n, field = bm.n, bm.r.field
    report = VerificationReport()
    t_alpha = frt.alphabet

    failure = None
    for i, j, k, l in product(range(n), repeat=4):
        fixed = {'i': i, 'j': j, 'k': k, 'l': l}
        u_side: Dict[Word, object] = {}
        for s, coeff in contract([(bm.r_inv, ('i', 'a', 'k', 'b')), (bm.r, ('c', 'j', 'b', 'f'))], fixed):
            add_into(u_side, (s['a'] * n + s['c'], s['f'] * n + l), coeff)
        image = transmute_poly(bm, frt, NCPoly(field, u_side))
        expected = frt.algebra.normal_form(NCPoly.monomial(field, (i * n + j, k * n + l)))
        residual = image - expected
        if residual:
            failure = (str((i, j, k, l)), residual.format(t_alpha))
            break
    report.record('matrix_form_degree2', failure)

    failure = None
    for index, rel in sorted(bm.relations.items()):
        residual = transmute_poly(bm, frt, rel)
        if residual:
            failure = (rel.format(bm.alphabet), residual.format(t_alpha))
            break
    report.record('relations_transmute_to_zero', failure)

    if degree >= 3:
        failure = None
        gens = range(n * n)
        cases = [(rel, g) for rel in bm.relations.values() for g in gens]
        for rel, g in console.progress(cases, desc='Degree-3 transmutation', unit='product'):
            gen = NCPoly.gen(field, g)
            for poly in (rel * gen, gen * rel):
                residual = transmute_poly(bm, frt, poly)
                if residual:
                    failure = (poly.format(bm.alphabet), residual.format(t_alpha))
                    break
            if failure is not None:
                break
        report.record('relation_products_transmute_to_zero', failure)
    return report


# -- chi form -----------------------------------------------------------


@dataclass
class ChiRelations:
    """u = 1 + chi.

    Attributes:
        alphabet: chi[i,j] letters, in the same order as u[i,j]
        relations: u-relations with u replaced by 1 + chi, keyed by entry
        display: R21 chi1 R12 chi2 - chi2 R21 chi1 R12 - (chi2 Q12 - Q12 chi2), keyed by entry
        coproduct: Delta chi = chi (x) 1 + 1 (x) chi + chi (x) chi
        report: Equivalence and round-trip checks
    """
    alphabet: Alphabet
    relations: Dict[Index4, NCPoly]
    display: Dict[Index4, NCPoly]
    coproduct: Dict[int, Tensor]
    report: VerificationReport


def _chi_display(bm: BraidedMatrixAlgebra) -> Dict[Index4, NCPoly]:
    n, field, q = bm.n, bm.r.field, bm.q
    out: Dict[Index4, NCPoly] = {}
    for (i, j, k, l), quadratic in ((key, bm.relations.get(key, NCPoly(field)))
                                    for key in product(range(n), repeat=4)):
        terms = dict(quadratic.terms)
        for b in range(n):
            add_into(terms, (k * n + b,), -q.get(i, j, b, l))
            add_into(terms, (b * n + l,), q.get(i, j, k, b))
        if terms:
            out[(i, j, k, l)] = NCPoly(field, terms)
    return out


def chi_coproduct(field, n: int) -> Dict[int, Tensor]:
    table: Dict[int, Tensor] = {}
    for i, j in product(range(n), repeat=2):
        g = i * n + j
        tensor: Tensor = {((g,), ()): field.one, ((), (g,)): field.one}
        for a in range(n):
            add_into(tensor, ((i * n + a,), (a * n + j,)), field.one)
        table[g] = tensor
    return table


def chi_relations(bm: BraidedMatrixAlgebra) -> ChiRelations:
    n, field = bm.n, bm.r.field
    alphabet = matrix_alphabet('chi', n)
    size = n * n
    shift_up = {g: NCPoly.gen(field, g) + (NCPoly.one(field) if g // n == g % n else NCPoly(field))
                for g in range(size)}
    shift_down = {g: NCPoly.gen(field, g) - (NCPoly.one(field) if g // n == g % n else NCPoly(field))
                  for g in range(size)}

    substituted = {key: rel.substitute(shift_up) for key, rel in bm.relations.items()}
    substituted = {key: rel for key, rel in substituted.items() if rel}
    display = _chi_display(bm)
    report = VerificationReport()

    words = sorted({w for rel in list(substituted.values()) + list(display.values()) for w in rel.terms})
    index = {w: c for c, w in enumerate(words)}
    ours = [rel.terms for rel in substituted.values()]
    theirs = [rel.terms for rel in display.values()]
    rank_ours = vectors_rank(field, ours, index)
    rank_theirs = vectors_rank(field, theirs, index)
    rank_both = vectors_rank(field, ours + theirs, index)
    failure = None
    if not rank_ours == rank_theirs == rank_both:
        failure = ('ranks', f"substituted {rank_ours}, displayed {rank_theirs}, together {rank_both}")
    report.record('linearly_equivalent', failure)

    failure = None
    for key, rel in sorted(bm.relations.items()):
        back = substituted.get(key, NCPoly(field)).substitute(shift_down)
        if back != rel:
            failure = (str(key), (back - rel).format(bm.alphabet))
            break
    report.record('round_trip', failure)

    coproduct = chi_coproduct(field, n)
    failure = None
    for g in range(size):
        # Delta(1 + chi) = (1 + chi) (x) (1 + chi) summed over the middle index
        i, j = divmod(g, n)
        expanded: Tensor = {}
        for a in range(n):
            left = shift_up[i * n + a].terms
            right = shift_up[a * n + j].terms
            for w1, c1 in left.items():
                for w2, c2 in right.items():
                    add_into(expanded, (w1, w2), c1 * c2)
        transported = dict(coproduct[g])
        if i == j:
            add_into(transported, ((), ()), field.one)
        residual = dict(expanded)
        for key, value in transported.items():
            add_into(residual, key, -value)
        if residual:
            failure = (alphabet.names[g], str(sorted(residual)))
            break
    report.record('coproduct_transport', failure)
    return ChiRelations(alphabet, substituted, display, coproduct, report)
