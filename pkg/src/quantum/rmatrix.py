"""R-matrices R^i_j^k_l as exact n^2 x n^2 matrices.

Linearization: row i*n + k (upper indices), column j*n + l (lower indices).
With this convention the braiding Psi(e_i (x) e_j) = e_b (x) e_a R^a_i^b_j
is the matrix P*R acting on column vectors.
"""

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from src.core.errors import (
    IrreducibleFactorError, NotBiInvertible, NotDualizable, OutputVerificationFailed, SingularRPrime,
    UnknownFamily,
)
from src.core.linalg import (
    add, add_into, entries, first_difference, identity, inverse as matrix_inverse, kron, matmul,
    matrix_from_entries, scale, solve, sub,
)
from src.core.report import VerificationReport
from src.core.scalar import Field


Index4 = Tuple[int, int, int, int]

FAMILIES = ('identity', 'permutation', 'glq')


class RMatrix:
    """
    Sparse R^i_j^k_l over a field.

    Args:
        n: Dimension of V
        field: Coefficient field
        entries: (i, j, k, l) -> scalar; absent entries are zero
    """

    def __init__(self, n: int, field: Field, entries: Optional[Dict[Index4, object]] = None):
        if n < 1:
            raise ValueError(f"R-matrix dimension must be positive, got {n}")
        self.n = n
        self.field = field
        self.entries: Dict[Index4, object] = {}
        for key, value in (entries or {}).items():
            if any(not 0 <= idx < n for idx in key):
                raise ValueError(f"index {key} out of range for n={n}")
            if value:
                self.entries[tuple(key)] = value
        self._matrix: Optional[DomainMatrix] = None

    @classmethod
    def from_matrix(cls, n: int, field: Field, matrix: DomainMatrix) -> 'RMatrix':
        values = {}
        for (row, col), value in entries(matrix).items():
            i, k = divmod(row, n)
            j, l = divmod(col, n)
            values[(i, j, k, l)] = value
        return cls(n, field, values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix) or other.n != self.n:
            return NotImplemented
        return first_difference(self.matrix(), other.matrix()) is None

    def __repr__(self) -> str:
        return f"RMatrix(n={self.n}, {len(self.entries)} entries, {self.field.mode})"

    def get(self, i: int, j: int, k: int, l: int):
        return self.entries.get((i, j, k, l), self.field.zero)

    def matrix(self) -> DomainMatrix:
        if self._matrix is None:
            n = self.n
            dok = {(i * n + k, j * n + l): v for (i, j, k, l), v in self.entries.items()}
            self._matrix = matrix_from_entries(self.field, n * n, n * n, dok)
        return self._matrix

    def scale(self, value) -> 'RMatrix':
        return RMatrix(self.n, self.field, {key: v * value for key, v in self.entries.items()})

    def t2(self) -> 'RMatrix':
        """Transpose in the second factor: swap k and l."""
        return RMatrix(self.n, self.field, {(i, j, l, k): v for (i, j, k, l), v in self.entries.items()})

    def flip(self) -> 'RMatrix':
        """R21, i.e. the factors exchanged: R21^i_j^k_l = R^k_l^i_j."""
        return RMatrix(self.n, self.field, {(k, l, i, j): v for (i, j, k, l), v in self.entries.items()})

    def pr_matrix(self) -> DomainMatrix:
        return matmul(permutation_r(self.field, self.n).matrix(), self.matrix())

    def to_dict(self) -> dict:
        keys = sorted(self.entries)
        return {
            'n': self.n,
            'coeff_mode': self.field.mode,
            'entries': {','.join(str(x) for x in key): self.field.format(self.entries[key]) for key in keys},
        }


def identity_r(field: Field, n: int) -> RMatrix:
    return RMatrix(n, field, {(i, i, k, k): field.one for i in range(n) for k in range(n)})


def permutation_r(field: Field, n: int) -> RMatrix:
    return RMatrix(n, field, {(i, k, k, i): field.one for i in range(n) for k in range(n)})


def _glq_entries(field: Field, n: int) -> Dict[Index4, object]:
    """
    R^i_i^i_i = q, R^i_i^k_k = 1 for i != k, R^i_j^j_i = q - q^-1 for i < j.

    In the row (i,k) / column (j,l) layout of RMatrix.matrix() the q - q^-1
    entries sit above the diagonal. That placement satisfies the QYBE and
    (PR - q)(PR + q^-1) = 0.
    """
    values: Dict[Index4, object] = {}
    q = field.q
    for i in range(n):
        for k in range(n):
            values[(i, i, k, k)] = q if i == k else field.one
    gap = q - field.inv(q)
    for i in range(n):
        for j in range(i + 1, n):
            values[(i, j, j, i)] = gap
    return values


def standard_r(family: str, n: int, field: Field) -> RMatrix:
    """
    Build one of the standard R-matrices.

    'glq' is self-verified on construction: it must pass the QYBE and PR must
    have the root set {q, -q^-1} (just {q} when n = 1).

    Raises:
        UnknownFamily: For a family name other than identity, permutation, glq
        OutputVerificationFailed: If the glq matrix fails its own checks
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if family == 'identity':
        return identity_r(field, n)
    if family == 'permutation':
        return permutation_r(field, n)
    if family != 'glq':
        raise UnknownFamily(f"unknown R-matrix family {family!r}; expected one of {', '.join(FAMILIES)}")

    r = RMatrix(n, field, _glq_entries(field, n))
    report = qybe_check(r)
    if not report.passed:
        raise OutputVerificationFailed(f"glq({n}) fails the QYBE", report)
    expected = {field.format(field.q)}
    if n > 1:
        expected.add(field.format(-field.inv(field.q)))
    found = {field.format(root) for root, _ in pr_minimal_polynomial(r)}
    if found != expected:
        raise OutputVerificationFailed(f"glq({n}) has PR roots {sorted(found)}, expected {sorted(expected)}")
    return r


# -- QYBE ---------------------------------------------------------------


def leg13(r: RMatrix) -> DomainMatrix:
    n = r.n
    dok = {}
    for (i, j, m, p), v in r.entries.items():
        for k in range(n):
            dok[(i * n * n + k * n + m, j * n * n + k * n + p)] = v
    return matrix_from_entries(r.field, n ** 3, n ** 3, dok)


def triple_index(n: int, row: int, col: int) -> Tuple[int, ...]:
    """Decode a row/column of M_n^{(x)3} into the index tuple (i,j,k,l,m,p)."""
    i, rest = divmod(row, n * n)
    k, m = divmod(rest, n)
    j, rest = divmod(col, n * n)
    l, p = divmod(rest, n)
    return i, j, k, l, m, p


def triple_difference(n: int, left: DomainMatrix, right: DomainMatrix) -> Optional[Tuple[str, object]]:
    """Lexicographically first (i,j,k,l,m,p) where two M_n^{(x)3} matrices differ, with left - right there."""
    diff = entries(sub(left, right))
    if not diff:
        return None
    key = min(diff, key=lambda rc: triple_index(n, *rc))
    return '(' + ','.join(map(str, triple_index(n, *key))) + ')', diff[key]


def qybe_check(r: RMatrix) -> VerificationReport:
    """R12 R13 R23 = R23 R13 R12, entrywise; witness is the lexicographically first differing (i,j,k,l,m,p)."""
    field, n = r.field, r.n
    one = identity(field, n)
    r12 = kron(field, r.matrix(), one)
    r23 = kron(field, one, r.matrix())
    r13 = leg13(r)
    diff = triple_difference(n, matmul(r12, r13, r23), matmul(r23, r13, r12))
    report = VerificationReport()
    if diff is None:
        report.add('qybe', True)
    else:
        at, residual = diff
        report.add('qybe', False, at, field.format(residual))
    return report


# -- inverses -----------------------------------------------------------


def inverse(r: RMatrix) -> RMatrix:
    """
    Raises:
        NotBiInvertible: If R is singular
    """
    inv = matrix_inverse(r.field, r.matrix())
    if inv is None:
        raise NotBiInvertible("R is not invertible")
    return RMatrix.from_matrix(r.n, r.field, inv)


def second_inverse(r: RMatrix) -> RMatrix:
    """
    R~ = ((R^{t2})^{-1})^{t2}.

    Raises:
        NotDualizable: If R^{t2} is singular
    """
    inv = matrix_inverse(r.field, r.t2().matrix())
    if inv is None:
        raise NotDualizable("R^t2 is singular, so R has no second inverse")
    return RMatrix.from_matrix(r.n, r.field, inv).t2()


def is_triangular(r: RMatrix) -> bool:
    """R21 R12 = 1."""
    product = matmul(r.flip().matrix(), r.matrix())
    return first_difference(product, identity(r.field, r.n * r.n)) is None


def v_matrix(r_tilde: RMatrix) -> DomainMatrix:
    """v^i_j = R~^i_a^a_j."""
    n = r_tilde.n
    dok: Dict[Tuple[int, int], object] = {}
    for (i, a, b, j), value in r_tilde.entries.items():
        if a == b:
            add_into(dok, (i, j), value)
    return matrix_from_entries(r_tilde.field, n, n, dok)


def v_invertible(r_tilde: RMatrix) -> bool:
    return matrix_inverse(r_tilde.field, v_matrix(r_tilde)) is not None


# -- dual braidings -----------------------------------------------------


@dataclass
class BraidingMap:
    """A linear map X (x) Y -> Y (x) X on basis pairs.

    Attributes:
        name: e.g. 'psi_vec_co' for Psi_{V,V*}
        table: (x, y) -> {(y', x'): coeff}
    """
    name: str
    table: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = dc_field(default_factory=dict)

    def apply(self, x: int, y: int) -> Dict[Tuple[int, int], object]:
        return self.table.get((x, y), {})

    def to_rows(self, field: Field) -> List[dict]:
        rows = []
        for (x, y) in sorted(self.table):
            for (u, w), value in sorted(self.table[(x, y)].items()):
                rows.append({'in': f"{x},{y}", 'out': f"{u},{w}", 'value': field.format(value)})
        return rows


@dataclass
class DualBraidings:
    psi_vv: BraidingMap
    psi_co_co: BraidingMap
    psi_vec_co: BraidingMap
    psi_co_vec: BraidingMap
    n: int

    def ev(self, f: int, e: int) -> int:
        """ev(f^i (x) e_j) = delta^i_j."""
        return 1 if f == e else 0

    def coev(self) -> List[Tuple[int, int]]:
        """coev(1) = sum_i e_i (x) f^i."""
        return [(i, i) for i in range(self.n)]


def _braiding_map(name: str, n: int, coefficient) -> BraidingMap:
    table: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = {}
    for x in range(n):
        for y in range(n):
            out: Dict[Tuple[int, int], object] = {}
            for u in range(n):
                for w in range(n):
                    add_into(out, (u, w), coefficient(x, y, u, w))
            if out:
                table[(x, y)] = out
    return BraidingMap(name, table)


def dual_braidings(r: RMatrix) -> DualBraidings:
    """
    Braidings among V and V* generated by R, with the standard ev and coev.

    Psi_{V,V}(e_i (x) e_j)   = e_b (x) e_a R^a_i^b_j
    Psi_{V*,V*}(f^i (x) f^j) = R^i_a^j_b f^b (x) f^a
    Psi_{V,V*}(e_i (x) f^j)  = R~^a_i^j_b f^b (x) e_a
    Psi_{V*,V}(f^i (x) e_j)  = e_a (x) f^b (R^-1)^i_b^a_j

    Raises:
        NotDualizable: If R~ or the second inverse of R^-1 does not exist
        NotBiInvertible: If R is singular
    """
    n = r.n
    r_inv = inverse(r)
    r_tilde = second_inverse(r)
    try:
        second_inverse(r_inv)
    except NotDualizable as e:
        raise NotDualizable("R^-1 has no second inverse, so the braiding is not invertible") from e
    return DualBraidings(
        psi_vv=_braiding_map('psi_vv', n, lambda i, j, b, a: r.get(a, i, b, j)),
        psi_co_co=_braiding_map('psi_co_co', n, lambda i, j, b, a: r.get(i, a, j, b)),
        psi_vec_co=_braiding_map('psi_vec_co', n, lambda i, j, b, a: r_tilde.get(a, i, j, b)),
        psi_co_vec=_braiding_map('psi_co_vec', n, lambda i, j, a, b: r_inv.get(i, b, a, j)),
        n=n,
    )


def _compare(field: Field, found: Dict, expected: Dict) -> Optional[str]:
    diff = dict(found)
    for key, value in expected.items():
        add_into(diff, key, -value)
    if not diff:
        return None
    key = min(diff)
    return f"{key}: {field.format(diff[key])}"


def dual_braiding_check(r: RMatrix) -> VerificationReport:
    """
    Second-inverse contraction identities and naturality of the dual braidings.

    The four naturality checks expand, on basis elements,
    Psi against ev on the right of V and of V*, and against coev on the
    left, using the hexagon decomposition of Psi_{X, Y (x) Z}.
    """
    field, n = r.field, r.n
    report = VerificationReport()
    r_tilde = second_inverse(r)
    unit = identity(field, n * n)
    rt2, tt2 = r.t2().matrix(), r_tilde.t2().matrix()
    for name, product in (('second_inverse_left', matmul(tt2, rt2)), ('second_inverse_right', matmul(rt2, tt2))):
        diff = first_difference(product, unit)
        if diff is None:
            report.add(name, True)
        else:
            (row, col), residual = diff
            i, k = divmod(row, n)
            j, l = divmod(col, n)
            report.add(name, False, f"({i},{j},{k},{l})", field.format(residual))

    psi = dual_braidings(r)
    one = field.one

    # (ev (x) id)(id (x) Psi_{V,V})(Psi_{V,V*} (x) id) on e_i (x) f^j (x) e_k = delta^j_k e_i
    failure = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out: Dict[int, object] = {}
                for (b, a), c1 in psi.psi_vec_co.apply(i, j).items():
                    for (d, c), c2 in psi.psi_vv.apply(a, k).items():
                        if psi.ev(b, d):
                            add_into(out, c, c1 * c2)
                bad = _compare(field, out, {i: one} if j == k else {})
                if bad and failure is None:
                    failure = (f"({i},{j},{k})", bad)
    report.record('ev_natural_vector', failure)

    # (Psi_{V,V} (x) id)(id (x) Psi_{V*,V})(coev (x) e_k) = e_k (x) coev
    failure = None
    for k in range(n):
        out3: Dict[Tuple[int, int, int], object] = {}
        for i, fi in psi.coev():
            for (a, b), c1 in psi.psi_co_vec.apply(fi, k).items():
                for (d, c), c2 in psi.psi_vv.apply(i, a).items():
                    add_into(out3, (d, c, b), c1 * c2)
        bad = _compare(field, out3, {(k, c, c): one for c in range(n)})
        if bad and failure is None:
            failure = (f"({k})", bad)
    report.record('coev_natural_vector', failure)

    # (id (x) ev)(Psi_{V*,V*} (x) id)(id (x) Psi_{V,V*}) on f^i (x) e_j (x) f^k = delta^i_j f^k
    failure = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out = {}
                for (b, a), c1 in psi.psi_vec_co.apply(j, k).items():
                    for (d, c), c2 in psi.psi_co_co.apply(i, b).items():
                        if psi.ev(c, a):
                            add_into(out, d, c1 * c2)
                bad = _compare(field, out, {k: one} if i == j else {})
                if bad and failure is None:
                    failure = (f"({i},{j},{k})", bad)
    report.record('ev_natural_covector', failure)

    # (Psi_{V,V*} (x) id)(id (x) Psi_{V*,V*})(coev (x) f^k) = f^k (x) coev
    failure = None
    for k in range(n):
        out3 = {}
        for i, fi in psi.coev():
            for (b, a), c1 in psi.psi_co_co.apply(fi, k).items():
                for (d, c), c2 in psi.psi_vec_co.apply(i, b).items():
                    add_into(out3, (d, c, a), c1 * c2)
        bad = _compare(field, out3, {(k, c, c): one for c in range(n)})
        if bad and failure is None:
            failure = (f"({k})", bad)
    report.record('coev_natural_covector', failure)
    return report


# -- spectral analysis of PR --------------------------------------------


def _flatten(matrix: DomainMatrix) -> Dict[int, object]:
    _, cols = matrix.shape
    return {r * cols + c: v for (r, c), v in entries(matrix).items()}


def minimal_polynomial_coefficients(field: Field, matrix: DomainMatrix) -> List:
    """Coefficients (low degree first, monic) of the minimal polynomial of a square matrix."""
    size, _ = matrix.shape
    powers = [_flatten(identity(field, size))]
    current = identity(field, size)
    for degree in range(1, size + 1):
        current = matmul(current, matrix)
        target = _flatten(current)
        dok = {(row, col): value for col, vec in enumerate(powers) for row, value in vec.items()}
        basis = matrix_from_entries(field, size * size, len(powers), dok)
        solution = solve(field, basis, target)
        if solution is not None:
            coeffs = [-solution.get(i, field.zero) for i in range(degree)]
            return coeffs + [field.one]
        powers.append(target)
    raise ArithmeticError("no linear dependency among matrix powers")


def pr_minimal_polynomial(r: RMatrix) -> List[Tuple[object, int]]:
    """
    Roots with multiplicity of the minimal polynomial of PR, sorted by canonical text.

    Raises:
        IrreducibleFactorError: If a factor does not split over the field
    """
    field = r.field
    coeffs = minimal_polynomial_coefficients(field, r.pr_matrix())
    roots = field.linear_roots(coeffs)
    return sorted(roots, key=lambda t: field.format(t[0]))


def factored_product(field: Field, matrix: DomainMatrix, factors: List[Tuple[object, int]]) -> DomainMatrix:
    """prod_j (matrix - root_j)^{m_j}."""
    size, _ = matrix.shape
    unit = identity(field, size)
    result = unit
    for root, multiplicity in factors:
        shifted = sub(matrix, scale(unit, root))
        for _ in range(multiplicity):
            result = matmul(result, shifted)
    return result


def derive_rprime(r: RMatrix, eigen_index: int = 0, alpha=None) -> Tuple[RMatrix, RMatrix]:
    """
    Rescale R so the chosen root of PR becomes -1 and build R' from the rest.

    PR' = 1 + alpha (PR+1)^{m-1} prod_{j != chosen} (PR - l_j)^{m_j} for the
    rescaled R, so (PR+1)(PR'-1) = 0. alpha defaults to 1/l when the product
    is the single linear factor (PR - l), otherwise to 1.

    Returns:
        tuple: (rescaled R, R')

    Raises:
        SingularRPrime: If R' is not invertible
    """
    field, n = r.field, r.n
    roots = pr_minimal_polynomial(r)
    if not 0 <= eigen_index < len(roots):
        raise ValueError(f"eigen index {eigen_index} out of range: PR has {len(roots)} distinct roots")
    chosen, multiplicity = roots[eigen_index]
    if not chosen:
        raise SingularRPrime("the chosen root is 0, R cannot be rescaled to it")
    factor = -field.inv(chosen)
    rescaled = r.scale(factor)
    others = [(root * factor, m) for idx, (root, m) in enumerate(roots) if idx != eigen_index]

    if alpha is None:
        linear = multiplicity == 1 and len(others) == 1 and others[0][1] == 1
        alpha = field.inv(others[0][0]) if linear and others[0][0] else field.one
    elif not alpha:
        raise ValueError("alpha must be nonzero")

    pr = rescaled.pr_matrix()
    product = factored_product(field, pr, [(-field.one, multiplicity - 1)] + others)
    unit = identity(field, n * n)
    pr_prime = add(unit, scale(product, alpha))
    r_prime = RMatrix.from_matrix(n, field, matmul(permutation_r(field, n).matrix(), pr_prime))
    if matrix_inverse(field, r_prime.matrix()) is None:
        raise SingularRPrime(f"R' is singular for alpha = {field.format(alpha)}")
    return rescaled, r_prime


def info(r: RMatrix) -> dict:
    """Summary used by 'rmatrix info'."""
    field = r.field
    summary = {
        'n': r.n,
        'coeff_mode': field.mode,
        'nonzero_entries': len(r.entries),
        'qybe': qybe_check(r).passed,
    }
    invertible = matrix_inverse(field, r.matrix()) is not None
    summary['invertible'] = invertible
    summary['triangular'] = invertible and is_triangular(r)
    try:
        r_tilde = second_inverse(r)
        summary['dualizable'] = True
        summary['v_invertible'] = v_invertible(r_tilde)
    except NotDualizable:
        summary['dualizable'] = False
        summary['v_invertible'] = False
    try:
        roots = pr_minimal_polynomial(r)
        summary['pr_roots'] = [{'root': field.format(root), 'multiplicity': m} for root, m in roots]
    except IrreducibleFactorError as e:
        summary['pr_roots'] = None
        summary['pr_roots_error'] = str(e)
    return summary


# -- index contraction --------------------------------------------------


Factor = Tuple[RMatrix, Tuple[str, str, str, str]]


def contract(factors: List[Factor], fixed: Dict[str, int]) -> List[Tuple[Dict[str, int], object]]:
    """
    Expand a product of R-matrix entries over all consistent index assignments.

    Args:
        factors: (matrix, (a, b, c, d)) pairs, each standing for the entry M^a_b^c_d
        fixed: Index names with given values

    Returns:
        list: (assignment, product of entries) for every nonzero term
    """
    results: List[Tuple[Dict[str, int], object]] = []
    if not factors:
        return results
    one = factors[0][0].field.one

    def walk(pos: int, assignment: Dict[str, int], coeff) -> None:
        if pos == len(factors):
            results.append((dict(assignment), coeff))
            return
        matrix, names = factors[pos]
        for key, value in matrix.entries.items():
            added = []
            consistent = True
            for name, idx in zip(names, key):
                current = assignment.get(name)
                if current is None:
                    assignment[name] = idx
                    added.append(name)
                elif current != idx:
                    consistent = False
                    break
            if consistent:
                walk(pos + 1, assignment, coeff * value)
            for name in added:
                del assignment[name]

    walk(0, dict(fixed), one)
    return results
