"""
Finite-dimensional Hopf algebras given by structure constants.

Elements are sparse dicts {basis index: coefficient}; elements of tensor
powers are dicts keyed by index tuples. Every constructor in this module
returns tables that pass :func:`hopf_verify`, and the quasitriangular ones
also pass :func:`qt_verify`.
"""

from dataclasses import dataclass, field as dataclass_field
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.core import console
from src.core.errors import ModeMismatch, NotABicharacter, OutputVerificationFailed
from src.core.linalg import add_into, inverse as matrix_inverse, matrix_from_entries, solve
from src.core.report import VerificationReport
from src.core.scalar import Field


Vec = Dict[int, object]
Tensor = Dict[Tuple[int, ...], object]
LinearMap = Callable[[Vec], Vec]


@dataclass
class FinDimAlgebra:
    """Unital associative algebra on a named basis.

    Attributes:
        field: Coefficient field
        labels: Basis labels, index i names basis vector e_i
        product: (i, j) -> e_i e_j as a sparse vector; absent pairs multiply to zero
        unit: The identity element as a sparse vector
    """
    field: Field
    labels: List[str]
    product: Dict[Tuple[int, int], Vec]
    unit: Vec

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}")

    def basis(self, i: int) -> Vec:
        return {i: self.field.one}

    def one(self) -> Vec:
        return dict(self.unit)

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product.get((i, j), {}).items():
                    add_into(out, k, a * b * c)
        return out

    def mul_many(self, *xs: Vec) -> Vec:
        result = self.one()
        for x in xs:
            result = self.mul(result, x)
        return result

    def format(self, x: Vec) -> str:
        return format_vector(self.field, self.labels, x)


@dataclass
class FinDimHopf(FinDimAlgebra):
    """Bialgebra or Hopf algebra on a named basis.

    Attributes:
        coproduct: i -> Delta(e_i) as a sparse 2-tensor
        counit: i -> epsilon(e_i); absent indices map to zero
        antipode: i -> S(e_i), or None for a bialgebra
        name: Short description used in reports
    """
    coproduct: Dict[int, Tensor] = dataclass_field(default_factory=dict)
    counit: Dict[int, object] = dataclass_field(default_factory=dict)
    antipode: Optional[Dict[int, Vec]] = None
    name: str = ''

    def delta(self, x: Vec) -> Tensor:
        out: Tensor = {}
        for i, a in x.items():
            for key, c in self.coproduct.get(i, {}).items():
                add_into(out, key, a * c)
        return out

    def eps(self, x: Vec):
        total = self.field.zero
        for i, a in x.items():
            total += a * self.counit.get(i, self.field.zero)
        return total

    def s(self, x: Vec) -> Vec:
        if self.antipode is None:
            raise ValueError(f"{self.name or 'bialgebra'} has no antipode")
        return apply_map(self.antipode, x)

    def s2(self, x: Vec) -> Vec:
        return self.s(self.s(x))

    def delta_of(self, i: int) -> Tensor:
        return self.coproduct.get(i, {})

    def s_of(self, i: int) -> Vec:
        return self.s(self.basis(i))

    def iterated(self, x: Vec, legs: int) -> Tensor:
        """Delta applied legs - 1 times, always splitting the last leg."""
        out: Tensor = {(i,): a for i, a in x.items()}
        for _ in range(legs - 1):
            nxt: Tensor = {}
            for key, a in out.items():
                for split, c in self.coproduct.get(key[-1], {}).items():
                    add_into(nxt, key[:-1] + split, a * c)
            out = nxt
        return out

    def tensor_mul(self, x: Tensor, y: Tensor) -> Tensor:
        """Product in the ordinary tensor power algebra H x ... x H."""
        out: Tensor = {}
        for kx, a in x.items():
            for ky, b in y.items():
                for key, c in tensor_of(*[self.mul({i: self.field.one}, {j: self.field.one}) for i, j in zip(kx, ky)]).items():
                    add_into(out, key, a * b * c)
        return out

    def tensor_one(self, legs: int) -> Tensor:
        return tensor_of(*[self.unit] * legs)

    def format_tensor(self, x: Tensor) -> str:
        return format_tensor(self.field, [self.labels] * (len(next(iter(x))) if x else 1), x)

    def to_dict(self) -> dict:
        fmt = self.field.format
        d = self.dim
        zero = self.field.zero

        def dense(vec: Vec) -> List[str]:
            return [fmt(vec.get(k, zero)) for k in range(d)]

        out = {
            'name': self.name,
            'labels': list(self.labels),
            'unit': dense(self.unit),
            'product': [[dense(self.product.get((i, j), {})) for j in range(d)] for i in range(d)],
            'coproduct': [[[fmt(self.coproduct.get(i, {}).get((j, k), zero)) for k in range(d)]
                           for j in range(d)] for i in range(d)],
            'counit': [fmt(self.counit.get(i, zero)) for i in range(d)],
        }
        if self.antipode is not None:
            out['antipode'] = [dense(self.antipode.get(i, {})) for i in range(d)]
        return out


@dataclass
class QT:
    """Quasitriangular structure: R in H x H with its inverse."""
    element: Tensor
    inverse: Optional[Tensor] = None

    def flipped(self) -> Tensor:
        return {(b, a): c for (a, b), c in self.element.items()}


# -- element helpers -----------------------------------------------------


def apply_map(images: Dict[int, Vec], x: Vec) -> Vec:
    out: Vec = {}
    for i, a in x.items():
        for k, c in images.get(i, {}).items():
            add_into(out, k, a * c)
    return out


def tensor_of(*parts: Vec) -> Tensor:
    """Outer product of vectors, keyed by index tuples."""
    out: Tensor = {(): None}
    for part in parts:
        nxt: Tensor = {}
        for key, a in out.items():
            for i, b in part.items():
                add_into(nxt, key + (i,), b if a is None else a * b)
        out = nxt
    return out


def _times(a, b):
    # None stands for an exact 1 that has no field element at hand.
    if a is None:
        return b
    if b is None:
        return a
    return a * b


def concat(*parts: Tensor) -> Tensor:
    """Outer product of tensors, concatenating their keys."""
    out: Tensor = {(): None}
    for part in parts:
        nxt: Tensor = {}
        for key, a in out.items():
            for k, b in part.items():
                value = _times(a, b)
                if value is None:
                    nxt[key + k] = None
                else:
                    add_into(nxt, key + k, value)
        out = nxt
    return out


def apply_legs(x: Tensor, maps: Sequence[Optional[Callable[[int], object]]]) -> Tensor:
    """
    Apply one linear map per leg and multiply out.

    Args:
        x: Tensor with len(maps) legs
        maps: Per leg, None for the identity or a function taking a basis
            index to a Vec (a 1-leg result) or a Tensor (several legs)

    Returns:
        Tensor: The image, keys concatenated leg by leg
    """
    out: Tensor = {}
    cache: Dict[Tuple[int, int], Tensor] = {}
    for key, a in x.items():
        parts = []
        for leg, i in enumerate(key):
            fn = maps[leg]
            if fn is None:
                parts.append({(i,): None})
                continue
            image = cache.get((leg, i))
            if image is None:
                raw = fn(i)
                image = {k if isinstance(k, tuple) else (k,): c for k, c in raw.items()}
                cache[(leg, i)] = image
            parts.append(image)
        for k, c in concat(*parts).items():
            add_into(out, k, _times(a, c))
    return out


def embed(x: Tensor, positions: Sequence[int], legs: int, unit: Vec) -> Tensor:
    """Place the legs of x at positions inside a legs-fold tensor, units elsewhere."""
    filler = {pos for pos in range(legs) if pos not in positions}
    out: Tensor = {}
    for key, a in x.items():
        parts = []
        for pos in range(legs):
            if pos in filler:
                parts.append({(u,): c for u, c in unit.items()})
            else:
                parts.append({(key[list(positions).index(pos)],): None})
        for k, c in concat(*parts).items():
            add_into(out, k, _times(a, c))
    return out


def difference(left: dict, right: dict) -> dict:
    out = dict(left)
    for key, value in right.items():
        add_into(out, key, -value)
    return out


def scaled(x: dict, value) -> dict:
    return {k: c * value for k, c in x.items() if c * value}


def _coeff_text(field: Field, c) -> Tuple[str, str]:
    text = field.format(c)
    sign = '+'
    if text.startswith('-') and '+' not in text[1:] and '-' not in text[1:]:
        sign, text = '-', text[1:]
    if text == '1':
        return sign, ''
    if '+' in text or '-' in text[1:] or '/' in text:
        return sign, f"({text})*"
    return sign, text + '*'


def _join(field: Field, terms: List[Tuple[str, object]]) -> str:
    if not terms:
        return '0'
    out = ''
    for body, c in terms:
        sign, prefix = _coeff_text(field, c)
        if not out:
            out = ('-' if sign == '-' else '') + prefix + body
        else:
            out += f" {sign} {prefix}{body}"
    return out


def format_vector(field: Field, labels: Sequence[str], x: Vec) -> str:
    return _join(field, [(labels[i], x[i]) for i in sorted(x)])


def format_tensor(field: Field, labels: Sequence[Sequence[str]], x: Tensor) -> str:
    terms = []
    for key in sorted(x):
        body = '⊗'.join(labels[leg][i] for leg, i in enumerate(key))
        terms.append((body, x[key]))
    return _join(field, terms)


def _witness(*labels: str) -> str:
    return f"({','.join(labels)})"


def sweep(report: VerificationReport, name: str, items, residual_fn, desc: str = '') -> None:
    """
    Record one check: the first item whose residual is nonzero is the witness.

    Args:
        report: Report to append to
        name: Check name
        items: Iterable of (witness text, payload)
        residual_fn: payload -> (nonzero residual or empty dict, formatter)
        desc: Progress bar label
    """
    items = list(items)
    for witness, payload in console.progress(items, total=len(items), desc=desc or name, unit='case'):
        residual, fmt = residual_fn(payload)
        if residual:
            report.add(name, False, witness, fmt(residual))
            return
    report.add(name, True)


# -- axioms --------------------------------------------------------------


def hopf_verify(H: FinDimHopf, square: Optional[Callable[[Tensor, Tensor], Tensor]] = None) -> VerificationReport:
    """
    Check every bialgebra axiom, and the antipode laws when an antipode is present.

    Args:
        H: Tables to verify
        square: Product on H⊗H that the coproduct must respect; the ordinary
            tensor product algebra by default, a braided one for braided tables

    Returns:
        VerificationReport: Checks associativity, unit, coassociativity, counit,
            delta_multiplicative, counit_multiplicative and, with an antipode,
            antipode_left and antipode_right
    """
    report = VerificationReport()
    F = H.field
    d = H.dim
    one = F.one
    L = H.labels
    e = H.basis
    fmt_vec = H.format
    fmt_ten = H.format_tensor
    square = square or H.tensor_mul

    sweep(report, 'associativity',
          ((_witness(L[i], L[j], L[k]), (i, j, k)) for i, j, k in cartesian(range(d), repeat=3)),
          lambda t: (difference(H.mul(H.mul(e(t[0]), e(t[1])), e(t[2])),
                                H.mul(e(t[0]), H.mul(e(t[1]), e(t[2])))), fmt_vec))
    sweep(report, 'unit',
          ((_witness(L[i]), i) for i in range(d)),
          lambda i: (difference(H.mul(H.unit, e(i)), e(i)) or difference(H.mul(e(i), H.unit), e(i)), fmt_vec))

    def coassoc(i):
        left = apply_legs(H.delta(e(i)), [H.delta_of, None])
        right = apply_legs(H.delta(e(i)), [None, H.delta_of])
        return difference(left, right), fmt_ten

    sweep(report, 'coassociativity', ((_witness(L[i]), i) for i in range(d)), coassoc)

    def counit_law(i):
        delta = H.delta(e(i))
        left: Vec = {}
        right: Vec = {}
        for (a, b), c in delta.items():
            add_into(left, b, c * H.counit.get(a, F.zero))
            add_into(right, a, c * H.counit.get(b, F.zero))
        return difference(left, e(i)) or difference(right, e(i)), fmt_vec

    sweep(report, 'counit', ((_witness(L[i]), i) for i in range(d)), counit_law)

    def delta_mult(pair):
        i, j = pair
        if i is None:
            return difference(H.delta(H.unit), H.tensor_one(2)), fmt_ten
        return difference(H.delta(H.mul(e(i), e(j))), square(H.delta(e(i)), H.delta(e(j)))), fmt_ten

    pairs = [('(1)', (None, None))] + [(_witness(L[i], L[j]), (i, j)) for i, j in cartesian(range(d), repeat=2)]
    sweep(report, 'delta_multiplicative', pairs, delta_mult)

    def eps_mult(pair):
        i, j = pair
        if i is None:
            value = H.eps(H.unit) - one
        else:
            value = H.eps(H.mul(e(i), e(j))) - H.counit.get(i, F.zero) * H.counit.get(j, F.zero)
        return ({0: value} if value else {}), lambda r: F.format(r[0])

    sweep(report, 'counit_multiplicative', pairs, eps_mult)

    if H.antipode is not None:
        for name, side in (('antipode_left', 0), ('antipode_right', 1)):
            sweep(report, name, ((_witness(L[i]), i) for i in range(d)),
                  lambda i, side=side: (difference(_convolve_antipode(H, i, side), scaled(H.unit, H.counit.get(i, F.zero))), fmt_vec))
    return report


def _convolve_antipode(H: FinDimHopf, i: int, side: int) -> Vec:
    out: Vec = {}
    for (a, b), c in H.coproduct.get(i, {}).items():
        if side == 0:
            term = H.mul(H.s(H.basis(a)), H.basis(b))
        else:
            term = H.mul(H.basis(a), H.s(H.basis(b)))
        for k, v in term.items():
            add_into(out, k, c * v)
    return out


def solve_antipode(H: FinDimHopf) -> Dict[int, Vec]:
    """
    Antipode of a finite-dimensional bialgebra as the convolution inverse of id.

    Raises:
        OutputVerificationFailed: The bialgebra has no antipode
    """
    F = H.field
    d = H.dim
    # Unknown s[j, a] is the e_j coefficient of S(e_a), at column j * d + a.
    rows: Dict[Tuple[int, int], object] = {}
    rhs: Dict[int, object] = {}
    for side in (0, 1):
        for i in range(d):
            for (a, b), c in H.coproduct.get(i, {}).items():
                unknown, known = (a, b) if side == 0 else (b, a)
                for j in range(d):
                    pair = (j, known) if side == 0 else (known, j)
                    for k, v in H.product.get(pair, {}).items():
                        add_into(rows, (side * d * d + i * d + k, j * d + unknown), c * v)
            for k, u in H.unit.items():
                value = H.counit.get(i, F.zero) * u
                if value:
                    rhs[side * d * d + i * d + k] = value
    matrix = matrix_from_entries(F, 2 * d * d, d * d, rows)
    solution = solve(F, matrix, rhs)
    if solution is None:
        report = VerificationReport()
        report.add('antipode_exists', False, H.name or 'bialgebra', 'no convolution inverse of id')
        raise OutputVerificationFailed(f"{H.name or 'bialgebra'} has no antipode", report)
    antipode: Dict[int, Vec] = {a: {} for a in range(d)}
    for col, value in solution.items():
        j, a = divmod(col, d)
        add_into(antipode[a], j, value)
    return antipode


def tensor_inverse(H: FinDimHopf, x: Tensor) -> Optional[Tensor]:
    """Two-sided inverse of x in the algebra H x H, or None when x is not invertible."""
    F = H.field
    d = H.dim
    size = d * d
    rows: Dict[Tuple[int, int], object] = {}
    for col in range(size):
        image = H.tensor_mul(x, {divmod(col, d): F.one})
        for (a, b), c in image.items():
            rows[(a * d + b, col)] = c
    inv = matrix_inverse(F, matrix_from_entries(F, size, size, rows))
    if inv is None:
        return None
    target = H.tensor_one(2)
    out: Tensor = {}
    for (row, col), c in inv.to_dok().items():
        t = target.get(divmod(col, d))
        if c and t:
            add_into(out, divmod(row, d), c * t)
    return out


# -- quasitriangular structures -----------------------------------------


def make_qt(H: FinDimHopf, element: Tensor) -> QT:
    return QT(dict(element), tensor_inverse(H, element))


def leg(H: FinDimHopf, x: Tensor, positions: Tuple[int, int], legs: int = 3) -> Tensor:
    return embed(x, positions, legs, H.unit)


def u_element(H: FinDimHopf, qt: QT) -> Vec:
    """u = sum S(R2) R1."""
    out: Vec = {}
    for (a, b), c in qt.element.items():
        for k, v in H.mul(H.s(H.basis(b)), H.basis(a)).items():
            add_into(out, k, c * v)
    return out


def u_inverse_element(H: FinDimHopf, qt: QT) -> Vec:
    """u^-1 = sum R2 S^2(R1)."""
    out: Vec = {}
    for (a, b), c in qt.element.items():
        for k, v in H.mul(H.basis(b), H.s2(H.basis(a))).items():
            add_into(out, k, c * v)
    return out


def v_element(H: FinDimHopf, qt: QT) -> Vec:
    return H.s(u_element(H, qt))


def qt_verify(H: FinDimHopf, qt: QT) -> VerificationReport:
    """
    Check that R is a quasitriangular structure, then the derived identities.

    Args:
        H: Hopf algebra passing hopf_verify
        qt: Candidate structure

    Returns:
        VerificationReport: inverse, qua1, qua2, almost_cocommutative, then the
            six checks of :func:`derived_identities_report`
    """
    report = VerificationReport()
    R = qt.element
    fmt2 = H.format_tensor
    one2 = H.tensor_one(2)
    if qt.inverse is None:
        report.add('inverse', False, 'R', 'R is not invertible in H⊗H')
    else:
        residual = difference(H.tensor_mul(R, qt.inverse), one2) or difference(H.tensor_mul(qt.inverse, R), one2)
        report.add('inverse', not residual, 'R', fmt2(residual) if residual else None)

    left = apply_legs(R, [H.delta_of, None])
    right = H.tensor_mul(leg(H, R, (0, 2)), leg(H, R, (1, 2)))
    residual = difference(left, right)
    report.add('qua1', not residual, '(Δ⊗id)R', fmt2(residual) if residual else None)
    left = apply_legs(R, [None, H.delta_of])
    right = H.tensor_mul(leg(H, R, (0, 2)), leg(H, R, (0, 1)))
    residual = difference(left, right)
    report.add('qua2', not residual, '(id⊗Δ)R', fmt2(residual) if residual else None)

    def almost(i):
        delta = H.delta(H.basis(i))
        flipped = {(b, a): c for (a, b), c in delta.items()}
        return difference(H.tensor_mul(flipped, R), H.tensor_mul(R, delta)), fmt2

    sweep(report, 'almost_cocommutative', ((_witness(H.labels[i]), i) for i in range(H.dim)), almost)
    report.extend(derived_identities_report(H, qt))
    return report


def derived_identities_report(H: FinDimHopf, qt: QT) -> VerificationReport:
    """
    The identities every quasitriangular Hopf algebra satisfies.

    Checks counit_legs, qybe, antipode_inverse, u_inverse, square_antipode
    (S^2(h) u = u h on every basis h) and delta_u (R21 R12 Delta(u) = u⊗u).
    """
    report = VerificationReport()
    F = H.field
    R = qt.element
    fmt1 = H.format
    fmt2 = H.format_tensor
    if H.antipode is None:
        report.add('antipode_missing', False, H.name or 'H', 'identities need an antipode')
        return report

    left: Vec = {}
    right: Vec = {}
    for (a, b), c in R.items():
        add_into(left, b, c * H.counit.get(a, F.zero))
        add_into(right, a, c * H.counit.get(b, F.zero))
    residual = difference(left, H.unit) or difference(right, H.unit)
    report.add('counit_legs', not residual, '(ε⊗id)R', fmt1(residual) if residual else None)

    r12, r13, r23 = (leg(H, R, pos) for pos in ((0, 1), (0, 2), (1, 2)))
    lhs = H.tensor_mul(H.tensor_mul(r12, r13), r23)
    rhs = H.tensor_mul(H.tensor_mul(r23, r13), r12)
    residual = difference(lhs, rhs)
    report.add('qybe', not residual, 'R12R13R23', H.format_tensor(residual) if residual else None)

    s_r = apply_legs(R, [H.s_of, None])
    residual = difference(H.tensor_mul(s_r, R), H.tensor_one(2))
    report.add('antipode_inverse', not residual, '(S⊗id)R', fmt2(residual) if residual else None)

    u = u_element(H, qt)
    u_inv = u_inverse_element(H, qt)
    residual = difference(H.mul(u, u_inv), H.unit) or difference(H.mul(u_inv, u), H.unit)
    report.add('u_inverse', not residual, 'u', fmt1(residual) if residual else None)

    sweep(report, 'square_antipode', ((_witness(H.labels[i]), i) for i in range(H.dim)),
          lambda i: (difference(H.mul(H.s2(H.basis(i)), u), H.mul(u, H.basis(i))), fmt1))

    q_elem = H.tensor_mul(qt.flipped(), R)
    residual = difference(H.tensor_mul(q_elem, H.delta(u)), tensor_of(u, u))
    report.add('delta_u', not residual, 'Δu', fmt2(residual) if residual else None)
    return report


# -- examples ------------------------------------------------------------


def _group_elements(orders: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(cartesian(*[range(n) for n in orders])) if orders else [()]


def _group_label(element: Tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for name, power in zip(names, element):
        if power == 1:
            parts.append(name)
        elif power > 1:
            parts.append(f"{name}^{power}")
    return '*'.join(parts) or '1'


def _generator_names(orders: Sequence[int]) -> List[str]:
    return ['g'] if len(orders) == 1 else [f"g{i}" for i in range(len(orders))]


def group_algebra(field: Field, orders: Sequence[int], name: str = '') -> FinDimHopf:
    """Group algebra of Z_{n1} x ... x Z_{nk}, basis indexed in mixed radix."""
    elements = _group_elements(orders)
    index = {g: i for i, g in enumerate(elements)}
    names = _generator_names(orders)
    one = field.one
    product = {}
    coproduct = {}
    antipode = {}
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            product[(i, j)] = {index[tuple((a + b) % n for a, b, n in zip(g, h, orders))]: one}
        coproduct[i] = {(i, i): one}
        antipode[i] = {index[tuple((-a) % n for a, n in zip(g, orders))]: one}
    return FinDimHopf(
        field=field,
        labels=[_group_label(g, names) for g in elements],
        product=product,
        unit={0: one},
        coproduct=coproduct,
        counit={i: one for i in range(len(elements))},
        antipode=antipode,
        name=name or 'k' + '×'.join(f"Z_{n}" for n in orders),
    )


def function_algebra(field: Field, orders: Sequence[int], name: str = '') -> FinDimHopf:
    """Functions on Z_{n1} x ... x Z_{nk}, basis the delta functions."""
    elements = _group_elements(orders)
    index = {g: i for i, g in enumerate(elements)}
    names = _generator_names(orders)
    one = field.one
    d = len(elements)
    coproduct: Dict[int, Tensor] = {i: {} for i in range(d)}
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            gh = index[tuple((a + b) % n for a, b, n in zip(g, h, orders))]
            coproduct[gh][(i, j)] = one
    return FinDimHopf(
        field=field,
        labels=[f"δ_{_group_label(g, names)}" for g in elements],
        product={(i, i): {i: one} for i in range(d)},
        unit={i: one for i in range(d)},
        coproduct=coproduct,
        counit={0: one},
        antipode={i: {index[tuple((-a) % n for a, n in zip(g, orders))]: one} for i, g in enumerate(elements)},
        name=name or 'k(' + '×'.join(f"Z_{n}" for n in orders) + ')',
    )


def zn_prime(field: Field, n: int) -> Tuple[FinDimHopf, QT]:
    """
    kZ_n with R = n^-1 sum q^(-ab) g^a ⊗ g^b, q the primitive n-th root of unity.

    Raises:
        ModeMismatch: The field is not cyclotomic:n
    """
    if field.kind != 'cyclotomic' or field.order != n:
        raise ModeMismatch(f"Z_{n}' needs --coeff cyclotomic:{n}, the active mode is {field.mode}")
    H = group_algebra(field, [n], name=f"Z_{n}'")
    scale = field.from_rational(1, n)
    element = {}
    for a in range(n):
        for b in range(n):
            element[(a, b)] = scale * field.q_power(-(a * b) % n)
    return H, make_qt(H, element)


@dataclass
class GroupFunctionHopf:
    """k(G) with the quasitriangular structure of a bicharacter, and kG with its dual functional."""
    functions: FinDimHopf
    qt: QT
    group: FinDimHopf
    functional: Dict[Tuple[int, int], object]


def bicharacter_failure(field: Field, orders: Sequence[int], beta) -> Optional[Tuple[str, Tuple]]:
    elements = _group_elements(orders)
    index = {g: i for i, g in enumerate(elements)}

    def mult(g, h):
        return index[tuple((a + b) % n for a, b, n in zip(elements[g], elements[h], orders))]

    d = len(elements)
    for g in range(d):
        if not field.eq(beta[g][0], field.one):
            return 'R(g,e) = 1 fails', (g, 0)
        if not field.eq(beta[0][g], field.one):
            return 'R(e,g) = 1 fails', (0, g)
    for g, h, k in cartesian(range(d), repeat=3):
        if not field.eq(beta[mult(g, h)][k], beta[g][k] * beta[h][k]):
            return 'not multiplicative in the first slot', (g, h, k)
        if not field.eq(beta[g][mult(h, k)], beta[g][h] * beta[g][k]):
            return 'not multiplicative in the second slot', (g, h, k)
    return None


def group_function_hopf(field: Field, orders: Sequence[int], bicharacter) -> GroupFunctionHopf:
    """
    Function Hopf algebra on an abelian group with the structure of a bicharacter.

    Args:
        field: Coefficient field
        orders: Cyclic factor orders of G
        bicharacter: Square table beta[g][h] over group elements in mixed radix order

    Returns:
        GroupFunctionHopf: k(G) with R = sum beta(g,h) delta_g ⊗ delta_h, and kG
            with the dual quasitriangular functional beta

    Raises:
        NotABicharacter: With the failing element tuple
    """
    failure = bicharacter_failure(field, orders, bicharacter)
    functions = function_algebra(field, orders)
    group = group_algebra(field, orders)
    if failure is not None:
        message, triple = failure
        names = tuple(group.labels[i] for i in triple)
        raise NotABicharacter(f"bicharacter: {message} at {names}", names)
    d = functions.dim
    element = {(g, h): bicharacter[g][h] for g in range(d) for h in range(d) if bicharacter[g][h]}
    functional = dict(element)
    return GroupFunctionHopf(functions, make_qt(functions, element), group, functional)


def dqt_functional_verify(A: FinDimHopf, functional: Dict[Tuple[int, int], object]) -> VerificationReport:
    """
    Check the dual quasitriangular axioms of a functional R: A⊗A -> k.

    Checks R(ab⊗c) = R(a⊗c1)R(b⊗c2), R(a⊗bc) = R(a1⊗c)R(a2⊗b),
    b1 a1 R(a2⊗b2) = R(a1⊗b1) a2 b2, and convolution invertibility with
    inverse R(Sa⊗b).
    """
    report = VerificationReport()
    F = A.field
    d = A.dim
    L = A.labels

    def pair(x: Vec, y: Vec):
        total = F.zero
        for i, a in x.items():
            for j, b in y.items():
                total += a * b * functional.get((i, j), F.zero)
        return total

    def scalar_residual(value):
        return ({0: value} if value else {}), lambda r: F.format(r[0])

    def first_slot(t):
        a, b, c = t
        lhs = pair(A.mul(A.basis(a), A.basis(b)), A.basis(c))
        rhs = F.zero
        for (x, y), v in A.coproduct.get(c, {}).items():
            rhs += v * functional.get((a, x), F.zero) * functional.get((b, y), F.zero)
        return scalar_residual(lhs - rhs)

    def second_slot(t):
        a, b, c = t
        lhs = pair(A.basis(a), A.mul(A.basis(b), A.basis(c)))
        rhs = F.zero
        for (x, y), v in A.coproduct.get(a, {}).items():
            rhs += v * functional.get((x, c), F.zero) * functional.get((y, b), F.zero)
        return scalar_residual(lhs - rhs)

    triples = [(_witness(L[a], L[b], L[c]), (a, b, c)) for a, b, c in cartesian(range(d), repeat=3)]
    sweep(report, 'first_slot_multiplicative', triples, first_slot)
    sweep(report, 'second_slot_multiplicative', triples, second_slot)

    def almost_commutative(t):
        a, b = t
        lhs: Vec = {}
        rhs: Vec = {}
        for (a1, a2), ca in A.coproduct.get(a, {}).items():
            for (b1, b2), cb in A.coproduct.get(b, {}).items():
                r_tail = functional.get((a2, b2), F.zero)
                if r_tail:
                    for k, v in A.mul(A.basis(b1), A.basis(a1)).items():
                        add_into(lhs, k, ca * cb * r_tail * v)
                r_head = functional.get((a1, b1), F.zero)
                if r_head:
                    for k, v in A.mul(A.basis(a2), A.basis(b2)).items():
                        add_into(rhs, k, ca * cb * r_head * v)
        return difference(lhs, rhs), A.format

    pairs = [(_witness(L[a], L[b]), (a, b)) for a, b in cartesian(range(d), repeat=2)]
    sweep(report, 'almost_commutative', pairs, almost_commutative)

    def invertible(t):
        a, b = t
        total = F.zero
        for (a1, a2), ca in A.coproduct.get(a, {}).items():
            for (b1, b2), cb in A.coproduct.get(b, {}).items():
                total += ca * cb * pair(A.s(A.basis(a1)), A.basis(b1)) * functional.get((a2, b2), F.zero)
        return scalar_residual(total - A.counit.get(a, F.zero) * A.counit.get(b, F.zero))

    if A.antipode is None:
        report.add('convolution_invertible', False, A.name or 'A', 'needs an antipode')
    else:
        sweep(report, 'convolution_invertible', pairs, invertible)
    return report


def dual_hopf(H: FinDimHopf) -> FinDimHopf:
    """H* on the dual basis, every table transposed."""
    d = H.dim
    product: Dict[Tuple[int, int], Vec] = {}
    for k in range(d):
        for (i, j), c in H.coproduct.get(k, {}).items():
            product.setdefault((i, j), {})[k] = c
    coproduct: Dict[int, Tensor] = {k: {} for k in range(d)}
    for (i, j), vec in H.product.items():
        for k, c in vec.items():
            coproduct[k][(i, j)] = c
    antipode = None
    if H.antipode is not None:
        antipode = {i: {} for i in range(d)}
        for j, vec in H.antipode.items():
            for i, c in vec.items():
                antipode[i][j] = c
    return FinDimHopf(
        field=H.field,
        labels=[f"{label}*" for label in H.labels],
        product=product,
        unit={k: c for k, c in H.counit.items() if c},
        coproduct=coproduct,
        counit={k: c for k, c in H.unit.items() if c},
        antipode=antipode,
        name=f"({H.name})*" if H.name else 'dual',
    )


def dual_functional(qt: QT) -> Dict[Tuple[int, int], object]:
    """The dual quasitriangular functional on H* given by evaluation against R."""
    return dict(qt.element)


def drinfeld_double(H: FinDimHopf) -> Tuple[FinDimHopf, QT]:
    """
    Quantum double on H*⊗H with R = sum (f^a⊗1)⊗(1⊗e_a).

    The product is (a⊗h)(b⊗g) = sum b2 a ⊗ h2 g <S h1, b1><h3, b3> and the
    coalgebra is the tensor product one. The antipode is solved as the
    convolution inverse of the identity.

    Raises:
        OutputVerificationFailed: The result fails hopf_verify or qt_verify
    """
    if H.antipode is None:
        raise ValueError("the double needs an antipode on H")
    F = H.field
    A = dual_hopf(H)
    d = H.dim
    D = d * d
    labels = [f"{A.labels[a]}|{H.labels[h]}" for a in range(d) for h in range(d)]

    def idx(a, h):
        return a * d + h

    product: Dict[Tuple[int, int], Vec] = {}
    a3 = {b: A.iterated(A.basis(b), 3) for b in range(d)}
    h3 = {h: H.iterated(H.basis(h), 3) for h in range(d)}
    items = list(cartesian(range(d), repeat=4))
    for a, h, b, g in console.progress(items, total=len(items), desc='double product', unit='pair'):
        out: Vec = {}
        for (b1, b2, b3), cb in a3[b].items():
            for (h1, h2, hh), ch in h3[h].items():
                if hh != b3:
                    continue
                weight = H.s(H.basis(h1)).get(b1)
                if not weight:
                    continue
                left = A.mul(A.basis(b2), A.basis(a))
                right = H.mul(H.basis(h2), H.basis(g))
                for x, cx in left.items():
                    for y, cy in right.items():
                        add_into(out, idx(x, y), cb * ch * weight * cx * cy)
        if out:
            product[(idx(a, h), idx(b, g))] = out
    unit = {idx(x, y): cx * cy for x, cx in A.unit.items() for y, cy in H.unit.items()}
    coproduct: Dict[int, Tensor] = {}
    counit = {}
    for a in range(d):
        for h in range(d):
            out: Tensor = {}
            for (a1, a2), ca in A.coproduct.get(a, {}).items():
                for (h1, h2), ch in H.coproduct.get(h, {}).items():
                    add_into(out, (idx(a1, h1), idx(a2, h2)), ca * ch)
            coproduct[idx(a, h)] = out
            value = A.counit.get(a, F.zero) * H.counit.get(h, F.zero)
            if value:
                counit[idx(a, h)] = value
    double = FinDimHopf(F, labels, product, unit, coproduct, counit, None, name=f"D({H.name})")
    double.antipode = solve_antipode(double)

    element: Tensor = {}
    for a in range(d):
        for y, cy in H.unit.items():
            for x, cx in A.unit.items():
                add_into(element, (idx(a, y), idx(x, a)), cy * cx)
    qt = make_qt(double, element)

    report = hopf_verify(double)
    report.extend(qt_verify(double, qt), prefix='qt.')
    if not report.passed:
        raise OutputVerificationFailed(f"D({H.name}) failed its own verification", report)
    return double, qt
