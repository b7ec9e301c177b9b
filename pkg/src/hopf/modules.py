"""Modules and comodules of finite-dimensional Hopf algebras, and their braidings."""

from dataclasses import dataclass, field as dataclass_field
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.errors import ModeMismatch
from src.core.linalg import add_into, matrix_from_entries, solve
from src.core.report import VerificationReport
from src.core.scalar import Field
from src.hopf.findim import (
    FinDimHopf, QT, Tensor, Vec, difference, format_tensor, format_vector, scaled, sweep, _witness,
)


@dataclass
class ModuleAction:
    """Left H-module on a named basis.

    Attributes:
        hopf: The acting Hopf algebra
        labels: Basis labels of V
        action: (h, v) -> e_h acting on e_v; absent pairs act as zero
        degrees: Optional Z_n-degree of each basis vector
    """
    hopf: FinDimHopf
    labels: List[str]
    action: Dict[Tuple[int, int], Vec]
    degrees: Optional[List[int]] = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def field(self) -> Field:
        return self.hopf.field

    def act(self, h: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in h.items():
            for j, b in v.items():
                for k, c in self.action.get((i, j), {}).items():
                    add_into(out, k, a * b * c)
        return out

    def act_basis(self, h: int, v: int) -> Vec:
        return self.action.get((h, v), {})

    def format(self, v: Vec) -> str:
        return format_vector(self.field, self.labels, v)


@dataclass
class Coaction:
    """Left H-comodule structure v -> sum v(1) ⊗ v(2), keyed (h, w)."""
    hopf: FinDimHopf
    labels: List[str]
    coaction: Dict[int, Tensor] = dataclass_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def beta(self, v: Vec) -> Tensor:
        out: Tensor = {}
        for i, a in v.items():
            for key, c in self.coaction.get(i, {}).items():
                add_into(out, key, a * c)
        return out


def module_verify(M: ModuleAction) -> VerificationReport:
    """Checks module_law (gh acts as g after h) and unit_acts."""
    H = M.hopf
    report = VerificationReport()
    L = H.labels

    def law(t):
        g, h, v = t
        left = M.act(H.mul(H.basis(g), H.basis(h)), {v: H.field.one})
        right = M.act(H.basis(g), M.act(H.basis(h), {v: H.field.one}))
        return difference(left, right), M.format

    sweep(report, 'module_law',
          ((_witness(L[g], L[h], M.labels[v]), (g, h, v)) for g, h, v in cartesian(range(H.dim), range(H.dim), range(M.dim))),
          law)
    sweep(report, 'unit_acts', ((_witness(M.labels[v]), v) for v in range(M.dim)),
          lambda v: (difference(M.act(H.unit, {v: H.field.one}), {v: H.field.one}), M.format))
    return report


def comodule_verify(C: Coaction) -> VerificationReport:
    """Checks comodule_coassociativity and comodule_counit."""
    H = C.hopf
    F = H.field
    report = VerificationReport()
    labels = [H.labels, H.labels, C.labels]

    def coassoc(v):
        left: Tensor = {}
        right: Tensor = {}
        for (h, w), c in C.coaction.get(v, {}).items():
            for (h1, h2), d in H.delta_of(h).items():
                add_into(left, (h1, h2, w), c * d)
            for (h2, w2), d in C.coaction.get(w, {}).items():
                add_into(right, (h, h2, w2), c * d)
        return difference(left, right), lambda r: format_tensor(F, labels, r)

    def counit(v):
        out: Vec = {}
        for (h, w), c in C.coaction.get(v, {}).items():
            add_into(out, w, c * H.counit.get(h, F.zero))
        return difference(out, {v: F.one}), lambda r: format_vector(F, C.labels, r)

    items = [(_witness(C.labels[v]), v) for v in range(C.dim)]
    sweep(report, 'comodule_coassociativity', items, coassoc)
    sweep(report, 'comodule_counit', items, counit)
    return report


# -- standard modules ------------------------------------------------------


def trivial_module(H: FinDimHopf, labels: Sequence[str]) -> ModuleAction:
    """h acts on every vector by the counit."""
    action = {}
    for h in range(H.dim):
        value = H.counit.get(h, H.field.zero)
        if value:
            for v in range(len(labels)):
                action[(h, v)] = {v: value}
    return ModuleAction(H, list(labels), action)


def adjoint_module(H: FinDimHopf) -> ModuleAction:
    """H acting on itself by h▷b = sum h1 b S(h2)."""
    action = {}
    for h in range(H.dim):
        for b in range(H.dim):
            out: Vec = {}
            for (h1, h2), c in H.delta_of(h).items():
                for k, v in H.mul_many(H.basis(h1), H.basis(b), H.s_of(h2)).items():
                    add_into(out, k, c * v)
            if out:
                action[(h, b)] = out
    return ModuleAction(H, list(H.labels), action)


def graded_module(H: FinDimHopf, degrees: Sequence[int], labels: Optional[Sequence[str]] = None) -> ModuleAction:
    """
    Z_n-graded space as a kZ_n module: g^a acts on v by q^(a|v|).

    Args:
        H: Group algebra of Z_n with basis g^0, ..., g^(n-1)
        degrees: Degree of each basis vector

    Raises:
        ModeMismatch: The field is not cyclotomic:n
    """
    F = H.field
    n = H.dim
    if F.kind != 'cyclotomic' or F.order != n:
        raise ModeMismatch(f"a Z_{n}-graded space needs --coeff cyclotomic:{n}, the active mode is {F.mode}")
    labels = list(labels) if labels is not None else [f"v{i}" for i in range(len(degrees))]
    action = {}
    for a in range(n):
        for v, deg in enumerate(degrees):
            action[(a, v)] = {v: F.q_power((a * deg) % n)}
    return ModuleAction(H, labels, action, degrees=[d % n for d in degrees])


def tensor_module(V: ModuleAction, W: ModuleAction) -> ModuleAction:
    """V⊗W with h acting by sum h1▷v ⊗ h2▷w; basis (v, w) at v * dim W + w."""
    H = V.hopf
    dw = W.dim
    action = {}
    for h in range(H.dim):
        for v in range(V.dim):
            for w in range(dw):
                out: Vec = {}
                for (h1, h2), c in H.delta_of(h).items():
                    for x, a in V.act_basis(h1, v).items():
                        for y, b in W.act_basis(h2, w).items():
                            add_into(out, x * dw + y, c * a * b)
                if out:
                    action[(h, v * dw + w)] = out
    degrees = None
    if V.degrees is not None and W.degrees is not None:
        degrees = [(a + b) % H.dim for a in V.degrees for b in W.degrees]
    labels = [f"{a}⊗{b}" for a in V.labels for b in W.labels]
    return ModuleAction(H, labels, action, degrees)


def quasitriangular_coaction(H: FinDimHopf, qt: QT, M: ModuleAction) -> Coaction:
    """The coaction b -> sum R2 ⊗ R1▷b that makes a module a crossed module."""
    coaction: Dict[int, Tensor] = {}
    for b in range(M.dim):
        out: Tensor = {}
        for (r1, r2), c in qt.element.items():
            for w, a in M.act_basis(r1, b).items():
                add_into(out, (r2, w), c * a)
        coaction[b] = out
    return Coaction(H, list(M.labels), coaction)


# -- braidings -------------------------------------------------------------


Braiding = Dict[Tuple[int, int], Dict[Tuple[int, int], object]]


def module_braiding(H: FinDimHopf, qt: QT, V: ModuleAction, W: ModuleAction) -> Braiding:
    """Psi(v⊗w) = sum R2▷w ⊗ R1▷v as a table (v, w) -> {(w', v'): c}."""
    table: Braiding = {}
    for v in range(V.dim):
        for w in range(W.dim):
            out: Dict[Tuple[int, int], object] = {}
            for (r1, r2), c in qt.element.items():
                for y, b in W.act_basis(r2, w).items():
                    for x, a in V.act_basis(r1, v).items():
                        add_into(out, (y, x), c * a * b)
            table[(v, w)] = out
    return table


def inverse_braiding(H: FinDimHopf, qt: QT, V: ModuleAction, W: ModuleAction) -> Braiding:
    """Psi^-1(w⊗v) = sum R^-1(1)▷v ⊗ R^-1(2)▷w as a table (w, v) -> {(v', w'): c}."""
    table: Braiding = {}
    for w in range(W.dim):
        for v in range(V.dim):
            out: Dict[Tuple[int, int], object] = {}
            for (r1, r2), c in (qt.inverse or {}).items():
                for x, a in V.act_basis(r1, v).items():
                    for y, b in W.act_basis(r2, w).items():
                        add_into(out, (x, y), c * a * b)
            table[(w, v)] = out
    return table


def apply_braiding(table: Braiding, x: Tensor) -> Tensor:
    out: Tensor = {}
    for key, a in x.items():
        for image, c in table.get(key, {}).items():
            add_into(out, image, a * c)
    return out


def braiding_report(H: FinDimHopf, qt: QT, V: ModuleAction, W: ModuleAction) -> VerificationReport:
    """
    Checks intertwiner (Psi commutes with the action of every basis h) and
    invertible (Psi^-1 built from R^-1 is a two-sided inverse).
    """
    F = H.field
    report = VerificationReport()
    psi = module_braiding(H, qt, V, W)
    VW = tensor_module(V, W)
    WV = tensor_module(W, V)
    dv, dw = V.dim, W.dim
    fmt = lambda r: format_tensor(F, [W.labels, V.labels], r)

    def intertwines(t):
        h, v, w = t
        acted = VW.act_basis(h, v * dw + w)
        left = apply_braiding(psi, {divmod(k, dw): c for k, c in acted.items()})
        image = psi[(v, w)]
        right: Tensor = {}
        for (y, x), c in image.items():
            for k, a in WV.act_basis(h, y * dv + x).items():
                add_into(right, divmod(k, dv), c * a)
        return difference(left, right), fmt

    sweep(report, 'intertwiner',
          ((_witness(H.labels[h], V.labels[v], W.labels[w]), (h, v, w))
           for h, v, w in cartesian(range(H.dim), range(dv), range(dw))),
          intertwines)

    if qt.inverse is None:
        report.add('invertible', False, 'R', 'R has no inverse')
        return report
    inv = inverse_braiding(H, qt, V, W)

    def round_trip(t):
        v, w = t
        back = apply_braiding(inv, psi[(v, w)])
        return difference(back, {(v, w): F.one}), lambda r: format_tensor(F, [V.labels, W.labels], r)

    sweep(report, 'invertible', ((_witness(V.labels[v], W.labels[w]), (v, w))
                                 for v, w in cartesian(range(dv), range(dw))), round_trip)
    return report


def hexagon_report(H: FinDimHopf, qt: QT, U: ModuleAction, V: ModuleAction, W: ModuleAction) -> VerificationReport:
    """
    Checks both hexagon identities on basis triples:
    Psi(U, V⊗W) = (id⊗Psi(U,W))(Psi(U,V)⊗id) and
    Psi(U⊗V, W) = (Psi(U,W)⊗id)(id⊗Psi(V,W)).
    """
    F = H.field
    report = VerificationReport()
    du, dv, dw = U.dim, V.dim, W.dim
    psi_uv = module_braiding(H, qt, U, V)
    psi_uw = module_braiding(H, qt, U, W)
    psi_vw = module_braiding(H, qt, V, W)
    psi_u_vw = module_braiding(H, qt, U, tensor_module(V, W))
    psi_uv_w = module_braiding(H, qt, tensor_module(U, V), W)

    def first(t):
        u, v, w = t
        direct: Tensor = {}
        for (vw, x), c in psi_u_vw[(u, v * dw + w)].items():
            y, z = divmod(vw, dw)
            add_into(direct, (y, z, x), c)
        stepwise: Tensor = {}
        for (y, x), c in psi_uv[(u, v)].items():
            for (z, x2), d in psi_uw[(x, w)].items():
                add_into(stepwise, (y, z, x2), c * d)
        return difference(direct, stepwise), lambda r: format_tensor(F, [V.labels, W.labels, U.labels], r)

    def second(t):
        u, v, w = t
        direct: Tensor = {}
        for (z, uv), c in psi_uv_w[(u * dv + v, w)].items():
            x, y = divmod(uv, dv)
            add_into(direct, (z, x, y), c)
        stepwise: Tensor = {}
        for (z, y), c in psi_vw[(v, w)].items():
            for (z2, x), d in psi_uw[(u, z)].items():
                add_into(stepwise, (z2, x, y), c * d)
        return difference(direct, stepwise), lambda r: format_tensor(F, [W.labels, U.labels, V.labels], r)

    triples = [(_witness(U.labels[u], V.labels[v], W.labels[w]), (u, v, w))
               for u, v, w in cartesian(range(du), range(dv), range(dw))]
    sweep(report, 'hexagon_left', triples, first)
    sweep(report, 'hexagon_right', triples, second)
    return report


def squared_braiding_identity(H: FinDimHopf, qt: QT, V: ModuleAction, W: ModuleAction) -> Optional[Tuple[str, str]]:
    """First (v, w) with Psi(W,V) Psi(V,W) (v⊗w) != v⊗w, or None."""
    F = H.field
    psi = module_braiding(H, qt, V, W)
    back = module_braiding(H, qt, W, V)
    for (v, w), image in sorted(psi.items()):
        residual = difference(apply_braiding(back, image), {(v, w): F.one})
        if residual:
            return _witness(V.labels[v], W.labels[w]), format_tensor(F, [V.labels, W.labels], residual)
    return None


# -- anyonic dimension -------------------------------------------------------


def _require_cyclotomic(field: Field, n: int) -> None:
    if field.kind != 'cyclotomic' or field.order != n:
        raise ModeMismatch(f"anyonic dimensions for Z_{n} need --coeff cyclotomic:{n}, the active mode is {field.mode}")


def anyonic_dim(field: Field, dims: Sequence[int]):
    """
    sum over a of q^(-a^2) dim V_a for a Z_n-graded space, n = len(dims).

    Raises:
        ModeMismatch: The field is not cyclotomic:n
        ValueError: A negative dimension
    """
    n = len(dims)
    _require_cyclotomic(field, n)
    if any(d < 0 for d in dims):
        raise ValueError(f"graded dimensions must be non-negative, got {list(dims)}")
    total = field.zero
    for a, d in enumerate(dims):
        total += field.from_int(d) * field.q_power(-(a * a) % n)
    return total


def anyonic_trace(field: Field, matrix: Dict[Tuple[int, int], object], degrees: Sequence[int], n: int):
    """
    sum over basis i of q^(-|i|^2) f_ii for a degree-preserving map f.

    Raises:
        ModeMismatch: The field is not cyclotomic:n
        ValueError: f mixes degrees
    """
    _require_cyclotomic(field, n)
    total = field.zero
    for (i, j), c in matrix.items():
        if not c:
            continue
        if degrees[i] % n != degrees[j] % n:
            raise ValueError(f"map does not respect the grading at entry ({i},{j})")
        if i == j:
            total += c * field.q_power(-(degrees[i] * degrees[i]) % n)
    return total


# -- crossed modules ---------------------------------------------------------


@dataclass
class CrossedModuleResult:
    report: VerificationReport
    inverse_coaction: Optional[Dict[int, Tensor]] = None


def _inverse_coaction(M: ModuleAction, C: Coaction) -> Optional[Dict[int, Tensor]]:
    """
    Solve for gamma: V -> H⊗V with sum (v[2])(1) v[1] ⊗ (v[2])(2) = 1⊗v and
    sum (v(2))[1] v(1) ⊗ (v(2))[2] = 1⊗v, or None when no solution exists.
    """
    H = M.hopf
    F = H.field
    dh, dv = H.dim, M.dim
    # Unknown g[v; h, w] sits at column (v * dh + h) * dv + w.
    column = lambda v, h, w: (v * dh + h) * dv + w
    block = dh * dv
    rows: Dict[Tuple[int, int], object] = {}
    rhs: Dict[int, object] = {}
    for v in range(dv):
        for h in range(dh):
            for w in range(dv):
                for (h2, w2), c in C.coaction.get(w, {}).items():
                    for k, a in H.mul(H.basis(h2), H.basis(h)).items():
                        add_into(rows, (v * block + k * dv + w2, column(v, h, w)), c * a)
        for (h1, w), c in C.coaction.get(v, {}).items():
            for h2 in range(dh):
                for w2 in range(dv):
                    for k, a in H.mul(H.basis(h2), H.basis(h1)).items():
                        add_into(rows, (dv * block + v * block + k * dv + w2, column(w, h2, w2)), c * a)
        for k, u in H.unit.items():
            rhs[v * block + k * dv + v] = u
            rhs[dv * block + v * block + k * dv + v] = u
    gamma = solve(F, matrix_from_entries(F, 2 * dv * block, dv * block, rows), rhs)
    if gamma is None:
        return None
    solution: Dict[int, Tensor] = {v: {} for v in range(dv)}
    for col, c in gamma.items():
        vh, w = divmod(col, dv)
        v, h = divmod(vh, dh)
        solution[v][(h, w)] = c
    return solution


def crossed_module_check(M: ModuleAction, C: Coaction) -> CrossedModuleResult:
    """
    Verify a crossed module: module laws, comodule laws, the compatibility
    sum h1 v(1) ⊗ h2▷v(2) = sum (h1▷v)(1) h2 ⊗ (h1▷v)(2), and invertibility of
    the coaction (the inverse is returned when found).
    """
    H = M.hopf
    F = H.field
    report = VerificationReport()
    report.add('module_laws', module_verify(M).passed)
    comod = comodule_verify(C)
    report.add('comodule_laws', comod.passed,
               None if comod.passed else next(iter(comod.failures())).witness,
               None if comod.passed else next(iter(comod.failures())).residual)

    def compatible(t):
        h, v = t
        left: Tensor = {}
        right: Tensor = {}
        for (h1, h2), c in H.delta_of(h).items():
            for (x, w), a in C.coaction.get(v, {}).items():
                for k, b in H.mul(H.basis(h1), H.basis(x)).items():
                    for y, e in M.act_basis(h2, w).items():
                        add_into(left, (k, y), c * a * b * e)
            for w, a in M.act_basis(h1, v).items():
                for (x, y), b in C.coaction.get(w, {}).items():
                    for k, e in H.mul(H.basis(x), H.basis(h2)).items():
                        add_into(right, (k, y), c * a * b * e)
        return difference(left, right), lambda r: format_tensor(F, [H.labels, M.labels], r)

    sweep(report, 'crossed_compatibility',
          ((_witness(H.labels[h], M.labels[v]), (h, v)) for h, v in cartesian(range(H.dim), range(M.dim))),
          compatible)
    inverse = _inverse_coaction(M, C)
    report.add('comodule_invertible', inverse is not None, None if inverse is not None else 'gamma',
               None if inverse is not None else 'no inverse coaction solves both identities')
    return CrossedModuleResult(report, inverse)


# -- n-fold module algebra ---------------------------------------------------


def nfold_action(H: FinDimHopf, n: int, h: int, x: Tuple[int, ...]) -> Tensor:
    """h▷(b1⊗...⊗bn) = sum h(1) b1 S h(2n) ⊗ h(2) b2 S h(2n-1) ⊗ ... ⊗ h(n) bn S h(n+1)."""
    out: Tensor = {}
    for legs, c in H.iterated(H.basis(h), 2 * n).items():
        parts = []
        for k in range(n):
            parts.append(H.mul_many(H.basis(legs[k]), H.basis(x[k]), H.s_of(legs[2 * n - 1 - k])))
        term: Tensor = {(): c}
        for part in parts:
            nxt: Tensor = {}
            for key, a in term.items():
                for i, b in part.items():
                    add_into(nxt, key + (i,), a * b)
            term = nxt
        for key, a in term.items():
            add_into(out, key, a)
    return out


def nfold_module_algebra_check(H: FinDimHopf, n: int) -> VerificationReport:
    """
    Check that the n-fold action makes the tensor power algebra H^n an H-module algebra.

    Checks module_law, unit_acts, product_law (h▷(xy) = sum (h1▷x)(h2▷y)) and
    unit_law (h▷1 = eps(h)1), on all basis tuples.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    F = H.field
    d = H.dim
    report = VerificationReport()
    tuples = list(cartesian(range(d), repeat=n))
    cache = {(h, x): nfold_action(H, n, h, x) for h in range(d) for x in tuples}
    fmt = lambda r: format_tensor(F, [H.labels] * n, r)
    label = lambda x: '⊗'.join(H.labels[i] for i in x)

    def act(hvec: Vec, x: Tensor) -> Tensor:
        out: Tensor = {}
        for h, a in hvec.items():
            for key, b in x.items():
                for k, c in cache[(h, key)].items():
                    add_into(out, k, a * b * c)
        return out

    def module_law(t):
        g, h, x = t
        left = act(H.mul(H.basis(g), H.basis(h)), {x: F.one})
        right = act(H.basis(g), cache[(h, x)])
        return difference(left, right), fmt

    sweep(report, 'module_law',
          ((f"({H.labels[g]},{H.labels[h]},{label(x)})", (g, h, x))
           for g, h, x in cartesian(range(d), range(d), tuples)),
          module_law)
    sweep(report, 'unit_acts', ((f"({label(x)})", x) for x in tuples),
          lambda x: (difference(act(H.unit, {x: F.one}), {x: F.one}), fmt))

    def product_law(t):
        h, x, y = t
        left = act(H.basis(h), H.tensor_mul({x: F.one}, {y: F.one}))
        right: Tensor = {}
        for (h1, h2), c in H.delta_of(h).items():
            for k, a in H.tensor_mul(cache[(h1, x)], cache[(h2, y)]).items():
                add_into(right, k, c * a)
        return difference(left, right), fmt

    sweep(report, 'product_law',
          ((f"({H.labels[h]},{label(x)},{label(y)})", (h, x, y))
           for h, x, y in cartesian(range(d), tuples, tuples)),
          product_law)
    one_n = H.tensor_one(n)
    sweep(report, 'unit_law', ((f"({H.labels[h]})", h) for h in range(d)),
          lambda h: (difference(act(H.basis(h), one_n), scaled(one_n, H.counit.get(h, F.zero))), fmt))
    return report

