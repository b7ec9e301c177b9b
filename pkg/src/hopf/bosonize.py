"""
Bosonization: braided Hopf algebras turned into ordinary ones.

A Hopf algebra B in H-modules gives B⋊H on B⊗H, with the smash product
algebra and the coproduct twisted by the coaction b -> sum R2 ⊗ R1▷b.
The dual construction takes B in comodules of a dual quasitriangular A to
A⋉B. Both constructions are gated by hopf_verify on the result.
"""

from dataclasses import dataclass, field as dataclass_field
from itertools import product as cartesian
from typing import Dict, Optional, Tuple

from src.core.errors import InputNotBraidedHopf, ModeMismatch, OutputVerificationFailed
from src.core.linalg import add_into
from src.core.report import VerificationReport
from src.core.scalar import Field
from src.hopf.findim import (
    FinDimHopf, QT, Tensor, Vec, difference, format_tensor, group_function_hopf, hopf_verify,
    make_qt, scaled, solve_antipode, sweep, tensor_of, zn_prime, _witness,
)
from src.hopf.modules import ModuleAction, graded_module, module_braiding, module_verify
from src.hopf.transmute import (
    BraidedHopfTable, braided_tensor_mul, comodule_braiding, module_algebra_report,
)


@dataclass
class BosonizationResult:
    """An ordinary Hopf algebra built from a braided one, with its projection pair.

    Attributes:
        hopf: The bosonized Hopf algebra
        projection: Basis images of the projection onto the background
        inclusion: Basis images of the background inside hopf
        report: hopf_verify of the result, with the input checks under 'input.'
    """
    hopf: FinDimHopf
    projection: Dict[int, Vec]
    inclusion: Dict[int, Vec]
    report: VerificationReport = dataclass_field(default_factory=VerificationReport)


# -- example braided lines -------------------------------------------------


def q_binomial(field: Field, m: int, k: int):
    """Gaussian binomial [m k]_q by the q-Pascal rule."""
    if k < 0 or k > m:
        return field.zero
    row = [field.one]
    for i in range(1, m + 1):
        nxt = []
        for j in range(i + 1):
            left = row[j - 1] if j >= 1 else field.zero
            right = row[j] if j < i else field.zero
            nxt.append(left + field.q_power(j) * right)
        row = nxt
    return row[k]


def _line_tables(field: Field, n: int, symbol: str):
    labels = ['1', symbol] + [f"{symbol}^{m}" for m in range(2, n)]
    product = {(a, b): {a + b: field.one} for a in range(n) for b in range(n) if a + b < n}
    coproduct = {}
    antipode = {}
    for m in range(n):
        coproduct[m] = {(k, m - k): q_binomial(field, m, k) for k in range(m + 1)}
        sign = field.one if m % 2 == 0 else -field.one
        antipode[m] = {m: sign * field.q_power((m * (m - 1) // 2) % n)}
    return labels, product, coproduct, {0: field.one}, antipode


def _require_cyclotomic(field: Field, n: int, what: str) -> None:
    if field.kind != 'cyclotomic' or field.order != n:
        raise ModeMismatch(f"{what} needs --coeff cyclotomic:{n}, the active mode is {field.mode}")


def anyonic_line(field: Field, n: int, symbol: str = 'x') -> BraidedHopfTable:
    """
    k[x]/(x^n) in Z_n'-modules with x of degree 1 and x primitive.

    The coproduct is sum [m k]_q x^k ⊗ x^(m-k) and S(x^m) = (-1)^m q^(m(m-1)/2) x^m.

    Raises:
        ModeMismatch: The field is not cyclotomic:n
    """
    _require_cyclotomic(field, n, 'the anyonic line')
    H, qt = zn_prime(field, n)
    labels, product, coproduct, counit, antipode = _line_tables(field, n, symbol)
    action = graded_module(H, list(range(n)), labels)
    B = BraidedHopfTable(
        field=field, labels=labels, product=product, unit={0: field.one},
        coproduct=coproduct, counit=counit, antipode=antipode,
        name=f"k[{symbol}]/({symbol}^{n})", psi=module_braiding(H, qt, action, action),
        action=action, background=(H, qt),
    )
    B.report = hopf_verify(B, square=B.braided_mul)
    return B


def super_line(field: Field) -> BraidedHopfTable:
    """k[θ]/(θ^2) with θ odd and primitive, S(θ) = -θ."""
    return anyonic_line(field, 2, symbol='θ')


def comodule_line(field: Field, n: int, symbol: str = 'x') -> Tuple[FinDimHopf, Dict[Tuple[int, int], object], BraidedHopfTable]:
    """
    k[x]/(x^n) as a graded right comodule of kZ_n with R(g^a⊗g^b) = q^(ab).

    Returns:
        Tuple: The group algebra, its dual quasitriangular functional and the line

    Raises:
        ModeMismatch: The field is not cyclotomic:n
    """
    _require_cyclotomic(field, n, 'the comodule line')
    bicharacter = [[field.q_power((a * b) % n) for b in range(n)] for a in range(n)]
    A = group_function_hopf(field, [n], bicharacter)
    labels, product, coproduct, counit, antipode = _line_tables(field, n, symbol)
    coaction = {m: {(m, m): field.one} for m in range(n)}
    B = BraidedHopfTable(
        field=field, labels=labels, product=product, unit={0: field.one},
        coproduct=coproduct, counit=counit, antipode=antipode,
        name=f"k[{symbol}]/({symbol}^{n})", right_coaction=coaction,
        psi=comodule_braiding(A.group, A.functional, coaction, coaction),
    )
    B.report = hopf_verify(B, square=B.braided_mul)
    return A.group, A.functional, B


# -- bosonization ----------------------------------------------------------


def module_coalgebra_report(B: FinDimHopf, M: ModuleAction) -> VerificationReport:
    """Checks module_coalgebra (Delta(h▷b) = sum h1▷b1 ⊗ h2▷b2) and module_counit."""
    H = M.hopf
    F = H.field
    report = VerificationReport()

    def law(t):
        h, b = t
        left = B.delta(M.act_basis(h, b))
        right: Tensor = {}
        for (h1, h2), c in H.delta_of(h).items():
            for (b1, b2), d in B.delta_of(b).items():
                for key, v in tensor_of(M.act_basis(h1, b1), M.act_basis(h2, b2)).items():
                    add_into(right, key, c * d * v)
        return difference(left, right), B.format_tensor

    def counit(t):
        h, b = t
        value = B.eps(M.act_basis(h, b)) - H.counit.get(h, F.zero) * B.counit.get(b, F.zero)
        return ({0: value} if value else {}), lambda r: F.format(r[0])

    pairs = [(_witness(H.labels[h], B.labels[b]), (h, b)) for h, b in cartesian(range(H.dim), range(B.dim))]
    sweep(report, 'module_coalgebra', pairs, law)
    sweep(report, 'module_counit', pairs, counit)
    return report


def _raise_first(report: VerificationReport, error, what: str) -> None:
    for check in report.failures():
        raise error(f"{what}: {check.name} fails at {check.witness}: {check.residual}")


def bosonize(H: FinDimHopf, qt: QT, B: BraidedHopfTable) -> BosonizationResult:
    """
    Build B⋊H on B⊗H, basis b|h at index b * dim H + h.

    The product is (b⊗h)(c⊗g) = sum b(h1▷c) ⊗ h2 g and the coproduct is
    Delta(b⊗h) = sum b1 ⊗ R2 h1 ⊗ R1▷b2 ⊗ h2. The antipode is
    S(b⊗h) = sum (1⊗S(R2 h))(S(R1▷b)⊗1).

    Args:
        H: Quasitriangular Hopf algebra acting on B
        qt: Its structure
        B: Braided Hopf tables with B.action an H-module structure

    Raises:
        InputNotBraidedHopf: B is not a Hopf algebra in H-modules
        OutputVerificationFailed: The result fails hopf_verify
    """
    M = B.action
    if M is None or M.hopf.dim != H.dim:
        raise InputNotBraidedHopf(f"{B.name or 'B'} carries no action of {H.name or 'H'}")
    psi = module_braiding(H, qt, M, M)
    inputs = VerificationReport()
    inputs.extend(module_verify(M), prefix='module.')
    inputs.extend(module_algebra_report(B, M))
    inputs.extend(module_coalgebra_report(B, M))
    inputs.extend(hopf_verify(B, square=lambda x, y: braided_tensor_mul(B, psi, x, y)), prefix='braided.')
    _raise_first(inputs, InputNotBraidedHopf, f"{B.name or 'B'} is not a Hopf algebra in {H.name or 'H'}-modules")

    F = H.field
    dB, dH = B.dim, H.dim
    idx = lambda b, h: b * dH + h
    labels = [f"{B.labels[b]}|{H.labels[h]}" for b in range(dB) for h in range(dH)]

    def pack(x: Vec, y: Vec) -> Vec:
        return {idx(b, h): c for (b, h), c in tensor_of(x, y).items()}

    product: Dict[Tuple[int, int], Vec] = {}
    for b, h, c, g in cartesian(range(dB), range(dH), range(dB), range(dH)):
        out: Vec = {}
        for (h1, h2), e in H.delta_of(h).items():
            left = B.mul(B.basis(b), M.act_basis(h1, c))
            right = H.mul(H.basis(h2), H.basis(g))
            for k, v in pack(left, right).items():
                add_into(out, k, e * v)
        if out:
            product[(idx(b, h), idx(c, g))] = out

    coproduct: Dict[int, Tensor] = {}
    for b, h in cartesian(range(dB), range(dH)):
        out: Tensor = {}
        for (b1, b2), cb in B.delta_of(b).items():
            for (h1, h2), ch in H.delta_of(h).items():
                for (r1, r2), cr in qt.element.items():
                    left = pack(B.basis(b1), H.mul(H.basis(r2), H.basis(h1)))
                    right = pack(M.act_basis(r1, b2), H.basis(h2))
                    for key, v in tensor_of(left, right).items():
                        add_into(out, key, cb * ch * cr * v)
        coproduct[idx(b, h)] = out

    counit = {}
    for b, h in cartesian(range(dB), range(dH)):
        value = B.counit.get(b, F.zero) * H.counit.get(h, F.zero)
        if value:
            counit[idx(b, h)] = value

    bos = FinDimHopf(
        field=F, labels=labels, product=product, unit=pack(B.unit, H.unit),
        coproduct=coproduct, counit=counit, antipode=None, name=f"{B.name}⋊{H.name}",
    )
    antipode: Dict[int, Vec] = {}
    for b, h in cartesian(range(dB), range(dH)):
        out: Vec = {}
        for (r1, r2), cr in qt.element.items():
            head = pack(B.unit, H.s(H.mul(H.basis(r2), H.basis(h))))
            tail = pack(B.s(M.act_basis(r1, b)), H.unit)
            for k, v in bos.mul(head, tail).items():
                add_into(out, k, cr * v)
        antipode[idx(b, h)] = out
    bos.antipode = antipode

    report = hopf_verify(bos)
    report.extend(inputs, prefix='input.')
    if not report.passed:
        raise OutputVerificationFailed(f"{bos.name} fails hopf_verify", report)
    projection = {idx(b, h): scaled(H.basis(h), B.counit[b]) for b, h in cartesian(range(dB), range(dH))
                  if B.counit.get(b)}
    inclusion = {h: pack(B.unit, H.basis(h)) for h in range(dH)}
    return BosonizationResult(bos, projection, inclusion, report)


def bosonized_qt(result: BosonizationResult, B: BraidedHopfTable, qt: QT, g: int = 1) -> QT:
    """
    Quasitriangular structure of B⋊Z_n': the background R pushed in, times
    sum (R1 g^|R2| ⊗ R2) for the braided structure of B when it is present.

    Args:
        result: Output of bosonize over Z_n'
        B: The braided Hopf tables that were bosonized
        qt: The Z_n' structure
        g: Index of the generator in the background basis
    """
    bos = result.hopf
    inc = result.inclusion
    element: Tensor = {}
    for (a, b), c in qt.element.items():
        for key, v in tensor_of(inc[a], inc[b]).items():
            add_into(element, key, c * v)
    if B.universal_r is not None:
        n = len(inc)
        degrees = B.action.degrees
        g_power = [bos.one()]
        for _ in range(1, n):
            g_power.append(bos.mul(g_power[-1], inc[g]))
        braided: Tensor = {}
        dH = len(inc)
        for (r1, r2), c in B.universal_r.items():
            left = bos.mul({r1 * dH: bos.field.one}, g_power[degrees[r2] % n])
            for key, v in tensor_of(left, {r2 * dH: bos.field.one}).items():
                add_into(braided, key, c * v)
        element = bos.tensor_mul(element, braided)
    return make_qt(bos, element)


def anyonic_bosonization_check(result: BosonizationResult, B: BraidedHopfTable, n: int, g: int = 1) -> VerificationReport:
    """
    The adjoined-generator recipe on B⋊Z_n': g^n = 1, g b = q^|b| b g,
    Delta(b) = sum b1 g^|b2| ⊗ b2 and S(b) = g^-|b| S(b) on homogeneous b.
    """
    bos = result.hopf
    F = bos.field
    report = VerificationReport()
    inc = result.inclusion
    dH = len(inc)
    degrees = B.action.degrees
    powers = [bos.one()]
    for _ in range(1, n + 1):
        powers.append(bos.mul(powers[-1], inc[g]))
    residual = difference(powers[n], bos.one())
    report.add('g_order', not residual, 'g^n', bos.format(residual) if residual else None)
    embedded = lambda b: {b * dH: F.one}

    def commutation(b):
        left = bos.mul(inc[g], embedded(b))
        right = scaled(bos.mul(embedded(b), inc[g]), F.q_power(degrees[b] % n))
        return difference(left, right), bos.format

    def coproduct(b):
        expected: Tensor = {}
        for (b1, b2), c in B.delta_of(b).items():
            left = bos.mul(embedded(b1), powers[degrees[b2] % n])
            for key, v in tensor_of(left, embedded(b2)).items():
                add_into(expected, key, c * v)
        return difference(bos.delta(embedded(b)), expected), bos.format_tensor

    def antipode(b):
        lifted = {k * dH: c for k, c in B.s_of(b).items()}
        expected = bos.mul(powers[(-degrees[b]) % n], lifted)
        return difference(bos.s(embedded(b)), expected), bos.format

    items = [(_witness(B.labels[b]), b) for b in range(B.dim)]
    sweep(report, 'g_commutation', items, commutation)
    sweep(report, 'coproduct_recipe', items, coproduct)
    sweep(report, 'antipode_recipe', items, antipode)
    return report


# -- cobosonization --------------------------------------------------------


def right_comodule_report(A: FinDimHopf, B: FinDimHopf, coaction: Dict[int, Tensor]) -> VerificationReport:
    """
    Right A-comodule, comodule algebra and comodule coalgebra laws of
    b -> sum b(1) ⊗ b(2), keyed (b', a).
    """
    F = A.field
    report = VerificationReport()
    beta = lambda x: _right_beta(coaction, x)
    fmt = lambda r: format_tensor(F, [B.labels, A.labels, A.labels], r)

    def coassoc(b):
        left: Tensor = {}
        right: Tensor = {}
        for (w, a), c in coaction.get(b, {}).items():
            for (w2, a2), d in coaction.get(w, {}).items():
                add_into(left, (w2, a2, a), c * d)
            for (a1, a2), d in A.delta_of(a).items():
                add_into(right, (w, a1, a2), c * d)
        return difference(left, right), fmt

    def counit(b):
        out: Vec = {}
        for (w, a), c in coaction.get(b, {}).items():
            add_into(out, w, c * A.counit.get(a, F.zero))
        return difference(out, B.basis(b)), B.format

    items = [(_witness(B.labels[b]), b) for b in range(B.dim)]
    sweep(report, 'comodule_coassociativity', items, coassoc)
    sweep(report, 'comodule_counit', items, counit)

    def fmt2(r):
        return format_tensor(F, [B.labels, A.labels], r)

    def algebra(t):
        b, c = t
        left = beta(B.mul(B.basis(b), B.basis(c)))
        right: Tensor = {}
        for (w, a), x in coaction.get(b, {}).items():
            for (v, e), y in coaction.get(c, {}).items():
                for k, z in B.mul(B.basis(w), B.basis(v)).items():
                    for m, u in A.mul(A.basis(a), A.basis(e)).items():
                        add_into(right, (k, m), x * y * z * u)
        return difference(left, right), fmt2

    sweep(report, 'comodule_algebra',
          ((_witness(B.labels[b], B.labels[c]), (b, c)) for b, c in cartesian(range(B.dim), repeat=2)), algebra)
    unit_image = {(w, a): c * u for w, u in B.unit.items() for a, c in A.unit.items()}
    residual = difference(beta(B.unit), unit_image)
    report.add('comodule_unit', not residual, '(1)', fmt2(residual) if residual else None)

    def coalgebra(b):
        left: Tensor = {}
        for (w, a), c in coaction.get(b, {}).items():
            for (w1, w2), d in B.delta_of(w).items():
                add_into(left, (w1, w2, a), c * d)
        right: Tensor = {}
        for (b1, b2), c in B.delta_of(b).items():
            for (v1, a1), x in coaction.get(b1, {}).items():
                for (v2, a2), y in coaction.get(b2, {}).items():
                    for m, u in A.mul(A.basis(a1), A.basis(a2)).items():
                        add_into(right, (v1, v2, m), c * x * y * u)
        return difference(left, right), lambda r: format_tensor(F, [B.labels, B.labels, A.labels], r)

    sweep(report, 'comodule_coalgebra', items, coalgebra)
    return report


def _right_beta(coaction: Dict[int, Tensor], x: Vec) -> Tensor:
    out: Tensor = {}
    for i, a in x.items():
        for key, c in coaction.get(i, {}).items():
            add_into(out, key, a * c)
    return out


def right_action(A: FinDimHopf, functional, coaction: Dict[int, Tensor]) -> Dict[Tuple[int, int], Vec]:
    """b◁a = sum b(1) R(b(2)⊗a), as a table (b, a) -> vector."""
    table: Dict[Tuple[int, int], Vec] = {}
    for b, image in coaction.items():
        for a in range(A.dim):
            out: Vec = {}
            for (w, x), c in image.items():
                r = functional.get((x, a))
                if r:
                    add_into(out, w, c * r)
            if out:
                table[(b, a)] = out
    return table


def cobosonize(A: FinDimHopf, functional: Dict[Tuple[int, int], object], B: BraidedHopfTable) -> BosonizationResult:
    """
    Build A⋉B on A⊗B, basis a|b at index a * dim B + b.

    The product is (a⊗b)(c⊗d) = sum a c1 ⊗ (b◁c2) d and the coproduct is
    Delta(a⊗b) = sum (a1 ⊗ b1(1)) ⊗ (a2 b1(2) ⊗ b2). The antipode is solved
    as the convolution inverse of the identity.

    Raises:
        InputNotBraidedHopf: B is not a Hopf algebra in right A-comodules
        OutputVerificationFailed: The result fails hopf_verify
    """
    coaction = B.right_coaction
    if coaction is None:
        raise InputNotBraidedHopf(f"{B.name or 'B'} carries no right coaction of {A.name or 'A'}")
    psi = comodule_braiding(A, functional, coaction, coaction)
    inputs = right_comodule_report(A, B, coaction)
    inputs.extend(hopf_verify(B, square=lambda x, y: braided_tensor_mul(B, psi, x, y)), prefix='braided.')
    _raise_first(inputs, InputNotBraidedHopf, f"{B.name or 'B'} is not a Hopf algebra in {A.name or 'A'}-comodules")

    F = A.field
    dA, dB = A.dim, B.dim
    idx = lambda a, b: a * dB + b
    labels = [f"{A.labels[a]}|{B.labels[b]}" for a in range(dA) for b in range(dB)]
    act = right_action(A, functional, coaction)

    def pack(x: Vec, y: Vec) -> Vec:
        return {idx(a, b): c for (a, b), c in tensor_of(x, y).items()}

    product: Dict[Tuple[int, int], Vec] = {}
    for a, b, c, d in cartesian(range(dA), range(dB), range(dA), range(dB)):
        out: Vec = {}
        for (c1, c2), e in A.delta_of(c).items():
            left = A.mul(A.basis(a), A.basis(c1))
            right = B.mul(act.get((b, c2), {}), B.basis(d))
            for k, v in pack(left, right).items():
                add_into(out, k, e * v)
        if out:
            product[(idx(a, b), idx(c, d))] = out

    coproduct: Dict[int, Tensor] = {}
    for a, b in cartesian(range(dA), range(dB)):
        out: Tensor = {}
        for (a1, a2), ca in A.delta_of(a).items():
            for (b1, b2), cb in B.delta_of(b).items():
                for (w, x), cw in coaction.get(b1, {}).items():
                    left = pack(A.basis(a1), B.basis(w))
                    right = pack(A.mul(A.basis(a2), A.basis(x)), B.basis(b2))
                    for key, v in tensor_of(left, right).items():
                        add_into(out, key, ca * cb * cw * v)
        coproduct[idx(a, b)] = out

    counit = {}
    for a, b in cartesian(range(dA), range(dB)):
        value = A.counit.get(a, F.zero) * B.counit.get(b, F.zero)
        if value:
            counit[idx(a, b)] = value

    cobos = FinDimHopf(
        field=F, labels=labels, product=product, unit=pack(A.unit, B.unit),
        coproduct=coproduct, counit=counit, antipode=None, name=f"{A.name}⋉{B.name}",
    )
    try:
        cobos.antipode = solve_antipode(cobos)
    except OutputVerificationFailed as e:
        e.report.extend(inputs, prefix='input.')
        raise
    report = hopf_verify(cobos)
    report.extend(inputs, prefix='input.')
    if not report.passed:
        raise OutputVerificationFailed(f"{cobos.name} fails hopf_verify", report)
    projection = {idx(a, b): scaled(A.basis(a), B.counit[b]) for a, b in cartesian(range(dA), range(dB))
                  if B.counit.get(b)}
    inclusion = {a: pack(A.basis(a), B.unit) for a in range(dA)}
    return BosonizationResult(cobos, projection, inclusion, report)
