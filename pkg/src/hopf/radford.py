"""
Radford decomposition of a Hopf algebra projection.

Given bialgebra maps i: H -> H1 and p: H1 -> H with p∘i = id, the image B
of Pi(a) = sum a1 S i p(a2) is a braided Hopf algebra in crossed H-modules
and H1 is recovered as the bosonization B⋊H through theta(b⊗h) = b i(h).
"""

from dataclasses import dataclass, field as dataclass_field
from itertools import product as cartesian
from typing import Dict, List, Tuple

from src.core import console
from src.core.errors import AntipodeNotInvertible, NotAProjection
from src.core.linalg import add_into, matrix_from_entries, rank, rref_rows, entries
from src.core.report import VerificationReport
from src.hopf.findim import (
    FinDimHopf, Tensor, Vec, apply_map, difference, format_tensor, sweep, tensor_of, _witness,
)
from src.hopf.modules import Coaction, ModuleAction, crossed_module_check
from src.hopf.transmute import BraidedHopfTable, braided_hopf_check, require_bialgebra_map


@dataclass
class RadfordResult:
    """Braided factor of a projection with its checks.

    Attributes:
        braided: Tables of B with action, coaction and braiding attached
        basis: The basis of B as vectors of H1, in reduced echelon order
        pivots: Index in H1 where each basis vector has its leading 1
        report: Crossed module, braided Hopf, theta and product-rule checks
    """
    braided: BraidedHopfTable
    basis: List[Vec]
    pivots: Tuple[int, ...]
    report: VerificationReport = dataclass_field(default_factory=VerificationReport)


class _Subspace:
    """Coordinates on the span of reduced echelon rows, read at the pivots."""

    def __init__(self, basis: List[Vec], pivots: Tuple[int, ...], one):
        self.basis = basis
        self.pivots = pivots
        self.one = one

    def coords(self, x: Vec) -> Vec:
        return {r: x[p] for r, p in enumerate(self.pivots) if x.get(p)}

    def lift(self, x: Vec) -> Vec:
        out: Vec = {}
        for r, c in x.items():
            for k, v in self.basis[r].items():
                add_into(out, k, c * v)
        return out

    def tensor_coords(self, t: Tensor, legs: Tuple[bool, ...]) -> Tensor:
        """Coordinates on the legs flagged True; other legs are kept as they are."""
        position = {p: r for r, p in enumerate(self.pivots)}
        out: Tensor = {}
        for key, c in t.items():
            new = []
            for flag, k in zip(legs, key):
                if flag:
                    if k not in position:
                        break
                    new.append(position[k])
                else:
                    new.append(k)
            else:
                add_into(out, tuple(new), c)
        return out

    def tensor_lift(self, t: Tensor, legs: Tuple[bool, ...]) -> Tensor:
        out: Tensor = {}
        for key, c in t.items():
            parts = [self.basis[k] if flag else {k: self.one} for flag, k in zip(legs, key)]
            for k, v in tensor_of(*parts).items():
                add_into(out, k, c * v)
        return out


def _pi(H1: FinDimHopf, ip: Dict[int, Vec], a: int) -> Vec:
    out: Vec = {}
    for (a1, a2), c in H1.delta_of(a).items():
        for k, v in H1.mul(H1.basis(a1), H1.s(ip[a2])).items():
            add_into(out, k, c * v)
    return out


def radford_decompose(H1: FinDimHopf, H: FinDimHopf, p: Dict[int, Vec], i: Dict[int, Vec]) -> RadfordResult:
    """
    Split H1 along the projection p with section i.

    B has basis the nonzero rows of the reduced row echelon form of the
    matrix whose rows are Pi(e_a); a basis vector equal to some e_k keeps the
    label of e_k. On B: h▷b = i(h1) b S i(h2), beta(b) = p(b1) ⊗ b2,
    Delta(b) = sum Pi(b1) ⊗ b2, S(b) = sum i p(b1) S b2 and
    Psi(b⊗c) = sum p(b1)▷c ⊗ b2.

    Args:
        H1: The Hopf algebra being split
        H: The Hopf algebra it projects onto
        p: Basis images of the projection H1 -> H
        i: Basis images of the inclusion H -> H1

    Returns:
        RadfordResult: B with its report; theta checks are under 'theta_*'

    Raises:
        NotABialgebraMap: p or i fails a bialgebra law
        NotAProjection: p∘i is not the identity of H
        AntipodeNotInvertible: The antipode of H1 is singular or missing
    """
    require_bialgebra_map(H1, H, p, name='p')
    require_bialgebra_map(H, H1, i, name='i')
    for h in range(H.dim):
        residual = difference(apply_map(p, i.get(h, {})), H.basis(h))
        if residual:
            raise NotAProjection(f"p(i({H.labels[h]})) - {H.labels[h]} = {H.format(residual)}")
    F = H1.field
    d1 = H1.dim
    if H1.antipode is None:
        raise AntipodeNotInvertible(f"{H1.name or 'H1'} has no antipode")
    s_entries = {(k, a): c for a, vec in H1.antipode.items() for k, c in vec.items()}
    if rank(matrix_from_entries(F, d1, d1, s_entries)) != d1:
        raise AntipodeNotInvertible(f"the antipode of {H1.name or 'H1'} is singular")

    ip = {a: apply_map(i, apply_map(p, H1.basis(a))) for a in range(d1)}
    pi_rows = {}
    for a in range(d1):
        for k, c in _pi(H1, ip, a).items():
            pi_rows[(a, k)] = c
    reduced, pivots = rref_rows(matrix_from_entries(F, d1, d1, pi_rows))
    basis: List[Vec] = [{} for _ in pivots]
    for (r, k), c in entries(reduced).items():
        if r < len(pivots):
            basis[r][k] = c
    space = _Subspace(basis, pivots, F.one)
    dB = len(basis)
    console.status(f"Braided factor has dimension {dB} = {d1} / {H.dim}")
    labels = []
    for r, vec in enumerate(basis):
        if len(vec) == 1 and F.eq(vec[pivots[r]], F.one):
            labels.append(H1.labels[pivots[r]])
        else:
            labels.append(f"b{r}")

    report = VerificationReport()
    landing: List[Tuple[str, str]] = []

    def to_b(x: Vec, where: str) -> Vec:
        coords = space.coords(x)
        residual = difference(space.lift(coords), x)
        if residual:
            landing.append((where, H1.format(residual)))
        return coords

    def to_bb(t: Tensor, legs: Tuple[bool, ...], where: str) -> Tensor:
        coords = space.tensor_coords(t, legs)
        residual = difference(space.tensor_lift(coords, legs), t)
        if residual:
            landing.append((where, format_tensor(F, [H1.labels] * len(legs), residual)))
        return coords

    lifted = [space.lift({r: F.one}) for r in range(dB)]
    product = {}
    for b, c in cartesian(range(dB), repeat=2):
        image = to_b(H1.mul(lifted[b], lifted[c]), _witness(labels[b], labels[c]))
        if image:
            product[(b, c)] = image
    unit = to_b(H1.unit, '(1)')

    action_table = {}
    images_i = {h: i.get(h, {}) for h in range(H.dim)}
    for h, b in cartesian(range(H.dim), range(dB)):
        out: Vec = {}
        for (h1, h2), c in H.delta_of(h).items():
            for k, v in H1.mul_many(images_i[h1], lifted[b], H1.s(images_i[h2])).items():
                add_into(out, k, c * v)
        image = to_b(out, _witness(H.labels[h], labels[b]))
        if image:
            action_table[(h, b)] = image
    action = ModuleAction(H, labels, action_table)

    coaction_table: Dict[int, Tensor] = {}
    coproduct: Dict[int, Tensor] = {}
    antipode: Dict[int, Vec] = {}
    for b in range(dB):
        delta = H1.delta(lifted[b])
        beta: Tensor = {}
        split: Tensor = {}
        s_out: Vec = {}
        for (a1, a2), c in delta.items():
            for k, v in apply_map(p, H1.basis(a1)).items():
                add_into(beta, (k, a2), c * v)
            for k, v in _pi(H1, ip, a1).items():
                add_into(split, (k, a2), c * v)
            for k, v in H1.mul(ip[a1], H1.s_of(a2)).items():
                add_into(s_out, k, c * v)
        coaction_table[b] = to_bb(beta, (False, True), f"beta{_witness(labels[b])}")
        coproduct[b] = to_bb(split, (True, True), f"Delta{_witness(labels[b])}")
        antipode[b] = to_b(s_out, f"S{_witness(labels[b])}")
    coaction = Coaction(H, labels, coaction_table)
    counit = {b: H1.eps(lifted[b]) for b in range(dB) if H1.eps(lifted[b])}

    psi = {}
    for b, c in cartesian(range(dB), repeat=2):
        out: Tensor = {}
        for (h, w), e in coaction_table[b].items():
            for x, v in action.act_basis(h, c).items():
                add_into(out, (x, w), e * v)
        psi[(b, c)] = out

    B = BraidedHopfTable(
        field=F, labels=labels, product=product, unit=unit, coproduct=coproduct,
        counit=counit, antipode=antipode, name=f"B({H1.name}→{H.name})",
        psi=psi, action=action, coaction=coaction,
    )
    if landing:
        where, residual = landing[0]
        report.add('image_closed', False, where, residual)
    else:
        report.add('image_closed', True)

    crossed = crossed_module_check(action, coaction)
    report.extend(crossed.report, prefix='crossed.')
    report.extend(braided_hopf_check(B), prefix='braided.')
    report.extend(_theta_report(H1, H, B, space, p, i))
    report.extend(_product_rule_report(B))
    return RadfordResult(B, basis, tuple(pivots), report)


def _theta_report(H1: FinDimHopf, H: FinDimHopf, B: BraidedHopfTable, space: _Subspace,
                  p: Dict[int, Vec], i: Dict[int, Vec]) -> VerificationReport:
    """theta(b⊗h) = b i(h) from the bosonization tables of (B, H) onto H1."""
    F = H1.field
    report = VerificationReport()
    dB, dH, d1 = B.dim, H.dim, H1.dim
    M, C = B.action, B.coaction
    lifted = [space.lift({r: F.one}) for r in range(dB)]
    theta = {(b, h): H1.mul(lifted[b], i.get(h, {})) for b, h in cartesian(range(dB), range(dH))}
    fmt = lambda r: format_tensor(F, [B.labels, H.labels], r)

    def apply_theta(x: Tensor) -> Vec:
        out: Vec = {}
        for key, c in x.items():
            for k, v in theta[key].items():
                add_into(out, k, c * v)
        return out

    def apply_theta2(x: Tensor) -> Tensor:
        out: Tensor = {}
        for (b1, h1, b2, h2), c in x.items():
            for key, v in tensor_of(theta[(b1, h1)], theta[(b2, h2)]).items():
                add_into(out, key, c * v)
        return out

    cols = {(k, b * dH + h): c for (b, h), vec in theta.items() for k, c in vec.items()}
    full = dB * dH == d1 and rank(matrix_from_entries(F, d1, dB * dH, cols)) == d1
    report.add('theta_bijective', full, None if full else 'theta',
               None if full else f"rank below {d1} on a space of dimension {dB * dH}")

    def smash(b, h, c, g) -> Tensor:
        out: Tensor = {}
        for (h1, h2), e in H.delta_of(h).items():
            for key, v in tensor_of(B.mul(B.basis(b), M.act_basis(h1, c)), H.mul(H.basis(h2), H.basis(g))).items():
                add_into(out, key, e * v)
        return out

    sweep(report, 'theta_multiplicative',
          ((_witness(B.labels[b], H.labels[h], B.labels[c], H.labels[g]), (b, h, c, g))
           for b, h, c, g in cartesian(range(dB), range(dH), range(dB), range(dH))),
          lambda t: (difference(apply_theta(smash(*t)), H1.mul(theta[t[:2]], theta[t[2:]])), H1.format))

    def comultiplicative(t):
        b, h = t
        cop: Tensor = {}
        for (b1, b2), cb in B.delta_of(b).items():
            for (x, w), cx in C.coaction.get(b2, {}).items():
                for (h1, h2), ch in H.delta_of(h).items():
                    for k, v in H.mul(H.basis(x), H.basis(h1)).items():
                        add_into(cop, (b1, k, w, h2), cb * cx * ch * v)
        return difference(H1.delta(theta[(b, h)]), apply_theta2(cop)), H1.format_tensor

    sweep(report, 'theta_comultiplicative',
          ((_witness(B.labels[b], H.labels[h]), (b, h)) for b, h in cartesian(range(dB), range(dH))),
          comultiplicative)

    ip = {a: apply_map(i, apply_map(p, H1.basis(a))) for a in range(d1)}

    def round_trip(a):
        inverse: Tensor = {}
        for (a1, a2), c in H1.delta_of(a).items():
            for key, v in tensor_of(space.coords(_pi(H1, ip, a1)), apply_map(p, H1.basis(a2))).items():
                add_into(inverse, key, c * v)
        return difference(apply_theta(inverse), H1.basis(a)), H1.format

    sweep(report, 'theta_inverse', ((_witness(H1.labels[a]), a) for a in range(d1)), round_trip)
    return report


def _product_rule_report(B: BraidedHopfTable) -> VerificationReport:
    """Delta(bc) = sum b1 (b2(1)▷c1) ⊗ b2(2) c2 on basis pairs."""
    report = VerificationReport()
    M, C = B.action, B.coaction

    def rule(t):
        b, c = t
        right: Tensor = {}
        for (b1, b2), x in B.delta_of(b).items():
            for (h, w), y in C.coaction.get(b2, {}).items():
                for (c1, c2), z in B.delta_of(c).items():
                    left = B.mul(B.basis(b1), M.act_basis(h, c1))
                    tail = B.mul(B.basis(w), B.basis(c2))
                    for key, v in tensor_of(left, tail).items():
                        add_into(right, key, x * y * z * v)
        return difference(B.delta(B.mul(B.basis(b), B.basis(c))), right), B.format_tensor

    sweep(report, 'rad_hopf',
          ((_witness(B.labels[b], B.labels[c]), (b, c)) for b, c in cartesian(range(B.dim), repeat=2)), rule)
    return report
