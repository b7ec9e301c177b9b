"""Braidings on generators, their extension to words, braided tensor products
and the braided bialgebra / Hopf axiom checker."""

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.ncpoly import Alphabet, NCPoly, Word, deglex_key
from src.algebra.quotient import QuotientAlgebra
from src.core import console
from src.core.errors import DegreeBoundExceeded, InvalidBraiding
from src.core.linalg import add_into, first_difference, identity, kron, matmul, matrix_from_entries, rank
from src.core.report import VerificationReport
from src.core.scalar import Field


Pair = Tuple[int, int]
Tensor = Dict[Tuple[Word, ...], object]


class BraidOp:
    """Generator-level braiding Psi(c (x) b) = sum coeff * b' (x) c'.

    Args:
        field: Coefficient field
        left: Alphabet of the c letters (the factor moving right)
        right: Alphabet of the b letters (the factor moving left)
        table: (c, b) -> {(b', c'): coeff}
        check: Verify invertibility, and the braid relation when left == right

    Raises:
        InvalidBraiding: If a requested check fails
    """

    def __init__(self, field: Field, left: Alphabet, right: Alphabet,
                 table: Dict[Pair, Dict[Pair, object]], check: bool = True):
        self.field = field
        self.left = left
        self.right = right
        self.table = {key: {k: v for k, v in out.items() if v} for key, out in table.items()}
        self._letter_cache: Dict[Tuple[int, Word], Dict[Tuple[Word, int], object]] = {}
        self._word_cache: Dict[Tuple[Word, int], Dict[Tuple[int, Word], object]] = {}
        if check:
            self.validate()

    @property
    def is_self(self) -> bool:
        return self.left == self.right

    def matrix(self):
        """Linearization: column c*|B| + b, row b'*|C| + c'."""
        nc, nb = len(self.left), len(self.right)
        dok = {}
        for (c, b), out in self.table.items():
            for (b2, c2), coeff in out.items():
                dok[(b2 * nc + c2, c * nb + b)] = coeff
        return matrix_from_entries(self.field, nb * nc, nb * nc, dok)

    def validate(self) -> None:
        size = len(self.left) * len(self.right)
        if rank(self.matrix()) != size:
            raise InvalidBraiding("braiding table is not invertible")
        if self.is_self:
            failure = self.braid_relation_failure()
            if failure is not None:
                raise InvalidBraiding(f"braiding fails the braid relation at {failure[0]}")

    def braid_relation_failure(self):
        n = len(self.left)
        psi = self.matrix()
        one = identity(self.field, n)
        psi12 = kron(self.field, psi, one)
        psi23 = kron(self.field, one, psi)
        return first_difference(matmul(psi12, psi23, psi12), matmul(psi23, psi12, psi23))

    def cross_letter(self, c: int, word: Word) -> Dict[Tuple[Word, int], object]:
        """Move one left letter c past a right word: (word', c') -> coeff."""
        key = (c, word)
        cached = self._letter_cache.get(key)
        if cached is not None:
            return cached
        states: Dict[Tuple[Word, int], object] = {((), c): self.field.one}
        for b in word:
            grown: Dict[Tuple[Word, int], object] = {}
            for (done, current), coeff in states.items():
                for (b2, c2), value in self.table.get((current, b), {}).items():
                    add_into(grown, (done + (b2,), c2), coeff * value)
            states = grown
        self._letter_cache[key] = states
        return states

    def cross_word_letter(self, word: Word, b: int) -> Dict[Tuple[int, Word], object]:
        """Move a left word past one right letter b: (b', word') -> coeff."""
        key = (word, b)
        cached = self._word_cache.get(key)
        if cached is not None:
            return cached
        states: Dict[Tuple[int, Word], object] = {(b, ()): self.field.one}
        for c in reversed(word):
            grown: Dict[Tuple[int, Word], object] = {}
            for (current, suffix), coeff in states.items():
                for (b2, c2), value in self.table.get((c, current), {}).items():
                    add_into(grown, (b2, (c2,) + suffix), coeff * value)
            states = grown
        self._word_cache[key] = states
        return states


def psi_extend(psi: BraidOp, wa: Word, wb: Word, order: str = 'inner') -> Dict[Tuple[Word, Word], object]:
    """
    Braiding of the words wa (left alphabet) and wb (right alphabet).

    'inner' moves the last letter of wa across wb first; 'outer' moves the
    whole of wa across the first letter of wb first. Both agree when the
    table satisfies the braid relation.

    Returns:
        dict: (wb', wa') -> coefficient
    """
    one = psi.field.one
    if order == 'inner':
        states: Dict[Tuple[Word, Word], object] = {(tuple(wb), ()): one}
        for c in reversed(wa):
            grown: Dict[Tuple[Word, Word], object] = {}
            for (current, suffix), coeff in states.items():
                for (moved, c2), value in psi.cross_letter(c, current).items():
                    add_into(grown, (moved, (c2,) + suffix), coeff * value)
            states = grown
        return states
    if order == 'outer':
        states = {((), tuple(wa)): one}
        for b in wb:
            grown = {}
            for (done, current), coeff in states.items():
                for (b2, moved), value in psi.cross_word_letter(current, b).items():
                    add_into(grown, (done + (b2,), moved), coeff * value)
            states = grown
        return states
    raise ValueError(f"unknown crossing order {order!r}")


def psi_poly(psi: BraidOp, a: NCPoly, b: NCPoly) -> Tensor:
    """Psi(a (x) b) for polynomials, as a two-factor tensor (b', a')."""
    out: Tensor = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            for (wb2, wa2), value in psi_extend(psi, wa, wb).items():
                add_into(out, (wb2, wa2), ca * cb * value)
    return out


def _fresh_names(taken: Sequence[str], names: Sequence[str], suffix: str) -> List[str]:
    result = [f"{name}{suffix}" for name in names]
    while set(result) & set(taken):
        result = [f"{name}'" for name in result]
    return result


def braided_tensor_algebra(b_alg: QuotientAlgebra, c_alg: QuotientAlgebra, psi: BraidOp,
                           suffix: str = "'") -> QuotientAlgebra:
    """
    Presentation of B (x) C with cross relations c'b = Psi(c (x) b).

    The C generators are renamed with ``suffix`` and declared after the B
    generators, so normal words are a B word followed by a C word.
    """
    field = b_alg.field
    nb = len(b_alg.alphabet)
    names = b_alg.alphabet.names + _fresh_names(b_alg.alphabet.names, c_alg.alphabet.names, suffix)
    relations = list(b_alg.rule_polys())
    shift = [nb + i for i in range(len(c_alg.alphabet))]
    relations.extend(p.relabel(shift) for p in c_alg.rule_polys())
    for (c, b), out in sorted(psi.table.items()):
        terms = {(nb + c, b): field.one}
        for (b2, c2), value in out.items():
            add_into(terms, (b2, nb + c2), -value)
        relations.append(NCPoly(field, terms))
    for c in range(len(c_alg.alphabet)):
        for b in range(nb):
            if (c, b) not in psi.table:
                relations.append(NCPoly(field, {(nb + c, b): field.one}))
    blocks = []
    for start, end in b_alg.blocks:
        blocks.append((start, end))
    for start, end in c_alg.blocks:
        blocks.append((nb + start, nb + end))
    return QuotientAlgebra(Alphabet(names), field, relations,
                           max(b_alg.degree_bound, c_alg.degree_bound), b_alg.max_rules, blocks)


def braided_tensor_power(algebra: QuotientAlgebra, psi: BraidOp, k: int) -> QuotientAlgebra:
    """B (x) B (x) ... (x) B (k copies), built by iterating braided_tensor_algebra."""
    result = algebra
    n = len(algebra.alphabet)
    for copies in range(1, k):
        # The new copy crosses every earlier copy with the same table.
        table = {}
        for (c, b), out in psi.table.items():
            for j in range(copies):
                table[(c, j * n + b)] = {(j * n + b2, c2): v for (b2, c2), v in out.items()}
        lifted = BraidOp(psi.field, algebra.alphabet, result.alphabet, table, check=False)
        result = braided_tensor_algebra(result, algebra, lifted, suffix="'" * copies)
    return result


class TensorPower:
    """Factorwise arithmetic in the braided tensor power B (x) ... (x) B.

    Elements are dicts (w_1, ..., w_k) -> coeff; products move factors past
    each other with the braiding, and normal forms are taken factor by factor.
    """

    def __init__(self, algebra: QuotientAlgebra, psi: BraidOp, k: int):
        self.algebra = algebra
        self.psi = psi
        self.k = k
        self.field = algebra.field
        self._nf_cache: Dict[Word, Dict[Word, object]] = {}

    def unit(self) -> Tensor:
        return {((),) * self.k: self.field.one}

    def nf_word(self, word: Word) -> Dict[Word, object]:
        cached = self._nf_cache.get(word)
        if cached is None:
            cached = self.algebra.normal_form(NCPoly.monomial(self.field, word)).terms
            self._nf_cache[word] = cached
        return cached

    def normalize(self, tensor: Tensor) -> Tensor:
        out: Tensor = {}
        for key, coeff in tensor.items():
            partial = {(): coeff}
            for word in key:
                grown = {}
                for prefix, c in partial.items():
                    for w2, c2 in self.nf_word(word).items():
                        add_into(grown, prefix + (w2,), c * c2)
                partial = grown
            for k2, c in partial.items():
                add_into(out, k2, c)
        return out

    def mul(self, x: Tensor, y: Tensor) -> Tensor:
        out: Tensor = {}
        for xa, ca in x.items():
            for yb, cb in y.items():
                states = {tuple(xa): ca * cb}
                for i in range(self.k):
                    grown = {}
                    for factors, coeff in states.items():
                        tail = factors[i + 1:]
                        lengths = [len(w) for w in tail]
                        joined = tuple(letter for w in tail for letter in w)
                        for (b2, joined2), value in psi_extend(self.psi, joined, yb[i]).items():
                            pieces, pos = [], 0
                            for size in lengths:
                                pieces.append(joined2[pos:pos + size])
                                pos += size
                            new = factors[:i] + (factors[i] + b2,) + tuple(pieces)
                            add_into(grown, new, coeff * value)
                    states = grown
                for key, coeff in states.items():
                    add_into(out, key, coeff)
        return self.normalize(out)

    def format(self, tensor: Tensor) -> str:
        return format_tensor(self.field, [self.algebra.alphabet] * self.k, tensor)


def format_tensor(field: Field, alphabets: Sequence[Alphabet], tensor: Tensor) -> str:
    if not tensor:
        return '0'
    pieces = []
    for idx, (key, coeff) in enumerate(sorted(tensor.items(), key=lambda t: [deglex_key(w) for w in t[0]], reverse=True)):
        text = field.format(coeff)
        simple = ' ' not in text and '(' not in text
        negative = simple and text.startswith('-')
        if negative:
            text = text[1:]
        body = ' ⊗ '.join(a.word_text(w) for a, w in zip(alphabets, key))
        if text != '1':
            body = f"{text if simple else '(' + text + ')'}*({body})"
        if idx == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return ''.join(pieces)


def tensor_sub(x: Tensor, y: Tensor) -> Tensor:
    out = dict(x)
    for key, value in y.items():
        add_into(out, key, -value)
    return out


def psi_descends(algebra: QuotientAlgebra, psi: BraidOp, degree: int) -> VerificationReport:
    """
    Psi(r (x) g) and Psi(g (x) r) vanish modulo the relations for every rule r and generator g.

    Normal forms are taken factor by factor in B (x) B.
    """
    report = VerificationReport()
    square = TensorPower(algebra, psi, 2)
    field = algebra.field
    failures = {'left': None, 'right': None}
    rules = [r for r in algebra.rule_polys() if r.degree() + 1 <= degree]
    gens = range(len(algebra.alphabet))
    for rel in console.progress(rules, desc='Braiding descends', unit='relation'):
        for g in gens:
            gen = NCPoly.gen(field, g)
            for side, (a, b) in (('left', (rel, gen)), ('right', (gen, rel))):
                if failures[side] is not None:
                    continue
                residual = square.normalize(psi_poly(psi, a, b))
                if residual:
                    where = f"Psi({a.format(algebra.alphabet)} ⊗ {b.format(algebra.alphabet)})"
                    failures[side] = (where, square.format(residual))
    report.record('relation_crosses_generator', failures['left'])
    report.record('generator_crosses_relation', failures['right'])
    return report


@dataclass
class BraidedBialgebra:
    """A presented algebra with braiding, coproduct, counit and optional antipode.

    Attributes:
        algebra: The underlying quotient algebra
        psi: Self-braiding on generators
        coproduct: generator -> element of B (x) B as a two-factor tensor
        counit: generator -> scalar (absent means zero)
        antipode: generator -> polynomial, or None for a bialgebra
    """
    algebra: QuotientAlgebra
    psi: BraidOp
    coproduct: Dict[int, Tensor]
    counit: Dict[int, object]
    antipode: Optional[Dict[int, NCPoly]] = None
    _delta_cache: Dict[Word, Tensor] = dc_field(default_factory=dict, repr=False)
    _antipode_cache: Dict[Word, NCPoly] = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.field = self.algebra.field
        self.square = TensorPower(self.algebra, self.psi, 2)
        self.triple = TensorPower(self.algebra, self.psi, 3)

    def counit_word(self, word: Word):
        value = self.field.one
        for letter in word:
            value = value * self.counit.get(letter, self.field.zero)
            if not value:
                break
        return value

    def counit_poly(self, poly: NCPoly):
        total = self.field.zero
        for w, c in poly.terms.items():
            total = total + c * self.counit_word(w)
        return total

    def delta_word(self, word: Word) -> Tensor:
        cached = self._delta_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = self.square.unit()
        elif len(word) == 1:
            result = self.square.normalize(self.coproduct[word[0]])
        else:
            result = self.square.mul(self.delta_word(word[:1]), self.delta_word(word[1:]))
        self._delta_cache[word] = result
        return result

    def delta(self, poly: NCPoly) -> Tensor:
        out: Tensor = {}
        for w, c in poly.terms.items():
            for key, value in self.delta_word(w).items():
                add_into(out, key, c * value)
        return out

    def antipode_word(self, word: Word) -> NCPoly:
        """S on a word via S(g w) = multiplication of Psi(S g (x) S w)."""
        cached = self._antipode_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            result = NCPoly.one(self.field)
        elif len(word) == 1:
            result = self.algebra.normal_form(self.antipode[word[0]])
        else:
            crossed = psi_poly(self.psi, self.antipode_word(word[:1]), self.antipode_word(word[1:]))
            product = NCPoly(self.field)
            for (left, right), c in crossed.items():
                product = product + NCPoly.monomial(self.field, left + right, c)
            result = self.algebra.normal_form(product)
        self._antipode_cache[word] = result
        return result

    def antipode_poly(self, poly: NCPoly) -> NCPoly:
        out = NCPoly(self.field)
        for w, c in poly.terms.items():
            out = out + self.antipode_word(w).scale(c)
        return out

    def multiply_out(self, tensor: Tensor, left_map=None, right_map=None) -> NCPoly:
        """Sum of map(w1) * map(w2) over a two-factor tensor, in normal form."""
        out = NCPoly(self.field)
        for (w1, w2), c in tensor.items():
            a = left_map(w1) if left_map else NCPoly.monomial(self.field, w1)
            b = right_map(w2) if right_map else NCPoly.monomial(self.field, w2)
            out = out + (a * b).scale(c)
        return self.algebra.normal_form(out)


def bialgebra_axiom_check(bb: BraidedBialgebra, degree: int) -> VerificationReport:
    """
    Braided bialgebra (and Hopf) axioms as zero residuals up to the degree.

    Checks: the coproduct and counit kill every relation, coassociativity and
    counit laws on generators, and with an antipode: S kills relations, is
    braided-antimultiplicative on generator pairs, and satisfies both
    antipode laws on all normal words up to the degree.
    """
    report = VerificationReport()
    algebra, field = bb.algebra, bb.field
    alpha = algebra.alphabet
    gens = list(range(len(alpha)))
    rules = [r for r in algebra.rule_polys() if r.degree() <= degree]

    failure = None
    for rel in console.progress(rules, desc='Coproduct on relations', unit='relation'):
        residual = bb.square.normalize(bb.delta(rel))
        if residual:
            failure = (rel.format(alpha), bb.square.format(residual))
            break
    report.record('coproduct_relations', failure)

    failure = None
    for rel in rules:
        value = bb.counit_poly(rel)
        if value:
            failure = (rel.format(alpha), field.format(value))
            break
    report.record('counit_relations', failure)

    failure = None
    for g in gens:
        left: Tensor = {}
        right: Tensor = {}
        for (w1, w2), c in bb.delta_word((g,)).items():
            for (u1, u2), c2 in bb.delta_word(w1).items():
                add_into(left, (u1, u2, w2), c * c2)
            for (u1, u2), c2 in bb.delta_word(w2).items():
                add_into(right, (w1, u1, u2), c * c2)
        residual = bb.triple.normalize(tensor_sub(left, right))
        if residual:
            failure = (alpha.names[g], bb.triple.format(residual))
            break
    report.record('coassociativity', failure)

    failure = None
    for g in gens:
        delta = bb.delta_word((g,))
        gen = NCPoly.gen(field, g)
        left = NCPoly(field)
        right = NCPoly(field)
        for (w1, w2), c in delta.items():
            left = left + NCPoly.monomial(field, w2, c * bb.counit_word(w1))
            right = right + NCPoly.monomial(field, w1, c * bb.counit_word(w2))
        for residual in (algebra.normal_form(left - gen), algebra.normal_form(right - gen)):
            if residual and failure is None:
                failure = (alpha.names[g], residual.format(alpha))
    report.record('counit_laws', failure)

    if bb.antipode is None:
        return report

    failure = None
    for rel in rules:
        residual = bb.antipode_poly(rel)
        if residual:
            failure = (rel.format(alpha), residual.format(alpha))
            break
    report.record('antipode_relations', failure)

    failure = None
    pairs = [(g, h) for g in gens for h in gens] if degree >= 2 else []
    for word in pairs:
        direct = bb.antipode_word(word)
        via_normal = bb.antipode_poly(algebra.normal_form(NCPoly.monomial(field, word)))
        residual = direct - via_normal
        if residual:
            failure = (alpha.word_text(word), residual.format(alpha))
            break
    report.record('antipode_braided_antimultiplicative', failure)

    left_failure = right_failure = None
    words = algebra.normal_words_upto(degree)
    for word in console.progress(words, desc='Antipode laws', unit='word'):
        delta = bb.delta_word(word)
        expected = NCPoly.const(field, bb.counit_word(word))
        left = bb.multiply_out(delta, left_map=bb.antipode_word)
        right = bb.multiply_out(delta, right_map=bb.antipode_word)
        if left_failure is None and left != expected:
            left_failure = (alpha.word_text(word), (left - expected).format(alpha))
        if right_failure is None and right != expected:
            right_failure = (alpha.word_text(word), (right - expected).format(alpha))
    report.record('antipode_left', left_failure)
    report.record('antipode_right', right_failure)
    return report


def braided_adjoint(bb: BraidedBialgebra, a: NCPoly, b: NCPoly, degree: Optional[int] = None) -> NCPoly:
    """
    Ad_a(b) = sum a(1) b' (S a(2))' where Psi(S a(2) (x) b) = sum b' (x) (S a(2))'.

    Raises:
        DegreeBoundExceeded: If deg a + deg b is above ``degree``, or a word of the
            result is longer than the certified degree of the algebra
    """
    total = a.degree() + b.degree()
    if degree is not None and total > degree:
        raise DegreeBoundExceeded(f"Ad_a(b) reaches degree {total}, above the bound {degree}")
    field = bb.field
    out = NCPoly(field)
    for (w1, w2), c in bb.delta(a).items():
        crossed = psi_poly(bb.psi, bb.antipode_word(w2), b)
        for (b2, s2), value in crossed.items():
            out = out + NCPoly.monomial(field, w1 + b2 + s2, c * value)
    return bb.algebra.normal_form(out)


def trivial_braiding(field: Field, left: Alphabet, right: Alphabet, coeff=None) -> BraidOp:
    """The flip Psi(c (x) b) = coeff * b (x) c (coeff 1 unless given)."""
    value = field.one if coeff is None else coeff
    table = {(c, b): {(b, c): value} for c in range(len(left)) for b in range(len(right))}
    return BraidOp(field, left, right, table, check=left == right)
