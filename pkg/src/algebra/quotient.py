"""Finitely presented algebras with oriented rewrite rules.

Relations are row-reduced together, oriented by their deglex-greatest
word, inter-reduced, and then completed by resolving overlap ambiguities
shortest first, up to a degree bound.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.algebra.ncpoly import Alphabet, NCPoly, Word, contains, deglex_key
from src.core import console
from src.core.errors import DegreeBoundExceeded, InconsistentRelations
from src.core.linalg import add_into, entries, matrix_from_entries, rref_rows
from src.core.report import VerificationReport
from src.core.scalar import Field


@dataclass(frozen=True)
class CompletionStatus:
    kind: str
    degree: int = 0

    def __str__(self) -> str:
        if self.kind == 'bounded':
            return f"bounded({self.degree})"
        return self.kind


@dataclass(frozen=True)
class Ambiguity:
    left: Word
    right: Word
    overlap: int

    @property
    def word(self) -> Word:
        return self.left + self.right[self.overlap:]


class QuotientAlgebra:
    """Free algebra on an alphabet modulo relations.

    Args:
        alphabet: Generators in declaration order (this fixes the monomial order)
        field: Coefficient field
        relations: Polynomials that vanish in the algebra
        degree_bound: Ambiguities longer than this are not resolved
        max_rules: Completion gives up (status 'failed') beyond this many rules
        blocks: Letter ranges of tensor factors, for algebras built as tensor products

    Raises:
        InconsistentRelations: If 1 lies in the ideal found up to the bound
    """

    def __init__(self, alphabet: Alphabet, field: Field, relations: Sequence[NCPoly],
                 degree_bound: int, max_rules: int = 2000,
                 blocks: Optional[List[Tuple[int, int]]] = None):
        self.alphabet = alphabet
        self.field = field
        self.relations = [r for r in relations if r]
        self.degree_bound = degree_bound
        self.max_rules = max_rules
        self.blocks = blocks or [(0, len(alphabet))]
        self.rules: Dict[Word, Dict[Word, object]] = {}
        self._versions: Dict[Word, int] = {}
        self._clock = 0
        self._lengths: List[int] = []
        self._cache: Dict[Word, Dict[Word, object]] = {}
        self.status = CompletionStatus('complete')
        self.certified_degree: Optional[int] = None
        self.initial_rule_count = 0

        for row in self._row_reduce(self.relations):
            self._add_relation(row)
        self.initial_rule_count = len(self.rules)
        self._complete()

    # -- construction ---------------------------------------------------

    def _row_reduce(self, relations: Sequence[NCPoly]) -> List[NCPoly]:
        if not relations:
            return []
        words = sorted({w for r in relations for w in r.terms}, key=deglex_key, reverse=True)
        column = {w: i for i, w in enumerate(words)}
        dok = {}
        for r, rel in enumerate(relations):
            for w, c in rel.terms.items():
                dok[(r, column[w])] = c
        reduced, pivots = rref_rows(matrix_from_entries(self.field, len(relations), len(words), dok))
        rows: Dict[int, Dict[Word, object]] = {}
        for (r, c), value in entries(reduced).items():
            rows.setdefault(r, {})[words[c]] = value
        result = [NCPoly(self.field, rows[r]) for r in range(len(pivots))]
        for row in result:
            if row.leading()[0] == ():
                raise InconsistentRelations("relations reduce 1 to 0")
        return sorted(result, key=lambda p: deglex_key(p.leading()[0]))

    def _touch(self, lead: Word) -> None:
        self._clock += 1
        self._versions[lead] = self._clock

    def _add_relation(self, poly: NCPoly) -> bool:
        reduced = self._reduce_terms(poly.terms)
        if not reduced:
            return False
        lead = max(reduced, key=deglex_key)
        if lead == ():
            raise InconsistentRelations("relations reduce 1 to 0")
        inverse = self.field.inv(reduced[lead])
        rhs = {w: -c * inverse for w, c in reduced.items() if w != lead}

        displaced = [l for l in self.rules if contains(l, lead)]
        pending = []
        for old in displaced:
            old_rhs = self.rules.pop(old)
            self._versions.pop(old, None)
            terms = {w: -c for w, c in old_rhs.items()}
            terms[old] = self.field.one
            pending.append(NCPoly(self.field, terms))

        self.rules[lead] = rhs
        self._touch(lead)
        self._lengths = sorted({len(l) for l in self.rules})
        self._cache.clear()

        for other, other_rhs in list(self.rules.items()):
            if other != lead and any(contains(w, lead) for w in other_rhs):
                self.rules[other] = self._reduce_terms(other_rhs)
                self._touch(other)
        for poly_old in pending:
            self._add_relation(poly_old)
        return True

    def ambiguities(self) -> Iterator[Ambiguity]:
        leads = sorted(self.rules, key=deglex_key)
        for left in leads:
            for right in leads:
                for k in range(1, min(len(left), len(right))):
                    if left[-k:] == right[:k]:
                        yield Ambiguity(left, right, k)

    def resolve(self, amb: Ambiguity) -> Dict[Word, object]:
        """Difference of the two one-step rewrites of the overlap, in normal form."""
        tail = amb.right[amb.overlap:]
        head = amb.left[:len(amb.left) - amb.overlap]
        out: Dict[Word, object] = {}
        for w, c in self.rules[amb.left].items():
            for w2, c2 in self._word_nf(w + tail).items():
                add_into(out, w2, c * c2)
        for w, c in self.rules[amb.right].items():
            for w2, c2 in self._word_nf(head + w).items():
                add_into(out, w2, -c * c2)
        return out

    def _complete(self) -> None:
        resolved = set()
        while True:
            added = False
            pending = sorted(self.ambiguities(), key=lambda a: deglex_key(a.word))
            for amb in console.progress(pending, desc='Completing', unit='overlap'):
                if len(amb.word) > self.degree_bound:
                    continue
                if amb.left not in self.rules or amb.right not in self.rules:
                    continue
                key = (amb, self._versions[amb.left], self._versions[amb.right])
                if key in resolved:
                    continue
                residual = self.resolve(amb)
                if not residual:
                    resolved.add(key)
                    continue
                self._add_relation(NCPoly(self.field, residual))
                added = True
                if len(self.rules) > self.max_rules:
                    self.status = CompletionStatus('failed')
                    self.certified_degree = len(amb.word) - 1
                    return
            if added:
                continue
            # Full pass without the resolved cache.
            leftovers = [a for a in self.ambiguities()
                         if len(a.word) <= self.degree_bound and self.resolve(a)]
            if not leftovers:
                break
            for amb in leftovers:
                residual = self.resolve(amb)
                if residual:
                    self._add_relation(NCPoly(self.field, residual))
        longer = [a for a in self.ambiguities() if len(a.word) > self.degree_bound]
        if longer:
            self.status = CompletionStatus('bounded', self.degree_bound)
            self.certified_degree = self.degree_bound
        else:
            self.status = CompletionStatus('complete')
            self.certified_degree = None

    # -- rewriting ------------------------------------------------------

    def _find_reducible(self, word: Word) -> Optional[Tuple[int, int]]:
        size = len(word)
        for start in range(size):
            for length in self._lengths:
                if start + length > size:
                    break
                if word[start:start + length] in self.rules:
                    return start, length
        return None

    def _word_nf(self, word: Word) -> Dict[Word, object]:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        hit = self._find_reducible(word)
        if hit is None:
            result = {word: self.field.one}
        else:
            start, length = hit
            lead = word[start:start + length]
            prefix, suffix = word[:start], word[start + length:]
            result = {}
            for w, c in self.rules[lead].items():
                for w2, c2 in self._word_nf(prefix + w + suffix).items():
                    add_into(result, w2, c * c2)
        self._cache[word] = result
        return result

    def _reduce_terms(self, terms: Dict[Word, object]) -> Dict[Word, object]:
        out: Dict[Word, object] = {}
        for w, c in terms.items():
            for w2, c2 in self._word_nf(w).items():
                add_into(out, w2, c * c2)
        return out

    def normal_form(self, poly: NCPoly) -> NCPoly:
        """
        Reduce every word of ``poly`` to normal form (leftmost rewriting).

        Raises:
            DegreeBoundExceeded: If a word is longer than the certified degree
        """
        if self.certified_degree is not None:
            for w in poly.terms:
                if len(w) > self.certified_degree:
                    raise DegreeBoundExceeded(
                        f"word {self.alphabet.word_text(w)} has length {len(w)} but the rewrite system "
                        f"is {self.status} (certified to degree {self.certified_degree})")
        return NCPoly(self.field, self._reduce_terms(poly.terms))

    def is_normal(self, word: Word) -> bool:
        return self._find_reducible(word) is None

    def normal_words(self, degree: int) -> List[Word]:
        """Irreducible words of exactly the given length, ascending."""
        words: List[Word] = [()]
        for _ in range(degree):
            grown = []
            for w in words:
                for g in range(len(self.alphabet)):
                    candidate = w + (g,)
                    if not self._suffix_reducible(candidate):
                        grown.append(candidate)
            words = grown
        return words

    def normal_words_upto(self, degree: int) -> List[Word]:
        out: List[Word] = []
        for d in range(degree + 1):
            out.extend(self.normal_words(d))
        return out

    def _suffix_reducible(self, word: Word) -> bool:
        size = len(word)
        return any(length <= size and word[size - length:] in self.rules for length in self._lengths)

    def split(self, word: Word) -> Tuple[Word, ...]:
        """Split a normal word of a tensor-product algebra into its factor words."""
        parts = []
        pos = 0
        for start, end in self.blocks:
            piece = []
            while pos < len(word) and start <= word[pos] < end:
                piece.append(word[pos] - start)
                pos += 1
            parts.append(tuple(piece))
        if pos != len(word):
            raise ValueError(f"word {self.alphabet.word_text(word)} is not block-ordered")
        return tuple(parts)

    def join(self, parts: Sequence[Word]) -> Word:
        out: List[int] = []
        for (start, _), piece in zip(self.blocks, parts):
            out.extend(start + letter for letter in piece)
        return tuple(out)

    def rule_polys(self) -> List[NCPoly]:
        """Rules as polynomials lead - rhs, in ascending order of leading word."""
        out = []
        for lead in sorted(self.rules, key=deglex_key):
            terms = {w: -c for w, c in self.rules[lead].items()}
            terms[lead] = self.field.one
            out.append(NCPoly(self.field, terms))
        return out

    def rule_text(self) -> List[str]:
        lines = []
        for lead in sorted(self.rules, key=deglex_key):
            rhs = NCPoly(self.field, self.rules[lead]).format(self.alphabet)
            lines.append(f"{self.alphabet.word_text(lead)} -> {rhs}")
        return lines


def quotient_from_relations(alphabet: Alphabet, field: Field, relations: Sequence[NCPoly],
                            degree_bound: int, max_rules: int = 2000) -> QuotientAlgebra:
    """Present k<alphabet>/(relations) with completion bounded by degree_bound."""
    return QuotientAlgebra(alphabet, field, relations, degree_bound, max_rules)


def completion_check(algebra: QuotientAlgebra, degree: int) -> VerificationReport:
    """Every overlap ambiguity up to the degree resolves; witness is the first overlap that does not."""
    report = VerificationReport()
    failure = None
    ambiguities = sorted(algebra.ambiguities(), key=lambda a: deglex_key(a.word))
    for amb in ambiguities:
        if len(amb.word) > degree:
            continue
        residual = algebra.resolve(amb)
        if residual:
            failure = (algebra.alphabet.word_text(amb.word),
                       NCPoly(algebra.field, residual).format(algebra.alphabet))
            break
    report.record('overlaps_resolve', failure)
    return report
