"""Words, alphabets and noncommutative polynomials over a Field."""

from typing import Dict, List, Optional, Sequence, Tuple

from src.core.errors import SchemaError, ScalarSyntaxError
from src.core.linalg import add_into
from src.core.scalar import ExpressionBuilder, Field, check_tag, parse_expression


Word = Tuple[int, ...]


def deglex_key(word: Word) -> Tuple[int, Word]:
    """Degree first, then lexicographic in declaration order."""
    return (len(word), word)


def indexed_name(name: str, indices: Sequence[int] = ()) -> str:
    if not indices:
        return name
    return f"{name}[{','.join(str(i) for i in indices)}]"


def contains(word: Word, sub: Word) -> bool:
    size = len(sub)
    return any(word[s:s + size] == sub for s in range(len(word) - size + 1))


class Alphabet:
    """Named generators in declaration order.

    Args:
        names: Generator names such as 'x', "x'" or 't[0,1]'
    """

    def __init__(self, names: Sequence[str]):
        self.names = list(names)
        self.index = {}
        for i, name in enumerate(self.names):
            if name in self.index:
                raise SchemaError(f"duplicate generator name {name!r}")
            self.index[name] = i

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and other.names == self.names

    def __repr__(self) -> str:
        return f"Alphabet({self.names!r})"

    def lookup(self, name: str, indices: Sequence[int] = ()) -> Optional[int]:
        return self.index.get(indexed_name(name, indices))

    def word(self, *names: str) -> Word:
        try:
            return tuple(self.index[name] for name in names)
        except KeyError as e:
            raise SchemaError(f"unknown generator {e.args[0]!r}") from e

    def word_text(self, word: Word) -> str:
        if not word:
            return '1'
        return '*'.join(self.names[i] for i in word)

    def words(self, length: int) -> List[Word]:
        """All words of the given length, in ascending deglex order."""
        result: List[Word] = [()]
        for _ in range(length):
            result = [w + (g,) for w in result for g in range(len(self.names))]
        return result


class NCPoly:
    """Finite linear combination of words.

    Terms are a dict word -> nonzero field element; the zero polynomial has
    no terms.
    """

    __slots__ = ('field', 'terms')

    def __init__(self, field: Field, terms: Optional[Dict[Word, object]] = None):
        self.field = field
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, field: Field) -> 'NCPoly':
        return cls(field)

    @classmethod
    def const(cls, field: Field, value) -> 'NCPoly':
        return cls(field, {(): value})

    @classmethod
    def one(cls, field: Field) -> 'NCPoly':
        return cls(field, {(): field.one})

    @classmethod
    def monomial(cls, field: Field, word: Word, coeff=None) -> 'NCPoly':
        return cls(field, {tuple(word): field.one if coeff is None else coeff})

    @classmethod
    def gen(cls, field: Field, index: int) -> 'NCPoly':
        return cls(field, {(index,): field.one})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return not (self - other).terms

    def __repr__(self) -> str:
        return f"NCPoly({len(self.terms)} terms)"

    def copy(self) -> 'NCPoly':
        return NCPoly(self.field, dict(self.terms))

    def __add__(self, other: 'NCPoly') -> 'NCPoly':
        out = dict(self.terms)
        for w, c in other.terms.items():
            add_into(out, w, c)
        return NCPoly(self.field, out)

    def __sub__(self, other: 'NCPoly') -> 'NCPoly':
        out = dict(self.terms)
        for w, c in other.terms.items():
            add_into(out, w, -c)
        return NCPoly(self.field, out)

    def __neg__(self) -> 'NCPoly':
        return NCPoly(self.field, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other: 'NCPoly') -> 'NCPoly':
        out: Dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                add_into(out, w1 + w2, c1 * c2)
        return NCPoly(self.field, out)

    def scale(self, value) -> 'NCPoly':
        if not value:
            return NCPoly(self.field)
        return NCPoly(self.field, {w: c * value for w, c in self.terms.items()})

    def coeff(self, word: Word):
        return self.terms.get(tuple(word), self.field.zero)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Word, object]]:
        """Terms in descending deglex order."""
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def leading(self) -> Tuple[Word, object]:
        return self.sorted_terms()[0]

    def constant(self):
        return self.terms.get((), self.field.zero)

    def is_constant(self) -> bool:
        return all(w == () for w in self.terms)

    def substitute(self, images: Dict[int, 'NCPoly']) -> 'NCPoly':
        """Image under the algebra map sending generator i to images[i]."""
        out = NCPoly(self.field)
        for word, c in self.terms.items():
            product = NCPoly.const(self.field, c)
            for letter in word:
                product = product * images[letter]
            out = out + product
        return out

    def relabel(self, mapping: Sequence[int]) -> 'NCPoly':
        """Rename letters: letter i becomes mapping[i]."""
        return NCPoly(self.field, {tuple(mapping[i] for i in w): c for w, c in self.terms.items()})

    def format(self, alphabet: Alphabet) -> str:
        if not self.terms:
            return '0'
        pieces = []
        for idx, (word, c) in enumerate(self.sorted_terms()):
            text = self.field.format(c)
            simple = ' ' not in text and '(' not in text
            negative = simple and text.startswith('-')
            if negative:
                text = text[1:]
            if word:
                if text == '1':
                    body = alphabet.word_text(word)
                else:
                    body = f"{text if simple else '(' + text + ')'}*{alphabet.word_text(word)}"
            else:
                body = text if simple else f"({text})"
            if idx == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return ''.join(pieces)


class _PolyBuilder(ExpressionBuilder):

    def __init__(self, field: Field, alphabet: Alphabet):
        super().__init__(field)
        self.alphabet = alphabet

    def number(self, value: int):
        return NCPoly.const(self.field, self.field.from_int(value))

    def symbol(self, name, indices, pos, text):
        letter = self.alphabet.lookup(name, indices)
        if letter is not None:
            return NCPoly.gen(self.field, letter)
        if name == 'q' and not indices:
            return NCPoly.const(self.field, self.field.q)
        raise ScalarSyntaxError(f"unknown generator {indexed_name(name, indices)!r}", text, pos)

    def neg(self, a):
        return -a

    def div(self, a, b, pos, text):
        if not b.is_constant():
            raise ScalarSyntaxError("division by a non-scalar", text, pos)
        return a.scale(super().div(self.field.one, b.constant(), pos, text))

    def power(self, a, exponent, pos, text):
        if a.is_constant():
            return NCPoly.const(self.field, super().power(a.constant(), exponent, pos, text))
        if exponent < 0:
            raise ScalarSyntaxError("negative power of a generator", text, pos)
        result = NCPoly.one(self.field)
        for _ in range(exponent):
            result = result * a
        return result


def parse_ncpoly(text: str, alphabet: Alphabet, field: Field) -> NCPoly:
    """
    Parse a polynomial literal such as 'y*x - q*x*y' or 't[0,1]*t[1,1]'.

    Raises:
        ScalarSyntaxError: Malformed literal or unknown generator
    """
    if not isinstance(text, str):
        raise ScalarSyntaxError(f"polynomial literal must be a string, got {type(text).__name__}")
    value, tag = parse_expression(text, _PolyBuilder(field, alphabet))
    check_tag(tag, field, text)
    return value


def parse_word(text: str, alphabet: Alphabet, field: Field) -> Word:
    """Parse a monomial literal (a product of generators with coefficient 1)."""
    poly = parse_ncpoly(text, alphabet, field)
    if len(poly.terms) != 1:
        raise ScalarSyntaxError("expected a single monomial", text, 0)
    (word, coeff), = poly.terms.items()
    if not field.eq(coeff, field.one):
        raise ScalarSyntaxError("monomial must have coefficient 1", text, 0)
    return word
