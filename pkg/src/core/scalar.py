"""Exact coefficient fields: rational functions in q, or cyclotomic fields.

A :class:`Field` wraps one sympy domain and owns parsing, canonical
printing and the few arithmetic helpers that the domains do not spell the
same way. Elements are the sympy domain elements themselves
(``FracElement`` for ``qfield``, ``ExtensionElement`` for
``cyclotomic:n``), so ``+``, ``-``, ``*`` and truth testing work directly.
"""

import re
from typing import List, Optional, Tuple

from sympy import Poly, Symbol, cyclotomic_poly, exp, factor_list, I, pi, together
from sympy.polys.agca.extensions import FiniteExtension
from sympy.polys.domains import QQ, ZZ

from src.core.errors import DivisionByZero, IrreducibleFactorError, ModeMismatch, ScalarSyntaxError


Q_SYMBOL = Symbol('q')
_X = Symbol('x')

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*/^()\[\],@:]))")


def parse_mode(mode: str) -> Tuple[str, int]:
    """Split 'qfield' / 'cyclotomic:n' into (kind, n)."""
    text = mode.strip().lower()
    if text == 'qfield':
        return 'qfield', 0
    if text.startswith('cyclotomic:'):
        try:
            order = int(text.split(':', 1)[1])
        except ValueError as e:
            raise ModeMismatch(f"bad cyclotomic order in {mode!r}") from e
        if order < 1:
            raise ModeMismatch(f"cyclotomic order must be positive, got {order}")
        return 'cyclotomic', order
    raise ModeMismatch(f"unknown coefficient mode {mode!r}")


class Field:
    """One exact coefficient field.

    Args:
        mode: 'qfield' for Q(q), 'cyclotomic:n' for Q[q]/(Phi_n)
    """

    def __init__(self, mode: str = 'qfield'):
        self.kind, self.order = parse_mode(mode)
        if self.kind == 'qfield':
            self.domain = ZZ.frac_field(Q_SYMBOL)
            self.q = self.domain.from_sympy(Q_SYMBOL)
        else:
            modulus = Poly(cyclotomic_poly(self.order, Q_SYMBOL), Q_SYMBOL, domain=QQ)
            self.domain = FiniteExtension(modulus)
            self.q = self.domain.generator
        self.zero = self.domain.zero
        self.one = self.domain.one
        self._number_field = None

    @property
    def mode(self) -> str:
        return 'qfield' if self.kind == 'qfield' else f'cyclotomic:{self.order}'

    def __repr__(self) -> str:
        return f"Field({self.mode!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.mode == self.mode

    def __hash__(self) -> int:
        return hash(self.mode)

    # -- construction -------------------------------------------------

    def from_int(self, value: int):
        return self.domain.convert(value)

    def from_rational(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise DivisionByZero(f"{numerator}/0")
        return self.from_int(numerator) / self.from_int(denominator)

    def q_power(self, exponent: int):
        return self.power(self.q, exponent)

    def contains(self, value) -> bool:
        if self.kind == 'qfield':
            return getattr(value, 'field', None) == self.domain.field
        return getattr(value, 'ext', None) == self.domain

    def coerce(self, value):
        """Accept ints and elements of this field; anything else is a mode error."""
        if isinstance(value, int):
            return self.from_int(value)
        if not self.contains(value):
            raise ModeMismatch(f"value {value!r} does not belong to {self.mode}")
        return value

    # -- arithmetic ---------------------------------------------------

    def eq(self, a, b) -> bool:
        return not (a - b)

    def inv(self, value):
        if not value:
            raise DivisionByZero("inverse of zero")
        return self.one / value

    def div(self, a, b):
        return a * self.inv(b)

    def power(self, value, exponent: int):
        if exponent >= 0:
            return value ** exponent
        return self.inv(value) ** (-exponent)

    def arith(self, op: str, a, b=None):
        """Apply one of add, sub, mul, div, inv, neg to canonical operands."""
        a = self.coerce(a)
        if op in ('inv', 'neg'):
            return self.inv(a) if op == 'inv' else -a
        if b is None:
            raise ValueError(f"operation {op} needs two operands")
        b = self.coerce(b)
        if op == 'add':
            return a + b
        if op == 'sub':
            return a - b
        if op == 'mul':
            return a * b
        if op == 'div':
            return self.div(a, b)
        raise ValueError(f"unknown scalar operation {op!r}")

    # -- text ---------------------------------------------------------

    def parse(self, text: str):
        return parse_scalar(text, self)

    def laurent_terms(self, value) -> Optional[List[Tuple[int, object]]]:
        """(exponent, rational coefficient) pairs in descending exponent, or None if not Laurent."""
        if self.kind == 'cyclotomic':
            coeffs = value.rep.to_list()
            top = len(coeffs) - 1
            return [(top - idx, QQ.convert(c)) for idx, c in enumerate(coeffs) if c]
        numer, denom = value.numer, value.denom
        if len(denom.terms()) != 1:
            return None
        ((shift,), scale) = denom.terms()[0]
        terms = [(e - shift, QQ(int(c), int(scale))) for (e,), c in numer.terms()]
        return sorted(terms, key=lambda t: -t[0])

    def format(self, value) -> str:
        terms = self.laurent_terms(value)
        if terms is not None:
            return _format_terms(terms)
        numer, denom = value.numer, value.denom
        num_terms = [(e, QQ(int(c))) for (e,), c in numer.terms()]
        den_terms = [(e, QQ(int(c))) for (e,), c in denom.terms()]
        den_terms.sort(key=lambda t: -t[0])
        if den_terms[0][1] < 0:
            num_terms = [(e, -c) for e, c in num_terms]
            den_terms = [(e, -c) for e, c in den_terms]
        num_terms.sort(key=lambda t: -t[0])
        return f"({_format_terms(num_terms)})/({_format_terms(den_terms)})"

    def to_sympy(self, value):
        return self.domain.to_sympy(value)

    def from_sympy(self, expr):
        return self.domain.from_sympy(expr)

    # -- polynomial roots ----------------------------------------------

    def linear_roots(self, coeffs: List) -> List[Tuple[object, int]]:
        """
        Roots with multiplicity of sum(coeffs[k] * x**k), low degree first.

        Raises:
            IrreducibleFactorError: If a factor of degree > 1 stays irreducible over the field
        """
        if self.kind == 'qfield':
            return self._qfield_roots(coeffs)
        return self._cyclotomic_roots(coeffs)

    def _qfield_roots(self, coeffs):
        expr = sum(self.to_sympy(c) * _X ** k for k, c in enumerate(coeffs))
        numerator = together(expr).as_numer_denom()[0]
        _, factors = factor_list(numerator, _X, Q_SYMBOL)
        roots = []
        for factor, multiplicity in factors:
            poly = Poly(factor, _X)
            if poly.degree() == 0:
                continue
            if poly.degree() > 1:
                raise IrreducibleFactorError(
                    f"factor {factor} has no root in {self.mode}",
                    [str(c) for c in poly.all_coeffs()])
            lead, const = poly.all_coeffs()
            roots.append((self.from_sympy(-const / lead), multiplicity))
        return roots

    def _cyclotomic_roots(self, coeffs):
        number_field = self._algebraic_field()
        lifted = [self._to_number_field(c, number_field) for c in reversed(coeffs)]
        poly = Poly.from_list(lifted, _X, domain=number_field)
        _, factors = poly.factor_list()
        roots = []
        for factor, multiplicity in factors:
            if factor.degree() == 0:
                continue
            if factor.degree() > 1:
                raise IrreducibleFactorError(
                    f"factor {factor.as_expr()} has no root in {self.mode}",
                    [str(c) for c in factor.all_coeffs()])
            lead, const = factor.rep.to_list()
            root = number_field.quo(-const, lead)
            roots.append((self._from_number_field(root, number_field), multiplicity))
        return roots

    def _algebraic_field(self):
        if self.order <= 2:
            return QQ
        if self._number_field is None:
            field = QQ.algebraic_field(exp(2 * pi * I / self.order))
            expected = Poly(cyclotomic_poly(self.order, Q_SYMBOL), Q_SYMBOL, domain=QQ).all_coeffs()
            if [QQ.convert(c) for c in field.mod.to_list()] != [QQ.convert(c) for c in expected]:
                raise IrreducibleFactorError(f"number field for {self.mode} is not generated by a primitive root")
            self._number_field = field
        return self._number_field

    def _to_number_field(self, value, number_field):
        if number_field is QQ:
            terms = self.laurent_terms(value)
            return QQ.convert(terms[0][1]) if terms else QQ.zero
        return number_field.new([QQ.convert(c) for c in value.rep.to_list()])

    def _from_number_field(self, value, number_field):
        if number_field is QQ:
            return self.from_rational(int(value.numerator), int(value.denominator))
        coeffs = value.to_list()
        total = self.zero
        top = len(coeffs) - 1
        for idx, c in enumerate(coeffs):
            c = QQ.convert(c)
            total = total + self.from_rational(int(c.numerator), int(c.denominator)) * self.q ** (top - idx)
        return total


def _format_coeff(c) -> str:
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


def _format_terms(terms: List[Tuple[int, object]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(terms):
        negative = c < 0
        mag = -c if negative else c
        if e == 0:
            body = _format_coeff(mag)
        else:
            qpart = 'q' if e == 1 else f'q^{e}'
            body = qpart if mag == 1 else f"{_format_coeff(mag)}*{qpart}"
        if idx == 0:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return ''.join(pieces)


# -- expression parser ------------------------------------------------


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarSyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(('end', '', len(text)))
    return tokens


class ExpressionBuilder:
    """Semantic hooks for :func:`parse_expression`.

    The default builder evaluates scalar literals in one field; polynomial
    literal parsers override ``symbol`` and the noncommutative operations.
    """

    def __init__(self, field: Field):
        self.field = field

    def number(self, value: int):
        return self.field.from_int(value)

    def symbol(self, name: str, indices: Tuple[int, ...], pos: int, text: str):
        if name == 'q' and not indices:
            return self.field.q
        raise ScalarSyntaxError(f"unknown symbol {name!r}", text, pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos: int, text: str):
        if not b:
            raise DivisionByZero(f"division by zero at position {pos}: {text!r}")
        return self.field.div(a, b)

    def power(self, a, exponent: int, pos: int, text: str):
        if exponent < 0 and not a:
            raise DivisionByZero(f"negative power of zero at position {pos}: {text!r}")
        return self.field.power(a, exponent)


class _Parser:

    def __init__(self, text: str, builder: ExpressionBuilder):
        self.text = text
        self.builder = builder
        self.tokens = tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def take(self):
        token = self.tokens[self.idx]
        self.idx += 1
        return token

    def expect(self, op: str):
        kind, value, pos = self.take()
        if kind != 'op' or value != op:
            raise ScalarSyntaxError(f"expected {op!r}", self.text, pos)

    def at_op(self, *ops) -> bool:
        kind, value, _ = self.peek()
        return kind == 'op' and value in ops

    def parse(self):
        if self.peek()[0] == 'end':
            raise ScalarSyntaxError("empty literal", self.text, 0)
        value = self.expr()
        tag = None
        if self.at_op('@'):
            self.take()
            kind, name, pos = self.take()
            if kind != 'ident':
                raise ScalarSyntaxError("expected mode tag", self.text, pos)
            tag = name
            if self.at_op(':'):
                self.take()
                kind, num, pos = self.take()
                if kind != 'num':
                    raise ScalarSyntaxError("expected cyclotomic order", self.text, pos)
                tag = f"{name}:{num}"
        kind, _, pos = self.peek()
        if kind != 'end':
            raise ScalarSyntaxError("unexpected trailing input", self.text, pos)
        return value, tag

    def expr(self):
        value = self.term()
        while self.at_op('+', '-'):
            _, op, _ = self.take()
            rhs = self.term()
            value = self.builder.add(value, rhs) if op == '+' else self.builder.sub(value, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.at_op('*', '/'):
            _, op, pos = self.take()
            rhs = self.unary()
            value = self.builder.mul(value, rhs) if op == '*' else self.builder.div(value, rhs, pos, self.text)
        return value

    def unary(self):
        if self.at_op('-'):
            self.take()
            return self.builder.neg(self.unary())
        if self.at_op('+'):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        value = self.atom()
        if self.at_op('^'):
            _, _, pos = self.take()
            value = self.builder.power(value, self.signed_int(), pos, self.text)
        return value

    def signed_int(self) -> int:
        if self.at_op('('):
            self.take()
            value = self.signed_int()
            self.expect(')')
            return value
        sign = 1
        if self.at_op('-'):
            self.take()
            sign = -1
        kind, num, pos = self.take()
        if kind != 'num':
            raise ScalarSyntaxError("expected integer exponent", self.text, pos)
        return sign * int(num)

    def atom(self):
        kind, value, pos = self.take()
        if kind == 'num':
            return self.builder.number(int(value))
        if kind == 'ident':
            indices: Tuple[int, ...] = ()
            if self.at_op('['):
                self.take()
                found = [self.signed_int()]
                while self.at_op(','):
                    self.take()
                    found.append(self.signed_int())
                self.expect(']')
                indices = tuple(found)
            return self.builder.symbol(value, indices, pos, self.text)
        if kind == 'op' and value == '(':
            inner = self.expr()
            self.expect(')')
            return inner
        raise ScalarSyntaxError("unexpected token", self.text, pos)


def parse_expression(text: str, builder: ExpressionBuilder):
    """
    Parse an arithmetic literal with the given semantic builder.

    Returns:
        tuple: (value, mode tag or None)

    Raises:
        ScalarSyntaxError: On malformed input, with the character position
    """
    return _Parser(text, builder).parse()


def check_tag(tag: Optional[str], field: Field, text: str) -> None:
    if tag is None:
        return
    try:
        kind, order = parse_mode(tag)
    except ModeMismatch as e:
        raise ScalarSyntaxError(f"unknown mode tag {tag!r}", text, text.rfind('@')) from e
    if (kind, order) != (field.kind, field.order):
        raise ModeMismatch(f"literal {text!r} is tagged {tag} but the session field is {field.mode}")


def parse_scalar(text: str, field: Field):
    """
    Parse a scalar literal into the given field.

    Accepts the canonical grammar (Laurent terms in q with rational
    coefficients), parenthesized quotients, and an optional trailing
    '@qfield' / '@cyclotomic:n' tag that must agree with the field.

    Args:
        text: Literal such as 'q - q^-1' or '(q^2 + 1)/(q - 1)'
        field: Target field

    Returns:
        Canonical element of the field

    Raises:
        ScalarSyntaxError: Malformed literal
        ModeMismatch: Tag disagrees with the field
        DivisionByZero: Literal divides by zero
    """
    if not isinstance(text, str):
        raise ScalarSyntaxError(f"scalar literal must be a string, got {type(text).__name__}")
    value, tag = parse_expression(text, ExpressionBuilder(field))
    check_tag(tag, field, text)
    return value
