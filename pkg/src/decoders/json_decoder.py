"""Decoders for the JSON input files: R-matrices, algebras, braidings, Hopf tables, maps and (co)actions."""

import json
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.braided import BraidOp
from src.algebra.ncpoly import Alphabet, parse_ncpoly
from src.algebra.quotient import QuotientAlgebra, quotient_from_relations
from src.core.errors import BraidkitError, ModeMismatch, SchemaError
from src.core.scalar import Field
from src.hopf.findim import FinDimHopf, QT, Tensor, Vec, make_qt
from src.hopf.modules import ModuleAction, graded_module, module_braiding
from src.hopf.transmute import BraidedHopfTable, comodule_braiding
from src.quantum.rmatrix import FAMILIES, RMatrix, standard_r


def load_json(path: str) -> dict:
    """
    Read one JSON input file.

    Raises:
        SchemaError: The file is missing or is not a JSON object
    """
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from e
    if not isinstance(data, dict):
        raise SchemaError(f"{path} must hold a JSON object, got {type(data).__name__}")
    return data


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise SchemaError(f"{where}: missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: {key!r} must be {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def _check_mode(data: dict, field: Field, where: str) -> None:
    mode = data.get('coeff_mode')
    if mode is not None and str(mode).strip().lower() != field.mode:
        raise ModeMismatch(f"{where} is written for {mode}, the session field is {field.mode}")


def decode_scalar(value, field: Field, where: str):
    """A scalar literal (or a plain integer) in the session field."""
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a scalar literal, got a boolean")
    if isinstance(value, int):
        return field.from_int(value)
    if not isinstance(value, str):
        raise SchemaError(f"{where}: expected a scalar literal, got {type(value).__name__}")
    return field.parse(value)


def _index_key(key: str, size: int, n: int, where: str) -> Tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in key.split(','))
    except ValueError as e:
        raise SchemaError(f"{where}: bad index key {key!r}") from e
    if len(parts) != size or any(not 0 <= p < n for p in parts):
        raise SchemaError(f"{where}: index key {key!r} needs {size} indices in 0..{n - 1}")
    return parts


# -- R-matrices ---------------------------------------------------------------


def decode_rmatrix(data: dict, field: Field) -> RMatrix:
    """
    Decode an R-matrix file.

    Layout: {"n": 2, "coeff_mode": "qfield", "entries": {"i,j,k,l": "<scalar>"}},
    or {"family": "glq", "n": 2} for a standard matrix. Absent entries are zero.

    Raises:
        SchemaError: Malformed layout
        ModeMismatch: coeff_mode disagrees with the session
    """
    where = 'R-matrix'
    _check_mode(data, field, where)
    n = _require(data, 'n', int, where)
    if n < 1:
        raise SchemaError(f"{where}: n must be positive, got {n}")
    if 'family' in data:
        family = data['family']
        if family not in FAMILIES:
            raise SchemaError(f"{where}: unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
        return standard_r(family, n, field)
    raw = _require(data, 'entries', dict, where)
    values = {}
    for key, literal in raw.items():
        index = _index_key(key, 4, n, where)
        values[index] = decode_scalar(literal, field, f"{where} entry {key}")
    return RMatrix(n, field, values)


# -- presented algebras and braidings ----------------------------------------


def decode_algebra(data: dict, field: Field, degree_bound: Optional[int] = None,
                   max_rules: int = 2000) -> QuotientAlgebra:
    """
    Decode {"generators": [...], "relations": ["<poly>", ...], "degree_bound": D}.

    An explicit degree_bound argument overrides the file.
    """
    where = 'algebra'
    _check_mode(data, field, where)
    names = _require(data, 'generators', list, where)
    if not all(isinstance(name, str) for name in names):
        raise SchemaError(f"{where}: generator names must be strings")
    alphabet = Alphabet(names)
    relations = [parse_ncpoly(text, alphabet, field) for text in _require(data, 'relations', list, where)]
    bound = degree_bound if degree_bound is not None else data.get('degree_bound', 4)
    if not isinstance(bound, int) or bound < 1:
        raise SchemaError(f"{where}: degree_bound must be a positive integer, got {bound!r}")
    return quotient_from_relations(alphabet, field, relations, bound, max_rules)


def _letter_pair(text: str, first: Alphabet, second: Alphabet, where: str) -> Tuple[int, int]:
    parts = [p.strip() for p in text.split(',')] if text.count(',') == 1 else None
    if parts is None:
        # Indexed generator names contain commas themselves; split on the top-level one.
        depth = 0
        for pos, ch in enumerate(text):
            depth += ch == '['
            depth -= ch == ']'
            if ch == ',' and depth == 0:
                parts = [text[:pos].strip(), text[pos + 1:].strip()]
                break
    if parts is None:
        raise SchemaError(f"{where}: expected a 'a,b' generator pair, got {text!r}")
    a, b = first.index.get(parts[0]), second.index.get(parts[1])
    if a is None or b is None:
        raise SchemaError(f"{where}: unknown generator in {text!r}")
    return a, b


def decode_braiding(data: dict, field: Field, left: Alphabet, right: Alphabet, check: bool = True) -> BraidOp:
    """
    Decode {"table": {"c,b": [["<scalar>", "b',c'"], ...]}} keyed by generator names.

    Raises:
        SchemaError: Malformed layout
        InvalidBraiding: The table is singular or fails the braid relation
    """
    where = 'braiding'
    _check_mode(data, field, where)
    table: Dict[Tuple[int, int], Dict[Tuple[int, int], object]] = {}
    for key, terms in _require(data, 'table', dict, where).items():
        c, b = _letter_pair(key, left, right, where)
        if not isinstance(terms, list):
            raise SchemaError(f"{where}: image of {key!r} must be a list of [scalar, pair]")
        out = table.setdefault((c, b), {})
        for term in terms:
            if not isinstance(term, list) or len(term) != 2:
                raise SchemaError(f"{where}: bad term {term!r} in the image of {key!r}")
            b2, c2 = _letter_pair(term[1], right, left, where)
            value = decode_scalar(term[0], field, f"{where} {key}")
            out[(b2, c2)] = out.get((b2, c2), field.zero) + value
    return BraidOp(field, left, right, table, check=check)


# -- Hopf tables --------------------------------------------------------------


def _dense_vector(raw, field: Field, d: int, where: str) -> Vec:
    if not isinstance(raw, list) or len(raw) != d:
        raise SchemaError(f"{where}: expected a list of {d} scalars")
    out: Vec = {}
    for k, literal in enumerate(raw):
        value = decode_scalar(literal, field, where)
        if value:
            out[k] = value
    return out


def _dense_square(raw, field: Field, d: int, where: str) -> Dict[Tuple[int, int], object]:
    if not isinstance(raw, list) or len(raw) != d:
        raise SchemaError(f"{where}: expected a {d}x{d} array")
    out = {}
    for i, row in enumerate(raw):
        for j, value in _dense_vector(row, field, d, f"{where}[{i}]").items():
            out[(i, j)] = value
    return out


def decode_hopf(data: dict, field: Field) -> FinDimHopf:
    """
    Decode Hopf tables in the layout FinDimHopf.to_dict writes.

    Keys: labels, unit, product[i][j] (a vector), coproduct[i][j][k] (the
    e_j⊗e_k coefficient of Delta e_i), counit and an optional antipode[i].
    """
    where = 'Hopf tables'
    _check_mode(data, field, where)
    labels = _require(data, 'labels', list, where)
    if not labels or not all(isinstance(label, str) for label in labels):
        raise SchemaError(f"{where}: labels must be a non-empty list of strings")
    if len(set(labels)) != len(labels):
        raise SchemaError(f"{where}: duplicate basis labels")
    d = len(labels)
    unit = _dense_vector(_require(data, 'unit', list, where), field, d, f"{where} unit")

    product: Dict[Tuple[int, int], Vec] = {}
    rows = _require(data, 'product', list, where)
    if len(rows) != d:
        raise SchemaError(f"{where}: product needs {d} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise SchemaError(f"{where}: product row {labels[i]} needs {d} entries")
        for j, raw in enumerate(row):
            vec = _dense_vector(raw, field, d, f"{where} product[{labels[i]}][{labels[j]}]")
            if vec:
                product[(i, j)] = vec

    coproduct: Dict[int, Tensor] = {}
    blocks = _require(data, 'coproduct', list, where)
    if len(blocks) != d:
        raise SchemaError(f"{where}: coproduct needs {d} blocks")
    for i, block in enumerate(blocks):
        coproduct[i] = _dense_square(block, field, d, f"{where} coproduct[{labels[i]}]")

    counit = _dense_vector(_require(data, 'counit', list, where), field, d, f"{where} counit")
    antipode = None
    if data.get('antipode') is not None:
        rows = _require(data, 'antipode', list, where)
        if len(rows) != d:
            raise SchemaError(f"{where}: antipode needs {d} rows")
        antipode = {i: _dense_vector(row, field, d, f"{where} antipode[{labels[i]}]") for i, row in enumerate(rows)}
    return FinDimHopf(field=field, labels=list(labels), product=product, unit=unit, coproduct=coproduct,
                      counit=counit, antipode=antipode, name=str(data.get('name', '')))


def decode_qt(data: dict, H: FinDimHopf) -> Optional[QT]:
    """The optional "qt" key: a dim x dim array of R coefficients."""
    if data.get('qt') is None:
        return None
    return make_qt(H, _dense_square(data['qt'], H.field, H.dim, 'qt'))


def decode_functional(data: dict, A: FinDimHopf) -> Optional[Dict[Tuple[int, int], object]]:
    """The optional "functional" key: R(e_i⊗e_j) as a dim x dim array."""
    if data.get('functional') is None:
        return None
    return _dense_square(data['functional'], A.field, A.dim, 'functional')


# -- maps, actions and coactions ----------------------------------------------


def _label_index(labels: Sequence[str], label: str, where: str) -> int:
    try:
        return list(labels).index(label)
    except ValueError as e:
        raise SchemaError(f"{where}: unknown basis label {label!r}") from e


def _label_vector(raw, labels: Sequence[str], field: Field, where: str) -> Vec:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected an object {{label: scalar}}")
    out: Vec = {}
    for label, literal in raw.items():
        value = decode_scalar(literal, field, where)
        if value:
            k = _label_index(labels, label, where)
            out[k] = out.get(k, field.zero) + value
    return {k: v for k, v in out.items() if v}


def decode_map(data: dict, source: FinDimHopf, target: FinDimHopf) -> Dict[int, Vec]:
    """
    Decode a linear map {"images": {"<source label>": {"<target label>": "<scalar>"}}}.

    {"identity": true} stands for the identity between equal bases.
    Source labels that are absent map to zero.
    """
    where = 'map'
    field = source.field
    _check_mode(data, field, where)
    if data.get('identity'):
        if source.labels != target.labels:
            raise SchemaError(f"{where}: identity needs equal bases")
        return {i: {i: field.one} for i in range(source.dim)}
    images: Dict[int, Vec] = {}
    for label, raw in _require(data, 'images', dict, where).items():
        images[_label_index(source.labels, label, where)] = _label_vector(raw, target.labels, field,
                                                                          f"{where} image of {label}")
    return images


def decode_action(data: dict, H: FinDimHopf) -> ModuleAction:
    """
    Decode an H-module.

    Either {"labels": [...], "degrees": [...]} for a graded space over Z_n'
    (g^a acts by q^(a|v|)), or {"labels": [...], "action": {"<h>": {"<v>": {"<w>": "<scalar>"}}}}
    listing h▷v for every nonzero pair.
    """
    where = 'action'
    _check_mode(data, H.field, where)
    labels = _require(data, 'labels', list, where)
    if 'degrees' in data:
        degrees = _require(data, 'degrees', list, where)
        if len(degrees) != len(labels) or not all(isinstance(x, int) for x in degrees):
            raise SchemaError(f"{where}: degrees must be one integer per label")
        return graded_module(H, degrees, labels)
    action: Dict[Tuple[int, int], Vec] = {}
    for h_label, images in _require(data, 'action', dict, where).items():
        h = _label_index(H.labels, h_label, where)
        if not isinstance(images, dict):
            raise SchemaError(f"{where}: images of {h_label!r} must be an object")
        for v_label, raw in images.items():
            vec = _label_vector(raw, labels, H.field, f"{where} {h_label}▷{v_label}")
            if vec:
                action[(h, _label_index(labels, v_label, where))] = vec
    return ModuleAction(H, list(labels), action)


def decode_right_coaction(data: dict, A: FinDimHopf, labels: Sequence[str]) -> Dict[int, Tensor]:
    """
    Decode a right A-comodule on the given basis.

    Either {"degrees": [...]} for a kZ_n-graded space (b -> b ⊗ g^|b|), or
    {"coaction": {"<b>": [["<scalar>", "<b'>", "<a>"], ...]}}.
    """
    where = 'coaction'
    field = A.field
    _check_mode(data, field, where)
    if 'degrees' in data:
        degrees = _require(data, 'degrees', list, where)
        if len(degrees) != len(labels) or not all(isinstance(x, int) for x in degrees):
            raise SchemaError(f"{where}: degrees must be one integer per label")
        return {b: {(b, deg % A.dim): field.one} for b, deg in enumerate(degrees)}
    coaction: Dict[int, Tensor] = {b: {} for b in range(len(labels))}
    for label, terms in _require(data, 'coaction', dict, where).items():
        b = _label_index(labels, label, where)
        if not isinstance(terms, list):
            raise SchemaError(f"{where}: coaction of {label!r} must be a list")
        for term in terms:
            if not isinstance(term, list) or len(term) != 3:
                raise SchemaError(f"{where}: bad term {term!r} in the coaction of {label!r}")
            key = (_label_index(labels, term[1], where), _label_index(A.labels, term[2], where))
            value = decode_scalar(term[0], field, f"{where} of {label}")
            coaction[b][key] = coaction[b].get(key, field.zero) + value
    return {b: {k: v for k, v in t.items() if v} for b, t in coaction.items()}


def _as_braided(tables: FinDimHopf, **structure) -> BraidedHopfTable:
    return BraidedHopfTable(
        field=tables.field, labels=tables.labels, product=tables.product, unit=tables.unit,
        coproduct=tables.coproduct, counit=tables.counit, antipode=tables.antipode,
        name=tables.name, **structure,
    )


def braided_in_modules(tables: FinDimHopf, H: FinDimHopf, qt: QT, M: ModuleAction) -> BraidedHopfTable:
    """Tables of B together with the H-module braiding they live under."""
    if M.dim != tables.dim or M.labels != tables.labels:
        raise SchemaError("the action labels must match the basis of B")
    return _as_braided(tables, psi=module_braiding(H, qt, M, M), action=M, background=(H, qt))


def braided_in_comodules(tables: FinDimHopf, A: FinDimHopf, functional, coaction: Dict[int, Tensor]) -> BraidedHopfTable:
    """Tables of B together with the braiding of right A-comodules."""
    return _as_braided(tables, psi=comodule_braiding(A, functional, coaction, coaction), right_coaction=coaction)


def load_hopf(path: str, field: Field) -> Tuple[FinDimHopf, Optional[QT], dict]:
    """Read Hopf tables with their optional structure; also returns the raw payload."""
    data = load_json(path)
    try:
        H = decode_hopf(data, field)
    except BraidkitError:
        raise
    except (TypeError, ValueError, KeyError) as e:
        raise SchemaError(f"{path}: {e}") from e
    return H, decode_qt(data, H), data


def load_map(path: str, source: FinDimHopf, target: FinDimHopf) -> Dict[int, Vec]:
    try:
        return decode_map(load_json(path), source, target)
    except BraidkitError:
        raise
    except (TypeError, ValueError, KeyError) as e:
        raise SchemaError(f"{path}: {e}") from e


def load_rmatrix(path: str, field: Field) -> RMatrix:
    data = load_json(path)
    try:
        return decode_rmatrix(data, field)
    except BraidkitError:
        raise
    except (TypeError, ValueError, KeyError) as e:
        raise SchemaError(f"{path}: {e}") from e


def parse_int_list(text: str, where: str) -> List[int]:
    """'0,1,1' -> [0, 1, 1]."""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise SchemaError(f"{where}: expected comma-separated integers, got {text!r}") from e
