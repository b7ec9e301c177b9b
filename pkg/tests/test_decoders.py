import json

import pytest

from src.algebra.braided import trivial_braiding
from src.algebra.ncpoly import Alphabet
from src.core.errors import InvalidBraiding, ModeMismatch, SchemaError
from src.decoders.json_decoder import (
    decode_algebra, decode_braiding, decode_hopf, decode_map, decode_rmatrix, load_json, parse_int_list,
)
from src.hopf.findim import zn_prime
from src.storage.report_storage import hopf_payload

from conftest import sample


XY = Alphabet(['x', 'y'])


def test_decode_algebra(qfield):
    algebra = decode_algebra({'generators': ['x', 'y'], 'relations': ['y*x - q*x*y'], 'degree_bound': 4}, qfield)
    assert algebra.rule_text() == ['y*x -> q*x*y']
    assert len(algebra.normal_words(3)) == 4


def test_decode_algebra_rejects_bad_bound(qfield):
    with pytest.raises(SchemaError):
        decode_algebra({'generators': ['x'], 'relations': [], 'degree_bound': 0}, qfield)
    with pytest.raises(SchemaError):
        decode_algebra({'generators': ['x', 2], 'relations': []}, qfield)


def test_decode_braiding(qfield):
    table = {
        'x,x': [['q', 'x,x']],
        'x,y': [['q', 'y,x']],
        'y,x': [['q', 'x,y']],
        'y,y': [['q', 'y,y']],
    }
    psi = decode_braiding({'coeff_mode': 'qfield', 'table': table}, qfield, XY, XY)
    assert psi.table == trivial_braiding(qfield, XY, XY, coeff=qfield.q).table


def test_decode_braiding_indexed_names(qfield):
    alphabet = Alphabet(['t[0,0]', 't[0,1]'])
    table = {f"{a},{b}": [['1', f"{b},{a}"]] for a in alphabet.names for b in alphabet.names}
    psi = decode_braiding({'table': table}, qfield, alphabet, alphabet)
    assert psi.table[(0, 1)] == {(1, 0): qfield.one}


def test_singular_braiding_is_rejected(qfield):
    x = Alphabet(['x'])
    with pytest.raises(InvalidBraiding):
        decode_braiding({'table': {'x,x': [['0', 'x,x']]}}, qfield, x, x)


def test_decode_rmatrix_family(qfield, glq2):
    assert decode_rmatrix({'family': 'glq', 'n': 2}, qfield).entries == glq2.entries


@pytest.mark.parametrize('data', [
    {'n': 2, 'entries': {'0,0,0': 'q'}},
    {'n': 2, 'entries': {'0,0,0,2': 'q'}},
    {'n': 2, 'entries': {'a,b,c,d': 'q'}},
    {'n': 0, 'entries': {}},
    {'n': 2, 'entries': {'0,0,0,0': True}},
    {'family': 'so5', 'n': 2},
    {'entries': {}},
])
def test_decode_rmatrix_schema_errors(qfield, data):
    with pytest.raises(SchemaError):
        decode_rmatrix(data, qfield)


def test_mode_tag_on_file_must_match(cyc3):
    with pytest.raises(ModeMismatch):
        decode_rmatrix({'coeff_mode': 'qfield', 'n': 1, 'entries': {'0,0,0,0': 'q'}}, cyc3)


def test_hopf_payload_decodes_back(cyc3):
    H, qt = zn_prime(cyc3, 3)
    data = json.loads(json.dumps(hopf_payload(H, qt)))
    decoded = decode_hopf(data, cyc3)
    assert decoded.to_dict() == H.to_dict()


def test_decode_map(cyc2):
    H, _ = zn_prime(cyc2, 2)
    swap = decode_map({'images': {'1': {'1': '1'}, 'g': {'g': '-1'}}}, H, H)
    assert swap == {0: {0: cyc2.one}, 1: {1: -cyc2.one}}
    assert decode_map({'identity': True}, H, H) == {0: {0: cyc2.one}, 1: {1: cyc2.one}}
    with pytest.raises(SchemaError):
        decode_map({'images': {'h': {'1': '1'}}}, H, H)


def test_load_json_errors(tmp_path):
    with pytest.raises(SchemaError):
        load_json(str(tmp_path / 'absent.json'))
    broken = tmp_path / 'broken.json'
    broken.write_text('{"n": ', encoding='utf-8')
    with pytest.raises(SchemaError):
        load_json(str(broken))
    listing = tmp_path / 'list.json'
    listing.write_text('[1, 2]', encoding='utf-8')
    with pytest.raises(SchemaError):
        load_json(str(listing))


def test_samples_load():
    assert load_json(sample('glq2.json'))['n'] == 2


def test_parse_int_list():
    assert parse_int_list('0,1,1', '--degrees') == [0, 1, 1]
    with pytest.raises(SchemaError):
        parse_int_list('0,x', '--degrees')
