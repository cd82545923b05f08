import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covrad.codefile import code_to_dict, dump_code, load_code, parse_code
from covrad.errors import CodeFileError
from covrad.matchings import MatchingCode, PerfectMatching
from covrad.perms import Permutation, PermutationCode
from conftest import matchings, perms


def test_parse_permutation_example():
    code = parse_code('{"type":"permutation","n":4,"members":[[2,1,3,4],[1,2,3,4]]}')
    assert isinstance(code, PermutationCode)
    assert [str(g) for g in code] == ["1234", "2134"]


def test_parse_matching_any_orientation():
    code = parse_code('{"type":"matching","n":3,"members":[[[6,5],[2,1],[3,4]]]}')
    assert isinstance(code, MatchingCode)
    assert list(code) == [PerfectMatching.standard(3)]


def test_non_bijective_row_reports_line_and_index():
    text = '{"type": "permutation", "n": 3,\n "members": [\n  [1, 2, 3],\n  [1, 1, 3]\n ]}'
    with pytest.raises(CodeFileError, match=r"line 4, member 1, index 1: value 1 already used"):
        parse_code(text, "g.json")


def test_non_matching_row_reports_line_and_index():
    text = '{"type": "matching", "n": 2, "members": [\n [[1, 2], [3, 4]],\n [[1, 3], [3, 4]]]}'
    with pytest.raises(CodeFileError, match=r"line 3, member 1, index 1: vertex 3 already covered"):
        parse_code(text)


@pytest.mark.parametrize(
    "text, msg",
    [
        ("{", "invalid JSON"),
        ("[]", "top level"),
        ('{"type":"tree","n":2,"members":[[1,2]]}', "type"),
        ('{"type":"permutation","n":0,"members":[[1]]}', "positive"),
        ('{"type":"permutation","n":2,"members":[]}', "nonempty"),
        ('{"type":"permutation","n":2,"members":[[1,2,3]]}', "list of 2"),
        ('{"type":"permutation","n":2,"members":[[1,5]]}', "not in 1..2"),
        ('{"type":"permutation","n":2,"members":[[1,2],[1,2]]}', "duplicate"),
        ('{"type":"matching","n":2,"members":[[[1,2],[3]]]}', "not a pair"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(CodeFileError, match=msg):
        parse_code(text)


def test_missing_file(tmp_path):
    with pytest.raises(CodeFileError, match="cannot read"):
        load_code(tmp_path / "absent.json")


@given(st.lists(perms(n=5), min_size=1, max_size=6, unique=True))
def test_permutation_round_trip(members):
    code = PermutationCode(members)
    assert parse_code(json.dumps(code_to_dict(code))).members == code.members


@given(st.lists(matchings(4), min_size=1, max_size=6, unique=True))
def test_matching_round_trip(members):
    code = MatchingCode(members)
    assert parse_code(json.dumps(code_to_dict(code))).members == code.members


def test_dump_and_load(tmp_path):
    code = PermutationCode([Permutation.parse("312")])
    dump_code(code, tmp_path / "c.json")
    assert load_code(tmp_path / "c.json").members == code.members
