"""System files: parsing, validation, field paths and round trips."""

import json
from fractions import Fraction

import pytest

from ergavg.averages.multiple import multi_limit
from ergavg.exceptions import SystemFileError
from ergavg.systems.factories import skew_product_example
from ergavg.systems.groups import FiniteTable
from ergavg.systems.groups import FolnerSequence
from ergavg.systems.groups import FreeAbelian
from ergavg.systems.spaces import Observable
from ergavg.systems.systemfile import SystemFile
from ergavg.systems.systemfile import dump_system
from ergavg.systems.systemfile import load_system
from ergavg.systems.systemfile import parse_system
from ergavg.systems.systemfile import save_system

MINIMAL = {
    "space": {"weights": ["1/2", "1/2"]},
    "group": {"kind": "free_abelian", "rank": 1},
    "T": [[1, 0]],
    "S": [[1, 0]],
}


def document(**changes):
    data = json.loads(json.dumps(MINIMAL))
    data.update(changes)
    return json.dumps(data)


@pytest.mark.parametrize(
    "name, points, observables",
    [
        ["flip_z2.json", 2, {"chi", "one", "delta0", "dented"}],
        ["identity3.json", 3, {"f", "g", "one"}],
        ["skew_222.json", 8, {"corner", "fiber", "base"}],
    ],
)
def test_shipped_systems(systems_dir, name, points, observables):
    loaded = load_system(systems_dir / name).build()
    assert loaded.pair.space.n == points
    assert set(loaded.observables) == observables


def test_flip_file(systems_dir):
    sf = load_system(systems_dir / "flip_z2.json")
    assert sf.exact
    assert sf.weights == (Fraction(1, 2), Fraction(1, 2))
    assert sf.phi == FolnerSequence.initial(FreeAbelian(1))
    loaded = sf.build()
    assert list(loaded.observable("dented").values) == [1, Fraction(-1, 10)]
    limit = multi_limit(loaded.pair, *(loaded.observable("chi") for _ in range(3)))
    assert list(limit.values) == [1, -1]


def test_unknown_observable(systems_dir):
    loaded = load_system(systems_dir / "identity3.json").build()
    with pytest.raises(SystemFileError, match="unknown observable 'h'") as exinfo:
        loaded.observable("h")
    assert exinfo.value.field == "observables"


def test_defaults():
    sf = parse_system(document())
    assert not sf.exact
    assert sf.weights == (0.5, 0.5)
    assert sf.phi == sf.psi == FolnerSequence.symmetric(FreeAbelian(1))
    assert sf.observables == {}


def test_exact_override():
    assert parse_system(document(), exact=True).weights == (Fraction(1, 2), Fraction(1, 2))
    assert parse_system(document(exact=True), exact=False).weights == (0.5, 0.5)


def test_json_syntax_error_position():
    with pytest.raises(SystemFileError, match="line 2, column 12") as exinfo:
        parse_system('{\n  "space": }')
    assert (exinfo.value.line, exinfo.value.column) == (2, 12)


@pytest.mark.parametrize(
    "text, field",
    [
        [document(space={}), "space.weights"],
        [json.dumps({k: v for k, v in MINIMAL.items() if k != "T"}), "T"],
        [document(group={"kind": "lie"}), "group.kind"],
        [document(group={"rank": 1}), "group.kind"],
        [document(observables={"f": [1, "x"]}), "observables.f[1]"],
        [document(T=[[1, "a"]]), "T[0][1]"],
        [document(T=[[1.7, 0.2]]), "T[0][0]"],
        [document(S=[[1, True]]), "S[0][1]"],
        [document(group={"kind": "free_abelian", "rank": 1.5}), "group.rank"],
        [document(group={"kind": "finite_table", "table": [[0, 1], [1, 0.0]]}), "group.table[1][1]"],
        [document(observables=[1, -1]), "observables"],
        [document(folner=[]), "folner"],
        [document(folner={"phi": [1, 2]}), "folner.phi"],
        [document(folner={"psi": {"lower": [0], "upper": [[1, 1]]}}), "folner.psi"],
        [document(folner={"phi": {"lower": [[0.5, -1]], "upper": [[1, 1]]}}), "folner.phi"],
        [document(T="swap"), "T"],
        [document(format="other"), "format"],
        [document(folner={"phi": {"lower": [[0, 1]], "upper": [[1, 1]]}}), "folner.phi"],
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(SystemFileError) as exinfo:
        parse_system(text)
    assert exinfo.value.field == field
    assert f"field {field!r}" in str(exinfo.value)


@pytest.mark.parametrize(
    "changes, field",
    [
        [{"space": {"weights": ["1/2", "1/3"]}}, "space.weights"],
        [{"T": [[0, 0]]}, "T"],
        [{"S": [[1, 0], [0, 1]]}, "S"],
        [{"observables": {"f": [1, 2, 3]}}, "observables.f"],
    ],
)
def test_build_errors_name_the_field(changes, field):
    sf = parse_system(document(exact=True, **changes))
    with pytest.raises(SystemFileError) as exinfo:
        sf.build()
    assert exinfo.value.field == field


def test_noncommuting_actions():
    # two different transpositions of three points do not commute
    text = document(space={"weights": ["1/3"] * 3}, T=[[1, 0, 2]], S=[[0, 2, 1]])
    with pytest.raises(SystemFileError) as exinfo:
        parse_system(text).build()
    assert exinfo.value.field == "T/S"


def test_top_level_must_be_an_object():
    with pytest.raises(SystemFileError, match="top level"):
        parse_system("[1, 2]")


def test_finite_table_file():
    text = json.dumps(
        {
            "space": {"weights": [0.5, 0.5]},
            "group": {"kind": "finite_table", "table": [[0, 1], [1, 0]]},
            "T": [[0, 1], [1, 0]],
            "S": [[0, 1], [0, 1]],
            "observables": {"f": [2, 4]},
        }
    )
    sf = parse_system(text)
    assert sf.group == FiniteTable.cyclic(2)
    assert sf.phi == FolnerSequence(FiniteTable.cyclic(2))
    loaded = sf.build()
    f = loaded.observable("f")
    # S is trivial and T swaps, so the limit is f · E(f²)
    assert list(multi_limit(loaded.pair, f, f, f).values) == pytest.approx([20.0, 40.0])
    assert "folner" not in json.loads(dump_system(sf))


def test_dump_and_parse(tmp_path, systems_dir):
    for name in ("flip_z2.json", "identity3.json", "skew_222.json"):
        sf = load_system(systems_dir / name)
        assert parse_system(dump_system(sf)) == sf
        assert load_system(save_system(sf, tmp_path / name)) == sf


def test_from_pair():
    pair = skew_product_example(2, 2, 2, [1, 0], [0, 0], exact=True)
    corner = Observable.indicator(pair.space, [0])
    sf = SystemFile.from_pair(pair, observables={"corner": corner})
    assert sf.exact
    assert sf.phi == FolnerSequence.symmetric(FreeAbelian(1))
    loaded = parse_system(dump_system(sf)).build()
    assert [list(p) for p in loaded.pair.T.images] == [list(p) for p in pair.T.images]
    assert list(loaded.observable("corner").values) == list(corner.values)
