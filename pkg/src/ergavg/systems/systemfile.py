"""
System files
============

A system file is one self-describing JSON document holding everything
needed to build a commuting pair, since the validation spans all objects
jointly::

    {
      "format": "ergavg-system",
      "version": 1,
      "exact": false,
      "space": {"weights": ["1/2", "1/2"]},
      "group": {"kind": "free_abelian", "rank": 1},
      "T": [[1, 0]],
      "S": [[1, 0]],
      "folner": {"phi": {"lower": [[0, -1]], "upper": [[1, 1]]}},
      "observables": {"chi": [1, -1]}
    }

``T`` and ``S`` list generator images (``ℤ^d``) or one image per element
(``"kind": "finite_table"`` with a ``"table"``).  Weights and observable
entries are numbers or strings (``"0.25"``, ``"1/4"``, ``"1+2j"``).
Missing Følner schedules default to symmetric boxes.

.. autosummary::

    ~SystemFile
    ~LoadedSystem
    ~parse_system
    ~dump_system
    ~load_system
    ~save_system
"""

import json
import logging
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path

from ..exceptions import SystemFileError
from ..utils.scalars import format_scalar
from ..utils.scalars import parse_scalar
from .actions import CommutingPair
from .actions import action_from_generators
from .groups import FiniteTable
from .groups import FolnerSequence
from .groups import FreeAbelian
from .spaces import FiniteSpace
from .spaces import Observable

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

FORMAT_NAME = "ergavg-system"
FORMAT_VERSION = 1


@dataclass
class LoadedSystem:
    """Validated objects built from a :class:`SystemFile`."""

    pair: CommutingPair
    phi: FolnerSequence
    psi: FolnerSequence
    observables: dict

    def observable(self, name):
        """Named observable, or ``SystemFileError`` naming the unknown one."""
        if name not in self.observables:
            raise SystemFileError(f"unknown observable {name!r}", field="observables")
        return self.observables[name]


@dataclass
class SystemFile:
    """Field-for-field content of a system file (plain values only)."""

    weights: tuple
    group: object
    T: tuple
    S: tuple
    phi: FolnerSequence
    psi: FolnerSequence
    exact: bool = False
    observables: dict = field(default_factory=dict)

    @classmethod
    def from_pair(cls, pair, *, phi=None, psi=None, observables=None):
        """Describe an existing pair (and optional observables)."""
        group = pair.group
        return cls(
            weights=tuple(pair.space.weights.tolist()),
            group=group,
            T=tuple(tuple(p.tolist()) for p in pair.T.images),
            S=tuple(tuple(p.tolist()) for p in pair.S.images),
            phi=phi or FolnerSequence.symmetric(group),
            psi=psi or FolnerSequence.symmetric(group),
            exact=pair.space.exact,
            observables={
                name: tuple(f.values.tolist()) for name, f in (observables or {}).items()
            },
        )

    def build(self):
        """Construct and validate the space, actions and observables."""
        try:
            space = FiniteSpace(self.weights, exact=self.exact)
        except ValueError as exinfo:
            raise SystemFileError(str(exinfo), field="space.weights") from exinfo
        actions = {}
        for name, images in (("T", self.T), ("S", self.S)):
            try:
                actions[name] = action_from_generators(self.group, space, images)
            except ValueError as exinfo:
                raise SystemFileError(str(exinfo), field=name) from exinfo
        try:
            pair = CommutingPair(actions["T"], actions["S"])
        except ValueError as exinfo:
            raise SystemFileError(str(exinfo), field="T/S") from exinfo
        observables = {}
        for name, values in self.observables.items():
            try:
                observables[name] = Observable(space, values)
            except ValueError as exinfo:
                raise SystemFileError(str(exinfo), field=f"observables.{name}") from exinfo
        logger.debug("built %r with observables %s", pair, sorted(observables))
        return LoadedSystem(pair, self.phi, self.psi, observables)


def _get(obj, key, path, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SystemFileError("required field is missing", field=f"{path}{key}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SystemFileError(
            f"expected {kind.__name__}, got {type(value).__name__}", field=f"{path}{key}"
        )
    return value


def _section(data, key):
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise SystemFileError(f"expected dict, got {type(value).__name__}", field=key)
    return value


def _scalars(values, path, exact):
    if not isinstance(values, list):
        raise SystemFileError("expected a list of numbers", field=path)
    out = []
    for i, v in enumerate(values):
        try:
            out.append(parse_scalar(v, exact=exact))
        except (ValueError, ZeroDivisionError) as exinfo:
            raise SystemFileError(str(exinfo), field=f"{path}[{i}]") from exinfo
    return tuple(out)


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SystemFileError(f"expected an integer, got {value!r}", field=path)
    return value


def _images(values, path, what="permutations"):
    if not isinstance(values, list) or not all(isinstance(p, list) for p in values):
        raise SystemFileError(f"expected a list of {what}", field=path)
    return tuple(
        tuple(_integer(v, f"{path}[{i}][{j}]") for j, v in enumerate(p)) for i, p in enumerate(values)
    )


def _group(data):
    kind = _get(data, "kind", "group.", str)
    try:
        if kind == FreeAbelian.kind:
            return FreeAbelian(_integer(data.get("rank", 1), "group.rank"))
        if kind == FiniteTable.kind:
            return FiniteTable.from_table(_images(_get(data, "table", "group."), "group.table", "rows"))
    except SystemFileError:
        raise
    except (TypeError, ValueError) as exinfo:
        raise SystemFileError(str(exinfo), field="group") from exinfo
    raise SystemFileError(f"unknown group kind {kind!r}", field="group.kind")


def _folner(group, data, name):
    entry = data.get(name)
    if entry is None:
        return FolnerSequence.symmetric(group)
    if not isinstance(entry, dict):
        raise SystemFileError(f"expected dict, got {type(entry).__name__}", field=f"folner.{name}")
    try:
        return FolnerSequence.from_dict(group, entry)
    except (TypeError, ValueError) as exinfo:
        raise SystemFileError(str(exinfo), field=f"folner.{name}") from exinfo


def parse_system(text, *, exact=None):
    """
    Parse a system file.

    ``exact`` overrides the file's own ``"exact"`` flag when given.
    Errors carry the field path, and for JSON syntax errors the line and
    column.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exinfo:
        raise SystemFileError(exinfo.msg, line=exinfo.lineno, column=exinfo.colno) from exinfo
    if not isinstance(data, dict):
        raise SystemFileError("top level must be an object")
    if data.get("format", FORMAT_NAME) != FORMAT_NAME:
        raise SystemFileError(f"not an {FORMAT_NAME} file", field="format")
    if exact is None:
        exact = bool(data.get("exact", False))
    space = _get(data, "space", "", dict)
    group = _group(_get(data, "group", "", dict))
    folner = _section(data, "folner")
    observables = {
        str(name): _scalars(values, f"observables.{name}", exact)
        for name, values in _section(data, "observables").items()
    }
    return SystemFile(
        weights=_scalars(_get(space, "weights", "space."), "space.weights", exact),
        group=group,
        T=_images(_get(data, "T", ""), "T"),
        S=_images(_get(data, "S", ""), "S"),
        phi=_folner(group, folner, "phi"),
        psi=_folner(group, folner, "psi"),
        exact=exact,
        observables=observables,
    )


def dump_system(sf):
    """Serialize a :class:`SystemFile` as indented JSON."""
    data = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "exact": sf.exact,
        "space": {"weights": [format_scalar(w) for w in sf.weights]},
        "group": sf.group.to_dict(),
        "T": [list(p) for p in sf.T],
        "S": [list(p) for p in sf.S],
    }
    if isinstance(sf.group, FreeAbelian):
        data["folner"] = {"phi": sf.phi.to_dict(), "psi": sf.psi.to_dict()}
    if sf.observables:
        data["observables"] = {
            name: [format_scalar(v) for v in values] for name, values in sf.observables.items()
        }
    return json.dumps(data, indent=2) + "\n"


def load_system(path, *, exact=None):
    """Read and parse a system file."""
    path = Path(path)
    logger.debug("reading system file %s", path)
    return parse_system(path.read_text(), exact=exact)


def save_system(sf, path):
    """Write a system file."""
    path = Path(path)
    path.write_text(dump_system(sf))
    logger.info("wrote system file %s", path)
    return path
