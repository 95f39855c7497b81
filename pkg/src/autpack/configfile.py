"""Reading admissible configurations from YAML documents.

Example::

    e1: -6
    e2: -2
    d: 3
    galois: true
    components:
      - {d1: 1, d2: 3, strata: [{r: 3, n: 1}]}

Only exact integers are accepted for numeric fields. Every error carries
the 1-based line of the offending node.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO

import yaml

from .errors import InconsistentDegrees, ParseError
from .slope import AdmissibleConfiguration, BranchComponent, Stratum

__all__ = ["parse_configuration", "load_configuration", "dump_configuration"]

_INT = "tag:yaml.org,2002:int"
_BOOL = "tag:yaml.org,2002:bool"


def _line(node: yaml.Node) -> int:
    return node.start_mark.line + 1


def _mapping(node: yaml.Node, what: str, required: set[str], optional: set[str] = frozenset()):
    if not isinstance(node, yaml.MappingNode):
        raise ParseError(f"{what} must be a mapping", _line(node))
    out = {}
    for key, value in node.value:
        k = key.value
        if k not in required | optional:
            raise ParseError(f"unknown field {k!r} in {what}", _line(key))
        if k in out:
            raise ParseError(f"duplicate field {k!r} in {what}", _line(key))
        out[k] = value
    missing = required - out.keys()
    if missing:
        raise ParseError(f"{what} is missing {sorted(missing)}", _line(node))
    return out


def _int(node: yaml.Node, name: str) -> int:
    if not (isinstance(node, yaml.ScalarNode) and node.tag == _INT):
        raise ParseError(f"{name} must be an integer, got {node.value!r}", _line(node))
    return yaml.constructor.SafeConstructor().construct_yaml_int(node)


def _bool(node: yaml.Node, name: str) -> bool:
    if not (isinstance(node, yaml.ScalarNode) and node.tag == _BOOL):
        raise ParseError(f"{name} must be true or false", _line(node))
    return node.value.lower() in ("true", "yes", "on")


def _sequence(node: yaml.Node, name: str) -> list[yaml.Node]:
    if not isinstance(node, yaml.SequenceNode):
        raise ParseError(f"{name} must be a list", _line(node))
    return node.value


def parse_configuration(text: str | IO[str]) -> AdmissibleConfiguration:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(f"invalid YAML: {exc.problem}", mark.line + 1 if mark else None) from exc
    if root is None:
        raise ParseError("empty configuration", 1)
    top = _mapping(root, "configuration", {"e1", "e2", "d", "components"}, {"galois"})
    comps = []
    comp_nodes = _sequence(top["components"], "components")
    for i, cnode in enumerate(comp_nodes):
        c = _mapping(cnode, f"component {i}", {"d1", "d2", "strata"})
        strata = []
        for snode in _sequence(c["strata"], f"component {i} strata"):
            s = _mapping(snode, f"stratum of component {i}", {"r", "n"})
            try:
                strata.append(Stratum(_int(s["r"], "r"), _int(s["n"], "n")))
            except ValueError as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ParseError(str(exc), _line(snode)) from None
        try:
            comps.append(BranchComponent(_int(c["d1"], "d1"), _int(c["d2"], "d2"), tuple(strata)))
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), _line(cnode)) from None
    galois = _bool(top["galois"], "galois") if "galois" in top else False
    d = _int(top["d"], "d")
    for i, (comp, cnode) in enumerate(zip(comps, comp_nodes)):
        if comp.covering_degree != d:
            raise ParseError(
                f"component {i}: sum n*r = {comp.covering_degree} differs from d = {d}", _line(cnode)
            )
    try:
        return AdmissibleConfiguration(
            _int(top["e1"], "e1"), _int(top["e2"], "e2"), d, tuple(comps), galois
        )
    except InconsistentDegrees:
        raise
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), _line(root)) from None


def load_configuration(path: str | Path) -> AdmissibleConfiguration:
    with open(path, encoding="utf-8") as fh:
        return parse_configuration(fh)


def dump_configuration(config: AdmissibleConfiguration) -> str:
    lines = [f"e1: {config.e1}", f"e2: {config.e2}", f"d: {config.d}",
             f"galois: {'true' if config.galois else 'false'}"]
    if not config.components:
        lines.append("components: []")
    else:
        lines.append("components:")
        for c in config.components:
            strata = ", ".join(f"{{r: {s.r}, n: {s.n}}}" for s in c.strata)
            lines.append(f"  - {{d1: {c.d1}, d2: {c.d2}, strata: [{strata}]}}")
    return "\n".join(lines) + "\n"
