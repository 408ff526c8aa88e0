"""Recipe trees over catalog blocks, and the JSON recipe document format.

A document looks like::

    {
      "blocks": [{"name": "X", "block": "ChainG2"},
                 {"name": "M", "block": "M", "params": {"n": 1, "s": 1}}],
      "steps": [{"name": "S", "op": "fiber_sum", "operands": ["M", "X"], "genus": 1},
                {"name": "Z", "op": "z2_construct", "operands": ["S"], "genus": 2,
                 "flags": ["complement_simply_connected", "complement_spin"]}],
      "expect": {"a": 7, "b": 16}
    }

A block may instead be ``"block": "custom"`` with explicit ``e``, ``sigma``
and optional ``pi1``/``spin``/``symplectic``. The last step is the result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Union

from . import calculus as calc
from .spinforms import Spin

OPS = {
    "fiber_sum": 2,
    "z2_construct": 1,
    "z2_double": 1,
    "double": 1,
    "z2_quotient": 1,
    "quotient": 1,
    "torus_surgery": 1,
}
NEEDS_GENUS = {"fiber_sum", "z2_construct", "z2_double", "double"}
EXPECT_KEYS = ("e", "sigma", "a", "b", "w2_type", "spin")


class RecipeError(ValueError):
    """Malformed recipe document."""


@dataclass(frozen=True)
class Block:
    block: str
    params: tuple[tuple[str, int], ...] = ()
    custom: tuple[tuple[str, Any], ...] = ()
    label: str | None = None

    @classmethod
    def of(cls, block: str, label: str | None = None, **params: int) -> Block:
        return cls(block, tuple(sorted(params.items())), label=label)


@dataclass(frozen=True)
class Operation:
    op: str
    operands: tuple[Node, ...]
    genus: int | None = None
    flags: frozenset[str] = field(default_factory=frozenset)
    label: str | None = None

    def __post_init__(self):
        if self.op not in OPS:
            raise RecipeError(f"unknown operation {self.op!r}; known: {', '.join(OPS)}")
        if len(self.operands) != OPS[self.op]:
            raise RecipeError(f"{self.op} takes {OPS[self.op]} operand(s), got {len(self.operands)}")
        if self.op in NEEDS_GENUS and self.genus is None:
            raise RecipeError(f"{self.op} needs a genus")
        object.__setattr__(self, "flags", calc.check_flags(self.flags))


Node = Union[Block, Operation]


def op(name: str, *operands: Node, genus: int | None = None, flags=(), label: str | None = None) -> Operation:
    return Operation(name, tuple(operands), genus, frozenset(flags), label)


def _block_descriptor(b: Block) -> calc.ManifoldDescriptor:
    if b.block == "custom":
        c = dict(b.custom)
        try:
            return calc.ManifoldDescriptor(
                b.label or c.get("name", "custom"),
                int(c["e"]),
                int(c["sigma"]),
                b1=int(c.get("b1", 0)),
                pi1=calc.Pi1(c.get("pi1", "unknown")),
                spin=Spin(c.get("spin", "unknown")),
                symplectic=bool(c.get("symplectic", False)),
                notes=("custom block",),
            )
        except KeyError as exc:
            raise RecipeError(f"custom block needs {exc.args[0]!r}") from None
    try:
        d = calc.catalog_block(b.block, **dict(b.params))
    except KeyError as exc:
        raise RecipeError(exc.args[0]) from None
    return d if b.label is None else replace(d, name=b.label)


def evaluate(node: Node) -> calc.ManifoldDescriptor:
    """Fold the tree bottom-up through the calculus operations."""
    if isinstance(node, Block):
        return _block_descriptor(node)
    args = [evaluate(x) for x in node.operands]
    kw = {"flags": node.flags, "name": node.label}
    if node.op == "fiber_sum":
        return calc.fiber_sum(args[0], args[1], node.genus, **kw)
    if node.op == "z2_construct":
        return calc.z2_construct(args[0], node.genus, **kw)
    if node.op in ("z2_double", "double"):
        return calc.z2_double(args[0], node.genus, **kw)
    if node.op in ("z2_quotient", "quotient"):
        return calc.z2_quotient(args[0], node.genus, **kw)
    return calc.torus_surgery(args[0], **kw)


# documents -----------------------------------------------------------------


@dataclass(frozen=True)
class RecipeDocument:
    root: Node
    expect: Mapping[str, Any]
    source: str = ""

    @classmethod
    def from_json(cls, text: str, source: str = "") -> RecipeDocument:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RecipeError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data, source)

    @classmethod
    def load(cls, path: str | Path) -> RecipeDocument:
        path = Path(path)
        return cls.from_json(path.read_text(encoding="utf-8"), str(path))

    @classmethod
    def from_dict(cls, data: Any, source: str = "") -> RecipeDocument:
        if not isinstance(data, dict):
            raise RecipeError("top level must be an object")
        unknown = set(data) - {"blocks", "steps", "expect", "description"}
        if unknown:
            raise RecipeError(f"unknown top-level keys: {sorted(unknown)}")
        env: dict[str, Node] = {}
        last = None
        for entry in _list(data, "blocks"):
            name = _name(entry, env)
            kind = entry.get("block")
            if not isinstance(kind, str):
                raise RecipeError(f"block {name!r} needs a string 'block' field")
            if kind == "custom":
                custom = {k: v for k, v in entry.items() if k not in ("name", "block")}
                env[name] = Block("custom", custom=tuple(sorted(custom.items())), label=name)
            else:
                params = entry.get("params", {})
                if not isinstance(params, dict):
                    raise RecipeError(f"block {name!r}: params must be an object")
                env[name] = Block(kind, tuple(sorted(params.items())))
            last = env[name]
        for entry in _list(data, "steps"):
            name = _name(entry, env)
            operands = entry.get("operands", [])
            if not isinstance(operands, list):
                raise RecipeError(f"step {name!r}: operands must be a list")
            missing = [o for o in operands if o not in env]
            if missing:
                raise RecipeError(f"step {name!r} uses undefined name(s) {missing}")
            flags = entry.get("flags", [])
            if not isinstance(flags, list):
                raise RecipeError(f"step {name!r}: flags must be a list")
            try:
                env[name] = op(entry.get("op", ""), *(env[o] for o in operands), genus=entry.get("genus"), flags=flags, label=name)
            except ValueError as exc:
                raise RecipeError(f"step {name!r}: {exc}") from None
            last = env[name]
        if last is None:
            raise RecipeError("recipe defines nothing")
        expect = data.get("expect", {})
        if not isinstance(expect, dict) or set(expect) - set(EXPECT_KEYS):
            raise RecipeError(f"expect must be an object with keys among {EXPECT_KEYS}")
        return cls(last, expect, source)


def _list(data, key):
    value = data.get(key, [])
    if not isinstance(value, list) or not all(isinstance(x, dict) for x in value):
        raise RecipeError(f"{key!r} must be a list of objects")
    return value


def _name(entry, env):
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        raise RecipeError("every block and step needs a non-empty name")
    if name in env:
        raise RecipeError(f"name {name!r} defined twice")
    return name


@dataclass(frozen=True)
class RecipeCheck:
    descriptor: calc.ManifoldDescriptor
    form: calc.EvenForm | None
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_document(doc: RecipeDocument) -> RecipeCheck:
    """Evaluate and compare against ``expect``. Raises on gate violations."""
    d = evaluate(doc.root)
    try:
        form = d.form()
    except ValueError:
        form = None
    actual: dict[str, Any] = {"e": d.e, "sigma": d.sigma, "spin": str(d.spin)}
    if form is not None:
        actual.update(a=form.a, b=form.b)
    if d.w2_type is not None:
        actual["w2_type"] = str(d.w2_type)
    bad = []
    for key, want in doc.expect.items():
        got = actual.get(key)
        if got is None or str(got) != str(want):
            bad.append(f"{key}: expected {want}, got {got if got is not None else 'undefined'}")
    return RecipeCheck(d, form, tuple(bad))
