"""Check results and their exact, JSON-friendly rendering."""

import json
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction

import numpy as np


def exact_str(x):
    """Integers as decimals, rationals as ``p/q``; never a float."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def jsonable(obj):
    from .family import SetFamily, dumps_family

    if isinstance(obj, SetFamily):
        return dumps_family(obj)
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer, Fraction)):
        return exact_str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return str(obj)


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


@dataclass
class Check:
    """One asserted statement: ``lhs relation rhs`` plus whether it held.

    ``applicable=False`` marks a statement whose hypotheses were not met; it
    is reported but never counts as a failure.
    """

    name: str
    holds: bool
    lhs: object = None
    rhs: object = None
    relation: str = ">="
    applicable: bool = True
    note: str = ""
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.holds)

    @property
    def tight(self):
        return self.lhs is not None and self.lhs == self.rhs

    @property
    def status(self):
        if not self.applicable:
            return "skipped"
        return "pass" if self.holds else "fail"

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.lhs is not None:
            d.update(lhs=jsonable(self.lhs), rhs=jsonable(self.rhs),
                     relation=self.relation, tight=self.tight)
        if self.note:
            d["note"] = self.note
        if self.data:
            d["data"] = jsonable(self.data)
        return d


def compare(name, lhs, rhs, relation=">=", **kw):
    ops = {">=": lhs >= rhs, "<=": lhs <= rhs, "==": lhs == rhs, ">": lhs > rhs, "<": lhs < rhs}
    return Check(name, bool(ops[relation]), lhs, rhs, relation, **kw)


def skipped(name, note):
    return Check(name, True, applicable=False, note=note)


class Report(list):
    """A named list of :class:`Check` results."""

    def __init__(self, name, checks=()):
        super().__init__(checks)
        self.name = name

    @property
    def ok(self):
        return all(c.holds for c in self if c.applicable)

    def failures(self):
        return [c for c in self if c.applicable and not c.holds]

    def __getitem__(self, key):
        if isinstance(key, str):
            for c in self:
                if c.name == key:
                    return c
            raise KeyError(key)
        return super().__getitem__(key)

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "checks": [c.to_dict() for c in self]}

    def __repr__(self):
        lines = [f"Report({self.name!r}, ok={self.ok})"]
        lines += [f"  [{c.status}] {c.name}" for c in self]
        return "\n".join(lines)
