"""Certificates that replay the induction proof of ``f(A) <= 2F(|A|)`` on a concrete family.

The tracer splits a family along one coordinate into ``C`` and ``D`` (the
two sections, ordered so that ``|C| <= |D|``) and recurses until dimension 1.
Each node records the bound it claims and the slack of every inequality used
to derive it; the slacks add up exactly:

* CASE1 (both sections at most ``2**(n-2)``)::

      bound - f(A) = slack(C) + slack(D) + 2 * lemma3 + lemma6

* CASE2 (``2**(n-2) < |D| <= 2**(n-2) + |C|``; ``D`` takes the large-size
  bound one dimension down)::

      bound - f(A) = slack(C) + slack(D) + 2 * lemma4 + lemma6

* COMPLEMENT (``|A| > 2**(n-1)``): the node's slack equals that of ``A^c``
  under the plain bound.

:func:`verify_certificate` rebuilds every quantity from the family itself and
never trusts a recorded number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .binary_order import default_table, popcount_prefix
from .cube import (
    Family,
    _full_mask,
    _low_mask,
    complement_family,
    family_counts,
    internal_edges,
    potential_f,
    sections,
)
from .errors import InputError, InvariantBreach

BASE = "BASE"
CASE1 = "CASE1"
CASE2 = "CASE2"
COMPLEMENT = "COMPLEMENT"

PLAIN = "plain"
LARGE = "large"


@dataclass
class Slack:
    name: str
    value: int
    operands: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "operands": dict(sorted(self.operands.items())), "value": self.value}


@dataclass
class Node:
    case: str
    n: int
    size: int
    f: int
    form: str
    bound: int
    coord: int | None = None
    swapped: bool = False
    slacks: list[Slack] = field(default_factory=list)
    children: list[Node] = field(default_factory=list)

    def slack(self, name: str) -> Slack:
        for s in self.slacks:
            if s.name == name:
                return s
        raise KeyError(name)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "case": self.case,
            "children": [c.to_dict() for c in self.children],
            "coord": self.coord,
            "f": self.f,
            "form": self.form,
            "n": self.n,
            "size": self.size,
            "slacks": [s.to_dict() for s in self.slacks],
            "swapped": self.swapped,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> Node:
        return cls(
            case=raw["case"],
            n=raw["n"],
            size=raw["size"],
            f=raw["f"],
            form=raw["form"],
            bound=raw["bound"],
            coord=raw["coord"],
            swapped=raw["swapped"],
            slacks=[Slack(s["name"], s["value"], dict(s["operands"])) for s in raw["slacks"]],
            children=[cls.from_dict(c) for c in raw["children"]],
        )


@dataclass
class Certificate:
    family: str
    root: Node

    def to_text(self) -> str:
        body = {"family": self.family, "root": self.root.to_dict()}
        return json.dumps(body, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Certificate:
        try:
            raw = json.loads(text)
            return cls(raw["family"], Node.from_dict(raw["root"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed certificate: {exc}") from exc


# -- tracer ------------------------------------------------------------------------


def _bound(n: int, size: int, F) -> tuple[str, int]:
    if size > 1 << (n - 1):
        return LARGE, 2 * F(size) + 2 * size - (1 << n)
    return PLAIN, 2 * F(size)


def _upper_size(A: Family, d: int) -> int:
    return (A.bits & (_full_mask(A.n) ^ _low_mask(A.n, d))).bit_count()


def _choose_coordinate(A: Family) -> tuple[str, int]:
    """Smallest coordinate for CASE1, or failing that the smallest balanced one for CASE2."""
    n, size = A.n, A.size
    quarter = 1 << (n - 2)
    ups = [_upper_size(A, d) for d in range(n)]
    for d, up in enumerate(ups):
        if max(up, size - up) <= quarter:
            return CASE1, d + 1
    for d, up in enumerate(ups):
        if abs(2 * up - size) <= quarter:
            return CASE2, d + 1
    raise InvariantBreach(f"no coordinate qualifies for either case: {A.serialize()}")


def _trace(A: Family, F) -> Node:
    n, size = A.n, A.size
    f = potential_f(A)
    form, bound = _bound(n, size, F)
    if form == LARGE:
        child = _trace(complement_family(A), F)
        node = Node(COMPLEMENT, n, size, f, form, bound, children=[child])
    elif n == 1:
        node = Node(BASE, n, size, f, form, bound)
    else:
        case, i = _choose_coordinate(A)
        upper, lower = sections(A, i)
        swapped = upper.size > lower.size
        C, D = (lower, upper) if swapped else (upper, lower)
        node = Node(case, n, size, f, form, bound, coord=i, swapped=swapped)
        node.slacks = _step_slacks(case, n, C, D, F)
        node.children = [_trace(C, F), _trace(D, F)]
    node.slacks.append(Slack("bound", bound - f))
    return node


def _step_slacks(case: str, n: int, C: Family, D: Family, F) -> list[Slack]:
    c, d = C.size, D.size
    quarter = 1 << (n - 2)
    counts = family_counts(C, D)
    overlaps = {
        "c": c, "d": d,
        "cd": counts["and"], "cdbar": counts["a_and_bbar"],
        "cc": counts["a_and_abar"], "dd": counts["b_and_bbar"],
    }
    lemma6 = overlaps["cc"] + overlaps["dd"] + 2 * min(c, d) - 2 * overlaps["cd"] - 2 * overlaps["cdbar"]
    Fs = {"F_sum": F(c + d), "F_x": F(c), "F_y": F(d)}
    if case == CASE1:
        return [
            Slack("case1_condition", quarter - d, {"d": d, "quarter": quarter}),
            Slack("lemma3", Fs["F_sum"] - Fs["F_x"] - Fs["F_y"] - min(c, d), {"x": c, "y": d, **Fs}),
            Slack("lemma6", lemma6, overlaps),
        ]
    margin = Fs["F_sum"] - Fs["F_y"] - Fs["F_x"] - d + quarter - c
    return [
        Slack("balance", quarter - (d - c), {"c": c, "d": d, "quarter": quarter}),
        Slack("sandwich", d - quarter - 1, {"d": d, "quarter": quarter}),
        Slack("lemma4", margin, {"x": c, "y": d, "n": n - 1, **Fs}),
        Slack("lemma6", lemma6, overlaps),
    ]


def trace_induction(A: Family) -> Certificate:
    """Replay the induction on ``A`` and return its certificate.

    Families larger than ``2**(n-1)`` start with a COMPLEMENT node.  Raises
    :class:`InvariantBreach` if neither case applies at some node, which
    would contradict the balanced-coordinate lemma.
    """
    if A.n < 1:
        raise InputError("the induction starts at dimension 1")
    return Certificate(A.serialize(), _trace(A, default_table().F))


# -- checker -----------------------------------------------------------------------


@dataclass
class Verdict:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def _F(k: int) -> int:
    return popcount_prefix(k)


def _f(A: Family) -> int:
    return 2 * internal_edges(A) + family_counts(A, A)["a_and_bbar"]


class _Checker:
    def __init__(self) -> None:
        self.failures: list[str] = []

    def expect(self, path: str, name: str, expected, recorded) -> bool:
        if expected != recorded:
            self.failures.append(f"{path}: {name}: expected {expected!r}, recorded {recorded!r}")
            return False
        return True

    def check(self, node: Node, A: Family, path: str) -> int:
        """Check ``node`` against ``A``; returns the true slack of the node's bound."""
        n, size = A.n, A.size
        f = _f(A)
        half = 1 << (n - 1) if n >= 1 else 0
        form = LARGE if size > half else PLAIN
        bound = 2 * _F(size) + (2 * size - (1 << n) if form == LARGE else 0)
        true_slack = bound - f
        self.expect(path, "n", n, node.n)
        self.expect(path, "size", size, node.size)
        self.expect(path, "f", f, node.f)
        self.expect(path, "form", form, node.form)
        self.expect(path, "bound", bound, node.bound)
        for s in node.slacks:
            if not isinstance(s.value, int) or s.value < 0:
                self.failures.append(f"{path}: slack {s.name} is negative ({s.value!r})")
        expected = {"bound": (true_slack, {})}

        if node.case == BASE:
            self.expect(path, "base dimension", 1, n)
            self.expect(path, "base form", PLAIN, form)
            self.expect(path, "children", 0, len(node.children))
        elif node.case == COMPLEMENT:
            self.expect(path, "complement form", LARGE, form)
            if self.expect(path, "children", 1, len(node.children)):
                comp = complement_family(A)
                child_slack = self.check(node.children[0], comp, f"{path}/0")
                self.expect(path + "/0", "form", PLAIN, node.children[0].form)
                f_comp = _f(comp)
                self.expect(path, "complement identity f(A)", f_comp + (n + 1) * ((1 << n) - 2 * comp.size), f)
                self.expect(
                    path, "F complement identity",
                    (2 * size - (1 << n)) * n, 2 * _F(size) - 2 * _F((1 << n) - size),
                )
                self.expect(path, "slack accounting", child_slack, true_slack)
        elif node.case in (CASE1, CASE2):
            self._check_step(node, A, path, f, true_slack, expected)
        else:
            self.failures.append(f"{path}: unknown case {node.case!r}")

        recorded = {s.name: (s.value, s.operands) for s in node.slacks}
        self.expect(path, "slack names", sorted(expected), sorted(recorded))
        for name, value in expected.items():
            if name in recorded:
                self.expect(path, f"slack {name}", value[0], recorded[name][0])
                self.expect(path, f"slack {name} operands", value[1], recorded[name][1])
        return true_slack

    def _check_step(self, node: Node, A: Family, path: str, f: int, true_slack: int, expected: dict) -> None:
        n = A.n
        if not self.expect(path, "dimension >= 2", True, n >= 2):
            return
        if not self.expect(path, "coordinate in range", True, isinstance(node.coord, int) and 1 <= node.coord <= n):
            return
        if not self.expect(path, "children", 2, len(node.children)):
            return
        self.expect(path, "form", PLAIN, node.form)
        upper, lower = sections(A, node.coord)
        C, D = (lower, upper) if node.swapped else (upper, lower)
        c, d = C.size, D.size
        self.expect(path, "|C| <= |D|", True, c <= d)
        quarter = 1 << (n - 2)
        cd = len(set(C.codes()) & set(D.codes()))
        dbar = {(1 << (n - 1)) - 1 - v for v in D.codes()}
        cbar = {(1 << (n - 1)) - 1 - v for v in C.codes()}
        cdbar = len(set(C.codes()) & dbar)
        cc = len(set(C.codes()) & cbar)
        dd = len(set(D.codes()) & dbar)
        Fs = {"F_sum": _F(c + d), "F_x": _F(c), "F_y": _F(d)}
        lemma6 = cc + dd + 2 * min(c, d) - 2 * cd - 2 * cdbar
        expected["lemma6"] = (lemma6, {"c": c, "d": d, "cd": cd, "cdbar": cdbar, "cc": cc, "dd": dd})
        if node.case == CASE1:
            expected["case1_condition"] = (quarter - d, {"d": d, "quarter": quarter})
            step = Fs["F_sum"] - Fs["F_x"] - Fs["F_y"] - min(c, d)
            expected["lemma3"] = (step, {"x": c, "y": d, **Fs})
        else:
            expected["balance"] = (quarter - (d - c), {"c": c, "d": d, "quarter": quarter})
            expected["sandwich"] = (d - quarter - 1, {"d": d, "quarter": quarter})
            step = Fs["F_sum"] - Fs["F_y"] - Fs["F_x"] - d + quarter - c
            expected["lemma4"] = (step, {"x": c, "y": d, "n": n - 1, **Fs})
        for name, (value, _) in expected.items():
            if value < 0:
                self.failures.append(f"{path}: {name} fails for this family ({value})")

        slack_c = self.check(node.children[0], C, f"{path}/0")
        slack_d = self.check(node.children[1], D, f"{path}/1")
        self.expect(path + "/0", "form", PLAIN, node.children[0].form)
        self.expect(path + "/1", "form", PLAIN if node.case == CASE1 else LARGE, node.children[1].form)
        f_c, f_d = _f(C), _f(D)
        self.expect(path, "section decomposition of f", f_c + f_d - cc - dd + 2 * cd + 2 * cdbar, f)
        self.expect(path, "slack accounting", slack_c + slack_d + 2 * step + lemma6, true_slack)


def verify_certificate(cert: Certificate, A: Family) -> Verdict:
    """Re-derive every number in ``cert`` from ``A`` and check the induction algebra.

    The verdict is falsy if anything disagrees; ``failures`` names the node
    path (``root/0/1`` = second child of the first child) and the quantity.
    """
    checker = _Checker()
    if not checker.expect("root", "family", A.serialize(), cert.family):
        return Verdict(False, checker.failures)
    if A.n < 1:
        return Verdict(False, ["root: dimension must be at least 1"])
    root_slack = checker.check(cert.root, A, "root")
    if root_slack < 0:
        checker.failures.append(f"root: bound fails by {-root_slack}")
    return Verdict(not checker.failures, checker.failures)
