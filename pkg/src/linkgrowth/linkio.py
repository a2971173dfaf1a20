"""Link diagrams: PD codes, oriented arc/crossing data and Wirtinger presentations.

PD convention: ``X[a,b,c,d]`` lists the four edges at a crossing
counterclockwise, starting with the incoming under-edge ``a``; ``c`` is the
outgoing under-edge and ``b``, ``d`` are the over-edges. Orientation of each
under-strand is read off from ``a -> c``; over-strands are oriented by
propagation along components (a component with no undercrossing is oriented
so its labels increase).

A crossing has sign +1 when the over-strand runs ``d -> b``. The Wirtinger
relator ``x_i x_j1 x_i^-1 x_j2^-1`` takes ``j1`` to be the under-arc met by
turning left from the over-arc's direction: the outgoing under-arc at a
positive crossing and the incoming one at a negative crossing.
"""
from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .laurent import LaurentPoly, parse_poly


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    components: tuple[int, ...] | None = None  # component index (1-based) per edge label

    @property
    def num_edges(self) -> int:
        return 2 * len(self.crossings)


@dataclass(frozen=True)
class Crossing:
    over_arc: int
    incoming_under: int
    outgoing_under: int
    over_component: int
    under_component: int
    sign: int


@dataclass(frozen=True)
class LinkDiagram:
    num_arcs: int
    num_components: int
    component_of_arc: tuple[int, ...]  # entry k is the component of arc k+1
    crossings: tuple[Crossing, ...]
    name: str = ""

    def to_json(self) -> str:
        d = asdict(self)
        d["crossings"] = [asdict(c) for c in self.crossings]
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> LinkDiagram:
        d = json.loads(text)
        try:
            crossings = tuple(Crossing(**c) for c in d["crossings"])
            return cls(int(d["num_arcs"]), int(d["num_components"]),
                       tuple(int(x) for x in d["component_of_arc"]), crossings, d.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"malformed diagram JSON: {exc}") from None


@dataclass(frozen=True)
class Relator:
    """x_i x_j1 x_i^-1 x_j2^-1 with t = component of x_i, t' = component of x_j1."""
    i: int
    j1: int
    j2: int
    t: int
    t_prime: int


@dataclass(frozen=True)
class WirtingerPresentation:
    N: int
    d: int
    t: tuple[int, ...]  # component index of each generator (entry k for x_{k+1})
    relators: tuple[Relator, ...]

    def abelianize(self, r: Relator) -> list[int]:
        """Exponent vector in Z^d of the image of a relator."""
        v = [0] * self.d
        for gen, e in ((r.i, 1), (r.j1, 1), (r.i, -1), (r.j2, -1)):
            v[self.t[gen - 1] - 1] += e
        return v


# --- PD text ------------------------------------------------------------------------

_X = re.compile(r"X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text: str) -> PDCode:
    body = text.strip()
    m = re.fullmatch(r"PD\s*\[(.*)\]", body, flags=re.S)
    if m:
        body = m.group(1)
    crossings = []
    pos = 0
    for m in _X.finditer(body):
        if body[pos:m.start()].strip(" \t\r\n,"):
            raise DiagramError(f"unexpected text {body[pos:m.start()]!r} in PD code")
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if body[pos:].strip(" \t\r\n,"):
        raise DiagramError(f"unexpected text {body[pos:]!r} in PD code")
    pd = PDCode(tuple(crossings))
    problems = validate_pd(pd)
    if problems:
        raise DiagramError("; ".join(problems))
    return pd


def render_pd(pd: PDCode) -> str:
    return " ".join("X[" + ",".join(map(str, c)) + "]" for c in pd.crossings)


def validate_pd(pd: PDCode) -> list[str]:
    counts: dict[int, int] = {}
    for c in pd.crossings:
        for e in c:
            counts[e] = counts.get(e, 0) + 1
    problems = [f"edge label {e} appears {n} times" for e, n in sorted(counts.items()) if n != 2]
    n = len(counts)
    if counts and sorted(counts) != list(range(1, n + 1)):
        problems.append(f"edge labels are not 1..{n} without gaps")
    return problems


# --- PD -> oriented diagram --------------------------------------------------------

class _DSU:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def pd_to_diagram(pd: PDCode, free_components: int | None = None, name: str = "") -> LinkDiagram:
    """Convert a PD code to arcs, components and signed crossings.

    ``free_components`` adds crossingless unknotted components; it defaults
    to 1 for the empty code and 0 otherwise.
    """
    problems = validate_pd(pd)
    if problems:
        raise DiagramError("; ".join(problems))
    if free_components is None:
        free_components = 0 if pd.crossings else 1
    X = pd.crossings
    edges = sorted({e for c in X for e in c})
    occ: dict[int, list[tuple[int, int]]] = {e: [] for e in edges}
    for k, c in enumerate(X):
        for p, e in enumerate(c):
            occ[e].append((k, p))

    # strand components: edges joined through a crossing along the same strand
    comp = _DSU(edges)
    for c in X:
        comp.union(c[0], c[2])
        comp.union(c[1], c[3])
    roots = sorted({comp.find(e) for e in edges})
    if pd.components is not None:
        comp_index = {}
        for e in edges:
            r = comp.find(e)
            ci = pd.components[e - 1]
            if comp_index.setdefault(r, ci) != ci:
                raise DiagramError(f"component hint for edge {e} disagrees with the strands")
        if sorted(comp_index.values()) != list(range(1, len(roots) + 1)):
            raise DiagramError("component hints must be 1..d, one per strand component")
    else:
        comp_index = {r: k + 1 for k, r in enumerate(roots)}

    # orientation: is_head[(k, p)] says the edge at that slot enters crossing k
    is_head: dict[tuple[int, int], bool] = {}
    queue: list[tuple[int, int]] = []

    def assign(slot, val):
        if slot in is_head:
            if is_head[slot] != val:
                raise DiagramError(f"inconsistent orientation at crossing {slot[0] + 1}")
            return
        is_head[slot] = val
        queue.append(slot)

    def propagate():
        while queue:
            k, p = queue.pop()
            val = is_head[(k, p)]
            e = X[k][p]
            o = occ[e]
            other = o[1] if o[0] == (k, p) else o[0]
            assign(other, not val)
            if p in (1, 3):
                assign((k, 4 - p), not val)

    for k in range(len(X)):
        assign((k, 0), True)
        assign((k, 2), False)
    propagate()
    for r in roots:
        members = [e for e in edges if comp.find(e) == r]
        if all(s in is_head for e in members for s in occ[e]):
            continue
        e = members[0]
        nxt = e + 1 if e + 1 in members else None
        (k0, p0), (k1, p1) = occ[e]
        if nxt is not None and X[k0][(p0 + 2) % 4] == nxt:
            assign((k0, p0), True)
        else:
            assign((k1, p1), True)
        propagate()

    # Wirtinger arcs: edges joined through an overpass
    arcs = _DSU(edges)
    for c in X:
        arcs.union(c[1], c[3])

    # number arcs by walking each component along its orientation
    def next_edge(e):
        (k, p) = next(s for s in occ[e] if is_head[s])
        return X[k][(p + 2) % 4]

    arc_id: dict[int, int] = {}
    arc_comp: list[int] = []
    for r in sorted(roots, key=lambda r: comp_index[r]):
        start = min(e for e in edges if comp.find(e) == r)
        e = start
        while True:
            a = arcs.find(e)
            if a not in arc_id:
                arc_id[a] = len(arc_comp) + 1
                arc_comp.append(comp_index[r])
            e = next_edge(e)
            if e == start:
                break
    ncomp = len(roots)
    for _ in range(free_components):
        ncomp += 1
        arc_comp.append(ncomp)

    crossings = []
    for k, c in enumerate(X):
        over = arc_id[arcs.find(c[1])]
        sign = 1 if is_head[(k, 3)] else -1
        crossings.append(Crossing(over, arc_id[arcs.find(c[0])], arc_id[arcs.find(c[2])],
                                  arc_comp[over - 1], comp_index[comp.find(c[0])], sign))
    return LinkDiagram(len(arc_comp), ncomp, tuple(arc_comp), tuple(crossings), name)


def validate_diagram(diag: LinkDiagram) -> list[str]:
    """Return a list of human-readable invariant violations (empty if valid)."""
    out = []
    N, d = diag.num_arcs, diag.num_components
    if len(diag.component_of_arc) != N:
        out.append(f"component_of_arc has {len(diag.component_of_arc)} entries, expected {N}")
    for a, t in enumerate(diag.component_of_arc, 1):
        if not 1 <= t <= d:
            out.append(f"arc {a}: component index out of range ({t})")
    if set(diag.component_of_arc) != set(range(1, d + 1)):
        out.append("component_of_arc is not surjective onto 1..d")
    outgoing: dict[int, int] = {}
    comp = dict(enumerate(diag.component_of_arc, 1))
    for k, c in enumerate(diag.crossings, 1):
        for a in (c.over_arc, c.incoming_under, c.outgoing_under):
            if not 1 <= a <= N:
                out.append(f"crossing {k}: arc {a} out of range")
        if out and any("out of range" in s and s.startswith(f"crossing {k}") for s in out):
            continue
        if comp[c.over_arc] != c.over_component:
            out.append(f"crossing {k}: over arc {c.over_arc} is not on component {c.over_component}")
        for a in (c.incoming_under, c.outgoing_under):
            if comp[a] != c.under_component:
                out.append(f"crossing {k}: under arc {a} is not on component {c.under_component}")
        if comp[c.incoming_under] != comp[c.outgoing_under]:
            out.append(f"crossing {k}: relator abelianization is nontrivial")
        if c.sign not in (1, -1):
            out.append(f"crossing {k}: sign must be +1 or -1")
        if c.outgoing_under in outgoing:
            out.append(f"arc {c.outgoing_under} is the outgoing under-arc of crossings "
                       f"{outgoing[c.outgoing_under]} and {k}")
        outgoing[c.outgoing_under] = k
    return out


def wirtinger(diag: LinkDiagram) -> WirtingerPresentation:
    problems = validate_diagram(diag)
    if problems:
        raise DiagramError("; ".join(problems))
    rels = []
    for c in diag.crossings:
        if c.sign > 0:
            j1, j2 = c.outgoing_under, c.incoming_under
        else:
            j1, j2 = c.incoming_under, c.outgoing_under
        rels.append(Relator(c.over_arc, j1, j2, c.over_component, c.under_component))
    return WirtingerPresentation(diag.num_arcs, diag.num_components, diag.component_of_arc, tuple(rels))


def presentation_from_relators(t: Sequence[int], relators: Sequence[tuple[int, int, int]],
                               signs: Sequence[int] | None = None, name: str = "") -> LinkDiagram:
    """Diagram from explicit relators ``x_i x_j1 x_i^-1 = x_j2`` given as (i, j1, j2).

    ``signs`` fixes which under-arc is incoming (see module docstring);
    it defaults to all +1.
    """
    d = max(t)
    signs = signs or [1] * len(relators)
    crossings = []
    for (i, j1, j2), s in zip(relators, signs):
        inc, out = (j2, j1) if s > 0 else (j1, j2)
        crossings.append(Crossing(i, inc, out, t[i - 1], t[j1 - 1], s))
    return LinkDiagram(len(t), d, tuple(t), tuple(crossings), name)


# --- built-in table ------------------------------------------------------------------

@dataclass(frozen=True)
class BuiltinLink:
    name: str
    aliases: tuple[str, ...]
    components: int
    known_delta: str
    pd: str | None = None
    note: str = ""


BUILTINS: dict[str, BuiltinLink] = {}


def _register(b: BuiltinLink) -> None:
    BUILTINS[b.name] = b


_register(BuiltinLink("unknot", ("0_1",), 1, "1", ""))
_register(BuiltinLink("trefoil", ("3_1",), 1, "u1^2 - u1 + 1",
                      "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"))
_register(BuiltinLink("trefoil-kink", (), 1, "u1^2 - u1 + 1",
                      "X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[6,7,7,8]",
                      "trefoil with an extra Reidemeister I kink"))
_register(BuiltinLink("figure8", ("4_1", "figure-eight"), 1, "u1^2 - 3*u1 + 1",
                      "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"))
_register(BuiltinLink("hopf", ("2_1^2", "L2a1"), 2, "1",
                      "X[1,3,2,4] X[3,2,4,1]"))
_register(BuiltinLink("L5a1", ("5_1^2", "whitehead"), 2, "u1*u2 - u1 - u2 + 1", None,
                      "Wirtinger relators of the five-crossing diagram with x1, x2 on component 1"))
_register(BuiltinLink("L6a1", ("6_2^2",), 2, "u1 + u2 - 1 + u1^-1 + u2^-1",
                      "X[2,4,5,1] X[4,6,7,5] X[6,8,9,7] X[8,10,11,9] X[3,12,13,10] X[11,13,14,1] "
                      "X[12,3,2,14]",
                      "closure of the 3-braid s1^4 s2 s1^-1 s2 (7 crossings)"))
_register(BuiltinLink("L6a2", ("6_2^3",), 2, "2 - u1 - u2 + 2*u1*u2",
                      "X[2,5,6,1] X[7,8,5,3] X[1,6,8,9] X[4,10,11,7] X[9,11,12,2] X[3,12,10,4]",
                      "closure of the 4-braid s1 s2^-1 s1 s3 s2^-1 s3, first component reversed"))
_register(BuiltinLink("lehmer-poly", ("lehmer",), 1,
                      "u1^10 + u1^9 - u1^7 - u1^6 - u1^5 - u1^4 - u1^3 + u1 + 1", None,
                      "polynomial only; no diagram"))

# Example relators for the five-crossing two-component link: x_i x_j1 x_i^-1 = x_j2.
_L5A1_T = (1, 1, 2, 2, 2)
_L5A1_RELATORS = ((1, 3, 5), (3, 2, 1), (5, 4, 3), (4, 2, 1), (2, 4, 5))
_L5A1_SIGNS = (1, 1, 1, -1, -1)


def resolve_name(name: str) -> BuiltinLink:
    key = name.strip()
    for b in BUILTINS.values():
        if key == b.name or key in b.aliases or key.lower() == b.name.lower():
            return b
    raise DiagramError(f"unknown link {name!r}; known: {', '.join(BUILTINS)}")


def builtin_link(name: str) -> LinkDiagram:
    b = resolve_name(name)
    if b.name == "lehmer-poly":
        raise DiagramError("'lehmer-poly' exposes a polynomial only, not a diagram")
    if b.name == "L5a1":
        return presentation_from_relators(_L5A1_T, _L5A1_RELATORS, _L5A1_SIGNS, name=b.name)
    if not b.pd:
        return pd_to_diagram(PDCode(()), free_components=b.components, name=b.name)
    return pd_to_diagram(parse_pd(b.pd), name=b.name)


def builtin_polynomial(name: str) -> LaurentPoly | None:
    """Reference polynomial for polynomial-only entries (currently lehmer-poly)."""
    b = resolve_name(name)
    if b.pd is None and b.name == "lehmer-poly":
        return parse_poly(b.known_delta, dim=1)
    return None
