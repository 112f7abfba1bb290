"""Binary strings, decorated diagrams and the change of basis they induce.

A basis element is indexed by a string over {+,-}.  The decoration of a
diagram (arcs, dashed arcs, star, integer labels, e/o marks, circled
integers) is a pure function of the string and the basis family, so
diagrams are rebuilt from strings rather than patched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .ring import (
    ONE,
    RatioElem,
    RingElem,
    R_ZERO,
)

TAGS = ("A", "BI", "BII", "BIII")
STANDARD = "standard"


def check_tag(tag: str, M=None):
    if tag not in TAGS:
        raise ValueError(f"unknown basis family {tag!r}")
    if tag == "BI":
        if M is None or M < 1:
            raise ValueError("family BI needs M >= 1")
    elif M is not None:
        raise ValueError(f"M is only meaningful for BI, got M={M} with {tag}")


def enumerate_strings(N: int) -> list[str]:
    """All strings of length N, '-' before '+' at each position, leftmost first."""
    if N < 1:
        raise ValueError("need N >= 1")
    return ["".join(s) for s in product("-+", repeat=N)]


def string_sort_key(s: str) -> str:
    # '-' < '+' in the paper's order but not in ASCII.
    return s.replace("-", "0").replace("+", "1")


def flip(s: str, changes: dict[int, str]) -> str:
    """Replace the symbols at the given 1-based sites."""
    chars = list(s)
    for i, c in changes.items():
        chars[i - 1] = c
    return "".join(chars)


def reflect(s: str) -> str:
    """Reverse the string and invert every arrow."""
    return "".join("+" if c == "-" else "-" for c in reversed(s))


@dataclass(frozen=True)
class Diagram:
    tag: str
    M: int | None
    string: str
    arcs: tuple = ()            # (i, j) pairs, i < j, sites 1-based
    dashed: tuple = ()          # BI only
    star: int | None = None     # BI only
    labels: tuple = ()          # BI: ((site, p), ...) with 2 <= p <= M
    unpaired_down: int | None = None  # BI only
    marks: tuple = ()           # BII: ((site, 'e'|'o'), ...)
    circles: tuple = ()         # BIII: ((site, k), ...), k counted from right
    ups: tuple = ()             # unpaired up sites
    downs: tuple = ()           # type A bare down sites

    @property
    def N(self) -> int:
        return len(self.string)

    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    def mark_map(self) -> dict[int, str]:
        return dict(self.marks)

    def circle_map(self) -> dict[int, int]:
        return dict(self.circles)

    def blocks(self):
        """All building blocks ordered by leftmost site."""
        out = [("arc", i, j) for (i, j) in self.arcs]
        out += [("dash", i, j) for (i, j) in self.dashed]
        out += [("up", i) for i in self.ups]
        out += [("down", i) for i in self.downs]
        if self.unpaired_down is not None:
            out.append(("down", self.unpaired_down))
        if self.star is not None:
            out.append(("star", self.star))
        out += [("label", i, p) for (i, p) in self.labels]
        out += [("mark", i, m) for (i, m) in self.marks]
        out += [("circle", i, k) for (i, k) in self.circles]
        out.sort(key=lambda b: b[1])
        return out

    def site_kind(self, i: int):
        """Block role of site i: ('up',)/('down',)/('star',)/('label',p)/
        ('mark',m)/('circle',k)/('arc_l',j)/('arc_r',h)/('dash_l',j)/('dash_r',h)."""
        for (a, b) in self.arcs:
            if i == a:
                return ("arc_l", b)
            if i == b:
                return ("arc_r", a)
        for (a, b) in self.dashed:
            if i == a:
                return ("dash_l", b)
            if i == b:
                return ("dash_r", a)
        if i in self.ups:
            return ("up",)
        if i in self.downs or i == self.unpaired_down:
            return ("down",)
        if i == self.star:
            return ("star",)
        lab = self.label_map().get(i)
        if lab is not None:
            return ("label", lab)
        mark = self.mark_map().get(i)
        if mark is not None:
            return ("mark", mark)
        circ = self.circle_map().get(i)
        if circ is not None:
            return ("circle", circ)
        raise ValueError(f"site {i} not classified in {self}")

    def to_json(self) -> dict:
        data = {"type": self.tag, "string": self.string}
        if self.tag == "BI":
            data["M"] = self.M
        if self.arcs:
            data["arcs"] = [list(p) for p in self.arcs]
        if self.dashed:
            data["dashed"] = [list(p) for p in self.dashed]
        if self.star is not None:
            data["star"] = self.star
        if self.labels:
            data["labels"] = {str(i): p for i, p in self.labels}
        if self.unpaired_down is not None:
            data["unpaired_down"] = self.unpaired_down
        if self.marks:
            data["marks"] = {str(i): m for i, m in self.marks}
        if self.circles:
            data["circles"] = {str(i): k for i, k in self.circles}
        if self.ups:
            data["ups"] = list(self.ups)
        if self.downs:
            data["downs"] = list(self.downs)
        return data

    def serialize(self) -> str:
        parts = [self.string]
        parts += [f"arc({i},{j})" for i, j in self.arcs]
        parts += [f"dashed({i},{j})" for i, j in self.dashed]
        if self.star is not None:
            parts.append(f"star({self.star})")
        parts += [f"label({i},{p})" for i, p in self.labels]
        if self.unpaired_down is not None:
            parts.append(f"down({self.unpaired_down})")
        parts += [f"mark({i},{m})" for i, m in self.marks]
        parts += [f"circle({i},{k})" for i, k in self.circles]
        return " ; ".join(parts)


def _match_arcs(string: str):
    """Rules (A)/(B): non-crossing pairing of '-' openers with '+' closers."""
    stack: list[int] = []
    arcs: list[tuple[int, int]] = []
    ups: list[int] = []
    for pos, c in enumerate(string, start=1):
        if c == "-":
            stack.append(pos)
        elif stack:
            arcs.append((stack.pop(), pos))
        else:
            ups.append(pos)
    downs = stack  # left to right
    return tuple(sorted(arcs)), tuple(ups), tuple(downs)


@lru_cache(maxsize=200000)
def build_diagram(tag: str, string: str, M: int | None = None) -> Diagram:
    check_tag(tag, M)
    arcs, ups, downs = _match_arcs(string)
    if tag == "A":
        return Diagram("A", None, string, arcs=arcs, ups=ups, downs=downs)
    if tag == "BII":
        # Marks alternate o, e, o, ... counted from the right.
        marks = tuple(
            (site, "o" if k % 2 == 1 else "e")
            for k, site in enumerate(reversed(downs), start=1)
        )
        return Diagram("BII", None, string, arcs=arcs, ups=ups,
                       marks=tuple(sorted(marks)))
    if tag == "BIII":
        circles = tuple(
            (site, k) for k, site in enumerate(reversed(downs), start=1)
        )
        return Diagram("BIII", None, string, arcs=arcs, ups=ups,
                       circles=tuple(sorted(circles)))
    # BI: label the rightmost downs M, M-1, ..., 2, then the star, then
    # pair what remains right-to-left into dashed arcs.
    rdowns = list(reversed(downs))
    labels = []
    star = None
    for k, site in enumerate(rdowns, start=1):
        p = M + 1 - k
        if p >= 2:
            labels.append((site, p))
        elif p == 1:
            star = site
        else:
            break
    rest = sorted(rdowns[M:])  # sites left of the star, ascending
    dashed = []
    while len(rest) >= 2:
        b = rest.pop()
        a = rest.pop()
        dashed.append((a, b))
    unpaired = rest[0] if rest else None
    return Diagram("BI", M, string, arcs=arcs, ups=ups,
                   dashed=tuple(sorted(dashed)), star=star,
                   labels=tuple(sorted(labels)), unpaired_down=unpaired)


# -- building-block vectors ---------------------------------------------

_Q = RingElem.mono


def down_block_alpha(kind) -> RingElem:
    """alpha in (v_{-1} - alpha v_1) for a decorated single down arrow."""
    name = kind[0]
    if name == "down":
        return RingElem.zero()
    if name == "star":
        return _Q(1, -1)
    if name == "label":
        return _Q(1, -kind[1])
    if name == "mark":
        return _Q(-1, -1, 1) if kind[1] == "e" else _Q(1, 0, -1)
    if name == "circle":
        return _Q(1, kind[1] - 1, -1)
    raise ValueError(kind)


def block_vector(block) -> list[tuple[str, RingElem]]:
    """Expansion of a building block over local standard strings."""
    name = block[0]
    if name == "up":
        return [("+", ONE)]
    if name == "arc":
        return [("-+", ONE), ("+-", _Q(-1, -1))]
    if name == "dash":
        return [("--", ONE), ("++", _Q(-1, -1))]
    if name in ("down", "star", "label", "mark", "circle"):
        alpha = down_block_alpha((name,) + block[2:] if name != "down" else (name,))
        out = [("-", ONE)]
        if alpha.terms:
            out.append(("+", -alpha))
        return out
    raise ValueError(block)


def _block_sites(block):
    name = block[0]
    if name in ("arc", "dash"):
        return (block[1], block[2])
    return (block[1],)


def diagram_to_standard(D: Diagram) -> dict[str, RingElem]:
    """Tensor-product expansion of a diagram over standard strings."""
    placements = []
    for block in D.blocks():
        placements.append((_block_sites(block), block_vector(block)))
    chars_template = ["?"] * D.N
    out: dict[str, RingElem] = {}

    def rec(idx: int, coeff: RingElem, chars):
        if idx == len(placements):
            s = "".join(chars)
            prev = out.get(s)
            out[s] = coeff if prev is None else prev + coeff
            return
        sites, options = placements[idx]
        for local, c in options:
            for site, ch in zip(sites, local):
                chars[site - 1] = ch
            rec(idx + 1, coeff * c, chars)

    rec(0, ONE, chars_template)
    return {s: c for s, c in out.items() if c.terms}


@lru_cache(maxsize=None)
def transition_matrix(tag: str, N: int, M: int | None = None):
    """Columns of KL vectors in the standard basis, keyed by string."""
    check_tag(tag, M)
    return {
        s: diagram_to_standard(build_diagram(tag, s, M))
        for s in enumerate_strings(N)
    }


def standard_to_kl(vec: dict[str, RatioElem], tag: str, N: int, M: int | None = None):
    """Invert the unitriangular expansion by ascending back-substitution."""
    T = transition_matrix(tag, N, M)
    work = dict(vec)
    out: dict[str, RatioElem] = {}
    # Corrections propagate only to larger strings, so one ascending pass
    # over the full string list settles everything.
    for s in enumerate_strings(N):
        c = work.pop(s, None)
        if c is None or c.is_zero():
            continue
        out[s] = c
        for s2, poly in T[s].items():
            if s2 == s:
                continue
            cur = work.get(s2, R_ZERO)
            nxt = cur - c.mul_ring(poly)
            if nxt.is_zero():
                work.pop(s2, None)
            else:
                work[s2] = nxt
    if work:
        raise AssertionError("back-substitution left residual entries")
    return out


_GAMMA_CHECKS = {
    "A": lambda e, f, g: e < 0 and f == 0 and g == 0,
    "BI": lambda e, f, g: e < 0 and f == 0 and g == 0,
    "BII": lambda e, f, g: g == 0 and (e < 0 or (e == 0 and f < 0)),
    "BIII": lambda e, f, g: g == 0 and (f < 0 or (f == 0 and e < 0)),
}


def validate_kl_conditions(tag: str, N: int, M: int | None = None) -> dict[str, bool]:
    """Check triangularity and the Gamma_- membership of every correction."""
    T = transition_matrix(tag, N, M)
    member = _GAMMA_CHECKS[tag]
    report = {}
    for s, col in T.items():
        ok = True
        lead = col.get(s)
        if lead is None or lead != ONE:
            ok = False
        key = string_sort_key(s)
        for s2, poly in col.items():
            if s2 == s:
                continue
            if string_sort_key(s2) <= key:
                ok = False
            if not all(member(*m) for m in poly.terms):
                ok = False
        report[s] = ok
    return report
