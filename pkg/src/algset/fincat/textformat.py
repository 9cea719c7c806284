"""Line-oriented text format for finitely presented categories.

::

    # comments start with '#'
    objects: a b
    arrow u: b -> a
    compose g f = h          # g after f is h; identities are implicit
    capabilities: finite-limits regular sums heyting

Composites that are forced (the target hom-set has one arrow) may be
omitted.  Sites extend this with ``cover`` and ``basis`` lines, see
:mod:`algset.sheaves.site`.
"""

from __future__ import annotations

import re

from algset.errors import MalformedInput, ParseError
from algset.fincat.presheaf import FiniteCategory

_ARROW = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_COMPOSE = re.compile(r"^compose\s+(\S+)\s+(\S+)\s*=\s*(\S+)$")


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_category_lines(lines, *, extra=None) -> FiniteCategory:
    """Parse category lines; lines starting with a keyword in ``extra`` are
    handed to ``extra[keyword](lineno, text)`` instead."""
    objects: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    compose: dict[tuple[str, str], str] = {}
    caps: list[str] = []
    extra = extra or {}
    for lineno, raw in enumerate(lines, 1):
        line = strip_comment(raw)
        if not line:
            continue
        head = line.split(None, 1)[0].rstrip(":")
        if head == "objects":
            objects.extend(line.split(":", 1)[1].split() if ":" in line else line.split()[1:])
        elif head == "arrow":
            m = _ARROW.match(line)
            if not m:
                raise ParseError("malformed arrow declaration", lineno, 1)
            arrows.append(m.groups())
        elif head == "compose":
            m = _COMPOSE.match(line)
            if not m:
                raise ParseError("malformed compose line", lineno, 1)
            g, f, h = m.groups()
            compose[(g, f)] = h
        elif head == "capabilities":
            caps.extend(line.split(":", 1)[1].split())
        elif head in extra:
            extra[head](lineno, line)
        else:
            raise ParseError(f"unknown keyword {head!r}", lineno, 1)
    if not objects:
        raise MalformedInput("category declares no objects")
    return FiniteCategory.build(objects, arrows, compose, caps)


def load_category(text: str) -> FiniteCategory:
    return parse_category_lines(text.splitlines())


def dump_category(C: FiniteCategory) -> str:
    lines = ["objects: " + " ".join(C.objects)]
    for h in C.non_identity():
        lines.append(f"arrow {C.names[h]}: {C.objects[C.dom[h]]} -> {C.objects[C.cod[h]]}")
    for g in C.non_identity():
        for f in C.non_identity():
            h = C.comp[g][f]
            if h >= 0:
                lines.append(f"compose {C.names[g]} {C.names[f]} = {C.names[h]}")
    if C.capabilities:
        lines.append("capabilities: " + " ".join(C.capabilities))
    return "\n".join(lines) + "\n"
