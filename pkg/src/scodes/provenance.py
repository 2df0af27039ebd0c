"""
Provenance trees for computed bounds.

Every bound value carries the rule that produced it, a human-readable
citation, the child results it was derived from, and any injected table
facts it leaned on, so a reported number can be audited leaf by leaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class BoundResult:
    value: int
    rule: str
    citation: str = ""
    children: Tuple["BoundResult", ...] = ()
    assumptions: Tuple[str, ...] = ()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def uses_facts(self) -> bool:
        return any(n.rule.startswith("fact") for n in self.walk())

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        cite = f"  [{self.citation}]" if self.citation else ""
        extra = f"  ({'; '.join(self.assumptions)})" if self.assumptions else ""
        lines = [f"{pad}{self.value}  <- {self.rule}{cite}{extra}"]
        for c in self.children:
            lines.append(c.render(indent + 1))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()
