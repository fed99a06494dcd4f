"""
Potential Models

FLOW OVERVIEW
- DBounds: bottom and top envelopes of a configuration (only d fields matter).
- DPotential: non-smooth edge sets indexed by the dense rank interval
  K0 = [k_lo, k_lo + len(ns_by_rank) - 1], plus the sum of d values.
- CompositeMeasure: (root d, d-potential, #CP), the layered measure compared
  by app.utils.potentials.composite_lt.
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Tuple

from .configuration import Configuration
from .network import Edge


@dataclass(frozen=True)
class DBounds:
    bot: Configuration
    top: Configuration

    def to_dict(self) -> Dict[str, Any]:
        return {'bot': list(self.bot.d), 'top': list(self.top.d)}


@dataclass(frozen=True)
class DPotential:
    k_lo: int
    ns_by_rank: Tuple[FrozenSet[Edge], ...]
    sum_d: int

    @property
    def k0(self) -> Tuple[int, int]:
        return self.k_lo, self.k_lo + len(self.ns_by_rank) - 1

    def at_rank(self, k: int) -> FrozenSet[Edge]:
        index = k - self.k_lo
        if 0 <= index < len(self.ns_by_rank):
            return self.ns_by_rank[index]
        return frozenset()

    def to_dict(self) -> Dict[str, Any]:
        lo, hi = self.k0
        return {
            'k0': [lo, hi],
            'ns_by_rank': {
                str(self.k_lo + i): [edge.to_list() for edge in sorted(edges)]
                for i, edges in enumerate(self.ns_by_rank)
            },
            'sum_d': self.sum_d
        }


@dataclass(frozen=True)
class CompositeMeasure:
    root_d: int
    d_pot: DPotential
    cp: int

    def to_dict(self) -> Dict[str, Any]:
        return {'root_d': self.root_d, 'd_potential': self.d_pot.to_dict(), 'cp': self.cp}
