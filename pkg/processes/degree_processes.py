"""
Degree-Driven Processes
HDA links the highest-degree vertex that still has a missing link to its
lowest-index non-neighbour. HDR cuts the highest-degree vertex from its
lowest-index neighbour. Degree ties go to the lowest vertex index.
"""

import numpy as np
import logging

from processes.base_process import Edge, EdgeProcess, register_process

logger = logging.getLogger(__name__)


def _ordered(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@register_process
class HighestDegreeAddition(EdgeProcess):
    kind = "HDA"
    adds = True

    def choose_edge(self) -> Edge:
        degrees = self.adjacency.sum(axis=1)
        # saturated vertices (degree N-1) cannot gain a link
        open_degrees = np.where(degrees < self.n - 1, degrees, -1.0)
        hub = int(np.argmax(open_degrees))
        missing = np.flatnonzero(self.adjacency[hub] == 0)
        partner = int(missing[missing != hub][0])
        return _ordered(hub, partner)


@register_process
class HighestDegreeRemoval(EdgeProcess):
    kind = "HDR"
    adds = False

    def choose_edge(self) -> Edge:
        degrees = self.adjacency.sum(axis=1)
        hub = int(np.argmax(degrees))
        partner = int(np.flatnonzero(self.adjacency[hub])[0])
        return _ordered(hub, partner)
