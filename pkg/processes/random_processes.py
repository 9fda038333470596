"""
Random Processes
RA adds absent links and RR removes present links, in a uniformly random
order drawn once from the run's stream.
"""

from typing import List
import logging

from processes.base_process import Edge, QueuedProcess, register_process

logger = logging.getLogger(__name__)


@register_process
class RandomAddition(QueuedProcess):
    kind = "RA"
    adds = True

    def edit_order(self) -> List[Edge]:
        absent = self._pairs_with_state(present=False)
        return [absent[k] for k in self.rng.permutation(len(absent))]


@register_process
class RandomRemoval(QueuedProcess):
    kind = "RR"
    adds = False

    def edit_order(self) -> List[Edge]:
        present = self._pairs_with_state(present=True)
        return [present[k] for k in self.rng.permutation(len(present))]
