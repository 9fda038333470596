"""
Sequential Processes
SA fills the upper triangle row by row: (0,1), (0,2), ..., (0,N-1), (1,2), ...
skipping links already present; SR removes present links in the same order.
"""

from typing import List

from processes.base_process import Edge, QueuedProcess, register_process


@register_process
class SequentialAddition(QueuedProcess):
    kind = "SA"
    adds = True

    def edit_order(self) -> List[Edge]:
        return self._pairs_with_state(present=False)


@register_process
class SequentialRemoval(QueuedProcess):
    kind = "SR"
    adds = False

    def edit_order(self) -> List[Edge]:
        return self._pairs_with_state(present=True)
