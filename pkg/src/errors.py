from typing import Optional, Any


class SvdError(Exception):
    """Base class for solver and harness failures."""


class InstanceTooLarge(SvdError, ValueError):
    def __init__(self, what: str, n: int, limit: int):
        super().__init__(f"{what}: instance has {n} vertices, guard is {limit}")
        self.what = what
        self.n = n
        self.limit = limit


class BudgetExceeded(SvdError, RuntimeError):
    def __init__(self, max_nodes: int, nodes: int, k: Optional[int] = None):
        msg = f"induced path search exceeded budget ({nodes} > {max_nodes} nodes)"
        if k is not None:
            msg += f" while looking for P{k}"
        super().__init__(msg)
        self.max_nodes = max_nodes
        self.nodes = nodes
        self.k = k


class NotAHittingSet(SvdError, ValueError):
    def __init__(self, witness: Any):
        super().__init__(f"G - X is not split: found induced {witness.kind} on {list(witness.vertices)}")
        self.witness = witness


class InstanceParseError(SvdError, ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
