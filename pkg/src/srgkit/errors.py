"""Exceptions shared across modules."""

from __future__ import annotations


class NotPrimitiveSrg(ValueError):
    pass


class NotHomomorphism(ValueError):
    def __init__(self, edge: tuple[int, int], image: tuple[int, int]):
        super().__init__(f"edge {edge} maps to non-edge {image}")
        self.edge = edge
        self.image = image


class CertFailure(AssertionError):
    """An exact identity that should hold does not; carries the first bad entry."""

    def __init__(self, check: str, where: tuple[int, int] | None = None, value=None):
        msg = check if where is None else f"{check}: entry {where} = {value}"
        super().__init__(msg)
        self.check = check
        self.where = where
        self.value = value


class BudgetExceeded(RuntimeError):
    """Node budget ran out; ``lower``/``upper`` bracket the answer found so far."""

    def __init__(self, what: str, lower=None, upper=None, witness=None):
        super().__init__(f"{what}: budget exceeded (bounds [{lower}, {upper}])")
        self.lower = lower
        self.upper = upper
        self.witness = witness
