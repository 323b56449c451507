"""Enumeration budgets.

The active :class:`Budget` lives in a context variable so nested library
calls see the same limits without threading a parameter through every
function.  Defaults can be overridden from the environment.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

from .errors import BudgetExceeded


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value == "":
        return default
    return int(value)


@dataclass(frozen=True)
class Budget:
    max_states: int = 10**6
    submodule_dim_bound: int = 6
    path_length_bound: int = 20

    @classmethod
    def from_env(cls) -> "Budget":
        return cls(
            max_states=_env_int("TAUCOSPOND_MAX_STATES", cls.max_states),
            submodule_dim_bound=_env_int("TAUCOSPOND_SUBMODULE_DIM_BOUND", cls.submodule_dim_bound),
            path_length_bound=_env_int("TAUCOSPOND_PATH_LENGTH_BOUND", cls.path_length_bound),
        )

    def replace(self, **changes) -> "Budget":
        return replace(self, **changes)

    def check_states(self, n: int, what: str) -> None:
        if n > self.max_states:
            raise BudgetExceeded(f"{what}: {n} states exceeds budget {self.max_states}")


_BUDGET: contextvars.ContextVar[Budget] = contextvars.ContextVar("taucospond_budget", default=Budget.from_env())


def current_budget() -> Budget:
    return _BUDGET.get()


@contextlib.contextmanager
def use_budget(budget: Budget):
    token = _BUDGET.set(budget)
    try:
        yield budget
    finally:
        _BUDGET.reset(token)
