"""Given/when/then scaffolding: ``given`` runs setup steps against a shared context."""

from typing import Any, Callable, Iterable, List, Optional

Step = Callable[[Any], Any]


class Context:
    pass


class GivenScope:
    def __init__(self, steps: Optional[Iterable[Step]]):
        self.steps = list(steps or [])
        self.context = Context()
        self.started: List[Any] = []

    def __enter__(self) -> Any:
        for step in self.steps:
            result = step(self.context)
            self.started.append(result)
            if result is not None and hasattr(result, "__enter__"):
                result.__enter__()
        return self.context

    def __exit__(self, type, value, traceback):
        for result in reversed(self.started):
            if result is not None and hasattr(result, "__exit__"):
                result.__exit__(type, value, traceback)


class Phase:
    """Labels a block of a test; does nothing at runtime."""

    def __init__(self, description: Optional[str] = None):
        self.description = description

    def __enter__(self):
        return self

    def __exit__(self, type, value, traceback):
        return False


def given(steps: Optional[Iterable[Step]] = None) -> GivenScope:
    return GivenScope(steps)


def when(description: Optional[str] = None) -> Phase:
    return Phase(description)


def then(description: Optional[str] = None) -> Phase:
    return Phase(description)
