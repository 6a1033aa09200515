# src/core/registry.py
from __future__ import annotations

from typing import Any, Dict, List, Optional, Type

from Singletons import Logger

from .enums import Verb

logger = Logger()


class TaskRegistry:
    """Maps CLI verbs to task classes (populated by @register_task at import time)."""

    def __init__(self) -> None:
        self._task_classes: Dict[Verb, Type[Any]] = {}

    def register_task(self, cls: Type[Any]) -> None:
        verb = Verb(cls.verb)
        if verb in self._task_classes and self._task_classes[verb] is not cls:
            raise ValueError(f"Verb '{verb}' already registered by {self._task_classes[verb].__name__}")
        self._task_classes[verb] = cls
        logger.debug(f"Registered Task class: {cls.name} ({verb})")

    def get_task_class(self, verb: str | Verb) -> Optional[Type[Any]]:
        try:
            return self._task_classes.get(Verb(verb))
        except ValueError:
            return None

    def create_task(self, verb: str | Verb, **kwargs: Any) -> Any:
        cls = self.get_task_class(verb)
        if cls is None:
            raise ValueError(f"Task for verb '{verb}' not registered")
        instance = cls(**kwargs)
        setattr(instance, "_registry", self)
        return instance

    def list_registered(self) -> List[str]:
        return sorted(str(v) for v in self._task_classes)


# single global registry instance
registry = TaskRegistry()
