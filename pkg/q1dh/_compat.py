"""Compatibility shims for older Python versions."""

import logging

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        """Backport of :class:`enum.StrEnum` (Python 3.11+)."""

        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):  # noqa: ANN001, ANN205, ARG004
            return name.lower()


def get_level_names_mapping() -> dict[str, int]:
    """Return :func:`logging.getLevelNamesMapping` (Python 3.11+) or its equivalent."""
    if hasattr(logging, "getLevelNamesMapping"):
        return logging.getLevelNamesMapping()
    return dict(logging._nameToLevel)  # noqa: SLF001


__all__ = ["StrEnum", "get_level_names_mapping"]
