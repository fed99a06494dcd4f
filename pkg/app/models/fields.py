"""
Strict JSON field parsing shared by the network and configuration loaders.

JSON numbers arrive as int, float or bool; only real integers are node
identifiers or d values. Object keys arrive as strings and must spell an
integer exactly.
"""

from typing import Any, Type


def is_strict_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def strict_int(value: Any, error_cls: Type[Exception], message: str) -> int:
    if not is_strict_int(value):
        raise error_cls(f'{message}, got {value!r}')
    return value


def node_key(key: Any, error_cls: Type[Exception]) -> int:
    """Node identifier from an object key: "3" or 3, never "3.0" or True."""
    if is_strict_int(key):
        return key
    if isinstance(key, str) and key.lstrip('-').isdigit() and str(int(key)) == key:
        return int(key)
    raise error_cls(f'Node key {key!r} is not an integer identifier')
