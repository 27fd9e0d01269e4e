"""Access to the ``.perm`` files bundled with the package."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import DataError
from .perm import PermGroup, load_perm_file, parse_perm_text

_data_dir: Path | None = None


def set_data_dir(path) -> None:
    """Read shipped names from ``path`` instead of the bundled directory (``None`` resets)."""
    global _data_dir
    _data_dir = None if path is None else Path(path)


def _root():
    return _data_dir if _data_dir is not None else resources.files("dcfactor") / "data"


def shipped_names() -> list[str]:
    root = _root()
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".perm"))


def load_shipped(name: str) -> PermGroup:
    res = _root() / f"{name}.perm"
    if not res.is_file():
        raise DataError(f"no shipped group named {name!r}; available: {', '.join(shipped_names())}")
    text = res.read_text(encoding="utf-8")
    source = str(res) if _data_dir is not None else f"{name}.perm"
    group, declared = parse_perm_text(text, source)
    if declared is not None and group.order() != declared:
        raise DataError(f"{source}: declared order {declared} but generators give {group.order()}")
    return group


def resolve_group(arg: str) -> PermGroup:
    """A file path if one exists, otherwise the name of a shipped group."""
    path = Path(arg)
    if path.is_file():
        return load_perm_file(path)
    return load_shipped(arg)


__all__ = ["set_data_dir", "shipped_names", "load_shipped", "resolve_group"]
