#!/usr/bin/env python3
"""
Named IET Catalog

One system per line:

    name: a1 a2 ... ad | l1, l2, ..., ld

The `| lengths` part is optional (permutation-only entries). Lengths use
the scalar text syntax. Blank lines and `#` comments are ignored.
"""

import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

from iet import IET, build_iet
from perm import Permutation, PermutationError, parse_permutation
from scalar import Scalar, ScalarError, parse_scalar

BUNDLED_CATALOG = Path(__file__).parent.parent / "catalog" / "systems.txt"

_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")


class CatalogError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        where = f"{path or 'catalog'}:{line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class DuplicateName(CatalogError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    perm: Permutation
    lengths: Optional[Tuple[Scalar, ...]]
    line: int
    source: str

    @property
    def has_lengths(self) -> bool:
        return self.lengths is not None

    def iet(self) -> IET:
        if self.lengths is None:
            raise CatalogError(f"entry {self.name!r} has no lengths", self.line, self.source)
        return build_iet(self.lengths, self.perm)

    def provenance(self) -> Dict:
        return {"catalog": self.source, "name": self.name, "line": self.line}


def parse_catalog(text: str, source: str = "<text>") -> Dict[str, CatalogEntry]:
    """
    Parse catalog text into named entries (file order preserved).

    Raises:
        CatalogError: malformed line, with its line number
        DuplicateName: a name appears twice
    """
    entries: Dict[str, CatalogEntry] = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise CatalogError("expected 'name: permutation [| lengths]'", number, source)
        name, body = (part.strip() for part in line.split(":", 1))
        if not _NAME.match(name):
            raise CatalogError(f"bad system name {name!r}", number, source)
        if name in entries:
            raise DuplicateName(f"duplicate name {name!r} (first on line {entries[name].line})",
                                number, source)
        perm_text, _, length_text = body.partition("|")
        try:
            perm = parse_permutation(perm_text)
            lengths = None
            if length_text.strip():
                lengths = tuple(parse_scalar(t) for t in length_text.split(","))
                build_iet(lengths, perm)
        except (PermutationError, ScalarError, ValueError) as e:
            raise CatalogError(str(e), number, source) from None
        entries[name] = CatalogEntry(name, perm, lengths, number, source)
    return entries


def load_catalog(path: Union[str, Path, None] = None) -> Dict[str, CatalogEntry]:
    """Load a catalog file; defaults to the configured (or bundled) catalog."""
    if path is None:
        from config import load_config

        path = load_config()["catalog"]["path"]
    path = Path(path)
    if not path.exists():
        raise CatalogError(f"catalog not found: {path}")
    return parse_catalog(path.read_text(), str(path))


if __name__ == "__main__":
    try:
        catalog = load_catalog(sys.argv[1] if len(sys.argv) > 1 else None)
    except CatalogError as e:
        print(f"✗ {e}")
        sys.exit(2)
    for entry in catalog.values():
        lengths = ", ".join(str(v) for v in entry.lengths) if entry.lengths else "-"
        print(f"  {entry.name:12s} pi={entry.perm}  lambda={lengths}")
