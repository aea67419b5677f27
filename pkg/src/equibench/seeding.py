"""Deterministic seed derivation for independently seeded work items.

Every replicate, permutation block, and generator call gets its own child
seed derived by hashing the base seed together with a path of labels, so
results never depend on execution order or worker count.
"""
from __future__ import annotations

import hashlib


def derive_seed(base: int, *parts) -> int:
    """Hash (base, *parts) into a stable 63-bit seed."""
    h = hashlib.sha256()
    h.update(str(int(base)).encode())
    for p in parts:
        h.update(b"\x1f")
        h.update(str(p).encode())
    return int.from_bytes(h.digest()[:8], "big") >> 1
