"""Anagram-free words, grid colourings and the machinery around them.

Thin wrappers over the native ``_core`` module. Results come back as plain
dicts with the same keys as the command-line JSON reports.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from . import _core

PreconditionError = _core.PreconditionError

__all__ = [
    "PreconditionError",
    "afcn_grid",
    "afcn_path",
    "certify",
    "construct_path",
    "empirical",
    "find_anagramish_substring",
    "find_near_anagramish",
    "is_anagramish",
    "is_ell_periodic",
    "longest_anagram_free",
    "plant",
    "tau",
    "thresholds",
    "verify_colouring",
    "verify_construction",
]


def _load(text: str) -> Any:
    return json.loads(text)


def is_anagramish(word: str) -> bool:
    return _core.is_anagramish(word)


def is_ell_periodic(word: str, ell: int) -> bool:
    return _core.is_ell_periodic(word, ell)


def tau(word: str) -> dict:
    return _load(_core.tau(word))


def find_anagramish_substring(word: str) -> Optional[dict]:
    return _load(_core.find_anagramish_substring(word))


def find_near_anagramish(word: str, r0: int, eps: str | float) -> Optional[dict]:
    return _load(_core.find_near_anagramish(word, r0, str(eps)))


def longest_anagram_free(k: int, max_len: int, node_budget: int = 10_000_000, canonical: bool = False,
                         workers: int = 1) -> dict:
    return _load(_core.longest_anagram_free(k, max_len, node_budget, canonical, workers))


def verify_colouring(colouring: dict, workers: int = 1) -> dict:
    return _load(_core.verify_colouring(json.dumps(colouring), workers))


def afcn_grid(n: int, c_max: int, workers: int = 1) -> dict:
    return _load(_core.afcn_grid(n, c_max, workers))


def afcn_path(m: int, c_max: int) -> dict:
    return _load(_core.afcn_path(m, c_max))


def plant(ell: int, r: int, tau: int = 0, eps: Optional[str] = None, c: int = 4, seed: int = 0) -> dict:
    return _load(_core.plant(ell, r, tau, None if eps is None else str(eps), c, seed))


def construct_path(block_string: dict, eps: str) -> dict:
    return _load(_core.construct_path(json.dumps(block_string), str(eps)))


def verify_construction(block_string: dict, path: dict) -> dict:
    return _load(_core.verify_construction(json.dumps(block_string), json.dumps(path)))


def thresholds(eps: str | float, ell: int, r0: int) -> dict:
    return _load(_core.thresholds(str(eps), ell, r0))


def certify(word: str, r0: int, eps: str | float, ell: int) -> dict:
    return _load(_core.certify(word, r0, str(eps), ell))


def empirical(sigma: int, ell: int, eps: str | float, r0: int, cap: int, workers: int = 1) -> dict:
    return _load(_core.empirical(sigma, ell, str(eps), r0, cap, workers))
