import re

import galois

RATIONAL_PATTERN = re.compile(r'^-?\d+(/\d+)?$')
WORD_PATTERN = re.compile(r'^([aAbB]+|1|Λ)?$')
POINT_PATTERN = re.compile(r'^@(-?\w+)(-(-?\w+):(-?\d+(/\d+)?))?$')


def validate_rational_literal(text: str) -> bool:
    if not text or not isinstance(text, str):
        return False
    if not RATIONAL_PATTERN.match(text.strip()):
        return False
    return not text.strip().endswith("/0")


def validate_word_literal(text: str) -> bool:
    if not isinstance(text, str):
        return False
    return bool(WORD_PATTERN.match(text.strip()))


def validate_point_literal(text: str) -> bool:
    if not text or not isinstance(text, str):
        return False
    return bool(POINT_PATTERN.match(text.strip()))


def validate_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    return galois.is_prime(p)


def validate_matrix_literal(text: str, n: int) -> bool:
    if not text or not isinstance(text, str):
        return False
    entries = [e.strip() for e in text.split(",")]
    if len(entries) != n * n:
        return False
    return all(re.match(r'^-?\d+$', e) for e in entries)


def validate_group_spec(text: str) -> bool:
    if not text or not isinstance(text, str):
        return False
    return bool(re.match(r'^(sl:\d+:\d+|perm:\d+)$', text.strip()))
