import random
from fractions import Fraction

import pytest

from acm.scalars import (
    QQ,
    GF,
    ModP,
    default_prime,
    is_prime,
    parse_field,
    second_prime,
)


def test_default_and_second_prime():
    p = default_prime()
    assert is_prime(p)
    q = second_prime(p)
    assert is_prime(q) and q != p


def test_env_prime_override(monkeypatch):
    monkeypatch.setenv("ACM_PRIME", "1000003")
    assert default_prime() == 1000003
    monkeypatch.delenv("ACM_PRIME")
    assert default_prime() == 32003


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("QQ") is QQ
    assert parse_field("rational") is QQ
    assert parse_field("gfp").p == default_prime()
    assert parse_field("gfp:101").p == 101
    with pytest.raises(ValueError):
        parse_field("gfp:10")  # not prime
    with pytest.raises(ValueError):
        parse_field("float")


def test_rational_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        x = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert (x / y) * y == x


def test_modp_matches_rational_arithmetic():
    F = GF(32003)
    rng = random.Random(1)
    for _ in range(200):
        a, b = rng.randint(-10**9, 10**9), rng.randint(-10**9, 10**9)
        for op in ("add", "sub", "mul"):
            exact = {"add": a + b, "sub": a - b, "mul": a * b}[op]
            got = {"add": F.of(a) + F.of(b),
                   "sub": F.of(a) - F.of(b),
                   "mul": F.of(a) * F.of(b)}[op]
            assert got == F.of(exact)


def test_modp_inverse_and_division():
    F = GF(101)
    for a in range(1, 101):
        x = F.of(a)
        assert x * (F.one / x) == F.one
    with pytest.raises(ZeroDivisionError):
        F.one / F.zero


def test_modp_coerces_fractions():
    F = GF(32003)
    x = F.of(Fraction(3, 7))
    assert x * F.of(7) == F.of(3)
    # denominator divisible by p is rejected
    with pytest.raises(ZeroDivisionError):
        F.of(Fraction(1, 32003))


def test_field_tags_distinct():
    assert QQ.tag == "q"
    assert GF(32003).tag != GF(1000003).tag
    assert GF(32003) is GF(32003)


def test_modp_value_normalization():
    F = GF(7)
    assert F.of(-1) == F.of(6)
    assert F.of(15) == F.of(1)
    assert not F.of(14)
    assert isinstance(F.of(3), ModP)
