"""Small number-theoretic helpers shared by the group model and the oracle."""

from __future__ import annotations

from collections import Counter


def prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_power_of(x, p):
    while x % p == 0:
        x //= p
    return x == 1


def invariants_from_order_counts(counts) -> tuple:
    """Invariant factors ``d1 | d2 | ...`` of a finite abelian group.

    ``counts`` maps element order to the number of elements of that order.
    For each prime p the number of elements killed by ``p**k`` is
    ``p ** sum(min(e, k))`` over the p-exponents ``e``, so successive ratios
    give how many cyclic p-factors have exponent at least ``k``.
    """
    counts = Counter(counts)
    order = sum(counts.values())
    columns = []
    for p in prime_factors(order):
        killed = [1]
        k = 0
        while killed[-1] < _p_part(order, p):
            k += 1
            killed.append(sum(c for o, c in counts.items() if _is_power_of(o, p) and p**k % o == 0))
        at_least = []
        for j in range(1, len(killed)):
            ratio, r = divmod(killed[j], killed[j - 1])
            if r:
                raise ValueError("order counts do not come from an abelian group")
            at_least.append(_log(ratio, p))
        # exponents as a partition: factor i has exponent #{k : at_least[k] > i}
        n_factors = at_least[0] if at_least else 0
        exps = [sum(1 for a in at_least if a > i) for i in range(n_factors)]
        columns.append((p, exps))
    width = max((len(e) for _, e in columns), default=0)
    factors = [1] * width
    for p, exps in columns:
        for i, e in enumerate(exps):
            factors[width - 1 - i] *= p**e
    return tuple(factors)


def _p_part(n, p):
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _log(x, p):
    k = 0
    while x > 1:
        if x % p:
            raise ValueError("order counts do not come from an abelian group")
        x //= p
        k += 1
    return k
