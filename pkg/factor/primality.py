from .primes import primes_upto

# Deterministic for every n < 3.3 * 10**24, which covers all 64-bit inputs
WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

SMALL_PRIMES = tuple(int(p) for p in primes_upto(1000))
_SMALL_SET = frozenset(SMALL_PRIMES)


def is_prime(v):
    if v < 2:
        return False
    if v < 1000:
        return v in _SMALL_SET
    for p in SMALL_PRIMES[:25]:
        if v % p == 0:
            return False

    d, s = v - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in WITNESSES:
        x = pow(a, d, v)
        if x == 1 or x == v - 1:
            continue
        for _ in range(s - 1):
            x = x * x % v
            if x == v - 1:
                break
        else:
            return False
    return True
