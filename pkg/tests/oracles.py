"""Brute-force references that share no code with the package."""


def to_int(digits, n):
    v = 0
    for d in digits:
        v = v * n + d
    return v


def expand(x, n, width):
    out = []
    for _ in range(width):
        x, r = divmod(x, n)
        out.append(r)
    assert x == 0
    return tuple(reversed(out))


def brute_solutions(n, length):
    """All (k, digits) with k*X == reverse(X), 1 < k < n, by trying every k and X."""
    found = []
    for x in range(n ** (length - 1), n**length):
        digits = expand(x, n, length)
        if digits[-1] == 0:
            continue
        r = to_int(digits[::-1], n)
        for k in range(2, n):
            if k * x == r:
                found.append((k, digits))
    return sorted(found, key=lambda t: (t[0], to_int(t[1], n)))


def brute_multiplier(digits, n):
    if digits[0] == 0 or digits[-1] == 0:
        return None
    x, r = to_int(digits, n), to_int(digits[::-1], n)
    for k in range(2, n):
        if k * x == r:
            return k
    return None
