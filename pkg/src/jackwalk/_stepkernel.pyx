# cython: language_level=3
"""Compiled walk-step kernel.

Same contract as jackwalk._steppure.bernoulli_row: enumerate the
vertical-strip successors of a diagram together with exact relative
weights for the theta = 1 single-beta walk.  Products of pairwise gap
factors are kept as Python integers (they overflow machine words for
moderate n); the win over the pure twin comes from the C-level recursion
bookkeeping.
"""

cdef void _rec(int i, int n, long[::1] padded, long[::1] y, char[::1] eps,
               object num, object den, object b_num, object b_den, list out):
    cdef int j
    cdef long gap
    if i == n:
        mu = []
        for j in range(n):
            mu.append(padded[j] + eps[j])
        while mu and mu[-1] == 0:
            mu.pop()
        out.append((tuple(mu), num, den))
        return
    num0 = num
    den0 = den
    for j in range(i):
        if eps[j] == 1:
            gap = y[j] - y[i]
            num0 = num0 * (gap + 1)
            den0 = den0 * gap
    eps[i] = 0
    _rec(i + 1, n, padded, y, eps, num0, den0, b_num, b_den, out)
    if i == 0 or padded[i - 1] + eps[i - 1] > padded[i]:
        num1 = num * b_num
        den1 = den * b_den
        for j in range(i):
            if eps[j] == 0:
                gap = y[j] - y[i]
                num1 = num1 * (gap - 1)
                den1 = den1 * gap
        eps[i] = 1
        _rec(i + 1, n, padded, y, eps, num1, den1, b_num, b_den, out)
        eps[i] = 0


def bernoulli_row(lam, int n, b_num, b_den):
    """Relative weights of one Bernoulli-walk step from ``lam``.

    Returns a list of (mu, num, den) with mu = lam + a vertical strip kept
    inside n rows and num/den = b^{|strip|} * V(mu)/V(lam), where V is the
    Vandermonde of the shifted parts lam_i - i.  Weights are exact and
    unnormalized: dividing by (b_num + b_den)^n / b_den^n makes them a
    probability row.
    """
    import array
    cdef int i
    if len(lam) > n:
        raise ValueError("diagram has more than %d rows" % n)
    padded_arr = array.array("l", list(lam) + [0] * (n - len(lam)))
    y_arr = array.array("l", [padded_arr[i] - i for i in range(n)])
    eps_arr = array.array("b", [0] * n)
    cdef long[::1] padded = padded_arr
    cdef long[::1] y = y_arr
    cdef char[::1] eps = eps_arr
    out = []
    _rec(0, n, padded, y, eps, 1, 1, b_num, b_den, out)
    return out
