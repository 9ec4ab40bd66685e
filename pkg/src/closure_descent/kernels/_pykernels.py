"""Pure-Python reference kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results. Subsets are ``int`` bit masks over point indices,
families are sequences of masks.
"""

from __future__ import annotations

from itertools import permutations

# Flags returned by ``pullback_flags``.
PB_REGULAR_EPI = 1
PB_CLOSED = 2
PB_OPEN = 4
PB_IMAGE_IDENTITY = 8
PB_MEET_CLOSED = 16


def popcount(x: int) -> int:
    return bin(x).count("1")


def closure_table(n: int, closed) -> list[int]:
    """Closure of every subset of an ``n``-point space, indexed by mask.

    Uses ``cl(X) = X`` for closed ``X`` and otherwise the meet of
    ``cl(X | {i})`` over the points ``i`` outside ``X``.
    """
    size = 1 << n
    full = size - 1
    is_closed = bytearray(size)
    for c in closed:
        is_closed[c] = 1
    table = [full] * size
    for x in range(full, -1, -1):
        if is_closed[x]:
            table[x] = x
            continue
        acc = full
        rest = full & ~x
        while rest:
            low = rest & -rest
            acc &= table[x | low]
            rest ^= low
        table[x] = acc
    return table


def image_table(image, n: int) -> list[int]:
    """Direct image of every subset of the ``n``-point domain."""
    table = [0] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        table[x] = table[x ^ low] | (1 << image[low.bit_length() - 1])
    return table


def preimage_table(image, m: int) -> list[int]:
    """Preimage of every subset of the ``m``-point codomain."""
    fibre = [0] * m
    for i, j in enumerate(image):
        fibre[j] |= 1 << i
    table = [0] * (1 << m)
    for y in range(1, 1 << m):
        low = y & -y
        table[y] = table[y ^ low] | fibre[low.bit_length() - 1]
    return table


def moore_families(n: int) -> list[tuple[int, ...]]:
    """All Moore families on ``n`` points, each as a sorted tuple of masks.

    Subsets are decided in descending mask order, so every superset of the
    current subset is already decided; a subset that is the meet of chosen
    members is forced in, any other subset branches (exclude first).
    """
    full = (1 << n) - 1
    out: list[tuple[int, ...]] = []
    fam = [full]

    def rec(x: int) -> None:
        if x < 0:
            out.append(tuple(sorted(fam)))
            return
        acc = full
        for c in fam:
            if c & x == x:
                acc &= c
        if acc != x:
            rec(x - 1)
        fam.append(x)
        rec(x - 1)
        fam.pop()

    rec(full - 1)
    return out


def _permute_mask(mask: int, perm) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


def canonical_family(n: int, closed) -> tuple[int, ...]:
    """Lexicographically least sorted family over all point permutations."""
    best = None
    for perm in permutations(range(n)):
        cand = tuple(sorted(_permute_mask(c, perm) for c in closed))
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(closed)


def pullback_flags(n_e: int, closed_e, n_a: int, closed_a, p_img, a_img) -> int:
    """Properties of the second projection of the pullback of ``p`` and ``a``.

    The pullback carrier is built explicitly (pairs in lexicographic order)
    with the family ``{pi1^-1(E') & pi2^-1(A')}``; the projection is then
    tested for being a regular epi, a closed map and an open map, and the
    image identity ``pi2(pi1^-1 E' & pi2^-1 A') = a^-1(p(E')) & A'`` is
    checked for every pair of closed sets.
    """
    first: list[int] = []
    second: list[int] = []
    for e in range(n_e):
        for a in range(n_a):
            if p_img[e] == a_img[a]:
                first.append(e)
                second.append(a)
    d = len(first)
    full_d = (1 << d) - 1
    full_a = (1 << n_a) - 1

    def pre1(mask: int) -> int:
        out = 0
        for i in range(d):
            if (mask >> first[i]) & 1:
                out |= 1 << i
        return out

    def pre2(mask: int) -> int:
        out = 0
        for i in range(d):
            if (mask >> second[i]) & 1:
                out |= 1 << i
        return out

    def proj2(mask: int) -> int:
        out = 0
        for i in range(d):
            if (mask >> i) & 1:
                out |= 1 << second[i]
        return out

    in_a = bytearray(1 << n_a)
    for c in closed_a:
        in_a[c] = 1
    pre1s = [pre1(c) for c in closed_e]
    pre2s = [pre2(c) for c in closed_a]
    family = {x & y for x in pre1s for y in pre2s}

    flags = PB_CLOSED | PB_OPEN | PB_IMAGE_IDENTITY | PB_MEET_CLOSED
    if proj2(full_d) == full_a:
        flags |= PB_REGULAR_EPI
        for t in range(1 << n_a):
            if not in_a[t] and pre2(t) in family:
                flags &= ~PB_REGULAR_EPI
                break
    for k in family:
        if not in_a[proj2(k)]:
            flags &= ~PB_CLOSED
        if not in_a[full_a & ~proj2(full_d & ~k)]:
            flags &= ~PB_OPEN
    for x in family:
        for y in family:
            if (x & y) not in family:
                flags &= ~PB_MEET_CLOSED
                break
        if not flags & PB_MEET_CLOSED:
            break
    p_image = image_table(p_img, n_e)
    for ce, x in zip(closed_e, pre1s):
        pe = p_image[ce]
        pulled = 0
        for a in range(n_a):
            if (pe >> a_img[a]) & 1:
                pulled |= 1 << a
        for ca, y in zip(closed_a, pre2s):
            if proj2(x & y) != (pulled & ca):
                flags &= ~PB_IMAGE_IDENTITY
    return flags


def pullback_flags_all(n_e: int, closed_e, p_img, cospans) -> int:
    """Meet of :func:`pullback_flags` over ``cospans``, a sequence of
    ``(n_a, closed_a, a_img)`` triples; all flags set when it is empty."""
    acc = PB_REGULAR_EPI | PB_CLOSED | PB_OPEN | PB_IMAGE_IDENTITY | PB_MEET_CLOSED
    for n_a, closed_a, a_img in cospans:
        acc &= pullback_flags(n_e, closed_e, n_a, closed_a, p_img, a_img)
        if not acc:
            break
    return acc


def descent_data_search(n_e: int, closed_e, p_img, alpha0, collect: bool = False):
    """Search every descent datum over ``p`` whose carrier is ``E x_B A0``.

    The carrier is the set of pairs ``(e, a)`` with ``p(e) == alpha0[a]``; the
    action is the canonical ``xi(e, (e', a)) = (e, a)``. A valid datum's closed
    sets are rectangles ``pi1^-1(E') & pi2^-1(T)`` with ``E'`` closed in ``E``,
    so only rectangles are candidates. Candidates are decided by decreasing
    size; continuity of the action at a member only involves its supersets,
    so it is tested when the member is added.

    Returns ``(valid, non_effective, witness, nodes, families)`` where
    ``witness`` is the first non-effective family (or ``None``) and
    ``families`` lists every valid family when ``collect`` is set.
    """
    k = len(alpha0)
    first: list[int] = []
    second: list[int] = []
    for e in range(n_e):
        for a in range(k):
            if p_img[e] == alpha0[a]:
                first.append(e)
                second.append(a)
    d = len(first)
    full = (1 << d) - 1
    full_a = (1 << k) - 1
    row = [0] * n_e
    col = [0] * k
    for i in range(d):
        row[first[i]] |= 1 << i
        col[second[i]] |= 1 << i

    def rows(emask: int) -> int:
        out = 0
        for e in range(n_e):
            if (emask >> e) & 1:
                out |= row[e]
        return out

    def cols(amask: int) -> int:
        out = 0
        for a in range(k):
            if (amask >> a) & 1:
                out |= col[a]
        return out

    def proj1(mask: int) -> int:
        out = 0
        for i in range(d):
            if (mask >> i) & 1:
                out |= 1 << first[i]
        return out

    def proj2(mask: int) -> int:
        out = 0
        for i in range(d):
            if (mask >> i) & 1:
                out |= 1 << second[i]
        return out

    cl_e = closure_table(n_e, closed_e)
    col_masks = [cols(t) for t in range(1 << k)]
    row_masks = [rows(c) for c in closed_e]
    rects = {r & c for r in row_masks for c in col_masks}
    required = {rows(c) & col_masks[full_a] for c in closed_e}
    cands = sorted(rects, key=lambda m: (-popcount(m), -m))
    n_cands = len(cands)
    e_part = [rows(cl_e[proj1(m)]) for m in cands]
    sat = [col_masks[proj2(m)] for m in cands]

    fam: list[int] = []
    result = [0, 0, None, 0]
    found: list[tuple[int, ...]] = []

    def xi_ok(idx: int) -> bool:
        m = cands[idx]
        s = sat[idx]
        acc = full
        for c in fam:
            if c & s == s:
                acc &= c
        return e_part[idx] & col_masks[proj2(acc)] & ~m == 0

    def effective() -> bool:
        members = set(fam)
        quotient = [t for t in range(1 << k) if col_masks[t] in members]
        generated = {r & col_masks[t] for r in row_masks for t in quotient}
        return generated == members

    def rec(i: int) -> None:
        result[3] += 1
        if i == n_cands:
            result[0] += 1
            if collect:
                found.append(tuple(sorted(fam)))
            if not effective():
                result[1] += 1
                if result[2] is None:
                    result[2] = tuple(sorted(fam))
            return
        m = cands[i]
        acc = full
        for c in fam:
            if c & m == m:
                acc &= c
        forced = acc == m or m in required
        if not forced:
            rec(i + 1)
        fam.append(m)
        if xi_ok(i):
            rec(i + 1)
        fam.pop()

    rec(0)
    return result[0], result[1], result[2], result[3], found
