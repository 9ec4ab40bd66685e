# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures, same results."""

from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t, int64_t

from ._pykernels import (
    PB_CLOSED,
    PB_IMAGE_IDENTITY,
    PB_MEET_CLOSED,
    PB_OPEN,
    PB_REGULAR_EPI,
)
from . import _pykernels

cdef enum:
    MAX_CARRIER = 20

cdef int C_REGULAR_EPI = 1
cdef int C_CLOSED = 2
cdef int C_OPEN = 4
cdef int C_IMAGE_IDENTITY = 8
cdef int C_MEET_CLOSED = 16


cdef inline int _lowbit_index(uint64_t x) nogil:
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i


def closure_table(int n, closed):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef uint64_t full = size - 1
    cdef unsigned char *is_closed = <unsigned char *>calloc(size, 1)
    cdef uint64_t *table = <uint64_t *>malloc(size * sizeof(uint64_t))
    cdef int64_t x
    cdef uint64_t acc, rest, low
    if is_closed == NULL or table == NULL:
        free(is_closed)
        free(table)
        raise MemoryError()
    try:
        for c in closed:
            is_closed[<uint64_t>c] = 1
        for x in range(<int64_t>full, -1, -1):
            if is_closed[x]:
                table[x] = x
                continue
            acc = full
            rest = full & ~(<uint64_t>x)
            while rest:
                low = rest & (~rest + 1)
                acc &= table[x | low]
                rest ^= low
            table[x] = acc
        return [table[i] for i in range(size)]
    finally:
        free(is_closed)
        free(table)


def image_table(image, int n):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef uint64_t *table = <uint64_t *>malloc(size * sizeof(uint64_t))
    cdef uint64_t *img = <uint64_t *>malloc((n + 1) * sizeof(uint64_t))
    cdef Py_ssize_t x
    cdef uint64_t low
    if table == NULL or img == NULL:
        free(table)
        free(img)
        raise MemoryError()
    try:
        for i in range(n):
            img[i] = (<uint64_t>1) << <int>image[i]
        table[0] = 0
        for x in range(1, size):
            low = (<uint64_t>x) & (~(<uint64_t>x) + 1)
            table[x] = table[x ^ low] | img[_lowbit_index(low)]
        return [table[i] for i in range(size)]
    finally:
        free(table)
        free(img)


def preimage_table(image, int m):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << m
    cdef uint64_t *table = <uint64_t *>malloc(size * sizeof(uint64_t))
    cdef uint64_t *fibre = <uint64_t *>calloc(m + 1, sizeof(uint64_t))
    cdef Py_ssize_t y
    cdef uint64_t low
    if table == NULL or fibre == NULL:
        free(table)
        free(fibre)
        raise MemoryError()
    try:
        for i, j in enumerate(image):
            fibre[<int>j] |= (<uint64_t>1) << <int>i
        table[0] = 0
        for y in range(1, size):
            low = (<uint64_t>y) & (~(<uint64_t>y) + 1)
            table[y] = table[y ^ low] | fibre[_lowbit_index(low)]
        return [table[i] for i in range(size)]
    finally:
        free(table)
        free(fibre)


cdef void _moore_rec(int64_t x, uint64_t full, uint64_t *fam, int size, list out):
    cdef uint64_t acc
    cdef int i
    if x < 0:
        out.append(tuple(sorted([fam[i] for i in range(size)])))
        return
    acc = full
    for i in range(size):
        if fam[i] & (<uint64_t>x) == <uint64_t>x:
            acc &= fam[i]
    if acc != <uint64_t>x:
        _moore_rec(x - 1, full, fam, size, out)
    fam[size] = x
    _moore_rec(x - 1, full, fam, size + 1, out)


def moore_families(int n):
    if n > 5:
        return _pykernels.moore_families(n)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t fam[64]
    cdef list out = []
    fam[0] = full
    _moore_rec(<int64_t>full - 1, full, fam, 1, out)
    return out


cdef inline uint64_t _permute(uint64_t mask, int *perm) nogil:
    cdef uint64_t out = 0
    cdef int i = 0
    while mask:
        if mask & 1:
            out |= (<uint64_t>1) << perm[i]
        mask >>= 1
        i += 1
    return out


cdef void _sort_u64(uint64_t *a, int n) nogil:
    cdef int i, j
    cdef uint64_t v
    for i in range(1, n):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] > v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


def canonical_family(int n, closed):
    """Lexicographically least sorted family over all point permutations."""
    if n > 8:
        return _pykernels.canonical_family(n, closed)
    cdef int m = len(closed)
    if m == 0:
        return tuple(closed)
    cdef uint64_t *src = <uint64_t *>malloc(m * sizeof(uint64_t))
    cdef uint64_t *cand = <uint64_t *>malloc(m * sizeof(uint64_t))
    cdef uint64_t *best = <uint64_t *>malloc(m * sizeof(uint64_t))
    cdef int perm[8]
    cdef int i, k, t, better
    if src == NULL or cand == NULL or best == NULL:
        free(src)
        free(cand)
        free(best)
        raise MemoryError()
    try:
        for i in range(m):
            src[i] = closed[i]
        # permutations in lexicographic order, starting from the identity
        for i in range(n):
            perm[i] = i
        for i in range(m):
            best[i] = _permute(src[i], perm)
        _sort_u64(best, m)
        while True:
            # next lexicographic permutation
            k = n - 2
            while k >= 0 and perm[k] >= perm[k + 1]:
                k -= 1
            if k < 0:
                break
            t = n - 1
            while perm[t] <= perm[k]:
                t -= 1
            perm[k], perm[t] = perm[t], perm[k]
            i = k + 1
            t = n - 1
            while i < t:
                perm[i], perm[t] = perm[t], perm[i]
                i += 1
                t -= 1
            for i in range(m):
                cand[i] = _permute(src[i], perm)
            _sort_u64(cand, m)
            better = 0
            for i in range(m):
                if cand[i] != best[i]:
                    better = cand[i] < best[i]
                    break
            if better:
                for i in range(m):
                    best[i] = cand[i]
        return tuple([best[i] for i in range(m)])
    finally:
        free(src)
        free(cand)
        free(best)


cdef struct Carrier:
    int d
    int first[64]
    int second[64]


cdef inline uint64_t _spread(uint64_t mask, int *part_of, int d) nogil:
    # points i of the carrier whose component part_of[i] lies in mask
    cdef uint64_t out = 0
    cdef int i
    for i in range(d):
        if (mask >> part_of[i]) & 1:
            out |= (<uint64_t>1) << i
    return out


cdef inline uint64_t _project(uint64_t mask, int *part_of, int d) nogil:
    cdef uint64_t out = 0
    cdef int i
    for i in range(d):
        if (mask >> i) & 1:
            out |= (<uint64_t>1) << part_of[i]
    return out


cdef int _flags(int n_e, uint64_t *ce, int m_e, int n_a, uint64_t *ca, int m_a,
                int *p_img, int *a_img, unsigned char *in_a, unsigned char *mark,
                uint64_t *fam) nogil:
    cdef Carrier cr
    cdef int e, a, i, j, nf, k
    cdef uint64_t full_d, full_a, x, y, pe, pulled, t
    cdef int flags
    cdef uint64_t pre1s[64]
    cdef uint64_t pre2s[64]
    cr.d = 0
    for e in range(n_e):
        for a in range(n_a):
            if p_img[e] == a_img[a]:
                cr.first[cr.d] = e
                cr.second[cr.d] = a
                cr.d += 1
    full_d = ((<uint64_t>1) << cr.d) - 1
    full_a = ((<uint64_t>1) << n_a) - 1
    for i in range(m_a):
        in_a[ca[i]] = 1
    for i in range(m_e):
        pre1s[i] = _spread(ce[i], cr.first, cr.d)
    for i in range(m_a):
        pre2s[i] = _spread(ca[i], cr.second, cr.d)
    nf = 0
    for i in range(m_e):
        for j in range(m_a):
            x = pre1s[i] & pre2s[j]
            if not mark[x]:
                mark[x] = 1
                fam[nf] = x
                nf += 1
    flags = C_CLOSED | C_OPEN | C_IMAGE_IDENTITY | C_MEET_CLOSED
    if _project(full_d, cr.second, cr.d) == full_a:
        flags |= C_REGULAR_EPI
        for t in range(full_a + 1):
            if not in_a[t] and mark[_spread(t, cr.second, cr.d)]:
                flags &= ~C_REGULAR_EPI
                break
    for i in range(nf):
        if not in_a[_project(fam[i], cr.second, cr.d)]:
            flags &= ~C_CLOSED
        if not in_a[full_a & ~_project(full_d & ~fam[i], cr.second, cr.d)]:
            flags &= ~C_OPEN
    for i in range(nf):
        for j in range(i + 1, nf):
            if not mark[fam[i] & fam[j]]:
                flags &= ~C_MEET_CLOSED
                break
        if not (flags & C_MEET_CLOSED):
            break
    for i in range(m_e):
        pe = 0
        for e in range(n_e):
            if (ce[i] >> e) & 1:
                pe |= (<uint64_t>1) << p_img[e]
        pulled = 0
        for a in range(n_a):
            if (pe >> a_img[a]) & 1:
                pulled |= (<uint64_t>1) << a
        for j in range(m_a):
            if _project(pre1s[i] & pre2s[j], cr.second, cr.d) != (pulled & ca[j]):
                flags &= ~C_IMAGE_IDENTITY
    # reset scratch
    for i in range(nf):
        mark[fam[i]] = 0
    for i in range(m_a):
        in_a[ca[i]] = 0
    return flags


cdef class _Scratch:
    cdef unsigned char *in_a
    cdef unsigned char *mark
    cdef uint64_t *fam
    cdef int bits

    def __cinit__(self, int bits):
        self.bits = bits
        self.in_a = <unsigned char *>calloc(256, 1)
        self.mark = <unsigned char *>calloc((<size_t>1) << bits, 1)
        self.fam = <uint64_t *>malloc(64 * 64 * sizeof(uint64_t))
        if self.in_a == NULL or self.mark == NULL or self.fam == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.in_a)
        free(self.mark)
        free(self.fam)


cdef _Scratch _scratch = None


cdef _Scratch _get_scratch():
    global _scratch
    if _scratch is None:
        _scratch = _Scratch(MAX_CARRIER)
    return _scratch


cdef int _fill(seq, uint64_t *out, int cap) except -1:
    cdef int i = 0
    for v in seq:
        if i >= cap:
            raise ValueError("sequence too long for the compiled kernel")
        out[i] = v
        i += 1
    return i


cdef int _fill_int(seq, int *out, int cap) except -1:
    cdef int i = 0
    for v in seq:
        if i >= cap:
            raise ValueError("sequence too long for the compiled kernel")
        out[i] = v
        i += 1
    return i


def pullback_flags(int n_e, closed_e, int n_a, closed_a, p_img, a_img):
    if n_a > 8 or n_e * n_a > MAX_CARRIER or len(closed_e) > 64 or len(closed_a) > 64:
        return _pykernels.pullback_flags(n_e, closed_e, n_a, closed_a, p_img, a_img)
    cdef uint64_t ce[64]
    cdef uint64_t ca[64]
    cdef int pi[64]
    cdef int ai[64]
    cdef int m_e = _fill(closed_e, ce, 64)
    cdef int m_a = _fill(closed_a, ca, 64)
    _fill_int(p_img, pi, 64)
    _fill_int(a_img, ai, 64)
    cdef _Scratch s = _get_scratch()
    return _flags(n_e, ce, m_e, n_a, ca, m_a, pi, ai, s.in_a, s.mark, s.fam)


def pullback_flags_all(int n_e, closed_e, p_img, cospans):
    cdef int acc = C_REGULAR_EPI | C_CLOSED | C_OPEN | C_IMAGE_IDENTITY | C_MEET_CLOSED
    cdef uint64_t ce[64]
    cdef uint64_t ca[64]
    cdef int pi[64]
    cdef int ai[64]
    cdef int m_e, m_a, n_a
    cdef _Scratch s = _get_scratch()
    if len(closed_e) > 64 or n_e > 64:
        return _pykernels.pullback_flags_all(n_e, closed_e, p_img, cospans)
    m_e = _fill(closed_e, ce, 64)
    _fill_int(p_img, pi, 64)
    for n_a_obj, closed_a, a_img in cospans:
        n_a = n_a_obj
        if n_a > 8 or n_e * n_a > MAX_CARRIER or len(closed_a) > 64:
            acc &= _pykernels.pullback_flags(n_e, closed_e, n_a, closed_a, p_img, a_img)
        else:
            m_a = _fill(closed_a, ca, 64)
            _fill_int(a_img, ai, 64)
            acc &= _flags(n_e, ce, m_e, n_a, ca, m_a, pi, ai, s.in_a, s.mark, s.fam)
        if not acc:
            break
    return acc


# descent-data search --------------------------------------------------------

cdef struct Search:
    int d
    int k
    int n_e
    int n_closed_e
    uint64_t full
    int n_cands
    uint64_t cands[1024]
    uint64_t e_part[1024]
    uint64_t sat[1024]
    unsigned char required[1024]
    uint64_t col_masks[256]
    uint64_t row_masks[64]
    int second[64]
    uint64_t fam[1024]
    int nfam
    int64_t valid
    int64_t bad
    int64_t nodes


cdef inline uint64_t _proj2(Search *s, uint64_t m) nogil:
    return _project(m, s.second, s.d)


cdef bint _xi_ok(Search *s, int idx) nogil:
    cdef uint64_t m = s.cands[idx]
    cdef uint64_t sat = s.sat[idx]
    cdef uint64_t acc = s.full
    cdef int i
    for i in range(s.nfam):
        if s.fam[i] & sat == sat:
            acc &= s.fam[i]
    return (s.e_part[idx] & s.col_masks[_proj2(s, acc)] & ~m) == 0


cdef bint _effective(Search *s, unsigned char *mark, unsigned char *seen) nogil:
    cdef int i, j, count
    cdef uint64_t t, g
    cdef bint ok = True
    for i in range(s.nfam):
        mark[s.fam[i]] = 1
    count = 0
    for t in range((<uint64_t>1) << s.k):
        if not mark[s.col_masks[t]]:
            continue
        for j in range(s.n_closed_e):
            g = s.row_masks[j] & s.col_masks[t]
            if not mark[g]:
                ok = False
                break
            if not seen[g]:
                seen[g] = 1
                count += 1
        if not ok:
            break
    if ok and count != s.nfam:
        ok = False
    for i in range(s.nfam):
        mark[s.fam[i]] = 0
    for t in range((<uint64_t>1) << s.k):
        for j in range(s.n_closed_e):
            seen[s.row_masks[j] & s.col_masks[t]] = 0
    return ok


cdef int _search_rec(Search *s, int i, unsigned char *mark, unsigned char *seen,
                     list found, bint collect, list witness) except -1:
    cdef uint64_t m, acc
    cdef int j
    cdef bint forced
    s.nodes += 1
    if i == s.n_cands:
        s.valid += 1
        if collect:
            found.append(tuple(sorted([s.fam[j] for j in range(s.nfam)])))
        if not _effective(s, mark, seen):
            s.bad += 1
            if not witness:
                witness.append(tuple(sorted([s.fam[j] for j in range(s.nfam)])))
        return 0
    m = s.cands[i]
    acc = s.full
    for j in range(s.nfam):
        if s.fam[j] & m == m:
            acc &= s.fam[j]
    forced = acc == m or s.required[i]
    if not forced:
        _search_rec(s, i + 1, mark, seen, found, collect, witness)
    s.fam[s.nfam] = m
    s.nfam += 1
    if _xi_ok(s, i):
        _search_rec(s, i + 1, mark, seen, found, collect, witness)
    s.nfam -= 1
    return 0


def descent_data_search(int n_e, closed_e, p_img, alpha0, bint collect=False):
    cdef int k = len(alpha0)
    cdef list first = []
    cdef list second = []
    for e in range(n_e):
        for a in range(k):
            if p_img[e] == alpha0[a]:
                first.append(e)
                second.append(a)
    cdef int d = len(first)
    if d > MAX_CARRIER or k > 8 or len(closed_e) > 64:
        return _pykernels.descent_data_search(n_e, closed_e, p_img, alpha0, collect)
    full = (1 << d) - 1
    full_a = (1 << k) - 1
    row = [0] * n_e
    col = [0] * k
    for i in range(d):
        row[first[i]] |= 1 << i
        col[second[i]] |= 1 << i

    def rows(emask):
        out = 0
        for e in range(n_e):
            if (emask >> e) & 1:
                out |= row[e]
        return out

    def cols(amask):
        out = 0
        for a in range(k):
            if (amask >> a) & 1:
                out |= col[a]
        return out

    def proj1(mask):
        out = 0
        for i in range(d):
            if (mask >> i) & 1:
                out |= 1 << first[i]
        return out

    def proj2(mask):
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
    cands = sorted(rects, key=lambda m: (-_pykernels.popcount(m), -m))
    if len(cands) > 1024:
        return _pykernels.descent_data_search(n_e, closed_e, p_img, alpha0, collect)

    cdef Search *s = <Search *>malloc(sizeof(Search))
    cdef unsigned char *mark = <unsigned char *>calloc((<size_t>1) << d, 1)
    cdef unsigned char *seen = <unsigned char *>calloc((<size_t>1) << d, 1)
    if s == NULL or mark == NULL or seen == NULL:
        free(s)
        free(mark)
        free(seen)
        raise MemoryError()
    cdef list found = []
    cdef list witness = []
    try:
        s.d = d
        s.k = k
        s.n_e = n_e
        s.n_closed_e = len(row_masks)
        s.full = full
        s.n_cands = len(cands)
        s.nfam = 0
        s.valid = 0
        s.bad = 0
        s.nodes = 0
        for i in range(d):
            s.second[i] = second[i]
        for t in range(1 << k):
            s.col_masks[t] = col_masks[t]
        for j in range(len(row_masks)):
            s.row_masks[j] = row_masks[j]
        for i, m in enumerate(cands):
            s.cands[i] = m
            s.e_part[i] = rows(cl_e[proj1(m)])
            s.sat[i] = col_masks[proj2(m)]
            s.required[i] = m in required
        _search_rec(s, 0, mark, seen, found, collect, witness)
        return (s.valid, s.bad, witness[0] if witness else None, s.nodes, found)
    finally:
        free(s)
        free(mark)
        free(seen)
