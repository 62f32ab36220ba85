# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled peel kernel.

Same search as ``_peel_py`` but over dense bit slices: for dimension ``d``
with other dimensions ``o0 < o1 < o2``, row ``(a, b, c)`` is ``w[d]`` words
holding the ``d``-elements ``e`` with the tuple in ``Y``.  Nodes live in a
preallocated frame stack, one frame ``U | V | S`` per recursion depth.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, malloc, free
from libc.string cimport memcpy

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

# dense slices beyond this many words are refused; callers fall back
MAX_WORDS = 1 << 25


cdef inline int nwords(int n) nogil:
    return (n + 63) >> 6


cdef class Kernel:
    cdef int n[4]
    cdef int w[4]
    cdef int off[4]
    cdef int tw
    cdef int others[4][3]
    cdef size_t stride_a[4]
    cdef size_t stride_b[4]
    cdef uint64_t* view[4]
    cdef uint64_t* full
    cdef uint64_t* frames
    cdef int max_depth
    cdef int* lists[3]
    cdef uint64_t* acc
    cdef uint64_t* mask
    cdef int msupp[4]
    cdef list out

    def __cinit__(self, shape, quads):
        cdef int d, i, j, k
        cdef size_t rows, total = 0, pos
        cdef int q[4]
        for d in range(4):
            self.view[d] = NULL
        self.full = NULL
        self.frames = NULL
        self.acc = NULL
        self.mask = NULL
        for j in range(3):
            self.lists[j] = NULL

        self.tw = 0
        for d in range(4):
            self.n[d] = shape[d]
            self.w[d] = nwords(self.n[d])
            self.off[d] = self.tw
            self.tw += self.w[d]
            k = 0
            for i in range(4):
                if i != d:
                    self.others[d][k] = i
                    k += 1
        for d in range(4):
            rows = 1
            for j in range(3):
                rows *= <size_t>self.n[self.others[d][j]]
            total += rows * self.w[d]
        if total > MAX_WORDS:
            raise MemoryError(f"dense slices would need {total} words")

        for d in range(4):
            rows = 1
            for j in range(3):
                rows *= <size_t>self.n[self.others[d][j]]
            self.view[d] = <uint64_t*>calloc(max(rows * self.w[d], 1), sizeof(uint64_t))
            self.stride_b[d] = <size_t>self.n[self.others[d][2]] * self.w[d]
            self.stride_a[d] = <size_t>self.n[self.others[d][1]] * self.stride_b[d]
            if self.view[d] == NULL:
                raise MemoryError()

        for quad in quads:
            for d in range(4):
                q[d] = quad[d]
            for d in range(4):
                pos = (q[self.others[d][0]] * self.stride_a[d]
                       + q[self.others[d][1]] * self.stride_b[d]
                       + q[self.others[d][2]] * self.w[d])
                self.view[d][pos + (q[d] >> 6)] |= (<uint64_t>1) << (q[d] & 63)

        self.full = <uint64_t*>calloc(max(self.tw, 1), sizeof(uint64_t))
        for d in range(4):
            for i in range(self.n[d]):
                self.full[self.off[d] + (i >> 6)] |= (<uint64_t>1) << (i & 63)
        self.max_depth = self.n[0] + self.n[1] + self.n[2] + self.n[3] + 2
        self.frames = <uint64_t*>malloc(max(<size_t>self.max_depth * 3 * self.tw, 1) * sizeof(uint64_t))
        k = max(max(self.n[0], self.n[1]), max(self.n[2], self.n[3]))
        for j in range(3):
            self.lists[j] = <int*>malloc(max(k, 1) * sizeof(int))
        self.acc = <uint64_t*>malloc(max(self.tw, 1) * sizeof(uint64_t))
        self.mask = <uint64_t*>malloc(max(self.tw, 1) * sizeof(uint64_t))
        if self.frames == NULL or self.acc == NULL or self.mask == NULL or self.full == NULL:
            raise MemoryError()

    def __dealloc__(self):
        cdef int d, j
        for d in range(4):
            free(self.view[d])
        for j in range(3):
            free(self.lists[j])
        free(self.full)
        free(self.frames)
        free(self.acc)
        free(self.mask)

    cdef int to_list(self, uint64_t* b, int d, int* out) nogil:
        cdef int k, cnt = 0
        cdef uint64_t x
        for k in range(self.w[d]):
            x = b[k]
            while x:
                out[cnt] = (k << 6) + ctz64(x)
                cnt += 1
                x &= x - 1
        return cnt

    cdef bint connected(self, int d, int na, int nb, int nc, uint64_t* mask) nogil:
        """AND the ``d``-rows over lists[0] × lists[1] × lists[2] into acc.

        Returns False (with acc undefined on mask bits) once acc ∧ mask is empty.
        """
        cdef int W = self.w[d], i, j, m, k
        cdef uint64_t live
        cdef uint64_t* acc = self.acc
        cdef uint64_t* pa
        cdef uint64_t* pb
        cdef uint64_t* row
        cdef int* la = self.lists[0]
        cdef int* lb = self.lists[1]
        cdef int* lc = self.lists[2]
        memcpy(acc, self.full + self.off[d], W * sizeof(uint64_t))
        for i in range(na):
            pa = self.view[d] + la[i] * self.stride_a[d]
            for j in range(nb):
                pb = pa + lb[j] * self.stride_b[d]
                for m in range(nc):
                    row = pb + <size_t>lc[m] * W
                    live = 0
                    for k in range(W):
                        acc[k] &= row[k]
                        live |= acc[k] & mask[k]
                    if live == 0:
                        return False
        return True

    cdef void emit(self, uint64_t* U):
        cdef int d, k, cnt
        cdef int* buf = self.lists[0]
        concept = []
        for d in range(4):
            cnt = self.to_list(U + self.off[d], d, buf)
            concept.append(tuple([buf[k] for k in range(cnt)]))
        self.out.append(tuple(concept))

    cdef int tighten(self, uint64_t* fr) nogil:
        """Threshold, closedness and absorption at one node; 0 means prune."""
        cdef uint64_t* U = fr
        cdef uint64_t* V = fr + self.tw
        cdef uint64_t* S = fr + 2 * self.tw
        cdef int d, j, k, o, W, cnt, cnts[3]
        cdef uint64_t any_mask, a
        for d in range(4):
            cnt = 0
            for k in range(self.off[d], self.off[d] + self.w[d]):
                cnt += popcount64(U[k] | V[k])
            if cnt < self.msupp[d]:
                return 0
        for d in range(4):
            W = self.w[d]
            any_mask = 0
            for k in range(W):
                self.mask[k] = V[self.off[d] + k] | S[self.off[d] + k]
                any_mask |= self.mask[k]
            if any_mask == 0:
                continue
            for j in range(3):
                o = self.others[d][j]
                for k in range(self.w[o]):
                    self.acc[k] = U[self.off[o] + k] | V[self.off[o] + k]
                cnts[j] = self.to_list(self.acc, o, self.lists[j])
            if not self.connected(d, cnts[0], cnts[1], cnts[2], self.mask):
                continue
            for k in range(W):
                if self.acc[k] & S[self.off[d] + k]:
                    return 0
            for k in range(W):
                a = self.acc[k] & V[self.off[d] + k]
                U[self.off[d] + k] |= a
                V[self.off[d] + k] &= ~a
        return 1

    cdef int pick_dimension(self, uint64_t* fr) nogil:
        """First dimension with candidates, preferring one whose U is empty."""
        cdef int d, k, fallback = -1
        cdef uint64_t has_u, has_v
        for d in range(4):
            has_u = 0
            has_v = 0
            for k in range(self.off[d], self.off[d] + self.w[d]):
                has_u |= fr[k]
                has_v |= fr[self.tw + k]
            if has_v:
                if not has_u:
                    return d
                if fallback < 0:
                    fallback = d
        return fallback

    cdef void peel(self, int depth):
        cdef uint64_t* fr = self.frames + <size_t>depth * 3 * self.tw
        cdef uint64_t* child
        cdef uint64_t* cU
        cdef uint64_t* cV
        cdef uint64_t* cS
        cdef int d, d2, j, k, o, e, W, cnts[3]
        cdef uint64_t bit, any_mask
        cdef int tw = self.tw
        while True:
            with nogil:
                if not self.tighten(fr):
                    return
                d = self.pick_dimension(fr)
                if d >= 0:
                    for k in range(self.off[d], self.off[d] + self.w[d]):
                        if fr[tw + k]:
                            e = ((k - self.off[d]) << 6) + ctz64(fr[tw + k])
                            break
            if d < 0:
                self.emit(fr)
                return
            with nogil:
                bit = (<uint64_t>1) << (e & 63)
                k = self.off[d] + (e >> 6)
                child = fr + 3 * tw
                memcpy(child, fr, 3 * tw * sizeof(uint64_t))
                cU = child
                cV = child + tw
                cS = child + 2 * tw
                cU[k] |= bit
                cV[k] &= ~bit
                for d2 in range(4):
                    if d2 == d:
                        continue
                    W = self.w[d2]
                    any_mask = 0
                    for j in range(W):
                        self.mask[j] = cV[self.off[d2] + j] | cS[self.off[d2] + j]
                        any_mask |= self.mask[j]
                    if any_mask == 0:
                        continue
                    for j in range(3):
                        o = self.others[d2][j]
                        if o == d:
                            self.lists[j][0] = e
                            cnts[j] = 1
                        else:
                            cnts[j] = self.to_list(cU + self.off[o], o, self.lists[j])
                    if cnts[0] == 0 or cnts[1] == 0 or cnts[2] == 0:
                        continue
                    if self.connected(d2, cnts[0], cnts[1], cnts[2], self.mask):
                        for j in range(W):
                            cV[self.off[d2] + j] &= self.acc[j]
                            cS[self.off[d2] + j] &= self.acc[j]
                    else:
                        for j in range(W):
                            cV[self.off[d2] + j] = 0
                            cS[self.off[d2] + j] = 0
            self.peel(depth + 1)
            fr[tw + k] &= ~bit
            fr[2 * tw + k] |= bit

    def run(self, node, minsupp):
        """All maximal boxes below ``node`` as 4-tuples of index tuples."""
        cdef int d, k, part
        cdef uint64_t* fr = self.frames
        for d in range(4):
            self.msupp[d] = minsupp[d]
        for part in range(3):
            for d in range(4):
                mask = int(node[part][d])
                for k in range(self.w[d]):
                    fr[part * self.tw + self.off[d] + k] = <uint64_t>(mask & 0xFFFFFFFFFFFFFFFF)
                    mask >>= 64
        self.out = []
        self.peel(0)
        out, self.out = self.out, None
        return out
