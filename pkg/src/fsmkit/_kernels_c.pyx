# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled finite-automaton kernels (state sets as 64-bit masks).

Mirrors ``_kernels_py`` exactly; limited to machines with at most 64 states.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"
MAX_STATES = 64


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _lowbit(uint64_t m) nogil:
    return __builtin_ctzll(m)


cdef class CompiledNfa:
    cdef public int n
    cdef public int nsym
    cdef uint64_t _finals
    cdef uint64_t _start
    cdef uint64_t *_closure
    cdef uint64_t *_step   # n * nsym, row-major

    def __cinit__(self, int n, int nsym, int start, finals_mask, eps, delta):
        if n > 64:
            raise ValueError("compiled kernel supports at most 64 states")
        self.n = n
        self.nsym = nsym
        self._closure = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
        self._step = <uint64_t *> malloc(max(n * nsym, 1) * sizeof(uint64_t))
        if self._closure == NULL or self._step == NULL:
            raise MemoryError()
        cdef uint64_t *epsv = <uint64_t *> malloc(max(n, 1) * sizeof(uint64_t))
        cdef int i, a
        cdef uint64_t seen, prev, m
        try:
            for i in range(n):
                epsv[i] = <uint64_t> eps[i]
            for i in range(n):
                seen = (<uint64_t> 1) << i
                prev = 0
                while seen != prev:
                    prev = seen
                    m = seen
                    while m:
                        seen |= epsv[_lowbit(m)]
                        m &= m - 1
                self._closure[i] = seen
        finally:
            free(epsv)
        for i in range(n):
            row = delta[i]
            for a in range(nsym):
                self._step[i * nsym + a] = self._close(<uint64_t> row[a])
        self._finals = <uint64_t> finals_mask
        self._start = self._closure[start]

    def __dealloc__(self):
        free(self._closure)
        free(self._step)

    @property
    def start(self):
        return self._start

    @property
    def finals(self):
        return self._finals

    cdef inline uint64_t _close(self, uint64_t mask):
        cdef uint64_t out = 0
        while mask:
            out |= self._closure[_lowbit(mask)]
            mask &= mask - 1
        return out

    cdef inline uint64_t _stepm(self, uint64_t mask, int a):
        cdef uint64_t out = 0
        while mask:
            out |= self._step[_lowbit(mask) * self.nsym + a]
            mask &= mask - 1
        return out

    def closure(self, mask):
        return self._close(<uint64_t> mask)

    def step(self, mask, int a):
        return self._stepm(<uint64_t> mask, a)

    cdef uint64_t _run(self, word):
        cdef uint64_t mask = self._start
        cdef int a
        for a in word:
            if mask == 0:
                break
            mask = self._stepm(mask, a)
        return mask

    def run(self, word):
        return self._run(word)

    def accepts(self, word):
        return (self._run(word) & self._finals) != 0

    def accepts_many(self, words):
        return [(self._run(w) & self._finals) != 0 for w in words]

    def determinize(self):
        cdef dict index = {self._start: 0}
        cdef list masks = [self._start]
        cdef list table = []
        cdef Py_ssize_t k = 0
        cdef int a
        cdef uint64_t mask, nxt
        while k < len(masks):
            mask = masks[k]
            row = []
            for a in range(self.nsym):
                nxt = self._stepm(mask, a)
                j = index.get(nxt)
                if j is None:
                    j = len(masks)
                    index[nxt] = j
                    masks.append(nxt)
                row.append(j)
            table.append(row)
            k += 1
        return masks, table
