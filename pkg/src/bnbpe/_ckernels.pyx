# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled versions of the kernels in _pykernels.py."""

from cython.operator cimport dereference as deref
from libc.stdint cimport int64_t, uint8_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

DEF OTHER = 0
DEF IV = 1
DEF CONS = 2
DEF KAR = 3
DEF VIRAMA = 4
DEF NUKTA = 5
DEF MOD = 6
DEF JOINER = 7
DEF PUNCT = 8
DEF SPACE = 9

DEF S_NONE = 0
DEF S_IV = 1
DEF S_C = 2
DEF S_CN = 3
DEF S_V = 4
DEF S_VJ = 5
DEF S_K = 6
DEF S_M = 7
DEF S_OTHER = 8
DEF S_DEG = 9

DEF FLAG_SUFFIX = 1
DEF FLAG_MARK = 2


cdef inline int _extend(int state, int cls) noexcept nogil:
    if state == S_C:
        if cls == NUKTA:
            return S_CN
        if cls == VIRAMA:
            return S_V
        if cls == KAR:
            return S_K
        if cls == MOD:
            return S_M
    elif state == S_CN:
        if cls == VIRAMA:
            return S_V
        if cls == KAR:
            return S_K
        if cls == MOD:
            return S_M
    elif state == S_V:
        if cls == JOINER:
            return S_VJ
    elif state == S_IV or state == S_K or state == S_M:
        if cls == MOD:
            return S_M
    return -1


def segment(str text, const uint8_t[:] table, wide):
    cdef list out = []
    cdef Py_ssize_t i, n = len(text)
    cdef int state = S_NONE
    cdef int cls, nxt
    cdef bint deg = False
    cdef Py_UCS4 cp
    for i in range(n):
        cp = text[i]
        if cp < 0x10000:
            cls = table[cp]
        else:
            cls = wide(<long>cp)
        if cls == CONS and (state == S_V or state == S_VJ):
            state = S_C
            continue
        if KAR <= cls <= JOINER:
            nxt = _extend(state, cls)
            if nxt >= 0:
                state = nxt
            else:
                state = S_DEG
                deg = True
            continue
        if state != S_NONE:
            out.append((i << 1) | (deg or state == S_V or state == S_VJ))
        deg = False
        if cls == SPACE or cls == PUNCT:
            out.append((i + 1) << 1)
            state = S_NONE
        elif cls == IV:
            state = S_IV
        elif cls == CONS:
            state = S_C
        else:
            state = S_OTHER
    if state != S_NONE:
        out.append((n << 1) | (deg or state == S_V or state == S_VJ))
    return out


cdef class MergeTable:
    cdef unordered_map[int64_t, int] _pairs
    cdef vector[uint8_t] _flags
    cdef readonly int merge_base
    cdef readonly bint bengali

    def __init__(self, pairs, flags, int merge_base, bengali):
        cdef int64_t key
        for key, rank in pairs.items():
            self._pairs[key] = rank
        for b in bytes(flags):
            self._flags.push_back(b)
        self.merge_base = merge_base
        self.bengali = bool(bengali)

    def apply(self, ids):
        cdef vector[int] syms
        cdef Py_ssize_t i, last, best_i, k
        cdef int best, r, left, right
        cdef unordered_map[int64_t, int].iterator it
        for x in ids:
            syms.push_back(x)
        while syms.size() > 1:
            last = syms.size() - 1
            best = -1
            best_i = -1
            for i in range(last):
                left = syms[i]
                right = syms[i + 1]
                it = self._pairs.find((<int64_t>left << 32) | right)
                if it == self._pairs.end():
                    continue
                r = deref(it).second
                if best >= 0 and r >= best:
                    continue
                if self._flags[left] & FLAG_MARK:
                    continue
                if (self.bengali and i + 1 == last
                        and self._flags[right] & FLAG_SUFFIX
                        and not (self._flags[left] & FLAG_SUFFIX)):
                    continue
                best = r
                best_i = i
            if best_i < 0:
                break
            syms[best_i] = self.merge_base + best
            syms.erase(syms.begin() + best_i + 1)
        return [syms[k] for k in range(<Py_ssize_t>syms.size())]
