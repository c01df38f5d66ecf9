"""Pure-Python kernels. ``_ckernels.pyx`` mirrors this module line for line;
keep the two in sync."""

# CodepointClass values (see grapheme.py)
OTHER, IV, CONS, KAR, VIRAMA, NUKTA, MOD, JOINER, PUNCT, SPACE = range(10)

# segmentation states
S_NONE, S_IV, S_C, S_CN, S_V, S_VJ, S_K, S_M, S_OTHER, S_DEG = range(10)

# legal (state, class) -> state transitions for combining marks
_EXTEND = {
    (S_C, NUKTA): S_CN,
    (S_C, VIRAMA): S_V,
    (S_C, KAR): S_K,
    (S_C, MOD): S_M,
    (S_CN, VIRAMA): S_V,
    (S_CN, KAR): S_K,
    (S_CN, MOD): S_M,
    (S_V, JOINER): S_VJ,
    (S_IV, MOD): S_M,
    (S_K, MOD): S_M,
    (S_M, MOD): S_M,
}

FLAG_SUFFIX = 1
FLAG_MARK = 2


def segment(text, table, wide):
    out = []
    state = S_NONE
    deg = False
    for i, ch in enumerate(text):
        cp = ord(ch)
        cls = table[cp] if cp < 0x10000 else wide(cp)
        if cls == CONS and (state == S_V or state == S_VJ):
            state = S_C
            continue
        if KAR <= cls <= JOINER:
            nxt = _EXTEND.get((state, cls))
            if nxt is not None:
                state = nxt
            else:
                # no legal base: glue on (or open a cluster) as degenerate
                state = S_DEG
                deg = True
            continue
        # cls starts a new cluster; close the open one first
        if state != S_NONE:
            out.append((i << 1) | (deg or state == S_V or state == S_VJ))
        deg = False
        if cls == SPACE or cls == PUNCT:
            out.append(((i + 1) << 1))
            state = S_NONE
        elif cls == IV:
            state = S_IV
        elif cls == CONS:
            state = S_C
        else:
            state = S_OTHER
    if state != S_NONE:
        out.append((len(text) << 1) | (deg or state == S_V or state == S_VJ))
    return out


class MergeTable:
    """Rank-ordered merge application over vocabulary ids.

    ``pairs`` maps ``(left << 32) | right`` to merge rank; the merged symbol of
    rank ``r`` has id ``merge_base + r``. ``flags`` holds one byte per id
    (FLAG_SUFFIX, FLAG_MARK).
    """

    def __init__(self, pairs, flags, merge_base, bengali):
        self.pairs = dict(pairs)
        self.flags = bytes(flags)
        self.merge_base = merge_base
        self.bengali = bool(bengali)

    def apply(self, ids):
        syms = list(ids)
        pairs = self.pairs
        flags = self.flags
        bengali = self.bengali
        while len(syms) > 1:
            last = len(syms) - 1
            best = -1
            best_i = -1
            for i in range(last):
                left = syms[i]
                right = syms[i + 1]
                r = pairs.get((left << 32) | right)
                if r is None or (best >= 0 and r >= best):
                    continue
                if flags[left] & FLAG_MARK:
                    continue
                if (
                    bengali
                    and i + 1 == last
                    and flags[right] & FLAG_SUFFIX
                    and not flags[left] & FLAG_SUFFIX
                ):
                    continue
                best = r
                best_i = i
            if best_i < 0:
                break
            syms[best_i : best_i + 2] = [self.merge_base + best]
        return syms
