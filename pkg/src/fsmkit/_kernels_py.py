"""Pure-Python finite-automaton kernels.

State sets are bitmasks (Python ints). Same interface as the compiled
``_kernels_c`` module; this one has no limit on the number of states.
"""

BACKEND = "python"
MAX_STATES = None


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CompiledNfa:
    """An ε-NFA over integer states ``0..n-1`` and symbols ``0..nsym-1``.

    ``eps[i]`` is the mask of ε-successors of ``i``; ``delta[i][a]`` the
    mask of ``a``-successors.
    """

    def __init__(self, n, nsym, start, finals_mask, eps, delta):
        self.n = n
        self.nsym = nsym
        self.finals = finals_mask
        closure = []
        for i in range(n):
            seen = 1 << i
            todo = [i]
            while todo:
                j = todo.pop()
                new = eps[j] & ~seen
                seen |= new
                todo.extend(_bits(new))
            closure.append(seen)
        self._closure = closure
        # successors already ε-closed
        self._step = [
            [self.closure(delta[i][a]) for a in range(nsym)] for i in range(n)
        ]
        self.start = closure[start]

    def closure(self, mask):
        out = 0
        for i in _bits(mask):
            out |= self._closure[i]
        return out

    def step(self, mask, a):
        out = 0
        step = self._step
        for i in _bits(mask):
            out |= step[i][a]
        return out

    def run(self, word):
        mask = self.start
        for a in word:
            if not mask:
                break
            mask = self.step(mask, a)
        return mask

    def accepts(self, word):
        return bool(self.run(word) & self.finals)

    def accepts_many(self, words):
        return [self.accepts(w) for w in words]

    def determinize(self):
        """Subset construction over reachable ε-closed sets.

        Returns ``(masks, table)``: ``masks[k]`` is the member set of DFA
        state ``k`` (state 0 is the start) and ``table[k][a]`` its successor.
        """
        index = {self.start: 0}
        masks = [self.start]
        table = []
        k = 0
        while k < len(masks):
            mask = masks[k]
            row = []
            for a in range(self.nsym):
                nxt = self.step(mask, a)
                j = index.get(nxt)
                if j is None:
                    j = index[nxt] = len(masks)
                    masks.append(nxt)
                row.append(j)
            table.append(row)
            k += 1
        return masks, table
