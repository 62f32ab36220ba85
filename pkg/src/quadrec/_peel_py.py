"""Pure-Python peel kernel.

Bitsets are Python ints.  For each dimension ``d`` the relation is sliced
into a dict mapping the indices of the three other dimensions (ascending
dimension order) to the bitmask of ``d``-elements completing the tuple.

A search node is ``(U, V, S)``: per-dimension bitmasks of elements that are
in every pattern of the subtree, candidates, and excluded elements.
Invariant: every candidate is connected to ``U``.  A pattern is emitted when
no candidates remain and no excluded element is connected to it, which makes
every maximal box come out exactly once.
"""

from itertools import product

OTHERS = tuple(tuple(e for e in range(4) if e != d) for d in range(4))


def bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _pick_dimension(U, V):
    """First dimension with candidates, preferring one with an empty ``U``.

    Connection to a box with an empty side is vacuous, so filling every
    dimension of ``U`` first is what lets branching prune anything.
    """
    for d in range(4):
        if V[d] and not U[d]:
            return d
    for d in range(4):
        if V[d]:
            return d
    return None


def root(shape):
    """Search node covering the whole relation."""
    return ((0, 0, 0, 0), tuple((1 << n) - 1 for n in shape), (0, 0, 0, 0))


class Kernel:
    """Enumerates maximal boxes of a 4-adic relation below a search node."""

    def __init__(self, shape, quads):
        self.shape = tuple(shape)
        self.full = tuple((1 << n) - 1 for n in self.shape)
        self.slices = tuple({} for _ in range(4))
        for q in quads:
            for d in range(4):
                key = tuple(q[o] for o in OTHERS[d])
                sl = self.slices[d]
                sl[key] = sl.get(key, 0) | (1 << q[d])


    def _connected(self, d, lists, mask):
        """AND of the ``d``-slices over the product of ``lists``.

        Stops as soon as nothing in ``mask`` survives.
        """
        acc = self.full[d]
        sl = self.slices[d]
        for key in product(*lists):
            acc &= sl.get(key, 0)
            if not acc & mask:
                return 0
        return acc

    def tighten(self, node, minsupp):
        """Absorb forced candidates; None if the subtree holds no output."""
        U, V, S = list(node[0]), list(node[1]), node[2]
        for d in range(4):
            if (U[d] | V[d]).bit_count() < minsupp[d]:
                return None
        for d in range(4):
            mask = V[d] | S[d]
            if not mask:
                continue
            lists = [bits(U[o] | V[o]) for o in OTHERS[d]]
            acc = self._connected(d, lists, mask)
            if acc & S[d]:
                return None
            absorbed = acc & V[d]
            U[d] |= absorbed
            V[d] &= ~absorbed
        return (tuple(U), tuple(V), S)

    def branch(self, node):
        """Split on the first candidate: (with it, without it).

        Returns None when the node has no candidates left.
        """
        U, V, S = node
        d = _pick_dimension(U, V)
        if d is None:
            return None
        v = V[d] & -V[d]
        e = v.bit_length() - 1

        lu, lv, ls = list(U), list(V), list(S)
        lu[d] |= v
        lv[d] &= ~v
        for d2 in OTHERS[d]:
            mask = lv[d2] | ls[d2]
            if not mask:
                continue
            lists = [[e] if o == d else bits(lu[o]) for o in OTHERS[d2]]
            if not all(lists):
                continue
            acc = self._connected(d2, lists, mask)
            lv[d2] &= acc
            ls[d2] &= acc
        left = (tuple(lu), tuple(lv), tuple(ls))

        rv, rs = list(V), list(S)
        rv[d] &= ~v
        rs[d] |= v
        right = (U, tuple(rv), tuple(rs))
        return left, right

    def run(self, node, minsupp):
        """All maximal boxes below ``node`` as 4-tuples of index tuples."""
        out = []
        stack = [node]
        while stack:
            node = self.tighten(stack.pop(), minsupp)
            if node is None:
                continue
            split = self.branch(node)
            if split is None:
                out.append(tuple(tuple(bits(m)) for m in node[0]))
                continue
            left, right = split
            stack.append(right)
            stack.append(left)
        return out
