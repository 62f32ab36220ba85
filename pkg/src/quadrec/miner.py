"""Frequent quadri-concept mining.

The search is a peel-style divide and conquer over elements (see
``_peel_py`` for the node invariants).  The hot loop lives in a compiled
kernel when the extension is built; otherwise the pure-Python kernel is used.
``KERNEL`` names the one picked at import.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor

from . import _peel_py
from .model import ONES, ConceptSet, PFolksonomy, QuadriConcept, SupportThresholds

try:
    from . import _peel as _peel_c
except ImportError:  # pragma: no cover - depends on the build
    _peel_c = None

log = logging.getLogger(__name__)

KERNELS = {"python": _peel_py.Kernel}
if _peel_c is not None:
    KERNELS["compiled"] = _peel_c.Kernel
KERNEL = "compiled" if _peel_c is not None else "python"


def prune_elements(quads, th: SupportThresholds):
    """Drop elements that cannot belong to any frequent concept.

    An element of dimension ``d`` in a frequent concept lies in at least the
    product of the other three thresholds' worth of quadruples; repeat until
    stable.  Concepts of the pruned relation are exactly the frequent
    concepts of the original one.
    """
    minsupp = th.as_tuple()
    need = [math.prod(minsupp) // m for m in minsupp]
    quads = set(quads)
    while True:
        counts = [{} for _ in range(4)]
        for q in quads:
            for d in range(4):
                counts[d][q[d]] = counts[d].get(q[d], 0) + 1
        weak = [{e for e, c in counts[d].items() if c < need[d]} for d in range(4)]
        if not any(weak):
            return quads
        quads = {q for q in quads if not any(q[d] in weak[d] for d in range(4))}


def _make_kernel(kind, shape, quads):
    if kind == "compiled":
        try:
            return KERNELS["compiled"](shape, quads)
        except MemoryError:
            log.warning("relation too large for dense slices %s, using the python kernel", shape)
    return _peel_py.Kernel(shape, quads)


_worker_kernel = None


def _init_worker(kind, shape, quads):
    global _worker_kernel
    _worker_kernel = _make_kernel(kind, shape, quads)


def _run_node(args):
    node, minsupp = args
    return _worker_kernel.run(node, minsupp)


def _frontier(shape, quads, minsupp, target):
    """Split the search tree into at least ``target`` independent nodes.

    Returns (open nodes, boxes already emitted while splitting).
    """
    kernel = _peel_py.Kernel(shape, quads)
    queue = [_peel_py.root(shape)]
    done = []
    while queue and len(queue) < target:
        node = kernel.tighten(queue.pop(0), minsupp)
        if node is None:
            continue
        split = kernel.branch(node)
        if split is None:
            done.append(tuple(tuple(_peel_py.bits(m)) for m in node[0]))
        else:
            queue.extend(split)
    return queue, done


def mine(
    f: PFolksonomy,
    th: SupportThresholds = ONES,
    workers: int = 1,
    kernel: str | None = None,
) -> ConceptSet:
    """All frequent quadri-concepts of ``f``, in canonical order.

    ``workers > 1`` explores disjoint subtrees in separate processes; the
    output does not depend on it.
    """
    kind = kernel or KERNEL
    if kind not in KERNELS:
        raise ValueError(f"unknown kernel {kind!r}; available: {sorted(KERNELS)}")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    quads = prune_elements(f.quadruples, th)
    if not quads:
        return ConceptSet()
    # dense renumbering of surviving elements, order preserving
    keep = [sorted({q[d] for q in quads}) for d in range(4)]
    remap = [{e: i for i, e in enumerate(k)} for k in keep]
    local = [tuple(remap[d][q[d]] for d in range(4)) for q in sorted(quads)]
    shape = tuple(len(k) for k in keep)
    minsupp = th.as_tuple()

    if workers == 1:
        k = _make_kernel(kind, shape, local)
        boxes = k.run(_peel_py.root(shape), minsupp)
    else:
        nodes, boxes = _frontier(shape, local, minsupp, 4 * workers)
        if nodes:
            with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(kind, shape, local)) as pool:
                for part in pool.map(_run_node, [(n, minsupp) for n in nodes]):
                    boxes.extend(part)

    concepts = (
        QuadriConcept(*(tuple(keep[d][i] for i in box[d]) for d in range(4)))
        for box in boxes
    )
    return ConceptSet(tuple(concepts))


def filter_concepts(cs: ConceptSet, th: SupportThresholds) -> ConceptSet:
    """Members of ``cs`` meeting ``th``, order preserved."""
    return ConceptSet(tuple(c for c in cs if th.accepts(c)))
