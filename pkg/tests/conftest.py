"""Shared helpers: deterministic structure sampling for oracle comparisons.

Two sources of structures:
  * ``sampled`` — the library's own search sampler (constructor families);
  * ``down_transform_closet`` / ``bracket_transform_closet`` — arbitrary
    compatible preclosures built from random monotone transforms, covering
    operators no constructor family produces (including non-Alexandrov
    brackets via the Dedekind-MacNeille route).
"""

import random
from array import array

import hypothesis.strategies as st

from closetlab import kernels
from closetlab.constructors import (alexandrov, assemble, dedekind_macneille,
                                    qoset_from_pairs)
from closetlab.core import SetOperator, Universe
from closetlab.search import C_KINDS, build_sample, random_qoset


def fresh_universe(n):
    return Universe([f"x{i}" for i in range(n)])


def sampled(seed, count, sizes=(2, 3, 4), kinds=C_KINDS):
    """Deterministic (ec, maps, q) triples from the library sampler."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 40:
        attempts += 1
        drawn = build_sample(rng, rng.choice(list(sizes)), kinds)
        if drawn is not None:
            out.append(drawn)
    assert len(out) == count, "sampler starved"
    return out


def _monotone_table(rng_values, base_table, n):
    """c = closure . T . closure for T(X) = X | H(X), H a union transform."""
    size = 1 << n
    g = kernels.zeros(size)
    for a, v in enumerate(rng_values):
        g[a] = v
    h = kernels.zeta_or(g, n)
    return array("Q", [base_table[base_table[a] | h[base_table[a]]]
                       for a in range(size)])


def down_transform_closet(rng, q, density=0.3, name="table-sample"):
    """Alexandrov bracket + arbitrary compatible preclosure."""
    n = q.universe.n
    size = 1 << n
    values = [rng.randrange(size) if rng.random() < density else 0
              for _ in range(size)]
    table = _monotone_table(values, q.down_table, n)
    c = SetOperator.from_table(q.universe, table, kind="table")
    return assemble(alexandrov(q), c, name=name)


def bracket_transform_closet(rng, q, density=0.3, name="dm-sample"):
    """Dedekind-MacNeille bracket + compatible preclosure (non-Alexandrov)."""
    n = q.universe.n
    size = 1 << n
    bracket = dedekind_macneille(q)
    bt = bracket.table
    values = [rng.randrange(size) if rng.random() < density else 0
              for _ in range(size)]
    table = _monotone_table(values, bt, n)
    c = SetOperator.from_table(q.universe, table, kind="table")
    return assemble(bracket, c, name=name)


def table_closets(seed, count, sizes=(2, 3, 4), dm_share=0.25):
    """Mixed wide-class structures, deterministic in the seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = random_qoset(rng, fresh_universe(rng.choice(list(sizes))))
        if rng.random() < dm_share:
            out.append(bracket_transform_closet(rng, q))
        else:
            out.append(down_transform_closet(rng, q))
    return out


@st.composite
def qoset_strategy(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    u = fresh_universe(n)
    names = list(u.elements)
    pairs = draw(st.lists(
        st.tuples(st.sampled_from(names), st.sampled_from(names)),
        max_size=2 * n))
    return qoset_from_pairs(u, pairs)


@st.composite
def closet_strategy(draw, min_n=1, max_n=4, dm=False):
    q = draw(qoset_strategy(min_n=min_n, max_n=max_n))
    n = q.universe.n
    size = 1 << n
    values = draw(st.lists(st.integers(0, size - 1),
                           min_size=size, max_size=size))
    base = dedekind_macneille(q) if dm else alexandrov(q)
    table = _monotone_table(values, base.table, n)
    c = SetOperator.from_table(q.universe, table, kind="table")
    return assemble(base, c, name="hyp")
