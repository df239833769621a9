"""
State spaces for the exact transcript dynamic program.

A tree value is computed root to leaf over the prefix product p of the group
elements assigned along a path. Every quantity involved is invariant under a
group of conjugations, so p is tracked by its orbit:

* target {1}: orbits are the conjugacy classes of S_n wr Z_2, with class
  multiplication coefficients taken from the wreath character table;
* target {1, m}: orbits of conjugation by the centralizer of m, found by
  enumerating the group. Both 1 and m are singleton orbits here, so leaf
  membership is exact.

``transition(sigma)[s][s']`` is sum over b in orbit s' of d_sigma chi_sigma(p^-1 b)
for any p in orbit s.
"""
import math
import threading
from collections import OrderedDict
from functools import lru_cache

import numpy as np

from config.settings import config
from utils.errors import BudgetExceeded, CharacterTableError, UnsupportedTarget
from utils.logging_utils import get_logger
from wreath.classes import (
    SubgroupSpec, classify_element, identity_class, involution_element, wreath_elements,
)
from wreath.irreps import WreathIrrep, wreath_character_table

logger = get_logger(__name__)

VECTOR_CACHE_LIMIT = 4096


class StateAlgebra:
    """Common interface: ``states``, ``identity_state``, ``leaf_vector``, ``transition``"""

    target = None

    def __init__(self, n: int):
        self.n = n
        self.table = wreath_character_table(n)
        self.order = self.table.order
        self.lock = threading.Lock()
        self._transitions = {}
        # subtree vectors keyed by labeled shape, least recently used evicted first
        self._vectors = OrderedDict()
        self.vector_cache_limit = VECTOR_CACHE_LIMIT
        self.counts = None

    def transition(self, sigma: WreathIrrep) -> list:
        with self.lock:
            if sigma not in self._transitions:
                weights = np.array(
                    [sigma.dimension * chi for chi in self.table.row(sigma)], dtype=np.int64
                )
                self._transitions[sigma] = (self.counts @ weights).tolist()
            return self._transitions[sigma]

    def cached_vector(self, key):
        with self.lock:
            vector = self._vectors.get(key)
            if vector is not None:
                self._vectors.move_to_end(key)
            return vector

    def store_vector(self, key, vector: tuple):
        with self.lock:
            self._vectors[key] = vector
            self._vectors.move_to_end(key)
            while len(self._vectors) > self.vector_cache_limit:
                self._vectors.popitem(last=False)

    @property
    def vector_cache_size(self) -> int:
        return len(self._vectors)

    @property
    def state_count(self) -> int:
        return len(self.states)


class ClassAlgebra(StateAlgebra):
    """Prefix states are conjugacy classes; target {1}"""

    target = SubgroupSpec.TRIVIAL

    def __init__(self, n: int):
        super().__init__(n)
        self.states = self.table.classes
        self.identity_state = self.table.class_index(identity_class(n))
        self.leaf_vector = [1 if s == self.identity_state else 0 for s in range(len(self.states))]
        self.counts = self._multiplication_counts()
        logger.debug(f"Class algebra for n={n}: {len(self.states)} classes")

    def _multiplication_counts(self) -> np.ndarray:
        """counts[c][c1][c2] = #{b in C1 : p^-1 b in C2} for p in C"""
        table = self.table
        dims = [sigma.dimension for sigma in table.irreps]
        common = math.lcm(*dims)
        scaled = [common // d for d in dims]
        size = len(table.classes)
        counts = np.zeros((size, size, size), dtype=np.int64)
        for c in range(size):
            for c1 in range(size):
                for c2 in range(size):
                    total = sum(
                        w * row[c] * row[c1] * row[c2] for w, row in zip(scaled, table.values)
                    )
                    value, remainder = divmod(
                        table.class_sizes[c1] * table.class_sizes[c2] * total, common * self.order
                    )
                    if remainder:
                        raise CharacterTableError(f"Non-integral class coefficient at ({c}, {c1}, {c2})")
                    counts[c, c1, c2] = value
        return counts


class InvolutionOrbitAlgebra(StateAlgebra):
    """Prefix states are orbits under conjugation by the centralizer of m; target {1, m}"""

    target = SubgroupSpec.ORDER_TWO

    def __init__(self, n: int):
        super().__init__(n)
        elements = wreath_elements(n)
        index = {x: i for i, x in enumerate(elements)}
        m = involution_element(n)
        centralizer = [z for z in elements if z * m == m * z]

        orbit_of = [-1] * len(elements)
        orbits = []
        for i, x in enumerate(elements):
            if orbit_of[i] >= 0:
                continue
            members = sorted({index[~z * x * z] for z in centralizer})
            for j in members:
                orbit_of[j] = len(orbits)
            orbits.append(tuple(members))

        class_of = [self.table.class_index(classify_element(x, n)) for x in elements]
        counts = np.zeros((len(orbits), len(orbits), len(self.table.classes)), dtype=np.int64)
        for o, members in enumerate(orbits):
            rep_inverse = ~elements[members[0]]
            for j, b in enumerate(elements):
                counts[o, orbit_of[j], class_of[index[rep_inverse * b]]] += 1

        self.states = tuple(orbits)
        self.counts = counts
        self.identity_state = orbit_of[0]
        involution_state = orbit_of[index[m]]
        if len(orbits[self.identity_state]) != 1 or len(orbits[involution_state]) != 1:
            raise CharacterTableError("Identity and involution must be singleton orbits")
        self.leaf_vector = [1 if s in (self.identity_state, involution_state) else 0 for s in range(len(orbits))]
        logger.debug(
            f"Involution orbit algebra for n={n}: |Z(m)|={len(centralizer)}, {len(orbits)} orbits"
        )


def require_exact_budget(n: int, subgroup: SubgroupSpec):
    if subgroup is SubgroupSpec.ORDER_TWO and n > config.MAX_EXACT_N:
        logger.warning(f"Refusing exact order-two work at n={n} (MAX_EXACT_N={config.MAX_EXACT_N})")
        raise BudgetExceeded("max_exact_n", n, config.MAX_EXACT_N)
    if subgroup is SubgroupSpec.TRIVIAL and n > config.MAX_CLASS_DP_N:
        logger.warning(f"Refusing class DP at n={n} (MAX_CLASS_DP_N={config.MAX_CLASS_DP_N})")
        raise BudgetExceeded("max_class_dp_n", n, config.MAX_CLASS_DP_N)


@lru_cache(maxsize=None)
def _algebra(n: int, subgroup: SubgroupSpec) -> StateAlgebra:
    if subgroup is SubgroupSpec.TRIVIAL:
        return ClassAlgebra(n)
    return InvolutionOrbitAlgebra(n)


def state_algebra(n: int, subgroup: SubgroupSpec) -> StateAlgebra:
    """Shared, read-only state algebra for the target of the given hypothesis"""
    if not isinstance(subgroup, SubgroupSpec):
        raise UnsupportedTarget(f"Unsupported target {subgroup!r}")
    require_exact_budget(n, subgroup)
    return _algebra(n, subgroup)
