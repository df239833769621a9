"""
Dense operators on C[G^l] and the brute-force transcript probabilities.

Basis vectors |h_0 ... h_{l-1}> are indexed in mixed radix |G| with register 0
most significant. reg(g)^I right-multiplies the registers in I by g.
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from config.settings import config
from oracle.group_table import GroupTable
from sieve.forest import Forest
from utils.errors import BudgetExceeded
from utils.logging_utils import get_logger
from wreath.classes import SubgroupSpec

logger = get_logger(__name__)

TOLERANCE = 1e-9


@dataclass
class DenseOperator:
    matrix: np.ndarray
    registers: int
    group: GroupTable

    @property
    def side(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix @ other.matrix, self.registers, self.group)


def require_dense_budget(group: GroupTable, registers: int) -> int:
    side = group.order ** registers
    if side > config.MAX_DENSE_SIDE:
        logger.warning(f"Refusing dense operator of side {side} (MAX_DENSE_SIDE={config.MAX_DENSE_SIDE})")
        raise BudgetExceeded("max_dense_side", side, config.MAX_DENSE_SIDE)
    return side


def _digits(group: GroupTable, registers: int) -> np.ndarray:
    shape = (group.order,) * registers
    return np.indices(shape).reshape(registers, -1)


def register_permutation(group: GroupTable, g: int, registers: int, subset) -> np.ndarray:
    """perm[i] = index of reg(g)^I applied to basis vector i"""
    digits = _digits(group, registers)
    for j in subset:
        digits[j] = group.mul[digits[j], g]
    return np.ravel_multi_index(tuple(digits), (group.order,) * registers)


def _dtype(group: GroupTable):
    complex_valued = any(np.iscomplexobj(values) for values in group.characters.values())
    return np.complex128 if complex_valued else np.float64


def regular_rep(group: GroupTable, g: int, registers: int = 1, subset=None) -> DenseOperator:
    side = require_dense_budget(group, registers)
    subset = range(registers) if subset is None else subset
    perm = register_permutation(group, g, registers, subset)
    matrix = np.zeros((side, side))
    matrix[perm, np.arange(side)] = 1.0
    return DenseOperator(matrix, registers, group)


def projector_H(group: GroupTable, m: int, registers: int) -> DenseOperator:
    """(1/2^l) prod_j (1 + reg(m)^{j})"""
    if m == group.identity or group.mul[m, m] != group.identity:
        raise ValueError(f"Element {m} is not an involution")
    side = require_dense_budget(group, registers)
    matrix = np.zeros((side, side))
    columns = np.arange(side)
    for size in range(registers + 1):
        for subset in combinations(range(registers), size):
            matrix[register_permutation(group, m, registers, subset), columns] += 1.0
    return DenseOperator(matrix / 2 ** registers, registers, group)


def node_projector(group: GroupTable, label, subset, registers: int) -> DenseOperator:
    """(1/|G|) sum_g d chi(g)^* reg(g)^I"""
    side = require_dense_budget(group, registers)
    chi = group.characters[label]
    d = group.dimensions[label]
    matrix = np.zeros((side, side), dtype=_dtype(group))
    columns = np.arange(side)
    for g in range(group.order):
        coefficient = d * np.conj(chi[g]) / group.order
        if coefficient:
            matrix[register_permutation(group, g, registers, subset), columns] += coefficient
    return DenseOperator(matrix, registers, group)


def transcript_operator(group: GroupTable, forest: Forest, labels) -> DenseOperator:
    """Pi^T: product of the node projectors on their leaf-set registers"""
    registers = forest.leaf_count
    result = None
    for node, label in enumerate(labels):
        projector = node_projector(group, label, sorted(forest.leaf_sets[node]), registers)
        result = projector if result is None else result @ projector
        del projector
    return result


def oracle_transcript_probability(group: GroupTable, forest: Forest, labels, subgroup: SubgroupSpec,
                                  m: int = None) -> float:
    """tr(Pi^T) / |G|^l, or 2^l tr(Pi^T Pi_H) / |G|^l for H = {1, m}"""
    registers = forest.leaf_count
    require_dense_budget(group, registers)
    if subgroup is SubgroupSpec.ORDER_TWO and m is None:
        raise ValueError("The order-two target needs the index of m")
    pi_t = transcript_operator(group, forest, labels)
    scale = float(group.order) ** registers
    if subgroup is SubgroupSpec.TRIVIAL:
        return pi_t.trace() / scale
    pi_h = projector_H(group, m, registers)
    # tr(AB) without forming AB
    value = np.einsum("ij,ji->", pi_t.matrix, pi_h.matrix)
    return float(np.real(value)) * 2 ** registers / scale


def is_projector(op: DenseOperator, tolerance: float = TOLERANCE) -> bool:
    """Idempotent and self-adjoint within tolerance"""
    a = op.matrix
    return bool(np.allclose(a @ a, a, atol=tolerance) and np.allclose(a, a.conj().T, atol=tolerance))


def commutator_norm(a: DenseOperator, b: DenseOperator) -> float:
    return float(np.linalg.norm(a.matrix @ b.matrix - b.matrix @ a.matrix))


def h_invariance_defect(group: GroupTable, forest: Forest, labels, m: int) -> float:
    """Largest ||[Pi^T, reg(m) on all registers of one tree]|| over the trees"""
    pi_t = transcript_operator(group, forest, labels)
    defect = 0.0
    for root in forest.roots:
        action = regular_rep(group, m, forest.leaf_count, sorted(forest.leaf_sets[root]))
        defect = max(defect, commutator_norm(pi_t, action))
    return defect
