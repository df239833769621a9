"""
Irreps of S_n wr Z_2 and their characters, built from S_n characters
"""
from dataclasses import dataclass, field
from functools import lru_cache

from combinatorics.characters import character_table
from combinatorics.partitions import Partition, Shape, dimension, enumerate_partitions
from utils.errors import CharacterTableError, PartitionError
from utils.logging_utils import get_logger
from wreath.classes import WreathClass, involution_class, wreath_classes, wreath_order

logger = get_logger(__name__)

INHOM = "inhom"
HOM = "hom"


@dataclass(frozen=True)
class WreathIrrep:
    """
    Inhomogeneous {a, b} with a != b stored as a > b in reverse-lex order, or
    homogeneous (a, sign) with sign +1 / -1.
    """
    kind: str
    a: Partition
    b: Partition = None
    sign: int = 0

    @classmethod
    def inhomogeneous(cls, lam: Shape, mu: Shape) -> "WreathIrrep":
        if lam == mu:
            raise PartitionError(f"Inhomogeneous irrep needs distinct shapes, got {lam} twice")
        if lam.n != mu.n:
            raise PartitionError(f"Shapes of different sizes: {lam}, {mu}")
        return cls(INHOM, max(lam, mu), min(lam, mu))

    @classmethod
    def homogeneous(cls, lam: Shape, sign: int) -> "WreathIrrep":
        if sign not in (1, -1):
            raise ValueError(f"Homogeneous sign must be +1 or -1, got {sign}")
        return cls(HOM, lam, None, sign)

    @classmethod
    def trivial(cls, n: int) -> "WreathIrrep":
        return cls.homogeneous(Partition((n,)), 1)

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def is_homogeneous(self) -> bool:
        return self.kind == HOM

    @property
    def dimension(self) -> int:
        if self.is_homogeneous:
            return dimension(self.a) ** 2
        return 2 * dimension(self.a) * dimension(self.b)

    def __str__(self):
        if self.is_homogeneous:
            return f"({self.a}){'+' if self.sign > 0 else '-'}"
        return f"{{{self.a},{self.b}}}"

    def to_json(self) -> dict:
        if self.is_homogeneous:
            return {"kind": HOM, "a": str(self.a), "sign": "+" if self.sign > 0 else "-"}
        return {"kind": INHOM, "a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> "WreathIrrep":
        try:
            kind = data["kind"]
            a = Partition.parse(data["a"])
            if kind == HOM:
                signs = {"+": 1, "-": -1}
                return cls.homogeneous(a, signs[data["sign"]])
            if kind == INHOM:
                return cls.inhomogeneous(a, Partition.parse(data["b"]))
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed wreath irrep {data!r}: {e}")
        raise ValueError(f"Unknown wreath irrep kind {data.get('kind')!r}")

    def sort_key(self) -> tuple:
        # reverse-lex on the shapes, inhomogeneous first, + before -
        b = self.b if self.b is not None else self.a
        return (self.kind != INHOM, tuple(-x for x in self.a), tuple(-x for x in b), -self.sign)


@lru_cache(maxsize=None)
def wreath_irreps(n: int) -> tuple:
    """All irreps: pairs i < j of the partition order, then (lambda, +), (lambda, -)"""
    if n < 1:
        raise PartitionError(f"Wreath irreps need n >= 1, got {n}")
    partitions = enumerate_partitions(n)
    inhom = [
        WreathIrrep.inhomogeneous(partitions[i], partitions[j])
        for i in range(len(partitions))
        for j in range(i + 1, len(partitions))
    ]
    hom = [WreathIrrep.homogeneous(lam, sign) for lam in partitions for sign in (1, -1)]
    return tuple(inhom + hom)


def _check_n(sigma: WreathIrrep, cls: WreathClass):
    if sigma.n != cls.n:
        raise PartitionError(f"Irrep {sigma} and class {cls} have different n")


def wreath_character(sigma: WreathIrrep, cls: WreathClass) -> int:
    _check_n(sigma, cls)
    table = character_table(sigma.n)
    if sigma.is_homogeneous:
        if cls.is_flip:
            return sigma.sign * table.value(sigma.a, cls.a)
        return table.value(sigma.a, cls.a) * table.value(sigma.a, cls.b)
    if cls.is_flip:
        return 0
    return (table.value(sigma.a, cls.a) * table.value(sigma.b, cls.b)
            + table.value(sigma.b, cls.a) * table.value(sigma.a, cls.b))


def involution_character(sigma: WreathIrrep) -> int:
    """chi_sigma(m); +-d_lambda for homogeneous irreps, 0 otherwise"""
    return wreath_character(sigma, involution_class(sigma.n))


@dataclass(frozen=True)
class WreathCharacterTable:
    n: int
    irreps: tuple
    classes: tuple
    values: tuple
    class_sizes: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "class_sizes", tuple(c.size for c in self.classes))
        object.__setattr__(self, "_irrep_index", {s: i for i, s in enumerate(self.irreps)})
        object.__setattr__(self, "_class_index", {c: j for j, c in enumerate(self.classes)})

    @property
    def order(self) -> int:
        return wreath_order(self.n)

    def irrep_index(self, sigma: WreathIrrep) -> int:
        return self._irrep_index[sigma]

    def class_index(self, cls: WreathClass) -> int:
        return self._class_index[cls]

    def row(self, sigma: WreathIrrep) -> tuple:
        return self.values[self._irrep_index[sigma]]

    def value(self, sigma: WreathIrrep, cls: WreathClass) -> int:
        return self.values[self._irrep_index[sigma]][self._class_index[cls]]

    def check_orthogonality(self):
        for i in range(len(self.irreps)):
            for k in range(i, len(self.irreps)):
                total = sum(size * x * y for size, x, y in zip(self.class_sizes, self.values[i], self.values[k]))
                expected = self.order if i == k else 0
                if total != expected:
                    raise CharacterTableError(
                        f"Wreath orthogonality fails for {self.irreps[i]}, {self.irreps[k]}: {total} != {expected}"
                    )

    def check_class_sizes(self):
        if sum(self.class_sizes) != self.order:
            raise CharacterTableError(f"Wreath class sizes sum to {sum(self.class_sizes)}, not {self.order}")

    def check_dimensions(self):
        total = sum(sigma.dimension ** 2 for sigma in self.irreps)
        if total != self.order:
            raise CharacterTableError(f"Sum of squared dimensions {total} != 2(n!)^2 = {self.order}")


@lru_cache(maxsize=None)
def wreath_character_table(n: int) -> WreathCharacterTable:
    irreps = wreath_irreps(n)
    classes = wreath_classes(n)
    logger.debug(f"Building wreath character table for n={n}: {len(irreps)} irreps, {len(classes)} classes")
    values = tuple(tuple(wreath_character(sigma, cls) for cls in classes) for sigma in irreps)
    if len(irreps) != len(classes):
        raise CharacterTableError(f"{len(irreps)} irreps but {len(classes)} classes at n={n}")
    return WreathCharacterTable(n, irreps, classes, values)
