"""Subgroups of (Z/2)^n stored as int bitsets in reduced row echelon form."""

from __future__ import annotations

from typing import Iterable


def reduce_basis(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis: each pivot (highest set bit) appears in exactly
    one basis vector.  Sorted descending, so the result is canonical."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
    return tuple(sorted(basis, reverse=True))


def reduce_vector(v: int, basis: tuple[int, ...]) -> int:
    for b in basis:
        v = min(v, v ^ b)
    return v


class Subgroup:
    """Subgroup of (Z/2)^nbits; membership and equality via row reduction."""

    __slots__ = ("nbits", "basis")

    def __init__(self, nbits: int, generators: Iterable[int] = ()):
        self.nbits = nbits
        gens = list(generators)
        for g in gens:
            if g < 0 or g >> nbits:
                raise ValueError(f"generator {g} out of range for (Z/2)^{nbits}")
        self.basis = reduce_basis(gens)

    @classmethod
    def full(cls, nbits: int) -> "Subgroup":
        return cls(nbits, [1 << i for i in range(nbits)])

    @classmethod
    def trivial(cls, nbits: int) -> "Subgroup":
        return cls(nbits)

    def __contains__(self, v: int) -> bool:
        return reduce_vector(v, self.basis) == 0

    def __iter__(self):
        return iter(self.elements())

    def elements(self) -> list[int]:
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return sorted(out)

    def __len__(self) -> int:
        return 1 << len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self) -> int:
        return 1 << (self.nbits - self.rank)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.nbits == other.nbits and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.nbits, self.basis))

    def __le__(self, other: "Subgroup") -> bool:
        return all(b in other for b in self.basis)

    def join(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.nbits, self.basis + other.basis)

    def is_full(self) -> bool:
        return self.rank == self.nbits

    def image(self, fn) -> "Subgroup":
        """Image under a homomorphism given on vectors."""
        return Subgroup(self.nbits, [fn(b) for b in self.basis])

    def __repr__(self) -> str:
        return f"Subgroup(nbits={self.nbits}, elements={self.elements()})"
