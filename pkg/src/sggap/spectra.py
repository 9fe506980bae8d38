"""Finite-level Dirichlet and Neumann spectra built by the decimation recursion.

Every value carries an :class:`EigenDescriptor` recording its lineage, so the
limit eigenvalue it converges to can be recomputed at any precision.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, TextIO

from .dynamics import MINUS, PLUS, BranchWord, phi_minus, phi_plus, phi_word
from .errors import CertificationError, DomainError
from .scalar import DEFAULT_PRECISION, Ball, Order, certified_compare

MAX_PRECISION = 4096


class BC(str, enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value) -> BC:
        if isinstance(value, BC):
            return value
        v = str(value).lower()
        for bc in cls:
            if bc.value == v or bc.value[0] == v:
                return bc
        raise ValueError(f"unknown boundary condition {value!r}")


@dataclass(frozen=True)
class EigenDescriptor:
    """Lineage of one eigenvalue: first ancestor, its level, and later branches."""

    seed: int
    birth: int
    word: BranchWord = BranchWord("")

    @property
    def level(self) -> int:
        return self.birth + len(self.word)

    @property
    def fixation(self) -> int | None:
        """Generation after which only the lower branch is taken.

        ``None`` for a bare 6: that value is never propagated by the recursion.
        """
        if self.seed == 6 and not self.word:
            return None
        return self.birth + len(self.word.fixed_part())

    def child(self, letter: str) -> EigenDescriptor:
        return EigenDescriptor(self.seed, self.birth, self.word + letter)

    def fixed(self) -> EigenDescriptor:
        """Same lineage truncated at its generation of fixation."""
        return EigenDescriptor(self.seed, self.birth, self.word.fixed_part())

    def evaluate(self, prec: int | None = None) -> Ball:
        return phi_word(self.word, Ball(self.seed, prec=prec))

    def __str__(self) -> str:
        return f"{self.seed}@{self.birth}[{self.word}]"

    @classmethod
    def parse(cls, text: str) -> EigenDescriptor:
        seed, rest = text.split("@", 1)
        birth, word = rest.split("[", 1)
        return cls(int(seed), int(birth), BranchWord(word.rstrip("]")))


@dataclass(frozen=True)
class SpectrumEntry:
    value: Ball
    descriptor: EigenDescriptor


@dataclass(frozen=True)
class FiniteSpectrum:
    level: int
    bc: BC
    entries: tuple[SpectrumEntry, ...]
    prec: int

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[SpectrumEntry]:
        return iter(self.entries)

    @property
    def values(self) -> list[Ball]:
        return [e.value for e in self.entries]

    @property
    def descriptors(self) -> list[EigenDescriptor]:
        return [e.descriptor for e in self.entries]

    def without_six(self) -> list[SpectrumEntry]:
        return [e for e in self.entries if not _is_bare_six(e.descriptor)]

    def to_csv(self, fh: TextIO, digits: int | None = None) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["level", "bc", "index", "value", "seed", "birth", "word"])
        for i, e in enumerate(self.entries):
            d = e.descriptor
            w.writerow(
                [self.level, self.bc.value, i, e.value.mid_str(digits), d.seed, d.birth, d.word]
            )

    def to_json(self, digits: int | None = None) -> dict:
        return {
            "level": self.level,
            "bc": self.bc.value,
            "precision_bits": self.prec,
            "entries": [
                {
                    "index": i,
                    "midpoint": e.value.mid_str(digits),
                    "radius": e.value.rad_str(),
                    "seed": e.descriptor.seed,
                    "birth": e.descriptor.birth,
                    "word": str(e.descriptor.word),
                    "fixation": e.descriptor.fixation,
                }
                for i, e in enumerate(self.entries)
            ],
        }


def _is_bare_six(d: EigenDescriptor) -> bool:
    return d.seed == 6 and not d.word


def _seed(value: int, birth: int, prec: int, word: str = "") -> SpectrumEntry:
    d = EigenDescriptor(value, birth, BranchWord(word))
    return SpectrumEntry(d.evaluate(prec) if word else Ball(value, prec=prec), d)


def _lift(entries, prec) -> list[SpectrumEntry]:
    out = []
    for e in entries:
        if _is_bare_six(e.descriptor):
            continue
        out.append(SpectrumEntry(phi_minus(e.value), e.descriptor.child(MINUS)))
        out.append(SpectrumEntry(phi_plus(e.value), e.descriptor.child(PLUS)))
    return out


@lru_cache(maxsize=None)
def _raw_level(m: int, bc: BC, prec: int) -> tuple[SpectrumEntry, ...]:
    if bc is BC.DIRICHLET:
        if m < 1:
            raise DomainError("the Dirichlet spectrum at level 0 is empty")
        if m == 1:
            return (_seed(2, 1, prec), _seed(5, 1, prec))
        new = _lift(_raw_level(m - 1, bc, prec), prec)
        if m >= 3:
            # 3 = phi_plus(6) of the 6 born one level earlier
            new.append(_seed(6, m - 1, prec, PLUS))
        new += [_seed(5, m, prec), _seed(6, m, prec)]
        return tuple(new)
    if m < 0:
        raise DomainError("level must be non-negative")
    if m == 0:
        return (_seed(0, 0, prec), _seed(6, 0, prec))
    if m == 1:
        return (
            SpectrumEntry(Ball(0, prec=prec), EigenDescriptor(0, 0, BranchWord(MINUS))),
            _seed(3, 1, prec),
            _seed(6, 1, prec),
        )
    new = _lift(_raw_level(m - 1, bc, prec), prec)
    new += [_seed(3, m, prec), _seed(6, m, prec)]
    return tuple(new)


def _sorted_certified(entries) -> tuple[SpectrumEntry, ...] | None:
    out = sorted(entries, key=lambda e: e.value.mid)
    for a, b in zip(out, out[1:]):
        if certified_compare(a.value, b.value) is not Order.LESS:
            return None
    return tuple(out)


@lru_cache(maxsize=None)
def spectrum(m: int, bc: BC | str, prec: int | None = None) -> FiniteSpectrum:
    """Distinct eigenvalues of the level-``m`` graph Laplacian, increasing.

    The order is certified; on overlapping neighbours the whole level is
    recomputed at doubled precision.
    """
    bc = BC.parse(bc)
    p = DEFAULT_PRECISION if prec is None else prec
    while True:
        out = _sorted_certified(_raw_level(m, bc, p))
        if out is not None:
            return FiniteSpectrum(m, bc, out, p)
        if p >= MAX_PRECISION:
            raise CertificationError(f"cannot separate level {m} values at {p} bits")
        p *= 2


def dirichlet_level(m: int, prec: int | None = None) -> FiniteSpectrum:
    return spectrum(m, BC.DIRICHLET, prec)


def neumann_level(m: int, prec: int | None = None) -> FiniteSpectrum:
    return spectrum(m, BC.NEUMANN, prec)


def count_with_multiplicity(m: int) -> int:
    """Number of eigenvalues of the level-``m`` Dirichlet Laplacian."""
    if m < 1:
        raise DomainError("level must be at least 1")
    return (3 ** (m + 1) - 3) // 2
