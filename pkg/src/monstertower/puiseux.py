"""Puiseux characteristics and their conversions to and from RVT code words.

Two independent recursions compute the characteristic of a word:

* the front-end recursion peels one structural block off the front of the
  word at a time, transforming the characteristic of the lifted word;
* the back-end recursion splits a critical word as P R^rho Q (Q the maximal
  trailing entirely-critical block) and combines PC(P) with the pair E(R^rho Q)
  computed by the auxiliary E map.

Both are implemented and cross-checked exhaustively in the test suite.  The
inverse direction is available twice as well: the CW map built on the
Euclidean word Euc(a, b), and a case-peeling inverse of the front-end
recursion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from .errors import (
    BadOrder,
    InvalidCharacteristic,
    MalformedString,
    NotCoprime,
    ParseError,
    RemainderInvalid,
    TrivialCharacteristic,
)
from .words import RvtWord, is_entirely_critical, lift_string

_PC_RE = re.compile(r"\[\s*(\d+)\s*;\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]")


@dataclass(frozen=True)
class PuiseuxCharacteristic:
    """[lambda_0; lambda_1, ..., lambda_g] with the usual invariants:
    strictly increasing, gcd 1, every entry past the first essential
    (not divisible by the gcd of its predecessors), and lambda_0 = 1
    only for the trivial characteristic [1;]."""

    lambdas: tuple[int, ...]

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lambdas)
        object.__setattr__(self, "lambdas", lam)
        if not lam:
            raise InvalidCharacteristic("characteristic needs a leading entry")
        if any(x < 1 for x in lam):
            raise InvalidCharacteristic(f"entries must be positive: {lam}")
        if any(a >= b for a, b in zip(lam, lam[1:])):
            raise InvalidCharacteristic(f"entries must strictly increase: {lam}")
        if lam[0] == 1 and len(lam) > 1:
            raise InvalidCharacteristic("leading entry 1 forces the trivial [1;]")
        d = lam[0]
        for x in lam[1:]:
            if x % d == 0:
                raise InvalidCharacteristic(f"{x} is inessential in {lam}")
            d = gcd(d, x)
        if d != 1:
            raise InvalidCharacteristic(f"gcd of {lam} is {d}, expected 1")

    @property
    def g(self) -> int:
        return len(self.lambdas) - 1

    @property
    def leading(self) -> int:
        return self.lambdas[0]

    def is_trivial(self) -> bool:
        return self.lambdas == (1,)

    def __str__(self) -> str:
        head, tail = self.lambdas[0], self.lambdas[1:]
        return f"[{head};{','.join(str(x) for x in tail)}]"

    def __iter__(self):
        return iter(self.lambdas)


TRIVIAL_PC = PuiseuxCharacteristic((1,))


class EPair(NamedTuple):
    """Coprime ordered pair produced by the E map; a < b always."""

    a: int
    b: int


@dataclass(frozen=True)
class CaseTag:
    """Front-end recursion case: A, or B/C with the tangency count tau."""

    kind: str
    tau: int | None = None

    def __str__(self) -> str:
        return self.kind if self.tau is None else f"{self.kind}(tau={self.tau})"


def parse_pc(text: str) -> PuiseuxCharacteristic:
    """Parse ``[27;63,83]``; the trivial characteristic is ``[1;]``."""
    m = _PC_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"bad characteristic literal {text!r}")
    head = int(m.group(1))
    tail = [int(x) for x in m.group(2).replace(" ", "").split(",")] if m.group(2).strip() else []
    return PuiseuxCharacteristic((head, *tail))


def essential_characteristic(leading: int, exponents) -> PuiseuxCharacteristic:
    """Characteristic from a leading order and an exponent set, by the
    gcd-chain scan: an exponent is essential when the gcd of everything
    seen before it does not divide it."""
    if leading < 1:
        raise InvalidCharacteristic("leading order must be positive")
    out = [leading]
    d = leading
    for e in sorted(set(int(x) for x in exponents)):
        if d == 1:
            break
        if e % d:
            out.append(e)
            d = gcd(d, e)
    if d != 1:
        raise InvalidCharacteristic(
            f"exponents {sorted(set(exponents))} with leading {leading} share a factor {d}"
        )
    return PuiseuxCharacteristic(tuple(out))


# -- front-end recursion -------------------------------------------------------


def front_chain(word: RvtWord | str) -> list[tuple[int, ...]]:
    """Raw characteristic tuples of the word and all its lifted words, down
    to the first lift with no critical symbol.

    Entry j is the characteristic of the j-fold lifted word; one front-end
    transformation is applied per entry on the way back up, so the whole
    chain costs a single pass.
    """
    s = str(word)
    if isinstance(word, str):
        RvtWord(s)  # validate
    suffixes = []
    while "V" in s:
        suffixes.append(s)
        s = s[1:] if s[1] == "R" else lift_string(s)
    chain = [(1,)]
    for w in reversed(suffixes):
        sub = chain[-1]
        if w[1] == "R":
            chain.append((sub[0], *(x + sub[0] for x in sub[1:])))
            continue
        tau = 0
        i = 2
        while i < len(w) and w[i] == "T":
            tau += 1
            i += 1
        if i == len(w) or w[i] == "R":
            chain.append(
                ((tau + 2) * sub[0], (tau + 3) * sub[0], *(x + sub[0] for x in sub[1:]))
            )
        else:
            chain.append((sub[1], *(x + sub[0] for x in sub[1:])))
    chain.reverse()
    return chain


def pc_from_word_front(word: RvtWord | str) -> PuiseuxCharacteristic:
    """Front-end recursion: PC(W) from PC(L(W)), one structural block at a
    time.  A word with no critical symbols has characteristic [1;]."""
    return PuiseuxCharacteristic(front_chain(word)[0])


def classify_case(pc: PuiseuxCharacteristic) -> CaseTag:
    """Which front block the characteristic forces: A iff lambda_1 > 2*lambda_0,
    B when the gap divides lambda_0, C otherwise (with the matching tau)."""
    if pc.is_trivial() or pc.g < 1:
        raise TrivialCharacteristic("[1;] determines no leading case")
    lam0, lam1 = pc.lambdas[0], pc.lambdas[1]
    if lam1 > 2 * lam0:
        return CaseTag("A")
    gap = lam1 - lam0
    if lam0 % gap == 0:
        return CaseTag("B", lam0 // gap - 2)
    tau = (lam0 - 1) // gap - 1
    return CaseTag("C", tau)


def peel_case(pc: PuiseuxCharacteristic) -> tuple[CaseTag, PuiseuxCharacteristic]:
    """Inverse single step of the front-end recursion: the case tag of pc and
    the characteristic of the lifted word."""
    tag = classify_case(pc)
    lam = pc.lambdas
    if tag.kind == "A":
        down = (lam[0], *(x - lam[0] for x in lam[1:]))
    elif tag.kind == "B":
        gap = lam[1] - lam[0]
        down = (gap, *(x - gap for x in lam[2:])) if pc.g >= 2 else (1,)
    else:
        gap = lam[1] - lam[0]
        down = (gap, lam[0], *(x - gap for x in lam[2:]))
    return tag, PuiseuxCharacteristic(down)


# -- back-end recursion ---------------------------------------------------------


def e_value(symbols: str) -> EPair:
    """The E map on strings R^rho Q with Q entirely critical.

    E(empty) = [1;2]; prepending T or R sends [a;b] to [a;a+b], prepending V
    sends it to [b;a+b].
    """
    s = str(symbols)
    first_v = s.find("V")
    head = s if first_v < 0 else s[:first_v]
    tail = "" if first_v < 0 else s[first_v:]
    if set(head) - {"R"}:
        raise MalformedString(f"{s!r}: only R may precede the first V")
    if not is_entirely_critical(tail):
        raise MalformedString(f"{s!r}: R after the first V")
    a, b = 1, 2
    for ch in reversed(s):
        a, b = (b, a + b) if ch == "V" else (a, a + b)
    return EPair(a, b)


def pc_from_word_back(word: RvtWord | str) -> PuiseuxCharacteristic:
    """Back-end recursion via the decomposition W = P R^rho Q."""
    w = (word if isinstance(word, RvtWord) else RvtWord(str(word))).normalize()
    if not w.symbols:
        return TRIVIAL_PC
    dec = w.decompose()
    pair = e_value("R" * (dec.rho - 1) + dec.critical_block)
    if not dec.prefix.symbols:
        # PC(R^rho Q) = E(R^(rho-1) Q) read as a characteristic
        return PuiseuxCharacteristic((pair.a, pair.b)) if pair.a > 1 else TRIVIAL_PC
    sub = pc_from_word_back(dec.prefix)
    a, b = e_value("R" * dec.rho + dec.critical_block)
    lam = sub.lambdas
    return PuiseuxCharacteristic(
        tuple(a * x for x in lam) + (a * lam[-1] + b - 2 * a,)
    )


# -- inverse maps ------------------------------------------------------------------


def euclid(a: int, b: int) -> str:
    """Entirely-critical string of the slow Euclidean algorithm on (a, b):
    V then Euc(b-a, a) when b < 2a, T then Euc(a, b-a) when b > 2a,
    empty at (1, 2)."""
    if a < 1 or b < 1 or a >= b:
        raise BadOrder(f"need 0 < a < b, got ({a}, {b})")
    if gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) = {gcd(a, b)}")
    out = []
    while (a, b) != (1, 2):
        if b < 2 * a:
            out.append("V")
            a, b = b - a, a
        else:
            out.append("T")
            b = b - a
    return "".join(out)


def word_from_pc(pc: PuiseuxCharacteristic) -> RvtWord:
    """The CW map: the critical word with the given characteristic.

    Rejects exponent lists that are not genuine characteristics instead of
    silently repairing them; use :func:`essential_characteristic` to
    canonicalize raw exponent data first.  CW of [1;] is the empty word.
    """
    if pc.is_trivial():
        return RvtWord("")
    lam = pc.lambdas
    if pc.g == 1:
        s = euclid(lam[0], lam[1])
        i = 0
        while i < len(s) and s[i] == "T":
            i += 1
        return RvtWord("R" + "R" * i + s[i:])
    a = gcd_all(lam[:-1])
    diff = lam[-1] - lam[-2]
    s = diff // a + 1
    b = diff % a + a
    head = word_from_pc(PuiseuxCharacteristic(tuple(x // a for x in lam[:-1])))
    return RvtWord(head.symbols + "R" * s + euclid(a, b))


def gcd_all(values) -> int:
    d = 0
    for v in values:
        d = gcd(d, v)
    return d


def word_from_pc_front_inverse(pc: PuiseuxCharacteristic) -> RvtWord:
    """Invert the front-end recursion by repeated case peeling.

    Case A contributes R, case B contributes R V T^tau R (the block together
    with the R that must follow it in the padded word), case C contributes
    R V T^tau; the overlap with the lifted word's leading R run is dropped.
    The output may carry a trailing R; it normalizes to word_from_pc(pc).
    """
    if pc.is_trivial():
        return RvtWord("")
    tag, down = peel_case(pc)
    tail = word_from_pc_front_inverse(down).symbols
    if tag.kind == "A":
        return RvtWord("R" + tail)
    drop = tag.tau + 2 if tag.kind == "B" else tag.tau + 1
    dropped, rest = tail[:drop], tail[drop:]
    if dropped.strip("R"):
        raise InvalidCharacteristic(
            f"peel of {pc} expected {drop} leading R's, found {tail!r}"
        )
    block = "RV" + "T" * tag.tau + ("R" if tag.kind == "B" else "")
    return RvtWord(block + rest)


# -- restriction ----------------------------------------------------------------------


def is_restricted(pc: PuiseuxCharacteristic) -> bool:
    """lambda_1 > 2*lambda_0, vacuously true for [1;]."""
    return pc.g == 0 or pc.lambdas[1] > 2 * pc.lambdas[0]


def restrict_pc(pc: PuiseuxCharacteristic) -> PuiseuxCharacteristic:
    """Replace lambda_0 by lambda_1 mod lambda_0 when not yet restricted.

    A remainder of 1 collapses to the trivial characteristic (the germ of a
    Goursat trivially-framed level).  A remainder that breaks the
    characteristic invariants is reported via RemainderInvalid rather than
    repaired; the Goursat-word route stays available for those words.
    """
    if is_restricted(pc):
        return pc
    remainder = pc.lambdas[1] % pc.lambdas[0]
    if remainder == 1:
        return TRIVIAL_PC
    try:
        return PuiseuxCharacteristic((remainder, *pc.lambdas[1:]))
    except InvalidCharacteristic as exc:
        raise RemainderInvalid(
            f"remainder {remainder} of {pc} is not a valid leading entry: {exc}"
        ) from exc
