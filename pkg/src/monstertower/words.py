"""RVT code words and the word calculus.

A code word is a finite word over {R, V, T} subject to two rules: a nonempty
word starts with R, and every T immediately follows a V or a T.  Words are
stored without trailing R padding semantics attached; ``normalize`` trims
trailing R's, which changes none of the invariants computed from a word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyWord,
    InvalidSymbol,
    LeadingNonR,
    LevelOutOfRange,
    NotCritical,
    OrphanT,
)

ALPHABET = "RVT"

# enumeration order used by the CLI: R before V before T
_SYMBOL_ORDER = {"R": 0, "V": 1, "T": 2}


def validate_symbols(symbols: str) -> None:
    for i, ch in enumerate(symbols):
        if ch not in ALPHABET:
            raise InvalidSymbol(f"symbol {ch!r} is not one of R, V, T", i)
    if symbols and symbols[0] != "R":
        raise LeadingNonR(f"word starts with {symbols[0]!r}, expected R", 0)
    for i in range(1, len(symbols)):
        if symbols[i] == "T" and symbols[i - 1] not in "VT":
            raise OrphanT("T must immediately follow V or T", i)


def lift_string(s: str) -> str:
    """String form of the lifted word (input assumed valid and nonempty)."""
    s = s[1:]
    if s and s[0] == "V":
        i = 1
        while i < len(s) and s[i] == "T":
            i += 1
        s = "R" * i + s[i:]
    return s


def is_critical(symbols) -> bool:
    """Last symbol is V or T."""
    s = str(symbols)
    return bool(s) and s[-1] in "VT"


def is_entirely_critical(symbols) -> bool:
    """Every symbol is V or T (vacuously true for the empty string)."""
    s = str(symbols)
    return all(ch in "VT" for ch in s)


@dataclass(frozen=True)
class RvtWord:
    symbols: str = ""

    def __post_init__(self):
        validate_symbols(self.symbols)

    def __str__(self) -> str:
        return self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def sort_key(self) -> tuple:
        return (len(self.symbols), tuple(_SYMBOL_ORDER[c] for c in self.symbols))

    # -- predicates ----------------------------------------------------------

    def is_critical(self) -> bool:
        return is_critical(self.symbols)

    def is_entirely_critical(self) -> bool:
        return is_entirely_critical(self.symbols)

    # -- normal forms ----------------------------------------------------------

    def normalize(self) -> "RvtWord":
        """Trim trailing R's; the result is empty or critical."""
        return RvtWord(self.symbols.rstrip("R"))

    def goursat_word(self) -> "GoursatWord":
        """Rewrite a second-position V chain to R's.

        If there is a V in second position, it and any immediately succeeding
        T's become R's; Goursat distributions cannot see that initial chain.
        """
        s = self.symbols
        if len(s) >= 2 and s[1] == "V":
            i = 2
            while i < len(s) and s[i] == "T":
                i += 1
            s = "R" * i + s[i:]
        return GoursatWord(s)

    # -- lifting ----------------------------------------------------------------

    def lift(self) -> "RvtWord":
        """Code word of the once-lifted germ.

        Drop the leading R; if the word now starts with V, that V and any
        T's chained to it become R's.
        """
        if not self.symbols:
            raise EmptyWord("cannot lift the empty word")
        return RvtWord(lift_string(self.symbols))

    def lift_preimages(self) -> frozenset["RvtWord"]:
        """All words u with u.lift() == self.

        A leading run R^sigma may be replaced by V T^(sigma-1) (sigma = 0
        meaning no replacement), then an R is prepended; one preimage per
        sigma up to the leading R run length.
        """
        s = self.symbols
        run = 0
        while run < len(s) and s[run] == "R":
            run += 1
        out = set()
        for sigma in range(run + 1):
            replaced = ("V" + "T" * (sigma - 1)) if sigma else ""
            out.add(RvtWord("R" + replaced + s[sigma:]))
        return frozenset(out)

    # -- decompositions -----------------------------------------------------------

    def decompose(self) -> "WordDecomposition":
        """Write a critical word as P R^rho Q with Q the maximal trailing
        entirely-critical block."""
        s = self.symbols
        if not is_critical(s):
            raise NotCritical(f"{s!r} does not end in V or T")
        q_start = len(s)
        while q_start > 0 and s[q_start - 1] in "VT":
            q_start -= 1
        r_start = q_start
        while r_start > 0 and s[r_start - 1] == "R":
            r_start -= 1
        return WordDecomposition(
            prefix=RvtWord(s[:r_start]),
            rho=q_start - r_start,
            critical_block=s[q_start:],
        )

    def chain_origins(self) -> tuple[int | None, ...]:
        """For each position (1-indexed entries, index 0 unused as None):
        the level at which the V/T chain through it started."""
        origins: list[int | None] = [None]
        for pos in range(1, len(self.symbols) + 1):
            ch = self.symbols[pos - 1]
            if ch == "V":
                origins.append(pos)
            elif ch == "T":
                origins.append(origins[pos - 1])
            else:
                origins.append(None)
        return tuple(origins)

    def split_at_level(self, k: int) -> tuple["RvtWord", "RvtWord"]:
        """Split the full incidence word of a curve at tower level k.

        Returns (point word, curve word): the first k symbols, and the rest
        with every symbol whose chain started at level <= k+1 replaced by R.
        Chains are tracked by origin position, so a cut landing inside a
        V T^tau chain replaces exactly the symbols of that chain.
        """
        if k < 0 or k > len(self.symbols):
            raise LevelOutOfRange(f"level {k} outside word of length {len(self.symbols)}")
        origins = self.chain_origins()
        tail = []
        for pos in range(k + 1, len(self.symbols) + 1):
            ch = self.symbols[pos - 1]
            if ch in "VT" and origins[pos] is not None and origins[pos] >= k + 2:
                tail.append(ch)
            else:
                tail.append("R")
        return RvtWord(self.symbols[:k]), RvtWord("".join(tail))


class GoursatWord(RvtWord):
    """A valid word whose first two symbols are RR when it has length >= 2."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.symbols) >= 2 and self.symbols[:2] != "RR":
            raise LeadingNonR("a Goursat word must begin with RR", 1)


@dataclass(frozen=True)
class WordDecomposition:
    prefix: RvtWord            # P: empty or critical
    rho: int                   # number of R's between P and Q
    critical_block: str        # Q: entirely critical, begins with V if nonempty

    def __post_init__(self):
        if self.critical_block and not is_entirely_critical(self.critical_block):
            raise NotCritical("Q block must be entirely critical")
        if self.critical_block and self.critical_block[0] != "V":
            raise NotCritical("nonempty Q block must begin with V")
        if self.prefix.symbols and not self.prefix.is_critical():
            raise NotCritical("P must be empty or critical")

    def reconstruct(self) -> RvtWord:
        return RvtWord(self.prefix.symbols + "R" * self.rho + self.critical_block)


def parse_word(text: str) -> RvtWord:
    """Parse a word literal: uppercase R/V/T, no separators."""
    return RvtWord(text.strip())


def enumerate_words(max_len: int, min_len: int = 1):
    """Yield every valid word of length min_len..max_len in (length,
    R<V<T) order."""
    if min_len <= 0:
        yield RvtWord("")
    current = [""]
    for n in range(1, max_len + 1):
        nxt = []
        for w in current:
            if not w:
                nxt.append("R")
                continue
            nxt.append(w + "R")
            nxt.append(w + "V")
            if w[-1] in "VT":
                nxt.append(w + "T")
        nxt.sort(key=lambda s: [_SYMBOL_ORDER[c] for c in s])
        if n >= min_len:
            for w in nxt:
                yield RvtWord(w)
        current = nxt


def count_words(n: int) -> int:
    """Number of valid words of length exactly n, by the R/V/T state
    recurrence implied by the two word rules."""
    if n == 0:
        return 1
    r, v, t = 1, 0, 0
    for _ in range(n - 1):
        total = r + v + t
        r, v, t = total, total, v + t
    return r + v + t
