"""Slot-based instruction substitution for the W0-W4 language levels."""

from __future__ import annotations

import itertools
import os
import random
import re
from dataclasses import dataclass
from importlib import resources

from ..errors import NotEnoughSlots

LEXICON_ENV = "CBDDL_LEXICON"

_MARKER = re.compile(r"\{([A-Za-z0-9_]+):([^{}]+)\}")
_WORD = re.compile(r"[A-Za-z]+(?:[-'][A-Za-z]+)*")


class Lexicon(dict):
    """Maps a lower-case base word to its substitution candidates."""

    @classmethod
    def from_tsv(cls, text: str) -> "Lexicon":
        lex = cls()
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                base, cands = line.split("\t")
            except ValueError:
                raise ValueError(f"lexicon line {n}: expected base<TAB>cand|cand|...") from None
            base = base.strip().lower()
            items = [c.strip() for c in cands.split("|") if c.strip() and c.strip().lower() != base]
            if not items:
                raise ValueError(f"lexicon line {n}: no candidates for {base!r}")
            lex[base] = tuple(items)
        return lex

    def to_tsv(self) -> str:
        return "".join(f"{b}\t{'|'.join(c)}\n" for b, c in self.items())

    def candidates(self, word: str) -> tuple:
        return self[word.lower()]


def load_lexicon(path: str | None = None) -> Lexicon:
    """Load from ``path``, else ``$CBDDL_LEXICON``, else the bundled file."""
    path = path or os.environ.get(LEXICON_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return Lexicon.from_tsv(fh.read())
    return Lexicon.from_tsv(resources.files("cbddl.data").joinpath("lexicon.tsv").read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Slot:
    id: str
    base: str


@dataclass(frozen=True)
class InstructionTemplate:
    """Alternating literal text and :class:`Slot` entries."""

    pieces: tuple

    @classmethod
    def parse(cls, text: str) -> "InstructionTemplate":
        """Read ``{slot_id:base word}`` markers."""
        pieces: list = []
        pos = 0
        seen = set()
        for m in _MARKER.finditer(text):
            pieces.append(text[pos : m.start()])
            sid, base = m.group(1), m.group(2)
            if sid in seen:
                raise ValueError(f"duplicate slot id {sid!r}")
            seen.add(sid)
            pieces.append(Slot(sid, base))
            pos = m.end()
        pieces.append(text[pos:])
        return cls(tuple(pieces))

    @classmethod
    def from_instruction(cls, text: str, lex: Lexicon, max_words: int = 2) -> "InstructionTemplate":
        """Mark every lexicon entry found in plain text, longest match first."""
        words = list(_WORD.finditer(text))
        pieces: list = []
        pos = 0
        i = 0
        while i < len(words):
            hit = None
            for n in range(min(max_words, len(words) - i), 0, -1):
                span = words[i : i + n]
                gap_ok = all(text[a.end() : b.start()] == " " for a, b in zip(span, span[1:]))
                phrase = text[span[0].start() : span[-1].end()]
                if gap_ok and phrase.lower() in lex:
                    hit = (n, phrase, span[0].start(), span[-1].end())
                    break
            if hit is None:
                i += 1
                continue
            n, phrase, start, end = hit
            pieces.append(text[pos:start])
            pieces.append(Slot(f"s{len(pieces) // 2}", phrase))
            pos = end
            i += n
        pieces.append(text[pos:])
        return cls(tuple(pieces))

    @property
    def slots(self) -> list:
        return [p for p in self.pieces if isinstance(p, Slot)]

    def render(self, replacements: dict | None = None) -> str:
        replacements = replacements or {}
        out = []
        for p in self.pieces:
            if isinstance(p, Slot):
                word = replacements.get(p.id, p.base)
                out.append(_match_case(p.base, word))
            else:
                out.append(p)
        return "".join(out)

    def slot_values(self, replacements: dict | None = None) -> list:
        replacements = replacements or {}
        return [_match_case(s.base, replacements.get(s.id, s.base)) for s in self.slots]

    def check(self, lex: Lexicon) -> None:
        for s in self.slots:
            if s.base.lower() not in lex:
                raise KeyError(f"slot {s.id}: base word {s.base!r} is not in the lexicon")

    def __str__(self) -> str:
        return "".join(f"{{{p.id}:{p.base}}}" if isinstance(p, Slot) else p for p in self.pieces)


def _match_case(base: str, word: str) -> str:
    if base[:1].isupper() and word[:1].islower():
        return word[:1].upper() + word[1:]
    return word


def substitute(t: InstructionTemplate, lex: Lexicon, level: int, seed: int) -> str:
    """Replace exactly ``level`` distinct slots with lexicon candidates.

    Slots are drawn uniformly without replacement, then each gets a uniformly
    drawn candidate; everything else is copied verbatim.
    """
    slots = t.slots
    if not 0 <= level <= 4:
        raise ValueError(f"language level must be in 0..4, got {level}")
    if level > len(slots):
        raise NotEnoughSlots(f"level W{level} needs {level} slots, template has {len(slots)}")
    t.check(lex)
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(slots)), level))
    repl = {slots[i].id: rng.choice(lex.candidates(slots[i].base)) for i in chosen}
    return t.render(repl)


def enumerate_variants(t: InstructionTemplate, lex: Lexicon, levels=(1, 2, 3, 4)) -> list:
    """Every legal substituted instruction at the given levels, in a fixed order."""
    t.check(lex)
    slots = t.slots
    out = []
    for k in levels:
        for combo in itertools.combinations(slots, k):
            for words in itertools.product(*(lex.candidates(s.base) for s in combo)):
                out.append(t.render({s.id: w for s, w in zip(combo, words)}))
    return out


def sample_training_instruction(t: InstructionTemplate, lex: Lexicon, rng: random.Random) -> str:
    """Draw uniformly from the original instruction and all of its variants."""
    pool = [t.render()] + enumerate_variants(t, lex)
    return pool[rng.randrange(len(pool))]
