from __future__ import annotations

import random
import re

import pytest

from cbddl.errors import NotEnoughSlots
from cbddl.perturb.language import (
    InstructionTemplate,
    Lexicon,
    enumerate_variants,
    load_lexicon,
    sample_training_instruction,
    substitute,
)

LEX = load_lexicon()
TEXT = "Pick up the apple and put it on the bowl in the region"


def slot_diff(t: InstructionTemplate, text: str) -> list:
    """Slot values recovered from ``text`` using the template's literal pieces."""
    pattern = "".join("(.+?)" if not isinstance(p, str) else re.escape(p) for p in t.pieces)
    m = re.fullmatch(pattern, text)
    assert m is not None, text
    return list(m.groups())


def test_auto_slots_prefer_longest_entry():
    t = InstructionTemplate.from_instruction(TEXT, LEX)
    assert [s.base for s in t.slots] == ["Pick up", "apple", "put", "bowl", "region"]
    assert t.render() == TEXT


def test_marker_syntax():
    t = InstructionTemplate.parse("{v:pick} the {n:lemon}")
    assert [(s.id, s.base) for s in t.slots] == [("v", "pick"), ("n", "lemon")]
    assert str(t) == "{v:pick} the {n:lemon}"
    with pytest.raises(ValueError):
        InstructionTemplate.parse("{a:pick} {a:put}")


@pytest.mark.parametrize("k", range(5))
def test_exactly_k_slots_change(k):
    t = InstructionTemplate.from_instruction(TEXT, LEX)
    base = [s.base for s in t.slots]
    for seed in range(200):
        got = slot_diff(t, substitute(t, LEX, k, seed))
        changed = [i for i, (a, b) in enumerate(zip(base, got)) if a != b]
        assert len(changed) == k
        for i in changed:
            assert got[i].lower() in {c.lower() for c in LEX.candidates(base[i])}


def test_level_zero_is_identity():
    t = InstructionTemplate.from_instruction(TEXT, LEX)
    assert substitute(t, LEX, 0, 123) == TEXT


def test_not_enough_slots():
    t = InstructionTemplate.from_instruction("put the apple down", LEX)
    assert len(t.slots) == 2
    with pytest.raises(NotEnoughSlots):
        substitute(t, LEX, 3, 0)


def test_same_seed_same_text():
    t = InstructionTemplate.from_instruction(TEXT, LEX)
    assert len({substitute(t, LEX, 2, 99) for _ in range(20)}) == 1


def test_capitalisation_is_kept():
    t = InstructionTemplate.parse("{v:Pick} the {n:apple}")
    lex = Lexicon({"pick": ("grab",), "apple": ("pome",)})
    assert substitute(t, lex, 2, 0) == "Grab the pome"


def test_published_examples_are_in_lexicon():
    assert set(LEX.candidates("apple")) >= {"pome", "eating apple", "cooking apple", "crab apple"}
    assert set(LEX.candidates("lemon")) >= {"citrus", "citrous fruit"}
    assert set(LEX.candidates("bowl")) >= {"vessel", "jorum", "fishbowl"}
    assert set(LEX.candidates("region")) >= {"location", "zone", "nirvana", "zodiac"}
    assert set(LEX.candidates("pick")) >= {"choose", "select", "grab", "seize"}
    assert set(LEX.candidates("put")) >= {"place", "position", "locate"}


def test_enumeration_counts():
    t = InstructionTemplate.parse("{a:apple} {b:lemon}")
    lex = Lexicon({"apple": ("x", "y"), "lemon": ("z",)})
    variants = enumerate_variants(t, lex)
    # one slot: 2 + 1, two slots: 2 * 1
    assert sorted(variants) == sorted(["x lemon", "y lemon", "apple z", "x z", "y z"])


def test_training_draw_is_uniform_over_pool():
    t = InstructionTemplate.parse("{a:apple} {b:lemon}")
    lex = Lexicon({"apple": ("x",), "lemon": ("z",)})
    rng = random.Random(0)
    draws = [sample_training_instruction(t, lex, rng) for _ in range(8000)]
    for text in ("apple lemon", "x lemon", "apple z", "x z"):
        assert abs(draws.count(text) / 8000 - 0.25) < 0.03


def test_lexicon_env_override(tmp_path, monkeypatch):
    p = tmp_path / "lex.tsv"
    p.write_text("apple\tquince\n")
    monkeypatch.setenv("CBDDL_LEXICON", str(p))
    assert load_lexicon() == {"apple": ("quince",)}


def test_bad_lexicon_line():
    with pytest.raises(ValueError, match="line 1"):
        Lexicon.from_tsv("apple pome\n")
