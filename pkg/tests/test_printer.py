from __future__ import annotations

import pytest

from cbddl.parser import parse_file, parse_problem
from cbddl.printer import pretty_print

from conftest import corpus_files


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.stem)
def test_roundtrip(path):
    spec = parse_file(path)
    text = pretty_print(spec)
    again = parse_problem(text)
    assert again == spec
    assert pretty_print(again) == text  # printing is a fixed point


def test_numbers_print_without_exponent():
    spec = parse_problem(
        "(define (problem p) (:domain d) (:objects (a x (:parts (0 sphere 0.00001 (0 0 0)))))"
        " (:goal (Fall a)))"
    )
    text = pretty_print(spec)
    assert "0.00001" in text and "e-" not in text


def test_printed_form_is_canonical():
    a = parse_problem("(define (problem p) (:goal (Fall a)) (:domain d) (:objects (a x)))")
    text = pretty_print(a)
    assert text.index(":domain") < text.index(":objects") < text.index(":goal")
    assert "(:parts (0 sphere 0.05 (0 0 0)))" in text
