"""Procedural puzzle generation and evaluation (Python bindings)."""

import json

from . import _core
from ._core import (
    EvalError,
    IntegrityError,
    LookupError,
    ParseError,
    PreconditionError,
    SmartgenError,
    SplitError,
    answer_freq_std,
    count_simple_paths,
    fence_jumps,
    parse_choice,
    pearson,
    root_ids,
    select_option,
    verify,
)

__all__ = [
    "EvalError", "IntegrityError", "LookupError", "ParseError", "PreconditionError",
    "SmartgenError", "SplitError", "answer_freq_std", "baseline", "count_simple_paths",
    "evaluate", "fence_jumps", "generate_dataset", "generate_instance", "make_split",
    "reference_word_problems", "parse_choice", "pearson", "root_ids", "select_option", "verify",
]


def _records(text):
    return [json.loads(line) for line in text.splitlines() if line]


def generate_instance(seed, root_id, instance_id=1):
    """One instance as a manifest record plus its SVG under "svg"."""
    return json.loads(_core.generate_instance(seed, root_id, instance_id))


def generate_dataset(out, seed, roots=None, instances_per_root=2000, threads=0):
    """Writes a dataset directory and returns the number of records."""
    return _core.generate_dataset(str(out), seed, roots, instances_per_root, threads)


def make_split(dataset, scheme, seed=0, train=0.80, val=0.05, test=0.15, m=10, ps_test=()):
    """Writes split_<scheme>.json into the dataset and returns it as a dict."""
    return json.loads(_core.make_split(str(dataset), scheme, seed, train, val, test, m, list(ps_test)))


def evaluate(dataset, split, predictions, part="test"):
    """Metric rows (root, category, overall) and the answer-position line."""
    return _records(_core.evaluate(str(dataset), str(split), str(predictions), part))


def baseline(dataset, split, kind, seed=0):
    return _records(_core.baseline(str(dataset), str(split), kind, seed))


def reference_word_problems():
    return [json.loads(p) for p in _core.reference_word_problems()]
