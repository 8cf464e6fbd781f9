import json

import pytest

import smartgen


def test_instance_is_deterministic():
    a = smartgen.generate_instance(42, 1, 3)
    b = smartgen.generate_instance(42, 1, 3)
    assert a == b
    assert len(a["options"]) == 5
    assert "<svg" in a["svg"]
    assert smartgen.root_ids() == list(range(1, 12))


def test_unknown_root_raises():
    with pytest.raises(smartgen.LookupError):
        smartgen.generate_instance(1, 999)


def test_dataset_split_eval_round_trip(tmp_path):
    out = tmp_path / "ds"
    assert smartgen.generate_dataset(out, 7, roots=[1, 2, 11], instances_per_root=40) == 120
    assert smartgen.verify(out) == []

    split = smartgen.make_split(out, "IS")
    assert len(split["train"]) == 96 and len(split["val"]) == 6 and len(split["test"]) == 18

    records = {}
    for line in (out / "manifest.jsonl").read_text().splitlines():
        r = json.loads(line)
        records[(r["root_id"], r["instance_id"])] = r
    preds = tmp_path / "preds.jsonl"
    with preds.open("w") as f:
        for root, inst in split["test"]:
            value = records[(root, inst)]["answer_value"]
            f.write(json.dumps({"root_id": root, "instance_id": inst, "predicted": value}) + "\n")
    rows = smartgen.evaluate(out, out / "split_IS.json", preds)
    overall = next(r for r in rows if r["level"] == "overall")
    assert overall["s_acc"] == 100.0 and overall["o_acc"] == 100.0

    greedy = smartgen.baseline(out, out / "split_IS.json", "greedy")
    for row in greedy:
        if "s_acc" in row:
            assert row["s_acc"] <= row["o_acc"]


def test_worked_values():
    assert smartgen.fence_jumps(10, 4, 1, 4) == 56
    assert smartgen.select_option(8, ["9", "10", "13", "17", "20"]) == 0
    assert smartgen.answer_freq_std([0, 1, 2, 7, 0, 0]) == pytest.approx(2.49, abs=0.005)
    assert smartgen.pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert smartgen.count_simple_paths([(0, 1), (0, 2), (1, 2)], 0, 2, 2) == 1
    with pytest.raises(smartgen.EvalError):
        smartgen.pearson([1, 1, 1], [1, 2, 3])


def test_parser_and_reference_puzzles():
    assert smartgen.parse_choice("The correct answer is **D: 12**", ["6", "8", "10", "12", "14"]) == "D"
    assert smartgen.parse_choice("no idea", ["6", "8", "10", "12", "14"]) == "OTHER"
    answers = {p["root_id"]: p["answer_value"] for p in smartgen.reference_word_problems()}
    assert answers == {7: 12, 9: 2, 30: 13, 38: 3, 47: 2, 71: 26, 88: 43, 89: 4, 90: 10, 91: 18, 93: 18}
