import jsonschema
import pytest

import anagram_forge as af


def test_word_functions():
    assert af.is_anagramish("abba")
    assert not af.is_anagramish("aab")
    assert af.is_ell_periodic("abab", 2)
    assert af.tau("aabb")["tau"] == 4
    assert af.find_anagramish_substring("abcb") is None
    assert af.find_anagramish_substring("abcbc") == {"half_length": 2, "length": 4, "offset": 1, "tau": 0}
    assert af.find_near_anagramish("aabbab", 2, 0.5)["offset"] == 1


def test_longest_word_search():
    res = af.longest_anagram_free(3, 8)
    assert res["length"] == 7 and res["exhausted"]
    assert not af.find_anagramish_substring(res["word"])
    assert af.longest_anagram_free(4, 30, workers=4)["length"] == 30


def test_grid_functions(schema):
    verdict = af.verify_colouring({"n": 1, "c": 1, "top": [1], "bottom": [1]})
    assert verdict["witness_path"] == ["a0", "b0"]
    res = af.afcn_grid(3, 4)
    assert res["afcn"] == 4
    jsonschema.validate(res["colouring"], schema("grid_colouring"))
    assert af.verify_colouring(res["colouring"])["anagram_free"]
    assert [af.afcn_path(m, 4)["afcn"] for m in range(1, 9)] == [1, 2, 2, 3, 3, 3, 3, 4]


def test_construction_round_trip(schema):
    block = af.plant(2, 21, 2, seed=7)
    jsonschema.validate(block, schema("block_string"))
    path = af.construct_path(block, block["provenance"]["eps"])
    jsonschema.validate(path, schema("grid_path"))
    report = af.verify_construction(block, path)
    assert report["valid_path"] and report["anagramish"]
    assert 2 * path["midpoint_index"] == report["length"]


def test_mutated_path_is_rejected():
    block = af.plant(3, 30, 2, seed=11)
    path = af.construct_path(block, block["provenance"]["eps"])
    path["vertices"] = path["vertices"][:-1]
    report = af.verify_construction(block, path)
    assert not report["anagramish"]


def test_preconditions_raise_value_error():
    with pytest.raises(af.PreconditionError):
        af.plant(2, 20, 2, seed=7)
    with pytest.raises(ValueError):
        af.thresholds(2, 2, 2)


def test_tree_functions():
    th = af.thresholds(1, 2, 2)
    assert (th["t"], th["h_min"]) == (2, "32")
    assert af.certify("abababab", 2, "1/2", 2)["outcome"] == "balanced_witness"
    assert af.certify("aaabaabbaabbabbb", 8, "1/4", 4)["outcome"] == "certificate"
    one = af.empirical(2, 3, "1/2", 2, 24)
    four = af.empirical(2, 3, "1/2", 2, 24, workers=4)
    assert one == four and one["n"] == 6
