import json
import pathlib
from fractions import Fraction

import pytest

from congestion_adversary import (
    FIXTURE_NAMES,
    InstanceDocument,
    ParseError,
    SolverConfig,
    format_rational,
    generate_instance,
    load_instance_document,
    make_fixtures,
    needed_alpha,
    parse_instance_document,
    parse_rational,
    solve,
    validate_instance,
)
from congestion_adversary.documents import trace_to_json

FIXTURES_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


class TestRationals:
    @pytest.mark.parametrize(
        "text,value",
        [("7/6", Fraction(7, 6)), ("-3", Fraction(-3)), ("0", Fraction(0)), ("10/4", Fraction(5, 2))],
    )
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["1.5", "1/0", "", "1/-2", "a", "1e3", None, 3])
    def test_rejects_non_rational_strings(self, text):
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_format_round_trip(self):
        for value in (Fraction(7, 6), Fraction(-3), Fraction(0), Fraction(25, 24)):
            assert parse_rational(format_rational(value)) == value


class TestInstanceDocuments:
    def test_round_trip(self, example1):
        doc = InstanceDocument(instance=example1, name="x", description="y")
        again = parse_instance_document(json.loads(doc.dumps()))
        assert again == doc

    def test_parser_sorts_coefficients(self):
        doc = parse_instance_document(
            {"players": 3, "budget": "1", "coefficients": ["5", "0", "2"]}
        )
        assert doc.instance.coefficients == (Fraction(0), Fraction(2), Fraction(5))

    @pytest.mark.parametrize(
        "obj",
        [
            [],
            {},
            {"players": 3, "budget": "1"},
            {"players": "3", "budget": "1", "coefficients": ["1"]},
            {"players": True, "budget": "1", "coefficients": ["1"]},
            {"players": 3, "budget": "0", "coefficients": ["1"]},
            {"players": 3, "budget": "1", "coefficients": "1"},
            {"players": 3, "budget": "1", "coefficients": ["1.5"]},
            {"players": 0, "budget": "1", "coefficients": ["1"]},
            {"players": 3, "budget": "1", "coefficients": []},
            {"players": 3, "budget": "1", "coefficients": ["1"], "name": 7},
        ],
    )
    def test_rejects_malformed_documents(self, obj):
        with pytest.raises(ParseError):
            parse_instance_document(obj)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_instance_document(str(tmp_path / "nope.json"))


class TestGenerator:
    def test_deterministic(self):
        assert generate_instance(5, 3, 42) == generate_instance(5, 3, 42)
        assert generate_instance(5, 3, 42) != generate_instance(5, 3, 43)

    def test_respects_bounds(self):
        for seed in range(20):
            inst = generate_instance(6, 4, seed, coeff_max=7, budget_max=3).instance
            assert inst.n == 6 and inst.m == 4
            assert all(0 <= a <= 7 for a in inst.coefficients)
            assert 0 < inst.budget <= 3

    def test_rejects_bad_parameters(self):
        with pytest.raises(ParseError):
            generate_instance(0, 3, 1)
        with pytest.raises(ParseError):
            generate_instance(3, 0, 1)


class TestFixtures:
    def test_names_and_parseability(self):
        fixtures = make_fixtures()
        assert tuple(fixtures) == FIXTURE_NAMES
        for doc in fixtures.values():
            assert parse_instance_document(json.loads(doc.dumps())) == doc

    def test_checked_in_files_match_generated(self):
        for name, doc in make_fixtures().items():
            on_disk = load_instance_document(str(FIXTURES_DIR / f"{name}.json"))
            assert on_disk == doc

    def test_tightness_coefficients_live_on_the_grid(self):
        inst = make_fixtures()["tightness"].instance
        assert inst.coefficients[0] == 0
        for a in inst.coefficients[1:]:
            assert (a * 10**12).denominator == 1


class TestTraceSerialization:
    def test_json_shape(self, example1):
        loads, trace = solve(example1, SolverConfig.default())
        obj = trace_to_json(trace)
        assert len(obj) == len(trace.events)
        assert obj[0]["cost_before"] == "inf"
        assert obj[-1]["loads_after"] == list(loads)
        json.dumps(obj)  # must be plain JSON types

    def test_needed_alpha_serializes_infinity(self):
        from congestion_adversary.documents import _extended_rational_str

        inst = validate_instance([0, 0, 1], 3, 1)
        assert _extended_rational_str(needed_alpha(inst, (2, 0, 1))) == "inf"
