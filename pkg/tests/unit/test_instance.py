"""Unit tests for requests, instances and instance files."""

import json

import pytest

from online_mssc.core import (
    Instance,
    Permutation,
    Request,
    access_cost,
    dump_instance,
    load_instance,
    parse_instance,
)
from online_mssc.exceptions import (
    EmptyRequestError,
    InstanceFormatError,
    UnknownElementError,
)

pytestmark = pytest.mark.unit


class TestRequest:
    def test_empty_request(self):
        with pytest.raises(EmptyRequestError):
            Request.of([])

    def test_repeated_element(self):
        with pytest.raises(InstanceFormatError, match="repeats"):
            Request.of([1, 1])

    def test_sorted_and_membership(self):
        request = Request.of([3, 1])
        assert request.sorted() == [1, 3]
        assert 3 in request
        assert request.size == 2


class TestAccessCost:
    def test_nearest_requested_element(self):
        pi = Permutation.from_order([0, 1, 2])
        assert access_cost(pi, Request.of([1, 2])) == 2
        assert access_cost(pi, [2]) == 3

    def test_empty(self):
        with pytest.raises(EmptyRequestError):
            access_cost(Permutation.identity(2), [])

    def test_unknown_element(self):
        with pytest.raises(UnknownElementError):
            access_cost(Permutation.identity(2), [5])

    def test_fixed_list_total(self, small_instance):
        pi = Permutation.identity(5)
        expected = sum(access_cost(pi, req) for req in small_instance.requests)
        assert small_instance.access_costs(pi) == expected


class TestInstance:
    def test_build(self, small_instance):
        assert small_instance.n == 5
        assert small_instance.m == 8
        assert small_instance.r == 3

    def test_request_larger_than_r(self):
        with pytest.raises(InstanceFormatError, match="more than r=1"):
            Instance.build([0, 1], [[0, 1]], r=1)

    def test_unknown_element(self):
        with pytest.raises(UnknownElementError):
            Instance.build([0, 1], [[2]], r=1)

    def test_non_positive_r(self):
        with pytest.raises(InstanceFormatError):
            Instance.build([0], [], r=0)


class TestInstanceFiles:
    def test_parse(self):
        text = '{"n": 3, "r": 2, "initial": [2, 0, 1], "requests": [[0, 1], [2]]}'
        instance = parse_instance(text)
        assert instance.initial.order() == [2, 0, 1]
        assert [req.sorted() for req in instance.requests] == [[0, 1], [2]]

    def test_schema_key_accepted(self):
        text = '{"schema": 1, "n": 1, "r": 1, "initial": [0], "requests": [[0]]}'
        assert parse_instance(text).m == 1

    def test_field_path_in_error(self):
        text = '{"n": 2, "r": 2, "initial": [0, 1], "requests": [[0, "x"]]}'
        with pytest.raises(InstanceFormatError, match=r"requests\.0\.1"):
            parse_instance(text, source="bad.json")

    def test_malformed_json(self):
        with pytest.raises(InstanceFormatError, match="bad.json"):
            parse_instance('{"n": 2,', source="bad.json")

    @pytest.mark.parametrize(
        "payload,message",
        [
            ({"n": 2, "r": 1, "initial": [0, 0], "requests": []}, "initial"),
            ({"n": 2, "r": 1, "initial": [0, 1], "requests": [[]]}, "empty"),
            ({"n": 2, "r": 1, "initial": [0, 1], "requests": [[0, 1]]}, "more than r"),
            ({"n": 2, "r": 2, "initial": [0, 1], "requests": [[3]]}, "unknown"),
            ({"n": 2, "r": 2, "initial": [0, 1], "requests": [[1, 1]]}, "repeats"),
        ],
    )
    def test_invalid_documents(self, payload, message):
        with pytest.raises(InstanceFormatError, match=message):
            parse_instance(json.dumps(payload))

    def test_dump_and_load(self, tmp_path, small_instance):
        path = dump_instance(small_instance, tmp_path / "nested" / "instance.json")
        data = json.loads(path.read_text())
        assert data["schema"] == 1
        assert data["requests"][1] == [3, 4]

        loaded = load_instance(path)
        assert loaded.initial == small_instance.initial
        assert loaded.requests == small_instance.requests
        assert loaded.r == small_instance.r

    def test_missing_file(self, tmp_path):
        with pytest.raises(InstanceFormatError, match="cannot read"):
            load_instance(tmp_path / "absent.json")
