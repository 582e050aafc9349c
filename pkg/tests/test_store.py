import threading

import pytest
from hypothesis import given, strategies as st

from mair.store import NotFoundError, RecordStore, StoreSet


@pytest.fixture
def store(tmp_path):
    return RecordStore(tmp_path / "records.jsonl")


def test_put_then_get_identical(store):
    record = {"id": "a", "n": 3, "nested": {"x": [1, 2]}, "text": "zażółć"}
    store.put(record)
    assert store.get("a") == record


def test_get_unknown_raises(store):
    with pytest.raises(NotFoundError):
        store.get("nope")


def test_scan_insertion_order(store):
    for i in range(3):
        store.put({"id": f"r{i}", "value": i})
    assert [r["id"] for r in store.scan()] == ["r0", "r1", "r2"]


def test_reload_from_disk(tmp_path):
    path = tmp_path / "s.jsonl"
    RecordStore(path).put({"id": "a", "v": 1})
    RecordStore(path).put({"id": "b", "v": 2})
    reopened = RecordStore(path)
    assert [r["id"] for r in reopened.scan()] == ["a", "b"]


def test_reput_updates_latest_keeps_position(store):
    store.put({"id": "a", "v": 1})
    store.put({"id": "b", "v": 1})
    store.put({"id": "a", "v": 2})
    assert store.get("a")["v"] == 2
    assert [r["id"] for r in store.scan()] == ["a", "b"]


def test_record_without_id_rejected(store):
    with pytest.raises(ValueError):
        store.put({"value": 1})


def test_store_set_names(tmp_path):
    stores = StoreSet(tmp_path)
    assert stores.documents.path.name == "documents.jsonl"
    assert stores.statements.path.name == "statements.jsonl"
    assert stores.networks.path.name == "networks.jsonl"
    with pytest.raises(ValueError):
        stores.store("misc")


def test_reset_drops_records(tmp_path):
    stores = StoreSet(tmp_path)
    stores.documents.put({"id": "a"})
    fresh = stores.reset("documents")
    assert len(fresh) == 0
    with pytest.raises(NotFoundError):
        fresh.get("a")


def test_concurrent_reads_during_writes(tmp_path):
    store = RecordStore(tmp_path / "c.jsonl")
    store.put({"id": "seed", "v": 0})
    errors = []

    def writer():
        for i in range(50):
            store.put({"id": f"w{i}", "v": i})

    def reader():
        try:
            for _ in range(200):
                store.get("seed")
                list(store.scan())
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=writer)] + [threading.Thread(target=reader) for _ in range(3)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert len(store) == 51


json_scalars = st.one_of(
    st.none(),
    st.booleans(),
    st.integers(min_value=-(2**31), max_value=2**31),
    st.floats(allow_nan=False, allow_infinity=False),
    st.text(max_size=20),
)
json_values = st.recursive(
    json_scalars,
    lambda inner: st.one_of(
        st.lists(inner, max_size=4),
        st.dictionaries(st.text(min_size=1, max_size=8), inner, max_size=4),
    ),
    max_leaves=12,
)


@given(st.dictionaries(st.text(min_size=1, max_size=8), json_values, max_size=5))
def test_round_trip_any_record(tmp_path_factory, payload):
    store = RecordStore(tmp_path_factory.mktemp("rt") / "s.jsonl")
    record = {"id": "x", **payload}
    store.put(record)
    assert store.get("x") == record
    reopened = RecordStore(store.path)
    assert reopened.get("x") == record
