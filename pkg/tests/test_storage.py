import threading

import pytest

from handsoff.storage import BlobStore, MetadataStore


def test_blob_round_trip(tmp_path):
    store = BlobStore(tmp_path)
    ref = store.put(b"some media bytes")
    assert store.exists(ref)
    assert store.get(ref) == b"some media bytes"


def test_blob_is_content_addressed(tmp_path):
    store = BlobStore(tmp_path)
    assert store.put(b"same") == store.put(b"same")
    assert store.put(b"same") != store.put(b"different")


def test_blob_missing_ref(tmp_path):
    with pytest.raises(KeyError):
        BlobStore(tmp_path).get("0" * 64)


def test_blob_detects_corruption(tmp_path):
    store = BlobStore(tmp_path)
    ref = store.put(b"original")
    (tmp_path / f"sha256-{ref}").write_bytes(b"tampered")
    with pytest.raises(ValueError):
        store.get(ref)


def test_metadata_put_get(tmp_path):
    store = MetadataStore(tmp_path / "meta.jsonl")
    store.put("m1", {"a": 1})
    assert store.get("m1") == {"a": 1}
    assert "m1" in store
    assert "m2" not in store


def test_metadata_survives_reopen(tmp_path):
    path = tmp_path / "meta.jsonl"
    store = MetadataStore(path)
    store.put("m1", {"a": 1})
    store.put("m1", {"a": 2})  # last write wins
    store.put("m2", {"b": 3})
    reopened = MetadataStore(path)
    assert reopened.get("m1") == {"a": 2}
    assert reopened.get("m2") == {"b": 3}
    assert sorted(reopened.keys()) == ["m1", "m2"]


def test_metadata_concurrent_writers(tmp_path):
    store = MetadataStore(tmp_path / "meta.jsonl")

    def writer(prefix):
        for i in range(50):
            store.put(f"{prefix}-{i}", {"n": i})

    threads = [threading.Thread(target=writer, args=(f"w{t}",)) for t in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(store.keys()) == 200
    reopened = MetadataStore(store.path)
    assert len(reopened.keys()) == 200
