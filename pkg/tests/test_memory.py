from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandbench.memory import (
    HashedBagEmbedder,
    MemoryStore,
    cosine_similarity,
    extract_tag,
    tokenize,
)

WORDS = ["alpha", "beta", "gamma", "delta", "rate", "accuracy", "epoch",
         "batch", "model", "layers", "dropout", "loss"]


def random_content(rng: random.Random, n_tokens: int) -> str:
    return " ".join(rng.choice(WORDS) for _ in range(n_tokens))


def test_first_record_gets_id_zero(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    assert store.write("lr=0.01 acc=0.89") == 0
    record = store.records[0]
    assert record.tag  # some window of the content
    for token in tokenize(record.tag):
        assert token in tokenize(record.content)


def test_ids_increment_and_summary_counts(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    assert store.write("first entry here") == 0
    assert store.write("second entry here") == 1
    count, tags = store.state_summary()
    assert count == 2
    assert len(tags) <= 2


def test_restart_preserves_records(tmp_path):
    path = tmp_path / "m.json"
    store = MemoryStore(path)
    store.write("alpha beta gamma")
    store.write("delta epoch loss")
    reloaded = MemoryStore(path)
    assert [(r.id, r.content, r.tag) for r in reloaded.records] == [
        (r.id, r.content, r.tag) for r in store.records
    ]
    query = "alpha beta gamma"
    assert [r.id for r in reloaded.read(query)] == [r.id for r in store.read(query)]


def test_query_equal_to_content_ranks_first(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    store.write("completely different words entirely")
    target = store.write("learning rate point zero one")
    top = store.read("learning rate point zero one", k=1)
    assert top[0].id == target
    assert cosine_similarity(
        store.embedder.embed("learning rate point zero one"),
        top[0].embedding,
    ) == pytest.approx(1.0)


def test_disjoint_tokens_rank_below_shared(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    a = store.write("alpha beta gamma")
    b = store.write("delta epsilon zeta")
    results = store.read("alpha beta gamma", k=2)
    assert [r.id for r in results] == [a, b]


def test_k_larger_than_store(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    store.write("only one entry")
    assert len(store.read("anything", k=2)) == 1


def test_empty_store_read():
    assert MemoryStore().read("query") == []


def test_empty_content_rejected():
    with pytest.raises(ValueError):
        MemoryStore().write("   ")


def test_tag_of_three_token_content_is_itself():
    embedder = HashedBagEmbedder()
    assert extract_tag("exactly three tokens", embedder) == "exactly three tokens"


def test_tag_of_two_token_content_is_whole():
    embedder = HashedBagEmbedder()
    assert extract_tag("two tokens", embedder) == "two tokens"


def test_dominant_trigram_wins():
    embedder = HashedBagEmbedder()
    content = "noise one two three one two three one two three"
    assert extract_tag(content, embedder) == "one two three"


def test_tag_matches_bruteforce_over_random_stores():
    embedder = HashedBagEmbedder()
    rng = random.Random(4)
    for _ in range(100):
        content = random_content(rng, rng.randint(4, 12))
        tokens = tokenize(content)
        full = embedder.embed(content)
        best = max(
            range(len(tokens) - 2),
            key=lambda i: (
                cosine_similarity(embedder.embed(" ".join(tokens[i:i + 3])), full),
                -i,
            ),
        )
        expected = " ".join(tokens[best:best + 3])
        assert extract_tag(content, embedder) == expected


def test_top2_matches_bruteforce_cosine_ranking(tmp_path):
    rng = random.Random(11)
    for case in range(100):
        store = MemoryStore()
        for _ in range(rng.randint(1, 8)):
            store.write(random_content(rng, rng.randint(3, 10)))
        query = random_content(rng, rng.randint(2, 6))
        qv = store.embedder.embed(query)
        expected = sorted(
            store.records,
            key=lambda r: (-cosine_similarity(qv, r.embedding), r.id),
        )[:2]
        assert [r.id for r in store.read(query, k=2)] == [r.id for r in expected]


def test_scaling_embeddings_preserves_ranking():
    class Scaled:
        def __init__(self, base, factor):
            self.base = base
            self.factor = factor
            self.dim = base.dim

        def embed(self, text):
            return self.base.embed(text) * self.factor

    rng = random.Random(5)
    contents = [random_content(rng, 6) for _ in range(6)]
    query = random_content(rng, 4)
    base_store = MemoryStore(embedder=HashedBagEmbedder())
    scaled_store = MemoryStore(embedder=Scaled(HashedBagEmbedder(), 37.5))
    for c in contents:
        base_store.write(c)
        scaled_store.write(c)
    assert [r.id for r in base_store.read(query, k=4)] == [
        r.id for r in scaled_store.read(query, k=4)
    ]


def test_top1_is_prefix_of_top2(tmp_path):
    rng = random.Random(9)
    store = MemoryStore(tmp_path / "m.json")
    for _ in range(6):
        store.write(random_content(rng, 8))
    for _ in range(20):
        query = random_content(rng, 5)
        top1 = [r.id for r in store.read(query, k=1)]
        top2 = [r.id for r in store.read(query, k=2)]
        assert top2[:1] == top1


def test_earliest_window_wins_ties():
    # identical windows: the earlier one must be chosen
    embedder = HashedBagEmbedder()
    content = "same same same same"
    assert extract_tag(content, embedder) == "same same same"


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(WORDS), min_size=1, max_size=10))
def test_write_then_query_own_content_ranks_first(tokens):
    store = MemoryStore()
    store.write("unrelated filler content")
    content = " ".join(tokens)
    new_id = store.write(content)
    results = store.read(content, k=1)
    qv = store.embedder.embed(content)
    best = max(cosine_similarity(qv, r.embedding) for r in store.records)
    assert cosine_similarity(qv, results[0].embedding) == pytest.approx(best)


def test_atomic_persistence_leaves_no_temp_files(tmp_path):
    store = MemoryStore(tmp_path / "m.json")
    for i in range(5):
        store.write(f"entry number {i} content")
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".memory-")]
    assert leftovers == []
    assert (tmp_path / "m.json").exists()
