import random

import pytest

from vizrec.dataset import Dataset, Field, FieldType, load_table
from vizrec.datasets_builtin import load_builtin
from vizrec.design_space import NodeId
from vizrec.vizspec import (BIN, COUNT, COUNT_FIELD, MEAN, RAW, SUM, Channel,
                            Encoding, Mark, VisSpec, canonicalize)

N, T, Q = FieldType.NOMINAL, FieldType.TEMPORAL, FieldType.QUANTITATIVE


def make_dataset(name, field_specs, rows):
    """field_specs: list of (name, FieldType)."""
    return Dataset(name, [Field(n, t) for n, t in field_specs], rows)


@pytest.fixture(scope="session")
def movies():
    return load_builtin("movies")


@pytest.fixture(scope="session")
def birdstrikes():
    return load_builtin("birdstrikes")


@pytest.fixture
def tiny():
    """3 fields (2 quantitative, 1 nominal), 6 rows, no missing values."""
    rows = [(1.0, 2.0, "a"), (2.0, 4.0, "b"), (3.0, 6.0, "a"),
            (4.0, 8.0, "c"), (5.0, 10.0, "b"), (6.0, 12.0, "a")]
    return make_dataset("tiny", [("q1", Q), ("q2", Q), ("n1", N)], rows)


@pytest.fixture
def six_fields():
    """6 mixed fields for traversal / recommender tests."""
    rng = random.Random(7)
    rows = []
    for i in range(40):
        rows.append((
            rng.choice(["x", "y", "z"]),
            rng.choice(["red", "blue", "green", "gold"]),
            f"200{rng.randint(0, 9)}-0{rng.randint(1, 9)}-1{rng.randint(0, 9)}",
            rng.uniform(0, 100),
            rng.gauss(50, 10),
            float(rng.randint(0, 5)),
        ))
    return make_dataset(
        "six",
        [("cat", N), ("color", N), ("when", T), ("amount", Q), ("level", Q),
         ("grade", Q)],
        rows,
    )


# ---------------------------------------------------------------------------
# Random valid-spec generation, used by property tests and the acceptance run.

_TRANSFORMS_BY_TYPE = {
    Q: [RAW, BIN, MEAN, SUM],
    T: [RAW, BIN],
    N: [RAW],
}


def random_spec(rng: random.Random, dataset: Dataset, max_attrs: int = 3) -> VisSpec:
    fields = list(dataset.field_names)
    attrs = rng.sample(fields, rng.randint(1, min(max_attrs, len(fields))))
    channels = rng.sample(list(Channel), len(attrs))
    encodings = []
    for ch, a in zip(channels, attrs):
        t = rng.choice(_TRANSFORMS_BY_TYPE[dataset.field_type(a)])
        encodings.append(Encoding(ch, a, t))
    free = [c for c in (Channel.Y, Channel.X) if c not in channels]
    if free and rng.random() < 0.3:
        encodings.append(Encoding(free[0], COUNT_FIELD, COUNT))
    mark = rng.choice(list(Mark))
    return canonicalize(VisSpec(mark, tuple(encodings)))


def random_node(rng: random.Random, dataset: Dataset, max_attrs: int = 3) -> NodeId:
    k = rng.randint(1, min(max_attrs, len(dataset.field_names)))
    return NodeId.of(rng.sample(list(dataset.field_names), k))
