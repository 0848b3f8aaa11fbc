import random

import pytest

from blsces import bls
from blsces.credential import CEAS, Claim, Credential


@pytest.fixture(scope="session")
def issuer():
    """One fixed-seed issuer keypair shared across the suite; pairing
    line precomputation for its key is cached after first use."""
    return bls.keygen(random.Random(0xB15CE5))


def random_claim(rng: random.Random, subject: str = "holder") -> Claim:
    prop = rng.choice(["age", "country", "degree", "license", "score", "tier"])
    value = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz0123456789") for _ in range(rng.randint(1, 10)))
    return Claim(subject, prop, value)


def random_credential(rng: random.Random, n: int) -> Credential:
    return Credential(tuple(random_claim(rng) for _ in range(n)))


def random_ceas(rng: random.Random, n: int, max_subsets: int = 4) -> CEAS:
    all_masks = list(range(1, 1 << n))
    rng.shuffle(all_masks)
    return CEAS(n=n, subsets=frozenset(all_masks[: rng.randint(1, min(max_subsets, len(all_masks)))]))
