#!/usr/bin/env python3
"""Walk the whole protocol once, printing each artifact.

Issuer signs a three-claim credential under an extraction policy; the
holder discloses two claims two ways: as a plain presentation, and as a
proof that the hashing was done right plus an age-range predicate,
revealing only curve points.  Run from the repo root:

    python scripts/demo_flow.py
"""

import random
import time

from blsces import (
    CEAS,
    Claim,
    Credential,
    ExtractionSet,
    ces_extract,
    ces_sign,
    ces_verify,
)
from blsces.zk import RangePredicate, prove_extraction, zk_setup, zk_verify


def main():
    rng = random.Random(2024)
    setup = zk_setup(rng=rng)
    print(f"issuer secret key: {setup.keypair.sk:#x}")

    cred = Credential(
        (
            Claim("alice", "age", "19"),
            Claim("alice", "country", "CH"),
            Claim("alice", "insurance", "premium"),
        )
    )
    ceas = CEAS.from_index_sets(3, [[0], [0, 1], [0, 1, 2]])
    print(f"credential: {[ (c.property, c.value) for c in cred.claims ]}")
    print(f"policy subsets: {ceas.index_sets()}")

    signed = ces_sign(setup.keypair.sk, cred, ceas)
    print(f"issued; per-claim counters: {signed.counters}")

    x = ExtractionSet(frozenset({0, 1}))
    pres = ces_extract(signed, x)
    print(f"presentation discloses {sorted(x.indices)}; hidden: {[c.property for c in pres.sub_cred.claims if c.hidden]}")
    print(f"aggregate signature: {pres.sigma.data.hex()}")

    result = ces_verify(setup.keypair.pk, pres)
    print(f"plain verification: {result.accept} ({result.code})")

    print("proving hash-to-curve + age in [18, 25] ...")
    t0 = time.monotonic()
    proof, inputs = prove_extraction(
        setup.backend_params, cred, ceas, x, predicate=RangePredicate(0, 18, 25)
    )
    print(f"  proof built in {time.monotonic() - t0:.1f}s ({len(proof.data)} bytes)")
    print(f"  public x-coordinates: {[hex(v) for v in inputs.x_coords]}")

    t0 = time.monotonic()
    zk = zk_verify(setup.backend_params, setup.keypair.pk, pres.sigma, proof, inputs)
    print(
        f"zk verification in {time.monotonic() - t0:.1f}s: accept={zk.accept} "
        f"(policy={zk.policy_ok} pairing={zk.pairing_ok} proof={zk.proof_ok})"
    )


if __name__ == "__main__":
    main()
