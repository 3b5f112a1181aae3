"""Companion linearization inclusion and a random search for certified members."""

from _data import bounded_quadratic

from hrnr import companion_inclusion_check, nonemptiness_probe

L = bounded_quadratic()
report = companion_inclusion_check(L, 2, [-0.75 - 1.25j, -0.25 - 0.75j, 50])
for row in report.rows:
    print(f"{row.point}: L {row.status_L}, companion {row.status_C}, {'ok' if row.passed else 'violated'}")
print("origin in the companion range:", report.origin_status)

probe = nonemptiness_probe(L, 2, 5, seed=1)
for hit in probe.hits:
    print(f"sample {hit.sample}: certified member {hit.point:.6f}")
