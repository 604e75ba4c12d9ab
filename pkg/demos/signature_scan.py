"""Classify random metrics and cross-check each verdict with the inertia oracle."""

from collections import Counter
from fractions import Fraction as F

import numpy as np

from gamma_sym.metrics import MetricParams
from gamma_sym.signature import classification_oracle, classify, component_spectrum, sample_params, six_case_table

k = 2
print(f"six-case table at k={k}")
for name, _, (p, q) in six_case_table(k):
    print(f"  {name:18s} -> ({p}, {q})")

spec = component_spectrum(MetricParams.uniform(F(1), F(1)), "a", k)
print("spectrum of g_a at lam=(1,1):", {str(mu): m for mu, m in spec.multiset().items()})

rng = np.random.default_rng(7)
points = sample_params(rng, k, 200)
verdicts, disagreements = Counter(), 0
for p in points:
    rep = classify(p, k)
    verdicts[rep.verdict] += 1
    if classification_oracle(p, k, float_check=False).verdict != rep.verdict:
        disagreements += 1
print(f"{len(points)} sampled points:", dict(verdicts.most_common()))
print("disagreements with the oracle:", disagreements)

rep = classify(MetricParams.parse("1,0,1,1,1,1"), k)
print("example report:", rep.to_json()["verdict"], rep.to_json()["total_signature"])
