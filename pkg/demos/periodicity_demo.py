"""Periodic solutions from the sufficient conditions.

Builds instances that satisfy the period-2 and period-4 hypotheses exactly,
confirms the detected minimal period, and tries the relaxed period-4 case
where the cross-product condition is dropped.
"""
import random

from ratsys.orbit import iterate
from ratsys.periodicity import period_report, sample_period2, sample_period4, sample_remark

rng = random.Random(7)
for label, sampler in (("period-2", sample_period2), ("period-4", sample_period4), ("relaxed", sample_remark)):
    spec, init = sampler(rng)
    report = period_report(spec, init, 48, 8)
    print(f"{label:9s} a,b,c,d={[str(v) for v in spec.constants()]}  init={init.to_text()}")
    print(f"          {report.line()}")
    orbit = iterate(spec, init, 7)
    print("          x:", ", ".join(str(orbit.x(n)) for n in orbit.indices()))
