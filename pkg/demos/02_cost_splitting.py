"""Decomposing published array costs into fixed and per-turbine parts.

Published cost figures usually arrive as a total (or a per-MW figure) for
one or two array sizes. To compare arrays of different sizes we split them
into the affine components CA_f + CA_t * n_t (CAPEX) and O_f + O_t * n_t
(OPEX), using either two observations at different turbine counts or one
observation plus an assumed fixed-to-turbine cost ratio.
"""
from tidalecon import (
    CostBasis,
    CostObservation,
    FixedToTurbineRatio,
    learning_rate_adjust,
    split_from_ratio,
    split_two_points,
)

# Method 1: two totals at different turbine counts. Here 16.8m USD for a
# 2-turbine array and 297m USD for 60 turbines, converted at 0.79 GBP/USD.
ca = split_two_points(
    CostObservation(n_t=2, cost=16.8, currency_rate=0.79),
    CostObservation(n_t=60, cost=297.0, currency_rate=0.79),
)
print("Two-point CAPEX split:")
print(f"  fixed       CA_f = {ca.fixed:6.2f} GBP m")
print(f"  per turbine CA_t = {ca.per_turbine:6.2f} GBP m")

# Method 2: a single per-MW figure plus a fixed-to-turbine ratio. A 100 MW
# array of 1.5 MW turbines at 2.27m GBP per MW, assuming CA_f/CA_t = 2.3.
obs = CostObservation(
    n_t=100 / 1.5, cost=2.27, basis=CostBasis.PER_MW, capacity_mw=100.0
)
split = split_from_ratio(obs, FixedToTurbineRatio(2.3))
print("\nRatio CAPEX split (ratio 2.3):")
print(f"  fixed       CA_f = {split.fixed:6.2f} GBP m")
print(f"  per turbine CA_t = {split.per_turbine:6.2f} GBP m")

# Experience curve: a 13% cost reduction per doubling of installed capacity
# projects today's cost forward to a larger cumulative deployment.
now = 100.0
later = learning_rate_adjust(now, learning_rate=0.13,
                             installed_from_mw=10.0, installed_to_mw=40.0)
print(f"\n100.00 GBP m at 10 MW installed -> {later:.2f} GBP m at 40 MW")
