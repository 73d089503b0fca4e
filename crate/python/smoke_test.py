"""Smoke test for the resilnet Python bindings.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install --force-reinstall dist/resilnet-*.whl
    python python/smoke_test.py
"""

import math

import resilnet


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    # Free-space budget at 200 km, 868 MHz.
    g = resilnet.friis_gain(200e3, 868e6)
    assert abs(10 * math.log10(g) + 137.23) < 0.01, g
    p = resilnet.harvested_power(altitude_m=200e3, mode="zenith")
    assert close(p, 189.1e-9, 5e-3), p
    assert close(resilnet.charging_time(400, 3e-9), 6.0, 1e-9)

    cfg = resilnet.ScenarioConfig(bs_density_per_m2=1e-6, n_trials=2000, master_seed=7)
    none = resilnet.estimate_success(cfg, "none")
    complete = resilnet.estimate_success(cfg, "complete")
    split = resilnet.estimate_success(cfg, "spectrum-split")
    half = resilnet.estimate_success(cfg, "partial:0.5")
    assert none.value <= half.value <= complete.value, (none, half, complete)
    assert split.value == complete.value
    assert resilnet.estimate_success(cfg, "none", workers=1).value == none.value
    cov = resilnet.estimate_silencing_area_coverage(cfg, "spectrum-split")
    assert 0.0 <= cov.value <= 1.0

    small = cfg.replace(n_trials=500)
    rows = resilnet.sweep(small, [0.0, 0.5, 1.0], [2600.0, 5000.0])
    assert len(rows) == 6
    best = resilnet.optimize_tradeoff(small, [0.0, 0.5, 1.0], [2600.0, 5000.0])
    assert best["utility"] == max(r["utility"] for r in rows)

    classes = [("emergency", 1, 5.0, 1.0), ("video", 3, 10.0, 0.5)]
    load = resilnet.admitted_load(classes)
    assert [c["admitted_rate"] for c in load] == [5.0, 5.0]
    sim = resilnet.simulate_access(classes, capacity_per_s=100.0, horizon_s=1000.0, seed=3)
    assert sim[0]["blocking_prob"] == 0.0

    try:
        resilnet.ScenarioConfig(bs_survival_prob=1.5)
    except ValueError as e:
        assert "bs_survival_prob" in str(e)
    else:
        raise AssertionError("invalid config accepted")

    print(f"resilnet {resilnet.__version__}: none={none.value:.4f} "
          f"partial(0.5)={half.value:.4f} complete={complete.value:.4f}; ok")


if __name__ == "__main__":
    main()
