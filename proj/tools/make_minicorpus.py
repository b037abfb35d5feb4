#!/usr/bin/env python3
"""Writes the 20-file test corpus under tests/data/minicorpus.

Files share four key domains. Every key carries latent attributes, and the
value columns of each file are noisy functions of them, so columns of
different files that share a key domain are related through the join.
"""
import argparse
import csv
import pathlib

import numpy as np

DOMAINS = {
    "zip": ["Z%05d" % (10001 + i) for i in range(350)],
    "station": ["ST-%04d" % i for i in range(600)],
    "agency": ["AG" + chr(65 + (i * 11 + 3) % 26) + chr(65 + i % 26) + chr(65 + (i // 26) % 26) for i in range(40)],
    "school": ["S%03d" % i for i in range(400)],
}

# (file, domain, key column, rows, skew, value columns)
# value column kinds: num (linear in latents), count (Poisson), cat (binned latent), noise
FILES = [
    ("housing_sales", "zip", "zipcode", 4000, 1.1, [("price", "num", 0), ("rooms", "count", 1)]),
    ("noise_complaints", "zip", "zip", 3000, 1.3, [("complaints", "count", 0), ("severity", "cat", 1)]),
    ("tree_census", "zip", "zipcode", 5000, 0.9, [("diameter", "num", 1), ("health", "cat", 0)]),
    ("restaurant_grades", "zip", "zip_code", 2500, 1.2, [("score", "num", 0), ("grade", "cat", 0)]),
    ("parking_tickets", "zip", "zip", 6000, 1.0, [("fine", "num", 2), ("hour", "count", 2)]),
    ("station_ridership", "station", "station_id", 4000, 1.0, [("riders", "num", 0), ("line", "cat", 1)]),
    ("station_delays", "station", "station_id", 3000, 1.2, [("delay_min", "num", 0), ("cause", "cat", 2)]),
    ("elevator_outages", "station", "station", 1500, 0.8, [("outages", "count", 1), ("borough", "cat", 1)]),
    ("bike_docks", "station", "dock_station", 3500, 1.1, [("docks", "count", 0), ("usage", "num", 1)]),
    ("station_cleanliness", "station", "station_id", 2000, 1.0, [("rating", "num", 2), ("inspector", "noise", 0)]),
    ("agency_budget", "agency", "agency", 1200, 0.6, [("budget", "num", 0), ("tier", "cat", 0)]),
    ("agency_hiring", "agency", "agency_code", 3000, 0.9, [("hires", "count", 0), ("dept_type", "cat", 1)]),
    ("agency_contracts", "agency", "agency", 2500, 1.1, [("amount", "num", 1), ("vendor_class", "cat", 0)]),
    ("agency_311", "agency", "agency", 5000, 1.3, [("resolution_days", "num", 0), ("channel", "noise", 0)]),
    ("school_attendance", "school", "school_id", 3000, 0.9, [("attendance", "num", 0), ("district", "cat", 1)]),
    ("school_tests", "school", "dbn", 4000, 1.0, [("math_score", "num", 0), ("ela_score", "num", 1)]),
    ("school_safety", "school", "school_id", 2000, 1.2, [("incidents", "count", 1), ("level", "cat", 0)]),
    ("school_meals", "school", "school", 2500, 0.8, [("meals", "count", 0), ("program", "cat", 2)]),
    ("school_buses", "school", "school_id", 1800, 1.0, [("routes", "count", 2), ("late_pct", "num", 0)]),
    ("school_surveys", "school", "school_id", 3500, 1.1, [("satisfaction", "num", 1), ("respondent", "noise", 0)]),
]

LEVELS = {
    0: ["low", "medium", "high"],
    1: ["north", "east", "south", "west"],
    2: ["minor", "moderate", "major", "critical", "unknown"],
}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "minicorpus"))
    ap.add_argument("--seed", type=int, default=20240601)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)

    latent = {d: rng.normal(size=(len(keys), 3)) for d, keys in DOMAINS.items()}

    for name, domain, key_col, rows, skew, cols in FILES:
        keys = DOMAINS[domain]
        z = latent[domain]
        weights = 1.0 / np.arange(1, len(keys) + 1) ** skew
        order = rng.permutation(len(keys))
        probs = np.empty(len(keys))
        probs[order] = weights / weights.sum()
        idx = rng.choice(len(keys), size=rows, p=probs)

        table = {key_col: [keys[i] for i in idx]}
        for col, kind, a in cols:
            lat = z[idx, a]
            if kind == "num":
                scale = rng.uniform(5, 500)
                v = scale * (lat + 0.4 * rng.normal(size=rows)) + rng.uniform(-100, 100)
                table[col] = ["%.2f" % x for x in v]
            elif kind == "count":
                table[col] = [str(x) for x in rng.poisson(np.exp(1.0 + 0.6 * lat))]
            elif kind == "cat":
                labels = LEVELS[a]
                cuts = np.quantile(z[:, a], np.linspace(0, 1, len(labels) + 1)[1:-1])
                b = np.searchsorted(cuts, lat + 0.3 * rng.normal(size=rows))
                table[col] = ["%s_%s" % (col, labels[i]) for i in b]
            else:
                table[col] = ["%s_%d" % (col, x) for x in rng.integers(0, 12, size=rows)]

        with open(out / (name + ".csv"), "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            header = list(table)
            w.writerow(header)
            for r in range(rows):
                w.writerow([table[h][r] for h in header])


if __name__ == "__main__":
    main()
