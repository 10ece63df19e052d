#!/usr/bin/env python3
"""Deterministic synthetic stand-in for the Pima Indians Diabetes file.

The original file must be fetched from the UCI repository and cannot be
redistributed here, so the bundled data/pima.csv is generated by this script:
768 rows in the Table-style schema (8 features + 0/1 class label), 500 rows
labelled 1 (healthy) and 268 labelled 0 (patient), with zero cells injected
into the columns that carry them in the original (glucose, blood pressure,
skinfold, insulin, BMI). Class-conditional marginals approximate the
original's, with slightly wider class separation so a tuned classifier lands
in a realistic accuracy band.

Usage: python3 tools/gen_synthetic_pima.py > data/pima.csv
"""

import random

SEED = 20240811
N_HEALTHY = 500  # class label 1
N_PATIENT = 268  # class label 0

# per class: (mean, sd, lo, hi) per feature, plus rounding and zero-rate
HEALTHY = {
    "pregnancies": (2.9, 2.9, 0, 13),
    "glucose": (106.0, 23.0, 56, 190),
    "bp": (68.0, 15.0, 24, 106),
    "skinfold": (26.0, 9.0, 7, 52),
    "insulin": (100.0, 60.0, 15, 480),
    "bmi": (29.2, 6.0, 18.2, 48.0),
    "pedigree": (0.40, 0.26, 0.078, 1.80),
    "age": (29.0, 9.2, 21, 72),
}
PATIENT = {
    "pregnancies": (5.6, 3.6, 0, 17),
    "glucose": (150.0, 29.0, 78, 199),
    "bp": (75.0, 17.0, 30, 114),
    "skinfold": (34.0, 10.0, 7, 63),
    "insulin": (195.0, 105.0, 15, 846),
    "bmi": (36.6, 6.6, 22.9, 67.1),
    "pedigree": (0.60, 0.36, 0.085, 2.42),
    "age": (39.5, 10.8, 21, 81),
}
ZERO_RATES = {
    # column -> (healthy rate, patient rate), mirroring the original's shares
    "glucose": (0.006, 0.008),
    "bp": (0.046, 0.045),
    "skinfold": (0.28, 0.33),
    "insulin": (0.47, 0.51),
    "bmi": (0.014, 0.014),
}
ORDER = ["pregnancies", "glucose", "bp", "skinfold", "insulin", "bmi", "pedigree", "age"]
INTEGER = {"pregnancies", "glucose", "bp", "skinfold", "insulin", "age"}


def draw(rng, spec):
    mean, sd, lo, hi = spec
    value = rng.gauss(mean, sd)
    return min(max(value, lo), hi)


def render(name, value):
    if name in INTEGER:
        return str(int(round(value)))
    if name == "bmi":
        return "0" if value == 0 else f"{value:.1f}"
    return f"{value:.3f}"


def make_rows(rng, n, spec, label, zero_col):
    rows = []
    for _ in range(n):
        values = {name: draw(rng, spec[name]) for name in ORDER}
        for col, rates in ZERO_RATES.items():
            if rng.random() < rates[zero_col]:
                values[col] = 0.0
        rows.append([render(name, values[name]) for name in ORDER] + [str(label)])
    return rows


def main():
    rng = random.Random(SEED)
    rows = make_rows(rng, N_HEALTHY, HEALTHY, 1, 0) + make_rows(rng, N_PATIENT, PATIENT, 0, 1)
    rng.shuffle(rows)
    for row in rows:
        print(",".join(row))


if __name__ == "__main__":
    main()
