#!/usr/bin/env python3
"""Regenerates the bundled synthetic weekly demand profiles.

ran_weekly.csv   peak-normalized mobile traffic shape (weekday busy hour 11:00,
                 afternoon shoulder, quiet nights, softer weekends).
llm_weekly.csv   per-day request fractions for LLM inference (morning trough,
                 afternoon ramp, evening peak).

Both are hand-shaped stand-ins for measured curves; replace them with
`airan ingest-trace` output or any `hour,value` file for real studies.
"""

import pathlib

HERE = pathlib.Path(__file__).resolve().parent

RAN_WEEKDAY = [
    0.14, 0.09, 0.07, 0.06, 0.06, 0.08, 0.15, 0.29, 0.52, 0.72, 0.88, 1.00,
    0.90, 0.76, 0.72, 0.76, 0.78, 0.75, 0.65, 0.53, 0.41, 0.33, 0.25, 0.19,
]
RAN_SATURDAY = [
    0.16, 0.12, 0.09, 0.07, 0.06, 0.06, 0.09, 0.15, 0.26, 0.40, 0.52, 0.58,
    0.60, 0.58, 0.55, 0.55, 0.57, 0.57, 0.53, 0.46, 0.39, 0.33, 0.27, 0.21,
]
RAN_SUNDAY = [
    0.17, 0.13, 0.09, 0.07, 0.06, 0.06, 0.07, 0.10, 0.18, 0.29, 0.40, 0.47,
    0.50, 0.48, 0.46, 0.46, 0.48, 0.50, 0.48, 0.43, 0.37, 0.31, 0.24, 0.17,
]

# Raw relative request counts; normalized per day below.
LLM_WEEKDAY = [
    30, 26, 22, 18, 15, 12, 10, 9, 9, 10, 13, 18,
    26, 34, 40, 44, 48, 52, 58, 63, 66, 64, 52, 40,
]
LLM_WEEKEND = [
    32, 28, 24, 20, 17, 14, 12, 11, 11, 12, 15, 19,
    25, 30, 34, 37, 40, 44, 50, 55, 58, 56, 47, 38,
]


def write(path, rows):
    with open(path, "w", newline="\n") as f:
        f.write("hour,value\n")
        for h, v in enumerate(rows):
            f.write(f"{h},{v:.10g}\n")


def main():
    ran = RAN_WEEKDAY * 5 + RAN_SATURDAY + RAN_SUNDAY
    assert len(ran) == 168 and max(ran) == 1.0
    write(HERE / "ran_weekly.csv", ran)

    llm = []
    for day in range(7):
        raw = LLM_WEEKDAY if day < 5 else LLM_WEEKEND
        total = float(sum(raw))
        llm.extend(v / total for v in raw)
    write(HERE / "llm_weekly.csv", llm)


if __name__ == "__main__":
    main()
