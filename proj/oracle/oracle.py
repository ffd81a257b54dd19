"""Independent brute-force oracle used to freeze golden values for the C++ tests.

Everything is computed with exact rationals (fractions.Fraction) straight from
the decimal text in data/*.csv; only the final square roots go through mpmath
at 50 digits. Nothing here shares code with the C++ implementation.
"""
import csv
import json
from fractions import Fraction
from pathlib import Path

import mpmath

mpmath.mp.dps = 50
DATA = Path(__file__).resolve().parent.parent / "data"


def load(name, skip=()):
    with open(DATA / f"{name}.csv") as f:
        rows = list(csv.reader(f))
    header = rows[0]
    cols = {}
    for j, h in enumerate(header):
        if h in skip:
            continue
        cols[h] = [Fraction(r[j]) for r in rows[1:]]
    return cols


def fit(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    beta = sxy / sxx
    alpha = my - beta * mx
    return alpha, beta


def pearson(xs, ys):
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return mpmath.mpf(sxy.numerator) / sxy.denominator / mpmath.sqrt(
        mpmath.mpf((sxx * syy).numerator) / (sxx * syy).denominator)


def metrics(actual, predicted):
    n = len(actual)
    ape = sum(abs((a - p) / a) for a, p in zip(actual, predicted)) / n * 100
    ae = sum(abs(a - p) for a, p in zip(actual, predicted)) / n
    se = sum((a - p) ** 2 for a, p in zip(actual, predicted)) / n
    f = lambda q: float(mpmath.mpf(q.numerator) / q.denominator)
    return {"mape": f(ape), "mae": f(ae),
            "rmse": float(mpmath.sqrt(mpmath.mpf(se.numerator) / se.denominator))}


def resub(xs, ys):
    a, b = fit(xs, ys)
    return metrics(ys, [a + b * x for x in xs])


def loo(xs, ys):
    preds = []
    for i in range(len(xs)):
        tx = xs[:i] + xs[i + 1:]
        ty = ys[:i] + ys[i + 1:]
        a, b = fit(tx, ty)
        preds.append(a + b * xs[i])
    return metrics(ys, preds)


# SplitMix64 + Fisher-Yates with rejection-sampled bounded draws.
MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound):
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next()
            if x < limit:
                return x % bound


def shuffle(n, seed):
    rng = SplitMix64(seed)
    p = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        p[i], p[j] = p[j], p[i]
    return p


def kfold(xs, ys, k, seed):
    n = len(xs)
    perm = shuffle(n, seed)
    base, extra = divmod(n, k)
    preds = [None] * n
    start = 0
    for f in range(k):
        size = base + (1 if f < extra else 0)
        test = set(perm[start:start + size])
        start += size
        tx = [xs[i] for i in range(n) if i not in test]
        ty = [ys[i] for i in range(n) if i not in test]
        a, b = fit(tx, ty)
        for i in test:
            preds[i] = a + b * xs[i]
    return metrics(ys, preds)


def main():
    out = {"shuffle_5_42": shuffle(5, 42), "shuffle_10_7": shuffle(10, 7)}
    cases = [
        ("mtcars", load("mtcars", skip=("model",)), "mpg", ["disp", "hp"]),
        ("iris", load("iris", skip=("species",)), "petal_length",
         ["sepal_length", "petal_width"]),
    ]
    for name, cols, y, xs in cases:
        for x in xs:
            a, b = fit(cols[x], cols[y])
            key = f"{name}:{y}~{x}"
            out[key] = {
                "alpha": float(a), "beta": float(b),
                "r": float(pearson(cols[x], cols[y])),
                "insample": resub(cols[x], cols[y]),
                "loo": loo(cols[x], cols[y]),
                "kfold5_seed42": kfold(cols[x], cols[y], 5, 42),
            }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
