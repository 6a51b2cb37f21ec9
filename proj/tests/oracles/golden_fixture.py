"""Independent exact-arithmetic evaluator for the golden 3-image fixture.

Everything is computed with fractions.Fraction straight from the JSON, so
the frozen values in golden_test.cc do not depend on the C++ code path.
Run: python3 tests/oracles/golden_fixture.py
"""
import json
import os
from fractions import Fraction as F

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

IOUS = [F(50 + 5 * k, 100) for k in range(10)]
RECALLS = [F(k, 100) for k in range(101)]
AREAS = {"all": (0, None), "small": (0, 1024), "medium": (1024, 9216),
         "large": (9216, None)}
MAX_DETS = [1, 10, 100]


def corner(b):
    x, y, w, h = (F(v) for v in b)
    return (x, y, x + w, y + h)


def area(b):
    return (b[2] - b[0]) * (b[3] - b[1])


def iou(a, b):
    iw = max(F(0), min(a[2], b[2]) - max(a[0], b[0]))
    ih = max(F(0), min(a[3], b[3]) - max(a[1], b[1]))
    inter = iw * ih
    union = area(a) + area(b) - inter
    return F(0) if union == 0 else inter / union


def in_range(a, rng):
    lo, hi = rng
    return a >= lo and (hi is None or a < hi)


def main():
    gt_doc = json.load(open(os.path.join(DATA, "golden_gt.json")))
    dets_doc = json.load(open(os.path.join(DATA, "golden_dets.json")))
    cats = sorted(c["id"] for c in gt_doc["categories"])
    images = [i["id"] for i in gt_doc["images"]]

    def cell(theta, cat, rng, md):
        verdicts, ngt = [], 0
        for img in images:
            gts = [corner(a["bbox"]) for a in gt_doc["annotations"]
                   if a["image_id"] == img and a["category_id"] == cat]
            gts = [g for g in gts if in_range(area(g), rng)]
            ds = [(F(str(d["score"])), corner(d["bbox"])) for d in dets_doc
                  if d["image_id"] == img and d["category_id"] == cat]
            ds = [d for d in ds if in_range(area(d[1]), rng)]
            ds = sorted(ds, key=lambda d: -d[0])[:md]
            used = [False] * len(gts)
            for score, box in ds:
                best, best_iou = None, F(-1)
                for gi, g in enumerate(gts):
                    v = iou(box, g)
                    if not used[gi] and v >= theta and v > best_iou:
                        best, best_iou = gi, v
                if best is not None:
                    used[best] = True
                verdicts.append((score, best is not None))
            ngt += len(gts)
        verdicts.sort(key=lambda v: -v[0])
        return verdicts, ngt

    def ap(verdicts, ngt):
        rs, ps, tp = [], [], 0
        for k, (_, is_tp) in enumerate(verdicts, 1):
            tp += is_tp
            rs.append(F(tp, ngt))
            ps.append(F(tp, k))
        for i in range(len(ps) - 2, -1, -1):
            ps[i] = max(ps[i], ps[i + 1])
        total = F(0)
        for r in RECALLS:
            for i, rv in enumerate(rs):
                if rv >= r:
                    total += ps[i]
                    break
        return total / len(RECALLS)

    def mean_map(ious, rng, md):
        vals = []
        for cat in cats:
            if cell(ious[0], cat, AREAS[rng], md)[1] == 0:
                continue
            for t in ious:
                vals.append(ap(*cell(t, cat, AREAS[rng], md)))
        return sum(vals) / len(vals) if vals else None

    def mean_recall(rng, md):
        vals = []
        for cat in cats:
            for t in IOUS:
                v, ngt = cell(t, cat, AREAS[rng], md)
                if ngt:
                    vals.append(F(sum(x[1] for x in v), ngt))
        return sum(vals) / len(vals) if vals else None

    rows = {
        "map_standard": mean_map(IOUS, "all", 100),
        "map_50": mean_map([F(1, 2)], "all", 100),
        "map_75": mean_map([F(3, 4)], "all", 100),
        "map_small": mean_map(IOUS, "small", 100),
        "map_medium": mean_map(IOUS, "medium", 100),
        "map_large": mean_map(IOUS, "large", 100),
        "recall_maxdets_1": mean_recall("all", 1),
        "recall_maxdets_10": mean_recall("all", 10),
        "recall_maxdets_100": mean_recall("all", 100),
        "recall_small": mean_recall("small", 100),
        "recall_medium": mean_recall("medium", 100),
        "recall_large": mean_recall("large", 100),
    }
    for k, v in rows.items():
        print(f"{k:20s} {str(v):>10s} {float(v):.12f}")


if __name__ == "__main__":
    main()
