"""Compare the compiled and pure-Python kernels on the bundled corpus.

    python benchmarks/bench_kernels.py [--repeats 5]

Reports grapheme segmentation and merge application throughput per backend,
plus end-to-end encoding with the word cache disabled.
"""

import argparse
import statistics
import time
from importlib import resources

from bnbpe import kernels
from bnbpe.bpe import UNK_ID, ConstraintProfile, train
from bnbpe.grapheme import CLASS_TABLE, _classify_wide, graphemes
from bnbpe.normalizer import as_normalized


def timeit(fn, repeats):
    runs = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--vocab-size", type=int, default=8000)
    args = ap.parse_args()

    text = resources.files("bnbpe").joinpath("data/sample_corpus.txt").read_text("utf-8")
    lines = [as_normalized(x) for x in text.splitlines()]
    words = [w for line in lines for w in line.content.split(" ")]
    model = train(lines, args.vocab_size, ConstraintProfile.bengali())
    id_lists = [[model.vocab.get(g, UNK_ID) for g in graphemes(w)] for w in words]
    pairs = {(model.vocab[m.left] << 32) | model.vocab[m.right]: m.rank for m in model.merges}

    print(f"{len(lines)} lines, {len(words)} words, {len(model.merges)} merges")
    print(f"{'backend':<8} {'segment words/s':>16} {'merge words/s':>15}")
    results = {}
    for name, (segment, MergeTable) in kernels.backends().items():
        table = MergeTable(pairs, model.flags, model.merge_base, True)
        seg = timeit(lambda: [segment(w, CLASS_TABLE, _classify_wide) for w in words], args.repeats)
        mer = timeit(lambda: [table.apply(ids) for ids in id_lists], args.repeats)
        results[name] = (seg, mer)
        print(f"{name:<8} {len(words) / seg:>16,.0f} {len(words) / mer:>15,.0f}")
    if len(results) == 2:
        (ps, pm), (cs, cm) = results["python"], results["cython"]
        print(f"speedup  {ps / cs:>15.1f}x {pm / cm:>14.1f}x")

    def cold_encode():
        model._cache.clear()
        for line in lines:
            model.encode(line)

    t = timeit(cold_encode, args.repeats)
    print(f"end-to-end encode, cache cleared each pass ({kernels.BACKEND}): {len(lines) / t:,.0f} samples/s")


if __name__ == "__main__":
    main()
