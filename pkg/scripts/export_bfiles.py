import argparse
import os
import sys
import time
from pathlib import Path

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from finfish.data.formats import bfile_lines, parse_bfile
from finfish.fish.grammar import joint_distribution
from finfish.formulas.closed_forms import fish_count_ij, fish_counts, marked_tail_count, ternary_tree_count
from finfish.trees.ternary import j_positive_counts


def cross_check(max_size: int) -> list[str]:
    """Compare closed forms with the grammar counts up to max_size; returns mismatch messages."""
    problems = []
    table = joint_distribution(max_size)
    by_size = table.marginal("size")
    for n, value in enumerate(fish_counts(max_size - 1), start=1):
        if by_size.get(n + 1, 0) != value:
            problems.append(f"fish_count({n}) = {value} but enumeration gives {by_size.get(n + 1, 0)}")
    by_sides = table.marginal("lsize", "rsize")
    for i in range(1, max_size):
        for j in range(1, max_size + 1 - i):
            if by_sides.get((i, j), 0) != fish_count_ij(i, j):
                problems.append(f"fish_count_ij({i}, {j}) disagrees with enumeration")
    trees = j_positive_counts(0, max_size - 1)
    for n, value in enumerate(trees):
        # non-empty left ternary trees with n nodes match fish of size n+1
        if n and value != by_size.get(n + 1, 0):
            problems.append(f"{value} left ternary trees with {n} nodes, {by_size.get(n + 1, 0)} fish of size {n + 1}")
    return problems


def main():
    """b-file exporter"""
    parser = argparse.ArgumentParser(description="Export OEIS b-files for fish and tree counts")
    parser.add_argument("--out-dir", default="./bfiles", help="Output directory")
    parser.add_argument("--max", type=int, default=200, help="Largest index written")
    parser.add_argument("--i", type=int, default=2, help="Fixed first index of the bivariate sequences")
    parser.add_argument("--verify-size", type=int, default=9, help="Cross-check against enumeration up to this size")
    parser.add_argument("--skip-verify", action="store_true", help="Skip the enumeration cross-check")

    args = parser.parse_args()

    print("🚀 b-file exporter")
    print(f"📁 Output: {args.out_dir}")
    print(f"📈 Max index: {args.max}")
    print("=" * 50)

    if args.max < 1 or args.i < 1:
        print("❌ --max and --i must be positive")
        return 2

    if not args.skip_verify:
        start = time.time()
        print(f"🔍 Cross-checking closed forms up to size {args.verify_size}...")
        problems = cross_check(args.verify_size)
        if problems:
            for problem in problems:
                print(f"❌ {problem}")
            return 1
        print(f"✅ Cross-check passed in {time.time() - start:.2f}s")

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {
        "fish.txt": bfile_lines(fish_counts(args.max), offset=1),
        f"fish_i{args.i}.txt": bfile_lines([fish_count_ij(args.i, j) for j in range(1, args.max + 1)]),
        f"marked_tails_i{args.i}.txt": bfile_lines([marked_tail_count(args.i, j) for j in range(1, args.max + 1)]),
        "ternary.txt": bfile_lines([ternary_tree_count(n) for n in range(args.max + 1)], offset=0),
    }
    for name, text in files.items():
        path = out_dir / name
        path.write_text(text, encoding="ascii")
        # re-read to make sure the written file parses back to the same terms
        if len(parse_bfile(path.read_text(encoding="ascii"))) != len(text.splitlines()):
            print(f"❌ {name} did not parse back")
            return 1
        print(f"💾 Wrote {path}")

    print("🎉 Export completed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
