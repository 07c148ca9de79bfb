"""Write every map matrix as JSON for d = 1..max_d into a directory.

    python3 scripts/dump_matrices.py --max-d 4 --out matrices/
"""

import argparse
import io
from pathlib import Path

from toruskk.cli import MAPS, main as cli_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-d", type=int, default=3)
    ap.add_argument("--out", type=Path, default=Path("matrices"))
    ap.add_argument("--format", choices=("json", "text"), default="json")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    ext = "json" if args.format == "json" else "txt"
    for name in sorted(MAPS):
        for d in range(1, args.max_d + 1):
            buf = io.StringIO()
            if cli_main(["matrix", name, "--d", str(d), "--format", args.format], out=buf) != 0:
                raise SystemExit(f"matrix {name} --d {d} failed")
            path = args.out / f"{name}_d{d}.{ext}"
            path.write_text(buf.getvalue())
            print(path)


if __name__ == "__main__":
    main()
