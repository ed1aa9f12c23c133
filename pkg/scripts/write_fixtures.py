"""Write the named fixture algebras to data/*.json, plus a deliberately malformed file."""
import json
from pathlib import Path

from skewgentle.fixtures import NAMED
from skewgentle.io import algebra_to_dict

OUT = Path(__file__).resolve().parent.parent / "data"


def main():
    OUT.mkdir(exist_ok=True)
    for name, make in NAMED.items():
        (OUT / f"{name}.json").write_text(json.dumps(algebra_to_dict(make()), indent=2) + "\n")
    # arrow without a target, relation of length three
    bad = {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1"}], "relations": [["a", "a", "a"]]}
    (OUT / "malformed.json").write_text(json.dumps(bad, indent=2) + "\n")
    print(f"wrote {len(NAMED) + 1} files to {OUT}")


if __name__ == "__main__":
    main()
