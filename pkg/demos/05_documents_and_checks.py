"""Serialization round trips and the command-line equivalents.

Run:  python3 demos/05_documents_and_checks.py
"""

import tempfile
from pathlib import Path

from symchain import graded_poly, koszul, parse, serialize, sym2
from symchain.cli import main

ring = graded_poly("x", "y")
x, y = ring.generators()
K = koszul([x, y])

# Complexes serialize to a canonical JSON text profile: fixed key order,
# dense row-major matrices of scalar strings.  Round trips are exact.
text = serialize(K)
print(text)
assert parse(text) == K
assert serialize(parse(text)) == text

# The command-line interface wraps the same library calls.  Write the
# document to a file and run a few subcommands on it.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "koszul.json"
    path.write_text(text, encoding="utf-8")

    print("$ symchain series --verify koszul.json")
    main(["series", "--verify", str(path)])

    print("\n$ symchain homology koszul.json")
    main(["homology", str(path)])

    square = Path(tmp) / "square.json"
    square.write_text(serialize(sym2(K).complex), encoding="utf-8")
    print("\n$ symchain homology square.json --bound 6")
    main(["homology", str(square), "--bound", "6"])

    print("\n$ symchain check symm07pp koszul.json")
    main(["check", "symm07pp", str(path)])

    print("\n$ symchain corpus run")
    main(["corpus", "run"])
