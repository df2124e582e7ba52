"""Converts the mini OAEI fixture and aligns it with the CLI.
Usage: oaei_convert_check.py <sigma binary> <repo root> <scratch dir>.
Exits 77 when rdflib is unavailable."""

import subprocess
import sys
from pathlib import Path

try:
    import rdflib  # noqa: F401
except ImportError:
    print("SKIP: rdflib not installed")
    sys.exit(77)

EXPECTED = "P=1.000 R=0.800 F=0.889"


def main():
    sigma, root, scratch = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    fixture = root / "tests" / "fixtures" / "oaei_mini"
    subprocess.run([sys.executable, str(root / "tools" / "oaei_to_triples.py"),
                    str(fixture / "kb1.rdf"), str(fixture / "kb2.rdf"), str(fixture / "gold.rdf"),
                    str(scratch), "--label-props", "given_name,surname"], check=True)
    mapping = (scratch / "mapping.tsv").read_text()
    assert "rel\thas_address\thas_address\n" in mapping, mapping
    assert mapping.endswith("label\tlabel\tlabel\n"), mapping
    assert len((scratch / "gt.tsv").read_text().splitlines()) == 5

    args = [sigma, "align", "--out", str(scratch / "pred.tsv"), "--eval-gt", str(scratch / "gt.tsv"),
            "--map", str(scratch / "mapping.tsv")]
    for kb in ("kb1", "kb2"):
        for part in ("rel", "prop"):
            args += [f"--{kb}-{part}", str(scratch / f"{kb}_{part}.tsv")]
    out = subprocess.run(args, check=True, capture_output=True, text=True).stdout
    print(out, end="")
    if EXPECTED not in out:
        print(f"expected '{EXPECTED}'")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
