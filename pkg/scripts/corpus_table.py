"""Print the Plucker characters, genus and singularity profile of every bundled curve."""

import json
from importlib import resources

from curvekit.corpus import load_curve
from curvekit.errors import UnsupportedSingularity
from curvekit.local import classify_singularities
from curvekit.plucker import characters
from curvekit.series import genus


def main():
    manifest = json.loads(resources.files("curvekit").joinpath("data/corpus.json").read_text())
    print(f"{'curve':20} {'n':>2} {'p':>2} {'nu':>3} {'rho':>3} {'delta':>5}  singularities")
    for entry in manifest["curves"]:
        f = load_curve(entry["file"])
        sings = ", ".join(f"{s.kind}x{s.orbit_size}" for s in classify_singularities(f)) or "-"
        try:
            c = characters(f)
            row = f"{c.nu:>3} {c.rho:>3} {c.delta:>5}"
        except UnsupportedSingularity:
            row = f"{'?':>3} {'?':>3} {'?':>5}"
        print(f"{entry['name']:20} {f.degree():>2} {genus(f).p:>2} {row}  {sings}")


if __name__ == "__main__":
    main()
