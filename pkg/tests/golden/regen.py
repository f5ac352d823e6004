"""Rewrite the CLI golden files: python tests/golden/regen.py (review the diff before committing)."""
from pathlib import Path

from click.testing import CliRunner

from ngonal_atlas.cli import cli

CASES = {
    "genus_klein": ["genus", "--n", "7", "--p", "1,2,4"],
    "factor_table4": ["factor", "--table4"],
    "factor_d3": ["factor", "--sig", "(4,4,9,11)", "--K", "D3"],
    "kfixed_c66": ["kfixed", "--sig", "(4,4,9,11)", "--K", "D3"],
    "monodromy_a6": ["monodromy", "--sub", "(2,2,2,5)", "--sup", "(2,4,5)"],
    "wordmap_sigma3": ["wordmap", "--sub", "(2,x1,2*x1)", "--sup", "(2,3,2*x1)", "--m", "3"],
    "maximal_239": ["maximal", "--sig", "(2,3,9)"],
    "orbits_klein": ["orbits", "--fixture", "klein"],
    "orbits_bring": ["orbits", "--fixture", "bring"],
    "orbits_fermat5": ["orbits", "--fixture", "fermat:5"],
    "classify_337": ["classify", "--sig", "(3,3,7)", "--fixture", "klein"],
    "classify_2105": ["classify", "--sig", "(2,10,5)", "--fixture", "fermat:5"],
}

HERE = Path(__file__).parent / "cli"


def render(args):
    res = CliRunner().invoke(cli, ["--json", *args])
    if res.exit_code != 0:
        raise SystemExit(f"{args}: exit {res.exit_code}\n{res.output}")
    return res.output


if __name__ == "__main__":
    HERE.mkdir(exist_ok=True)
    for name, args in CASES.items():
        (HERE / f"{name}.json").write_text(render(args))
        print("wrote", name)
