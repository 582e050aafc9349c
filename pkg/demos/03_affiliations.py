"""Locate, extract, match, and classify affiliations from a LaTeX source.

The alias table unifies name variants (with/without department, common
abbreviations) and carries email domains plus the academia/industry sector.
"""

from mair.affiliations import AliasTable, extract_affiliations

SOURCE = r"""
\title{Post-hoc Attribution at Scale}
\affil[1]{Dept. of Physics, Warsaw Univ. of Technology}
\affil[2]{MI$^2$ Data Lab, Warsaw University of Technology}
\affil[3]{DeepMind Technologies Ltd, London}
\affil[4]{Independent Privacy Collective Institute}
\begin{abstract}We study attribution.\end{abstract}
In related work, Example University is cited but is not an affiliation.
"""

table = AliasTable(
    {
        "Warsaw University of Technology": (
            ["Warsaw Univ. of Technology", "MI$^2$ Data Lab"],
            ["pw.edu.pl"],
            "academia",
        ),
        "DeepMind": (["DeepMind Technologies Ltd"], ["deepmind.com"], "industry"),
    }
)

for record in extract_affiliations("demo-paper", SOURCE, table):
    target = record.canonical or "(unresolved)"
    print(f"{record.surface:45} -> {target:35} {record.sector:9} via {record.evidence}")
