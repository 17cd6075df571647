#!/usr/bin/env python3
"""Generates data/labeled_examples.tsv, the 200-row labeled training fixture.

194 rows are synthesised from sentence templates and URI pools with a fixed
seed; the last six are the sample sentences used as classifier test vectors.
Rerunning the script reproduces the committed file byte for byte.
"""

import random
import sys
from pathlib import Path

SEED = 20230601

OADS_TEMPLATES = [
    "The dataset is publicly available at {u}.",
    "Our code is publicly available at {u}.",
    "Source code and data for all experiments are available at {u}.",
    "The software package can be downloaded from {u}.",
    "We release our implementation at {u}.",
    "All data used in this study can be obtained from {u}.",
    "The full catalogue is publicly available for download at {u}.",
    "The simulation code is open source and available at {u}.",
    "The analysis pipeline is implemented in the open-source package {n} ({u}).",
    "Data products are publicly accessible through {u}.",
    "The benchmark dataset can be downloaded from {u}.",
    "Our implementation is available online at {u}.",
    "The raw data are archived and openly accessible at {u}.",
    "The toolkit is freely available at {u}.",
    "The source code for reproducing the figures is hosted at {u}.",
    "We used the publicly available {n} library ({u}).",
    "Spectra were retrieved from the public data archive at {u}.",
    "The codebase used for training is available at {u}.",
    "Scripts and data to reproduce the analysis are provided at {u}.",
    "The measurements are distributed as an open dataset at {u}.",
    "An open-source implementation of the algorithm is available at {u}.",
    "The tables of atomic data were taken from the database at {u}.",
    "Light curves were downloaded from {u}.",
    "The {n} software is distributed under an open licence at {u}.",
    "Our trained models and code are released at {u}.",
    "We build on the implementation developed by {p} ({u}).",
    "The simulator we modified was written by {p} and is available at {u}.",
    "Our experiments use the reference code of {p} ({u}).",
]

NON_OADS_TEMPLATES = [
    "This article is available from {u}.",
    "A video of the experiments can be seen at {u}.",
    "Their efforts are gratefully acknowledged at {u}.",
    "More information about the conference can be found at {u}.",
    "The author's personal homepage is {u}.",
    "A supplementary movie showing the simulation is at {u}.",
    "Follow the collaboration news on {u}.",
    "The workshop website is {u}.",
    "This work was funded by the foundation ({u}).",
    "Photographs of the apparatus are shown at {u}.",
    "For press coverage of the discovery see {u}.",
    "The call for papers was announced at {u}.",
    "A recording of the talk can be watched at {u}.",
    "The journal homepage is {u}.",
    "An earlier version of this paper appeared at {u}.",
    "The lecture slides can be viewed at {u}.",
    "The names of all volunteers are listed at {u}.",
    "A popular-science summary of this paper was published at {u}.",
    "See the review article at {u} for background.",
    "The survey announcement is posted at {u}.",
    "We thank the participants whose contributions are recognised at {u}.",
    "The demonstration video is available on {u}.",
    "Details of the award can be found at {u}.",
    "The published version of this article appears at {u}.",
    "An interview with the authors is at {u}.",
]

# Sentences whose label genuinely depends on more than wording.
AMBIGUOUS = [
    ("OADS", "More details are given at {u}."),
    ("NonOADS", "More details are given at {u}."),
    ("OADS", "See {u}."),
    ("NonOADS", "See {u}."),
    ("OADS", "The project website is {u}."),
    ("NonOADS", "The project website is {u}."),
]

NAMES = ["astropy", "scikit-learn", "GADGET", "Geant4", "ROOT", "healpy", "emcee", "PyTorch", "CLASS", "SExtractor",
         "Stan", "GROMACS", "LAMMPS", "Quantum ESPRESSO", "MESA"]

PEOPLE = ["J. Smith", "A. Kumar", "M. Rossi", "L. Garcia", "H. Tanaka", "E. Novak"]

USERS = ["jdoe", "qmlab", "astro-group", "nlp-uni", "hep-tools", "bioinf", "cosmo-sim", "mlresearch", "kchen", "lab42"]
REPOS = ["pipeline", "sim-code", "dataset-tools", "analysis", "benchmark", "fitter", "solver", "models", "toolkit",
         "catalog"]


def oads_uri(rng):
    n = rng.randrange(100000, 999999)
    u, r = rng.choice(USERS), rng.choice(REPOS)
    if rng.random() < 0.3:
        return f"https://github.com/{u}/{r}"
    return rng.choice([
        f"https://github.com/{u}/{r}",
        f"https://gitlab.com/{u}/{r}",
        f"https://zenodo.org/record/{n}",
        f"https://doi.org/10.5281/zenodo.{n}",
        f"https://figshare.com/articles/dataset/{r}/{n}",
        f"https://archive.ics.uci.edu/ml/datasets/{r}",
        f"http://cds.cern.ch/record/{n}",
        f"https://heasarc.gsfc.nasa.gov/docs/{r}/",
        f"https://cran.r-project.org/package={r}",
        f"http://physics.nist.gov/PhysRefData/{r}",
        f"https://sourceforge.net/projects/{r}/",
        f"https://bitbucket.org/{u}/{r}",
        f"https://www.cosmos.esa.int/web/gaia/{r}",
        f"http://www.physics.wisc.edu/~{u}/code/",
        f"https://fuse.pha.jhu.edu/{r}/data",
        f"https://pypi.org/project/{r}/",
        f"https://datadryad.org/stash/dataset/doi:10.5061/dryad.{n}",
        f"https://osf.io/{r[:5]}",
        f"https://archive.stsci.edu/prepds/{r}/",
        f"https://fermi.gsfc.nasa.gov/ssc/data/{r}/",
    ])


def non_oads_uri(rng):
    n = rng.randrange(100000, 999999)
    vid = "".join(rng.choice("abcdefghijkmnpqrstuvwxyzABCDEFGHJKLMNPQRSTUVWXYZ0123456789_-") for _ in range(11))
    return rng.choice([
        f"https://www.youtube.com/watch?v={vid}",
        f"https://youtu.be/{vid}",
        f"https://vimeo.com/{n}",
        f"https://twitter.com/{rng.choice(USERS)}",
        f"http://www.nature.com/articles/srep{n % 100000:05d}",
        f"https://journals.aps.org/prl/abstract/10.1103/PhysRevLett.{n % 1000}.{n % 100000}",
        f"https://www.icml.cc/{2010 + n % 12}/",
        f"http://www.{rng.choice(['aps', 'iau', 'ieee'])}.org/meetings/{n % 1000}",
        f"https://en.wikipedia.org/wiki/{rng.choice(['Dark_matter', 'Neutrino', 'Graphene', 'Boson'])}",
        f"https://www.nsf.gov/awards/{n}",
        f"https://www.facebook.com/{rng.choice(USERS)}",
        f"https://www.bbc.co.uk/news/science-{n}",
        f"http://www.galaxyzoo.org/{rng.choice(['team', 'about', 'story'])}",
        f"https://people.example.edu/~{rng.choice(USERS)}/",
        f"https://www.simonsfoundation.org/grant/{n}",
        f"https://iopscience.iop.org/article/10.1088/{n}",
    ])


def main(out_path):
    rng = random.Random(SEED)
    rows = []
    for i in range(94):
        rows.append(("OADS", rng.choice(OADS_TEMPLATES), oads_uri(rng)))
    for i in range(94):
        rows.append(("NonOADS", rng.choice(NON_OADS_TEMPLATES), non_oads_uri(rng)))
    for label, template in AMBIGUOUS:
        rows.append((label, template, oads_uri(rng) if label == "OADS" else non_oads_uri(rng)))
    rng.shuffle(rows)

    lines = []
    for label, template, uri in rows:
        context = template.format(u=uri, n=rng.choice(NAMES), p=rng.choice(PEOPLE))
        lines.append(f"{label}\t{uri}\t{context}")

    lines += [
        "OADS\thttp://ibm.biz/multishapeinsertion\tThe dataset is available at http://ibm.biz/multishapeinsertion.",
        "OADS\thttps://github.com/hawkrobe/pragmatics_of_perspective_taking\tCode and materials for reproducing the "
        "experiment as well as all data and analysis scripts are open and available at "
        "https://github.com/hawkrobe/pragmatics_of_perspective_taking.",
        "OADS\thttps://github.com/haan/Lightbot\tThe codebase that we adapted was developed by Laurent Haan "
        "(https://github.com/haan/Lightbot )",
        "NonOADS\thttp://www.nature.com/articles/srep01037\tThis article is available from: "
        "http://www.nature.com/articles/srep01037.",
        "NonOADS\thttps://youtu.be/RcWHXL2vJPc\tAll these scenes can be seen in our video at https://youtu.be/RcWHXL2vJPc.",
        "NonOADS\thttp://www.galaxyzoo.org/volunteers\tTheir contributions are individually acknowledged at "
        "http://www.galaxyzoo.org/volunteers.",
    ]
    header = "# label\turi\tcontext  (generated by gen_labeled_examples.py; last 6 rows are the sample sentences)\n"
    Path(out_path).write_text(header + "\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).with_name("labeled_examples.tsv"))
