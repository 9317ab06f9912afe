"""Regenerate the files under corpus/ from the catalog."""
import json
import os
import sys

from brstkit import catalog
from brstkit.coeff import ParameterSet
from brstkit.io import save_alg, save_tensor, spec_from_presentation
from brstkit.ybtensor import TensorSquareOp

out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "corpus")
os.makedirs(out, exist_ok=True)


def path(name):
    return os.path.join(out, name)


def text(name, body):
    with open(path(name), "w") as fh:
        fh.write(body + "\n")


def jdump(name, doc):
    with open(path(name), "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


qla_a = catalog.qla_structure(ParameterSet(["a"]))
save_alg(spec_from_presentation(catalog.qla_omega(True), qla_a, None, label="three-generator algebra, chi0 central"), path("s4.alg"))
save_alg(spec_from_presentation(catalog.qla_omega(False), catalog.qla_structure(), "C", label="three-generator algebra, chi0 = C"), path("qla_scalar.alg"))
cons = catalog.family_constraints()
cons.metadata["names"] = catalog.family_names()
save_alg(spec_from_presentation(cons, label="J T W family"), path("family_constraints.alg"))
save_alg(spec_from_presentation(catalog.family_omega(), label="J T W family, canonical ghosts"), path("s5.alg"))
save_alg(spec_from_presentation(catalog.family_modified_omega(), label="J T W family, modified ghosts"), path("family_modified.alg"))

text("qla_charge.txt", catalog.QLA_CHARGE.replace("C*b2", "chi0*b2"))
text("qla_charge_scalar.txt", catalog.QLA_CHARGE)
text("q53.txt", catalog.FAMILY_CHARGE)
text("family_charge_new_ghosts.txt", catalog.FAMILY_CHARGE_NEW_GHOSTS)

save_tensor(catalog.qla_R(), path("qla_R.tensor"))
save_tensor(TensorSquareOp.identity(4), path("identity4.tensor"))
save_tensor(TensorSquareOp.permutation(4), path("perm4.tensor"))

jdump("ghosts.map", {"label": "new ghosts", "map": catalog.FAMILY_GHOST_MAP})
jdump("antighosts.map", {"label": "anti-ghost redefinition", "map": catalog.FAMILY_ANTIGHOST_MAP})
jdump("tface.map", {"label": "second quadratic face", "map": {"T": "T + (2*a2 - a3)/(2*a1)*J^2"}})
jdump("gamma.map", {"label": "gamma shift", "map": {"chi2": "chi2 + a/(2*C)*chi1^2"}})
