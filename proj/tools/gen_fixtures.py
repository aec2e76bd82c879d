#!/usr/bin/env python3
# Copyright 2026 The cpvqd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the STO-3G FCIDUMP fixtures under data/fixtures.

Requires pyscf. The fixtures are checked in; this script only documents how
they were produced. Alongside each file it records the pyscf FCI eigenvalues
of every (n_alpha, n_beta) block of the requested electron count so the C++
tests have an independent reference.
"""
import json
import os
import sys

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

H2_BONDS = ["0.3", "0.5", "0.7414", "1.0", "1.5", "2.0", "2.5"]
HEHP_BONDS = ["0.5", "0.75", "1.0", "1.5", "2.0", "2.5"]


def fci_levels(mf, n_electrons):
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    norb = h1.shape[0]
    from pyscf import ao2mo
    eri = ao2mo.restore(1, ao2mo.kernel(mf.mol, mf.mo_coeff), norb)
    ecore = mf.energy_nuc()
    levels = []
    for na in range(0, n_electrons + 1):
        nb = n_electrons - na
        if na > norb or nb > norb:
            continue
        solver = fci.direct_spin1.FCI()
        from math import comb
        nroots = comb(norb, na) * comb(norb, nb)
        e, _ = solver.kernel(h1, eri, norb, (na, nb), nroots=nroots, ecore=ecore)
        e = [float(x) for x in (e if hasattr(e, "__len__") else [e])]
        levels.extend(e)
    return sorted(levels)


def build(atom_a, atom_b, bond, charge):
    mol = gto.M(atom=f"{atom_a} 0 0 0; {atom_b} 0 0 {bond}", basis="sto-3g",
                charge=charge, spin=0, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    return mf


def main(out_dir):
    reference = {}
    jobs = [("h2", "H", "H", 0, H2_BONDS, 2), ("hehp", "He", "H", 1, HEHP_BONDS, 1)]
    for tag, a, b, charge, bonds, sector_electrons in jobs:
        for bond in bonds:
            mf = build(a, b, float(bond), charge)
            name = f"{tag}_{bond}.fcidump"
            fcidump.from_scf(mf, os.path.join(out_dir, name), tol=1e-15)
            reference[name] = {
                "electrons": sector_electrons,
                "levels": fci_levels(mf, sector_electrons),
            }
    with open(os.path.join(out_dir, "fci_reference.json"), "w") as fh:
        json.dump(reference, fh, indent=2)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
