#!/usr/bin/env python3
# Copyright 2026 The pauligroup Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the molecular Hamiltonian fixtures in data/.

Not part of the build. Requires pyscf, openfermion and openfermionpyscf.

All molecules: STO-3G basis, neutral singlet, restricted Hartree-Fock
orbitals, no frozen core, Bravyi-Kitaev qubit mapping. Bond lengths are
1 Angstrom. Output uses the big-endian qubit convention of the library
(qubit 0 is the most significant bit of a basis index), which is also the
convention of openfermion.get_sparse_operator.
"""

import argparse
import math
import pathlib

import openfermion as of
from openfermion.chem import MolecularData
from openfermionpyscf import run_pyscf


def _bent(center, ligand, r, angle_deg):
    half = math.radians(angle_deg) / 2.0
    return [
        (center, (0.0, 0.0, 0.0)),
        (ligand, (r * math.sin(half), 0.0, r * math.cos(half))),
        (ligand, (-r * math.sin(half), 0.0, r * math.cos(half))),
    ]


def _pyramidal(center, ligand, r, angle_deg):
    # Three ligands at distance r with pairwise ligand-center-ligand angle.
    theta = math.radians(angle_deg)
    # Angle between each bond and the C3 axis.
    cos_beta = math.sqrt((1.0 + 2.0 * math.cos(theta)) / 3.0)
    sin_beta = math.sqrt(1.0 - cos_beta**2)
    atoms = [(center, (0.0, 0.0, 0.0))]
    for i in range(3):
        phi = 2.0 * math.pi * i / 3.0
        atoms.append((ligand, (r * sin_beta * math.cos(phi),
                               r * sin_beta * math.sin(phi),
                               r * cos_beta)))
    return atoms


MOLECULES = {
    "h2": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.0))],
    "lih": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.0))],
    "beh2": [("H", (0.0, 0.0, -1.0)), ("Be", (0.0, 0.0, 0.0)),
             ("H", (0.0, 0.0, 1.0))],
    "h2o": _bent("O", "H", 1.0, 107.6),
    "nh3": _pyramidal("N", "H", 1.0, 107.0),
}


def term_line(coefficient, term):
    factors = " ".join(f"{p}{q}" for q, p in term)
    text = repr(float(coefficient))
    return f"{text} {factors}".rstrip()


def write_fixture(name, geometry, out_dir):
    mol = MolecularData(geometry, "sto-3g", 1, 0, description=name)
    mol = run_pyscf(mol)
    fermion = of.get_fermion_operator(mol.get_molecular_hamiltonian())
    qubit = of.bravyi_kitaev(fermion)
    qubit.compress()
    n_qubits = mol.n_qubits
    lines = [
        f"# {name}: STO-3G, RHF orbitals, Bravyi-Kitaev mapping",
        "# geometry (Angstrom): " + "; ".join(
            f"{a} {x:.6f} {y:.6f} {z:.6f}" for a, (x, y, z) in geometry),
        f"# hf_energy: {mol.hf_energy!r}",
        f"# nqubits: {n_qubits}",
    ]
    for term, coefficient in sorted(qubit.terms.items(),
                                    key=lambda kv: (len(kv[0]), kv[0])):
        lines.append(term_line(coefficient.real, term))
    path = out_dir / f"{name}.ham"
    path.write_text("\n".join(lines) + "\n")
    print(f"{path}: {n_qubits} qubits, {len(qubit.terms)} terms")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", type=pathlib.Path)
    parser.add_argument("molecules", nargs="*", default=list(MOLECULES))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.molecules:
        write_fixture(name, MOLECULES[name], args.out)


if __name__ == "__main__":
    main()
