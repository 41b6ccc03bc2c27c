# Copyright 2026 The dmps Authors
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

"""Regenerate the FCIDUMP fixtures in data/ (requires pyscf)."""
import sys
from pyscf import gto, scf, fci
from pyscf.tools import fcidump

MOLECULES = {
    "h2_sto3g": "H 0 0 0; H 0 0 0.7414",
    "lih_sto3g": "Li 0 0 0; H 0 0 1.5949",
    "h4_sto3g": "H 0 0 0; H 0 0 1.0; H 0 0 2.0; H 0 0 3.0",
}

def main(outdir):
    for name, geom in MOLECULES.items():
        mol = gto.M(atom=geom, basis="sto-3g", verbose=0)
        mf = scf.RHF(mol).run()
        fcidump.from_scf(mf, f"{outdir}/{name}.fcidump", tol=1e-15)
        e_fci = fci.FCI(mf).kernel()[0]
        print(f"{name}: norb={mol.nao} nelec={mol.nelectron} e_hf={mf.e_tot:.12f} e_fci={e_fci:.12f}")

if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
