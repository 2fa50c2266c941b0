import pytest

import wreathlab as w

# the named groups used throughout the suite
ATOM_BUILDERS = {
    "S2": lambda: w.symmetric(2),
    "S3": lambda: w.symmetric(3),
    "S4": lambda: w.symmetric(4),
    "A3": lambda: w.alternating(3),
    "A4": lambda: w.alternating(4),
    "C2": lambda: w.cyclic(2),
    "C3": lambda: w.cyclic(3),
    "C4": lambda: w.cyclic(4),
}

GRID_A = ["S2", "S3", "A3", "A4", "S4", "C2", "C3", "C4"]
GRID_B = ["S2", "S3", "C2", "C3", "C4"]
GRID_MODES = ["wrI", "wrP", "prodI", "prodP"]


@pytest.fixture(scope="session")
def atoms():
    return {name: fn() for name, fn in ATOM_BUILDERS.items()}


@pytest.fixture(scope="session")
def atom_stats(atoms):
    """Cached delta vectors and cycle-count vectors of the atoms."""
    out = {}
    for name, G in atoms.items():
        out[name] = {
            "delta": w.delta_vector(G),
            "stir": w.cycle_count_vector(G),
        }
    return out


class GridCache:
    """Builds and caches the acceptance-grid constructions on demand."""

    def __init__(self, atoms):
        self.atoms = atoms
        self._groups = {}
        self._spectra = {}

    def group(self, mode, a, b):
        key = (mode, a, b)
        if key not in self._groups:
            A, B = self.atoms[a], self.atoms[b]
            if mode == "wrI":
                G = w.wreath_imprimitive(A, B)
            elif mode == "wrP":
                G = w.wreath_power(A, B)
            elif mode == "prodI":
                G = w.direct_product_intransitive([A, B])
            elif mode == "prodP":
                G = w.direct_product_product([A, B])
            else:
                raise ValueError(mode)
            self._groups[key] = G
        return self._groups[key]

    def spectrum(self, mode, a, b):
        key = (mode, a, b)
        if key not in self._spectra:
            self._spectra[key] = w.fix_spectrum(self.group(mode, a, b))
        return self._spectra[key]


@pytest.fixture(scope="session")
def grid(atoms):
    return GridCache(atoms)
