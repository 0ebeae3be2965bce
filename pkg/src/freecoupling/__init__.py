"""Upper bounds on the quantum coupling between free electrons and photons."""

__version__ = "0.1.0"

from .bounds import CouplingBound, InteractionLimit, continuum_bound_density, coupling_bound, max_interaction_length
from .materials import Drude, Lorentz, LossyPoint, NonDispersive, material_factor
from .modes import (
    HollowCoreConfig,
    ImportedModeProfile,
    MetalHoleConfig,
    coupling_from_imported_mode,
    coupling_from_mode,
    read_mode_profile,
    solve_hollow_core,
    solve_metal_hole,
    solve_metal_hole_all,
    write_mode_profile,
)
from .nearfield import gaussian_intensity_factor, intensity_factor
from .numerics import QuadratureSpec
from .physics import CONSTANTS, ElectronParams, electron_from_beta, evanescent_scales
from .regions import (
    Annulus,
    CylinderExterior,
    HalfSpace,
    TwoSidedSlot,
    cylinder_closed_form,
    find_subrelativistic_peak,
    geometric_factor,
)
from .spectra import DispersionModel, SpectrumMode, n_eff_closed, n_eff_numeric, peak_integral, spectrum_density
