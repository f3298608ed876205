"""Which-path detection, radiative decoherence and the duality bound in
two-slit interference with highly charged or very massive particles."""

from .units import Constants, constants, de_broglie_wavelength, ELECTRON_MASS
from .experiment import (ExperimentConfig, GeometryWarning, flight_time, fringe_spacing,
                         log_term, omega_max, wavelength)
from .fieldmeas import (BRApparatus, apparatus_for, avg_coulomb_field, critical_charge_z1,
                        critical_charge_z1_exact, field_difference,
                        field_difference_first_order, field_uncertainty)
from .pathinfo import (DetectionModel, distinguishability, distinguishability_mc,
                       distinguishability_of_charge, path_probabilities)
from .decoherence import (TrajectoryPair, VisibilityResult, contour_velocity_transform,
                          critical_charge_z2, re_phi, trajectory_pair, visibility_closed_form,
                          visibility_numeric, zero_photon_factor)
from .pattern import (DualityPoint, PatternConfig, baseline_amplitudes, duality_arrays,
                      duality_bound_holds, duality_curve, fit_fringes, intensity,
                      monte_carlo_pattern, recover_visibility)
from .gravity import (GravityDetector, critical_mass, detector_response,
                      detector_response_numeric, fringe_vs_planck, required_phi_pp_accuracy)

__version__ = "0.1.0"


def tonomura():
    """The bundled single-electron configuration: d = 1 um, cT = 6 cm, R = cT, log term 20."""
    import json
    from importlib import resources
    doc = json.loads(resources.files(__name__).joinpath("data/tonomura.json").read_text())
    exp = {k: v for k, v in doc["experiment"].items() if k != "comment"}
    return ExperimentConfig(**exp)
