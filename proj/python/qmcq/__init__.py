"""Operators and verifications for first-order q-difference systems."""

import os


def _load_core():
    try:
        from . import _core  # installed wheel layout
        return _core
    except ImportError:
        ext_dir = os.environ.get("QMCQ_EXT_DIR")
        if not ext_dir:
            raise
        import importlib.machinery
        import importlib.util

        for name in os.listdir(ext_dir):
            if name.startswith("_core") and (name.endswith(".so") or name.endswith(".pyd")):
                loader = importlib.machinery.ExtensionFileLoader(
                    __name__ + "._core", os.path.join(ext_dir, name)
                )
                spec = importlib.util.spec_from_loader(loader.name, loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                return module
        raise


_core = _load_core()

SystemTuple = _core.SystemTuple
QmcError = _core.QmcError

tuple_from_json = _core.tuple_from_json
eval_B = _core.eval_B
eval_rhs = _core.eval_rhs
add_mu = _core.add_mu
pole_move = _core.pole_move
q_convolution = _core.q_convolution
dr_convolution = _core.dr_convolution
sy_convolution = _core.sy_convolution
middle_convolution = _core.middle_convolution
propagate = _core.propagate
qpoch_inf = _core.qpoch_inf
qpoch_fin = _core.qpoch_fin
phi21 = _core.phi21
phi32 = _core.phi32
kernel_eval = _core.kernel_eval
jackson_integral = _core.jackson_integral
seed_tuple = _core.seed_tuple
convergence_certificate = _core.convergence_certificate
check_star = _core.check_star
check_doublestar = _core.check_doublestar
additivity_check = _core.additivity_check
spectral_type = _core.spectral_type
catalog_names = _core.catalog_names
catalog_build = _core.catalog_build
catalog_tuple = _core.catalog_tuple

__all__ = [
    "SystemTuple", "QmcError", "tuple_from_json", "eval_B", "eval_rhs", "add_mu",
    "pole_move", "q_convolution", "dr_convolution", "sy_convolution",
    "middle_convolution", "propagate", "qpoch_inf", "qpoch_fin", "phi21", "phi32",
    "kernel_eval", "jackson_integral", "seed_tuple", "convergence_certificate",
    "check_star", "check_doublestar", "additivity_check", "spectral_type",
    "catalog_names", "catalog_build", "catalog_tuple",
]

__version__ = "0.1.0"
