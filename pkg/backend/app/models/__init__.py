from .clifford import Signature, GammaRep, BilinearDecomposition
from .spinor import Spinor, BilinearVector, PurityReport, NullPlane
from .fields import MinkowskiVector, FieldTensor, WeylKernel, MaxwellResidual, MassSphereDecomposition
from .fock import SphereGridS3, SpectrumLevel, SpectrumResult
from .constants import WylerResult, TorusLattice, TorusReport

__all__ = [
    "Signature", "GammaRep", "BilinearDecomposition",
    "Spinor", "BilinearVector", "PurityReport", "NullPlane",
    "MinkowskiVector", "FieldTensor", "WeylKernel", "MaxwellResidual", "MassSphereDecomposition",
    "SphereGridS3", "SpectrumLevel", "SpectrumResult",
    "WylerResult", "TorusLattice", "TorusReport",
]
