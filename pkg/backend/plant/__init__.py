"""
Modelos LTI de la planta del torpedo
"""

from .lti import (
    StateSpace,
    TransferFunction,
    ZpkModel,
    freq_response,
    from_zpk,
    tf_to_ss,
)
from .torpedo import (
    IMMERSION_ZPK,
    INCLINATION_ZPK,
    TorpedoPlant,
    plant_derivative,
    plant_outputs,
)

__all__ = [
    'TransferFunction',
    'ZpkModel',
    'StateSpace',
    'from_zpk',
    'tf_to_ss',
    'freq_response',
    'TorpedoPlant',
    'IMMERSION_ZPK',
    'INCLINATION_ZPK',
    'plant_derivative',
    'plant_outputs',
]
