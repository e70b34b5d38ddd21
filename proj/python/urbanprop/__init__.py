# SPDX-License-Identifier: Apache-2.0
#
# urbanprop: geometry map-based radio propagation modelling for urban scenarios
# Copyright (C) 2026 The urbanprop authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Urban radio propagation: building visibility, multiple-edge diffraction, path loss and Doppler."""

import json as _json

from ._core import (
    DegenerateGeometryError,
    DomainError,
    GeometryMap,
    InputError,
    Scenario,
    ShapeError,
    doppler_shift,
    empirical_cdf,
    fresnel_integral,
    friis_path_loss_db,
    gpp_doppler_estimate,
    gpp_path_loss,
    identify,
    ks_distance,
    predict_link,
    reflection_coefficient,
    rms_spread,
    rmse,
    transition_function,
    wavelength,
)

__version__ = "0.1.0"


def compare(scenario, reference):
    """RMSE and KS distance of every model against ``reference`` as a dict."""
    return _json.loads(scenario.compare(list(reference)))


__all__ = [
    "DegenerateGeometryError",
    "DomainError",
    "GeometryMap",
    "InputError",
    "Scenario",
    "ShapeError",
    "compare",
    "doppler_shift",
    "empirical_cdf",
    "fresnel_integral",
    "friis_path_loss_db",
    "gpp_doppler_estimate",
    "gpp_path_loss",
    "identify",
    "ks_distance",
    "predict_link",
    "reflection_coefficient",
    "rms_spread",
    "rmse",
    "transition_function",
    "wavelength",
]
