# SPDX-License-Identifier: Apache-2.0
"""Achievable sum rate of MIMO linear-MMSE receivers."""

from ._core import (
    ChannelModel,
    DomainError,
    NoClosedForm,
    NumericalError,
    RepeatedEigenvalues,
    digamma_int,
    expint_scaled,
    high_snr_params,
    log_multivariate_gamma,
    low_snr_params,
    mc_estimate,
    opt_mi,
    opt_mi_quadrature,
    rician_excess_shift,
    rician_offset_shift,
    sum_rate,
    theta_2f2,
)

__all__ = [
    "ChannelModel",
    "DomainError",
    "NoClosedForm",
    "NumericalError",
    "RepeatedEigenvalues",
    "digamma_int",
    "expint_scaled",
    "high_snr_params",
    "log_multivariate_gamma",
    "low_snr_params",
    "mc_estimate",
    "opt_mi",
    "opt_mi_quadrature",
    "rician_excess_shift",
    "rician_offset_shift",
    "sum_rate",
    "theta_2f2",
]
