"""Scikit-learn style transformer wrappers around the grid operators.

The propagators are linear maps on sampled wavefunctions, which makes them
natural transformers: rows of X are wavefunctions on the standard grid, and
transform/inverse_transform apply the forward and backward evolution.  The
wrappers exist for pipeline interoperability; the functional API in
`evolution` remains the primary interface.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import OscillapropError
from .evolution import WaveGrid, apply_inverse, apply_kernel, fourier
from .kernels import StandingKind
from .models import Model, ModelTag


def _resolve_model(model) -> Model:
    if isinstance(model, Model):
        return model
    if isinstance(model, str):
        name = model.upper()
        if name in ModelTag.__members__:
            return Model(ModelTag[name])
    raise OscillapropError(f"unknown model {model!r}")


class KernelPropagator(TransformerMixin, BaseEstimator):
    """Apply the exact propagator of one model as a transformer.

    Parameters
    ----------
    model : str or Model, default "M1"
    t : float, evolution time.
    L : float, grid half-width; rows of X must be sampled on this grid.
    standing : None or "+"/"-" to use a standing-wave kernel instead of the
        fundamental one.
    """

    def __init__(self, model="M1", t=0.5, L=12.0, standing=None):
        self.model = model
        self.t = t
        self.L = L
        self.standing = standing

    def _kernel_id(self):
        if self.standing is None:
            return _resolve_model(self.model)
        return StandingKind(self.standing)

    def fit(self, X=None, y=None):
        """Validate parameters; the operator has no data-dependent state."""
        self._kernel_id()
        self.n_features_in_ = None if X is None else np.asarray(X).shape[1]
        return self

    def _apply(self, X, op):
        X = np.asarray(X, dtype=complex)
        single = X.ndim == 1
        rows = X[None, :] if single else X
        kid = self._kernel_id()
        out = np.stack(
            [op(kid, WaveGrid(self.L, row), self.t).values for row in rows]
        )
        return out[0] if single else out

    def transform(self, X):
        return self._apply(X, apply_kernel)

    def inverse_transform(self, X):
        return self._apply(X, apply_inverse)


class FourierRepresentation(TransformerMixin, BaseEstimator):
    """Unitary Fourier transform of grid wavefunctions as a transformer."""

    def __init__(self, sign=1, L=12.0):
        self.sign = sign
        self.L = L

    def fit(self, X=None, y=None):
        if self.sign not in (1, -1):
            raise OscillapropError("sign must be +1 or -1")
        self.n_features_in_ = None if X is None else np.asarray(X).shape[1]
        return self

    def _apply(self, X, sign):
        X = np.asarray(X, dtype=complex)
        single = X.ndim == 1
        rows = X[None, :] if single else X
        out = np.stack([fourier(WaveGrid(self.L, row), sign).values for row in rows])
        return out[0] if single else out

    def transform(self, X):
        return self._apply(X, self.sign)

    def inverse_transform(self, X):
        return self._apply(X, -self.sign)
