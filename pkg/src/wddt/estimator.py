"""scikit-learn style front end for the test and the sampler."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_alpha, check_multilayer
from .model import ModelSpec, sample_rmhg
from .statistic import compute_wddt, decide


class WeightedDegreeDifferenceTest(BaseEstimator):
    """Test whether all layers of a multilayer network share one weight vector.

    Parameters
    ----------
    alpha : float, default=0.05
        Significance level of the two-sided test.
    variance_layer_count : int or None, default=None
        Overrides the layer count in the reference term of the variance.
        ``None`` uses the number of layers being tested.

    Attributes
    ----------
    statistic_ : float
    p_value_ : float
    sigma_sq_ : float
    critical_value_ : float
    reject_ : bool
    result_ : WddtResult
    decision_ : Decision

    Examples
    --------
    >>> import numpy as np
    >>> tri = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    >>> test = WeightedDegreeDifferenceTest().fit(np.stack([tri, tri]))
    >>> round(test.statistic_, 7)
    -1.7320508
    """

    def __init__(self, alpha=0.05, variance_layer_count=None):
        self.alpha = alpha
        self.variance_layer_count = variance_layer_count

    def fit(self, X, y=None):
        """Compute the statistic on ``X``.

        ``X`` is a :class:`MultilayerGraph`, a :class:`MultiplexDataset`, or an
        array-like of shape ``(L, n, n)``. The first layer is the reference.
        """
        alpha = check_alpha(self.alpha)
        g = check_multilayer(X)
        self.result_ = compute_wddt(g, variance_layer_count=self.variance_layer_count)
        self.decision_ = decide(self.result_, alpha)
        self.statistic_ = self.result_.statistic
        self.p_value_ = self.result_.p_value
        self.sigma_sq_ = self.result_.sigma_sq
        self.critical_value_ = self.decision_.critical_value
        self.reject_ = self.decision_.reject
        self.n_layers_in_ = g.n_layers
        self.n_nodes_in_ = g.n
        return self

    def predict(self, X):
        """Fit on ``X`` and return whether H0 is rejected."""
        return self.fit(X).reject_

    def summary(self):
        check_is_fitted(self, "result_")
        return (f"D_n = {self.statistic_:.3f}, p-value = {self.p_value_:.3f}, "
                f"{self.decision_.label} at alpha = {self.decision_.alpha:g}")


class RMHGSampler(BaseEstimator):
    """Seeded sampler for the random multilayer heterogeneous graph model.

    Parameters
    ----------
    weights : sequence of array-like
        One unit-norm weight vector per layer.
    rho : sequence of float
        Density scaling per layer.
    random_state : int, default=0
        64-bit seed; ``sample(k)`` uses ``random_state + k`` so successive
        draws are reproducible.
    """

    def __init__(self, weights, rho, random_state=0):
        self.weights = weights
        self.rho = rho
        self.random_state = random_state

    def fit(self, X=None, y=None):
        self.spec_ = ModelSpec(tuple(np.asarray(w) for w in self.weights), tuple(self.rho))
        return self

    def sample(self, index=0):
        if not hasattr(self, "spec_"):
            self.fit()
        return sample_rmhg(self.spec_, int(self.random_state) + int(index))
