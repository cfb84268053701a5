"""Exception types raised across the package."""


class WddtError(Exception):
    """Base class for all errors raised by wddt."""


class ModelInfeasible(WddtError, ValueError):
    """Some edge probability rho_l * W_li * W_lj exceeds one."""


class NeedTwoLayers(WddtError, ValueError):
    """The statistic needs at least two layers."""


class DegenerateLayer(WddtError, ValueError):
    """A layer has no two-paths, so the statistic is undefined.

    Attributes
    ----------
    layer : int
        Zero-based index of the offending layer.
    """

    def __init__(self, layer, message=None):
        self.layer = layer
        super().__init__(message or f"layer {layer} has no two-paths (P_l = 0)")


class AllDegenerate(WddtError, RuntimeError):
    """Every Monte Carlo replication hit a degenerate layer."""


class ParseError(WddtError, ValueError):
    """Malformed multiplex input.

    Attributes
    ----------
    lineno : int or None
        One-based line number of the offending line, when known.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
