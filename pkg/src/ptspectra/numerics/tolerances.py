from dataclasses import dataclass

__all__ = ["Tolerances", "DEFAULT_TOLERANCES"]


@dataclass(frozen=True)
class Tolerances:
    """Accuracy knobs shared by the integrator, root finder and quadrature.

    ``root_tol`` is an absolute tolerance on the energy argument, not on the
    residual value.
    """

    ode_rel: float = 1e-10
    ode_abs: float = 1e-12
    root_tol: float = 1e-9
    quad_tol: float = 1e-11

    def __post_init__(self):
        for name in ("ode_rel", "ode_abs", "root_tol", "quad_tol"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"tolerance {name} must be > 0, got {value!r}")

    def scaled(self, factor: float) -> "Tolerances":
        """All four tolerances multiplied by ``factor``."""
        return Tolerances(
            self.ode_rel * factor,
            self.ode_abs * factor,
            self.root_tol * factor,
            self.quad_tol * factor,
        )


DEFAULT_TOLERANCES = Tolerances()
