from ffdshape.parametrization.enums.regularization_mode import RegularizationMode

__all__ = ["RegularizationMode"]
