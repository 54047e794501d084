from ffdshape.evaluator.enums.mask_protocol import MaskProtocol

__all__ = ["MaskProtocol"]
