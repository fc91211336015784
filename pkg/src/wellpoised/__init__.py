"""Semi-canonical embeddings of affine T-varieties and well-poisedness checks."""

__version__ = "0.1.0"
