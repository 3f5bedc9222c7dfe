"""Decision procedures for Rees-Sushkevich semigroup varieties."""

__version__ = "0.1.0"
