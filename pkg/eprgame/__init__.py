"""Three-player games played over EPR-style joint probabilities."""

__version__ = "0.1.0"
