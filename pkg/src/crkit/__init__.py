"""crkit: checks for quadric models and polynomial model hypersurfaces in CR geometry."""

__version__ = "0.1.0"
