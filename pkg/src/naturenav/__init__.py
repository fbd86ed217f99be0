"""Self-hosted location-based-service platform for nature-tourism POIs."""

__version__ = "0.1.0"
