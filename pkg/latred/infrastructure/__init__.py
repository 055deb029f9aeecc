"""Infrastructure layer for latred: configuration and persistence."""
