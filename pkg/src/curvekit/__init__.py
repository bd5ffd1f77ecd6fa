"""Classical invariants of plane and space algebraic curves, computed exactly."""
