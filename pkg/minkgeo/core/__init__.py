"""Core linear algebra, jets, integrators and orchestration."""
