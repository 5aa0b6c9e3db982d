"""Domain services: codes, the reference machine, tests, selection, sources and experiments."""
