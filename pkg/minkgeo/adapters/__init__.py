"""Export adapters: OBJ meshes, CSV tables and JSON reports."""
