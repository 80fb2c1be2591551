"""kanlift: finite simplicial sets, homotopy-lifting searches, and local
weak equivalences of simplicial presheaves on finite sites."""

__version__ = "0.1.0"
