"""Arabic word-space toolkit: corpus ingestion, root and light stemming,
co-occurrence matrices factored by an in-repo SVD, and word-similarity
measurement and reporting."""

__version__ = "0.1.0"
